#include "sparsereg/json_io.hpp"

namespace sparsereg {

using nlohmann::json;

json to_json(const IndexSet& set) { return json(set.indices()); }

json to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(v(i));
  }
  return out;
}

json to_json(const LassoFit& fit) {
  json out;
  out["beta"] = to_json(fit.beta);
  out["lambda"] = fit.lambda;
  out["objective"] = fit.objective;
  out["kkt_residual"] = fit.kkt;
  out["support"] = to_json(fit.support);
  out["sweeps"] = fit.sweeps;
  out["converged"] = fit.converged;
  return out;
}

json to_json(const DirectionCertificate& cert) {
  json out;
  out["direction"] = to_json(cert.direction);
  out["subset"] = to_json(cert.subset);
  out["inner_value"] = cert.inner_value;
  out["sigma_min"] = cert.sigma_min;
  return out;
}

json to_json(const GammaEstimate& estimate) {
  json out;
  out["value"] = estimate.value;
  out["method"] = estimate.method;
  if (estimate.epsilon) {
    out["epsilon"] = *estimate.epsilon;
  } else {
    out["epsilon"] = nullptr;
  }
  out["directions"] = estimate.directions;
  out["exhausted_directions"] = estimate.exhausted_directions;
  json certs = json::array();
  for (const auto& cert : estimate.certificates) {
    certs.push_back(to_json(cert));
  }
  out["certificates"] = std::move(certs);
  return out;
}

json to_json(const BoundReport& report) {
  json out;
  out["precondition_nu_ok"] = report.precondition_nu_ok;
  out["B"] = report.B ? json(*report.B) : json(nullptr);
  out["lambda_min"] =
      report.lambda_min ? json(*report.lambda_min) : json(nullptr);
  out["C"] = report.C ? json(*report.C) : json(nullptr);
  out["probability_headline"] = report.probability_headline;
  out["probability_union"] = report.probability_union;
  out["notes"] = report.notes;
  return out;
}

json to_json(const AugmentedFit& fit) {
  json out;
  out["fit"] = to_json(fit.fit);
  out["beta_x"] = to_json(fit.beta_x);
  out["beta_0"] = to_json(fit.beta_0);
  out["p0"] = fit.p0;
  out["seed"] = fit.seed.value;
  return out;
}

json to_json(const SuiteReport& report) {
  json out;
  out["suite"] = report.suite;
  out["pass"] = report.pass;
  out["threshold"] = report.threshold;
  out["notes"] = report.notes;
  json stats;
  for (const auto& [key, value] : report.statistics) {
    stats[key] = value;
  }
  out["statistics"] = std::move(stats);
  return out;
}

}  // namespace sparsereg
