// Command-line front end: audit matrices, fit plain or augmented LASSO,
// estimate the design index, run verification suites and prediction
// experiments. All randomness flows through --seed; reports are JSON (and
// CSV tables for suites), reproducible byte-for-byte for a fixed seed.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "sparsereg/augment.hpp"
#include "sparsereg/csv.hpp"
#include "sparsereg/errors.hpp"
#include "sparsereg/gamma.hpp"
#include "sparsereg/json_io.hpp"
#include "sparsereg/lasso.hpp"
#include "sparsereg/sphere.hpp"
#include "sparsereg/verify.hpp"
#include "sparsereg/version.hpp"

namespace {

using nlohmann::json;
using namespace sparsereg;

constexpr int kExitSuccess = 0;
constexpr int kExitSuiteFailure = 1;
constexpr int kExitUsage = 2;

void emit_report(const std::string& out_path, const json& report) {
  if (out_path.empty() || out_path == "-") {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw InvalidMatrixError("cannot write '" + out_path + "'");
  }
  out << report.dump(2) << "\n";
}

json base_report(const std::string& command) {
  json report;
  report["version"] = kVersion;
  report["command"] = command;
  return report;
}

DesignMatrix load_normalized(const std::string& path) {
  return normalize_columns(DesignMatrix(load_matrix_csv(path)));
}

struct CommonOut {
  std::string out = "-";
  std::string csv;
};

void add_out_flag(CLI::App* cmd, CommonOut& out) {
  cmd->add_option("--out", out.out, "JSON report path ('-' for stdout)");
}

void add_out_flags(CLI::App* cmd, CommonOut& out) {
  add_out_flag(cmd, out);
  cmd->add_option("--csv", out.csv, "per-trial CSV table path");
}

void write_suite_outputs(const SuiteReport& suite, const CommonOut& paths,
                         json report) {
  report["result"] = to_json(suite);
  emit_report(paths.out, report);
  std::string csv = paths.csv;
  if (csv.empty() && !paths.out.empty() && paths.out != "-") {
    // Default per-trial table next to the JSON report.
    const auto dot = paths.out.find_last_of('.');
    csv = (dot == std::string::npos ? paths.out : paths.out.substr(0, dot)) +
          ".csv";
  }
  if (!csv.empty()) {
    write_table_csv(csv, suite.table_header, suite.table_rows);
  }
  std::cerr << "suite " << suite.suite << (suite.pass ? " passed" : " FAILED")
            << " in " << suite.runtime_seconds << " s\n";
}

double timed_seconds(const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "sparsereg: sparse-regression design auditing, LASSO fitting with a "
      "theorem-driven lambda rule, random-matrix augmentation and "
      "Monte-Carlo verification"};
  app.require_subcommand(1);

  // ---- audit ----
  auto* audit = app.add_subcommand(
      "audit", "coherence, spectral sandwich, index estimate and the "
               "admissibility flag for a design matrix");
  std::string audit_matrix;
  int audit_s = 2;
  double audit_rho = 0.5, audit_nu = 0.0, audit_sigma = 1.0, audit_alpha = 1.0;
  int audit_directions = 200;
  double audit_kappa = kDefaultKappa;
  std::uint64_t audit_seed = 0;
  CommonOut audit_out;
  audit->add_option("--matrix", audit_matrix, "design matrix CSV")
      ->required()
      ->check(CLI::ExistingFile);
  audit->add_option("--s", audit_s, "subset cardinality")
      ->check(CLI::PositiveNumber);
  audit->add_option("--rho", audit_rho, "conditioning level in (0,1)")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  audit->add_option("--nu", audit_nu, "ratio nu (default s/n)");
  audit->add_option("--sigma", audit_sigma, "noise level")
      ->check(CLI::NonNegativeNumber);
  audit->add_option("--alpha", audit_alpha, "confidence exponent")
      ->check(CLI::PositiveNumber);
  audit->add_option("--directions", audit_directions,
                    "Monte-Carlo directions")
      ->check(CLI::PositiveNumber);
  audit->add_option("--kappa", audit_kappa, "greedy outer-set factor")
      ->check(CLI::PositiveNumber);
  audit->add_option("--seed", audit_seed, "random seed");
  add_out_flag(audit, audit_out);

  // ---- fit ----
  auto* fit_cmd = app.add_subcommand("fit", "fit the LASSO");
  std::string fit_matrix, fit_y;
  double fit_lambda = 0.1, fit_tol = kDefaultFitTol;
  int fit_sweeps = kDefaultMaxSweeps;
  CommonOut fit_out;
  fit_cmd->add_option("--matrix", fit_matrix, "design matrix CSV")
      ->required()
      ->check(CLI::ExistingFile);
  fit_cmd->add_option("--y", fit_y, "response vector CSV")
      ->required()
      ->check(CLI::ExistingFile);
  fit_cmd->add_option("--lambda", fit_lambda, "penalty level")
      ->required()
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--tol", fit_tol, "KKT tolerance")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--max-sweeps", fit_sweeps, "sweep budget")
      ->check(CLI::PositiveNumber);
  add_out_flag(fit_cmd, fit_out);

  // ---- fit-aug ----
  auto* aug_cmd =
      app.add_subcommand("fit-aug", "fit the LASSO on [X, X0] with X0 a "
                                    "random sphere matrix");
  std::string aug_matrix, aug_y;
  double aug_lambda = 0.1, aug_L = 0.5, aug_nu = 0.0, aug_rho = 0.5;
  double aug_tol = kDefaultFitTol;
  int aug_s = 1, aug_sweeps = kDefaultMaxSweeps;
  long aug_cap = 1000000;
  std::uint64_t aug_seed = 0;
  double aug_sigma_min = -1.0, aug_sigma_max = -1.0;
  int aug_forced_p0 = -1;
  CommonOut aug_out;
  aug_cmd->add_option("--matrix", aug_matrix, "design matrix CSV")
      ->required()
      ->check(CLI::ExistingFile);
  aug_cmd->add_option("--y", aug_y, "response vector CSV")
      ->required()
      ->check(CLI::ExistingFile);
  aug_cmd->add_option("--lambda", aug_lambda, "penalty level")
      ->required()
      ->check(CLI::PositiveNumber);
  aug_cmd->add_option("--L", aug_L, "strictness factor in (0,1)")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  aug_cmd->add_option("--nu", aug_nu, "ratio nu (default s/n)");
  aug_cmd->add_option("--rho", aug_rho, "conditioning level in (0,1)")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  aug_cmd->add_option("--s", aug_s, "sparsity used for the proxies")
      ->check(CLI::PositiveNumber);
  aug_cmd->add_option("--p0-cap", aug_cap, "largest p0 considered")
      ->check(CLI::PositiveNumber);
  aug_cmd->add_option("--seed", aug_seed, "random seed for X0");
  aug_cmd->add_option("--sigma-min-star", aug_sigma_min,
                      "override the sigma_min proxy");
  aug_cmd->add_option("--sigma-max-star", aug_sigma_max,
                      "override the sigma_max proxy");
  aug_cmd->add_option("--forced-p0", aug_forced_p0,
                      "bypass the p0 rule and append exactly this many "
                      "columns");
  aug_cmd->add_option("--tol", aug_tol, "KKT tolerance")
      ->check(CLI::PositiveNumber);
  aug_cmd->add_option("--max-sweeps", aug_sweeps, "sweep budget")
      ->check(CLI::PositiveNumber);
  add_out_flag(aug_cmd, aug_out);

  // ---- gamma ----
  auto* gamma_cmd =
      app.add_subcommand("gamma", "estimate the design index");
  std::string gamma_matrix, gamma_method = "auto";
  int gamma_s = 2;
  double gamma_rho = 0.5, gamma_eps = 0.05, gamma_kappa = kDefaultKappa;
  int gamma_directions = 200, gamma_tries = kDefaultExtractionTries;
  std::uint64_t gamma_seed = 0;
  CommonOut gamma_out;
  gamma_cmd->add_option("--matrix", gamma_matrix, "design matrix CSV")
      ->required()
      ->check(CLI::ExistingFile);
  gamma_cmd->add_option("--s", gamma_s, "subset cardinality")
      ->check(CLI::PositiveNumber);
  gamma_cmd->add_option("--rho", gamma_rho, "conditioning level in (0,1)")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  gamma_cmd
      ->add_option("--method", gamma_method,
                   "auto | exact (net, n <= 3) | mc (Monte-Carlo)")
      ->check(CLI::IsMember({"auto", "exact", "mc"}));
  gamma_cmd->add_option("--epsilon", gamma_eps, "net resolution (exact)")
      ->check(CLI::Range(1e-9, 2.0));
  gamma_cmd->add_option("--directions", gamma_directions,
                        "Monte-Carlo directions")
      ->check(CLI::PositiveNumber);
  gamma_cmd->add_option("--kappa", gamma_kappa, "greedy outer-set factor")
      ->check(CLI::PositiveNumber);
  gamma_cmd->add_option("--max-tries", gamma_tries,
                        "extraction attempts per direction")
      ->check(CLI::PositiveNumber);
  gamma_cmd->add_option("--seed", gamma_seed, "random seed");
  add_out_flag(gamma_cmd, gamma_out);

  // ---- verify ----
  auto* verify_cmd =
      app.add_subcommand("verify", "run one Monte-Carlo verification suite");
  std::string suite_name;
  TrialPlan plan;
  std::uint64_t verify_seed = 0;
  int verify_directions = 200;
  CommonOut verify_out;
  verify_cmd
      ->add_option("--suite", suite_name,
                   "dot-law | order-stat | gamma | cap-coherence | norm | "
                   "extraction")
      ->required()
      ->check(CLI::IsMember({"dot-law", "order-stat", "gamma",
                             "cap-coherence", "norm", "extraction"}));
  verify_cmd->add_option("--n", plan.n, "row count")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--p0", plan.p0, "column count")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--s", plan.s, "subset cardinality")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--rho", plan.rho_minus, "conditioning level")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  verify_cmd->add_option("--kappa", plan.kappa, "greedy outer-set factor")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--trials", plan.trials, "trial count")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify_seed, "master seed");
  verify_cmd->add_option("--directions", verify_directions,
                         "directions for the gamma suite")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--ks-samples", plan.ks_samples,
                         "sample count for distribution tests")
      ->check(CLI::PositiveNumber);
  int law_override = 0;
  verify_cmd->add_option("--law-dimension", law_override,
                         "override the model dimension (negative control)");
  verify_cmd->add_option("--exceedance-threshold", plan.exceedance_threshold,
                         "allowed exceedance fraction")
      ->check(CLI::Range(0.0, 1.0));
  verify_cmd->add_option("--coherence-threshold", plan.coherence_threshold,
                         "empirical coherence threshold")
      ->check(CLI::Range(0.0, 1.0));
  verify_cmd->add_option("--norm-margin", plan.norm_margin,
                         "additive margin for the norm suite");
  verify_cmd->add_option("--max-tries", plan.max_tries,
                         "extraction attempts per direction")
      ->check(CLI::PositiveNumber);
  add_out_flags(verify_cmd, verify_out);

  // ---- experiment ----
  auto* exp_cmd = app.add_subcommand(
      "experiment", "prediction-error experiment with bound evaluation");
  TrialPlan exp_plan;
  std::string exp_design = "sphere", exp_rule = "theorem", exp_matrix;
  int exp_s = 3;
  double exp_sigma = 0.1, exp_alpha = 1.0;
  std::uint64_t exp_seed = 0;
  CommonOut exp_out;
  exp_cmd
      ->add_option("--design", exp_design,
                   "sphere | correlated-pairs | user-matrix")
      ->check(CLI::IsMember({"sphere", "correlated-pairs", "user-matrix"}));
  exp_cmd->add_option("--matrix", exp_matrix, "matrix for user-matrix design")
      ->check(CLI::ExistingFile);
  exp_cmd->add_option("--n", exp_plan.n, "row count")
      ->check(CLI::PositiveNumber);
  exp_cmd->add_option("--p", exp_plan.p, "design column count")
      ->check(CLI::PositiveNumber);
  exp_cmd->add_option("--s", exp_s, "true sparsity")
      ->check(CLI::PositiveNumber);
  exp_cmd->add_option("--sigma", exp_sigma, "noise level")
      ->check(CLI::NonNegativeNumber);
  exp_cmd->add_option("--alpha", exp_alpha, "confidence exponent")
      ->check(CLI::PositiveNumber);
  exp_cmd->add_option("--rho", exp_plan.rho_minus, "conditioning level")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  exp_cmd->add_option("--nu", exp_plan.nu, "ratio nu (default s/n)");
  exp_cmd
      ->add_option("--lambda-rule", exp_rule, "theorem | fixed")
      ->check(CLI::IsMember({"theorem", "fixed"}));
  exp_cmd->add_option("--lambda-fixed", exp_plan.lambda_fixed,
                      "lambda for the fixed rule")
      ->check(CLI::PositiveNumber);
  exp_cmd->add_option("--trials", exp_plan.trials, "trial count")
      ->check(CLI::PositiveNumber);
  exp_cmd->add_option("--seed", exp_seed, "master seed");
  exp_cmd->add_option("--p0-cap", exp_plan.p0_cap, "augmentation cap")
      ->check(CLI::PositiveNumber);
  exp_cmd->add_option("--gamma-directions", exp_plan.gamma_directions,
                      "directions for the per-trial index estimate")
      ->check(CLI::PositiveNumber);
  add_out_flags(exp_cmd, exp_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  try {
    if (*audit) {
      const DesignMatrix x = load_normalized(audit_matrix);
      const int n = static_cast<int>(x.rows());
      const int p = static_cast<int>(x.cols());
      if (audit_s > std::min(n, p)) {
        std::cerr << "--s must not exceed min(rows, cols) = "
                  << std::min(n, p) << "\n";
        return kExitUsage;
      }
      json report = base_report("audit");
      report["config"] = {{"matrix", audit_matrix},   {"s", audit_s},
                          {"rho", audit_rho},         {"nu", audit_nu},
                          {"sigma", audit_sigma},     {"alpha", audit_alpha},
                          {"directions", audit_directions},
                          {"kappa", audit_kappa},     {"seed", audit_seed}};
      json result;
      result["n"] = n;
      result["p"] = p;
      const double mu = p >= 2 ? coherence(x) : 0.0;
      result["coherence"] = mu;
      const SpectralInterval at_s = coherence_sigma_bounds(mu, audit_s);
      const SpectralInterval at_n =
          coherence_sigma_bounds(mu, std::min(n, p));
      result["sandwich_s"] = {{"sigma_min", at_s.sigma_min},
                              {"sigma_max", at_s.sigma_max}};
      result["sandwich_n"] = {{"sigma_min", at_n.sigma_min},
                              {"sigma_max", at_n.sigma_max}};
      const GammaEstimate estimate = gamma_estimate(
          x, GammaParams(audit_s, audit_rho), audit_directions, audit_kappa,
          Seed{audit_seed});
      result["gamma"] = to_json(estimate);
      TheoremInputs inputs;
      inputs.sigma = audit_sigma;
      inputs.alpha = audit_alpha;
      inputs.p = p;
      inputs.nu = audit_nu > 0.0 ? audit_nu
                                 : static_cast<double>(audit_s) / n;
      inputs.n = n;
      inputs.rho_minus = audit_rho;
      inputs.sigma_min_S = at_s.sigma_min;
      inputs.sigma_max_star = at_n.sigma_max;
      inputs.gamma = estimate.value;
      result["bound_report"] = to_json(lambda_min_theorem(inputs));
      result["sigma_source"] = "coherence-sandwich proxies";
      report["result"] = std::move(result);
      emit_report(audit_out.out, report);
      return kExitSuccess;
    }

    if (*fit_cmd) {
      const DesignMatrix x = load_normalized(fit_matrix);
      const Eigen::VectorXd y = load_vector_csv(fit_y);
      json report = base_report("fit");
      report["config"] = {{"matrix", fit_matrix},
                          {"y", fit_y},
                          {"lambda", fit_lambda},
                          {"tol", fit_tol},
                          {"max_sweeps", fit_sweeps}};
      try {
        const LassoFit result = fit(x, y, fit_lambda, fit_tol, fit_sweeps);
        report["result"] = to_json(result);
        emit_report(fit_out.out, report);
        return kExitSuccess;
      } catch (const NotConvergedError& e) {
        report["result"] = to_json(e.partial);
        emit_report(fit_out.out, report);
        std::cerr << e.what() << "\n";
        return kExitSuiteFailure;
      }
    }

    if (*aug_cmd) {
      const DesignMatrix x = load_normalized(aug_matrix);
      const Eigen::VectorXd y = load_vector_csv(aug_y);
      const int n = static_cast<int>(x.rows());
      const double mu = x.cols() >= 2 ? coherence(x) : 0.0;
      AugmentConfig config;
      config.L = aug_L;
      config.nu = aug_nu > 0.0 ? aug_nu : static_cast<double>(aug_s) / n;
      config.rho_minus = aug_rho;
      config.sigma_min_star =
          aug_sigma_min >= 0.0
              ? aug_sigma_min
              : coherence_sigma_bounds(mu, aug_s).sigma_min;
      config.sigma_max_star =
          aug_sigma_max >= 0.0
              ? aug_sigma_max
              : coherence_sigma_bounds(
                    mu, std::min(n, static_cast<int>(x.cols())))
                    .sigma_max;
      config.p0_cap = aug_cap;
      config.seed = Seed{aug_seed};
      if (aug_forced_p0 >= 0) {
        config.forced_p0 = aug_forced_p0;
      }
      json report = base_report("fit-aug");
      report["config"] = {{"matrix", aug_matrix},
                          {"y", aug_y},
                          {"lambda", aug_lambda},
                          {"L", config.L},
                          {"nu", config.nu},
                          {"rho", config.rho_minus},
                          {"sigma_min_star", config.sigma_min_star},
                          {"sigma_max_star", config.sigma_max_star},
                          {"p0_cap", config.p0_cap},
                          {"seed", aug_seed},
                          {"forced_p0", aug_forced_p0},
                          {"tol", aug_tol},
                          {"max_sweeps", aug_sweeps}};
      try {
        const AugmentedFit result =
            fit_augmented(x, y, aug_lambda, config, aug_tol, aug_sweeps);
        report["result"] = to_json(result);
        emit_report(aug_out.out, report);
        return kExitSuccess;
      } catch (const NotConvergedError& e) {
        AugmentedFit partial;
        partial.fit = e.partial;
        const Eigen::Index p0_used = e.partial.beta.size() - x.cols();
        partial.beta_x = e.partial.beta.head(x.cols());
        partial.beta_0 = e.partial.beta.tail(p0_used);
        partial.p0 = static_cast<int>(p0_used);
        partial.seed = config.seed;
        report["result"] = to_json(partial);
        emit_report(aug_out.out, report);
        std::cerr << e.what() << "\n";
        return kExitSuiteFailure;
      }
    }

    if (*gamma_cmd) {
      const DesignMatrix x = load_normalized(gamma_matrix);
      const int n = static_cast<int>(x.rows());
      json report = base_report("gamma");
      report["config"] = {{"matrix", gamma_matrix},
                          {"s", gamma_s},
                          {"rho", gamma_rho},
                          {"method", gamma_method},
                          {"epsilon", gamma_eps},
                          {"directions", gamma_directions},
                          {"kappa", gamma_kappa},
                          {"max_tries", gamma_tries},
                          {"seed", gamma_seed}};
      const bool exact =
          gamma_method == "exact" || (gamma_method == "auto" && n <= 3);
      const GammaParams params(gamma_s, gamma_rho);
      if (exact) {
        if (n > 3) {
          std::cerr << "--method exact requires at most 3 rows\n";
          return kExitUsage;
        }
        const GammaInterval interval = gamma_exact(x, params, gamma_eps);
        GammaEstimate estimate;
        estimate.value = interval.lo;
        estimate.method = "exact-net";
        estimate.epsilon = gamma_eps;
        estimate.directions =
            static_cast<int>(epsilon_net(n, gamma_eps).points.size());
        estimate.certificates.push_back(interval.best);
        json result = to_json(estimate);
        result["interval"] = {{"lo", interval.lo}, {"hi", interval.hi}};
        report["result"] = std::move(result);
      } else {
        const GammaEstimate estimate =
            gamma_estimate(x, params, gamma_directions, gamma_kappa,
                           Seed{gamma_seed}, gamma_tries);
        report["result"] = to_json(estimate);
      }
      emit_report(gamma_out.out, report);
      return kExitSuccess;
    }

    if (*verify_cmd) {
      plan.master_seed = Seed{verify_seed};
      json report = base_report("verify");
      report["config"] = {{"suite", suite_name},
                          {"n", plan.n},
                          {"p0", plan.p0},
                          {"s", plan.s},
                          {"rho", plan.rho_minus},
                          {"kappa", plan.kappa},
                          {"trials", plan.trials},
                          {"seed", verify_seed},
                          {"directions", verify_directions},
                          {"ks_samples", plan.ks_samples},
                          {"law_dimension", law_override},
                          {"exceedance_threshold", plan.exceedance_threshold},
                          {"coherence_threshold", plan.coherence_threshold},
                          {"norm_margin", plan.norm_margin},
                          {"max_tries", plan.max_tries}};
      SuiteReport suite;
      suite.runtime_seconds = timed_seconds([&] {
        if (suite_name == "dot-law") {
          suite = verify_dot_law(plan, law_override);
        } else if (suite_name == "order-stat") {
          suite = verify_order_statistic(plan);
        } else if (suite_name == "gamma") {
          suite = verify_gamma_bound(plan, verify_directions);
        } else if (suite_name == "cap-coherence") {
          suite = verify_cap_coherence(plan);
        } else if (suite_name == "norm") {
          suite = verify_norm_bound(plan);
        } else {
          suite = verify_submatrix_extraction(plan);
        }
      });
      write_suite_outputs(suite, verify_out, std::move(report));
      return suite.pass ? kExitSuccess : kExitSuiteFailure;
    }

    if (*exp_cmd) {
      exp_plan.master_seed = Seed{exp_seed};
      ExperimentDesign design = ExperimentDesign::sphere;
      if (exp_design == "correlated-pairs") {
        design = ExperimentDesign::correlated_pairs;
      } else if (exp_design == "user-matrix") {
        design = ExperimentDesign::user_matrix;
      }
      std::optional<DesignMatrix> user;
      if (design == ExperimentDesign::user_matrix) {
        if (exp_matrix.empty()) {
          std::cerr << "--matrix is required for the user-matrix design\n";
          return kExitUsage;
        }
        user = load_normalized(exp_matrix);
        exp_plan.n = static_cast<int>(user->rows());
      }
      if (exp_s > exp_plan.n) {
        std::cerr << "--s must not exceed --n\n";
        return kExitUsage;
      }
      json report = base_report("experiment");
      report["config"] = {{"design", exp_design},
                          {"matrix", exp_matrix},
                          {"n", exp_plan.n},
                          {"p", exp_plan.p},
                          {"s", exp_s},
                          {"sigma", exp_sigma},
                          {"alpha", exp_alpha},
                          {"rho", exp_plan.rho_minus},
                          {"nu", exp_plan.nu},
                          {"lambda_rule", exp_rule},
                          {"lambda_fixed", exp_plan.lambda_fixed},
                          {"trials", exp_plan.trials},
                          {"seed", exp_seed},
                          {"p0_cap", exp_plan.p0_cap},
                          {"gamma_directions", exp_plan.gamma_directions}};
      SuiteReport suite;
      suite.runtime_seconds = timed_seconds([&] {
        suite = experiment_prediction(
            exp_plan, design, exp_s, exp_sigma, exp_alpha,
            exp_rule == "theorem" ? LambdaRule::theorem : LambdaRule::fixed,
            user ? &*user : nullptr);
      });
      write_suite_outputs(suite, exp_out, std::move(report));
      return suite.pass ? kExitSuccess : kExitSuiteFailure;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitSuccess;
}
