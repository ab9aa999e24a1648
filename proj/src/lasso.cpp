#include "sparsereg/lasso.hpp"

#include <algorithm>
#include <cmath>

namespace sparsereg {

namespace {

double soft_threshold(double z, double lambda) {
  if (z > lambda) return z - lambda;
  if (z < -lambda) return z + lambda;
  return 0.0;
}

IndexSet support_of(const Eigen::VectorXd& beta) {
  std::vector<int> idx;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    if (std::abs(beta(j)) > kSupportThreshold) {
      idx.push_back(static_cast<int>(j));
    }
  }
  return IndexSet(std::move(idx));
}

}  // namespace

double objective_value(const DesignMatrix& x, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& beta, double lambda) {
  const Eigen::VectorXd residual = y - x.data() * beta;
  return 0.5 * residual.squaredNorm() + lambda * beta.lpNorm<1>();
}

double kkt_residual(const DesignMatrix& x, const Eigen::VectorXd& y,
                    const Eigen::VectorXd& beta, double lambda) {
  const Eigen::VectorXd correlation =
      x.data().transpose() * (y - x.data() * beta);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    double violation;
    if (beta(j) != 0.0) {
      violation = std::abs(correlation(j) -
                           lambda * (beta(j) > 0.0 ? 1.0 : -1.0));
    } else {
      violation = std::max(0.0, std::abs(correlation(j)) - lambda);
    }
    worst = std::max(worst, violation);
  }
  return worst;
}

LassoFit fit(const DesignMatrix& x, const Eigen::VectorXd& y, double lambda,
             double tol, int max_sweeps, const Eigen::VectorXd* warm_start) {
  if (!x.is_normalized()) {
    throw NotNormalizedError();
  }
  if (y.size() != x.rows()) {
    throw DimensionMismatchError("response length must equal row count");
  }
  if (!(lambda > 0.0)) {
    throw OutOfRangeError("lambda must be positive");
  }
  const Eigen::Index p = x.cols();
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  if (warm_start != nullptr) {
    if (warm_start->size() != p) {
      throw DimensionMismatchError("warm start length must equal cols");
    }
    beta = *warm_start;
  }
  Eigen::VectorXd residual = y - x.data() * beta;

  LassoFit result;
  result.lambda = lambda;
  result.objective_per_sweep.reserve(64);

  int sweep = 0;
  bool converged = false;
  for (; sweep < max_sweeps; ++sweep) {
    for (Eigen::Index j = 0; j < p; ++j) {
      const double old = beta(j);
      // Unit column norm makes the exact coordinate minimizer a single
      // soft-threshold of the partial correlation.
      const double z = x.column(j).dot(residual) + old;
      const double updated = soft_threshold(z, lambda);
      if (updated != old) {
        residual += x.column(j) * (old - updated);
        beta(j) = updated;
      }
    }
    result.objective_per_sweep.push_back(0.5 * residual.squaredNorm() +
                                         lambda * beta.lpNorm<1>());
    if (kkt_residual(x, y, beta, lambda) <= tol) {
      converged = true;
      ++sweep;
      break;
    }
  }

  result.beta = std::move(beta);
  result.sweeps = sweep;
  result.converged = converged;
  result.objective = objective_value(x, y, result.beta, lambda);
  result.kkt = kkt_residual(x, y, result.beta, lambda);
  result.support = support_of(result.beta);
  if (!converged) {
    throw NotConvergedError(std::move(result));
  }
  return result;
}

namespace {

// True when column j of the active block is within tol of the span of the
// other active columns.
bool column_is_dependent(const Eigen::MatrixXd& x,
                         const std::vector<int>& active, std::size_t drop,
                         double tol) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd others(n, static_cast<Eigen::Index>(active.size() - 1));
  Eigen::Index c = 0;
  for (std::size_t k = 0; k < active.size(); ++k) {
    if (k == drop) continue;
    others.col(c++) = x.col(active[k]);
  }
  const Eigen::VectorXd target = x.col(active[drop]);
  const Eigen::VectorXd coeffs =
      others.completeOrthogonalDecomposition().solve(target);
  return (others * coeffs - target).norm() <= tol;
}

}  // namespace

LassoFit sparsify_support(const DesignMatrix& x, const Eigen::VectorXd& y,
                          const LassoFit& fit_in, int n_cap) {
  if (!fit_in.converged) {
    throw OutOfRangeError("sparsify_support requires a converged fit");
  }
  if (n_cap < 1) {
    throw OutOfRangeError("support cap must be at least 1");
  }
  if (fit_in.support.size() <= n_cap) {
    return fit_in;
  }
  constexpr double kDependencyTol = 1e-10;
  const double objective_slack =
      1e-10 * std::max(1.0, std::abs(fit_in.objective));

  LassoFit current = fit_in;
  std::vector<int> active = current.support.indices();
  while (static_cast<int>(active.size()) > n_cap) {
    bool eliminated = false;
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (!column_is_dependent(x.data(), active, k, kDependencyTol)) {
        continue;
      }
      std::vector<int> reduced = active;
      reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(k));
      const IndexSet reduced_set{std::vector<int>(reduced)};
      DesignMatrix sub(select_columns(x.data(), reduced_set), true);
      LassoFit refit;
      try {
        refit = fit(sub, y, current.lambda, 1e-12, kDefaultMaxSweeps);
      } catch (const NotConvergedError& e) {
        refit = e.partial;
      }
      if (std::abs(refit.objective - fit_in.objective) > objective_slack) {
        continue;  // this column carried irreplaceable mass; try the next
      }
      Eigen::VectorXd scattered = Eigen::VectorXd::Zero(x.cols());
      for (int r = 0; r < reduced_set.size(); ++r) {
        scattered(reduced_set[r]) = refit.beta(r);
      }
      current.beta = std::move(scattered);
      current.objective = objective_value(x, y, current.beta, current.lambda);
      current.kkt = kkt_residual(x, y, current.beta, current.lambda);
      current.support = IndexSet([&] {
        std::vector<int> idx;
        for (Eigen::Index j = 0; j < current.beta.size(); ++j) {
          if (std::abs(current.beta(j)) > kSupportThreshold) {
            idx.push_back(static_cast<int>(j));
          }
        }
        return idx;
      }());
      active = current.support.indices();
      eliminated = true;
      break;
    }
    if (!eliminated) {
      throw ReductionFailedError(
          "no objective-preserving support of size <= " +
          std::to_string(n_cap) + " was found");
    }
  }
  return current;
}

namespace detail {

double bound_constant(const TheoremInputs& in, double lambda) {
  const double log_p = std::log(static_cast<double>(in.p));
  const double noise_high =
      in.sigma * std::sqrt((2.0 * in.alpha + 1.0) * log_p + std::log(2.0));
  const double noise_low =
      in.sigma *
      std::sqrt(2.0 * in.alpha * log_p + std::log(2.0 * in.nu * in.n));
  return (lambda + noise_high) * (noise_low + lambda) /
         (in.rho_minus * in.sigma_min_S);
}

}  // namespace detail

BoundReport lambda_min_theorem(const TheoremInputs& in) {
  BoundReport report;
  const double p_alpha = std::pow(static_cast<double>(in.p), -in.alpha);
  report.probability_headline = 1.0 - p_alpha;
  report.probability_union = 1.0 - 3.0 * p_alpha;

  const double nu_n_gamma = in.nu * in.n * in.gamma;
  const double denominator =
      in.rho_minus * in.sigma_min_S - nu_n_gamma * in.sigma_max_star;
  report.precondition_nu_ok = denominator > 0.0;
  if (!report.precondition_nu_ok) {
    report.notes =
        "rho*sigma_min - nu*n*gamma*sigma_max <= 0; B and lambda_min are "
        "undefined";
    return report;
  }
  const double log_p = std::log(static_cast<double>(in.p));
  const double log_2nun = std::log(2.0 * in.nu * in.n);
  const double inner_low = 2.0 * in.alpha * log_p + log_2nun;
  if (inner_low < 0.0) {
    report.precondition_nu_ok = false;
    report.notes = "2*alpha*log(p) + log(2*nu*n) is negative; lambda rule "
                   "undefined at these parameters";
    return report;
  }
  report.B = nu_n_gamma / denominator;
  report.lambda_min =
      in.sigma *
      (*report.B * in.sigma_max_star * std::sqrt(inner_low) +
       std::sqrt((2.0 * in.alpha + 1.0) * log_p + std::log(2.0)));
  report.C = detail::bound_constant(in, *report.lambda_min);
  return report;
}

double prediction_bound(const TheoremInputs& in, double lambda, int s) {
  if (static_cast<double>(s) > in.nu * in.n + 1e-12) {
    throw SparsityTooLargeError("s = " + std::to_string(s) +
                                " exceeds nu*n = " +
                                std::to_string(in.nu * in.n));
  }
  return static_cast<double>(s) * detail::bound_constant(in, lambda);
}

}  // namespace sparsereg
