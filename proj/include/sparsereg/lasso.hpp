#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "sparsereg/errors.hpp"
#include "sparsereg/matrix.hpp"

namespace sparsereg {

// Entries with |beta_j| above this are reported as support.
inline constexpr double kSupportThreshold = 1e-9;
inline constexpr double kDefaultFitTol = 1e-8;
inline constexpr int kDefaultMaxSweeps = 100000;

struct LassoFit {
  Eigen::VectorXd beta;
  double lambda = 0.0;
  double objective = 0.0;
  double kkt = 0.0;
  IndexSet support;
  int sweeps = 0;
  bool converged = false;
  // One entry per completed sweep, for monotonicity diagnostics.
  std::vector<double> objective_per_sweep;
};

struct NotConvergedError : Error {
  LassoFit partial;
  explicit NotConvergedError(LassoFit fit)
      : Error("coordinate descent did not reach the KKT tolerance in " +
              std::to_string(fit.sweeps) + " sweeps (residual " +
              std::to_string(fit.kkt) + ")"),
        partial(std::move(fit)) {}
};

// 0.5 ||y - X beta||^2 + lambda ||beta||_1
double objective_value(const DesignMatrix& x, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& beta, double lambda);

// Worst violation of the subgradient optimality condition:
// |X_j^t (y - X beta) - lambda sign(beta_j)| on the support,
// max(0, |X_j^t (y - X beta)| - lambda) off it.
double kkt_residual(const DesignMatrix& x, const Eigen::VectorXd& y,
                    const Eigen::VectorXd& beta, double lambda);

// Cyclic coordinate descent with exact soft-threshold updates. Requires
// unit-norm columns (the per-coordinate problem then has the closed-form
// solution). Starts from beta = 0 unless warm_start is given. Throws
// NotConvergedError (carrying the partial fit) when the KKT residual is
// still above tol after max_sweeps.
LassoFit fit(const DesignMatrix& x, const Eigen::VectorXd& y, double lambda,
             double tol = kDefaultFitTol, int max_sweeps = kDefaultMaxSweeps,
             const Eigen::VectorXd* warm_start = nullptr);

// If the fit's support exceeds n_cap, eliminates active columns that are
// numerically dependent on the remaining active ones, re-solving after
// each elimination and keeping the objective unchanged to 1e-10. There is
// always an optimal solution supported on at most n columns, so for
// n_cap = n this terminates unless numerics block every candidate, in
// which case ReductionFailedError is thrown.
LassoFit sparsify_support(const DesignMatrix& x, const Eigen::VectorXd& y,
                          const LassoFit& fit, int n_cap);

// Inputs for the lambda rule and the prediction bound. sigma_min_S and
// sigma_max_star may be exact values (small instances) or coherence
// sandwich proxies; callers should note which in the report.
struct TheoremInputs {
  double sigma = 1.0;       // noise level
  double alpha = 1.0;       // confidence exponent
  long p = 0;               // column count
  double nu = 0.0;          // subset-size ratio, gamma evaluated at nu*n
  int n = 0;                // row count
  double rho_minus = 0.5;
  double sigma_min_S = 0.0;
  double sigma_max_star = 0.0;
  double gamma = 0.0;       // index value or upper bound at cardinality nu*n
};

struct BoundReport {
  // True when rho*sigma_min_S - nu*n*gamma*sigma_max_star > 0 (the strict
  // form of the admissibility condition on nu); B is defined exactly then.
  bool precondition_nu_ok = false;
  std::optional<double> B;
  std::optional<double> lambda_min;
  std::optional<double> C;  // bound constant evaluated at lambda_min
  double probability_headline = 0.0;  // 1 - p^-alpha, as stated
  double probability_union = 0.0;     // 1 - 3 p^-alpha, per-step budget
  std::string notes;
};

// Evaluates the lambda rule:
//   lambda_min = sigma * (B * sigma_max_star * sqrt(2 alpha log p +
//                log(2 nu n)) + sqrt((2 alpha + 1) log p + log 2))
// with B = nu n gamma / (rho sigma_min_S - nu n gamma sigma_max_star).
// Infeasibility is reported through the flags, never thrown.
BoundReport lambda_min_theorem(const TheoremInputs& inputs);

// s * C with
//   C = (lambda + sigma sqrt((2 alpha + 1) log p + log 2))
//       * (sigma sqrt(2 alpha log p + log(2 nu n)) + lambda)
//       / (rho * sigma_min_S).
// Requires s <= nu * n.
double prediction_bound(const TheoremInputs& inputs, double lambda, int s);

namespace detail {
double bound_constant(const TheoremInputs& inputs, double lambda);
}

}  // namespace sparsereg
