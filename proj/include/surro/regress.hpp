#ifndef SURRO_REGRESS_HPP
#define SURRO_REGRESS_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

#include "surro/common.hpp"

namespace surro {

/// Model fitness metrics. All trade training error against the number of
/// selected regressors; Cp, BIC and RIC additionally need the residual
/// variance estimate from the full model.
enum class Metric { AICc, HQIC, MSE, Cp, BIC, RIC };

Metric metric_from_name(const std::string& name);
const char* metric_name(Metric metric);

struct FitResult {
    Eigen::VectorXd coefficients;  // one per active column (ols) / per column (elastic net)
    double ssr = 0.0;
    bool degenerate = false;  // rank-deficient system, minimum-norm solution returned
};

/// Least squares on the selected columns of X. Rank-deficient systems get
/// the minimum-norm solution (complete orthogonal decomposition, pivot
/// threshold 1e-10 relative) and the degenerate flag.
FitResult ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& z,
                  const std::vector<int>& active);

/// Convenience overload: all columns active.
FitResult ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& z);

struct SigmaSq {
    double value = 0.0;
    bool floored = false;
};

/// Residual variance estimate SSR_full / (N - 1) from the full-column
/// least-squares fit. Exact fits are floored at 1e-12 and flagged.
SigmaSq sigma_hat_sq(const Eigen::MatrixXd& X, const Eigen::VectorXd& z);

struct MetricEval {
    double value = 0.0;
    bool ssr_floored = false;  // log-based metric evaluated on an exact fit
};

/// Evaluates one fitness metric:
///   AICc = N log(ssr/N) + 2p + 2p(p+1)/(N-p-1)
///   HQIC = N log(ssr/N) + 2p log(log N)
///   MSE  = ssr/(N-p-1)
///   Cp   = ssr/sigma_sq + 2p - N
///   BIC  = ssr/sigma_sq + p log N
///   RIC  = ssr/sigma_sq + 2p log k
/// Inside logarithms ssr is floored at 1e-300 and the result flagged.
MetricEval metric_value(Metric metric, double ssr, int n, int p, int k, double sigma_sq);

/// Big-M bound for coefficient-selection formulations: the l1 norm of the
/// full-model least-squares coefficients, with M = 1 when they are all zero.
double big_m(const Eigen::MatrixXd& X, const Eigen::VectorXd& z);

/// Coordinate-descent minimizer of
///   1/2 ||z - X b||^2 + lambda*alpha*||b||_1 + lambda*(1-alpha)*||b||_2^2
/// with non-constant columns standardized internally (zero mean, unit
/// variance; constant columns exempt). Column centering is applied only
/// when a constant column is present to absorb the intercept shift, so the
/// returned coefficients always reproduce the fit in the original scale.
FitResult elastic_net_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& z, double lambda,
                          double alpha);

/// Smallest lambda at which the alpha = 1 (lasso) solution is identically
/// zero: the max absolute correlation of the standardized columns with z.
double elastic_net_lambda_max(const Eigen::MatrixXd& X, const Eigen::VectorXd& z);

} // namespace surro

#endif
