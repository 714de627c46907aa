#include "surro/regress.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace surro {

namespace {

constexpr double kRankThreshold = 1e-10;
constexpr double kSigmaFloor = 1e-12;
constexpr double kLogSsrFloor = 1e-300;

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& X, const std::vector<int>& active) {
    Eigen::MatrixXd Xa(X.rows(), static_cast<Eigen::Index>(active.size()));
    for (std::size_t j = 0; j < active.size(); ++j) {
        if (active[j] < 0 || active[j] >= X.cols())
            throw ContractViolation("ols: active column index out of range");
        Xa.col(static_cast<Eigen::Index>(j)) = X.col(active[j]);
    }
    return Xa;
}

} // namespace

Metric metric_from_name(const std::string& name) {
    if (name == "aicc" || name == "AICc") return Metric::AICc;
    if (name == "hqic" || name == "HQIC") return Metric::HQIC;
    if (name == "mse" || name == "MSE") return Metric::MSE;
    if (name == "cp" || name == "Cp") return Metric::Cp;
    if (name == "bic" || name == "BIC") return Metric::BIC;
    if (name == "ric" || name == "RIC") return Metric::RIC;
    throw ParseError("unknown metric '" + name + "' (expected aicc|hqic|mse|cp|bic|ric)");
}

const char* metric_name(Metric metric) {
    switch (metric) {
    case Metric::AICc: return "aicc";
    case Metric::HQIC: return "hqic";
    case Metric::MSE: return "mse";
    case Metric::Cp: return "cp";
    case Metric::BIC: return "bic";
    case Metric::RIC: return "ric";
    }
    return "?";
}

FitResult ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& z,
                  const std::vector<int>& active) {
    if (active.empty()) throw ContractViolation("ols: active set must not be empty");
    if (X.rows() != z.size()) throw ContractViolation("ols: row count mismatch");
    if (X.rows() < 1) throw ContractViolation("ols: need at least one row");

    const Eigen::MatrixXd Xa = select_columns(X, active);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
    cod.setThreshold(kRankThreshold);
    cod.compute(Xa);

    FitResult fit;
    fit.coefficients = cod.solve(z);
    fit.degenerate = cod.rank() < Xa.cols();
    fit.ssr = (z - Xa * fit.coefficients).squaredNorm();
    return fit;
}

FitResult ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& z) {
    std::vector<int> all(static_cast<std::size_t>(X.cols()));
    for (std::size_t j = 0; j < all.size(); ++j) all[j] = static_cast<int>(j);
    return ols_fit(X, z, all);
}

SigmaSq sigma_hat_sq(const Eigen::MatrixXd& X, const Eigen::VectorXd& z) {
    if (X.rows() < 2) throw ContractViolation("sigma_hat_sq: need N >= 2");
    const FitResult full = ols_fit(X, z);
    SigmaSq s;
    s.value = full.ssr / static_cast<double>(X.rows() - 1);
    if (s.value < kSigmaFloor) {
        s.value = kSigmaFloor;
        s.floored = true;
    }
    return s;
}

MetricEval metric_value(Metric metric, double ssr, int n, int p, int k, double sigma_sq) {
    if (!(ssr >= 0.0)) throw ContractViolation("metric: ssr must be nonnegative");
    if (n < 2) throw ContractViolation("metric: need N >= 2");
    if (p < 0 || k < 1 || p > k) throw ContractViolation("metric: need 0 <= p <= k, k >= 1");

    const double N = n;
    const double P = p;
    MetricEval out;

    switch (metric) {
    case Metric::AICc: {
        if (n <= p + 1) throw ContractViolation("aicc: requires N > p + 1");
        double s = ssr;
        if (s < kLogSsrFloor) {
            s = kLogSsrFloor;
            out.ssr_floored = true;
        }
        out.value = N * std::log(s / N) + 2.0 * P + 2.0 * P * (P + 1.0) / (N - P - 1.0);
        return out;
    }
    case Metric::HQIC: {
        double s = ssr;
        if (s < kLogSsrFloor) {
            s = kLogSsrFloor;
            out.ssr_floored = true;
        }
        out.value = N * std::log(s / N) + 2.0 * P * std::log(std::log(N));
        return out;
    }
    case Metric::MSE:
        if (n <= p + 1) throw ContractViolation("mse: requires N > p + 1");
        out.value = ssr / (N - P - 1.0);
        return out;
    case Metric::Cp:
        if (!(sigma_sq > 0.0)) throw ContractViolation("cp: requires sigma_sq > 0");
        out.value = ssr / sigma_sq + 2.0 * P - N;
        return out;
    case Metric::BIC:
        if (!(sigma_sq > 0.0)) throw ContractViolation("bic: requires sigma_sq > 0");
        out.value = ssr / sigma_sq + P * std::log(N);
        return out;
    case Metric::RIC:
        if (!(sigma_sq > 0.0)) throw ContractViolation("ric: requires sigma_sq > 0");
        out.value = ssr / sigma_sq + 2.0 * P * std::log(static_cast<double>(k));
        return out;
    }
    throw ContractViolation("metric: unknown kind");
}

double big_m(const Eigen::MatrixXd& X, const Eigen::VectorXd& z) {
    const FitResult full = ols_fit(X, z);
    const double m = full.coefficients.cwiseAbs().sum();
    return m > 0.0 ? m : 1.0;
}

namespace {

struct Standardization {
    Eigen::MatrixXd cols;          // standardized matrix
    Eigen::VectorXd mean, scale;   // per column; scale = 1, mean = 0 for exempt columns
    std::vector<bool> is_constant;
    bool centered = false;         // centering applied (a constant column exists)
    int first_constant = -1;
};

Standardization standardize(const Eigen::MatrixXd& X) {
    const Eigen::Index n = X.rows(), k = X.cols();
    Standardization s;
    s.cols = X;
    s.mean = Eigen::VectorXd::Zero(k);
    s.scale = Eigen::VectorXd::Ones(k);
    s.is_constant.assign(static_cast<std::size_t>(k), false);

    std::vector<double> sd(static_cast<std::size_t>(k));
    for (Eigen::Index j = 0; j < k; ++j) {
        const double mu = X.col(j).mean();
        const double var = (X.col(j).array() - mu).square().sum() / static_cast<double>(n);
        sd[static_cast<std::size_t>(j)] = std::sqrt(var);
        s.mean[j] = mu;
        if (sd[static_cast<std::size_t>(j)] <= 1e-12 * std::max(1.0, std::abs(mu))) {
            s.is_constant[static_cast<std::size_t>(j)] = true;
            if (s.first_constant < 0) s.first_constant = static_cast<int>(j);
        }
    }
    // Column centering is only invertible when a constant column can absorb
    // the induced intercept; otherwise scale without centering.
    s.centered = s.first_constant >= 0;
    for (Eigen::Index j = 0; j < k; ++j) {
        if (s.is_constant[static_cast<std::size_t>(j)]) continue;
        const double dev = sd[static_cast<std::size_t>(j)];
        s.scale[j] = dev;
        if (s.centered)
            s.cols.col(j) = (X.col(j).array() - s.mean[j]) / dev;
        else
            s.cols.col(j) = X.col(j).array() / dev;
    }
    return s;
}

double soft_threshold(double v, double t) {
    if (v > t) return v - t;
    if (v < -t) return v + t;
    return 0.0;
}

} // namespace

double elastic_net_lambda_max(const Eigen::MatrixXd& X, const Eigen::VectorXd& z) {
    const Standardization s = standardize(X);
    return (s.cols.transpose() * z).cwiseAbs().maxCoeff();
}

FitResult elastic_net_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& z, double lambda,
                          double alpha) {
    if (X.rows() != z.size()) throw ContractViolation("elastic net: row count mismatch");
    if (!(lambda >= 0.0)) throw ContractViolation("elastic net: lambda must be >= 0");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ContractViolation("elastic net: alpha in [0,1]");

    const Standardization s = standardize(X);
    const Eigen::Index k = X.cols();
    const double l1 = lambda * alpha;
    const double l2 = 2.0 * lambda * (1.0 - alpha);

    Eigen::VectorXd colsq(k);
    for (Eigen::Index j = 0; j < k; ++j) colsq[j] = s.cols.col(j).squaredNorm();

    Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
    Eigen::VectorXd residual = z;

    constexpr int kMaxSweeps = 100000;
    constexpr double kTol = 1e-8;
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double max_change = 0.0;
        for (Eigen::Index j = 0; j < k; ++j) {
            const double denom = colsq[j] + l2;
            if (denom <= 0.0) continue;
            const double rho = s.cols.col(j).dot(residual) + colsq[j] * b[j];
            const double next = soft_threshold(rho, l1) / denom;
            const double change = next - b[j];
            if (change != 0.0) {
                residual -= change * s.cols.col(j);
                b[j] = next;
                max_change = std::max(max_change, std::abs(change));
            }
        }
        if (max_change <= kTol * std::max(1.0, b.cwiseAbs().maxCoeff())) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw ConvergenceError("elastic net: no convergence after 100000 sweeps, residual norm " +
                               std::to_string(residual.norm()));

    // Map back to the original column scale; the centering shift goes to the
    // first constant column.
    FitResult fit;
    fit.coefficients = Eigen::VectorXd::Zero(k);
    double intercept = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) {
        if (s.is_constant[static_cast<std::size_t>(j)]) {
            fit.coefficients[j] = b[j];
        } else {
            fit.coefficients[j] = b[j] / s.scale[j];
            if (s.centered) intercept -= b[j] * s.mean[j] / s.scale[j];
        }
    }
    if (intercept != 0.0) {
        const double c = s.mean[s.first_constant];
        if (std::abs(c) < 1e-300)
            throw ContractViolation("elastic net: constant column is zero, cannot absorb intercept");
        fit.coefficients[s.first_constant] += intercept / c;
    }
    fit.ssr = (z - X * fit.coefficients).squaredNorm();
    return fit;
}

} // namespace surro
