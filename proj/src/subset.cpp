#include "surro/subset.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace surro {

namespace {

constexpr double kTieTol = 1e-9;

struct Candidate {
    double value = std::numeric_limits<double>::infinity();
    double ssr = std::numeric_limits<double>::infinity();
    int p = 0;
    std::vector<int> active;
    bool valid = false;
};

// Lower value wins; ties within kTieTol prefer fewer columns, then the
// lexicographically smallest index set.
bool improves(const Candidate& cand, const Candidate& inc) {
    if (!inc.valid) return true;
    if (cand.value < inc.value - kTieTol) return true;
    if (cand.value > inc.value + kTieTol) return false;
    if (cand.p != inc.p) return cand.p < inc.p;
    return std::lexicographical_compare(cand.active.begin(), cand.active.end(),
                                        inc.active.begin(), inc.active.end());
}

class Searcher {
public:
    Searcher(const Eigen::MatrixXd& X, const Eigen::VectorXd& z, Metric metric)
        : X_(X), z_(z), n_(static_cast<int>(X.rows())), k_(static_cast<int>(X.cols())),
          metric_(metric) {
        if (n_ < 2) throw ContractViolation("subset: need N >= 2");
        if (k_ < 1) throw ContractViolation("subset: need k >= 1");
        if (X.rows() != z.size()) throw ContractViolation("subset: row count mismatch");
        gram_ = X.transpose() * X;
        xtz_ = X.transpose() * z;
        znorm2_ = z.squaredNorm();
        sigma_sq_ = sigma_hat_sq(X, z).value;
    }

    int k() const { return k_; }
    int n() const { return n_; }
    double sigma_sq() const { return sigma_sq_; }

    // Largest cardinality at which the metric is defined.
    int feasible_p_max() const {
        if (metric_ == Metric::AICc || metric_ == Metric::MSE)
            return std::min(k_, n_ - 2);
        return k_;
    }

    // Minimal SSR over the given columns; LLT on the cached Gram with a
    // rank-revealing QR fallback for ill-conditioned subsets. The SSR is
    // always recomputed from the explicit residual.
    double fit_ssr(const std::vector<int>& active) const {
        if (active.empty()) return znorm2_;
        const auto p = static_cast<Eigen::Index>(active.size());
        Eigen::MatrixXd g(p, p);
        Eigen::VectorXd b(p);
        for (Eigen::Index i = 0; i < p; ++i) {
            b[i] = xtz_[active[static_cast<std::size_t>(i)]];
            for (Eigen::Index j = 0; j < p; ++j)
                g(i, j) = gram_(active[static_cast<std::size_t>(i)],
                                active[static_cast<std::size_t>(j)]);
        }
        const Eigen::LLT<Eigen::MatrixXd> llt(g);
        if (llt.info() == Eigen::Success) {
            const Eigen::VectorXd beta = llt.solve(b);
            const double resid = (g * beta - b).cwiseAbs().maxCoeff();
            const double scale = b.cwiseAbs().maxCoeff() + g.cwiseAbs().maxCoeff();
            if (resid <= 1e-9 * std::max(1.0, scale)) return residual_ssr(active, beta);
        }
        // fallback: least squares on the raw columns
        Eigen::MatrixXd cols(X_.rows(), p);
        for (Eigen::Index j = 0; j < p; ++j)
            cols.col(j) = X_.col(active[static_cast<std::size_t>(j)]);
        const Eigen::VectorXd beta = cols.colPivHouseholderQr().solve(z_);
        return (z_ - cols * beta).squaredNorm();
    }

    double candidate_value(double ssr, int p, bool metric_mode) const {
        if (!metric_mode) return ssr;
        return metric_value(metric_, ssr, n_, p, k_, sigma_sq_).value;
    }

    // Lower bound on the candidate value over any subset S with
    // union_ssr <= ssr(S) and p in [p_lo, p_hi]. All six metrics are
    // monotone or linear in p at fixed ssr, so the endpoint minimum is valid.
    double node_bound(double union_ssr, int p_lo, int p_hi, bool metric_mode) const {
        if (!metric_mode) return union_ssr;
        const double a = candidate_value(union_ssr, p_lo, true);
        const double b = candidate_value(union_ssr, p_hi, true);
        return std::min(a, b);
    }

private:
    double residual_ssr(const std::vector<int>& active, const Eigen::VectorXd& beta) const {
        Eigen::VectorXd r = z_;
        for (std::size_t j = 0; j < active.size(); ++j)
            r -= beta[static_cast<Eigen::Index>(j)] * X_.col(active[j]);
        return r.squaredNorm();
    }

    const Eigen::MatrixXd& X_;
    const Eigen::VectorXd& z_;
    int n_, k_;
    Metric metric_;
    Eigen::MatrixXd gram_;
    Eigen::VectorXd xtz_;
    double znorm2_ = 0.0;
    double sigma_sq_ = 0.0;
};

struct SearchState {
    Candidate incumbent;
    long nodes = 0;
};

void consider(const Searcher& s, const std::vector<int>& active, double ssr, bool metric_mode,
              SearchState& state) {
    ++state.nodes;  // nodes = candidate subsets evaluated
    Candidate cand;
    cand.active = active;
    cand.p = static_cast<int>(active.size());
    cand.ssr = ssr;
    cand.value = s.candidate_value(ssr, cand.p, metric_mode);
    if (improves(cand, state.incumbent)) state.incumbent = std::move(cand);
}

void enumerate_subsets(const Searcher& s, int p_max, bool metric_mode, SearchState& state) {
    std::vector<int> subset;
    // combinations in increasing cardinality, lexicographic within each
    const std::function<void(int, int)> rec = [&](int start, int remaining) {
        if (remaining == 0) {
            ++state.nodes;
            consider(s, subset, s.fit_ssr(subset), metric_mode, state);
            return;
        }
        for (int c = start; c <= s.k() - remaining; ++c) {
            subset.push_back(c);
            rec(c + 1, remaining - 1);
            subset.pop_back();
        }
    };
    for (int p = 0; p <= p_max; ++p) rec(0, p);
}

// Greedy forward selection; every prefix (including the null model) seeds
// the incumbent so branch-and-bound starts with a strong bound.
void greedy_seed(const Searcher& s, int p_max, bool metric_mode, SearchState& state) {
    std::vector<int> current;
    consider(s, current, s.fit_ssr(current), metric_mode, state);
    std::vector<bool> used(static_cast<std::size_t>(s.k()), false);
    for (int step = 0; step < p_max; ++step) {
        int best_col = -1;
        double best_ssr = std::numeric_limits<double>::infinity();
        for (int c = 0; c < s.k(); ++c) {
            if (used[static_cast<std::size_t>(c)]) continue;
            std::vector<int> trial = current;
            trial.insert(std::lower_bound(trial.begin(), trial.end(), c), c);
            const double ssr = s.fit_ssr(trial);
            if (ssr < best_ssr - kTieTol) {
                best_ssr = ssr;
                best_col = c;
            }
        }
        if (best_col < 0) break;
        used[static_cast<std::size_t>(best_col)] = true;
        current.insert(std::lower_bound(current.begin(), current.end(), best_col), best_col);
        consider(s, current, best_ssr, metric_mode, state);
    }
}

void branch_and_bound(const Searcher& s, int p_max, bool metric_mode, SearchState& state) {
    greedy_seed(s, p_max, metric_mode, state);

    std::vector<int> fixed;
    // depth-first, include-branch first, over columns in index order
    const std::function<void(int)> dfs = [&](int col) {
        ++state.nodes;
        const int p_lo = static_cast<int>(fixed.size());
        const int p_hi = std::min(p_max, p_lo + (s.k() - col));

        std::vector<int> union_cols = fixed;
        for (int c = col; c < s.k(); ++c) union_cols.push_back(c);
        const double union_ssr = s.fit_ssr(union_cols);

        if (state.incumbent.valid) {
            const double bound = s.node_bound(union_ssr, p_lo, p_hi, metric_mode);
            if (bound > state.incumbent.value + kTieTol) return;
            // plateau: every descendant at best ties the incumbent, and with
            // more columns it loses the tie-break
            if (bound >= state.incumbent.value - kTieTol && p_lo > state.incumbent.p) return;
        }

        if (col == s.k()) {
            consider(s, fixed, union_ssr, metric_mode, state);
            return;
        }
        if (p_lo == p_max) {
            consider(s, fixed, s.fit_ssr(fixed), metric_mode, state);
            return;
        }

        fixed.push_back(col);
        dfs(col + 1);
        fixed.pop_back();
        dfs(col + 1);
    };
    dfs(0);
}

SearchState run_search(const Searcher& s, int p_max, bool metric_mode, SearchEngine engine,
                       bool& exhaustive) {
    if (engine == SearchEngine::Auto)
        engine = s.k() <= 16 ? SearchEngine::Exhaustive : SearchEngine::BranchAndBound;
    exhaustive = engine == SearchEngine::Exhaustive;

    SearchState state;
    if (engine == SearchEngine::Exhaustive)
        enumerate_subsets(s, p_max, metric_mode, state);
    else
        branch_and_bound(s, p_max, metric_mode, state);
    if (!state.incumbent.valid) throw Error("subset search produced no candidate");
    return state;
}

SubsetSolution finalize(const Searcher& s, const Eigen::MatrixXd& X, const Eigen::VectorXd& z,
                        Metric metric, const SearchState& state, bool exhaustive) {
    const Candidate& win = state.incumbent;
    SubsetSolution sol;
    sol.active = win.active;
    sol.cardinality = win.p;
    sol.metric = metric;
    sol.proof.exhaustive = exhaustive;
    sol.proof.nodes = state.nodes;

    if (win.active.empty()) {
        sol.coefficients.resize(0);
        sol.ssr = z.squaredNorm();
    } else {
        const FitResult refit = ols_fit(X, z, win.active);
        sol.coefficients = refit.coefficients;
        sol.ssr = refit.ssr;
        sol.degenerate = refit.degenerate;
        if (std::abs(sol.ssr - win.ssr) > kTieTol * std::max(1.0, std::abs(win.ssr)))
            throw Error("subset: refit SSR does not reproduce search SSR");
    }

    const MetricEval me = metric_value(metric, sol.ssr, s.n(), sol.cardinality, s.k(), s.sigma_sq());
    sol.metric_value = me.value;
    sol.metric_floored = me.ssr_floored;

    sol.big_m = big_m(X, z);
    sol.big_m_ok = true;
    for (Eigen::Index j = 0; j < sol.coefficients.size(); ++j) {
        if (std::abs(sol.coefficients[j]) > sol.big_m + 1e-9 * std::max(1.0, sol.big_m))
            sol.big_m_ok = false;
    }
    return sol;
}

std::string format_long(long v) { return std::to_string(v); }

} // namespace

std::string SearchProof::describe() const {
    if (exhaustive) return "exhaustive(" + format_long(nodes) + ")";
    return "branch-and-bound(" + format_long(nodes) + ")";
}

SubsetSolution best_subset_cardinality(const Eigen::MatrixXd& X, const Eigen::VectorXd& z, int r,
                                       Metric metric, SearchEngine engine) {
    Searcher s(X, z, metric);
    if (r < 1 || r > s.k())
        throw ContractViolation("best_subset_cardinality: need 1 <= r <= k");
    bool exhaustive = true;
    const SearchState state = run_search(s, r, /*metric_mode=*/false, engine, exhaustive);
    // Metric reporting at the winner still honors AICc/MSE feasibility.
    if ((metric == Metric::AICc || metric == Metric::MSE) &&
        state.incumbent.p > s.feasible_p_max())
        throw ContractViolation("best_subset_cardinality: metric undefined at the optimal "
                                "cardinality (N <= p + 1)");
    return finalize(s, X, z, metric, state, exhaustive);
}

SubsetSolution best_subset_metric(const Eigen::MatrixXd& X, const Eigen::VectorXd& z, Metric metric,
                                  SearchStrategy strategy, SearchEngine engine) {
    Searcher s(X, z, metric);
    const int p_max = s.feasible_p_max();
    if (p_max < 0) throw ContractViolation("best_subset_metric: no feasible cardinality");

    if (strategy == SearchStrategy::Direct) {
        bool exhaustive = true;
        const SearchState state = run_search(s, p_max, /*metric_mode=*/true, engine, exhaustive);
        return finalize(s, X, z, metric, state, exhaustive);
    }

    // Sweep: SSR-minimal model at every cardinality r (infeasible cardinalities
    // for AICc/MSE are skipped), then the best metric across the sweep. FM(r)
    // need not be unimodal, so every r is evaluated.
    SearchState best;
    bool all_exhaustive = true;
    long total_nodes = 0;
    for (int r = 1; r <= p_max; ++r) {
        bool exhaustive = true;
        SearchState state = run_search(s, r, /*metric_mode=*/false, engine, exhaustive);
        all_exhaustive = all_exhaustive && exhaustive;
        total_nodes += state.nodes;
        Candidate cand = state.incumbent;
        cand.value = s.candidate_value(cand.ssr, cand.p, true);
        if (improves(cand, best.incumbent)) best.incumbent = std::move(cand);
    }
    best.nodes = total_nodes;
    return finalize(s, X, z, metric, best, all_exhaustive);
}

} // namespace surro
