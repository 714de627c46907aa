#ifndef SURRO_SUBSET_HPP
#define SURRO_SUBSET_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

#include "surro/regress.hpp"

namespace surro {

enum class SearchEngine { Auto, Exhaustive, BranchAndBound };
enum class SearchStrategy { Sweep, Direct };

struct SearchProof {
    bool exhaustive = true;
    long nodes = 0;  // nodes visited (enumeration counts evaluated subsets)

    std::string describe() const;
};

/// Result of an exact best-subset search. The reported coefficients are
/// refit with ols_fit on the winning set, so the stored ssr is always
/// reproducible from them.
struct SubsetSolution {
    std::vector<int> active;
    Eigen::VectorXd coefficients;
    double ssr = 0.0;
    Metric metric = Metric::BIC;
    double metric_value = 0.0;
    bool metric_floored = false;
    int cardinality = 0;  // p = |active|
    bool degenerate = false;
    SearchProof proof;
    double big_m = 0.0;    // l1 bound from the full-model fit
    bool big_m_ok = true;  // every |beta_j| <= big_m (diagnostic only)
};

/// Globally SSR-minimal subset with at most r columns. Ties within 1e-9
/// prefer fewer columns, then the lexicographically smallest index set.
/// The metric is evaluated at the winning subset (p = |active|).
SubsetSolution best_subset_cardinality(const Eigen::MatrixXd& X, const Eigen::VectorXd& z, int r,
                                       Metric metric, SearchEngine engine = SearchEngine::Auto);

/// Metric-minimal model over all subsets (null model included). The sweep
/// strategy minimizes SSR at each cardinality and takes the best metric
/// across cardinalities; the direct strategy optimizes the metric in one
/// search. Both are exact and agree on the optimal metric value.
///
/// For AICc/MSE, cardinalities with N <= p + 1 are infeasible and skipped.
SubsetSolution best_subset_metric(const Eigen::MatrixXd& X, const Eigen::VectorXd& z, Metric metric,
                                  SearchStrategy strategy = SearchStrategy::Direct,
                                  SearchEngine engine = SearchEngine::Auto);

} // namespace surro

#endif
