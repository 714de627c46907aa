#ifndef SURRO_DATASET_HPP
#define SURRO_DATASET_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

#include "surro/common.hpp"

namespace surro {

/// Immutable training/validation data: N input points (d columns) and one
/// response vector. Construction validates shape and finiteness; after that
/// the container is safe to share across threads.
struct Dataset {
    Eigen::MatrixXd inputs;                 // N x d
    Eigen::VectorXd responses;              // N
    std::vector<std::string> input_labels;  // d names
    std::string response_label;

    Eigen::Index n() const { return inputs.rows(); }
    Eigen::Index dims() const { return inputs.cols(); }

    /// Throws ContractViolation on empty data, shape mismatch, or any
    /// non-finite entry.
    void validate() const;
};

/// A box x_lower <= x <= x_upper, strict on every coordinate.
struct Domain {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    Eigen::Index dims() const { return lower.size(); }
    double width(Eigen::Index j) const { return upper[j] - lower[j]; }
    bool contains(const Eigen::VectorXd& x, double slack = 0.0) const;
    void validate() const;

    static Domain interval(double lo, double hi);
};

/// Reads a CSV file: comma separator, '.' decimal point, one header row
/// naming d input columns plus the response (last column). Malformed rows
/// raise ParseError naming the 1-based line number; non-finite values are
/// rejected.
Dataset read_csv(const std::string& path);

/// Writes a dataset in the dialect read_csv accepts. Values carry 17
/// significant digits, so read_csv(write_csv(d)) reproduces d exactly.
void write_csv(const Dataset& dataset, const std::string& path);

} // namespace surro

#endif
