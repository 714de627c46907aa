#ifndef SURRO_BASIS_HPP
#define SURRO_BASIS_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

#include "surro/dataset.hpp"

namespace surro {

enum class BasisKind { Power, Log, Exp, Constant };

/// One nonlinear feature transform of a single raw input.
///
/// Domain rules at evaluation:
///   - negative exponents and Log require x > 0;
///   - non-integral positive exponents require x >= 0;
///   - integral positive exponents, Exp and Constant accept any x.
struct BasisFunction {
    BasisKind kind = BasisKind::Constant;
    double exponent = 0.0;  // Power only; finite and nonzero
    int input = 0;          // index into the raw input vector

    double eval(const Eigen::VectorXd& x) const;
    /// d/dx_input of the transform (other coordinates do not enter).
    double derivative(const Eigen::VectorXd& x) const;

    /// Token form: "pow:<exp>", "log", "exp", "const", with "@<input>"
    /// appended for input indices other than 0.
    std::string label() const;

    bool operator==(const BasisFunction& o) const {
        return kind == o.kind && exponent == o.exponent && input == o.input;
    }
};

/// Ordered list of basis functions; column j of any design matrix built
/// from this spec is functions[j].
struct BasisSpec {
    std::vector<BasisFunction> functions;

    int k() const { return static_cast<int>(functions.size()); }
    /// Throws on empty list, duplicate transforms, or invalid exponents.
    void validate(Eigen::Index input_dims) const;
};

/// The 13-feature set used by the bundled kinetics experiments:
/// t^{+-0.5}, t^{+-1}, t^{+-2}, t^{+-3}, t^{+-4}, log t, exp t, 1.
BasisSpec standard_basis_13();

/// Parses a comma- or whitespace-separated token list ("pow:2,log,const").
/// The token "standard13" expands to standard_basis_13().
BasisSpec parse_basis_spec(const std::string& text);
std::string format_basis_spec(const BasisSpec& spec);

struct DesignMatrix {
    Eigen::MatrixXd values;  // N x k, finite
    BasisSpec spec;
};

/// Evaluates every basis function at every input row. Domain violations
/// raise DomainError naming the row and the offending function.
DesignMatrix expand(const Dataset& dataset, const BasisSpec& spec);

/// A fitted sparse linear combination of basis functions.
struct LinearModel {
    BasisSpec spec;
    std::vector<int> active;         // sorted, unique column indices
    Eigen::VectorXd coefficients;    // one per active index

    void validate() const;
};

/// zhat(x) = sum over active j of beta_j * phi_j(x).
double predict(const LinearModel& model, const Eigen::VectorXd& x);

/// d zhat / d x_dim at x. Used by derivative response constraints.
double predict_derivative(const LinearModel& model, const Eigen::VectorXd& x, int dim = 0);

/// Model file format: one line per active term, "<label> <coefficient>"
/// with 17 significant digits. A leading "# basis: ..." comment records
/// the full spec the model was selected from.
void write_model(const LinearModel& model, const std::string& path);
LinearModel read_model(const std::string& path);

} // namespace surro

#endif
