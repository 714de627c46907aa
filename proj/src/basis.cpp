#include "surro/basis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace surro {

namespace {

bool is_integral(double v) { return std::floor(v) == v; }

// Evaluates x^e under the module's domain rules; `what` names the caller
// (function label) for error messages.
double checked_pow(double x, double e, const std::string& what) {
    if (e < 0.0 && !(x > 0.0))
        throw DomainError(what + ": negative exponent requires strictly positive input, got " +
                          std::to_string(x));
    if (!is_integral(e) && x < 0.0)
        throw DomainError(what + ": fractional exponent requires nonnegative input, got " +
                          std::to_string(x));
    return std::pow(x, e);
}

} // namespace

double BasisFunction::eval(const Eigen::VectorXd& x) const {
    if (kind == BasisKind::Constant) return 1.0;
    if (input < 0 || input >= x.size())
        throw ContractViolation("basis: input index " + std::to_string(input) +
                                " out of range for point of dimension " + std::to_string(x.size()));
    const double v = x[input];
    switch (kind) {
    case BasisKind::Power:
        return checked_pow(v, exponent, label());
    case BasisKind::Log:
        if (!(v > 0.0))
            throw DomainError("log: requires strictly positive input, got " + std::to_string(v));
        return std::log(v);
    case BasisKind::Exp:
        return std::exp(v);
    default:
        return 1.0;
    }
}

double BasisFunction::derivative(const Eigen::VectorXd& x) const {
    if (kind == BasisKind::Constant) return 0.0;
    if (input < 0 || input >= x.size())
        throw ContractViolation("basis: input index out of range");
    const double v = x[input];
    switch (kind) {
    case BasisKind::Power:
        return exponent * checked_pow(v, exponent - 1.0, label() + " derivative");
    case BasisKind::Log:
        if (!(v > 0.0))
            throw DomainError("log derivative: requires strictly positive input");
        return 1.0 / v;
    case BasisKind::Exp:
        return std::exp(v);
    default:
        return 0.0;
    }
}

std::string BasisFunction::label() const {
    std::string base;
    switch (kind) {
    case BasisKind::Power: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "pow:%g", exponent);
        base = buf;
        break;
    }
    case BasisKind::Log: base = "log"; break;
    case BasisKind::Exp: base = "exp"; break;
    case BasisKind::Constant: base = "const"; break;
    }
    if (input != 0) base += "@" + std::to_string(input);
    return base;
}

void BasisSpec::validate(Eigen::Index input_dims) const {
    if (functions.empty()) throw ContractViolation("basis spec: empty");
    std::set<std::string> seen;
    for (const auto& f : functions) {
        if (f.kind == BasisKind::Power && (!std::isfinite(f.exponent) || f.exponent == 0.0))
            throw ContractViolation("basis spec: power exponent must be finite and nonzero");
        if (f.input < 0 || f.input >= input_dims)
            throw ContractViolation("basis spec: input index " + std::to_string(f.input) +
                                    " out of range for d=" + std::to_string(input_dims));
        if (!seen.insert(f.label()).second)
            throw ContractViolation("basis spec: duplicate transform " + f.label());
    }
}

BasisSpec standard_basis_13() {
    BasisSpec spec;
    for (double e : {0.5, 1.0, 2.0, 3.0, 4.0}) {
        spec.functions.push_back({BasisKind::Power, e, 0});
        spec.functions.push_back({BasisKind::Power, -e, 0});
    }
    spec.functions.push_back({BasisKind::Log, 0.0, 0});
    spec.functions.push_back({BasisKind::Exp, 0.0, 0});
    spec.functions.push_back({BasisKind::Constant, 0.0, 0});
    return spec;
}

namespace {

BasisFunction parse_token(const std::string& token) {
    std::string body = token;
    int input = 0;
    if (const auto at = body.find('@'); at != std::string::npos) {
        try {
            input = std::stoi(body.substr(at + 1));
        } catch (const std::exception&) {
            throw ParseError("basis token: bad input index in '" + token + "'");
        }
        body = body.substr(0, at);
    }
    if (body == "log") return {BasisKind::Log, 0.0, input};
    if (body == "exp") return {BasisKind::Exp, 0.0, input};
    if (body == "const") return {BasisKind::Constant, 0.0, input};
    if (body.rfind("pow:", 0) == 0) {
        std::size_t pos = 0;
        double e = 0.0;
        const std::string num = body.substr(4);
        try {
            e = std::stod(num, &pos);
        } catch (const std::exception&) {
            throw ParseError("basis token: bad exponent in '" + token + "'");
        }
        if (pos != num.size()) throw ParseError("basis token: bad exponent in '" + token + "'");
        return {BasisKind::Power, e, input};
    }
    throw ParseError("basis token: unknown transform '" + token + "'");
}

} // namespace

BasisSpec parse_basis_spec(const std::string& text) {
    std::string normalized = text;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::stringstream ss(normalized);
    BasisSpec spec;
    std::string token;
    while (ss >> token) {
        if (token == "standard13") {
            const auto std13 = standard_basis_13();
            spec.functions.insert(spec.functions.end(), std13.functions.begin(),
                                  std13.functions.end());
        } else {
            spec.functions.push_back(parse_token(token));
        }
    }
    if (spec.functions.empty()) throw ParseError("basis spec: no tokens in '" + text + "'");
    return spec;
}

std::string format_basis_spec(const BasisSpec& spec) {
    std::string out;
    for (std::size_t j = 0; j < spec.functions.size(); ++j) {
        if (j) out += ',';
        out += spec.functions[j].label();
    }
    return out;
}

DesignMatrix expand(const Dataset& dataset, const BasisSpec& spec) {
    dataset.validate();
    spec.validate(dataset.dims());

    DesignMatrix dm;
    dm.spec = spec;
    dm.values.resize(dataset.n(), spec.k());
    for (Eigen::Index i = 0; i < dataset.n(); ++i) {
        const Eigen::VectorXd row = dataset.inputs.row(i);
        for (int j = 0; j < spec.k(); ++j) {
            double v = 0.0;
            try {
                v = spec.functions[j].eval(row);
            } catch (const DomainError& e) {
                throw DomainError("design matrix row " + std::to_string(i) + ": " + e.what());
            }
            if (!std::isfinite(v))
                throw DomainError("design matrix row " + std::to_string(i) + ": " +
                                  spec.functions[j].label() + " overflowed");
            dm.values(i, j) = v;
        }
    }
    return dm;
}

void LinearModel::validate() const {
    if (coefficients.size() != static_cast<Eigen::Index>(active.size()))
        throw ContractViolation("model: coefficient count does not match active set");
    if (!std::is_sorted(active.begin(), active.end()))
        throw ContractViolation("model: active indices must be sorted");
    for (std::size_t i = 0; i < active.size(); ++i) {
        if (active[i] < 0 || active[i] >= spec.k())
            throw ContractViolation("model: active index out of range");
        if (i > 0 && active[i] == active[i - 1])
            throw ContractViolation("model: duplicate active index");
    }
}

double predict(const LinearModel& model, const Eigen::VectorXd& x) {
    double sum = 0.0;
    for (std::size_t i = 0; i < model.active.size(); ++i)
        sum += model.coefficients[static_cast<Eigen::Index>(i)] *
               model.spec.functions[model.active[i]].eval(x);
    return sum;
}

double predict_derivative(const LinearModel& model, const Eigen::VectorXd& x, int dim) {
    double sum = 0.0;
    for (std::size_t i = 0; i < model.active.size(); ++i) {
        const auto& f = model.spec.functions[model.active[i]];
        if (f.input != dim) continue;
        sum += model.coefficients[static_cast<Eigen::Index>(i)] * f.derivative(x);
    }
    return sum;
}

void write_model(const LinearModel& model, const std::string& path) {
    model.validate();
    std::ofstream out(path);
    if (!out) throw Error("model: cannot write '" + path + "'");
    out << "# basis: " << format_basis_spec(model.spec) << '\n';
    char buf[64];
    for (std::size_t i = 0; i < model.active.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", model.coefficients[static_cast<Eigen::Index>(i)]);
        out << model.spec.functions[model.active[i]].label() << ' ' << buf << '\n';
    }
}

LinearModel read_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("model: cannot open '" + path + "'");

    LinearModel model;
    bool have_spec = false;
    std::vector<std::pair<std::string, double>> terms;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line.rfind("# basis:", 0) == 0) {
            model.spec = parse_basis_spec(line.substr(8));
            have_spec = true;
            continue;
        }
        if (line[0] == '#') continue;
        std::stringstream ss(line);
        std::string label;
        double coeff = 0.0;
        if (!(ss >> label >> coeff))
            throw ParseError("model: malformed line " + std::to_string(line_no));
        terms.emplace_back(label, coeff);
    }
    if (terms.empty()) throw ParseError("model: no terms in '" + path + "'");

    if (!have_spec) {
        for (const auto& [label, coeff] : terms) model.spec.functions.push_back(parse_token(label));
    }

    std::vector<std::pair<int, double>> indexed;
    for (const auto& [label, coeff] : terms) {
        int idx = -1;
        for (int j = 0; j < model.spec.k(); ++j) {
            if (model.spec.functions[j].label() == label) {
                idx = j;
                break;
            }
        }
        if (idx < 0) throw ParseError("model: term '" + label + "' not present in basis spec");
        indexed.emplace_back(idx, coeff);
    }
    std::sort(indexed.begin(), indexed.end());
    model.coefficients.resize(static_cast<Eigen::Index>(indexed.size()));
    for (std::size_t i = 0; i < indexed.size(); ++i) {
        model.active.push_back(indexed[i].first);
        model.coefficients[static_cast<Eigen::Index>(i)] = indexed[i].second;
    }
    model.validate();
    return model;
}

} // namespace surro
