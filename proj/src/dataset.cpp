#include "surro/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace surro {

void Dataset::validate() const {
    if (inputs.rows() < 1 || inputs.cols() < 1)
        throw ContractViolation("dataset: need N >= 1 rows and d >= 1 columns");
    if (responses.size() != inputs.rows())
        throw ContractViolation("dataset: response length does not match input row count");
    if (static_cast<Eigen::Index>(input_labels.size()) != inputs.cols())
        throw ContractViolation("dataset: label count does not match input column count");
    if (!inputs.allFinite() || !responses.allFinite())
        throw ContractViolation("dataset: non-finite entry");
}

bool Domain::contains(const Eigen::VectorXd& x, double slack) const {
    if (x.size() != lower.size()) return false;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        if (x[j] < lower[j] - slack || x[j] > upper[j] + slack) return false;
    }
    return true;
}

void Domain::validate() const {
    if (lower.size() < 1 || lower.size() != upper.size())
        throw ContractViolation("domain: bound vectors empty or mismatched");
    for (Eigen::Index j = 0; j < lower.size(); ++j) {
        if (!(lower[j] < upper[j]))
            throw ContractViolation("domain: lower[" + std::to_string(j) +
                                    "] must be strictly below upper[" + std::to_string(j) + "]");
    }
}

Domain Domain::interval(double lo, double hi) {
    Domain d;
    d.lower = Eigen::VectorXd::Constant(1, lo);
    d.upper = Eigen::VectorXd::Constant(1, hi);
    d.validate();
    return d;
}

namespace {

std::vector<std::string> split_comma(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_number(const std::string& field, long line_no) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &pos);
    } catch (const std::exception&) {
        throw ParseError("csv: non-numeric field '" + field + "' at line " + std::to_string(line_no));
    }
    // trailing junk after the number is malformed too
    while (pos < field.size() && (field[pos] == ' ' || field[pos] == '\t' || field[pos] == '\r')) ++pos;
    if (pos != field.size())
        throw ParseError("csv: non-numeric field '" + field + "' at line " + std::to_string(line_no));
    if (!std::isfinite(v))
        throw ParseError("csv: non-finite value at line " + std::to_string(line_no));
    return v;
}

std::string trim_cr(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
    return s;
}

} // namespace

Dataset read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("csv: cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw ParseError("csv: empty file '" + path + "'");
    const auto header = split_comma(trim_cr(line));
    if (header.size() < 2)
        throw ParseError("csv: header must name at least one input and the response");

    const std::size_t arity = header.size();
    std::vector<std::vector<double>> rows;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string clean = trim_cr(line);
        if (clean.empty()) continue;
        const auto fields = split_comma(clean);
        if (fields.size() != arity)
            throw ParseError("csv: expected " + std::to_string(arity) + " fields, got " +
                             std::to_string(fields.size()) + " at line " + std::to_string(line_no));
        std::vector<double> row(arity);
        for (std::size_t j = 0; j < arity; ++j) row[j] = parse_number(fields[j], line_no);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("csv: no data rows in '" + path + "'");

    Dataset d;
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto dims = static_cast<Eigen::Index>(arity - 1);
    d.inputs.resize(n, dims);
    d.responses.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < dims; ++j) d.inputs(i, j) = rows[i][j];
        d.responses[i] = rows[i][arity - 1];
    }
    d.input_labels.assign(header.begin(), header.end() - 1);
    d.response_label = header.back();
    d.validate();
    return d;
}

void write_csv(const Dataset& dataset, const std::string& path) {
    dataset.validate();
    std::ofstream out(path);
    if (!out) throw Error("csv: cannot write '" + path + "'");

    for (std::size_t j = 0; j < dataset.input_labels.size(); ++j)
        out << dataset.input_labels[j] << ',';
    out << dataset.response_label << '\n';

    char buf[64];
    for (Eigen::Index i = 0; i < dataset.n(); ++i) {
        for (Eigen::Index j = 0; j < dataset.dims(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", dataset.inputs(i, j));
            out << buf << ',';
        }
        std::snprintf(buf, sizeof buf, "%.17g", dataset.responses[i]);
        out << buf << '\n';
    }
    if (!out) throw Error("csv: write failure on '" + path + "'");
}

} // namespace surro
