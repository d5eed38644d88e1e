#include "antgrn/correlation.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <unordered_set>

#include "antgrn/serialize.hpp"

namespace antgrn {

void ExpressionMatrix::validate() const {
    if (static_cast<Index>(gene_names.size()) != values.rows()) {
        throw InvariantViolation("gene name count does not match row count");
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : gene_names) {
        if (!seen.insert(name).second) throw DuplicateGene(name);
    }
    if (values.cols() < 2) {
        throw InvariantViolation("expression matrix needs at least 2 samples");
    }
    if (!sample_labels.empty() &&
        static_cast<Index>(sample_labels.size()) != values.cols()) {
        throw InvariantViolation("sample label count does not match column count");
    }
    if (!values.allFinite()) {
        throw InvariantViolation("expression matrix contains non-finite values");
    }
}

void CorrelationMatrix::validate() const {
    const Index n = coefficients.rows();
    if (coefficients.cols() != n) {
        throw NotSquare("correlation matrix is " + std::to_string(n) + "x" +
                        std::to_string(coefficients.cols()));
    }
    if (static_cast<Index>(gene_names.size()) != n) {
        throw InvariantViolation("gene name count does not match matrix size");
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : gene_names) {
        if (!seen.insert(name).second) throw DuplicateGene(name);
    }
    for (Index i = 0; i < n; ++i) {
        if (coefficients(i, i) != 1.0) {
            throw InvariantViolation("diagonal entry for \"" + gene_names[i] + "\" is not 1");
        }
        for (Index j = i + 1; j < n; ++j) {
            const double c = coefficients(i, j);
            if (c != coefficients(j, i)) {
                throw InvariantViolation("matrix is not symmetric at (" + gene_names[i] + ", " +
                                         gene_names[j] + ")");
            }
            if (!(c >= -1.0 && c <= 1.0)) {
                throw InvariantViolation("entry (" + gene_names[i] + ", " + gene_names[j] +
                                         ") = " + format_double(c) + " outside [-1, 1]");
            }
        }
    }
}

CorrelationMatrix build_correlation_matrix(const ExpressionMatrix& expr) {
    expr.validate();
    const Index n = expr.n_genes();

    for (Index i = 0; i < n; ++i) {
        if (expr.values.row(i).minCoeff() == expr.values.row(i).maxCoeff()) {
            throw DegenerateSeries("gene \"" + expr.gene_names[i] + "\" has zero variance",
                                   expr.gene_names[i]);
        }
    }

    CorrelationMatrix corr;
    corr.gene_names = expr.gene_names;
    corr.coefficients = Eigen::MatrixXd::Identity(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double r = pearson_correlation(expr.values.row(i), expr.values.row(j));
            corr.coefficients(i, j) = r;
            corr.coefficients(j, i) = r;
        }
    }
    return corr;
}

namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delim, start);
        if (pos == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return cells;
}

char detect_delimiter(const std::string& header) {
    if (header.find('\t') != std::string::npos) return '\t';
    if (header.find(',') != std::string::npos) return ',';
    throw ParseError("cannot detect delimiter (no tab or comma in header)", 1);
}

double parse_cell(const std::string& cell, std::size_t line, std::size_t column) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    // Tolerate surrounding spaces, nothing else.
    while (begin != end && *begin == ' ') ++begin;
    while (end != begin && *(end - 1) == ' ') --end;
    if (begin == end) throw ParseError("empty numeric cell", line, column);
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ParseError("not a number: \"" + cell + "\"", line, column);
    }
    if (!std::isfinite(value)) {
        throw ParseError("non-finite value: \"" + cell + "\"", line, column);
    }
    return value;
}

bool is_blank(const std::string& line) {
    return line.find_first_not_of(" \t") == std::string::npos;
}

}  // namespace

ExpressionMatrix parse_expression_file(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    std::string header;
    while (std::getline(in, line)) {
        ++line_no;
        header = strip_cr(line);
        if (!is_blank(header)) break;
        header.clear();
    }
    if (header.empty()) throw ParseError("empty expression file");

    const char delim = detect_delimiter(header);
    const auto header_cells = split(header, delim);
    if (header_cells.empty() || header_cells[0] != "gene") {
        throw ParseError("header must start with \"gene\"", line_no, 1);
    }
    const std::size_t n_samples = header_cells.size() - 1;
    if (n_samples < 2) {
        throw ParseError("expected at least 2 sample columns, got " + std::to_string(n_samples),
                         line_no);
    }

    ExpressionMatrix expr;
    expr.sample_labels.assign(header_cells.begin() + 1, header_cells.end());

    std::vector<std::vector<double>> rows;
    std::unordered_set<std::string> seen;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = strip_cr(line);
        if (is_blank(text)) continue;

        const auto cells = split(text, delim);
        if (cells[0].empty()) throw ParseError("missing gene name", line_no, 1);
        if (!seen.insert(cells[0]).second) throw DuplicateGene(cells[0]);
        if (cells.size() != n_samples + 1) {
            throw RaggedRows("row for \"" + cells[0] + "\" has " +
                             std::to_string(cells.size() - 1) + " values, expected " +
                             std::to_string(n_samples) + " (line " + std::to_string(line_no) +
                             ")");
        }
        std::vector<double> values(n_samples);
        for (std::size_t j = 0; j < n_samples; ++j) {
            values[j] = parse_cell(cells[j + 1], line_no, j + 2);
        }
        expr.gene_names.push_back(cells[0]);
        rows.push_back(std::move(values));
    }
    if (rows.empty()) throw ParseError("expression file has no gene rows");

    expr.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(n_samples));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < n_samples; ++j) {
            expr.values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
        }
    }
    expr.validate();
    return expr;
}

CorrelationMatrix parse_correlation_file(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    std::string header;
    while (std::getline(in, line)) {
        ++line_no;
        header = strip_cr(line);
        if (!is_blank(header)) break;
        header.clear();
    }
    if (header.empty()) throw ParseError("empty correlation file");

    const char delim = detect_delimiter(header);
    auto header_cells = split(header, delim);
    if (!header_cells[0].empty() && header_cells[0] != "gene") {
        throw ParseError("corner cell of the header must be empty or \"gene\"", line_no, 1);
    }
    std::vector<std::string> names(header_cells.begin() + 1, header_cells.end());
    const Index n = static_cast<Index>(names.size());
    if (n == 0) throw ParseError("header names no genes", line_no);
    {
        std::unordered_set<std::string> seen;
        for (const auto& name : names) {
            if (name.empty()) throw ParseError("empty gene name in header", line_no);
            if (!seen.insert(name).second) throw DuplicateGene(name);
        }
    }

    CorrelationMatrix corr;
    corr.gene_names = names;
    corr.coefficients.setConstant(n, n, std::numeric_limits<double>::quiet_NaN());

    Index row = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = strip_cr(line);
        if (is_blank(text)) continue;
        if (row >= n) throw NotSquare("more rows than header genes (line " +
                                      std::to_string(line_no) + ")");

        const auto cells = split(text, delim);
        if (cells[0] != names[static_cast<std::size_t>(row)]) {
            throw ParseError("row label \"" + cells[0] + "\" does not match header order (expected \"" +
                                 names[static_cast<std::size_t>(row)] + "\")",
                             line_no, 1);
        }
        if (cells.size() > static_cast<std::size_t>(n) + 1) {
            throw NotSquare("row for \"" + cells[0] + "\" has " +
                            std::to_string(cells.size() - 1) + " cells, matrix is " +
                            std::to_string(n) + " wide (line " + std::to_string(line_no) + ")");
        }
        for (Index col = 0; col < n; ++col) {
            const std::size_t cell_index = static_cast<std::size_t>(col) + 1;
            const bool present = cell_index < cells.size() && !is_blank(cells[cell_index]);
            if (!present) {
                if (col <= row) {
                    throw ParseError("missing lower-triangle value for (" +
                                         names[static_cast<std::size_t>(row)] + ", " +
                                         names[static_cast<std::size_t>(col)] + ")",
                                     line_no, cell_index + 1);
                }
                continue;  // upper-triangle cell, mirrored later
            }
            corr.coefficients(row, col) = parse_cell(cells[cell_index], line_no, cell_index + 1);
        }
        ++row;
    }
    if (row != n) {
        throw NotSquare("expected " + std::to_string(n) + " matrix rows, got " +
                        std::to_string(row));
    }

    // Mirror the lower triangle into any absent upper cells; a full matrix
    // must agree with its transpose as given.
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double lower = corr.coefficients(j, i);
            double& upper = corr.coefficients(i, j);
            if (std::isnan(upper)) {
                upper = lower;
            } else if (upper != lower) {
                throw InvariantViolation("asymmetric entries for (" + corr.gene_names[i] + ", " +
                                         corr.gene_names[j] + ")");
            }
        }
    }
    corr.validate();
    return corr;
}

void write_correlation_file(std::ostream& out, const CorrelationMatrix& corr) {
    const Index n = corr.size();
    for (Index j = 0; j < n; ++j) {
        out << '\t' << corr.gene_names[static_cast<std::size_t>(j)];
    }
    out << '\n';
    for (Index i = 0; i < n; ++i) {
        out << corr.gene_names[static_cast<std::size_t>(i)];
        for (Index j = 0; j < n; ++j) {
            out << '\t' << format_double(corr.coefficients(i, j));
        }
        out << '\n';
    }
}

}  // namespace antgrn
