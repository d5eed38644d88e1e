#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace antgrn {

using Eigen::Index;

/// Gene expression values, genes in rows and samples in columns.
struct ExpressionMatrix {
    std::vector<std::string> gene_names;
    Eigen::MatrixXd values;  // N genes x M samples
    std::vector<std::string> sample_labels;  // empty or size M

    Index n_genes() const noexcept { return values.rows(); }
    Index n_samples() const noexcept { return values.cols(); }

    /// Checks the type invariants: unique names matching the row count,
    /// at least two samples, all values finite. Throws on violation.
    void validate() const;
};

/// Symmetric matrix of pairwise Pearson coefficients; the problem instance
/// handed to the solver.
struct CorrelationMatrix {
    std::vector<std::string> gene_names;
    Eigen::MatrixXd coefficients;  // N x N, unit diagonal, entries in [-1, 1]

    Index size() const noexcept { return coefficients.rows(); }

    /// Checks exact symmetry, exact unit diagonal, and the [-1, 1] range.
    void validate() const;
};

}  // namespace antgrn
