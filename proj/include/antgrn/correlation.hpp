#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iosfwd>
#include <string>
#include <vector>

#include "antgrn/errors.hpp"
#include "antgrn/types.hpp"

namespace antgrn {

/// Sample Pearson correlation coefficient of two equally long series:
/// centered cross-product over the product of centered norms. Accepts any
/// dense Eigen vector or row expression.
///
/// Throws LengthMismatch when sizes differ and DegenerateSeries when either
/// series is shorter than 2 or has zero variance.
template <typename DerivedX, typename DerivedY>
double pearson_correlation(const Eigen::MatrixBase<DerivedX>& x,
                           const Eigen::MatrixBase<DerivedY>& y) {
    if (x.size() != y.size()) {
        throw LengthMismatch("series lengths differ: " + std::to_string(x.size()) + " vs " +
                             std::to_string(y.size()));
    }
    if (x.size() < 2) {
        throw DegenerateSeries("series shorter than 2 samples");
    }

    const Eigen::VectorXd xv = x.derived().template cast<double>().reshaped();
    const Eigen::VectorXd yv = y.derived().template cast<double>().reshaped();

    // A constant series must be rejected exactly, not via a rounded variance.
    if (xv.minCoeff() == xv.maxCoeff() || yv.minCoeff() == yv.maxCoeff()) {
        throw DegenerateSeries("series has zero variance");
    }

    const Eigen::VectorXd xc = xv.array() - xv.mean();
    const Eigen::VectorXd yc = yv.array() - yv.mean();
    const double sxx = xc.squaredNorm();
    const double syy = yc.squaredNorm();
    if (sxx == 0.0 || syy == 0.0) {
        throw DegenerateSeries("series has zero variance");
    }

    const double r = xc.dot(yc) / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

inline double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y) {
    return pearson_correlation(
        Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Index>(x.size())),
        Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Index>(y.size())));
}

/// Pairwise Pearson matrix over all gene rows. Each unordered pair is
/// computed once and mirrored; the diagonal is forced to exactly 1.
/// Throws DegenerateSeries naming the gene of any zero-variance row.
CorrelationMatrix build_correlation_matrix(const ExpressionMatrix& expr);

/// Reads the delimited expression format: header `gene` plus sample labels,
/// then one row per gene (name followed by numeric fields). The delimiter
/// (tab or comma) is detected from the header line.
ExpressionMatrix parse_expression_file(std::istream& in);

/// Reads a labeled square correlation matrix. Empty upper-triangle cells are
/// mirrored from the lower triangle; a full matrix must already be symmetric.
CorrelationMatrix parse_correlation_file(std::istream& in);

/// Writes the full matrix in the format parse_correlation_file reads,
/// with round-trip-exact numbers.
void write_correlation_file(std::ostream& out, const CorrelationMatrix& corr);

}  // namespace antgrn
