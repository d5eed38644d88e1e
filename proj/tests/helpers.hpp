#pragma once

#include <string>
#include <vector>

#include "antgrn/rng.hpp"
#include "antgrn/types.hpp"

namespace antgrn::testing {

/// Random symmetric correlation-shaped matrix: unit diagonal, off-diagonal
/// uniform in [lo, hi], labels g0..g{n-1}.
inline CorrelationMatrix random_correlation(Index n, Rng& rng, double lo = -1.0,
                                            double hi = 1.0) {
    CorrelationMatrix corr;
    corr.coefficients = Eigen::MatrixXd::Identity(n, n);
    for (Index i = 0; i < n; ++i) {
        corr.gene_names.push_back("g" + std::to_string(i));
        for (Index j = i + 1; j < n; ++j) {
            const double c = lo + (hi - lo) * rng.next_double();
            corr.coefficients(i, j) = c;
            corr.coefficients(j, i) = c;
        }
    }
    return corr;
}

inline std::vector<Index> random_permutation(Index n, Rng& rng) {
    std::vector<Index> perm(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    rng.shuffle(perm);
    return perm;
}

inline std::vector<double> random_series(std::size_t len, Rng& rng) {
    std::vector<double> v(len);
    for (auto& x : v) x = 20.0 * rng.next_double() - 10.0;
    return v;
}

}  // namespace antgrn::testing
