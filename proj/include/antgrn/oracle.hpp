#pragma once

#include <functional>
#include <vector>

#include "antgrn/aco.hpp"
#include "antgrn/types.hpp"

namespace antgrn {

/// Exact answer from exhaustive circuit enumeration. Ties for the optimum
/// are reported exhaustively in canonical form so stochastic-solver tests
/// can compare sets instead of arbitrary picks.
struct OracleResult {
    std::vector<Index> best_order;
    double best_score = 0.0;
    std::uint64_t n_cycles_examined = 0;
    std::vector<std::vector<Index>> all_optima;
};

/// Canonical form of an undirected circuit: rotated so gene 0 leads,
/// reflected so the second element is smaller than the last.
std::vector<Index> canonical_cycle(const std::vector<Index>& order);

/// Calls `visit` once per undirected Hamiltonian circuit on n nodes, in
/// canonical form. There are (n-1)!/2 of them. Throws OutOfRange unless
/// 3 <= n <= 12 (the enumeration is desk-scale scaffolding, not a feature).
void enumerate_cycles(Index n, const std::function<void(const std::vector<Index>&)>& visit);

/// Convenience collector for small n.
std::vector<std::vector<Index>> enumerate_cycles(Index n);

/// Exhaustive maximizer of the tour score over all canonical circuits.
OracleResult brute_force_optimum(const CorrelationMatrix& corr, ObjectiveMode mode);

}  // namespace antgrn
