#include "antgrn/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace antgrn {

std::vector<Index> canonical_cycle(const std::vector<Index>& order) {
    const std::size_t n = order.size();
    const std::size_t zero_at = static_cast<std::size_t>(
        std::find(order.begin(), order.end(), Index{0}) - order.begin());

    std::vector<Index> rotated(n);
    for (std::size_t i = 0; i < n; ++i) {
        rotated[i] = order[(zero_at + i) % n];
    }
    if (n >= 3 && rotated[1] > rotated[n - 1]) {
        std::reverse(rotated.begin() + 1, rotated.end());
    }
    return rotated;
}

void enumerate_cycles(Index n, const std::function<void(const std::vector<Index>&)>& visit) {
    if (n < 3 || n > 12) {
        throw OutOfRange("cycle enumeration supports 3 <= n <= 12, got " + std::to_string(n));
    }

    // Permute genes 1..n-1 behind a fixed leading 0; keeping the second
    // element below the last kills the reflected duplicate of each circuit.
    std::vector<Index> tail(static_cast<std::size_t>(n) - 1);
    std::iota(tail.begin(), tail.end(), Index{1});

    std::vector<Index> cycle(static_cast<std::size_t>(n));
    cycle[0] = 0;
    do {
        if (tail.front() > tail.back()) continue;
        std::copy(tail.begin(), tail.end(), cycle.begin() + 1);
        visit(cycle);
    } while (std::next_permutation(tail.begin(), tail.end()));
}

std::vector<std::vector<Index>> enumerate_cycles(Index n) {
    std::vector<std::vector<Index>> cycles;
    enumerate_cycles(n, [&](const std::vector<Index>& cycle) { cycles.push_back(cycle); });
    return cycles;
}

OracleResult brute_force_optimum(const CorrelationMatrix& corr, ObjectiveMode mode) {
    OracleResult result;
    enumerate_cycles(corr.size(), [&](const std::vector<Index>& cycle) {
        const double score = tour_score(cycle, corr, mode);
        ++result.n_cycles_examined;
        if (result.n_cycles_examined == 1 || score > result.best_score) {
            result.best_score = score;
            result.best_order = cycle;
            result.all_optima.clear();
            result.all_optima.push_back(cycle);
        } else if (score == result.best_score) {
            result.all_optima.push_back(cycle);
        }
    });
    return result;
}

}  // namespace antgrn
