#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "antgrn/errors.hpp"
#include "antgrn/rng.hpp"
#include "antgrn/types.hpp"

namespace antgrn {

/// Signed sum of the tour's correlations (`raw`) or sum of magnitudes (`abs`).
enum class ObjectiveMode { raw, abs };

/// How negative correlations become nonnegative visibilities: `abs` takes
/// the magnitude, `shift` maps [-1, 1] affinely onto [0, 1]. Both floor at
/// epsilon so the transition rule never divides by zero.
enum class VisibilityMode { abs, shift };

ObjectiveMode parse_objective_mode(const std::string& name);
VisibilityMode parse_visibility_mode(const std::string& name);
std::string to_string(ObjectiveMode mode);
std::string to_string(VisibilityMode mode);

/// Max-Min Ant System parameters. Defaults are the reference simulation
/// settings: alpha 1, beta 2, rho 0.5, one trial of 100 tours, one ant per
/// gene (n_ants 0 means "match the gene count").
struct AcoParams {
    double alpha = 1.0;  // pheromone exponent
    double beta = 2.0;   // visibility exponent
    double rho = 0.5;    // evaporation in (0, 1]
    int n_ants = 0;      // 0 resolves to N at run start
    int n_iterations = 100;
    int n_trials = 1;
    std::uint64_t seed = 0;
    ObjectiveMode objective_mode = ObjectiveMode::raw;
    VisibilityMode visibility_mode = VisibilityMode::abs;
    double epsilon_visibility = 1e-6;

    /// Throws InvalidParameter on any out-of-range field.
    void validate() const;
};

/// Shared trail state of the Max-Min Ant System. Off-diagonal trails always
/// end an update cycle inside [tau_min, tau_max]; the diagonal is unused
/// and stays 0.
struct PheromoneMatrix {
    Eigen::MatrixXd trails;
    double tau_min = 0.0;
    double tau_max = 0.0;

    PheromoneMatrix() = default;

    /// All off-diagonal trails start at tau_max, the usual Max-Min start.
    PheromoneMatrix(Index n, double tau_min_init, double tau_max_init);

    Index size() const noexcept { return trails.rows(); }

    void set_bounds(double new_tau_min, double new_tau_max);

    /// Asserts symmetry, zero diagonal, and the trail bounds.
    void validate() const;
};

/// A Hamiltonian circuit over gene indices plus its objective value.
struct Tour {
    std::vector<Index> order;  // permutation of 0..N-1; closes back to order[0]
    double score = 0.0;
};

/// Outcome of a solver run: the best circuit found, the per-iteration
/// best-so-far trace, and the exact parameters that produced it.
struct AcoResult {
    Tour best_tour;
    std::vector<std::pair<int, double>> score_history;  // (iteration, best so far)
    AcoParams params_used;
    std::vector<std::string> gene_names;
};

/// Turns the correlation matrix into the nonnegative visibility grid used by
/// the transition rule. Off-diagonal entries are strictly positive (floored
/// at epsilon); the diagonal is 0.
Eigen::MatrixXd visibility_transform(const CorrelationMatrix& corr, VisibilityMode mode,
                                     double epsilon);

/// Transition distribution from `current` over `allowed`: p_j proportional
/// to tau_ij^alpha * eta_ij^beta, renormalized to sum to 1. The returned
/// vector has length N with exact zeros outside `allowed`.
///
/// Throws EmptyAllowedSet when there is nowhere to go and ZeroMass when all
/// numerators underflow.
Eigen::VectorXd transition_probabilities(Index current, const std::vector<Index>& allowed,
                                         const PheromoneMatrix& pher,
                                         const Eigen::MatrixXd& vis, double alpha, double beta);

/// Signed (`raw`) or magnitude (`abs`) sum of the circuit's edge
/// correlations, closing edge included. Invariant under rotation and
/// reversal of the order.
double tour_score(const std::vector<Index>& order, const CorrelationMatrix& corr,
                  ObjectiveMode mode);

/// One ant's walk: starting from `start`, repeatedly samples the next gene
/// from the transition distribution over the not-yet-visited set, then
/// closes the circuit. Throws TooFewGenes when N < 3.
Tour construct_tour(Index start, const CorrelationMatrix& corr, const PheromoneMatrix& pher,
                    const Eigen::MatrixXd& vis, const AcoParams& params, Rng& rng);

/// Max-Min update cycle: evaporate all trails by (1 - rho), deposit the best
/// tour's score on each of its undirected edges (floored at a small positive
/// amount when the score is not positive), then clamp every off-diagonal
/// trail into [tau_min, tau_max].
void update_pheromones(PheromoneMatrix& pher, const Tour& best, const AcoParams& params);

/// Trail bounds scaled to a maximization objective: tau_max = best / rho,
/// tau_min = tau_max / (2N).
std::pair<double, double> mmas_bounds(double best_score, double rho, Index n);

/// Runs the full Max-Min Ant System: n_trials independent trials of
/// n_iterations each, ants placed per iteration (a random permutation of the
/// genes when n_ants == N, uniform draws otherwise), the iteration-best tour
/// depositing pheromone and the trial-best driving the trail bounds. Trails
/// are reinitialized to tau_max after 10 iterations without improvement, the
/// usual Max-Min escape from a converged state; the iteration budget is
/// unaffected.
///
/// Identical (seed, params, matrix) inputs give bit-identical results for
/// any n_workers. Throws TooFewGenes when N < 3.
AcoResult run_aco(const CorrelationMatrix& corr, const AcoParams& params, int n_workers = 1);

/// The circuit's successor pairs, names resolved: exactly N edges, each gene
/// appearing twice.
std::vector<std::pair<std::string, std::string>> tour_to_edges(const AcoResult& result);

}  // namespace antgrn
