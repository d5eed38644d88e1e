#include "antgrn/aco.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <thread>
#include <tuple>

namespace antgrn {

namespace {

// Floor for pheromone deposits and bound bases when the best score is not
// positive (possible under the signed objective on hostile matrices).
constexpr double kMinDeposit = 1e-6;

// Trail reinitialization window: after this many iterations without a
// trial-best improvement the trails are reset to tau_max, restarting the
// search from a uniform state while keeping the best tour and bounds.
constexpr int kRestartStagnation = 10;

// Sub-stream purposes, mixed into derived seeds.
constexpr std::uint64_t kStreamPlacement = 1;
constexpr std::uint64_t kStreamAnt = 2;

}  // namespace

ObjectiveMode parse_objective_mode(const std::string& name) {
    if (name == "raw") return ObjectiveMode::raw;
    if (name == "abs") return ObjectiveMode::abs;
    throw InvalidParameter("unknown objective mode \"" + name + "\" (expected raw or abs)");
}

VisibilityMode parse_visibility_mode(const std::string& name) {
    if (name == "abs") return VisibilityMode::abs;
    if (name == "shift") return VisibilityMode::shift;
    throw InvalidParameter("unknown visibility mode \"" + name + "\" (expected abs or shift)");
}

std::string to_string(ObjectiveMode mode) {
    return mode == ObjectiveMode::raw ? "raw" : "abs";
}

std::string to_string(VisibilityMode mode) {
    return mode == VisibilityMode::abs ? "abs" : "shift";
}

void AcoParams::validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw InvalidParameter("alpha must be >= 0");
    }
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw InvalidParameter("beta must be >= 0");
    }
    if (!(rho > 0.0 && rho <= 1.0)) {
        throw InvalidParameter("rho must be in (0, 1]");
    }
    if (n_ants < 0) {
        throw InvalidParameter("ants must be >= 1 (or 0 for one per gene)");
    }
    if (n_iterations < 1) {
        throw InvalidParameter("iterations must be >= 1");
    }
    if (n_trials < 1) {
        throw InvalidParameter("trials must be >= 1");
    }
    if (!(epsilon_visibility > 0.0) || !std::isfinite(epsilon_visibility)) {
        throw InvalidParameter("epsilon-visibility must be > 0");
    }
}

PheromoneMatrix::PheromoneMatrix(Index n, double tau_min_init, double tau_max_init)
    : trails(Eigen::MatrixXd::Constant(n, n, tau_max_init)),
      tau_min(tau_min_init),
      tau_max(tau_max_init) {
    trails.diagonal().setZero();
}

void PheromoneMatrix::set_bounds(double new_tau_min, double new_tau_max) {
    if (!(new_tau_min > 0.0) || new_tau_max < new_tau_min) {
        throw InvalidParameter("pheromone bounds need 0 < tau_min <= tau_max");
    }
    tau_min = new_tau_min;
    tau_max = new_tau_max;
}

void PheromoneMatrix::validate() const {
    const Index n = size();
    for (Index i = 0; i < n; ++i) {
        if (trails(i, i) != 0.0) throw InvariantViolation("pheromone diagonal not 0");
        for (Index j = i + 1; j < n; ++j) {
            if (trails(i, j) != trails(j, i)) {
                throw InvariantViolation("pheromone matrix not symmetric");
            }
            if (!(trails(i, j) >= tau_min && trails(i, j) <= tau_max)) {
                throw InvariantViolation("pheromone trail outside [tau_min, tau_max]");
            }
        }
    }
}

Eigen::MatrixXd visibility_transform(const CorrelationMatrix& corr, VisibilityMode mode,
                                     double epsilon) {
    if (!(epsilon > 0.0)) throw InvalidParameter("visibility epsilon must be > 0");
    const Index n = corr.size();
    Eigen::MatrixXd vis(n, n);
    if (mode == VisibilityMode::abs) {
        vis = corr.coefficients.array().abs().max(epsilon);
    } else {
        vis = ((corr.coefficients.array() + 1.0) / 2.0).max(epsilon);
    }
    vis.diagonal().setZero();
    return vis;
}

Eigen::VectorXd transition_probabilities(Index current, const std::vector<Index>& allowed,
                                         const PheromoneMatrix& pher,
                                         const Eigen::MatrixXd& vis, double alpha, double beta) {
    if (allowed.empty()) throw EmptyAllowedSet("no genes left to move to");

    const Index n = pher.size();
    Eigen::VectorXd probs = Eigen::VectorXd::Zero(n);
    double total = 0.0;
    for (Index j : allowed) {
        const double numerator =
            std::pow(pher.trails(current, j), alpha) * std::pow(vis(current, j), beta);
        probs(j) = numerator;
        total += numerator;
    }
    if (total <= 0.0 || !std::isfinite(total)) {
        throw ZeroMass("all transition numerators vanished; check alpha/beta/pheromone state");
    }
    probs /= total;
    return probs;
}

double tour_score(const std::vector<Index>& order, const CorrelationMatrix& corr,
                  ObjectiveMode mode) {
    const std::size_t n = order.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double c = corr.coefficients(order[i], order[(i + 1) % n]);
        sum += mode == ObjectiveMode::abs ? std::abs(c) : c;
    }
    return sum;
}

Tour construct_tour(Index start, const CorrelationMatrix& corr, const PheromoneMatrix& pher,
                    const Eigen::MatrixXd& vis, const AcoParams& params, Rng& rng) {
    const Index n = corr.size();
    if (n < 3) {
        throw TooFewGenes("a Hamiltonian circuit needs at least 3 genes, got " +
                          std::to_string(n));
    }

    Tour tour;
    tour.order.reserve(static_cast<std::size_t>(n));
    tour.order.push_back(start);

    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    visited[static_cast<std::size_t>(start)] = 1;

    std::vector<Index> allowed;
    allowed.reserve(static_cast<std::size_t>(n) - 1);

    Index current = start;
    for (Index step = 1; step < n; ++step) {
        allowed.clear();
        for (Index j = 0; j < n; ++j) {
            if (!visited[static_cast<std::size_t>(j)]) allowed.push_back(j);
        }

        const Eigen::VectorXd probs =
            transition_probabilities(current, allowed, pher, vis, params.alpha, params.beta);

        const double u = rng.next_double();
        double cumulative = 0.0;
        Index next = allowed.back();  // numeric-remainder fallback
        for (Index j : allowed) {
            cumulative += probs(j);
            if (u < cumulative) {
                next = j;
                break;
            }
        }

        tour.order.push_back(next);
        visited[static_cast<std::size_t>(next)] = 1;
        current = next;
    }

    tour.score = tour_score(tour.order, corr, params.objective_mode);
    return tour;
}

std::pair<double, double> mmas_bounds(double best_score, double rho, Index n) {
    const double tau_max = std::max(best_score, kMinDeposit) / rho;
    const double tau_min = tau_max / (2.0 * static_cast<double>(n));
    return {tau_min, tau_max};
}

void update_pheromones(PheromoneMatrix& pher, const Tour& best, const AcoParams& params) {
    pher.trails *= (1.0 - params.rho);

    const double deposit = std::max(best.score, kMinDeposit);
    const std::size_t n = best.order.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Index a = best.order[i];
        const Index b = best.order[(i + 1) % n];
        const double value = pher.trails(a, b) + deposit;
        pher.trails(a, b) = value;
        pher.trails(b, a) = value;
    }

    pher.trails = pher.trails.cwiseMax(pher.tau_min).cwiseMin(pher.tau_max);
    pher.trails.diagonal().setZero();
}

namespace {

// Deterministic greedy circuit used only to size the initial trail bounds:
// from gene 0, always step to the most visible unvisited gene.
Tour greedy_tour(const CorrelationMatrix& corr, const Eigen::MatrixXd& vis,
                 ObjectiveMode mode) {
    const Index n = corr.size();
    Tour tour;
    tour.order.reserve(static_cast<std::size_t>(n));
    tour.order.push_back(0);
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    visited[0] = 1;

    Index current = 0;
    for (Index step = 1; step < n; ++step) {
        Index best_j = -1;
        double best_vis = -1.0;
        for (Index j = 0; j < n; ++j) {
            if (!visited[static_cast<std::size_t>(j)] && vis(current, j) > best_vis) {
                best_vis = vis(current, j);
                best_j = j;
            }
        }
        tour.order.push_back(best_j);
        visited[static_cast<std::size_t>(best_j)] = 1;
        current = best_j;
    }
    tour.score = tour_score(tour.order, corr, mode);
    return tour;
}

// Start genes for one iteration: a seeded permutation covering every gene
// when one ant per gene is requested, independent uniform draws otherwise.
std::vector<Index> place_ants(Index n, int n_ants, std::uint64_t master, int trial,
                              int iteration) {
    Rng rng(derive_seed(master, {static_cast<std::uint64_t>(trial),
                                 static_cast<std::uint64_t>(iteration), kStreamPlacement}));
    std::vector<Index> starts;
    if (n_ants == n) {
        starts.resize(static_cast<std::size_t>(n));
        std::iota(starts.begin(), starts.end(), Index{0});
        rng.shuffle(starts);
    } else {
        starts.reserve(static_cast<std::size_t>(n_ants));
        for (int k = 0; k < n_ants; ++k) {
            starts.push_back(static_cast<Index>(rng.next_index(static_cast<std::uint64_t>(n))));
        }
    }
    return starts;
}

// Runs fn(ant_index) for every ant, split across workers in fixed blocks.
// Each ant draws only from its own derived stream, so the partition cannot
// change the result.
void for_each_ant(int n_ants, int n_workers, const std::function<void(int)>& fn) {
    if (n_workers <= 1 || n_ants <= 1) {
        for (int a = 0; a < n_ants; ++a) fn(a);
        return;
    }
    const int workers = std::min(n_workers, n_ants);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const int chunk = (n_ants + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int begin = w * chunk;
        const int end = std::min(n_ants, begin + chunk);
        pool.emplace_back([begin, end, &fn] {
            for (int a = begin; a < end; ++a) fn(a);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

AcoResult run_aco(const CorrelationMatrix& corr, const AcoParams& params, int n_workers) {
    const Index n = corr.size();
    if (n < 3) {
        throw TooFewGenes("a Hamiltonian circuit needs at least 3 genes, got " +
                          std::to_string(n));
    }
    params.validate();
    if (n_workers < 1) throw InvalidParameter("workers must be >= 1");

    AcoParams resolved = params;
    if (resolved.n_ants == 0) resolved.n_ants = static_cast<int>(n);

    const Eigen::MatrixXd vis =
        visibility_transform(corr, resolved.visibility_mode, resolved.epsilon_visibility);

    AcoResult result;
    result.params_used = resolved;
    result.gene_names = corr.gene_names;
    result.score_history.reserve(
        static_cast<std::size_t>(resolved.n_trials) * static_cast<std::size_t>(resolved.n_iterations));

    Tour global_best;
    bool have_global_best = false;
    int history_iteration = 0;

    for (int trial = 0; trial < resolved.n_trials; ++trial) {
        // Fresh trail state per trial; the greedy circuit sizes the first bounds.
        Tour trial_best = greedy_tour(corr, vis, resolved.objective_mode);
        auto [tau_min, tau_max] = mmas_bounds(trial_best.score, resolved.rho, n);
        PheromoneMatrix pher(n, tau_min, tau_max);
        int stale_iterations = 0;

        std::vector<Tour> tours(static_cast<std::size_t>(resolved.n_ants));
        for (int iteration = 0; iteration < resolved.n_iterations; ++iteration) {
            const std::vector<Index> starts =
                place_ants(n, resolved.n_ants, resolved.seed, trial, iteration);

            for_each_ant(resolved.n_ants, n_workers, [&](int ant) {
                Rng rng(derive_seed(resolved.seed,
                                    {static_cast<std::uint64_t>(trial),
                                     static_cast<std::uint64_t>(iteration), kStreamAnt,
                                     static_cast<std::uint64_t>(ant)}));
                tours[static_cast<std::size_t>(ant)] = construct_tour(
                    starts[static_cast<std::size_t>(ant)], corr, pher, vis, resolved, rng);
            });

            // Iteration best; ties keep the earlier ant.
            const Tour* iteration_best = &tours.front();
            for (const Tour& t : tours) {
                if (t.score > iteration_best->score) iteration_best = &t;
            }

            if (iteration_best->score > trial_best.score) {
                trial_best = *iteration_best;
                std::tie(tau_min, tau_max) = mmas_bounds(trial_best.score, resolved.rho, n);
                pher.set_bounds(tau_min, tau_max);
                stale_iterations = 0;
            } else {
                ++stale_iterations;
            }
            update_pheromones(pher, *iteration_best, resolved);

            if (stale_iterations >= kRestartStagnation) {
                pher.trails.setConstant(pher.tau_max);
                pher.trails.diagonal().setZero();
                stale_iterations = 0;
            }

            if (!have_global_best || iteration_best->score > global_best.score) {
                global_best = *iteration_best;
                have_global_best = true;
            }
            result.score_history.emplace_back(history_iteration++, global_best.score);
        }
    }

    result.best_tour = std::move(global_best);
    return result;
}

std::vector<std::pair<std::string, std::string>> tour_to_edges(const AcoResult& result) {
    std::vector<std::pair<std::string, std::string>> edges;
    const std::size_t n = result.best_tour.order.size();
    edges.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Index a = result.best_tour.order[i];
        const Index b = result.best_tour.order[(i + 1) % n];
        edges.emplace_back(result.gene_names[static_cast<std::size_t>(a)],
                           result.gene_names[static_cast<std::size_t>(b)]);
    }
    return edges;
}

}  // namespace antgrn
