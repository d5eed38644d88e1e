#include "antgrn/serialize.hpp"

#include <charconv>

namespace antgrn {

std::string format_double(double value) {
    char buffer[32];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, ptr);
}

namespace {

nlohmann::ordered_json edges_with_correlations(const std::vector<Index>& order,
                                               const std::vector<std::string>& names,
                                               const Eigen::MatrixXd& coefficients) {
    auto edges = nlohmann::ordered_json::array();
    const std::size_t n = order.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Index a = order[i];
        const Index b = order[(i + 1) % n];
        edges.push_back({{"gene1", names[static_cast<std::size_t>(a)]},
                         {"gene2", names[static_cast<std::size_t>(b)]},
                         {"correlation", coefficients(a, b)}});
    }
    return edges;
}

std::vector<std::string> order_to_names(const std::vector<Index>& order,
                                        const std::vector<std::string>& names) {
    std::vector<std::string> out;
    out.reserve(order.size());
    for (const Index i : order) out.push_back(names[static_cast<std::size_t>(i)]);
    return out;
}

}  // namespace

nlohmann::ordered_json result_to_json(const AcoResult& result, const CorrelationMatrix& corr) {
    nlohmann::ordered_json doc;
    doc["gene_order"] = order_to_names(result.best_tour.order, result.gene_names);
    doc["edges"] =
        edges_with_correlations(result.best_tour.order, result.gene_names, corr.coefficients);
    doc["score"] = result.best_tour.score;

    auto history = nlohmann::ordered_json::array();
    for (const auto& [iteration, best] : result.score_history) {
        history.push_back({iteration, best});
    }
    doc["score_history"] = std::move(history);

    const AcoParams& p = result.params_used;
    doc["params"] = {{"alpha", p.alpha},
                     {"beta", p.beta},
                     {"rho", p.rho},
                     {"ants", p.n_ants},
                     {"iterations", p.n_iterations},
                     {"trials", p.n_trials},
                     {"objective", to_string(p.objective_mode)},
                     {"visibility", to_string(p.visibility_mode)},
                     {"epsilon_visibility", p.epsilon_visibility}};
    doc["seed"] = p.seed;
    return doc;
}

nlohmann::ordered_json oracle_to_json(const OracleResult& oracle, const CorrelationMatrix& corr,
                                      ObjectiveMode mode) {
    nlohmann::ordered_json doc;
    doc["gene_order"] = order_to_names(oracle.best_order, corr.gene_names);
    doc["edges"] = edges_with_correlations(oracle.best_order, corr.gene_names, corr.coefficients);
    doc["score"] = oracle.best_score;
    doc["objective"] = to_string(mode);
    doc["n_cycles_examined"] = oracle.n_cycles_examined;

    auto optima = nlohmann::ordered_json::array();
    for (const auto& order : oracle.all_optima) {
        optima.push_back(order_to_names(order, corr.gene_names));
    }
    doc["all_optima"] = std::move(optima);
    return doc;
}

nlohmann::ordered_json report_to_json(const EvaluationReport& report) {
    nlohmann::ordered_json doc;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"gene1", row.gene1}, {"gene2", row.gene2}, {"matched", row.matched}});
    }
    doc["rows"] = std::move(rows);
    doc["n_predicted"] = report.n_predicted;
    doc["n_gold"] = report.n_gold;
    doc["n_matched"] = report.n_matched;
    doc["precision"] = report.precision;
    doc["recall"] = report.recall;
    return doc;
}

}  // namespace antgrn
