#include "antgrn/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "antgrn/serialize.hpp"

namespace antgrn {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

// Tab-separated when a tab is present, otherwise any whitespace run.
std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    if (line.find('\t') != std::string::npos) {
        std::size_t start = 0;
        while (true) {
            const std::size_t pos = line.find('\t', start);
            if (pos == std::string::npos) {
                fields.push_back(trim(line.substr(start)));
                break;
            }
            fields.push_back(trim(line.substr(start, pos - start)));
            start = pos + 1;
        }
    } else {
        std::istringstream in(line);
        std::string field;
        while (in >> field) fields.push_back(field);
    }
    fields.erase(std::remove(fields.begin(), fields.end(), ""), fields.end());
    return fields;
}

using EdgeKey = std::pair<std::string, std::string>;

EdgeKey edge_key(const std::string& a, const std::string& b, bool directed) {
    EdgeKey key{lower(a), lower(b)};
    if (!directed && key.second < key.first) std::swap(key.first, key.second);
    return key;
}

}  // namespace

GoldStandard parse_gold_standard(std::istream& in, std::string source_label) {
    GoldStandard gold;
    gold.source_label = std::move(source_label);

    std::string line;
    std::size_t line_no = 0;
    bool saw_data = false;
    std::set<EdgeKey> seen;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty()) continue;
        if (text[0] == '#') {
            if (lower(trim(text.substr(1))) == "directed") gold.directed = true;
            continue;
        }

        const auto fields = split_fields(text);
        if (!saw_data && fields.size() == 2 && lower(fields[0]) == "gene1" &&
            lower(fields[1]) == "gene2") {
            continue;  // header
        }
        if (fields.size() != 2) {
            throw ParseError("expected two gene names, got " + std::to_string(fields.size()),
                             line_no);
        }
        saw_data = true;

        if (lower(fields[0]) == lower(fields[1])) {
            throw SelfLoop("self-loop on \"" + fields[0] + "\" (line " + std::to_string(line_no) +
                           ")");
        }
        if (!seen.insert(edge_key(fields[0], fields[1], gold.directed)).second) {
            throw DuplicateEdge("duplicate edge " + fields[0] + " - " + fields[1] + " (line " +
                                std::to_string(line_no) + ")");
        }
        gold.edges.emplace_back(fields[0], fields[1]);
    }
    return gold;
}

EdgeList parse_edge_list(std::istream& in) {
    EdgeList edges;
    std::string line;
    std::size_t line_no = 0;
    bool saw_data = false;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;

        const auto fields = split_fields(text);
        if (!saw_data && fields.size() >= 2 && lower(fields[0]) == "gene1" &&
            lower(fields[1]) == "gene2") {
            continue;  // header
        }
        if (fields.size() != 2 && fields.size() != 3) {
            throw ParseError("expected gene1, gene2 and an optional value, got " +
                                 std::to_string(fields.size()) + " fields",
                             line_no);
        }
        saw_data = true;
        edges.emplace_back(fields[0], fields[1]);
    }
    return edges;
}

EvaluationReport match_edges(const EdgeList& predicted, const GoldStandard& gold, bool directed,
                             const std::vector<std::string>& instance_genes) {
    std::set<std::string> instance;
    for (const auto& gene : instance_genes) instance.insert(lower(gene));

    std::map<EdgeKey, int> remaining;
    for (const auto& [a, b] : gold.edges) {
        ++remaining[edge_key(a, b, directed)];
    }

    EvaluationReport report;
    report.n_predicted = static_cast<int>(predicted.size());
    report.n_gold = static_cast<int>(gold.edges.size());

    for (const auto& [a, b] : predicted) {
        if (!instance.empty()) {
            for (const auto& gene : {a, b}) {
                if (!instance.count(lower(gene))) {
                    throw UnknownGene("predicted gene \"" + gene +
                                      "\" is not in the instance gene list");
                }
            }
        }
        bool matched = false;
        const auto it = remaining.find(edge_key(a, b, directed));
        if (it != remaining.end() && it->second > 0) {
            --it->second;
            matched = true;
            ++report.n_matched;
        }
        report.rows.push_back({a, b, matched});
    }

    report.precision =
        report.n_predicted > 0 ? static_cast<double>(report.n_matched) / report.n_predicted : 0.0;
    report.recall =
        report.n_gold > 0 ? static_cast<double>(report.n_matched) / report.n_gold : 0.0;
    return report;
}

std::string render_report(const EvaluationReport& report, ReportFormat format) {
    if (format == ReportFormat::json) {
        return report_to_json(report).dump(2) + "\n";
    }

    std::size_t w1 = 6, w2 = 6;
    for (const auto& row : report.rows) {
        w1 = std::max(w1, row.gene1.size());
        w2 = std::max(w2, row.gene2.size());
    }

    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(w1) + 2) << "Gene 1"
        << std::setw(static_cast<int>(w2) + 2) << "Gene 2" << "Match" << '\n';
    for (const auto& row : report.rows) {
        out << std::left << std::setw(static_cast<int>(w1) + 2) << row.gene1
            << std::setw(static_cast<int>(w2) + 2) << row.gene2 << (row.matched ? "YES" : "NO")
            << '\n';
    }
    out << "matched " << report.n_matched << " of " << report.n_predicted << " predicted ("
        << report.n_gold << " gold edges; precision " << std::setprecision(4)
        << report.precision << ", recall " << report.recall << ")\n";
    return out.str();
}

}  // namespace antgrn
