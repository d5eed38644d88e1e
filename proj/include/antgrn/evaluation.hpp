#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "antgrn/errors.hpp"

namespace antgrn {

using EdgeList = std::vector<std::pair<std::string, std::string>>;

/// Literature-established true interaction set against which predictions
/// are scored.
struct GoldStandard {
    EdgeList edges;
    bool directed = false;
    std::string source_label;
};

/// Predicted edges matched against a gold standard, Tables-style: one row
/// per predicted edge in prediction order, plus the counts.
struct EvaluationReport {
    struct Row {
        std::string gene1;
        std::string gene2;
        bool matched = false;
    };

    std::vector<Row> rows;
    int n_predicted = 0;
    int n_gold = 0;
    int n_matched = 0;
    double precision = 0.0;
    double recall = 0.0;
};

/// Reads `gene1<TAB>gene2` lines. `#`-prefixed lines are comments, with the
/// `# directed` pragma marking the file as directed; a leading
/// `gene1<TAB>gene2` header line is skipped. Throws SelfLoop and
/// DuplicateEdge (duplicates judged orderless unless directed).
GoldStandard parse_gold_standard(std::istream& in, std::string source_label = "");

/// Reads a predicted edge list: two or three columns per line, any third
/// column (a correlation value, as written by inference) ignored. Comments,
/// blank lines, and a leading header are skipped. Unlike gold-standard
/// parsing this polices nothing else; predictions are scored as-is.
EdgeList parse_edge_list(std::istream& in);

/// Matches predicted pairs against the gold edges. Names compare
/// case-insensitively; matching is orderless unless `directed`; each gold
/// edge is consumable at most once. Row order follows the predicted list.
///
/// When `instance_genes` is nonempty, a predicted gene outside it throws
/// UnknownGene; genes merely absent from the gold set never abort.
EvaluationReport match_edges(const EdgeList& predicted, const GoldStandard& gold,
                             bool directed = false,
                             const std::vector<std::string>& instance_genes = {});

enum class ReportFormat { table, json };

/// `table` renders aligned Gene 1 / Gene 2 / Match (YES/NO) columns with a
/// count footer; `json` emits the full report document.
std::string render_report(const EvaluationReport& report, ReportFormat format);

}  // namespace antgrn
