#include "antgrn/datasets.hpp"

#include <algorithm>
#include <array>
#include <fstream>

#include "antgrn/correlation.hpp"
#include "antgrn/errors.hpp"

namespace antgrn {

namespace {

// SOS repair network, eight genes. Pairwise Pearson coefficients as
// published, four decimal places, lower triangle.
constexpr std::array<const char*, 8> kSosGenes = {"uvrD", "lexA", "umuDC", "recA",
                                                  "uvrA", "uvrY", "ruvA",  "polB"};

constexpr std::array<std::array<double, 8>, 8> kSosLowerTriangle = {{
    {1.0, 0, 0, 0, 0, 0, 0, 0},
    {0.7647, 1.0, 0, 0, 0, 0, 0, 0},
    {0.1982, 0.5101, 1.0, 0, 0, 0, 0, 0},
    {0.8013, 0.9538, 0.5962, 1.0, 0, 0, 0, 0},
    {0.8018, 0.9603, 0.4584, 0.9779, 1.0, 0, 0, 0},
    {0.3838, 0.2135, 0.2996, 0.4535, 0.4009, 1.0, 0, 0},
    {0.1912, 0.6497, 0.4551, 0.5668, 0.5796, -0.0175, 1.0, 0},
    {0.4326, 0.6267, 0.4270, 0.6465, 0.5855, 0.3807, 0.5159, 1.0},
}};

CorrelationMatrix sos_matrix() {
    CorrelationMatrix corr;
    corr.gene_names.assign(kSosGenes.begin(), kSosGenes.end());
    corr.coefficients.resize(8, 8);
    for (Index i = 0; i < 8; ++i) {
        for (Index j = 0; j <= i; ++j) {
            const double c = kSosLowerTriangle[static_cast<std::size_t>(i)]
                                              [static_cast<std::size_t>(j)];
            corr.coefficients(i, j) = c;
            corr.coefficients(j, i) = c;
        }
    }
    corr.validate();
    return corr;
}

void write_edge_file(const std::string& path, const EdgeList& edges) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "gene1\tgene2\n";
    for (const auto& [a, b] : edges) out << a << '\t' << b << '\n';
}

EdgeList tour_edges(const std::vector<std::string>& tour) {
    EdgeList edges;
    for (std::size_t i = 0; i < tour.size(); ++i) {
        edges.emplace_back(tour[i], tour[(i + 1) % tour.size()]);
    }
    return edges;
}

}  // namespace

BenchmarkName parse_benchmark_name(const std::string& name) {
    if (name == "sos") return BenchmarkName::sos;
    if (name == "irma-on" || name == "irma_on") return BenchmarkName::irma_on;
    if (name == "irma-off" || name == "irma_off") return BenchmarkName::irma_off;
    throw InvalidParameter("unknown benchmark \"" + name +
                           "\" (expected sos, irma-on or irma-off)");
}

std::string to_string(BenchmarkName name) {
    switch (name) {
        case BenchmarkName::sos: return "sos";
        case BenchmarkName::irma_on: return "irma-on";
        case BenchmarkName::irma_off: return "irma-off";
    }
    return "";
}

BenchmarkCase load_benchmark(BenchmarkName name) {
    BenchmarkCase bench;
    bench.name = name;
    switch (name) {
        case BenchmarkName::sos:
            bench.correlation = sos_matrix();
            bench.published_tour = {"uvrD", "uvrA", "lexA", "recA", "umuDC", "ruvA", "polB", "uvrY"};
            bench.published_yes_edges = {{"uvrA", "lexA"}, {"lexA", "recA"}, {"recA", "umuDC"}};
            bench.gold_file = "sos_gold.tsv";
            break;
        case BenchmarkName::irma_on:
            bench.published_tour = {"GAL80", "GAL4", "CBF1", "SWI5", "ASH1"};
            bench.published_yes_edges = {{"GAL80", "GAL4"}, {"GAL4", "CBF1"}, {"CBF1", "SWI5"}};
            bench.gold_file = "irma_gold.tsv";
            break;
        case BenchmarkName::irma_off:
            bench.published_tour = {"GAL4", "GAL80", "ASH1", "CBF1", "SWI5"};
            bench.published_yes_edges = {{"GAL4", "GAL80"}, {"ASH1", "CBF1"}, {"CBF1", "SWI5"}};
            bench.gold_file = "irma_gold.tsv";
            break;
    }
    return bench;
}

std::vector<std::string> dump_fixtures(const std::string& dir) {
    std::vector<std::string> written;
    const std::string base = dir.empty() ? "." : dir;

    {
        const std::string path = base + "/sos_correlation.tsv";
        std::ofstream out(path);
        if (!out) throw Error("cannot write " + path);
        write_correlation_file(out, *load_benchmark(BenchmarkName::sos).correlation);
        written.push_back(path);
    }
    for (const auto name :
         {BenchmarkName::sos, BenchmarkName::irma_on, BenchmarkName::irma_off}) {
        const BenchmarkCase bench = load_benchmark(name);
        std::string stem = to_string(name);
        std::replace(stem.begin(), stem.end(), '-', '_');

        const std::string tour_path = base + "/" + stem + "_published_tour.tsv";
        write_edge_file(tour_path, tour_edges(bench.published_tour));
        written.push_back(tour_path);

        const std::string yes_path = base + "/" + stem + "_published_yes_edges.tsv";
        write_edge_file(yes_path, bench.published_yes_edges);
        written.push_back(yes_path);
    }
    return written;
}

}  // namespace antgrn
