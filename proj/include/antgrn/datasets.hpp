#pragma once

#include <optional>
#include <string>
#include <vector>

#include "antgrn/evaluation.hpp"
#include "antgrn/types.hpp"

namespace antgrn {

enum class BenchmarkName { sos, irma_on, irma_off };

BenchmarkName parse_benchmark_name(const std::string& name);
std::string to_string(BenchmarkName name);

/// An embedded benchmark fixture: the published correlation matrix (SOS
/// only; the IRMA expression data is not embedded, so those cases carry no
/// matrix), the published predicted tour, and the edges it got right.
struct BenchmarkCase {
    BenchmarkName name = BenchmarkName::sos;
    std::optional<CorrelationMatrix> correlation;
    std::vector<std::string> published_tour;
    EdgeList published_yes_edges;
    std::string gold_file;  // filename under the data directory
};

/// Returns the embedded fixture, byte-for-byte stable across releases.
BenchmarkCase load_benchmark(BenchmarkName name);

/// Writes every fixture (SOS matrix, published tours, expected-match edge
/// lists) into `dir` using the standard file formats, so they can be
/// diffed and edited. Returns the written paths.
std::vector<std::string> dump_fixtures(const std::string& dir);

}  // namespace antgrn
