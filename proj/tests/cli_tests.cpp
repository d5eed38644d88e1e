#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

#include "antgrn/datasets.hpp"
#include "antgrn/oracle.hpp"

using namespace antgrn;
namespace fs = std::filesystem;

#ifndef ANTGRN_CLI_PATH
#error "ANTGRN_CLI_PATH must point at the antgrn executable"
#endif
#ifndef ANTGRN_DATA_DIR
#error "ANTGRN_DATA_DIR must point at the shipped data directory"
#endif

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "antgrn_cli_tests";
    fs::create_directories(dir);
    return dir;
}

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    const fs::path err_path = scratch_dir() / ("stderr_" + std::to_string(++counter) + ".txt");

    const std::string command =
        env_prefix + std::string(ANTGRN_CLI_PATH) + " " + args + " 2>" + err_path.string();
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);

    CliResult result;
    char buffer[4096];
    std::size_t got = 0;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
        result.out.append(buffer, got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

    std::ifstream err_in(err_path);
    std::ostringstream err_text;
    err_text << err_in.rdbuf();
    result.err = err_text.str();
    fs::remove(err_path);
    return result;
}

fs::path write_file(const std::string& name, const std::string& content) {
    const fs::path path = scratch_dir() / name;
    std::ofstream out(path);
    REQUIRE(out.good());
    out << content;
    return path;
}

std::string gold_path(const std::string& filename) {
    return std::string(ANTGRN_DATA_DIR) + "/" + filename;
}

}  // namespace

TEST_CASE("correlate: a valid file yields a matrix on stdout") {
    const fs::path expr = write_file("expr_ok.tsv",
                                     "gene\tt1\tt2\tt3\n"
                                     "geneA\t1\t2\t3\n"
                                     "geneB\t3\t5\t9\n");
    const CliResult r = run_cli("correlate --expression " + expr.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("geneA") != std::string::npos);
    CHECK(r.out.find("geneB") != std::string::npos);
    // 2 genes: header line plus two rows.
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);
}

TEST_CASE("correlate: a ragged file exits 2 and cites the line") {
    const fs::path expr = write_file("expr_ragged.tsv",
                                     "gene\tt1\tt2\n"
                                     "geneA\t1\t2\n"
                                     "geneB\t1\n");
    const CliResult r = run_cli("correlate --expression " + expr.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("correlate: a constant row exits 2 and names the gene") {
    const fs::path expr = write_file("expr_flat.tsv",
                                     "gene\tt1\tt2\tt3\n"
                                     "geneA\t1\t2\t3\n"
                                     "flatgene\t4\t4\t4\n");
    const CliResult r = run_cli("correlate --expression " + expr.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("flatgene") != std::string::npos);
    CHECK(r.err.find("zero variance") != std::string::npos);
}

TEST_CASE("infer: the SOS benchmark run attains the oracle optimum") {
    const CliResult r = run_cli("infer --benchmark sos --seed 42");
    REQUIRE(r.exit_code == 0);

    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("gene_order").size() == 8);
    CHECK(doc.at("edges").size() == 8);
    CHECK(doc.at("seed").get<std::uint64_t>() == 42);
    CHECK(doc.at("params").at("ants").get<int>() == 8);

    const auto oracle =
        brute_force_optimum(*load_benchmark(BenchmarkName::sos).correlation, ObjectiveMode::raw);
    CHECK(doc.at("score").get<double>() == doctest::Approx(oracle.best_score).epsilon(1e-12));
}

TEST_CASE("infer: exit codes for bad parameters and tiny instances") {
    CHECK(run_cli("infer --benchmark sos --alpha -1").exit_code == 2);
    CHECK(run_cli("infer --benchmark sos --rho 0").exit_code == 2);
    CHECK(run_cli("infer --benchmark sos --objective signed").exit_code == 2);
    CHECK(run_cli("infer").exit_code == 2);
    CHECK(run_cli("infer --benchmark sos --correlation somefile").exit_code == 2);
    CHECK(run_cli("infer --benchmark nosuch").exit_code == 2);
    CHECK(run_cli("nosuchcommand").exit_code == 2);

    const fs::path tiny = write_file("tiny_corr.tsv",
                                     "gene\ta\tb\n"
                                     "a\t1\t0.5\n"
                                     "b\t0.5\t1\n");
    CHECK(run_cli("infer --correlation " + tiny.string()).exit_code == 3);
}

TEST_CASE("infer: byte-identical output across repeats and worker counts") {
    const CliResult a = run_cli("infer --benchmark sos --seed 42");
    const CliResult b = run_cli("infer --benchmark sos --seed 42");
    const CliResult c = run_cli("infer --benchmark sos --seed 42 --workers 4");
    const CliResult d = run_cli("infer --benchmark sos --seed 42 --workers 4");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(c.out == d.out);
    CHECK(a.out == c.out);

    const CliResult other = run_cli("infer --benchmark sos --seed 43");
    CHECK(other.out != a.out);
}

TEST_CASE("infer: --edges writes the three-column list") {
    const fs::path edges = scratch_dir() / "sos_edges.tsv";
    fs::remove(edges);
    const CliResult r =
        run_cli("infer --benchmark sos --seed 42 --output - --edges " + edges.string());
    REQUIRE(r.exit_code == 0);
    REQUIRE(fs::exists(edges));

    std::ifstream in(edges);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) {
        CHECK(std::count(line.begin(), line.end(), '\t') == 2);
        ++lines;
    }
    CHECK(lines == 8);
}

TEST_CASE("infer: config file fills defaults but loses to flags") {
    const fs::path cfg = write_file("solver.cfg",
                                    "# solver defaults\n"
                                    "iterations = 7\n"
                                    "rho = 0.25\n");

    const CliResult from_file =
        run_cli("infer --benchmark sos --seed 1 --config " + cfg.string());
    REQUIRE(from_file.exit_code == 0);
    auto doc = nlohmann::json::parse(from_file.out);
    CHECK(doc.at("params").at("iterations").get<int>() == 7);
    CHECK(doc.at("params").at("rho").get<double>() == 0.25);

    const CliResult flag_wins =
        run_cli("infer --benchmark sos --seed 1 --iterations 5 --config " + cfg.string());
    REQUIRE(flag_wins.exit_code == 0);
    doc = nlohmann::json::parse(flag_wins.out);
    CHECK(doc.at("params").at("iterations").get<int>() == 5);
    CHECK(doc.at("params").at("rho").get<double>() == 0.25);

    const fs::path bad = write_file("bad.cfg", "walkers = 3\n");
    CHECK(run_cli("infer --benchmark sos --config " + bad.string()).exit_code == 2);
}

TEST_CASE("infer: ANTGRN_CONFIG supplies the config path, --config overrides it") {
    const fs::path env_cfg = write_file("env.cfg", "iterations = 11\n");
    const fs::path flag_cfg = write_file("flag.cfg", "iterations = 13\n");

    const std::string env_prefix = "ANTGRN_CONFIG=" + env_cfg.string() + " ";
    const CliResult from_env = run_cli("infer --benchmark sos --seed 1", env_prefix);
    REQUIRE(from_env.exit_code == 0);
    CHECK(nlohmann::json::parse(from_env.out).at("params").at("iterations").get<int>() == 11);

    const CliResult flag_beats_env =
        run_cli("infer --benchmark sos --seed 1 --config " + flag_cfg.string(), env_prefix);
    REQUIRE(flag_beats_env.exit_code == 0);
    CHECK(nlohmann::json::parse(flag_beats_env.out).at("params").at("iterations").get<int>() ==
          13);
}

TEST_CASE("oracle: enumerates all SOS circuits") {
    const CliResult r = run_cli("oracle --benchmark sos");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("n_cycles_examined").get<long>() == 2520);
    CHECK(doc.at("score").get<double>() >= 5.0476 - 1e-9);
    CHECK(doc.at("all_optima").size() >= 1);
}

TEST_CASE("eval: scores an inferred edge list against the gold standard") {
    const fs::path edges = scratch_dir() / "eval_edges.tsv";
    REQUIRE(run_cli("infer --benchmark sos --seed 42 --edges " + edges.string() +
                    " --output /dev/null")
                .exit_code == 0);

    const CliResult r = run_cli("eval --predicted " + edges.string() + " --gold " +
                                gold_path("sos_gold.tsv") + " --format json");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("n_predicted").get<int>() == 8);
    CHECK(doc.at("n_gold").get<int>() == 9);

    const CliResult table = run_cli("eval --predicted " + edges.string() + " --gold " +
                                    gold_path("sos_gold.tsv"));
    CHECK(table.exit_code == 0);
    CHECK(table.out.find("Gene 1") != std::string::npos);

    CHECK(run_cli("eval --predicted /nonexistent --gold " + gold_path("sos_gold.tsv"))
              .exit_code == 2);
}

TEST_CASE("reproduce: sos replays the published evaluation") {
    const CliResult r = run_cli("reproduce sos --data-dir " + std::string(ANTGRN_DATA_DIR));
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("published circuit scores 5.0476") != std::string::npos);
    CHECK(r.out.find("matches 3 of 8") != std::string::npos);
}

TEST_CASE("reproduce: both IRMA replays match 3 of 5") {
    for (const std::string name : {"irma-on", "irma-off"}) {
        CAPTURE(name);
        const CliResult r =
            run_cli("reproduce " + name + " --data-dir " + std::string(ANTGRN_DATA_DIR));
        REQUIRE(r.exit_code == 0);
        CHECK(r.out.find("matched 3 of 5 predicted") != std::string::npos);
    }
}

TEST_CASE("reproduce: a wrong gold file trips the embedded expectations") {
    const fs::path dir = scratch_dir() / "wrong_gold";
    fs::create_directories(dir);
    std::ofstream out(dir / "sos_gold.tsv");
    out << "gene1\tgene2\nuvrD\tpolB\n";
    out.close();

    const CliResult r = run_cli("reproduce sos --data-dir " + dir.string());
    CHECK(r.exit_code == 4);
    CHECK(r.err.find("3 of 8") != std::string::npos);
}

TEST_CASE("reproduce: --dump-fixtures writes the embedded fixtures") {
    const fs::path dir = scratch_dir() / "fixtures";
    fs::remove_all(dir);
    const CliResult r = run_cli("reproduce --dump-fixtures " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(dir / "sos_correlation.tsv"));
    CHECK(fs::exists(dir / "sos_published_tour.tsv"));
    CHECK(fs::exists(dir / "irma_on_published_tour.tsv"));
    CHECK(fs::exists(dir / "irma_off_published_yes_edges.tsv"));
}

TEST_CASE("export-dot: renders the circuit with 4-decimal labels") {
    const fs::path edges = scratch_dir() / "dot_edges.tsv";
    REQUIRE(run_cli("infer --benchmark sos --seed 42 --edges " + edges.string() +
                    " --output /dev/null")
                .exit_code == 0);

    const CliResult r = run_cli("export-dot --edges " + edges.string() + " --benchmark sos");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("graph ", 0) == 0);
    std::size_t count = 0;
    for (std::size_t pos = 0; (pos = r.out.find(" -- ", pos)) != std::string::npos; ++pos) {
        ++count;
    }
    CHECK(count == 8);
    CHECK(r.out.find("label=\"0.") != std::string::npos);

    const fs::path unknown = write_file("unknown_edges.tsv", "uvrD\tnosuchgene\n");
    CHECK(run_cli("export-dot --edges " + unknown.string() + " --benchmark sos").exit_code == 2);

    const fs::path empty = write_file("empty_edges.tsv", "gene1\tgene2\n");
    CHECK(run_cli("export-dot --edges " + empty.string() + " --benchmark sos").exit_code == 2);
}

TEST_CASE("machine output stays clean of human chatter") {
    const CliResult r = run_cli("infer --benchmark sos --seed 42");
    REQUIRE(r.exit_code == 0);
    CHECK(nlohmann::json::accept(r.out));
    CHECK(r.err.find("best circuit score") != std::string::npos);
}
