// End-to-end tests driving the installed CLI binary through a shell.  The
// binary path and a scratch directory arrive as --cli and --tmpdir arguments
// (wired up in CMakeLists), everything else is forwarded to doctest.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_tmp;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) return {};
    return std::string(std::istreambuf_iterator<char>(in), {});
}

RunResult run(const std::string& args) {
    const fs::path out_file = g_tmp / "last_stdout.txt";
    const fs::path err_file = g_tmp / "last_stderr.txt";
    const std::string cmd = "\"" + g_cli + "\" " + args + " > \"" + out_file.string() +
                            "\" 2> \"" + err_file.string() + "\"";
    const int raw = std::system(cmd.c_str());
    RunResult result;
    if (raw != -1 && WIFEXITED(raw)) result.exit_code = WEXITSTATUS(raw);
    result.out = slurp(out_file);
    result.err = slurp(err_file);
    return result;
}

std::size_t line_count(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("corpus generation and verification round-trip byte-identically") {
    const fs::path corpus = g_tmp / "corpus_a";
    const fs::path corpus_again = g_tmp / "corpus_b";
    const std::string common = "gen-corpus --dim 1 --degree 8 --count 8 --seed 7 --out ";

    const RunResult gen = run(common + "\"" + corpus.string() + "\"");
    CHECK(gen.exit_code == 0);
    CHECK(fs::exists(corpus / "manifest.json"));
    std::size_t body_files = 0;
    for (const auto& entry : fs::directory_iterator(corpus)) {
        body_files += entry.path().filename() != "manifest.json";
    }
    CHECK(body_files == 8);

    const RunResult gen2 = run(common + "\"" + corpus_again.string() + "\"");
    CHECK(gen2.exit_code == 0);
    CHECK(slurp(corpus / "manifest.json") == slurp(corpus_again / "manifest.json"));
    CHECK(slurp(corpus / "ball_000.json") == slurp(corpus_again / "ball_000.json"));
    CHECK_FALSE(slurp(corpus / "ball_000.json").empty());

    const RunResult verify = run("verify --corpus \"" + corpus.string() + "\"");
    CHECK(verify.exit_code == 0);
    CHECK(verify.out.find(", 0 failed") != std::string::npos);
    const std::string csv = slurp(corpus / "records.csv");
    REQUIRE_FALSE(csv.empty());
    CHECK(csv.substr(0, csv.find('\n')) == "body_id,check,lhs,rhs,slack,tol,pass");
    CHECK_FALSE(slurp(corpus / "report.json").empty());

    // Re-running the verification into a second directory reproduces the CSV
    // byte for byte.
    const fs::path verify_out = g_tmp / "verify_again";
    const RunResult verify2 = run("verify --corpus \"" + corpus.string() + "\" --out \"" +
                                  verify_out.string() + "\"");
    CHECK(verify2.exit_code == 0);
    CHECK(slurp(verify_out / "records.csv") == csv);
}

TEST_CASE("corrupt and missing inputs exit with code 2 and name the file") {
    const fs::path corpus = g_tmp / "corpus_corrupt";
    REQUIRE(run("gen-corpus --dim 1 --degree 8 --count 4 --seed 7 --out \"" +
                corpus.string() + "\"")
                .exit_code == 0);
    const fs::path victim = corpus / "ball_000.json";
    {
        std::ofstream out(victim);
        out << "this is not json";
    }
    const RunResult verify = run("verify --corpus \"" + corpus.string() + "\"");
    CHECK(verify.exit_code == 2);
    CHECK(verify.err.find(victim.string()) != std::string::npos);

    const fs::path nowhere = g_tmp / "no_such_corpus";
    const RunResult missing = run("verify --corpus \"" + nowhere.string() + "\"");
    CHECK(missing.exit_code == 2);
    CHECK(missing.err.find("manifest.json") != std::string::npos);
}

TEST_CASE("solve converges to the unit ball for the constant target") {
    const fs::path out = g_tmp / "solve.json";
    const RunResult solve =
        run("solve --dim 1 --degree 8 --out \"" + out.string() + "\"");
    CHECK(solve.exit_code == 0);
    CHECK(solve.out.find("converged") != std::string::npos);
    const std::string report = slurp(out);
    CHECK(report.find("\"converged\": true") != std::string::npos);
    CHECK(report.find("\"residual_history\"") != std::string::npos);
}

TEST_CASE("solve recovers a stored body from its own density") {
    const fs::path corpus = g_tmp / "corpus_target";
    REQUIRE(run("gen-corpus --dim 1 --degree 8 --count 4 --seed 11 --out \"" +
                corpus.string() + "\"")
                .exit_code == 0);
    const fs::path config = g_tmp / "density_config.json";
    {
        std::ofstream out(config);
        out << "{\"schema_version\": 1, \"dim\": 1, \"degree\": 8,\n"
            << " \"solver\": {\"p\": 0.5},\n"
            << " \"target\": {\"kind\": \"body_density\", \"file\": \""
            << (corpus / "translated_ball_001.json").string() << "\"}}";
    }
    const fs::path out = g_tmp / "recover.json";
    const RunResult solve =
        run("solve --config \"" + config.string() + "\" --out \"" + out.string() + "\"");
    CHECK(solve.exit_code == 0);
    CHECK(slurp(out).find("\"converged\": true") != std::string::npos);
}

TEST_CASE("failed solve exits 1 and still writes the history") {
    const fs::path config = g_tmp / "starved_config.json";
    {
        std::ofstream out(config);
        out << R"({"schema_version": 1, "dim": 1, "degree": 8,
                   "solver": {"max_iterations": 2},
                   "target": {"kind": "constant", "value": 3.0}})";
    }
    const fs::path out = g_tmp / "starved.json";
    const RunResult solve =
        run("solve --config \"" + config.string() + "\" --out \"" + out.string() + "\"");
    CHECK(solve.exit_code == 1);
    CHECK(solve.out.find("did not converge") != std::string::npos);
    const std::string report = slurp(out);
    CHECK(report.find("\"converged\": false") != std::string::npos);
    CHECK(report.find("\"residual_history\"") != std::string::npos);
}

TEST_CASE("sweep emits one row per exponent and start") {
    const fs::path out = g_tmp / "sweep.csv";
    const RunResult sweep =
        run("sweep --dim 1 --degree 8 --out \"" + out.string() + "\"");
    CHECK(sweep.exit_code == 0);
    const std::string csv = slurp(out);
    REQUIRE_FALSE(csv.empty());
    CHECK(csv.substr(0, csv.find('\n')) ==
          "p,start_id,converged,iterations,final_residual,hausdorff_to_ball");
    // 4 standard circle exponents x 3 default starts, plus the header
    CHECK(line_count(csv) == 13);
}

TEST_CASE("uniqueness probe agrees across starts") {
    const fs::path out = g_tmp / "probe.json";
    const RunResult probe =
        run("probe-uniqueness --dim 1 --degree 8 --out \"" + out.string() + "\"");
    CHECK(probe.exit_code == 0);
    CHECK(probe.out.find("consistent=1") != std::string::npos);
    CHECK(slurp(out).find("\"consistent\": true") != std::string::npos);
}

TEST_CASE("convergence study decreases to its floor") {
    const fs::path out = g_tmp / "convergence.csv";
    const RunResult study =
        run("convergence-study --dim 1 --out \"" + out.string() + "\"");
    CHECK(study.exit_code == 0);
    CHECK(study.out.find("strictly_decreasing=1") != std::string::npos);
    CHECK(study.out.find("floor_reached=1") != std::string::npos);
    CHECK(line_count(slurp(out)) == 5);  // header + four degrees
}

int main(int argc, char** argv) {
    std::vector<const char*> forwarded;
    for (int i = 0; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--cli" && i + 1 < argc) {
            g_cli = argv[++i];
        } else if (arg == "--tmpdir" && i + 1 < argc) {
            g_tmp = argv[++i];
        } else {
            forwarded.push_back(argv[i]);
        }
    }
    if (g_cli.empty() || g_tmp.empty()) {
        std::fprintf(stderr, "usage: test_cli --cli <binary> --tmpdir <dir> [doctest args]\n");
        return 1;
    }
    fs::remove_all(g_tmp);
    fs::create_directories(g_tmp);
    doctest::Context context(static_cast<int>(forwarded.size()), forwarded.data());
    return context.run();
}
