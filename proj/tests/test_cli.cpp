#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "multinet/tensor3.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = MULTINET_CLI_PATH;
const std::string kFixtureDir = MULTINET_FIXTURE_DIR;

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// doctest runs single-threaded; a shared scratch dir per process is fine.
fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("multinet_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

CliResult run_cli(const std::string& args) {
    const std::string err_file = (scratch_dir() / "stderr.txt").string();
    const std::string cmd = kCli + " " + args + " 2>" + err_file;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult result;
    std::array<char, 4096> buf;
    while (std::fgets(buf.data(), buf.size(), pipe)) result.out += buf.data();
    const int rc = pclose(pipe);
    result.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream err(err_file);
    std::stringstream ss;
    ss << err.rdbuf();
    result.err = ss.str();
    return result;
}

std::string write_file(const std::string& name, const std::string& contents) {
    const fs::path path = scratch_dir() / name;
    fs::create_directories(path.parent_path());
    std::ofstream out(path);
    out << contents;
    return path.string();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::string out_dir() {
    const fs::path d = scratch_dir() / "out";
    fs::create_directories(d);
    return d.string();
}

}  // namespace

TEST_CASE("cli: hits prints a ranked pair table with --top rows") {
    const std::string sh = kFixtureDir + "/shareholding.csv";
    const CliResult r = run_cli("hits " + sh + " --top 1 --out " + out_dir());
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);  // header + one row
    CHECK(lines[0].find("hub score") != std::string::npos);
    CHECK(lines[0].find("authority score") != std::string::npos);
}

TEST_CASE("cli: hits hub and authority columns coincide on a symmetric layer") {
    const std::string path = write_file("sym.csv",
                                        "src,dst,weight\n"
                                        "x,y,1\ny,x,1\n"
                                        "y,z,2\nz,y,2\n"
                                        "x,z,1\nz,x,1\n");
    const CliResult r = run_cli("hits " + path + " --format tsv --out " + out_dir());
    CHECK(r.exit_code == 0);
    for (const auto& line : lines_of(r.out)) {
        if (line.rfind("company", 0) == 0) continue;
        std::istringstream in(line);
        std::string c1, s1, c2, s2;
        std::getline(in, c1, '\t');
        std::getline(in, s1, '\t');
        std::getline(in, c2, '\t');
        std::getline(in, s2, '\t');
        CHECK(c1 == c2);
        CHECK(s1 == s2);
    }
}

TEST_CASE("cli: hits table reproduces the chain-graph library scores") {
    const std::string path = write_file("chain.csv", "src,dst,weight\np,q,1\np,r,1\nq,r,1\n");
    const CliResult r = run_cli("hits " + path + " --format tsv --out " + out_dir());
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[1] == "p\t0.85065\tr\t0.85065");
    CHECK(lines[2] == "q\t0.52573\tq\t0.52573");
}

TEST_CASE("cli: hits json mode carries convergence metadata") {
    const std::string sh = kFixtureDir + "/shareholding.csv";
    const CliResult r = run_cli("hits " + sh + " --format json --out " + out_dir());
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["command"] == "hits");
    CHECK(j["converged"] == true);
    CHECK(j["hubs"].size() == 10);
}

TEST_CASE("cli: eigencentrality ranks the path center first with its degree") {
    const std::string path = write_file("p3.csv", "src,dst,weight\na,b,1\nb,c,1\n");
    const CliResult r =
        run_cli("eigencentrality " + path + " --symmetrize --format tsv --out " + out_dir());
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() >= 2);
    CHECK(lines[1] == "b\t0.70711\t2");
    CHECK(lines[2].substr(0, 1) == "a");  // tie between a and c broken by label order
}

TEST_CASE("cli: eigencentrality breaks complete-graph ties by label order") {
    const std::string path = write_file("k4.csv",
                                        "src,dst,count\n"
                                        "n1,n2,1\nn1,n3,1\nn1,n4,1\n"
                                        "n2,n3,1\nn2,n4,1\nn3,n4,1\n");
    const CliResult r = run_cli("eigencentrality " + path + " --format tsv --out " + out_dir());
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 5);
    CHECK(lines[1] == "n1\t0.50000\t3");
    CHECK(lines[2] == "n2\t0.50000\t3");
    CHECK(lines[4] == "n4\t0.50000\t3");
}

TEST_CASE("cli: eigencentrality puts the star hub first and rejects directed input") {
    std::string star = "src,dst,count\n";
    for (int i = 1; i <= 5; ++i) star += "hub,leaf" + std::to_string(i) + ",1\n";
    const std::string path = write_file("s5.csv", star);
    const CliResult r = run_cli("eigencentrality " + path + " --format tsv --out " + out_dir());
    CHECK(r.exit_code == 0);
    CHECK(lines_of(r.out)[1].rfind("hub\t", 0) == 0);

    const std::string directed = write_file("dir.csv", "src,dst,weight\na,b,1\n");
    const CliResult bad = run_cli("eigencentrality " + directed + " --out " + out_dir());
    CHECK(bad.exit_code == 1);
    CHECK(bad.err.find("symmetric") != std::string::npos);
}

TEST_CASE("cli: tophits topic scores sum to one in json mode") {
    const CliResult r = run_cli("tophits --data " + kFixtureDir +
                                " --rank 2 --seed 7 --format json --out " + out_dir());
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    double sum = 0.0;
    for (const auto& row : j["topics"]) sum += std::abs(row["score_l1"].get<double>());
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    CHECK(j["topics"][0]["layer"] == "SH");
}

TEST_CASE("cli: factor index beyond the rank is an input error") {
    const CliResult r = run_cli("tophits --data " + kFixtureDir +
                                " --rank 1 --factor 2 --seed 7 --out " + out_dir());
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("factor index exceeds rank") != std::string::npos);
}

TEST_CASE("cli: single-layer tophits tables equal the hits tables") {
    // strongly connected with varied weights so every score is positive and
    // distinct at table precision
    const std::string sh = write_file("single/shareholding.csv",
                                      "src,dst,weight\n"
                                      "A,B,0.25\nA,C,0.10\nB,C,0.18\nB,D,0.07\n"
                                      "C,A,0.30\nC,D,0.12\nD,A,0.05\nD,B,0.09\n");
    const CliResult hits = run_cli("hits " + sh + " --top 5 --out " + out_dir());
    const CliResult tophits =
        run_cli("tophits --sh " + sh +
                " --rank 1 --no-scc-restrict --no-normalize --top 5 --seed 3 --out " + out_dir());
    CHECK(hits.exit_code == 0);
    CHECK(tophits.exit_code == 0);

    const auto hits_lines = lines_of(hits.out);
    const auto top_lines = lines_of(tophits.out);
    // tophits prints a factor line and a topic line before the table
    REQUIRE(top_lines.size() == hits_lines.size() + 2);
    for (std::size_t i = 0; i < hits_lines.size(); ++i) CHECK(top_lines[i + 2] == hits_lines[i]);
}

TEST_CASE("cli: rank-sweep emits one row per rank and hits 100 corcondia at the exact rank") {
    // exact rank-3 dataset written as an ingested tensor
    multinet::Rng rng(7);
    Eigen::VectorXd lambdas(3);
    lambdas << 4.0, 2.0, 1.0;
    const auto exact = oracles::exact_cp_tensor(rng, 7, 3, lambdas);
    const fs::path dir = scratch_dir() / "exact3";
    fs::create_directories(dir);
    multinet::write_tensor_text(exact.tensor, (dir / "tensor.txt").string());
    std::ofstream labels(dir / "labels.txt");
    for (int i = 0; i < 7; ++i) labels << "c" << i << "\n";
    labels.close();

    const CliResult r = run_cli("rank-sweep --data " + dir.string() +
                                " --ranks 1..4 --tol 1e-12 --max-iter 2000 --restarts 5 --seed 1 "
                                "--format tsv --out " +
                                out_dir());
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 5);
    std::istringstream row3(lines[3]);
    std::string rank, fit, corcondia;
    std::getline(row3, rank, '\t');
    std::getline(row3, fit, '\t');
    std::getline(row3, corcondia, '\t');
    CHECK(rank == "3");
    CHECK(std::stod(fit) >= 0.999);
    CHECK(std::stod(corcondia) == doctest::Approx(100.0).epsilon(1e-4));

    const CliResult one = run_cli("rank-sweep --data " + dir.string() +
                                  " --ranks 1..1 --seed 1 --format tsv --out " + out_dir());
    CHECK(lines_of(one.out).size() == 2);
}

TEST_CASE("cli: ingest writes the dataset files and restriction summary") {
    const fs::path dir = scratch_dir() / "ingested";
    const CliResult r =
        run_cli("ingest --data " + kFixtureDir + " --out " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("12 -> 8") != std::string::npos);
    CHECK(fs::exists(dir / "tensor.txt"));
    CHECK(fs::exists(dir / "labels.txt"));
    CHECK(fs::exists(dir / "layer_names.txt"));
    CHECK(fs::exists(dir / "report.json"));
    CHECK(fs::exists(dir / "ingest_manifest.json"));

    std::ifstream tensor(dir / "tensor.txt");
    std::string header;
    std::getline(tensor, header);
    CHECK(header == "8 8 3");

    // the ingested dataset feeds tophits directly
    const CliResult top = run_cli("tophits --data " + dir.string() +
                                  " --rank 2 --seed 7 --format json --out " + out_dir());
    CHECK(top.exit_code == 0);
    const auto j = nlohmann::json::parse(top.out);
    CHECK(j["topics"].size() == 3);
}

TEST_CASE("cli: identical seeds give byte-identical tophits output") {
    const std::string args = "tophits --data " + kFixtureDir +
                             " --rank 2 --seed 11 --out " + out_dir();
    const CliResult a = run_cli(args);
    const CliResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
}

TEST_CASE("cli: manifests record inputs with digests") {
    const fs::path dir = scratch_dir() / "manifest_check";
    fs::create_directories(dir);
    const CliResult r = run_cli("hits " + kFixtureDir + "/shareholding.csv --out " + dir.string());
    CHECK(r.exit_code == 0);
    std::ifstream in(dir / "hits_manifest.json");
    REQUIRE(in.good());
    nlohmann::json manifest;
    in >> manifest;
    CHECK(manifest["command"] == "hits");
    CHECK(manifest["library_version"] == "0.1.0");
    REQUIRE(manifest["inputs"].size() == 1);
    CHECK(manifest["inputs"][0]["fnv1a64"].get<std::string>().size() == 16);
}

TEST_CASE("cli: input errors exit with code 1") {
    CHECK(run_cli("hits /nonexistent.csv --out " + out_dir()).exit_code == 1);
    CHECK(run_cli("tophits --out " + out_dir()).exit_code == 1);  // no inputs at all
    CHECK(run_cli("frobnicate").exit_code == 1);                  // unknown subcommand
    const std::string bad = write_file("bad.csv", "src,dst,weight\nA,B,notanumber\n");
    const CliResult r = run_cli("hits " + bad + " --out " + out_dir());
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("bad.csv:2") != std::string::npos);
}

TEST_CASE("cli: non-convergence exits with code 2 after writing the tables") {
    const CliResult r = run_cli("tophits --data " + kFixtureDir +
                                " --rank 2 --max-iter 2 --seed 7 --out " + out_dir());
    CHECK(r.exit_code == 2);
    CHECK_FALSE(r.out.empty());  // partial results still printed
    CHECK(r.err.find("not converged") != std::string::npos);
}

TEST_CASE("cli: MULTINET_SEED is the seed fallback") {
    const fs::path dir = scratch_dir() / "env_seed";
    fs::create_directories(dir);
    const std::string base =
        "tophits --data " + kFixtureDir + " --rank 2 --out " + dir.string();
    // env fallback must match an explicit --seed run
    const std::string err_file = (scratch_dir() / "stderr.txt").string();
    FILE* pipe = popen(("MULTINET_SEED=11 " + kCli + " " + base + " 2>" + err_file).c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string env_out;
    std::array<char, 4096> buf;
    while (std::fgets(buf.data(), buf.size(), pipe)) env_out += buf.data();
    pclose(pipe);

    const CliResult explicit_run = run_cli(base + " --seed 11");
    CHECK(env_out == explicit_run.out);

    std::ifstream in(dir / "tophits_manifest.json");
    nlohmann::json manifest;
    in >> manifest;
    CHECK(manifest["settings"]["seed"] == 11);
}

TEST_CASE("cli: subgroup prints top-5 by default for the chosen factor") {
    const CliResult r = run_cli("subgroup --data " + kFixtureDir +
                                " --rank 2 --factor 2 --seed 7 --out " + out_dir());
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    CHECK(lines[0].rfind("factor 2 of 2", 0) == 0);
    // header + 5 rows after the two lead lines
    REQUIRE(lines.size() == 2 + 1 + 5);
}
