#include "barrierlab/cli.hpp"

#include "barrierlab/json_io.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace barrierlab;

namespace {

int run_cli(const std::vector<std::string>& args, std::string& out_text) {
    std::ostringstream out, err;
    int rc = cli::run(args, out, err);
    out_text = out.str() + err.str();
    return rc;
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/barrierlab_test_") + name;
    std::ofstream f(path);
    f << content;
    return path;
}

const char* kSquareJson = R"({"dim": 2, "halfspaces": [
  {"a": [1, 0], "b": 1}, {"a": [-1, 0], "b": 1},
  {"a": [0, 1], "b": 1}, {"a": [0, -1], "b": 1}]})";

} // namespace

TEST_CASE("certify on the square passes and is deterministic") {
    auto path = write_temp("square.json", kSquareJson);
    std::string a, b;
    std::vector<std::string> args{"certify", "--input", path, "--samples", "40",
                                  "--dirs", "4", "--seed", "7"};
    CHECK(run_cli(args, a) == 0);
    CHECK(run_cli(args, b) == 0);
    CHECK(a == b); // byte-identical reports for identical config and seed
    auto rep = nlohmann::json::parse(a);
    CHECK(rep.at("pass").get<bool>());
    CHECK(rep.at("schema_version").get<int>() == 1);
    CHECK(rep.at("config").at("seed").get<long>() == 7);
    CHECK(rep.at("results").at("max_r1").at("value").get<double>() <= 1.0 + 1e-8);
    CHECK(rep.at("results").at("max_r1").contains("tol"));
}

TEST_CASE("certify thread count does not change the report") {
    auto path = write_temp("square2.json", kSquareJson);
    std::string a, b;
    CHECK(run_cli({"certify", "--input", path, "--samples", "24", "--threads", "1"}, a) == 0);
    CHECK(run_cli({"certify", "--input", path, "--samples", "24", "--threads", "4"}, b) == 0);
    auto ja = nlohmann::json::parse(a), jb = nlohmann::json::parse(b);
    ja["config"].erase("threads");
    jb["config"].erase("threads");
    CHECK(ja == jb);
}

TEST_CASE("certify with a negative slack reports violations and exits 1") {
    auto path = write_temp("square3.json", kSquareJson);
    std::string out;
    int rc = run_cli({"certify", "--input", path, "--samples", "30", "--tol", "-0.5"}, out);
    CHECK(rc == 1);
    auto rep = nlohmann::json::parse(out);
    CHECK(!rep.at("pass").get<bool>());
    CHECK(!rep.at("results").at("violations").empty());
}

TEST_CASE("unknown flags are rejected with exit 2") {
    std::string out;
    CHECK(run_cli({"certify", "--input", "x.json", "--bogus"}, out) == 2);
    CHECK(run_cli({"no-such-command"}, out) == 2);
}

TEST_CASE("malformed JSON exits 2 with line/column") {
    auto path = write_temp("broken.json", "{\"dim\": 2,\n  \"halfspaces\": [}");
    std::string out;
    CHECK(run_cli({"certify", "--input", path}, out) == 2);
    CHECK(out.find("line 2") != std::string::npos);
}

TEST_CASE("degenerate geometry exits 2") {
    auto path = write_temp("unbounded.json",
                           R"({"dim": 2, "halfspaces": [{"a": [1, 0], "b": 1}, {"a": [0, 1], "b": 1}]})");
    std::string out;
    CHECK(run_cli({"certify", "--input", path}, out) == 2);
}

TEST_CASE("barrier-eval reports value, gradient, Hessian") {
    auto path = write_temp("square4.json", kSquareJson);
    std::string out;
    int rc = run_cli({"barrier-eval", "--input", path, "--point", "[0,0]", "--dirs", "4"}, out);
    CHECK(rc == 0);
    auto rep = nlohmann::json::parse(out);
    CHECK(rep.at("results").at("phi").get<double>() == doctest::Approx(std::log(2.0)));
    CHECK(rep.at("results").at("hess_positive_definite").get<bool>());
    CHECK(rep.at("results").at("hess")[0][0].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("barrier-eval exact mode") {
    auto path = write_temp("square5.json", kSquareJson);
    std::string out;
    int rc = run_cli({"barrier-eval", "--input", path, "--point", "[0,0]", "--exact",
                      "--dirs", "2"},
                     out);
    CHECK(rc == 0);
    auto rep = nlohmann::json::parse(out);
    CHECK(rep.at("config").at("exact").get<bool>());
}

TEST_CASE("moments-check sweeps sharpness") {
    std::string out;
    int rc = run_cli({"moments-check", "--kmin", "2", "--kmax", "6", "--exact"}, out);
    CHECK(rc == 0);
    auto rep = nlohmann::json::parse(out);
    CHECK(rep.at("pass").get<bool>());
    CHECK(rep.at("results").at("sharpness").size() == 5);
    for (const auto& row : rep.at("results").at("sharpness"))
        CHECK(row.at("sharp").get<bool>());
}

TEST_CASE("cascade-verify passes and dumps the transcription") {
    std::string out;
    std::string dump = "/tmp/barrierlab_test_chain_dump.json";
    int rc = run_cli({"cascade-verify", "--dump-transcription", dump}, out);
    CHECK(rc == 0);
    auto rep = nlohmann::json::parse(out);
    CHECK(rep.at("pass").get<bool>());
    CHECK(rep.at("results").at("substitution_identity").get<bool>());
    CHECK(rep.at("results").at("boundary_table").size() == 18);
    CHECK(rep.at("results").at("identities_verified").get<long>() >= 21);
    std::ifstream f(dump);
    CHECK(f.good());
    std::remove(dump.c_str());
}

TEST_CASE("implication-sample runs a seeded search") {
    std::string out;
    int rc = run_cli({"implication-sample", "--samples", "3000", "--seed", "12648430"}, out);
    CHECK(rc == 0);
    auto rep = nlohmann::json::parse(out);
    CHECK(rep.at("pass").get<bool>());
    CHECK(rep.at("results").at("counterexamples").empty());
    CHECK(rep.at("results").at("note").get<std::string>().find("not a proof") !=
          std::string::npos);
}

TEST_CASE("lp-solve emits a certified solution and a trace CSV") {
    auto path = write_temp("lp1.json", R"({
      "polytope": {"dim": 2, "halfspaces": [
        {"a": [1, 0], "b": 1}, {"a": [-1, 0], "b": 1},
        {"a": [0, 1], "b": 1}, {"a": [0, -1], "b": 1}]},
      "c": [1, 0], "eps": 1e-6})");
    std::string trace = "/tmp/barrierlab_test_trace.csv";
    std::string out;
    int rc = run_cli({"lp-solve", "--input", path, "--trace", trace}, out);
    CHECK(rc == 0);
    auto rep = nlohmann::json::parse(out);
    CHECK(rep.at("pass").get<bool>());
    CHECK(rep.at("results").at("objective").get<double>() == doctest::Approx(-1.0).epsilon(1e-4));
    std::ifstream f(trace);
    REQUIRE(f.good());
    std::string header;
    std::getline(f, header);
    CHECK(header == "step,t,newton_decrement,objective");
    std::remove(trace.c_str());
}

TEST_CASE("ell-profile command") {
    std::string out;
    int rc = run_cli({"ell-profile", "--nmax", "10", "--grid", "20000"}, out);
    CHECK(rc == 0);
    auto rep = nlohmann::json::parse(out);
    CHECK(rep.at("pass").get<bool>());
    CHECK(rep.at("results").at("profiles").size() == 10);
}

TEST_CASE("text format renders a human-readable report") {
    std::string out;
    int rc = run_cli({"ell-profile", "--nmax", "2", "--format", "text"}, out);
    CHECK(rc == 0);
    CHECK(out.find("PASS") != std::string::npos);
    CHECK(out.find("command: ell-profile") != std::string::npos);
}

TEST_CASE("output file option") {
    std::string path = "/tmp/barrierlab_test_report.json";
    std::string out;
    int rc = run_cli({"ell-profile", "--nmax", "2", "--output", path}, out);
    CHECK(rc == 0);
    std::ifstream f(path);
    REQUIRE(f.good());
    nlohmann::json rep;
    f >> rep;
    CHECK(rep.at("pass").get<bool>());
    std::remove(path.c_str());
}

TEST_CASE("vertex-only polytope JSON is accepted") {
    auto path = write_temp("verts.json",
                           R"({"dim": 2, "vertices": [[0,0],[2,0],[0,2]]})");
    std::string out;
    int rc = run_cli({"barrier-eval", "--input", path, "--dirs", "2"}, out);
    CHECK(rc == 0);
}
