// End-to-end checks of the command-line binary: byte reproducibility,
// file round trips, and exit codes.  GISOFORGE_BIN is injected by the
// build.

#include "gisoforge/formats.hpp"
#include "gisoforge/xor_csp.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using namespace gisoforge;

namespace {

std::string workdir() {
    static std::string dir = [] {
        std::string d = "/tmp/gisoforge_cli_test";
        int rc = std::system(("rm -rf " + d + " && mkdir -p " + d).c_str());
        REQUIRE(rc == 0);
        return d;
    }();
    return dir;
}

int run(const std::string &args) {
    std::string cmd = std::string(GISOFORGE_BIN) + " " + args + " > " + workdir() +
                      "/stdout.txt 2> " + workdir() + "/stderr.txt";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string captured_stdout() { return slurp(workdir() + "/stdout.txt"); }

} // namespace

TEST_CASE("gen-3xor is reproducible byte for byte") {
    std::string a = workdir() + "/a.json", b = workdir() + "/b.json";
    CHECK(run("gen-3xor --n 10 --m 20 --seed 42 --out " + a) == 0);
    CHECK(run("gen-3xor --n 10 --m 20 --seed 42 --out " + b) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(run("gen-3xor --n 10 --m 20 --seed 43 --out " + b) == 0);
    CHECK(slurp(a) != slurp(b));

    ThreeXorInstance inst = instance_from_json(slurp(a));
    CHECK(inst.n == 10);
    CHECK(inst.m() == 20);
}

TEST_CASE("missing seed is rejected") {
    CHECK(run("gen-3xor --n 10 --m 20") != 0);
}

TEST_CASE("plant then score the completeness map") {
    std::string inst = workdir() + "/p.json", tau = workdir() + "/tau.json";
    CHECK(run("plant --n 9 --m 14 --eps 0 --seed 7 --out " + inst + " --tau-out " + tau) == 0);
    CHECK(run("score --instance " + inst + " --tau " + tau) == 0);
    auto j = nlohmann::json::parse(captured_stdout());
    CHECK(j.at("gi").get<std::string>() == "1");

    CHECK(run("plant --n 9 --m 20 --eps 0.1 --seed 7 --out " + inst + " --tau-out " + tau) == 0);
    CHECK(run("score --instance " + inst + " --tau " + tau) == 0);
    auto j2 = nlohmann::json::parse(captured_stdout());
    // floor(0.1 * 20) = 2 flipped constraints, 12 edges lost each.
    long long m_edges = 18 * 20 + 9;
    CHECK(j2.at("satisfied").get<long long>() == m_edges - 24);
}

TEST_CASE("decode round trip through files") {
    std::string inst = workdir() + "/d.json", tau = workdir() + "/dtau.json";
    CHECK(run("plant --n 8 --m 12 --eps 0 --seed 3 --out " + inst + " --tau-out " + tau) == 0);
    CHECK(run("decode --instance " + inst + " --tau " + tau +
              " --eps 0.004 --beta 0.5 --gamma 0.8 --c 1.5") == 0);
    auto j = nlohmann::json::parse(captured_stdout());
    CHECK(j.at("val_tau").get<std::string>() == "1");
}

TEST_CASE("reduce writes graph6 pairs plus sidecar") {
    std::string inst = workdir() + "/r.json", prefix = workdir() + "/pair";
    CHECK(run("gen-3xor --n 3 --m 1 --seed 5 --out " + inst) == 0);
    CHECK(run("reduce --instance " + inst + " --out " + prefix) == 0);
    std::string pair_text = slurp(prefix + ".g6");
    std::istringstream lines(pair_text);
    std::string l1, l2;
    std::getline(lines, l1);
    std::getline(lines, l2);
    Graph g1 = from_graph6(l1), g2 = from_graph6(l2);
    CHECK(g1.vertex_count() == 10);
    CHECK(g1.edge_count() == 21);
    CHECK(g2.vertex_count() == 10);
    auto sidecar = nlohmann::json::parse(slurp(prefix + ".sidecar.json"));
    CHECK(sidecar.at("source").at("vertex_roles").size() == 10);

    CHECK(run("reduce --instance " + inst + " --out " + prefix + " --format dimacs") == 0);
    std::string dimacs = slurp(prefix + ".source.dimacs");
    CHECK(dimacs.rfind("p edge 10 21", 0) == 0);
}

TEST_CASE("wl subcommand on reduced pairs and controls") {
    std::string inst = workdir() + "/w.json", prefix = workdir() + "/wpair";
    CHECK(run("gen-3xor --n 10 --m 30 --seed 11 --out " + inst) == 0);
    CHECK(run("reduce --instance " + inst + " --out " + prefix) == 0);
    std::string pair_text = slurp(prefix + ".g6");
    std::istringstream lines(pair_text);
    std::string l1, l2;
    std::getline(lines, l1);
    std::getline(lines, l2);
    std::ofstream(workdir() + "/g1.g6") << l1 << "\n";
    std::ofstream(workdir() + "/g2.g6") << l2 << "\n";
    int rc = run("wl --k 1 " + workdir() + "/g1.g6 " + workdir() + "/g2.g6");
    CHECK(rc == 0);
    CHECK(captured_stdout() == "maybe\n");

    // A pair with different degree sequences exits 1.
    Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
    Graph tri(4, {{0, 1}, {1, 2}, {0, 2}});
    std::ofstream(workdir() + "/s.g6") << to_graph6(star) << "\n";
    std::ofstream(workdir() + "/t.g6") << to_graph6(tri) << "\n";
    CHECK(run("wl " + workdir() + "/s.g6 " + workdir() + "/t.g6") == 1);
    CHECK(captured_stdout() == "not_isomorphic\n");
}

TEST_CASE("asymmetry-scan emits one json line per trial plus a summary") {
    CHECK(run("asymmetry-scan --n 7 --m 10 --beta 0.5 --gamma 0.125 --trials 4 --seed 9") == 0);
    std::istringstream lines(captured_stdout());
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        ++count;
        auto j = nlohmann::json::parse(line);
        if (count <= 4) CHECK(j.contains("violation_found"));
    }
    CHECK(count == 5);
}

TEST_CASE("asymmetry-scan output is seed-deterministic") {
    std::string a = workdir() + "/scan_a.jsonl", b = workdir() + "/scan_b.jsonl";
    std::string flags = "asymmetry-scan --n 8 --m 12 --beta 0.25 --gamma 0.2 --trials 6 "
                        "--budget 10 --seed 31 --mode hill --out ";
    CHECK(run(flags + a) == 0);
    CHECK(run(flags + b) == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("sos-verify exit code reflects the report") {
    std::string inst = workdir() + "/s.json";
    CHECK(run("gen-3xor --n 6 --m 8 --seed 21 --out " + inst) == 0);
    CHECK(run("sos-verify --instance " + inst) == 0);
    auto j = nlohmann::json::parse(captured_stdout());
    CHECK(j.at("all_passed").get<bool>());
}

TEST_CASE("gen-additive and additive reduce") {
    std::string inst = workdir() + "/add.json", tau = workdir() + "/addtau.json";
    CHECK(run("gen-additive --group Z3 --n 5 --m 4 --seed 13 --plant --eps 0 --out " + inst +
              " --tau-out " + tau) == 0);
    CHECK(run("score --instance " + inst + " --tau " + tau + " --additive") == 0);
    auto j = nlohmann::json::parse(captured_stdout());
    CHECK(j.at("gi").get<std::string>() == "1");

    std::string prefix = workdir() + "/addpair";
    CHECK(run("reduce --instance " + inst + " --out " + prefix + " --additive") == 0);
    auto sidecar = nlohmann::json::parse(slurp(prefix + ".sidecar.json"));
    CHECK(sidecar.at("n1").get<long long>() == 9);
}

TEST_CASE("gen-additive accepts an explicit predicate file") {
    // The zero-sum predicate over Z2^3, written out extensionally.
    nlohmann::json pred;
    pred["k"] = 3;
    pred["moduli"] = {2};
    pred["elements"] = {std::vector<int>{0, 0, 0}, std::vector<int>{0, 1, 1},
                        std::vector<int>{1, 0, 1}, std::vector<int>{1, 1, 0}};
    std::string pred_path = workdir() + "/pred.json";
    std::ofstream(pred_path) << pred.dump();
    std::string inst = workdir() + "/predinst.json";
    CHECK(run("gen-additive --group Z2 --predicate " + pred_path +
              " --n 5 --m 3 --seed 2 --out " + inst) == 0);

    // A non-balanced predicate is rejected.
    nlohmann::json bad = pred;
    bad["elements"] = {std::vector<int>{0, 0, 0}, std::vector<int>{1, 1, 1}};
    std::ofstream(pred_path) << bad.dump();
    CHECK(run("gen-additive --group Z2 --predicate " + pred_path +
              " --n 5 --m 3 --seed 2 --out " + inst) == 2);
}

TEST_CASE("gadget-audit reports the census") {
    CHECK(run("gadget-audit --group Z4") == 0);
    auto j = nlohmann::json::parse(captured_stdout());
    CHECK(j.at("order").get<int>() == 4);
    CHECK(j.at("automorphisms").get<int>() == 4);
    CHECK(j.at("variable_actions").get<int>() == 4);
    CHECK(j.at("max_clique").get<int>() == 3);
    CHECK(j.at("every_action_is_shift").get<bool>());
}
