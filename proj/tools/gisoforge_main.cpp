// Command-line surface: instance generation, reduction to graph pairs,
// scoring, decoding, asymmetry scans, axiom verification, and the WL
// baseline.  Every randomized command takes an explicit --seed and writes
// byte-identical output for identical flags.

#include "gisoforge/abelian.hpp"
#include "gisoforge/asymmetry.hpp"
#include "gisoforge/formats.hpp"
#include "gisoforge/guards.hpp"
#include "gisoforge/iso_search.hpp"
#include "gisoforge/reduction.hpp"
#include "gisoforge/sos.hpp"
#include "gisoforge/wl.hpp"
#include "gisoforge/xor_csp.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace gisoforge;

namespace {

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

void spit(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

void emit(const std::string &out_path, const std::string &content) {
    if (out_path.empty())
        std::cout << content;
    else
        spit(out_path, content);
}

VertexMap map_from_json(const std::string &text) {
    auto j = nlohmann::json::parse(text);
    return VertexMap(j.at("forward").get<std::vector<int>>());
}

GroupAssignment group_assignment_from_json(const std::string &text) {
    auto j = nlohmann::json::parse(text);
    GroupAssignment tau;
    tau.values = j.at("values").get<std::vector<AbelianGroup::Elem>>();
    return tau;
}

std::string group_assignment_to_json(const GroupAssignment &tau) {
    nlohmann::json j;
    j["values"] = tau.values;
    return j.dump();
}

// Builds the bijection to score or decode: either an explicit map file or
// the completeness map of a supplied assignment.
VertexMap resolve_map_3xor(const ThreeXorInstance &inst, const std::string &map_path,
                           const std::string &tau_path) {
    if (!map_path.empty()) return map_from_json(slurp(map_path));
    if (!tau_path.empty())
        return completeness_map(inst, assignment_from_json(slurp(tau_path)));
    throw std::invalid_argument("--map or --tau is required");
}

VertexMap resolve_map_additive(const AdditiveCspInstance &inst, const std::string &map_path,
                               const std::string &tau_path) {
    if (!map_path.empty()) return map_from_json(slurp(map_path));
    if (!tau_path.empty())
        return additive_completeness_map(inst, group_assignment_from_json(slurp(tau_path)));
    throw std::invalid_argument("--map or --tau is required");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"hard graph-isomorphism instance generator and verifier"};
    app.require_subcommand(1);

    int n = 0;
    long long m = 0;
    std::uint64_t seed = 0;
    std::string out_path, out2_path;
    bool distinct_triples = false;
    auto *gen3 = app.add_subcommand("gen-3xor", "sample a random 3XOR instance");
    gen3->add_option("--n", n, "variable count")->required();
    gen3->add_option("--m", m, "constraint count")->required();
    gen3->add_option("--seed", seed, "RNG seed")->required();
    gen3->add_flag("--distinct-triples", distinct_triples, "sample without replacement");
    gen3->add_option("--out", out_path, "output file (stdout otherwise)");

    std::string eps_text = "0";
    auto *plant_cmd = app.add_subcommand("plant", "sample a 3XOR instance with a planted assignment");
    plant_cmd->add_option("--n", n, "variable count")->required();
    plant_cmd->add_option("--m", m, "constraint count")->required();
    plant_cmd->add_option("--eps", eps_text, "noise fraction, exact decimal or a/b")->required();
    plant_cmd->add_option("--seed", seed, "RNG seed")->required();
    plant_cmd->add_option("--out", out_path, "instance output file");
    plant_cmd->add_option("--tau-out", out2_path, "assignment output file");

    std::string group_spec = "Z2";
    std::string predicate_path;
    int arity = 3;
    bool do_plant = false;
    auto *gena = app.add_subcommand("gen-additive", "sample an additive CSP instance");
    gena->add_option("--group", group_spec, "abelian group, e.g. Z3 or Z3xZ5")->required();
    gena->add_option("--k", arity, "constraint arity (default 3)");
    gena->add_option("--predicate", predicate_path, "predicate JSON (default: zero-sum)");
    gena->add_option("--n", n, "variable count")->required();
    gena->add_option("--m", m, "constraint count")->required();
    gena->add_option("--seed", seed, "RNG seed")->required();
    gena->add_flag("--plant", do_plant, "plant an assignment");
    gena->add_option("--eps", eps_text, "noise fraction when planting");
    gena->add_option("--out", out_path, "instance output file");
    gena->add_option("--tau-out", out2_path, "assignment output file when planting");

    std::string instance_path, format = "graph6", prefix;
    bool additive = false;
    auto *reduce_cmd = app.add_subcommand("reduce", "encode an instance as a graph pair");
    reduce_cmd->add_option("--instance", instance_path, "instance JSON")->required();
    reduce_cmd->add_option("--out", prefix, "output prefix")->required();
    reduce_cmd->add_option("--format", format, "graph6 | dimacs")
        ->check(CLI::IsMember({"graph6", "dimacs"}));
    reduce_cmd->add_flag("--additive", additive, "instance is an additive CSP");

    std::string map_path, tau_path;
    auto *score_cmd = app.add_subcommand("score", "score a bijection on the reduced pair");
    score_cmd->add_option("--instance", instance_path)->required();
    score_cmd->add_option("--map", map_path, "bijection JSON {\"forward\": [...]}");
    score_cmd->add_option("--tau", tau_path, "assignment JSON; scores its completeness map");
    score_cmd->add_flag("--additive", additive);
    score_cmd->add_option("--out", out_path);

    std::string beta_text = "1/2", gamma_text = "1/4", c_text = "4";
    auto *decode_cmd = app.add_subcommand("decode", "run the soundness decoder on a bijection");
    decode_cmd->add_option("--instance", instance_path)->required();
    decode_cmd->add_option("--map", map_path);
    decode_cmd->add_option("--tau", tau_path);
    decode_cmd->add_option("--eps", eps_text)->required();
    decode_cmd->add_option("--beta", beta_text)->required();
    decode_cmd->add_option("--gamma", gamma_text)->required();
    decode_cmd->add_option("--c", c_text)->required();
    decode_cmd->add_flag("--additive", additive);
    decode_cmd->add_option("--out", out_path);

    std::string mode_text = "auto";
    int trials = 10, budget = 20;
    auto *scan = app.add_subcommand("asymmetry-scan",
                                    "Monte Carlo falsifier for (beta,gamma)-asymmetry");
    scan->add_option("--n", n)->required();
    scan->add_option("--m", m)->required();
    scan->add_option("--beta", beta_text)->required();
    scan->add_option("--gamma", gamma_text)->required();
    scan->add_option("--trials", trials)->required();
    scan->add_option("--budget", budget, "hill-climb restarts per trial");
    scan->add_option("--seed", seed)->required();
    scan->add_option("--mode", mode_text, "auto | hill | brute")
        ->check(CLI::IsMember({"auto", "hill", "brute"}));
    scan->add_option("--out", out_path, "JSON-lines output file");

    auto *sos_cmd = app.add_subcommand("sos-verify", "verify the axiom substitution identities");
    sos_cmd->add_option("--instance", instance_path)->required();
    sos_cmd->add_option("--out", out_path);

    int wl_k = 1;
    std::string g1_path, g2_path;
    auto *wl_cmd = app.add_subcommand("wl", "Weisfeiler-Lehman comparison of two graph6 files");
    wl_cmd->add_option("--k", wl_k, "refinement dimension, 1 or 2")
        ->check(CLI::IsMember({1, 2}));
    wl_cmd->add_option("graph1", g1_path, "first graph6 file")->required();
    wl_cmd->add_option("graph2", g2_path, "second graph6 file")->required();

    auto *audit = app.add_subcommand("gadget-audit", "variable-gadget structure report");
    audit->add_option("--group", group_spec)->required();
    audit->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen3->parsed()) {
            ThreeXorInstance inst = sample_random_3xor(
                n, m, seed,
                distinct_triples ? TripleSampling::without_replacement
                                 : TripleSampling::with_replacement);
            emit(out_path, instance_to_json(inst) + "\n");
        } else if (plant_cmd->parsed()) {
            PlantedInstance p = plant(n, m, parse_rational(eps_text), seed);
            emit(out_path, instance_to_json(p.instance) + "\n");
            if (!out2_path.empty()) spit(out2_path, assignment_to_json(p.tau) + "\n");
        } else if (gena->parsed()) {
            AbelianGroup group = AbelianGroup::parse(group_spec);
            SubgroupPredicate psi = predicate_path.empty()
                                        ? xor_predicate(group, arity)
                                        : predicate_from_json(slurp(predicate_path));
            PredicateCheck check = check_pairwise_independent_subgroup(psi);
            if (!check.ok)
                throw std::invalid_argument("predicate rejected: " + check.failure);
            if (do_plant) {
                PlantedAdditive p =
                    plant_additive(group, psi, n, m, parse_rational(eps_text), seed);
                emit(out_path, additive_instance_to_json(p.instance) + "\n");
                if (!out2_path.empty()) spit(out2_path, group_assignment_to_json(p.tau) + "\n");
            } else {
                AdditiveCspInstance inst = sample_random_additive(group, psi, n, m, seed);
                emit(out_path, additive_instance_to_json(inst) + "\n");
            }
        } else if (reduce_cmd->parsed()) {
            Graph source(0, {}), homogeneous(0, {});
            std::string sidecar;
            if (additive) {
                AdditiveCspInstance inst = additive_instance_from_json(slurp(instance_path));
                AdditiveReducedPair pair = reduce_additive(inst);
                source = pair.source.graph();
                homogeneous = pair.homogeneous.graph();
                nlohmann::json j;
                j["n1"] = pair.source.n1();
                j["n2"] = pair.source.n2();
                j["m1"] = pair.source.m1();
                j["m2"] = pair.source.m2();
                sidecar = j.dump();
            } else {
                ThreeXorInstance inst = instance_from_json(slurp(instance_path));
                ReducedPair pair = reduce(inst);
                source = pair.source.graph();
                homogeneous = pair.homogeneous.graph();
                sidecar = pair_sidecar_json(pair);
            }
            if (format == "graph6") {
                spit(prefix + ".g6", to_graph6(source) + "\n" + to_graph6(homogeneous) + "\n");
            } else {
                spit(prefix + ".source.dimacs", to_dimacs(source));
                spit(prefix + ".homogeneous.dimacs", to_dimacs(homogeneous));
            }
            spit(prefix + ".sidecar.json", sidecar + "\n");
        } else if (score_cmd->parsed()) {
            nlohmann::json j;
            Score s;
            if (additive) {
                AdditiveCspInstance inst = additive_instance_from_json(slurp(instance_path));
                AdditiveReducedPair pair = reduce_additive(inst);
                VertexMap pi = resolve_map_additive(inst, map_path, tau_path);
                s = gi_score(pair.source.graph(), pair.homogeneous.graph(), pi);
            } else {
                ThreeXorInstance inst = instance_from_json(slurp(instance_path));
                ReducedPair pair = reduce(inst);
                VertexMap pi = resolve_map_3xor(inst, map_path, tau_path);
                s = gi_score(pair.source.graph(), pair.homogeneous.graph(), pi);
            }
            j["gi"] = to_string(s.ratio);
            j["gi_approx"] = s.ratio.get_d();
            j["satisfied"] = s.satisfied;
            j["edges"] = s.denominator;
            emit(out_path, j.dump() + "\n");
        } else if (decode_cmd->parsed()) {
            Rational eps = parse_rational(eps_text), beta = parse_rational(beta_text);
            Rational gamma = parse_rational(gamma_text), c = parse_rational(c_text);
            std::string report;
            if (additive) {
                AdditiveCspInstance inst = additive_instance_from_json(slurp(instance_path));
                AdditiveReducedPair pair = reduce_additive(inst);
                VertexMap pi = resolve_map_additive(inst, map_path, tau_path);
                report = additive_decode(pair, pi, {eps, beta, gamma, c}).to_json();
            } else {
                ThreeXorInstance inst = instance_from_json(slurp(instance_path));
                ReducedPair pair = reduce(inst);
                VertexMap pi = resolve_map_3xor(inst, map_path, tau_path);
                report = decode(pair, pi, {eps, beta, gamma, c}).to_json();
            }
            emit(out_path, report + "\n");
        } else if (scan->parsed()) {
            FalsifierMode mode = mode_text == "hill"    ? FalsifierMode::hill_climb
                                 : mode_text == "brute" ? FalsifierMode::brute_force
                                                        : FalsifierMode::automatic;
            MonteCarloReport report =
                monte_carlo_asymmetry(n, m, parse_rational(beta_text),
                                      parse_rational(gamma_text), trials, budget, seed, mode);
            std::string lines;
            for (const auto &rec : report.records) lines += rec.to_json() + "\n";
            lines += report.to_json() + "\n";
            emit(out_path, lines);
        } else if (sos_cmd->parsed()) {
            ThreeXorInstance inst = instance_from_json(slurp(instance_path));
            SosReport report = verify_sos_reduction(inst);
            emit(out_path, report.to_json() + "\n");
            return report.all_passed ? 0 : 1;
        } else if (wl_cmd->parsed()) {
            Graph g = from_graph6(slurp(g1_path));
            Graph h = from_graph6(slurp(g2_path));
            WlVerdict verdict = wl_distinguish(g, h, wl_k);
            std::cout << (verdict == WlVerdict::maybe ? "maybe" : "not_isomorphic") << "\n";
            return verdict == WlVerdict::maybe ? 0 : 1;
        } else if (audit->parsed()) {
            AbelianGroup group = AbelianGroup::parse(group_spec);
            VariableGadget gadget = variable_gadget(group);
            nlohmann::json j;
            j["group"] = group.to_string();
            j["order"] = group.order();
            j["vertices"] = gadget.graph.vertex_count();
            j["auxiliary"] = gadget.auxiliary_count();
            j["edges"] = gadget.graph.edge_count();
            j["max_clique"] = max_clique_size(gadget.graph);
            try {
                AutomorphismCensus census = enumerate_gadget_automorphisms(gadget);
                j["automorphisms"] = census.all.size();
                j["variable_actions"] = census.variable_actions.size();
                j["every_action_is_shift"] = census.every_action_is_shift;
            } catch (const GuardError &) {
                j["automorphisms"] = nullptr; // beyond the enumeration guard
            }
            emit(out_path, j.dump() + "\n");
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
