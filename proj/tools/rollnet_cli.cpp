// Copyright 2026 The rollnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// rollnet: build, inspect and resolve GTL instances; run fidelity sweeps,
// threshold searches and verification suites.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rollnet/errors.hpp"
#include "rollnet/experiment.hpp"
#include "rollnet/io.hpp"
#include "rollnet/verify.hpp"

using namespace rollnet;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kVerifyFailed = 2;

// Failures of a run that are not the caller's fault, e.g. a violated
// monotonicity assumption.
struct VerificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_real(const std::string &s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    std::size_t pos = 0;
    double x = 0;
    try {
        x = std::stod(s, &pos);
    } catch (const std::exception &) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw DomainError("not a number: \"" + s + "\"");
    return x;
}

std::vector<double> parse_reals(const std::vector<std::string> &v) {
    std::vector<double> out;
    for (const auto &s : v) out.push_back(parse_real(s));
    return out;
}

// Writes to `path`, or stdout when it is empty or "-".
void emit(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write " + path);
    out << text;
}

struct InstanceOptions {
    std::string gtl_file;
    std::uint32_t kappa_b_hat = 2;
    std::optional<std::uint32_t> kappa_c;
    std::uint32_t n_o = 2;

    void add_to(CLI::App *cmd) {
        cmd->add_option("--gtl", gtl_file, "GTL JSON file (overrides the parameters)");
        cmd->add_option("--kappa-b-hat", kappa_b_hat, "bridges shared by neighbouring orchestration qubits");
        cmd->add_option("--kappa-c", kappa_c, "peers per orchestration qubit (default 2*kappa_b_hat)");
        cmd->add_option("--n-o", n_o, "number of orchestration qubits");
    }

    GtlParams params() const { return {kappa_b_hat, kappa_c.value_or(2 * kappa_b_hat), n_o}; }

    GtlState load() const {
        if (!gtl_file.empty()) return io::gtl_from_json(io::load_json(gtl_file));
        return build_gtl(params());
    }
};

int run_build(const InstanceOptions &inst, const std::string &out) {
    emit(out, io::dump(io::to_json(build_gtl(inst.params()))));
    return kOk;
}

int run_inspect(const InstanceOptions &inst, const std::vector<std::uint32_t> &pair) {
    json j;
    GtlState s;
    if (!inst.gtl_file.empty()) {
        auto doc = io::gtl_document_from_json(io::load_json(inst.gtl_file));
        auto rep = io::validate(doc);
        j["validation"] = io::to_json(rep);
        if (!rep.ok()) {
            std::cout << io::dump(j);
            std::cerr << describe(rep);
            return kVerifyFailed;
        }
        s = io::gtl_from_json(io::load_json(inst.gtl_file));
    } else {
        s = build_gtl(inst.params());
        j["validation"] = io::to_json(validate_gtl(s.graph, s.orch, s.peers, s.params.kappa_b_hat));
    }
    j["params"] = {{"kappa_b_hat", s.params.kappa_b_hat}, {"kappa_c", s.params.kappa_c}, {"n_o", s.params.n_o}};
    j["qubits"] = s.graph.num_vertices();
    j["peers"] = s.peers.size();
    j["edges"] = s.graph.num_edges();
    j["specialized"] = s.params.specialized();
    j["gf2_rank"] = gf2_rank(s.graph);
    j["schmidt_upper_bound"] = schmidt_upper_bound(s.graph);
    json orch = json::array();
    for (auto o : s.orch) {
        auto p = structure_profile(s, o);
        auto nb = bridge_neighborhoods(s, o);
        std::vector<std::uint32_t> left, right;
        for (auto v : nb.left) left.push_back(index(v));
        for (auto v : nb.right) right.push_back(index(v));
        orch.push_back({{"id", index(o)},
                        {"peer_degree", p.peer_degree},
                        {"bridge_degree", p.bridge_degree},
                        {"left_bridges", left},
                        {"right_bridges", right}});
    }
    j["orchestration"] = std::move(orch);
    json peers = json::array();
    for (auto c : s.peers) {
        auto p = structure_profile(s, c);
        peers.push_back({{"id", index(c)}, {"bridge_rank", p.bridge_rank}, {"bridge", p.is_bridge}});
    }
    j["peer_profiles"] = std::move(peers);
    if (!pair.empty()) {
        if (pair.size() != 2) throw DomainError("--proximity takes two peer ids");
        auto u = vertex(pair[0]), v = vertex(pair[1]);
        if (!s.peers.contains(u) || !s.peers.contains(v)) throw DomainError("--proximity needs two peers");
        j["proximity"] = {{"peers", pair},
                          {"peer_proximity", peer_proximity(s, u, v)},
                          {"orchestration_proximity", orchestration_proximity(s.graph, s.orch_set(), u, v)},
                          {"plan", io::to_json(plan_proximity_reduction(s, u, v))}};
    }
    std::cout << io::dump(j);
    return kOk;
}

struct ResolveOptions {
    std::string target = "bell";
    std::string policy = "carried";
    std::string plan_file;
    std::optional<std::string> stop_stage;
    bool reverse = false;
    std::optional<std::uint64_t> seed;
    std::optional<double> p;
    std::optional<std::string> T;
    double t_ms = 1.0;
    bool crosscheck = false;
    std::string output;
};

int run_resolve(const InstanceOptions &inst, const ResolveOptions &o) {
    auto s = inst.load();
    auto policy = parse_support_policy(o.policy);
    auto outcomes = o.seed ? OutcomePolicy::seeded(*o.seed) : OutcomePolicy::forced_plus();
    json j;
    RollingOutcome out;
    std::optional<ResolutionPlan> plan;
    if (!o.plan_file.empty()) {
        plan = io::plan_from_json(io::load_json(o.plan_file));
    } else if (o.target == "bell") {
        plan = plan_max_bell(s, policy, o.reverse);
    } else if (o.target == "ghz") {
        plan = plan_ghz(s, policy, o.reverse);
    } else if (o.target == "rolling") {
        plan = plan_rolling(s, policy, o.reverse);
    } else if (o.target == "centralized-y" || o.target == "centralized-z") {
        if (o.p || o.T || o.crosscheck) throw DomainError("noise options apply to rolling plans only");
        out = centralized_resolution(s, o.target == "centralized-y" ? Basis::Y : Basis::Z);
    } else {
        throw DomainError("unknown target \"" + o.target + "\"");
    }
    if (plan) {
        if (o.stop_stage) {
            plan->stop_stage = parse_stop_stage(*o.stop_stage);
            if (plan->stop_stage == StopStage::AfterRolling) plan->isolation.clear();
        }
        out = execute_plan(s, *plan, outcomes);
        j["plan"] = io::to_json(*plan);
    }
    j["outcome"] = io::outcome_report(out);
    if (plan && (o.p || o.T)) {
        double p = o.p.value_or(1.0);
        double T = o.T ? parse_real(*o.T) : std::numeric_limits<double>::infinity();
        auto ns = propagate(initial_noise(s.graph, p, o.t_ms, T), *plan);
        j["noise"] = {{"p", p}, {"T_ms", io::real_to_json(T)}, {"t_ms", o.t_ms}};
        j["fidelity"] = io::fidelity_report(ns);
        if (o.crosscheck) {
            auto rep = crosscheck(s, *plan, {p, T, o.t_ms});
            j["crosscheck"] = io::to_json(rep);
            emit(o.output, io::dump(j));
            return rep.pass ? kOk : kVerifyFailed;
        }
    } else if (o.crosscheck) {
        throw DomainError("--crosscheck needs --p and/or --T");
    }
    emit(o.output, io::dump(j));
    return kOk;
}

struct ExperimentOptions {
    std::string config_file;
    std::optional<std::uint32_t> kappa_b_hat, n_o;
    std::optional<std::string> target, policy, plan, output;
    std::vector<std::string> p_grid, T_grid;
    std::optional<double> protocol_time, level;
    std::optional<std::uint64_t> seed;

    void add_to(CLI::App *cmd) {
        cmd->add_option("-c,--config", config_file, "experiment config JSON");
        cmd->add_option("--kappa-b-hat", kappa_b_hat);
        cmd->add_option("--n-o", n_o);
        cmd->add_option("--target", target, "bell or ghz");
        cmd->add_option("--policy", policy, "last-step support: carried or forward");
        cmd->add_option("--plan", plan, "\"default\" or a plan JSON file");
        cmd->add_option("--p-grid", p_grid, "comma-separated p values")->delimiter(',');
        cmd->add_option("--T-grid", T_grid, "comma-separated T values in ms (\"inf\" allowed)")->delimiter(',');
        cmd->add_option("--protocol-time", protocol_time, "dephasing time in ms");
        cmd->add_option("--seed", seed);
        cmd->add_option("-o,--output", output, "output file (default stdout)");
    }

    ExperimentConfig resolve() const {
        ExperimentConfig c;
        if (!config_file.empty()) c = config_from_json(io::load_json(config_file));
        if (kappa_b_hat) c.kappa_b_hat = *kappa_b_hat;
        if (n_o) c.n_o = *n_o;
        if (target) c.target = parse_resource_target(*target);
        if (policy) c.policy = parse_support_policy(*policy);
        if (plan) c.plan_file = *plan == "default" ? std::nullopt : std::optional(*plan);
        if (!p_grid.empty()) c.p_grid = parse_reals(p_grid);
        if (!T_grid.empty()) c.T_grid_ms = parse_reals(T_grid);
        if (protocol_time) c.protocol_time_ms = *protocol_time;
        if (level) c.level = *level;
        if (seed) c.seed = *seed;
        if (output) c.output = *output;
        c.validate();
        return c;
    }
};

int run_sweep_cmd(const ExperimentOptions &eo) {
    auto c = eo.resolve();
    std::ostringstream os;
    write_sweep_csv(os, run_sweep(c));
    emit(c.output, os.str());
    return kOk;
}

int run_threshold_cmd(const ExperimentOptions &eo) {
    auto c = eo.resolve();
    ThresholdResult res;
    try {
        res = find_threshold(c);
    } catch (const InternalError &e) {
        throw VerificationFailure(e.what());
    }
    for (const auto &d : res.diagnostics) std::cerr << "omitted: " << d << "\n";
    std::ostringstream os;
    write_threshold(os, res.rows);
    emit(c.output, os.str());
    return kOk;
}

int run_verify_cmd(const std::string &scope, const VerifyBounds &bounds, const std::string &gtl_file,
                   const std::string &output) {
    std::optional<io::GtlDocument> doc;
    if (!gtl_file.empty()) doc = io::gtl_document_from_json(io::load_json(gtl_file));
    auto rep = verify(parse_verify_scope(scope), bounds, doc);
    for (const auto &c : rep.checks) {
        std::cerr << (c.pass ? "PASS " : "FAIL ") << c.suite << ": " << c.name;
        if (!c.detail.empty()) std::cerr << " (" << c.detail << ")";
        std::cerr << "\n";
    }
    emit(output, io::dump(to_json(rep)));
    return rep.ok() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"GTL entanglement resolution: structure, rolling plans, noise propagation and sweeps"};
    app.require_subcommand(1);

    auto *build = app.add_subcommand("build", "write a GTL instance as JSON");
    InstanceOptions build_inst;
    std::string build_out;
    build->add_option("--kappa-b-hat", build_inst.kappa_b_hat)->required();
    build->add_option("--kappa-c", build_inst.kappa_c, "default 2*kappa_b_hat");
    build->add_option("--n-o", build_inst.n_o)->required();
    build->add_option("-o,--output", build_out);

    auto *inspect = app.add_subcommand("inspect", "validate an instance and report its structure");
    InstanceOptions inspect_inst;
    inspect_inst.add_to(inspect);
    std::vector<std::uint32_t> pair;
    inspect->add_option("--proximity", pair, "two peer ids")->expected(2);

    auto *resolve = app.add_subcommand("resolve", "execute a resolution plan");
    InstanceOptions resolve_inst;
    resolve_inst.add_to(resolve);
    ResolveOptions ro;
    resolve->add_option("--target", ro.target, "bell, ghz, rolling, centralized-y or centralized-z");
    resolve->add_option("--policy", ro.policy, "last-step support: carried or forward");
    resolve->add_option("--plan", ro.plan_file, "explicit plan JSON");
    resolve->add_option("--stop-stage", ro.stop_stage, "after_rolling or after_isolation");
    resolve->add_flag("--reverse", ro.reverse, "roll from the last orchestration qubit");
    resolve->add_option("--seed", ro.seed, "draw outcomes at random (default: all +)");
    resolve->add_option("--p", ro.p, "depolarizing parameter");
    resolve->add_option("--T", ro.T, "dephasing time constant in ms (\"inf\" allowed)");
    resolve->add_option("--t", ro.t_ms, "protocol time in ms");
    resolve->add_flag("--crosscheck", ro.crosscheck, "compare against the dense simulator");
    resolve->add_option("-o,--output", ro.output);

    auto *sweep = app.add_subcommand("sweep", "fidelity of every extracted resource over a (p, T) grid");
    ExperimentOptions sweep_opts;
    sweep_opts.add_to(sweep);

    auto *threshold = app.add_subcommand("threshold", "smallest T reaching a fidelity level, per p");
    ExperimentOptions thr_opts;
    thr_opts.add_to(threshold);
    threshold->add_option("--level", thr_opts.level, "fidelity level (default 0.5)");

    auto *verify_cmd = app.add_subcommand("verify", "run the property suites");
    std::string scope = "all", verify_gtl, verify_out;
    VerifyBounds bounds;
    verify_cmd->add_option("--scope", scope, "structure, rolling, nsf or all");
    verify_cmd->add_option("--max-kappa-b-hat", bounds.max_kappa_b_hat);
    verify_cmd->add_option("--max-n-o", bounds.max_n_o);
    verify_cmd->add_option("--max-qubits", bounds.max_qubits, "largest instance for the dense crosscheck");
    verify_cmd->add_option("--gtl", verify_gtl, "check this instance instead of the generated family");
    verify_cmd->add_option("-o,--output", verify_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        if (*build) return run_build(build_inst, build_out);
        if (*inspect) return run_inspect(inspect_inst, pair);
        if (*resolve) return run_resolve(resolve_inst, ro);
        if (*sweep) return run_sweep_cmd(sweep_opts);
        if (*threshold) return run_threshold_cmd(thr_opts);
        if (*verify_cmd) return run_verify_cmd(scope, bounds, verify_gtl, verify_out);
    } catch (const DomainError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const VerificationFailure &e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kVerifyFailed;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kVerifyFailed;
    }
    return kConfigError;
}
