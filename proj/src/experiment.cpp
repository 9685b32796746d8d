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


#include "rollnet/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <ostream>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "rollnet/errors.hpp"
#include "rollnet/io.hpp"

namespace rollnet {

using nlohmann::json;

namespace {

std::vector<double> grid_from_json(const json &j, const std::string &what) {
    std::vector<double> out;
    if (j.is_array()) {
        for (const auto &x : j) out.push_back(io::real_from_json(x, what));
        return out;
    }
    if (j.is_object()) {
        for (const auto &[k, v] : j.items()) {
            if (k != "from" && k != "to" && k != "step") throw DomainError(what + ": unknown key \"" + k + "\"");
        }
        if (!j.contains("from") || !j.contains("to") || !j.contains("step")) {
            throw DomainError(what + ": a range needs \"from\", \"to\" and \"step\"");
        }
        double from = io::real_from_json(j.at("from"), what), to = io::real_from_json(j.at("to"), what);
        double step = io::real_from_json(j.at("step"), what);
        if (!(step > 0) || !std::isfinite(from) || !std::isfinite(to) || to < from) {
            throw DomainError(what + ": bad range");
        }
        auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i) {
            // Round away the drift of repeated addition so 0.7 + 6*0.05 prints as 1.
            double x = from + static_cast<double>(i) * step;
            out.push_back(std::round(x * 1e12) / 1e12);
        }
        return out;
    }
    throw DomainError(what + ": expected a list or a {from, to, step} range");
}

json grid_to_json(const std::vector<double> &g) {
    json out = json::array();
    for (auto x : g) out.push_back(io::real_to_json(x));
    return out;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (kappa_b_hat == 0 || n_o == 0) throw DomainError("kappa_b_hat and n_o must be positive");
    if (target == ResourceTarget::Bell && kappa_b_hat < 2) {
        throw DomainError("Bell-pair extraction needs kappa_b_hat >= 2");
    }
    if (p_grid.empty()) throw DomainError("p_grid is empty");
    if (T_grid_ms.empty()) throw DomainError("T_grid_ms is empty");
    for (auto p : p_grid) {
        if (!(p >= 0 && p <= 1)) throw DomainError(fmt::format("p = {} is outside [0, 1]", p));
    }
    for (auto T : T_grid_ms) {
        if (!(T > 0)) throw DomainError(fmt::format("T = {} ms is not positive", T));
    }
    if (!(protocol_time_ms >= 0) || !std::isfinite(protocol_time_ms)) {
        throw DomainError("protocol_time_ms must be a finite non-negative number");
    }
    if (!(level > 0 && level <= 1)) throw DomainError("level must lie in (0, 1]");
    for (auto [q, t] : qubit_time_ms) {
        if (!(t >= 0) || !std::isfinite(t)) throw DomainError(fmt::format("qubit {}: bad dephasing time {}", q, t));
    }
}

ExperimentConfig config_from_json(const json &j) {
    if (!j.is_object()) throw DomainError("config: expected a JSON object");
    static const std::set<std::string> known{"kappa_b_hat", "n_o",  "target", "p_grid", "T_grid_ms", "protocol_time_ms",
                                             "plan",        "policy", "seed", "output", "level", "qubit_time_ms"};
    for (const auto &[k, v] : j.items()) {
        if (!known.contains(k)) throw DomainError("config: unknown key \"" + k + "\"");
    }
    ExperimentConfig c;
    try {
        if (j.contains("kappa_b_hat")) c.kappa_b_hat = j.at("kappa_b_hat").get<std::uint32_t>();
        if (j.contains("n_o")) c.n_o = j.at("n_o").get<std::uint32_t>();
        if (j.contains("target")) c.target = parse_resource_target(j.at("target").get<std::string>());
        if (j.contains("p_grid")) c.p_grid = grid_from_json(j.at("p_grid"), "p_grid");
        if (j.contains("T_grid_ms")) c.T_grid_ms = grid_from_json(j.at("T_grid_ms"), "T_grid_ms");
        if (j.contains("protocol_time_ms")) {
            c.protocol_time_ms = io::real_from_json(j.at("protocol_time_ms"), "protocol_time_ms");
        }
        if (j.contains("qubit_time_ms")) {
            for (const auto &[k, t] : j.at("qubit_time_ms").items()) {
                std::size_t pos = 0;
                unsigned long q = 0;
                try {
                    q = std::stoul(k, &pos);
                } catch (const std::exception &) {
                    pos = 0;
                }
                if (pos == 0 || pos != k.size()) throw DomainError("qubit_time_ms: bad qubit id \"" + k + "\"");
                c.qubit_time_ms[static_cast<std::uint32_t>(q)] = io::real_from_json(t, "qubit_time_ms");
            }
        }
        if (j.contains("plan")) {
            auto p = j.at("plan").get<std::string>();
            if (p != "default") c.plan_file = p;
        }
        if (j.contains("policy")) c.policy = parse_support_policy(j.at("policy").get<std::string>());
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("output")) c.output = j.at("output").get<std::string>();
        if (j.contains("level")) c.level = j.at("level").get<double>();
    } catch (const json::exception &e) {
        throw DomainError(std::string("config: ") + e.what());
    }
    return c;
}

json to_json(const ExperimentConfig &c) {
    json per_qubit = json::object();
    for (auto [q, t] : c.qubit_time_ms) per_qubit[std::to_string(q)] = t;
    return {{"kappa_b_hat", c.kappa_b_hat},
            {"n_o", c.n_o},
            {"target", to_string(c.target)},
            {"p_grid", grid_to_json(c.p_grid)},
            {"T_grid_ms", grid_to_json(c.T_grid_ms)},
            {"protocol_time_ms", c.protocol_time_ms},
            {"qubit_time_ms", per_qubit},
            {"plan", c.plan_file.value_or("default")},
            {"policy", to_string(c.policy)},
            {"seed", c.seed},
            {"output", c.output},
            {"level", c.level}};
}

Pipeline make_pipeline(const ExperimentConfig &c) {
    c.validate();
    Pipeline pl;
    pl.state = build_gtl({c.kappa_b_hat, 2 * c.kappa_b_hat, c.n_o});
    pl.protocol_time_ms = c.protocol_time_ms;
    pl.qubit_time_ms = c.qubit_time_ms;
    for (auto [q, t] : c.qubit_time_ms) {
        if (!pl.state.graph.is_live(vertex(q))) throw DomainError(fmt::format("qubit_time_ms: no qubit {}", q));
    }
    if (c.plan_file) {
        pl.plan = io::plan_from_json(io::load_json(*c.plan_file));
        execute_plan(pl.state, pl.plan);  // rejects steps that do not fit
    } else {
        pl.plan = c.target == ResourceTarget::Bell ? plan_max_bell(pl.state, c.policy) : plan_ghz(pl.state, c.policy);
    }
    return pl;
}

NoiseState Pipeline::initial(double p, double T_ms) const {
    if (qubit_time_ms.empty()) return initial_noise(state.graph, p, protocol_time_ms, T_ms);
    NoiseState ns{state.graph, {}};
    for (auto q : state.graph.live()) {
        auto it = qubit_time_ms.find(index(q));
        auto t = it == qubit_time_ms.end() ? protocol_time_ms : it->second;
        auto part = initial_noise(state.graph, p, t, T_ms, {q});
        for (auto &m : part.maps) ns.maps.push_back(std::move(m));
    }
    return ns;
}

std::vector<ResourceFidelity> evaluate(const Pipeline &pl, double p, double T_ms) {
    auto ns = propagate(pl.initial(p, T_ms), pl.plan);
    std::vector<ResourceFidelity> out;
    for (const auto &comp : ns.graph.components()) {
        if (comp.size() < 2) continue;
        out.push_back({comp, std::clamp(fidelity(ns, comp), 0.0, 1.0)});
    }
    return out;
}

double worst_fidelity(const Pipeline &pl, double p, double T_ms) {
    auto r = evaluate(pl, p, T_ms);
    if (r.empty()) throw DomainError("the plan extracts no multi-qubit resource");
    double w = 1.0;
    for (const auto &x : r) w = std::min(w, x.fidelity);
    return w;
}

bool is_boundary_resource(const GtlState &state, const VertexSet &resource) {
    for (const auto &l : state.leaves) {
        if (resource.intersects(l)) return true;
    }
    return false;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig &c) {
    auto pl = make_pipeline(c);
    const auto nT = c.T_grid_ms.size();
    std::vector<std::vector<ResourceFidelity>> results(c.p_grid.size() * nT);
    parallel_for(results.size(), [&](std::size_t i) { results[i] = evaluate(pl, c.p_grid[i / nT], c.T_grid_ms[i % nT]); });
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < results.size(); ++i) {
        for (const auto &r : results[i]) {
            rows.push_back({c.p_grid[i / nT], c.T_grid_ms[i % nT], io::resource_id(r.resource), r.fidelity});
        }
    }
    return rows;
}

void write_sweep_csv(std::ostream &os, const std::vector<SweepRow> &rows) {
    os << "p,T_ms,resource_id,fidelity\n";
    for (const auto &r : rows) os << fmt::format("{},{},{},{}\n", r.p, r.T_ms, r.resource_id, r.fidelity);
}

ThresholdResult find_threshold(const ExperimentConfig &c) {
    auto pl = make_pipeline(c);
    std::vector<double> ts = c.T_grid_ms;
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::vector<double> finite;
    for (auto t : ts) {
        if (std::isfinite(t)) finite.push_back(t);
    }
    if (finite.size() < 2) throw DomainError("threshold search needs at least two finite T values");
    const double lo_T = finite.front(), hi_T = finite.back();

    struct PerP {
        std::optional<double> T;
        std::string note;
    };
    std::vector<PerP> found(c.p_grid.size());
    parallel_for(c.p_grid.size(), [&](std::size_t i) {
        const double p = c.p_grid[i];
        double prev = -1;
        for (auto t : ts) {
            double f = worst_fidelity(pl, p, t);
            if (f < prev - 1e-12) {
                throw InternalError(fmt::format("worst fidelity decreases with T at p={} (T={} ms)", p, t));
            }
            prev = f;
        }
        double f_lo = worst_fidelity(pl, p, lo_T), f_hi = worst_fidelity(pl, p, hi_T);
        if (f_hi < c.level) {
            found[i].note = fmt::format("p={}: level {} not reached for T <= {} ms (F={})", p, c.level, hi_T, f_hi);
            return;
        }
        if (f_lo >= c.level) {
            found[i].note = fmt::format("p={}: level {} already exceeded at T = {} ms (F={})", p, c.level, lo_T, f_lo);
            return;
        }
        // Geometric bisection; keep F(lo) < level <= F(hi).
        double lo = lo_T, hi = hi_T;
        for (int it = 0; it < 200 && hi / lo - 1 > 1e-13; ++it) {
            double mid = std::sqrt(lo * hi);
            if (mid <= lo || mid >= hi) break;
            (worst_fidelity(pl, p, mid) >= c.level ? hi : lo) = mid;
        }
        found[i].T = hi;
    });
    ThresholdResult res;
    for (std::size_t i = 0; i < found.size(); ++i) {
        if (found[i].T) {
            res.rows.push_back({c.p_grid[i], *found[i].T});
        } else {
            res.diagnostics.push_back(found[i].note);
        }
    }
    return res;
}

void write_threshold(std::ostream &os, const std::vector<ThresholdRow> &rows) {
    for (const auto &r : rows) os << fmt::format("{} {}\n", r.p, r.T_ms);
}

std::size_t worker_count() {
    if (const char *env = std::getenv("ROLLNET_WORKERS"); env && *env) {
        char *end = nullptr;
        long n = std::strtol(env, &end, 10);
        if (*end != '\0' || n < 1) throw DomainError(std::string("ROLLNET_WORKERS must be a positive integer, got ") + env);
        return static_cast<std::size_t>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)> &task) {
    const auto workers = std::min(worker_count(), n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        run();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
    }
    for (auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

std::string to_string(ResourceTarget t) { return t == ResourceTarget::Bell ? "bell" : "ghz"; }

ResourceTarget parse_resource_target(const std::string &s) {
    if (s == "bell") return ResourceTarget::Bell;
    if (s == "ghz") return ResourceTarget::Ghz;
    throw DomainError("unknown target \"" + s + "\" (expected bell or ghz)");
}

}  // namespace rollnet
