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


#include "rollnet/nsf.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "rollnet/errors.hpp"

namespace rollnet {

void NoiseMap::normalize() {
    std::stable_sort(branches.begin(), branches.end(),
                     [](const Branch &a, const Branch &b) { return a.support < b.support; });
    std::vector<Branch> merged;
    for (auto &b : branches) {
        if (!merged.empty() && merged.back().support == b.support) {
            merged.back().probability += b.probability;
        } else {
            merged.push_back(std::move(b));
        }
    }
    std::erase_if(merged, [](const Branch &b) { return b.probability == 0.0; });
    branches = std::move(merged);
}

double NoiseMap::total() const {
    double t = 0;
    for (const auto &b : branches) t += b.probability;
    return t;
}

NoiseMap make_map(VertexId origin, std::vector<Branch> branches) {
    NoiseMap m{origin, std::move(branches)};
    m.normalize();
    return m;
}

NoiseMap CanonicalForm::expand(const Graph &g) const {
    const auto &n = g.neighbors(origin);
    VertexSet a{origin};
    return make_map(origin, {{weights[0], {}}, {weights[1], n}, {weights[2], a}, {weights[3], a | n}});
}

CanonicalForm depolarizing_canonical(VertexId a, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError(fmt::format("depolarizing parameter {} outside [0,1]", p));
    double e = (1 - p) / 4;
    return {a, {p + e, e, e, e}};
}

NoiseMap depolarizing_map(const Graph &g, VertexId a, double p) {
    if (!g.is_live(a)) throw DomainError(fmt::format("depolarizing_map: vertex {} is not live", index(a)));
    return depolarizing_canonical(a, p).expand(g);
}

double dephasing_probability(double t_ms, double T_ms) {
    if (!(T_ms > 0.0)) throw DomainError(fmt::format("dephasing time must be positive, got {}", T_ms));
    if (!(t_ms >= 0.0)) throw DomainError(fmt::format("elapsed time must be nonnegative, got {}", t_ms));
    if (std::isinf(T_ms)) return 0.0;
    return 0.5 * (1.0 - std::exp(-t_ms / T_ms));
}

NoiseMap dephasing_map(VertexId a, double t_ms, double T_ms) {
    double q = dephasing_probability(t_ms, T_ms);
    return make_map(a, {{1.0 - q, {}}, {q, VertexSet{a}}});
}

NoiseMap compose(const NoiseMap &a, const NoiseMap &b) {
    std::vector<Branch> out;
    out.reserve(a.branches.size() * b.branches.size());
    for (const auto &x : a.branches) {
        for (const auto &y : b.branches) out.push_back({x.probability * y.probability, x.support ^ y.support});
    }
    return make_map(a.origin, std::move(out));
}

NoiseState initial_noise(const Graph &g, double p, double t_ms, double T_ms, const VertexSet &qubits) {
    NoiseState ns{g, {}};
    const auto &qs = qubits.empty() ? g.live() : qubits;
    for (auto q : qs) {
        auto d = depolarizing_map(g, q, p);
        if (!d.is_identity()) ns.maps.push_back(std::move(d));
        auto f = dephasing_map(q, t_ms, T_ms);
        if (!f.is_identity()) ns.maps.push_back(std::move(f));
    }
    return ns;
}

VertexSet z_image(const Graph &before, const Graph &after, const MeasurementStep &m, const VertexSet &support) {
    const auto a = m.qubit;
    const auto &na = before.neighbors(a);
    bool x_rule = m.basis == Basis::X && !na.empty();
    VertexSet out = support;
    out.erase(a);
    if (x_rule) out.erase(*m.support);
    if (support.contains(a)) {
        if (m.basis == Basis::Y) {
            out ^= na;
        } else if (x_rule) {
            auto b0 = *m.support;
            auto img = before.neighbors(b0);
            img.erase(a);
            img.insert(b0);
            out ^= img;
        }
    }
    if (x_rule && support.contains(*m.support)) out ^= after.neighbors(*m.support);
    return out;
}

NoiseState propagate(NoiseState ns, const MeasurementStep &m) {
    auto after = measured_graph(ns.graph, m.qubit, m.basis, m.support);
    for (auto &map : ns.maps) {
        for (auto &b : map.branches) b.support = z_image(ns.graph, after, m, b.support);
        map.normalize();
    }
    ns.graph = std::move(after);
    return ns;
}

NoiseState propagate(NoiseState ns, const std::vector<MeasurementStep> &seq) {
    for (const auto &m : seq) ns = propagate(std::move(ns), m);
    return ns;
}

NoiseState propagate(NoiseState ns, const ResolutionPlan &plan) { return propagate(std::move(ns), plan.measurements()); }

std::vector<NoiseMap> closed_form_maps(const GtlState &state, const ResolutionPlan &plan, double p) {
    depolarizing_canonical(vertex(0), p);  // range check
    if (state.params.kappa_b_hat < 2) throw DomainError("closed-form maps need kappa_b_hat >= 2");
    if (plan.steps.size() != state.orch.size()) {
        throw DomainError("closed-form maps need a rolling plan over every orchestration qubit");
    }
    ResolutionPlan rolling = plan;
    rolling.stop_stage = StopStage::AfterRolling;
    auto run = execute_plan(state, rolling, false);
    const auto n_o = run.steps.size();
    for (std::size_t m = 0; m < n_o; ++m) {
        // A lone orchestration qubit has no direction; any support works.
        if (n_o == 1) break;
        auto want = m + 1 < n_o ? SupportSide::Forward : SupportSide::Outer;
        if (run.steps[m].side != want) {
            throw DomainError(fmt::format("closed-form maps: support {} of step {} does not roll forward",
                                          index(run.steps[m].b0), m + 1));
        }
    }
    const auto &gamma = run.rolled_set;
    VertexSet supports;
    for (const auto &st : run.steps) supports.insert(st.b0);

    double e4 = (1 - p) / 4;
    double e2 = (1 - p) / 2;
    std::map<VertexId, NoiseMap> maps;
    for (std::size_t m = 0; m < n_o; ++m) {
        const auto &st = run.steps[m];
        VertexSet tail;
        for (std::size_t l = m; l < n_o; ++l) tail.insert(run.steps[l].b0);
        maps[st.o] = make_map(st.o, {{p + e2, {}}, {e2, tail}});
    }
    for (auto c : state.peers) {
        VertexSet nt;
        if (supports.contains(c)) {
            auto it = std::find_if(run.steps.begin(), run.steps.end(), [c](const StepSets &s) { return s.b0 == c; });
            nt = gamma | it->non_support;
        } else if (gamma.contains(c)) {
            nt = supports;
        } else {
            auto it = std::find_if(run.steps.begin(), run.steps.end(),
                                   [c](const StepSets &s) { return s.non_support.contains(c); });
            if (it == run.steps.end()) {
                throw InternalError(fmt::format("closed-form maps: peer {} fits no case", index(c)));
            }
            nt = VertexSet{it->b0};
        }
        VertexSet self{c};
        maps[c] = make_map(c, {{p + e4, {}}, {e4, self}, {e4, nt}, {e4, self ^ nt}});
    }
    std::vector<NoiseMap> out;
    for (auto &[v, m] : maps) out.push_back(std::move(m));
    return out;
}

TargetDistribution restrict_to_targets(const std::vector<NoiseMap> &maps, const VertexSet &targets) {
    TargetDistribution d;
    d.targets = targets.to_vector();
    const auto k = d.targets.size();
    if (k > 24) throw DomainError("restrict_to_targets: too many target qubits");
    std::map<VertexId, std::size_t> bit;
    for (std::size_t j = 0; j < k; ++j) bit[d.targets[j]] = j;
    const std::size_t dim = std::size_t{1} << k;
    d.probability.assign(dim, 0.0);
    d.probability[0] = 1.0;
    std::vector<double> next(dim);
    for (const auto &m : maps) {
        std::map<std::size_t, double> marginal;
        for (const auto &b : m.branches) {
            std::size_t mask = 0;
            for (auto v : b.support & targets) mask |= std::size_t{1} << bit[v];
            marginal[mask] += b.probability;
        }
        if (marginal.size() == 1 && marginal.begin()->first == 0) continue;
        std::fill(next.begin(), next.end(), 0.0);
        for (auto [mask, w] : marginal) {
            for (std::size_t x = 0; x < dim; ++x) next[x ^ mask] += d.probability[x] * w;
        }
        d.probability.swap(next);
    }
    return d;
}

TargetDistribution restrict_to_targets(const NoiseState &ns, const VertexSet &targets) {
    auto comps = ns.graph.components();
    if (std::find(comps.begin(), comps.end(), targets) == comps.end()) {
        throw DomainError(fmt::format("targets {} are not a connected component", to_string(targets)));
    }
    return restrict_to_targets(ns.maps, targets);
}

double fidelity(const NoiseState &ns, const VertexSet &targets) {
    if (targets.size() < 2) throw DomainError("fidelity needs an entangled target of at least two qubits");
    auto d = restrict_to_targets(ns, targets);
    return std::clamp(d.probability[0], 0.0, 1.0);
}

}  // namespace rollnet
