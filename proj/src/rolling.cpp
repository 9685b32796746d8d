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


#include "rollnet/rolling.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include <fmt/format.h>

#include "rollnet/errors.hpp"

namespace rollnet {

std::vector<MeasurementStep> ResolutionPlan::measurements() const {
    std::vector<MeasurementStep> out;
    for (const auto &s : steps) out.push_back({s.o, Basis::X, s.b0});
    if (stop_stage == StopStage::AfterIsolation) {
        for (auto v : isolation) out.push_back({v, Basis::Z, std::nullopt});
    }
    return out;
}

std::size_t RollingOutcome::count(Basis b) const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [b](const MeasurementRecord &r) { return r.basis == b; }));
}

StepSets step_sets(const Graph &g, VertexId o, VertexId b0, const StepContext &ctx) {
    if (!g.is_live(o)) throw DomainError(fmt::format("rolling step: vertex {} is not live", index(o)));
    const auto &n = g.neighbors(o);
    if (!n.contains(b0)) {
        throw DomainError(fmt::format("rolling step: support {} is not a neighbour of {}", index(b0), index(o)));
    }
    StepSets s;
    s.o = o;
    s.b0 = b0;
    s.next = ctx.next;
    s.neighborhood = n;
    s.carried = ctx.carried & n;
    VertexSet forward;
    if (ctx.next) {
        if (*ctx.next == o || !g.is_live(*ctx.next)) {
            throw DomainError(fmt::format("rolling step: bad next orchestration qubit {}", index(*ctx.next)));
        }
        forward = n & g.neighbors(*ctx.next);
    }
    if (forward.contains(b0)) {
        s.side = SupportSide::Forward;
        s.non_support = forward - VertexSet{b0};
        s.rolled = n - forward;
    } else if (s.carried.contains(b0)) {
        s.side = SupportSide::Carried;
        s.non_support = s.carried - VertexSet{b0};
        s.rolled = n - s.carried;
    } else if (!ctx.next) {
        // Only b0's twins hang off it afterwards; peers still tied to other
        // orchestration qubits keep those edges.
        s.side = SupportSide::Outer;
        for (auto c : n - s.carried) {
            if (c != b0 && g.neighbors(c) == g.neighbors(b0)) s.non_support.insert(c);
        }
        s.rolled = s.carried;
    } else {
        throw DomainError(fmt::format(
            "rolling step: support {} of {} is neither shared with {} nor in the carried set", index(b0), index(o),
            index(*ctx.next)));
    }
    return s;
}

StepResult rolling_step(const Graph &g, VertexId o, VertexId b0, const StepContext &ctx, OutcomePolicy &policy) {
    auto sets = step_sets(g, o, b0, ctx);
    auto m = measure_pauli(g, o, Basis::X, b0, policy);
    return {std::move(m.graph), std::move(m.record), std::move(sets)};
}

std::vector<std::string> rolling_postcondition_failures(const Graph &after, const StepSets &s) {
    std::vector<std::string> out;
    auto star = s.neighborhood - VertexSet{s.b0};
    if (!after.is_live(s.b0)) {
        out.push_back(fmt::format("support {} vanished", index(s.b0)));
        return out;
    }
    if (after.neighbors(s.b0) != star) {
        out.push_back(fmt::format("support {} has neighbourhood {}, expected {}", index(s.b0),
                                  to_string(after.neighbors(s.b0)), to_string(star)));
    }
    for (auto u : star) {
        auto inner = after.neighbors(u) & star;
        if (!inner.empty()) {
            out.push_back(fmt::format("edge {}-{} left inside the star of {}", index(u), index(inner.min()),
                                      index(s.b0)));
        }
    }
    if (s.next) {
        auto missing = s.rolled - after.neighbors(*s.next);
        if (!missing.empty()) {
            out.push_back(fmt::format("rolled vertices {} not adjacent to {}", to_string(missing), index(*s.next)));
        }
    }
    for (auto c : s.non_support) {
        if (after.neighbors(c) != VertexSet{s.b0}) {
            out.push_back(fmt::format("non-support {} has neighbourhood {}, expected {{{}}}", index(c),
                                      to_string(after.neighbors(c)), index(s.b0)));
        }
    }
    return out;
}

VertexSet pseudo_left_set(const GtlState &state) {
    VertexSet out;
    const auto &leaves = state.leaves.front();
    auto it = leaves.begin();
    for (std::uint32_t k = 0; k < state.params.kappa_b_hat && it != leaves.end(); ++k, ++it) out.insert(*it);
    return out;
}

namespace {

VertexSet initial_carried(const GtlState &state) {
    return state.orch.size() == 1 ? pseudo_left_set(state) : VertexSet{};
}

void require_specialized(const GtlState &state, const char *what, std::uint32_t min_kb) {
    if (!state.params.specialized() || state.params.kappa_b_hat < min_kb) {
        throw DomainError(fmt::format("{} needs kappa_c = 2*kappa_b_hat and kappa_b_hat >= {}, got {}", what, min_kb,
                                      to_string(state.params)));
    }
}

VertexSet support_set(const RollingOutcome &out) {
    VertexSet s;
    for (const auto &st : out.steps) s.insert(st.b0);
    return s;
}

}  // namespace

RollingOutcome rolling_step(const GtlState &state, VertexId o, VertexId b0) {
    auto i = state.orch_index(o);
    StepContext ctx;
    if (state.orch.size() == 1) {
        ctx.carried = pseudo_left_set(state);
    } else {
        auto sides = bridge_neighborhoods(state, o);
        if (sides.right.contains(b0)) {
            ctx.next = state.orch[i + 1];
        } else if (sides.left.contains(b0)) {
            ctx.next = state.orch[i - 1];
        } else if (state.graph.neighbors(o).contains(b0)) {
            throw DomainError(fmt::format("rolling step: support {} of {} is not a bridge", index(b0), index(o)));
        }
    }
    OutcomePolicy forced;
    auto r = rolling_step(state.graph, o, b0, ctx, forced);
    RollingOutcome out;
    out.graph = std::move(r.graph);
    out.records.push_back(std::move(r.record));
    out.rolled_set = r.sets.rolled;
    out.steps.push_back(std::move(r.sets));
    summarize_components(out, support_set(out));
    return out;
}

ResolutionPlan plan_rolling(const GtlState &state, SupportPolicy policy, bool reverse) {
    auto order = state.orch;
    if (reverse) std::reverse(order.begin(), order.end());
    ResolutionPlan plan;
    plan.stop_stage = StopStage::AfterRolling;
    Graph g = state.graph;
    VertexSet carried = initial_carried(state);
    OutcomePolicy forced;
    for (std::size_t k = 0; k < order.size(); ++k) {
        auto o = order[k];
        const auto &n = g.neighbors(o);
        VertexId b0{};
        std::optional<VertexId> next;
        if (k + 1 < order.size()) {
            next = order[k + 1];
            auto forward = n & g.neighbors(*next);
            if (forward.empty()) {
                throw DomainError(fmt::format("plan_rolling: {} shares no peer with {}", index(o), index(*next)));
            }
            b0 = forward.min();
        } else {
            auto left = carried & n;
            auto own = n - left;
            if (policy == SupportPolicy::CarriedLast && !left.empty()) {
                b0 = left.min();
            } else {
                b0 = own.empty() ? n.min() : own.min();
            }
        }
        plan.steps.push_back({o, b0});
        auto r = rolling_step(g, o, b0, {next, carried}, forced);
        g = std::move(r.graph);
        carried = r.sets.rolled;
    }
    return plan;
}

std::vector<ResolutionPlan> forward_plans(const GtlState &state, bool reverse, std::size_t limit) {
    auto order = state.orch;
    if (reverse) std::reverse(order.begin(), order.end());
    std::vector<ResolutionPlan> out;
    ResolutionPlan cur;
    cur.stop_stage = StopStage::AfterRolling;
    OutcomePolicy forced;
    std::function<void(const Graph &, const VertexSet &, std::size_t)> walk = [&](const Graph &g,
                                                                                 const VertexSet &carried,
                                                                                 std::size_t k) {
        if (out.size() >= limit) return;
        if (k == order.size()) {
            out.push_back(cur);
            return;
        }
        auto o = order[k];
        const auto &n = g.neighbors(o);
        std::optional<VertexId> next;
        VertexSet choices;
        if (k + 1 < order.size()) {
            next = order[k + 1];
            choices = n & g.neighbors(*next);
        } else {
            choices = order.size() == 1 ? n : n - carried;
        }
        for (auto b0 : choices) {
            auto r = rolling_step(g, o, b0, {next, carried}, forced);
            cur.steps.push_back({o, b0});
            walk(r.graph, r.sets.rolled, k + 1);
            cur.steps.pop_back();
        }
    };
    walk(state.graph, initial_carried(state), 0);
    return out;
}

ResolutionPlan plan_ghz(const GtlState &state, SupportPolicy policy, bool reverse) {
    require_specialized(state, "GHZ isolation", 1);
    auto plan = plan_rolling(state, policy, reverse);
    auto rolled = execute_plan(state, plan, false);
    plan.isolation = rolled.rolled_set.to_vector();
    plan.stop_stage = StopStage::AfterIsolation;
    return plan;
}

ResolutionPlan plan_max_bell(const GtlState &state, SupportPolicy policy, bool reverse) {
    require_specialized(state, "Bell isolation", 2);
    auto plan = plan_ghz(state, policy, reverse);
    auto stars = execute_plan(state, plan, false);
    for (const auto &st : stars.steps) {
        // keep the center and its lowest leaf
        auto drop = st.non_support;
        drop.erase(drop.min());
        for (auto v : drop) plan.isolation.push_back(v);
    }
    return plan;
}

ResolutionPlan plan_proximity_reduction(const GtlState &state, VertexId ci, VertexId cj) {
    if (ci == cj) throw DomainError("plan_proximity_reduction: endpoints must differ");
    if (!state.peers.contains(ci) || !state.peers.contains(cj)) {
        throw DomainError("plan_proximity_reduction: endpoints must be peer qubits");
    }
    auto orch = state.orch_set();
    std::size_t best_a = 0, best_b = 0, best = SIZE_MAX;
    for (auto oa : state.graph.neighbors(ci) & orch) {
        for (auto ob : state.graph.neighbors(cj) & orch) {
            auto a = state.orch_index(oa), b = state.orch_index(ob);
            auto d = a > b ? a - b : b - a;
            if (d < best) {
                best = d;
                best_a = a;
                best_b = b;
            }
        }
    }
    if (best == SIZE_MAX) throw DomainError("plan_proximity_reduction: peer without orchestration neighbour");
    ResolutionPlan plan;
    plan.stop_stage = StopStage::AfterRolling;
    long step = best_b >= best_a ? 1 : -1;
    for (long k = static_cast<long>(best_a);; k += step) {
        auto o = state.orch[static_cast<std::size_t>(k)];
        if (k == static_cast<long>(best_b)) {
            plan.steps.push_back({o, cj});
            break;
        }
        auto lo = static_cast<std::size_t>(std::min(k, k + step));
        plan.steps.push_back({o, state.bridges[lo].min()});
    }
    auto pi = peer_proximity(state, ci, cj);
    if (plan.steps.size() != pi) {
        throw InternalError(fmt::format("proximity plan has {} steps but proximity is {}", plan.steps.size(), pi));
    }
    return plan;
}

RollingOutcome execute_plan(const GtlState &state, const ResolutionPlan &plan, OutcomePolicy &policy, bool check) {
    auto orch = state.orch_set();
    VertexSet seen;
    for (const auto &s : plan.steps) {
        if (!orch.contains(s.o)) throw DomainError(fmt::format("plan step on non-orchestration vertex {}", index(s.o)));
        if (seen.contains(s.o)) throw DomainError(fmt::format("plan measures {} twice", index(s.o)));
        seen.insert(s.o);
    }
    check = check && state.params.specialized();
    RollingOutcome out;
    Graph g = state.graph;
    VertexSet carried = initial_carried(state);
    for (std::size_t k = 0; k < plan.steps.size(); ++k) {
        const auto &st = plan.steps[k];
        StepContext ctx{k + 1 < plan.steps.size() ? std::optional<VertexId>(plan.steps[k + 1].o) : std::nullopt,
                        carried};
        auto r = rolling_step(g, st.o, st.b0, ctx, policy);
        if (check) {
            auto bad = rolling_postcondition_failures(r.graph, r.sets);
            if (!bad.empty()) throw InternalError("rolling postcondition failed: " + bad.front());
        }
        g = std::move(r.graph);
        carried = r.sets.rolled;
        out.records.push_back(std::move(r.record));
        out.steps.push_back(std::move(r.sets));
    }
    out.rolled_set = carried;
    if (plan.stop_stage == StopStage::AfterIsolation) {
        for (auto v : plan.isolation) {
            auto m = measure_pauli(g, v, Basis::Z, std::nullopt, policy);
            g = std::move(m.graph);
            out.records.push_back(std::move(m.record));
        }
    }
    out.graph = std::move(g);
    summarize_components(out, support_set(out));
    return out;
}

RollingOutcome execute_plan(const GtlState &state, const ResolutionPlan &plan, bool check) {
    OutcomePolicy forced;
    return execute_plan(state, plan, forced, check);
}

RollingOutcome isolate_max_bell(const GtlState &state, SupportPolicy policy) {
    return execute_plan(state, plan_max_bell(state, policy));
}

RollingOutcome isolate_ghz(const GtlState &state, SupportPolicy policy) {
    return execute_plan(state, plan_ghz(state, policy));
}

RollingOutcome centralized_resolution(const GtlState &state, Basis basis) {
    if (basis == Basis::X) throw DomainError("centralized resolution uses Y or Z measurements");
    RollingOutcome out;
    Graph g = state.graph;
    for (auto o : state.orch) {
        auto m = measure_pauli(g, o, basis);
        g = std::move(m.graph);
        out.records.push_back(std::move(m.record));
    }
    out.graph = std::move(g);
    summarize_components(out);
    return out;
}

std::size_t orchestration_proximity(const Graph &g, const VertexSet &orch, VertexId u, VertexId v) {
    auto pc = shortest_path_marks(g, orch & g.live(), u, v);
    if (pc.min_marked != pc.max_marked) {
        throw InternalError(fmt::format("shortest {}-{} paths cross {} to {} orchestration qubits", index(u), index(v),
                                        pc.min_marked, pc.max_marked));
    }
    return pc.min_marked;
}

std::size_t schmidt_upper_bound(const Graph &g) {
    auto r = gf2_rank(g);
    if (r % 2 != 0) throw InternalError(fmt::format("adjacency matrix has odd GF(2) rank {}", r));
    return r / 2;
}

std::size_t schmidt_upper_bound(const GtlState &state) { return schmidt_upper_bound(state.graph); }

void summarize_components(RollingOutcome &out, const VertexSet &preferred_centers) {
    out.components = out.graph.components();
    out.pairs.clear();
    out.stars.clear();
    for (const auto &c : out.components) {
        auto size = c.size();
        if (size < 2) continue;
        if (size == 2) {
            auto u = c.min();
            auto v = *std::next(c.begin());
            out.pairs.emplace_back(u, v);
            auto center = preferred_centers.contains(v) && !preferred_centers.contains(u) ? v : u;
            out.stars.push_back({center, c - VertexSet{center}});
            continue;
        }
        for (auto v : c) {
            if (out.graph.degree(v) != size - 1) continue;
            auto rest = c - VertexSet{v};
            bool star = std::all_of(rest.begin(), rest.end(), [&](VertexId u) { return out.graph.degree(u) == 1; });
            if (star) out.stars.push_back({v, rest});
            break;
        }
    }
}

std::string to_string(StopStage s) { return s == StopStage::AfterRolling ? "after_rolling" : "after_isolation"; }

StopStage parse_stop_stage(const std::string &s) {
    if (s == "after_rolling") return StopStage::AfterRolling;
    if (s == "after_isolation") return StopStage::AfterIsolation;
    throw DomainError("unknown stop stage '" + s + "'");
}

std::string to_string(SupportPolicy p) { return p == SupportPolicy::CarriedLast ? "carried" : "forward"; }

SupportPolicy parse_support_policy(const std::string &s) {
    if (s == "carried" || s == "default") return SupportPolicy::CarriedLast;
    if (s == "forward") return SupportPolicy::ForwardLast;
    throw DomainError("unknown support policy '" + s + "'");
}

}  // namespace rollnet
