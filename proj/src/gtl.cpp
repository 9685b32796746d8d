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


#include "rollnet/gtl.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "rollnet/errors.hpp"

namespace rollnet {

void GtlParams::validate() const {
    if (kappa_b_hat == 0 || kappa_c == 0 || n_o == 0) {
        throw DomainError(fmt::format("GTL parameters must be positive, got {}", to_string(*this)));
    }
    if (kappa_c < 2 * kappa_b_hat) {
        throw DomainError(fmt::format("GTL needs kappa_c >= 2*kappa_b_hat, got {}", to_string(*this)));
    }
}

std::size_t GtlParams::kappa() const {
    return std::size_t{n_o} * kappa_c - (std::size_t{n_o} - 1) * kappa_b_hat;
}

std::string to_string(const GtlParams &p) {
    return fmt::format("(kappa_b_hat={}, kappa_c={}, n_o={})", p.kappa_b_hat, p.kappa_c, p.n_o);
}

std::size_t GtlState::orch_index(VertexId o) const {
    auto it = std::find(orch.begin(), orch.end(), o);
    if (it == orch.end()) throw DomainError(fmt::format("vertex {} is not an orchestration qubit", index(o)));
    return static_cast<std::size_t>(it - orch.begin());
}

VertexSet GtlState::all_bridges() const {
    VertexSet out;
    for (const auto &b : bridges) out |= b;
    return out;
}

GtlState build_gtl(const GtlParams &params) {
    params.validate();
    GtlState s;
    s.params = params;
    s.graph = Graph(params.num_qubits());
    const auto n_o = params.n_o;
    for (std::uint32_t i = 0; i < n_o; ++i) {
        s.orch.push_back(vertex(i));
        s.graph.set_label(vertex(i), fmt::format("o{}", i + 1));
    }
    s.bridges.resize(n_o - 1);
    s.leaves.resize(n_o);
    std::uint32_t next = n_o;
    auto new_peer = [&]() {
        auto v = vertex(next++);
        s.peers.insert(v);
        s.graph.set_label(v, fmt::format("c{}", next - n_o));
        return v;
    };
    for (std::uint32_t i = 0; i < n_o; ++i) {
        auto o = s.orch[i];
        if (i + 1 < n_o) {
            for (std::uint32_t k = 0; k < params.kappa_b_hat; ++k) {
                auto b = new_peer();
                s.graph.add_edge(o, b);
                s.graph.add_edge(s.orch[i + 1], b);
                s.bridges[i].insert(b);
            }
        }
        std::uint32_t sides = (i > 0 ? 1U : 0U) + (i + 1 < n_o ? 1U : 0U);
        std::uint32_t leaves = params.kappa_c - sides * params.kappa_b_hat;
        for (std::uint32_t k = 0; k < leaves; ++k) {
            auto c = new_peer();
            s.graph.add_edge(o, c);
            s.leaves[i].insert(c);
        }
    }
    return s;
}

namespace {

std::vector<VertexId> vec(std::initializer_list<VertexId> v) { return v; }

}  // namespace

ValidationReport validate_gtl(const Graph &graph, const std::vector<VertexId> &orch, const VertexSet &peers,
                              std::optional<std::uint32_t> kappa_b_hat_hint) {
    ValidationReport rep;
    auto add = [&](std::string c, std::string d, std::vector<VertexId> w) {
        rep.violations.push_back({std::move(c), std::move(d), std::move(w)});
    };

    VertexSet orch_set;
    for (auto o : orch) {
        if (!graph.is_live(o)) {
            add("partition", fmt::format("orchestration vertex {} is not live", index(o)), {o});
            continue;
        }
        if (orch_set.contains(o)) add("partition", fmt::format("orchestration vertex {} listed twice", index(o)), {o});
        orch_set.insert(o);
    }
    for (auto v : orch_set & peers) add("partition", fmt::format("vertex {} is in both classes", index(v)), {v});
    for (auto v : peers - graph.live()) add("partition", fmt::format("peer {} is not live", index(v)), {v});
    for (auto v : graph.live() - orch_set - peers) add("partition", fmt::format("vertex {} is unassigned", index(v)), {v});
    if (orch.empty()) add("partition", "no orchestration qubits", {});
    if (!rep.violations.empty()) return rep;

    for (auto [u, v] : graph.edges()) {
        bool uo = orch_set.contains(u);
        bool vo = orch_set.contains(v);
        if (uo == vo) {
            add("two-colorability", fmt::format("edge {}-{} inside {}", index(u), index(v), uo ? "V_o" : "V_c"),
                vec({u, v}));
        }
    }

    std::map<VertexId, std::size_t> pos;
    for (std::size_t i = 0; i < orch.size(); ++i) pos[orch[i]] = i;
    const std::size_t n_o = orch.size();

    // Peer degrees.
    const std::size_t kappa_c = (graph.neighbors(orch[0]) & peers).size();
    for (auto o : orch) {
        auto d = (graph.neighbors(o) & peers).size();
        if (d != kappa_c) {
            add("C1", fmt::format("orchestration {} has peer degree {}, expected {}", index(o), d, kappa_c), {o});
        }
    }

    // Bridge ranks and pair bookkeeping.
    std::vector<std::size_t> shared(n_o > 0 ? n_o - 1 : 0, 0);
    for (auto c : peers) {
        auto on = graph.neighbors(c) & orch_set;
        auto r = on.size();
        if (r == 0) {
            add("C1", fmt::format("peer {} has no orchestration neighbour", index(c)), {c});
        } else if (r == 2) {
            auto a = pos[on.min()];
            auto b = pos[*std::next(on.begin())];
            if (a > b) std::swap(a, b);
            if (b != a + 1) {
                add("C2", fmt::format("bridge {} joins non-consecutive o{} and o{}", index(c), a + 1, b + 1), {c});
            } else {
                ++shared[a];
            }
        } else if (r > 2) {
            add("C2", fmt::format("bridge {} has rank {}", index(c), r), {c});
        }
    }

    std::size_t kappa_b_hat = 0;
    if (n_o == 1) {
        kappa_b_hat = kappa_b_hat_hint ? *kappa_b_hat_hint : kappa_c / 2;
    } else {
        // kappa = n_o*kappa_c - (n_o-1)*kappa_b_hat
        auto total = n_o * kappa_c;
        auto kappa = peers.size();
        if (total > kappa && (total - kappa) % (n_o - 1) == 0) {
            kappa_b_hat = (total - kappa) / (n_o - 1);
        } else {
            kappa_b_hat = shared[0];
            add("count",
                fmt::format("peer count {} does not fit n_o={}, kappa_c={} for any kappa_b_hat", kappa, n_o, kappa_c),
                {});
        }
        for (std::size_t j = 0; j + 1 < n_o; ++j) {
            if (shared[j] != kappa_b_hat) {
                add("C3", fmt::format("pair (o{}, o{}) shares {} bridges, expected {}", j + 1, j + 2, shared[j],
                                      kappa_b_hat),
                    vec({orch[j], orch[j + 1]}));
            }
        }
    }
    if (kappa_b_hat == 0 || kappa_c < 2 * kappa_b_hat) {
        add("degree-bound", fmt::format("kappa_c={} and kappa_b_hat={} violate kappa_c >= 2*kappa_b_hat > 0", kappa_c,
                                        kappa_b_hat),
            {});
    }

    if (rep.violations.empty()) {
        rep.params = GtlParams{static_cast<std::uint32_t>(kappa_b_hat), static_cast<std::uint32_t>(kappa_c),
                               static_cast<std::uint32_t>(n_o)};
    }
    return rep;
}

std::string describe(const ValidationReport &r) {
    if (r.ok()) return "valid GTL " + to_string(*r.params);
    std::string out;
    for (const auto &v : r.violations) {
        if (!out.empty()) out += "; ";
        out += v.constraint + ": " + v.detail;
    }
    return out;
}

GtlState gtl_from_parts(const Graph &graph, const std::vector<VertexId> &orch, const VertexSet &peers,
                        std::optional<std::uint32_t> kappa_b_hat_hint) {
    auto rep = validate_gtl(graph, orch, peers, kappa_b_hat_hint);
    if (!rep.ok()) throw DomainError("not a GTL: " + describe(rep));
    GtlState s;
    s.graph = graph;
    s.orch = orch;
    s.peers = peers;
    s.params = *rep.params;
    s.bridges.resize(orch.size() - 1);
    s.leaves.resize(orch.size());
    for (std::size_t i = 0; i < orch.size(); ++i) {
        auto np = graph.neighbors(orch[i]) & peers;
        if (i + 1 < orch.size()) s.bridges[i] = np & graph.neighbors(orch[i + 1]);
        s.leaves[i] = np;
        if (i + 1 < orch.size()) s.leaves[i] -= graph.neighbors(orch[i + 1]);
        if (i > 0) s.leaves[i] -= graph.neighbors(orch[i - 1]);
    }
    return s;
}

StructureProfile structure_profile(const GtlState &state, VertexId v) {
    if (!state.graph.is_live(v)) throw DomainError(fmt::format("vertex {} is not live", index(v)));
    StructureProfile p;
    auto orch = state.orch_set();
    const auto &nv = state.graph.neighbors(v);
    if (orch.contains(v)) {
        p.orchestration = true;
        auto np = nv & state.peers;
        p.peer_degree = np.size();
        for (auto c : np) {
            if ((state.graph.neighbors(c) & orch).size() > 1) ++p.bridge_degree;
        }
    } else {
        p.bridge_rank = (nv & orch).size();
        p.is_bridge = p.bridge_rank > 1;
    }
    return p;
}

BridgeNeighborhoods bridge_neighborhoods(const GtlState &state, VertexId o) {
    auto i = state.orch_index(o);
    BridgeNeighborhoods out;
    if (i > 0) out.left = state.bridges[i - 1];
    if (i + 1 < state.orch.size()) out.right = state.bridges[i];
    return out;
}

PathCount shortest_path_marks(const Graph &g, const VertexSet &marked, VertexId u, VertexId v) {
    if (!g.is_live(u) || !g.is_live(v)) throw DomainError("shortest_path_marks: endpoint not live");
    constexpr auto kInf = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(g.id_bound(), kInf), lo(g.id_bound(), 0), hi(g.id_bound(), 0);
    std::vector<VertexId> order{u};
    dist[index(u)] = 0;
    for (std::size_t head = 0; head < order.size(); ++head) {
        auto x = order[head];
        for (auto y : g.neighbors(x)) {
            if (dist[index(y)] == kInf) {
                dist[index(y)] = dist[index(x)] + 1;
                order.push_back(y);
            }
        }
    }
    if (dist[index(v)] == kInf) {
        throw DomainError(fmt::format("vertices {} and {} are disconnected", index(u), index(v)));
    }
    // Counts of marked interior vertices along BFS-tree DAG, processed in BFS order.
    for (std::size_t k = 1; k < order.size(); ++k) {
        auto y = order[k];
        std::size_t best = kInf, worst = 0;
        for (auto x : g.neighbors(y)) {
            if (dist[index(x)] + 1 != dist[index(y)]) continue;
            std::size_t add = (x != u && marked.contains(x)) ? 1 : 0;
            best = std::min(best, lo[index(x)] + add);
            worst = std::max(worst, hi[index(x)] + add);
        }
        lo[index(y)] = best;
        hi[index(y)] = worst;
    }
    return {dist[index(v)], lo[index(v)], hi[index(v)]};
}

std::size_t peer_proximity(const GtlState &state, VertexId ci, VertexId cj) {
    if (ci == cj) throw DomainError("peer_proximity: endpoints must differ");
    if (!state.peers.contains(ci) || !state.peers.contains(cj)) {
        throw DomainError("peer_proximity: endpoints must be peer qubits");
    }
    auto bridges = state.all_bridges();
    auto pc = shortest_path_marks(state.graph, bridges, ci, cj);
    if (pc.min_marked != pc.max_marked) {
        throw InternalError(fmt::format("shortest paths between {} and {} disagree on bridge count ({} vs {})",
                                        index(ci), index(cj), pc.min_marked, pc.max_marked));
    }
    return 1 + pc.min_marked;
}

}  // namespace rollnet
