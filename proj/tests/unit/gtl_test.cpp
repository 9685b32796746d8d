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


#include <gtest/gtest.h>

#include <set>

#include "rollnet/errors.hpp"
#include "rollnet/gtl.hpp"
#include "testutil.hpp"

using namespace rollnet;
using rollnet::testing::V;

TEST(Gtl, ChainGraph) {
    auto s = build_gtl({1, 2, 3});
    EXPECT_EQ(s.params.kappa(), 4u);
    EXPECT_EQ(s.graph.num_vertices(), 7u);
    EXPECT_EQ(s.graph.num_edges(), 6u);
    // a chain is a path: two endpoints of degree 1, the rest degree 2
    int ends = 0;
    for (auto v : s.graph.live()) {
        auto d = s.graph.degree(v);
        EXPECT_TRUE(d == 1 || d == 2);
        ends += d == 1;
    }
    EXPECT_EQ(ends, 2);
    EXPECT_EQ(s.graph.components().size(), 1u);
}

TEST(Gtl, TwoOrchestrators) {
    auto s = build_gtl({2, 4, 2});
    EXPECT_EQ(s.params.kappa(), 6u);
    EXPECT_EQ(s.graph.num_vertices(), 8u);
    ASSERT_EQ(s.bridges.size(), 1u);
    EXPECT_EQ(s.bridges[0], (VertexSet{V(2), V(3)}));
    EXPECT_EQ(s.leaves[0], (VertexSet{V(4), V(5)}));
    EXPECT_EQ(s.leaves[1], (VertexSet{V(6), V(7)}));
    EXPECT_TRUE(validate_gtl(s.graph, s.orch, s.peers).ok());
}

TEST(Gtl, SingleStar) {
    auto s = build_gtl({3, 6, 1});
    EXPECT_EQ(s.graph.num_vertices(), 7u);
    EXPECT_TRUE(s.bridges.empty());
    EXPECT_EQ(s.graph.degree(V(0)), 6u);
    EXPECT_EQ(s.graph.num_edges(), 6u);
}

TEST(Gtl, BadParams) {
    EXPECT_THROW(build_gtl({2, 3, 2}), DomainError);
    EXPECT_THROW(build_gtl({0, 3, 2}), DomainError);
    EXPECT_THROW(build_gtl({1, 2, 0}), DomainError);
    EXPECT_TRUE((GtlParams{2, 4, 3}.specialized()));
    EXPECT_FALSE((GtlParams{2, 5, 3}.specialized()));
}

TEST(Gtl, RoundTrip) {
    for (std::uint32_t kb = 1; kb <= 4; ++kb) {
        for (std::uint32_t no = 1; no <= 6; ++no) {
            for (std::uint32_t kc = 2 * kb; kc <= 2 * kb + 2; ++kc) {
                GtlParams p{kb, kc, no};
                auto s = build_gtl(p);
                s.graph.check_invariants();
                auto rep = validate_gtl(s.graph, s.orch, s.peers, kb);
                ASSERT_TRUE(rep.ok()) << to_string(p) << ": " << describe(rep);
                EXPECT_EQ(*rep.params, p);
                if (no > 1 || kc == 2 * kb || kc == 2 * kb + 1) {
                    // without the hint the graph alone determines the parameters
                    auto bare = validate_gtl(s.graph, s.orch, s.peers);
                    ASSERT_TRUE(bare.ok());
                    EXPECT_EQ(*bare.params, p);
                }
                EXPECT_EQ(s.graph.num_vertices(), p.num_qubits());
                EXPECT_EQ(gf2_rank(s.graph), 2 * no) << to_string(p);
                std::size_t bridge_degrees = 0;
                for (auto o : s.orch) bridge_degrees += structure_profile(s, o).bridge_degree;
                EXPECT_EQ(bridge_degrees, 2 * (no - 1) * kb);
            }
        }
    }
}

TEST(Gtl, RankExample) { EXPECT_EQ(gf2_rank(build_gtl({2, 4, 3}).graph), 6u); }

TEST(Gtl, MissingBridgeEdgeIsC3) {
    auto s = build_gtl({2, 4, 2});
    auto g = s.graph;
    g.remove_edge(V(1), V(3));
    auto rep = validate_gtl(g, s.orch, s.peers);
    EXPECT_FALSE(rep.ok());
    bool c3 = false;
    for (const auto &v : rep.violations) {
        if (v.constraint == "C3") {
            c3 = true;
            EXPECT_EQ(v.witnesses, (std::vector<VertexId>{V(0), V(1)}));
        }
    }
    EXPECT_TRUE(c3) << describe(rep);
    EXPECT_THROW(gtl_from_parts(g, s.orch, s.peers), DomainError);
}

TEST(Gtl, PeerEdgeBreaksTwoColorability) {
    auto s = build_gtl({2, 4, 2});
    auto g = s.graph;
    g.add_edge(V(4), V(5));
    auto rep = validate_gtl(g, s.orch, s.peers);
    ASSERT_FALSE(rep.ok());
    bool found = false;
    for (const auto &v : rep.violations) {
        if (v.constraint == "two-colorability") {
            found = true;
            EXPECT_EQ(v.witnesses, (std::vector<VertexId>{V(4), V(5)}));
        }
    }
    EXPECT_TRUE(found);
}

TEST(Gtl, ReportsEveryViolation) {
    auto s = build_gtl({2, 4, 3});
    auto g = s.graph;
    g.add_edge(V(0), V(1));   // inside V_o
    g.add_edge(V(5), V(6));   // inside V_c
    g.add_edge(V(2), V(5));   // leaf of o_1 now also on o_3: C2
    g.add_edge(V(0), V(10));  // o_1 gains a peer: C1
    auto rep = validate_gtl(g, s.orch, s.peers);
    std::set<std::string> kinds;
    for (const auto &v : rep.violations) kinds.insert(v.constraint);
    EXPECT_TRUE(kinds.count("two-colorability"));
    EXPECT_TRUE(kinds.count("C1"));
    EXPECT_TRUE(kinds.count("C2"));
    EXPECT_GE(rep.violations.size(), 4u);
}

TEST(Gtl, PartitionViolations) {
    auto s = build_gtl({1, 2, 2});
    auto peers = s.peers;
    peers.erase(V(2));
    auto rep = validate_gtl(s.graph, s.orch, peers);
    ASSERT_FALSE(rep.ok());
    EXPECT_EQ(rep.violations[0].constraint, "partition");
}

TEST(Gtl, FromPartsRecoversBookkeeping) {
    auto s = build_gtl({2, 5, 3});
    auto t = gtl_from_parts(s.graph, s.orch, s.peers);
    EXPECT_EQ(t.params, s.params);
    EXPECT_EQ(t.bridges, s.bridges);
    EXPECT_EQ(t.leaves, s.leaves);
}

TEST(Gtl, StructureProfile) {
    auto s = build_gtl({2, 4, 2});
    auto leaf = structure_profile(s, V(4));
    EXPECT_FALSE(leaf.orchestration);
    EXPECT_EQ(leaf.bridge_rank, 1u);
    EXPECT_FALSE(leaf.is_bridge);
    auto bridge = structure_profile(s, V(2));
    EXPECT_EQ(bridge.bridge_rank, 2u);
    EXPECT_TRUE(bridge.is_bridge);

    auto t = build_gtl({2, 4, 3});
    auto inner = structure_profile(t, t.orch[1]);
    EXPECT_TRUE(inner.orchestration);
    EXPECT_EQ(inner.peer_degree, 4u);
    EXPECT_EQ(inner.bridge_degree, 4u);
    auto edge = structure_profile(t, t.orch[0]);
    EXPECT_EQ(edge.bridge_degree, 2u);
}

TEST(Gtl, BridgeNeighborhoods) {
    auto s = build_gtl({2, 4, 2});
    auto n1 = bridge_neighborhoods(s, s.orch[0]);
    EXPECT_TRUE(n1.left.empty());
    EXPECT_EQ(n1.right.size(), 2u);
    auto n2 = bridge_neighborhoods(s, s.orch[1]);
    EXPECT_EQ(n2.left.size(), 2u);
    EXPECT_TRUE(n2.right.empty());

    auto t = build_gtl({2, 4, 3});
    auto mid = bridge_neighborhoods(t, t.orch[1]);
    EXPECT_EQ(mid.left.size(), 2u);
    EXPECT_EQ(mid.right.size(), 2u);
    EXPECT_FALSE(mid.left.intersects(mid.right));
    EXPECT_THROW(bridge_neighborhoods(t, V(5)), DomainError);
}

TEST(Gtl, PeerProximity) {
    auto s = build_gtl({2, 4, 2});
    EXPECT_EQ(peer_proximity(s, V(4), V(5)), 1u);
    EXPECT_EQ(peer_proximity(s, V(4), V(6)), 2u);
    EXPECT_EQ(peer_proximity(s, V(6), V(4)), 2u);
    EXPECT_EQ(peer_proximity(s, V(2), V(3)), 1u);
    EXPECT_THROW(peer_proximity(s, V(4), V(4)), DomainError);
    EXPECT_THROW(peer_proximity(s, V(0), V(4)), DomainError);

    auto t = build_gtl({2, 4, 3});
    auto l1 = t.leaves[0].min();
    auto l3 = t.leaves[2].min();
    EXPECT_EQ(peer_proximity(t, l1, l3), 3u);

    Graph g = s.graph;
    g.remove_vertex(V(0));
    g.remove_vertex(V(1));
    EXPECT_THROW(shortest_path_marks(g, {}, V(4), V(6)), DomainError);
}

TEST(Gtl, ProximityBoundAndSymmetry) {
    for (std::uint32_t kb = 1; kb <= 3; ++kb) {
        for (std::uint32_t no = 1; no <= 5; ++no) {
            auto s = build_gtl({kb, 2 * kb, no});
            auto orch = s.orch_set();
            for (auto a : s.peers) {
                for (auto b : s.peers) {
                    if (!(a < b)) continue;
                    auto p = peer_proximity(s, a, b);
                    EXPECT_EQ(p, peer_proximity(s, b, a));
                    EXPECT_LE(p, no);
                    // one plus bridges equals orchestration qubits crossed
                    EXPECT_EQ(p, shortest_path_marks(s.graph, orch, a, b).min_marked);
                }
            }
        }
    }
}
