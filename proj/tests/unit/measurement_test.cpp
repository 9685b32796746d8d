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

#include <cmath>

#include "rollnet/dense.hpp"
#include "rollnet/errors.hpp"
#include "rollnet/measurement.hpp"
#include "testutil.hpp"

using namespace rollnet;
using rollnet::testing::V;

namespace {

// Post-measurement dense state after corrections vs the returned graph.
double rule_overlap(const Graph &g, VertexId a, Basis basis, std::optional<VertexId> b0, Outcome o) {
    auto psi = dense_graph_state(g);
    auto corr = corrections_for(g, a, basis, b0, o);
    auto m = measure_dense(psi, a, basis, o, corr);
    if (!m.state) return -1;
    auto expect = dense_graph_state(measured_graph(g, a, basis, b0));
    return overlap_abs(*m.state, expect);
}

}  // namespace

TEST(Measurement, StarCenterZIsolatesLeaves) {
    auto g = rollnet::testing::star_graph(4);
    auto r = measure_pauli(g, V(0), Basis::Z);
    EXPECT_EQ(r.graph.num_vertices(), 4u);
    EXPECT_EQ(r.graph.num_edges(), 0u);
    EXPECT_EQ(r.record.basis, Basis::Z);
    EXPECT_FALSE(r.record.support_choice.has_value());
    EXPECT_EQ(r.record.outcome, Outcome::Plus);
    EXPECT_TRUE(r.record.corrections.empty());
}

TEST(Measurement, PathCenterXGivesEdge) {
    auto g = rollnet::testing::path_graph(3);
    auto r = measure_pauli(g, V(1), Basis::X, V(0));
    EXPECT_FALSE(r.graph.is_live(V(1)));
    EXPECT_TRUE(r.graph.has_edge(V(0), V(2)));
    EXPECT_EQ(r.graph.num_edges(), 1u);
    ASSERT_TRUE(r.record.support_choice.has_value());
    EXPECT_EQ(*r.record.support_choice, V(0));
    for (auto o : {Outcome::Plus, Outcome::Minus}) EXPECT_NEAR(rule_overlap(g, V(1), Basis::X, V(0), o), 1.0, 1e-10);
}

TEST(Measurement, IsolatedXIsDeletion) {
    Graph g(3);
    g.add_edge(V(0), V(1));
    auto policy = OutcomePolicy::seeded(1);
    for (int k = 0; k < 20; ++k) {
        auto r = measure_pauli(g, V(2), Basis::X, std::nullopt, policy);
        EXPECT_FALSE(r.record.support_choice.has_value());
        EXPECT_EQ(r.record.outcome, Outcome::Plus);
        EXPECT_EQ(r.graph.num_vertices(), 2u);
    }
    auto m = measure_dense(dense_graph_state(g), V(2), Basis::X, Outcome::Minus, {});
    EXPECT_FALSE(m.state.has_value());
}

TEST(Measurement, Errors) {
    auto g = rollnet::testing::path_graph(3);
    EXPECT_THROW(measure_pauli(g, V(1), Basis::X), DomainError);
    EXPECT_THROW(measure_pauli(g, V(1), Basis::X, V(1)), DomainError);
    EXPECT_THROW(measure_pauli(g, V(0), Basis::X, V(2)), DomainError);
    EXPECT_THROW(measure_pauli(g, V(7), Basis::Z), DomainError);
    auto r = measure_pauli(g, V(0), Basis::Z);
    EXPECT_THROW(measure_pauli(r.graph, V(0), Basis::Z), DomainError);
}

TEST(Measurement, SeededOutcomesAreReproducible) {
    auto g = rollnet::testing::path_graph(6);
    auto a = OutcomePolicy::seeded(99), b = OutcomePolicy::seeded(99);
    int minus = 0;
    for (int k = 0; k < 64; ++k) {
        auto ra = measure_pauli(g, V(2), Basis::Y, std::nullopt, a);
        auto rb = measure_pauli(g, V(2), Basis::Y, std::nullopt, b);
        EXPECT_EQ(ra.record.outcome, rb.record.outcome);
        minus += ra.record.outcome == Outcome::Minus;
    }
    EXPECT_GT(minus, 0);
    EXPECT_LT(minus, 64);
}

TEST(Measurement, MatchesOracleOnRandomGraphs) {
    std::mt19937_64 rng(2024);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        auto n = 2 + rng() % 7;
        auto g = rollnet::testing::random_graph(rng, n);
        auto a = V(static_cast<std::uint32_t>(rng() % n));
        for (auto basis : {Basis::X, Basis::Y, Basis::Z}) {
            std::optional<VertexId> b0;
            const auto &na = g.neighbors(a);
            if (basis == Basis::X && !na.empty()) {
                auto nv = na.to_vector();
                b0 = nv[rng() % nv.size()];
            }
            for (auto o : {Outcome::Plus, Outcome::Minus}) {
                auto ov = rule_overlap(g, a, basis, b0, o);
                if (ov < 0) continue;  // impossible outcome
                ASSERT_NEAR(ov, 1.0, 1e-10) << "basis " << basis_char(basis) << " trial " << trial;
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 1500);
}

TEST(Measurement, PauliProbabilityIsHalfWhenConnected) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        auto g = rollnet::testing::random_graph(rng, 6, 0.6);
        auto psi = dense_graph_state(g);
        for (auto a : g.live()) {
            if (g.neighbors(a).empty()) continue;
            for (auto basis : {Basis::X, Basis::Y, Basis::Z}) {
                auto m = measure_dense(psi, a, basis, Outcome::Plus, {});
                EXPECT_NEAR(m.probability, 0.5, 1e-12);
            }
        }
    }
}

TEST(Dense, GraphStateExamples) {
    auto plus = dense_graph_state(Graph(1));
    EXPECT_NEAR(plus.data()[0].real(), M_SQRT1_2, 1e-15);
    EXPECT_NEAR(plus.data()[1].real(), M_SQRT1_2, 1e-15);

    Graph e(2);
    e.add_edge(V(0), V(1));
    auto s = dense_graph_state(e);
    EXPECT_NEAR(s.data()[0].real(), 0.5, 1e-15);
    EXPECT_NEAR(s.data()[1].real(), 0.5, 1e-15);
    EXPECT_NEAR(s.data()[2].real(), 0.5, 1e-15);
    EXPECT_NEAR(s.data()[3].real(), -0.5, 1e-15);
}

TEST(Dense, GeneratorsStabilize) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = rollnet::testing::random_graph(rng, 1 + rng() % 8);
        auto psi = dense_graph_state(g);
        auto rho = psi.to_density();
        for (const auto &k : stabilizer_generators(g)) {
            EXPECT_NEAR(expectation(psi, k), 1.0, 1e-12);
            EXPECT_NEAR(expectation(rho, k), 1.0, 1e-12);
        }
    }
}

TEST(Dense, ZOnPlusQubit) {
    Graph g(2);
    g.add_edge(V(0), V(1));
    // Z on |+>: half probability, other qubit left in |+>
    auto m = measure_dense(dense_graph_state(Graph(2)), V(0), Basis::Z, Outcome::Plus, {});
    EXPECT_NEAR(m.probability, 0.5, 1e-15);
    Graph one(2);
    one.remove_vertex(V(0));
    EXPECT_NEAR(overlap_abs(*m.state, dense_graph_state(one)), 1.0, 1e-15);
}

TEST(Dense, YOnPathEndLeavesLocalPlus) {
    auto g = rollnet::testing::path_graph(2);
    auto m = measure_dense(dense_graph_state(g), V(0), Basis::Y, Outcome::Plus, {});
    ASSERT_TRUE(m.state);
    // Still a pure single-qubit stabilizer state, one rotation away from |+>.
    DenseState s = *m.state;
    s.apply(V(1), correction_matrix(Correction::RotZPos));
    Graph one(2);
    one.remove_vertex(V(0));
    EXPECT_NEAR(overlap_abs(s, dense_graph_state(one)), 1.0, 1e-12);
}

TEST(Dense, SizeLimit) { EXPECT_THROW(dense_graph_state(Graph(13)), DomainError); }
