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
#include <functional>
#include <limits>
#include <map>

#include "rollnet/dense.hpp"
#include "rollnet/errors.hpp"
#include "rollnet/nsf.hpp"
#include "testutil.hpp"

using namespace rollnet;
using rollnet::testing::V;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

std::map<VertexId, NoiseMap> by_origin(const std::vector<NoiseMap> &maps) {
    std::map<VertexId, NoiseMap> out;
    for (const auto &m : maps) out.emplace(m.origin, m);
    return out;
}

NoiseState depolarized(const Graph &g, double p) {
    NoiseState ns{g, {}};
    for (auto v : g.live()) ns.maps.push_back(depolarizing_map(g, v, p));
    return ns;
}

// Every plan whose supports roll forward: a shared bridge with the next qubit
// at each step, and an own peer at the last one.
std::vector<ResolutionPlan> enumerate_forward(const GtlState &s, bool reverse) {
    auto order = s.orch;
    if (reverse) std::reverse(order.begin(), order.end());
    std::vector<ResolutionPlan> out;
    ResolutionPlan cur;
    cur.stop_stage = StopStage::AfterRolling;
    std::function<void(const Graph &, VertexSet, std::size_t)> rec = [&](const Graph &g, VertexSet carried,
                                                                          std::size_t k) {
        if (k == order.size()) {
            out.push_back(cur);
            return;
        }
        auto o = order[k];
        const auto &n = g.neighbors(o);
        std::optional<VertexId> next;
        VertexSet cands;
        if (k + 1 < order.size()) {
            next = order[k + 1];
            cands = n & g.neighbors(*next);
        } else {
            cands = order.size() == 1 ? n : n - carried;
        }
        for (auto b0 : cands) {
            OutcomePolicy forced;
            auto r = rolling_step(g, o, b0, {next, carried}, forced);
            cur.steps.push_back({o, b0});
            rec(r.graph, r.sets.rolled, k + 1);
            cur.steps.pop_back();
        }
    };
    rec(s.graph, s.orch.size() == 1 ? pseudo_left_set(s) : VertexSet{}, 0);
    return out;
}

}  // namespace

TEST(Nsf, DepolarizingExamples) {
    Graph g(3);
    g.add_edge(V(0), V(1));
    g.add_edge(V(0), V(2));
    auto id = depolarizing_map(g, V(0), 1.0);
    EXPECT_TRUE(id.is_identity());

    auto m = depolarizing_map(g, V(0), 0.8);
    ASSERT_EQ(m.branches.size(), 4u);
    EXPECT_NEAR(m.branches[0].probability, 0.85, 1e-15);
    EXPECT_TRUE(m.branches[0].support.empty());
    EXPECT_EQ(m.branches[1].support, VertexSet{V(0)});
    EXPECT_EQ(m.branches[2].support, (VertexSet{V(1), V(2)}));
    EXPECT_EQ(m.branches[3].support, (VertexSet{V(0), V(1), V(2)}));
    for (std::size_t k = 1; k < 4; ++k) EXPECT_NEAR(m.branches[k].probability, 0.05, 1e-15);

    auto iso = depolarizing_map(Graph(1), V(0), 0.0);
    ASSERT_EQ(iso.branches.size(), 2u);
    EXPECT_EQ(iso.branches[0].probability, 0.5);
    EXPECT_EQ(iso.branches[1].probability, 0.5);

    EXPECT_THROW(depolarizing_map(g, V(0), 1.1), DomainError);
    EXPECT_THROW(depolarizing_map(g, V(0), -0.1), DomainError);
    EXPECT_THROW(depolarizing_map(g, V(0), std::nan("")), DomainError);
}

TEST(Nsf, DephasingExamples) {
    EXPECT_TRUE(dephasing_map(V(0), 0.0, 5.0).is_identity());
    auto m = dephasing_map(V(0), 3.0, 3.0);
    ASSERT_EQ(m.branches.size(), 2u);
    EXPECT_NEAR(m.branches[1].probability, 0.31606027941427883, 1e-15);
    EXPECT_NEAR(dephasing_probability(1e6, 1.0), 0.5, 1e-15);
    EXPECT_TRUE(dephasing_map(V(0), 1.0, kInf).is_identity());
    EXPECT_THROW(dephasing_map(V(0), 1.0, 0.0), DomainError);
    EXPECT_THROW(dephasing_map(V(0), 1.0, -2.0), DomainError);
    EXPECT_THROW(dephasing_map(V(0), -1.0, 2.0), DomainError);
}

TEST(Nsf, MergeAndCompose) {
    auto m = make_map(V(0), {{0.25, {V(1)}}, {0.25, {}}, {0.5, {V(1)}}});
    ASSERT_EQ(m.branches.size(), 2u);
    EXPECT_EQ(m.branches[1].probability, 0.75);
    auto a = make_map(V(0), {{0.9, {}}, {0.1, {V(0)}}});
    auto b = make_map(V(0), {{0.8, {}}, {0.2, {V(0)}}});
    auto c = compose(a, b);
    ASSERT_EQ(c.branches.size(), 2u);
    EXPECT_NEAR(c.branches[0].probability, 0.74, 1e-15);
    EXPECT_EQ(compose(a, b), compose(b, a));
}

TEST(Nsf, TableRowsOnCanonicalBranches) {
    auto g = rollnet::testing::path_graph(4);  // 0-1-2-3
    // M_z on a: Z_a -> identity
    MeasurementStep mz{V(1), Basis::Z, std::nullopt};
    auto gz = measured_graph(g, V(1), Basis::Z, std::nullopt);
    EXPECT_TRUE(z_image(g, gz, mz, {V(1)}).empty());
    EXPECT_EQ(z_image(g, gz, mz, {V(0), V(2)}), (VertexSet{V(0), V(2)}));
    // M_x on a with b0: Z_a -> Z_b0 prod_{N_b0} Z, a dropped
    MeasurementStep mx{V(1), Basis::X, V(2)};
    auto gx = measured_graph(g, V(1), Basis::X, V(2));
    EXPECT_EQ(z_image(g, gx, mx, {V(1)}), (VertexSet{V(2), V(3)}));
    // M_y on a: Z_a -> prod_{N_a} Z
    MeasurementStep my{V(1), Basis::Y, std::nullopt};
    auto gy = measured_graph(g, V(1), Basis::Y, std::nullopt);
    EXPECT_EQ(z_image(g, gy, my, {V(1)}), (VertexSet{V(0), V(2)}));
    for (const auto &[m, h] : {std::pair{mz, gz}, std::pair{mx, gx}, std::pair{my, gy}}) {
        EXPECT_TRUE(z_image(g, h, m, {}).empty());
    }
}

TEST(Nsf, ImagesMatchOracle) {
    // Z_S |G> measured and corrected equals Z_{image} |G'> up to phase.
    std::mt19937_64 rng(77);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto n = 2 + rng() % 7;
        auto g = rollnet::testing::random_graph(rng, n);
        auto a = V(static_cast<std::uint32_t>(rng() % n));
        VertexSet support;
        for (auto v : g.live()) {
            if (rng() % 2) support.insert(v);
        }
        for (auto basis : {Basis::X, Basis::Y, Basis::Z}) {
            MeasurementStep m{a, basis, std::nullopt};
            if (basis == Basis::X && !g.neighbors(a).empty()) {
                auto nv = g.neighbors(a).to_vector();
                m.support = nv[rng() % nv.size()];
            }
            auto after = measured_graph(g, a, basis, m.support);
            auto img = z_image(g, after, m, support);
            auto expect = dense_graph_state(after);
            expect.apply_z_string(img);
            for (auto o : {Outcome::Plus, Outcome::Minus}) {
                auto psi = dense_graph_state(g);
                psi.apply_z_string(support);
                auto r = measure_dense(psi, a, basis, o, corrections_for(g, a, basis, m.support, o));
                if (!r.state) continue;
                ASSERT_NEAR(overlap_abs(*r.state, expect), 1.0, 1e-10) << basis_char(basis) << " trial " << trial;
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 1000);
}

TEST(Nsf, ProbabilitiesStayNormalized) {
    auto s = build_gtl({3, 6, 3});
    auto ns = initial_noise(s.graph, 0.83, 1.0, 7.0);
    for (const auto &m : plan_max_bell(s).measurements()) {
        ns = propagate(std::move(ns), m);
        for (const auto &map : ns.maps) {
            EXPECT_NEAR(map.total(), 1.0, 1e-12);
            for (const auto &b : map.branches) EXPECT_TRUE(b.support.is_subset_of(ns.graph.live()));
        }
    }
}

TEST(Nsf, ClosedFormMatchesStepwise) {
    for (std::uint32_t kb : {2u, 3u}) {
        for (std::uint32_t no = 1; no <= 4; ++no) {
            auto s = build_gtl({kb, 2 * kb, no});
            std::size_t sequences = 0;
            for (bool reverse : {false, true}) {
                for (const auto &plan : enumerate_forward(s, reverse)) {
                    for (double p : {0.75, 0.5, 0.875}) {
                        auto closed = by_origin(closed_form_maps(s, plan, p));
                        auto step = propagate(depolarized(s.graph, p), plan);
                        auto stepped = by_origin(step.maps);
                        ASSERT_EQ(closed.size(), stepped.size());
                        for (const auto &[o, m] : stepped) {
                            ASSERT_EQ(closed.at(o), m) << to_string(s.params) << " origin " << index(o);
                        }
                    }
                    ++sequences;
                }
                if (no == 1) break;
            }
            EXPECT_GE(sequences, 3u) << to_string(s.params);
        }
    }
}

TEST(Nsf, ClosedFormNonDyadicWithinRounding) {
    auto s = build_gtl({2, 4, 3});
    auto plan = plan_rolling(s, SupportPolicy::ForwardLast);
    auto closed = by_origin(closed_form_maps(s, plan, 0.9));
    auto stepped = by_origin(propagate(depolarized(s.graph, 0.9), plan).maps);
    for (const auto &[o, m] : stepped) {
        const auto &c = closed.at(o);
        ASSERT_EQ(c.branches.size(), m.branches.size());
        for (std::size_t k = 0; k < m.branches.size(); ++k) {
            EXPECT_EQ(c.branches[k].support, m.branches[k].support);
            EXPECT_NEAR(c.branches[k].probability, m.branches[k].probability, 1e-15);
        }
    }
}

TEST(Nsf, ClosedFormExamples) {
    auto s = build_gtl({2, 4, 3});
    auto plan = plan_rolling(s, SupportPolicy::ForwardLast);
    auto run = execute_plan(s, plan);
    auto maps = by_origin(closed_form_maps(s, plan, 0.75));
    const auto &last = maps.at(s.orch.back());
    ASSERT_EQ(last.branches.size(), 2u);
    EXPECT_EQ(last.branches[0].probability, 0.875);
    EXPECT_EQ(last.branches[1].support, VertexSet{run.steps.back().b0});
    VertexSet supports;
    for (const auto &st : run.steps) supports.insert(st.b0);
    auto g = run.rolled_set.min();
    EXPECT_EQ(maps.at(g).branches.back().support, supports | VertexSet{g});
    auto sbar = run.steps[0].non_support.min();
    const auto &ms = maps.at(sbar);
    ASSERT_EQ(ms.branches.size(), 4u);
    EXPECT_EQ(ms.branches[0].probability, 0.8125);
    for (std::size_t k = 1; k < 4; ++k) EXPECT_EQ(ms.branches[k].probability, 0.0625);
}

TEST(Nsf, ClosedFormRejectsOtherPlans) {
    auto s = build_gtl({2, 4, 3});
    EXPECT_THROW(closed_form_maps(s, plan_rolling(s, SupportPolicy::CarriedLast), 0.9), DomainError);
    auto partial = plan_rolling(s, SupportPolicy::ForwardLast);
    partial.steps.pop_back();
    EXPECT_THROW(closed_form_maps(s, partial, 0.9), DomainError);
    auto chain = build_gtl({1, 2, 3});
    EXPECT_THROW(closed_form_maps(chain, plan_rolling(chain), 0.9), DomainError);
}

TEST(Nsf, OrderSensitivityAndRelabeling) {
    auto s = build_gtl({2, 4, 3});
    const std::size_t n_o = s.orch.size();
    // Mirror o_i <-> o_{n+1-i} with bridges and leaves matched in id order.
    std::map<VertexId, VertexId> phi;
    for (std::size_t i = 0; i < n_o; ++i) phi[s.orch[i]] = s.orch[n_o - 1 - i];
    auto pair_up = [&](const VertexSet &a, const VertexSet &b) {
        auto av = a.to_vector(), bv = b.to_vector();
        for (std::size_t k = 0; k < av.size(); ++k) phi[av[k]] = bv[k];
    };
    for (std::size_t j = 0; j + 1 < n_o; ++j) pair_up(s.bridges[j], s.bridges[n_o - 2 - j]);
    for (std::size_t i = 0; i < n_o; ++i) pair_up(s.leaves[i], s.leaves[n_o - 1 - i]);
    auto map_set = [&](const VertexSet &x) {
        VertexSet y;
        for (auto v : x) y.insert(phi.at(v));
        return y;
    };

    auto fwd = plan_rolling(s, SupportPolicy::ForwardLast);
    ResolutionPlan back = fwd;
    for (auto &st : back.steps) st = {phi.at(st.o), phi.at(st.b0)};

    auto mf = by_origin(propagate(depolarized(s.graph, 0.75), fwd).maps);
    auto mb = by_origin(propagate(depolarized(s.graph, 0.75), back).maps);
    bool differ = false;
    for (const auto &[o, m] : mf) differ |= !(mb.at(o) == m);
    EXPECT_TRUE(differ);
    for (const auto &[o, m] : mf) {
        std::vector<Branch> relabelled;
        for (const auto &b : m.branches) relabelled.push_back({b.probability, map_set(b.support)});
        EXPECT_EQ(make_map(phi.at(o), relabelled), mb.at(phi.at(o)));
    }
}

TEST(Nsf, DephasingCommutesWithDepolarizing) {
    auto s = build_gtl({2, 4, 2});
    auto plan = plan_max_bell(s);
    for (auto q : s.graph.live()) {
        auto d = depolarizing_map(s.graph, q, 0.8);
        auto f = dephasing_map(q, 1.0, 3.0);
        auto joint = propagate(NoiseState{s.graph, {compose(d, f)}}, plan).maps[0];
        auto split = propagate(NoiseState{s.graph, {d, f}}, plan).maps;
        auto a = compose(split[0], split[1]);
        auto b = compose(split[1], split[0]);
        ASSERT_EQ(a.branches.size(), joint.branches.size());
        for (std::size_t k = 0; k < a.branches.size(); ++k) {
            EXPECT_EQ(a.branches[k].support, joint.branches[k].support);
            EXPECT_NEAR(a.branches[k].probability, joint.branches[k].probability, 1e-15);
            EXPECT_NEAR(b.branches[k].probability, joint.branches[k].probability, 1e-15);
        }
    }
}

TEST(Nsf, RestrictExamples) {
    std::vector<NoiseMap> maps{make_map(V(0), {{0.9, {}}, {0.1, {V(1)}}}),
                               make_map(V(2), {{0.8, {}}, {0.2, {V(1)}}})};
    auto d = restrict_to_targets(maps, {V(1)});
    ASSERT_EQ(d.probability.size(), 2u);
    EXPECT_NEAR(d.probability[0], 0.74, 1e-15);
    EXPECT_NEAR(d.probability[1], 0.26, 1e-15);
    auto outside = restrict_to_targets({make_map(V(0), {{0.5, {}}, {0.5, {V(7)}}})}, {V(1), V(2)});
    EXPECT_EQ(outside.probability[0], 1.0);
}

TEST(Nsf, RestrictNeedsWholeComponent) {
    auto s = build_gtl({2, 4, 2});
    auto ns = propagate(initial_noise(s.graph, 0.9, 1.0, kInf), plan_max_bell(s));
    auto comps = ns.graph.components();
    EXPECT_NO_THROW(restrict_to_targets(ns, comps[0]));
    EXPECT_THROW(restrict_to_targets(ns, VertexSet{comps[0].min()}), DomainError);
    EXPECT_THROW(fidelity(ns, VertexSet{comps[0].min()}), DomainError);
}

TEST(Nsf, NoiselessFidelityIsOne) {
    auto s = build_gtl({3, 6, 3});
    auto ns = propagate(initial_noise(s.graph, 1.0, 1.0, kInf), plan_ghz(s));
    EXPECT_TRUE(ns.maps.empty());
    for (const auto &c : ns.graph.components()) EXPECT_EQ(fidelity(ns, c), 1.0);
}

TEST(Nsf, ClosedFormDistributionMatchesOracle) {
    auto s = build_gtl({2, 4, 2});
    const double p = 0.8;
    auto plan = plan_max_bell(s, SupportPolicy::ForwardLast);
    auto rolling = plan;
    rolling.stop_stage = StopStage::AfterRolling;
    auto closed = closed_form_maps(s, rolling, p);
    auto rolled = execute_plan(s, rolling);
    NoiseState ns{rolled.graph, closed};
    std::vector<MeasurementStep> iso;
    for (auto v : plan.isolation) iso.push_back({v, Basis::Z, std::nullopt});
    ns = propagate(std::move(ns), iso);
    auto pair = ns.graph.components()[0];
    auto dist = restrict_to_targets(ns, pair);

    // Oracle: noisy density matrix through the same measurements, then the
    // weight of each Z pattern on the pair read off by overlap.
    auto rho = dense_graph_state(s.graph).to_density();
    for (const auto &m : initial_noise(s.graph, p, 0.0, 1.0).maps) rho = apply_channel(std::move(rho), m);
    Graph cur = s.graph;
    for (const auto &m : plan.measurements()) {
        rho = measure_dense_averaged(rho, cur, m);
        cur = measured_graph(cur, m.qubit, m.basis, m.support);
    }
    for (std::size_t mask = 0; mask < dist.probability.size(); ++mask) {
        VertexSet z;
        for (std::size_t j = 0; j < dist.targets.size(); ++j) {
            if ((mask >> j) & 1U) z.insert(dist.targets[j]);
        }
        auto flipped = rho;
        flipped.apply_z_string(z);
        EXPECT_NEAR(dense_fidelity(flipped, cur, pair), dist.probability[mask], 1e-12) << mask;
    }
}
