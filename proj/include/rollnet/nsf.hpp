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


#pragma once

#include <array>
#include <string>
#include <vector>

#include "rollnet/graph.hpp"
#include "rollnet/gtl.hpp"
#include "rollnet/measurement.hpp"
#include "rollnet/rolling.hpp"

namespace rollnet {

struct Branch {
    double probability = 0;
    VertexSet support;  // qubits carrying a Z factor; empty is the identity
    bool operator==(const Branch &) const = default;
};

/// Mixture rho -> sum_i p_i Z_{S_i} rho Z_{S_i}. Branches are kept merged by
/// support and sorted by support.
struct NoiseMap {
    VertexId origin{};
    std::vector<Branch> branches;

    void normalize();
    double total() const;
    bool is_identity() const { return branches.size() == 1 && branches[0].support.empty(); }
    bool operator==(const NoiseMap &) const = default;
};

NoiseMap make_map(VertexId origin, std::vector<Branch> branches);

/// Weights of Z_a^alpha prod_{N_a} Z^beta, indexed by 2*alpha + beta.
struct CanonicalForm {
    VertexId origin{};
    std::array<double, 4> weights{1, 0, 0, 0};

    NoiseMap expand(const Graph &g) const;
};

CanonicalForm depolarizing_canonical(VertexId a, double p);
NoiseMap depolarizing_map(const Graph &g, VertexId a, double p);

/// q(t) = (1 - exp(-t/T)) / 2; T = +inf gives 0.
double dephasing_probability(double t_ms, double T_ms);
NoiseMap dephasing_map(VertexId a, double t_ms, double T_ms);

/// Sequential application of two maps (XOR convolution of the supports).
NoiseMap compose(const NoiseMap &a, const NoiseMap &b);

struct NoiseState {
    Graph graph;
    std::vector<NoiseMap> maps;  // applied after the noiseless manipulation, in order
};

/// Depolarizing then dephasing map on each qubit of `qubits` (all live
/// qubits when empty). p = 1 or T = inf leave out the corresponding map.
NoiseState initial_noise(const Graph &g, double p, double t_ms, double T_ms, const VertexSet &qubits = {});

/// Image of the Z-string on `support` through one measurement. `before` and
/// `after` are the graphs around that measurement.
VertexSet z_image(const Graph &before, const Graph &after, const MeasurementStep &m, const VertexSet &support);

NoiseState propagate(NoiseState ns, const MeasurementStep &m);
NoiseState propagate(NoiseState ns, const std::vector<MeasurementStep> &seq);
NoiseState propagate(NoiseState ns, const ResolutionPlan &plan);

/// Closed-form depolarizing maps after a full rolling sequence, one per qubit
/// of the initial GTL in id order. Only plans whose supports all roll forward
/// (shared bridge with the next qubit, and an own peer of the last one) are
/// accepted.
std::vector<NoiseMap> closed_form_maps(const GtlState &state, const ResolutionPlan &plan, double p);

struct TargetDistribution {
    std::vector<VertexId> targets;  // bit j of an index refers to targets[j]
    std::vector<double> probability;
};

/// Joint Z-error distribution on `targets`; no structural checks.
TargetDistribution restrict_to_targets(const std::vector<NoiseMap> &maps, const VertexSet &targets);
/// Same, but requires `targets` to be a connected component of ns.graph.
TargetDistribution restrict_to_targets(const NoiseState &ns, const VertexSet &targets);

double fidelity(const NoiseState &ns, const VertexSet &targets);

}  // namespace rollnet
