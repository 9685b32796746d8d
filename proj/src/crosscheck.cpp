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


#include "rollnet/crosscheck.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "rollnet/dense.hpp"
#include "rollnet/errors.hpp"

namespace rollnet {

namespace {

constexpr auto kSaturated = std::numeric_limits<std::uint64_t>::max();

// Product of branch counts, saturating.
std::uint64_t branch_product(const std::vector<NoiseMap> &maps) {
    std::uint64_t total = 1;
    for (const auto &m : maps) {
        auto k = static_cast<std::uint64_t>(m.branches.size());
        if (k != 0 && total > kSaturated / k) return kSaturated;
        total *= k;
    }
    return total;
}

}  // namespace

CrosscheckReport crosscheck(const GtlState &state, const ResolutionPlan &plan, const NoiseConfig &noise,
                            DenseMethod method) {
    CrosscheckReport rep;
    rep.noise = noise;
    try {
        if (state.graph.num_vertices() > kCrosscheckMaxQubits) {
            throw DomainError("crosscheck: instance has more than " + std::to_string(kCrosscheckMaxQubits) + " qubits");
        }
        auto init = initial_noise(state.graph, noise.p, noise.t_ms, noise.T_ms);
        auto ns = propagate(init, plan);
        std::vector<VertexSet> targets;
        for (const auto &c : ns.graph.components()) {
            if (c.size() >= 2) targets.push_back(c);
        }

        if (method == DenseMethod::Auto) {
            method = branch_product(init.maps) <= (std::uint64_t{1} << 20) ? DenseMethod::Branches
                                                                            : DenseMethod::Density;
        }
        rep.method = method;
        auto seq = plan.measurements();
        auto dense = method == DenseMethod::Branches
                         ? dense_pipeline_branches(state.graph, init.maps, seq, targets)
                         : dense_pipeline_density(state.graph, init.maps, seq, targets);

        for (std::size_t i = 0; i < targets.size(); ++i) {
            CrosscheckEntry e{targets[i], fidelity(ns, targets[i]), dense.fidelity[i], 0};
            e.delta = std::abs(e.nsf - e.dense);
            rep.max_delta = std::max(rep.max_delta, e.delta);
            rep.entries.push_back(std::move(e));
        }
        rep.pass = !rep.entries.empty() && rep.max_delta < kCrosscheckTolerance;
        if (rep.entries.empty()) rep.error = "plan extracts no multi-qubit resource";
    } catch (const std::exception &ex) {
        rep.pass = false;
        rep.error = ex.what();
    }
    return rep;
}

std::string to_string(DenseMethod m) {
    switch (m) {
        case DenseMethod::Auto: return "auto";
        case DenseMethod::Branches: return "branches";
        case DenseMethod::Density: return "density";
    }
    return "?";
}

}  // namespace rollnet
