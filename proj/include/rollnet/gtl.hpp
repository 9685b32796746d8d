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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rollnet/graph.hpp"

namespace rollnet {

struct GtlParams {
    std::uint32_t kappa_b_hat = 0;
    std::uint32_t kappa_c = 0;
    std::uint32_t n_o = 0;

    /// Throws DomainError unless all three are positive and kappa_c >= 2*kappa_b_hat.
    void validate() const;
    bool specialized() const { return kappa_c == 2 * kappa_b_hat; }
    /// Number of peers: n_o*kappa_c - (n_o-1)*kappa_b_hat.
    std::size_t kappa() const;
    std::size_t num_qubits() const { return n_o + kappa(); }

    bool operator==(const GtlParams &) const = default;
};

std::string to_string(const GtlParams &p);

struct GtlState {
    Graph graph;
    std::vector<VertexId> orch;       // o_1..o_{n_o}
    VertexSet peers;
    std::vector<VertexSet> bridges;  // bridges[j] is shared by orch[j] and orch[j+1]
    std::vector<VertexSet> leaves;   // non-bridge peers of orch[i]
    GtlParams params;

    VertexSet orch_set() const { return {orch.begin(), orch.end()}; }
    /// Position of o in orch, or throws DomainError.
    std::size_t orch_index(VertexId o) const;
    VertexSet all_bridges() const;
};

GtlState build_gtl(const GtlParams &params);

struct Violation {
    std::string constraint;  // "partition", "two-colorability", "C1", "C2", "C3", "degree-bound", "count"
    std::string detail;
    std::vector<VertexId> witnesses;
};

struct ValidationReport {
    std::optional<GtlParams> params;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty() && params.has_value(); }
};

/// Checks the partition, two-colorability and C1-C3, collecting every
/// violation. For a single orchestration qubit the graph does not determine
/// kappa_b_hat; the hint is used when given, otherwise floor(kappa_c/2).
ValidationReport validate_gtl(const Graph &graph, const std::vector<VertexId> &orch, const VertexSet &peers,
                              std::optional<std::uint32_t> kappa_b_hat_hint = std::nullopt);

/// Validates and fills in bridge/leaf bookkeeping. Throws DomainError listing
/// the violations when the input is not a GTL.
GtlState gtl_from_parts(const Graph &graph, const std::vector<VertexId> &orch, const VertexSet &peers,
                        std::optional<std::uint32_t> kappa_b_hat_hint = std::nullopt);

std::string describe(const ValidationReport &r);

struct StructureProfile {
    bool orchestration = false;
    // peers
    std::size_t bridge_rank = 0;
    bool is_bridge = false;
    // orchestration qubits
    std::size_t peer_degree = 0;
    std::size_t bridge_degree = 0;
};

StructureProfile structure_profile(const GtlState &state, VertexId v);

struct BridgeNeighborhoods {
    VertexSet left;
    VertexSet right;
};

BridgeNeighborhoods bridge_neighborhoods(const GtlState &state, VertexId o);

/// One plus the number of bridges on a shortest path between two peers.
std::size_t peer_proximity(const GtlState &state, VertexId ci, VertexId cj);

struct PathCount {
    std::size_t distance = 0;
    std::size_t min_marked = 0;
    std::size_t max_marked = 0;
};

/// Over all shortest u-v paths, the fewest and most interior vertices that
/// lie in `marked`. Throws DomainError when u and v are disconnected.
PathCount shortest_path_marks(const Graph &g, const VertexSet &marked, VertexId u, VertexId v);

}  // namespace rollnet
