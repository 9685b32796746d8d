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

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rollnet/vertex_set.hpp"

namespace rollnet {

/// Simple undirected graph over stable vertex ids.
///
/// Adjacency is stored as one packed row per id ever allocated. Deleting a
/// vertex clears its row and column and retires the id; ids of the other
/// vertices never move, so plans and noise supports stay valid across a
/// whole measurement sequence.
class Graph {
   public:
    Graph() = default;
    /// Graph with vertices 0..n-1 and no edges.
    explicit Graph(std::size_t n);

    VertexId add_vertex();
    /// Total ids ever allocated (live or retired).
    std::size_t id_bound() const { return adj_.size(); }

    bool is_live(VertexId v) const { return live_.contains(v); }
    const VertexSet &live() const { return live_; }
    std::size_t num_vertices() const { return live_.size(); }
    std::size_t num_edges() const;

    const VertexSet &neighbors(VertexId v) const;
    std::size_t degree(VertexId v) const { return neighbors(v).size(); }
    bool has_edge(VertexId u, VertexId v) const;

    void add_edge(VertexId u, VertexId v);
    void remove_edge(VertexId u, VertexId v);
    void toggle_edge(VertexId u, VertexId v);

    /// Removes v and all incident edges. The id is retired.
    void remove_vertex(VertexId v);

    /// In-place local complementation: toggles every edge inside N(a).
    void complement_neighborhood(VertexId a);

    /// Edges as (u, v) with u < v, lexicographically ordered.
    std::vector<std::pair<VertexId, VertexId>> edges() const;

    /// Connected components of the live vertices, ordered by smallest member.
    std::vector<VertexSet> components() const;

    /// Subgraph induced on `keep` (which must be live). Ids are preserved.
    Graph induced(const VertexSet &keep) const;

    const std::map<VertexId, std::string> &labels() const { return labels_; }
    void set_label(VertexId v, std::string label);

    /// Throws InternalError if symmetry, the zero diagonal, or containment
    /// of neighbourhoods in the live set is broken.
    void check_invariants() const;

    bool operator==(const Graph &other) const;

   private:
    void require_live(VertexId v, const char *what) const;

    VertexSet live_;
    std::vector<VertexSet> adj_;
    std::map<VertexId, std::string> labels_;
};

/// Local complementation of g at a, as a pure function.
Graph local_complement(const Graph &g, VertexId a);

/// Rank of the live adjacency matrix over GF(2).
std::size_t gf2_rank(const Graph &g);

/// Rank over GF(2) of an arbitrary list of rows.
std::size_t gf2_rank(std::vector<VertexSet> rows);

}  // namespace rollnet
