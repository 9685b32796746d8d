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

#include "rollnet/graph.hpp"

#include <algorithm>
#include <sstream>

#include "rollnet/errors.hpp"

namespace rollnet {

Graph::Graph(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) add_vertex();
}

VertexId Graph::add_vertex() {
    auto v = vertex(static_cast<std::uint32_t>(adj_.size()));
    adj_.emplace_back();
    live_.insert(v);
    return v;
}

std::size_t Graph::num_edges() const {
    std::size_t twice = 0;
    for (auto v : live_) twice += adj_[index(v)].size();
    return twice / 2;
}

void Graph::require_live(VertexId v, const char *what) const {
    if (!is_live(v)) {
        std::ostringstream ss;
        ss << what << ": vertex " << v << " is not live";
        throw DomainError(ss.str());
    }
}

const VertexSet &Graph::neighbors(VertexId v) const {
    require_live(v, "neighbors");
    return adj_[index(v)];
}

bool Graph::has_edge(VertexId u, VertexId v) const {
    return is_live(u) && adj_[index(u)].contains(v);
}

void Graph::add_edge(VertexId u, VertexId v) {
    require_live(u, "add_edge");
    require_live(v, "add_edge");
    if (u == v) throw DomainError("add_edge: self-loops are not allowed");
    adj_[index(u)].insert(v);
    adj_[index(v)].insert(u);
}

void Graph::remove_edge(VertexId u, VertexId v) {
    require_live(u, "remove_edge");
    require_live(v, "remove_edge");
    adj_[index(u)].erase(v);
    adj_[index(v)].erase(u);
}

void Graph::toggle_edge(VertexId u, VertexId v) {
    require_live(u, "toggle_edge");
    require_live(v, "toggle_edge");
    if (u == v) throw DomainError("toggle_edge: self-loops are not allowed");
    adj_[index(u)].toggle(v);
    adj_[index(v)].toggle(u);
}

void Graph::remove_vertex(VertexId v) {
    require_live(v, "remove_vertex");
    for (auto u : adj_[index(v)]) adj_[index(u)].erase(v);
    adj_[index(v)].clear();
    live_.erase(v);
    labels_.erase(v);
}

void Graph::complement_neighborhood(VertexId a) {
    require_live(a, "local_complement");
    const VertexSet nbrs = adj_[index(a)];
    // Row u gets N(a) \ {u} toggled: that is exactly the set of pairs
    // inside N(a) incident to u.
    for (auto u : nbrs) {
        VertexSet flip = nbrs;
        flip.erase(u);
        adj_[index(u)] ^= flip;
    }
}

std::vector<std::pair<VertexId, VertexId>> Graph::edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (auto u : live_) {
        for (auto v : adj_[index(u)]) {
            if (index(u) < index(v)) out.emplace_back(u, v);
        }
    }
    return out;
}

std::vector<VertexSet> Graph::components() const {
    std::vector<VertexSet> out;
    VertexSet seen;
    for (auto root : live_) {
        if (seen.contains(root)) continue;
        VertexSet comp{root};
        VertexSet frontier{root};
        while (!frontier.empty()) {
            VertexSet next;
            for (auto u : frontier) next |= adj_[index(u)];
            next -= comp;
            comp |= next;
            frontier = std::move(next);
        }
        seen |= comp;
        out.push_back(std::move(comp));
    }
    return out;
}

Graph Graph::induced(const VertexSet &keep) const {
    if (!keep.is_subset_of(live_)) throw DomainError("induced: vertex set contains dead vertices");
    Graph g = *this;
    for (auto v : live_ - keep) g.remove_vertex(v);
    return g;
}

void Graph::set_label(VertexId v, std::string label) {
    require_live(v, "set_label");
    labels_[v] = std::move(label);
}

void Graph::check_invariants() const {
    for (std::size_t i = 0; i < adj_.size(); ++i) {
        auto u = vertex(static_cast<std::uint32_t>(i));
        const auto &row = adj_[i];
        if (!live_.contains(u)) {
            if (!row.empty()) throw InternalError("dead vertex keeps adjacency");
            continue;
        }
        if (row.contains(u)) throw InternalError("self-loop present");
        if (!row.is_subset_of(live_)) throw InternalError("neighbourhood leaves the live set");
        for (auto v : row) {
            if (!adj_[index(v)].contains(u)) throw InternalError("adjacency is not symmetric");
        }
    }
}

bool Graph::operator==(const Graph &other) const {
    if (live_ != other.live_) return false;
    for (auto v : live_) {
        if (adj_[index(v)] != other.adj_[index(v)]) return false;
    }
    return true;
}

Graph local_complement(const Graph &g, VertexId a) {
    Graph out = g;
    out.complement_neighborhood(a);
    return out;
}

std::size_t gf2_rank(std::vector<VertexSet> rows) {
    std::size_t rank = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].empty()) continue;
        auto pivot = rows[i].min();
        ++rank;
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            if (rows[j].contains(pivot)) rows[j] ^= rows[i];
        }
    }
    return rank;
}

std::size_t gf2_rank(const Graph &g) {
    std::vector<VertexSet> rows;
    rows.reserve(g.num_vertices());
    for (auto v : g.live()) rows.push_back(g.neighbors(v));
    return gf2_rank(std::move(rows));
}

}  // namespace rollnet
