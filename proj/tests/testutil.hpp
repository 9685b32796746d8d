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

#include <random>

#include "rollnet/graph.hpp"

namespace rollnet::testing {

inline VertexId V(std::uint32_t i) { return vertex(i); }

inline Graph random_graph(std::mt19937_64 &rng, std::size_t n, double density = 0.5) {
    Graph g(n);
    std::bernoulli_distribution coin(density);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            if (coin(rng)) g.add_edge(vertex(i), vertex(j));
        }
    }
    return g;
}

inline Graph path_graph(std::size_t n) {
    Graph g(n);
    for (std::uint32_t i = 0; i + 1 < n; ++i) g.add_edge(vertex(i), vertex(i + 1));
    return g;
}

inline Graph star_graph(std::size_t leaves) {
    Graph g(leaves + 1);
    for (std::uint32_t i = 1; i <= leaves; ++i) g.add_edge(vertex(0), vertex(i));
    return g;
}

}  // namespace rollnet::testing
