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
#include <iosfwd>
#include <string>
#include <vector>

#include "rollnet/graph.hpp"
#include "rollnet/vertex_set.hpp"

namespace rollnet {

/// Pauli operator i^phase * prod_v X_v^{x_v} Z_v^{z_v}. On a qubit carrying
/// both factors the Z acts first (X Z = -iY).
struct PauliString {
    VertexSet x;
    VertexSet z;
    std::uint8_t phase = 0;  // power of i, mod 4

    bool operator==(const PauliString &) const = default;
};

bool commutes(const PauliString &a, const PauliString &b);

/// Operator product a*b with the phase tracked exactly.
PauliString operator*(const PauliString &a, const PauliString &b);

std::string to_string(const PauliString &p);
std::ostream &operator<<(std::ostream &os, const PauliString &p);

/// K_a = X_a prod_{b in N_a} Z_b for each live a, in id order.
std::vector<PauliString> stabilizer_generators(const Graph &g);

}  // namespace rollnet
