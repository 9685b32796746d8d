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
#include <random>
#include <string>
#include <vector>

#include "rollnet/graph.hpp"

namespace rollnet {

enum class Basis : std::uint8_t { X, Y, Z };
enum class Outcome : std::uint8_t { Plus, Minus };

/// Single-qubit corrections that map the post-measurement state back onto
/// the graph state of the output graph. Rotations are exp(+-i pi/4 P).
enum class Correction : std::uint8_t {
    Z,
    RotZPos,  // exp(+i pi/4 Z)
    RotZNeg,  // exp(-i pi/4 Z)
    RotYPos,  // exp(+i pi/4 Y)
    RotYNeg,  // exp(-i pi/4 Y)
};

struct CorrectionOp {
    VertexId qubit;
    Correction tag;
    bool operator==(const CorrectionOp &) const = default;
};

struct MeasurementRecord {
    VertexId measured{};
    Basis basis = Basis::Z;
    std::optional<VertexId> support_choice;
    Outcome outcome = Outcome::Plus;
    // Applied in order after the projection. Never applied to the Graph.
    std::vector<CorrectionOp> corrections;
};

/// Forced "+" by default. The seeded mode draws each outcome with
/// probability 1/2, except for an X measurement of an isolated qubit where
/// only "+" can occur.
class OutcomePolicy {
   public:
    OutcomePolicy() = default;
    static OutcomePolicy forced_plus() { return {}; }
    static OutcomePolicy seeded(std::uint64_t seed);

    Outcome next(bool deterministic_plus);
    bool is_forced() const { return !rng_.has_value(); }

   private:
    std::optional<std::mt19937_64> rng_;
};

/// One measurement of a sequence; support is only meaningful for X.
struct MeasurementStep {
    VertexId qubit{};
    Basis basis = Basis::Z;
    std::optional<VertexId> support;
    bool operator==(const MeasurementStep &) const = default;
};

struct MeasureResult {
    Graph graph;
    MeasurementRecord record;
};

/// Graph part of a Pauli measurement, without corrections.
Graph measured_graph(const Graph &g, VertexId a, Basis basis, std::optional<VertexId> support);

/// Corrections for the given outcome, computed from the pre-measurement graph.
std::vector<CorrectionOp> corrections_for(const Graph &g, VertexId a, Basis basis,
                                          std::optional<VertexId> support, Outcome outcome);

MeasureResult measure_pauli(const Graph &g, VertexId a, Basis basis, std::optional<VertexId> support,
                            OutcomePolicy &policy);
MeasureResult measure_pauli(const Graph &g, VertexId a, Basis basis,
                            std::optional<VertexId> support = std::nullopt);

char basis_char(Basis b);
Basis parse_basis(const std::string &s);
std::string to_string(Correction c);
Correction parse_correction(const std::string &s);

}  // namespace rollnet
