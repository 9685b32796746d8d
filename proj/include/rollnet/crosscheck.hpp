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
#include <string>
#include <vector>

#include "rollnet/gtl.hpp"
#include "rollnet/nsf.hpp"
#include "rollnet/rolling.hpp"

namespace rollnet {

struct NoiseConfig {
    double p = 1.0;
    double T_ms = 0;  // +inf disables dephasing
    double t_ms = 1.0;
};

enum class DenseMethod { Auto, Branches, Density };

struct CrosscheckEntry {
    VertexSet target;
    double nsf = 0;
    double dense = 0;
    double delta = 0;
};

struct CrosscheckReport {
    NoiseConfig noise;
    DenseMethod method = DenseMethod::Auto;  // the one actually used
    std::vector<CrosscheckEntry> entries;
    double max_delta = 0;
    bool pass = false;
    std::string error;  // set when the run could not be carried out
};

inline constexpr double kCrosscheckTolerance = 1e-9;
inline constexpr std::size_t kCrosscheckMaxQubits = 11;

/// Runs the plan through noise propagation and through the dense simulator,
/// and compares per-resource fidelities. Failures are reported, not thrown.
CrosscheckReport crosscheck(const GtlState &state, const ResolutionPlan &plan, const NoiseConfig &noise,
                            DenseMethod method = DenseMethod::Auto);

std::string to_string(DenseMethod m);

}  // namespace rollnet
