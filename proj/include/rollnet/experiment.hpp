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
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rollnet/gtl.hpp"
#include "rollnet/nsf.hpp"
#include "rollnet/rolling.hpp"

namespace rollnet {

enum class ResourceTarget { Bell, Ghz };

struct ExperimentConfig {
    std::uint32_t kappa_b_hat = 2;
    std::uint32_t n_o = 2;
    ResourceTarget target = ResourceTarget::Bell;
    std::vector<double> p_grid;
    std::vector<double> T_grid_ms;  // +inf allowed
    double protocol_time_ms = 1.0;
    std::map<std::uint32_t, double> qubit_time_ms;  // per-qubit dephasing time, overrides protocol_time_ms
    std::optional<std::string> plan_file;  // explicit plan instead of the default one
    SupportPolicy policy = SupportPolicy::CarriedLast;
    std::uint64_t seed = 0;
    std::string output;  // empty means stdout
    double level = 0.5;

    /// Throws DomainError on any violation.
    void validate() const;
};

/// Keys mirror the field names; "target" is "bell" or "ghz", grids are lists
/// or {"from", "to", "step"} objects, T values may be "inf", "plan" is
/// "default" or a path. "qubit_time_ms" maps qubit ids to their own
/// dephasing time.
ExperimentConfig config_from_json(const nlohmann::json &j);
nlohmann::json to_json(const ExperimentConfig &c);

/// The instance and plan a config describes, built once and shared.
struct Pipeline {
    GtlState state;
    ResolutionPlan plan;
    double protocol_time_ms = 1.0;
    std::map<std::uint32_t, double> qubit_time_ms;

    /// Depolarizing and dephasing maps on every qubit of the initial graph.
    NoiseState initial(double p, double T_ms) const;
};

Pipeline make_pipeline(const ExperimentConfig &c);

struct ResourceFidelity {
    VertexSet resource;
    double fidelity = 0;
};

/// One entry per extracted multi-qubit component, ordered by smallest id.
std::vector<ResourceFidelity> evaluate(const Pipeline &pl, double p, double T_ms);
double worst_fidelity(const Pipeline &pl, double p, double T_ms);

/// True when the resource holds a peer that was a non-bridge peer initially.
bool is_boundary_resource(const GtlState &state, const VertexSet &resource);

struct SweepRow {
    double p = 0;
    double T_ms = 0;
    std::string resource_id;
    double fidelity = 0;
};

/// Grid points in p-major order, resources by smallest id within a point.
std::vector<SweepRow> run_sweep(const ExperimentConfig &c);
void write_sweep_csv(std::ostream &os, const std::vector<SweepRow> &rows);

struct ThresholdRow {
    double p = 0;
    double T_ms = 0;
};

struct ThresholdResult {
    std::vector<ThresholdRow> rows;
    std::vector<std::string> diagnostics;  // one per omitted p
};

/// For each p, the smallest T in [min T, max T] of the finite T grid at which
/// the worst resource reaches c.level. Throws InternalError when the worst
/// fidelity is not monotone along the T grid.
ThresholdResult find_threshold(const ExperimentConfig &c);
void write_threshold(std::ostream &os, const std::vector<ThresholdRow> &rows);

/// ROLLNET_WORKERS if set, else the hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs task(i) for i in [0, n) on worker_count() threads. Exceptions are
/// rethrown on the caller's thread (the lowest index wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &task);

std::string to_string(ResourceTarget t);
ResourceTarget parse_resource_target(const std::string &s);

}  // namespace rollnet
