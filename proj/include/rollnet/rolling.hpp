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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rollnet/graph.hpp"
#include "rollnet/gtl.hpp"
#include "rollnet/measurement.hpp"

namespace rollnet {

/// How the support of the final X measurement is picked. CarriedLast takes
/// the lowest id of the set carried in from the previous step; ForwardLast
/// takes the lowest id among the last orchestration qubit's own peers, which
/// keeps the carried set as the final rolled set.
enum class SupportPolicy { CarriedLast, ForwardLast };

enum class StopStage { AfterRolling, AfterIsolation };

struct RollingStep {
    VertexId o{};
    VertexId b0{};
    bool operator==(const RollingStep &) const = default;
};

struct ResolutionPlan {
    std::vector<RollingStep> steps;
    std::vector<VertexId> isolation;  // peers measured in Z, in order
    StopStage stop_stage = StopStage::AfterIsolation;

    /// The flat measurement sequence this plan executes.
    std::vector<MeasurementStep> measurements() const;
    bool operator==(const ResolutionPlan &) const = default;
};

/// Where the support sits relative to the measured qubit's neighbourhood.
enum class SupportSide { Forward, Carried, Outer };

/// Bookkeeping of one rolling step, all in terms of the graph just before it.
struct StepSets {
    VertexId o{};
    VertexId b0{};
    std::optional<VertexId> next;
    SupportSide side = SupportSide::Forward;
    VertexSet neighborhood;  // N_o
    VertexSet carried;       // rolled set of the previous step (or pseudo-left set)
    VertexSet non_support;   // peers on b0's side other than b0; they end up hanging off b0
    VertexSet rolled;        // Gamma: handed on to the next orchestration qubit
};

struct StepContext {
    std::optional<VertexId> next;
    VertexSet carried;
};

struct Star {
    VertexId center{};
    VertexSet leaves;
    bool operator==(const Star &) const = default;
};

struct RollingOutcome {
    Graph graph;
    std::vector<MeasurementRecord> records;
    VertexSet rolled_set;
    std::vector<VertexSet> components;
    std::vector<std::pair<VertexId, VertexId>> pairs;
    std::vector<Star> stars;
    std::vector<StepSets> steps;

    std::size_t count(Basis b) const;
};

/// Classifies b0 and computes the step's sets without touching the graph.
StepSets step_sets(const Graph &g, VertexId o, VertexId b0, const StepContext &ctx);

struct StepResult {
    Graph graph;
    MeasurementRecord record;
    StepSets sets;
};

StepResult rolling_step(const Graph &g, VertexId o, VertexId b0, const StepContext &ctx, OutcomePolicy &policy);

/// Single step on a fresh GTL. b0 in R_B rolls towards o_{i+1}, b0 in L_B
/// towards o_{i-1}. With one orchestration qubit any peer is accepted.
RollingOutcome rolling_step(const GtlState &state, VertexId o, VertexId b0);

/// Empty when all three rolling postconditions hold on `after`.
std::vector<std::string> rolling_postcondition_failures(const Graph &after, const StepSets &sets);

/// Lowest kappa_b_hat leaves, standing in for a left bridge set when n_o = 1.
VertexSet pseudo_left_set(const GtlState &state);

/// Full rolling sequence over all orchestration qubits.
ResolutionPlan plan_rolling(const GtlState &state, SupportPolicy policy = SupportPolicy::CarriedLast,
                            bool reverse = false);
/// Every rolling plan (up to `limit`) whose non-final supports are shared
/// with the next orchestration qubit and whose final support is an own peer
/// of the last one. With a single orchestration qubit any peer qualifies.
std::vector<ResolutionPlan> forward_plans(const GtlState &state, bool reverse = false,
                                          std::size_t limit = static_cast<std::size_t>(-1));
ResolutionPlan plan_max_bell(const GtlState &state, SupportPolicy policy = SupportPolicy::CarriedLast,
                             bool reverse = false);
ResolutionPlan plan_ghz(const GtlState &state, SupportPolicy policy = SupportPolicy::CarriedLast,
                        bool reverse = false);
ResolutionPlan plan_proximity_reduction(const GtlState &state, VertexId ci, VertexId cj);

/// Throws DomainError on a step that does not fit the evolving graph, and
/// InternalError if `check` is set and a rolling postcondition fails.
RollingOutcome execute_plan(const GtlState &state, const ResolutionPlan &plan, OutcomePolicy &policy,
                            bool check = true);
RollingOutcome execute_plan(const GtlState &state, const ResolutionPlan &plan, bool check = true);

RollingOutcome isolate_max_bell(const GtlState &state, SupportPolicy policy = SupportPolicy::CarriedLast);
RollingOutcome isolate_ghz(const GtlState &state, SupportPolicy policy = SupportPolicy::CarriedLast);
RollingOutcome centralized_resolution(const GtlState &state, Basis basis);

/// Fewest orchestration qubits on any shortest path (0 when adjacent).
/// Throws InternalError if shortest paths disagree.
std::size_t orchestration_proximity(const Graph &g, const VertexSet &orch, VertexId u, VertexId v);

std::size_t schmidt_upper_bound(const Graph &g);
std::size_t schmidt_upper_bound(const GtlState &state);

/// Components, pairs and stars of a graph. Two-vertex stars prefer a vertex
/// of `preferred_centers` as center.
void summarize_components(RollingOutcome &out, const VertexSet &preferred_centers = {});

std::string to_string(StopStage s);
StopStage parse_stop_stage(const std::string &s);
std::string to_string(SupportPolicy p);
SupportPolicy parse_support_policy(const std::string &s);

}  // namespace rollnet
