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
#include <vector>

#include "json.hpp"
#include "rollnet/crosscheck.hpp"
#include "rollnet/graph.hpp"
#include "rollnet/gtl.hpp"
#include "rollnet/nsf.hpp"
#include "rollnet/rolling.hpp"

namespace rollnet::io {

using nlohmann::json;

/// Vertex ids joined by '-', e.g. "3-8-11".
std::string resource_id(const VertexSet &s);

/// Reals that may be infinite are written as the string "inf".
json real_to_json(double x);
double real_from_json(const json &j, const std::string &what);

/// {"n", "edges", "labels"}; "live" is added when some ids below n are retired.
json to_json(const Graph &g);
Graph graph_from_json(const json &j);

/// Graph fields plus {"orch", "peers", "params"}.
json to_json(const GtlState &s);

/// The raw pieces of a GTL document, before validation.
struct GtlDocument {
    Graph graph;
    std::vector<VertexId> orch;
    VertexSet peers;
    std::optional<GtlParams> params;
};
GtlDocument gtl_document_from_json(const json &j);
ValidationReport validate(const GtlDocument &doc);
/// Throws DomainError when the document is not a GTL or disagrees with its params.
GtlState gtl_from_json(const json &j);

json to_json(const ResolutionPlan &p);
ResolutionPlan plan_from_json(const json &j);

json to_json(const NoiseMap &m);
NoiseMap noise_map_from_json(const json &j);

json to_json(const MeasurementRecord &r);
json outcome_report(const RollingOutcome &out);
/// Resource id -> fidelity.
json fidelity_report(const NoiseState &ns);
json to_json(const CrosscheckReport &r);
json to_json(const ValidationReport &r);

/// Reads and parses a JSON file; DomainError on I/O or syntax errors.
json load_json(const std::string &path);
/// Pretty-printed with a trailing newline.
std::string dump(const json &j);

}  // namespace rollnet::io
