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


#include "rollnet/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "rollnet/errors.hpp"

namespace rollnet::io {

namespace {

std::vector<std::uint32_t> ids(const VertexSet &s) {
    std::vector<std::uint32_t> out;
    for (auto v : s) out.push_back(index(v));
    return out;
}

VertexId id_from(const json &j, const char *what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
        throw DomainError(std::string(what) + ": expected a vertex id, got " + j.dump());
    }
    return vertex(j.get<std::uint32_t>());
}

VertexSet set_from(const json &j, const char *what) {
    if (!j.is_array()) throw DomainError(std::string(what) + ": expected an array of vertex ids");
    VertexSet s;
    for (const auto &x : j) s.insert(id_from(x, what));
    return s;
}

const json &field(const json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

// nlohmann throws its own exception types; callers only see DomainError.
template <typename F>
auto guarded(const char *what, F &&f) {
    try {
        return f();
    } catch (const json::exception &e) {
        throw DomainError(std::string(what) + ": " + e.what());
    }
}

}  // namespace

std::string resource_id(const VertexSet &s) {
    std::string out;
    for (auto v : s) {
        if (!out.empty()) out += '-';
        out += std::to_string(index(v));
    }
    return out;
}

json real_to_json(double x) {
    if (std::isinf(x) && x > 0) return "inf";
    return x;
}

double real_from_json(const json &j, const std::string &what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "Infinity")) {
        return std::numeric_limits<double>::infinity();
    }
    throw DomainError(what + ": expected a number or \"inf\", got " + j.dump());
}

json to_json(const Graph &g) {
    json j;
    j["n"] = g.id_bound();
    json edges = json::array();
    for (auto [u, v] : g.edges()) edges.push_back({index(u), index(v)});
    j["edges"] = std::move(edges);
    json labels = json::object();
    for (const auto &[v, s] : g.labels()) labels[std::to_string(index(v))] = s;
    j["labels"] = std::move(labels);
    if (g.num_vertices() != g.id_bound()) j["live"] = ids(g.live());
    return j;
}

Graph graph_from_json(const json &j) {
    return guarded("graph", [&] {
        auto n = field(j, "n").get<std::size_t>();
        Graph g(n);
        for (const auto &e : field(j, "edges")) {
            if (!e.is_array() || e.size() != 2) throw DomainError("graph: each edge must be a pair, got " + e.dump());
            auto u = id_from(e[0], "edge"), v = id_from(e[1], "edge");
            if (index(u) >= n || index(v) >= n) throw DomainError("graph: edge " + e.dump() + " out of range");
            if (g.has_edge(u, v)) throw DomainError("graph: duplicate edge " + e.dump());
            g.add_edge(u, v);
        }
        if (j.contains("live")) {
            auto live = set_from(j.at("live"), "live");
            for (std::size_t i = 0; i < n; ++i) {
                auto v = vertex(static_cast<std::uint32_t>(i));
                if (!live.contains(v)) {
                    if (!g.neighbors(v).empty()) throw DomainError("graph: retired vertex " + std::to_string(i) + " has edges");
                    g.remove_vertex(v);
                }
            }
        }
        if (j.contains("labels")) {
            for (const auto &[k, s] : j.at("labels").items()) {
                std::size_t pos = 0;
                unsigned long id = 0;
                try {
                    id = std::stoul(k, &pos);
                } catch (const std::exception &) {
                    pos = 0;
                }
                if (pos != k.size() || id >= n) throw DomainError("graph: bad label key \"" + k + "\"");
                auto v = vertex(static_cast<std::uint32_t>(id));
                if (g.is_live(v)) g.set_label(v, s.get<std::string>());
            }
        }
        return g;
    });
}

json to_json(const GtlState &s) {
    auto j = to_json(s.graph);
    json orch = json::array();
    for (auto o : s.orch) orch.push_back(index(o));
    j["orch"] = std::move(orch);
    j["peers"] = ids(s.peers);
    j["params"] = {{"kappa_b_hat", s.params.kappa_b_hat}, {"kappa_c", s.params.kappa_c}, {"n_o", s.params.n_o}};
    return j;
}

GtlDocument gtl_document_from_json(const json &j) {
    return guarded("gtl", [&] {
        GtlDocument doc;
        doc.graph = graph_from_json(j);
        for (const auto &o : field(j, "orch")) doc.orch.push_back(id_from(o, "orch"));
        doc.peers = set_from(field(j, "peers"), "peers");
        if (j.contains("params")) {
            const auto &p = j.at("params");
            doc.params = GtlParams{field(p, "kappa_b_hat").get<std::uint32_t>(), field(p, "kappa_c").get<std::uint32_t>(),
                                   field(p, "n_o").get<std::uint32_t>()};
        }
        return doc;
    });
}

ValidationReport validate(const GtlDocument &doc) {
    std::optional<std::uint32_t> hint;
    if (doc.params) hint = doc.params->kappa_b_hat;
    auto rep = validate_gtl(doc.graph, doc.orch, doc.peers, hint);
    if (rep.params && doc.params && !(*rep.params == *doc.params)) {
        rep.violations.push_back({"params", "declared " + to_string(*doc.params) + " but the graph is " +
                                                to_string(*rep.params), {}});
    }
    return rep;
}

GtlState gtl_from_json(const json &j) {
    auto doc = gtl_document_from_json(j);
    auto rep = validate(doc);
    if (!rep.ok()) throw DomainError("not a valid GTL:\n" + describe(rep));
    std::optional<std::uint32_t> hint;
    if (doc.params) hint = doc.params->kappa_b_hat;
    return gtl_from_parts(doc.graph, doc.orch, doc.peers, hint);
}

json to_json(const ResolutionPlan &p) {
    json steps = json::array();
    for (const auto &s : p.steps) steps.push_back({index(s.o), index(s.b0)});
    json iso = json::array();
    for (auto v : p.isolation) iso.push_back(index(v));
    return {{"steps", std::move(steps)}, {"isolation", std::move(iso)}, {"stop_stage", to_string(p.stop_stage)}};
}

ResolutionPlan plan_from_json(const json &j) {
    return guarded("plan", [&] {
        ResolutionPlan p;
        for (const auto &s : field(j, "steps")) {
            if (!s.is_array() || s.size() != 2) throw DomainError("plan: each step must be [o, b0], got " + s.dump());
            p.steps.push_back({id_from(s[0], "step"), id_from(s[1], "step")});
        }
        if (j.contains("isolation")) {
            for (const auto &v : j.at("isolation")) p.isolation.push_back(id_from(v, "isolation"));
        }
        if (j.contains("stop_stage")) p.stop_stage = parse_stop_stage(j.at("stop_stage").get<std::string>());
        return p;
    });
}

json to_json(const NoiseMap &m) {
    json br = json::array();
    for (const auto &b : m.branches) br.push_back({{"p", b.probability}, {"support", ids(b.support)}});
    return {{"origin", index(m.origin)}, {"branches", std::move(br)}};
}

NoiseMap noise_map_from_json(const json &j) {
    return guarded("noise map", [&] {
        std::vector<Branch> br;
        for (const auto &b : field(j, "branches")) {
            br.push_back({field(b, "p").get<double>(), set_from(field(b, "support"), "support")});
        }
        return make_map(id_from(field(j, "origin"), "origin"), std::move(br));
    });
}

json to_json(const MeasurementRecord &r) {
    json corr = json::array();
    for (const auto &c : r.corrections) corr.push_back({index(c.qubit), to_string(c.tag)});
    json j = {{"measured", index(r.measured)},
              {"basis", std::string(1, basis_char(r.basis))},
              {"support", nullptr},
              {"outcome", r.outcome == Outcome::Plus ? "+" : "-"},
              {"corrections", std::move(corr)}};
    if (r.support_choice) j["support"] = index(*r.support_choice);
    return j;
}

json outcome_report(const RollingOutcome &out) {
    json comps = json::array();
    for (const auto &c : out.components) comps.push_back(ids(c));
    json pairs = json::array();
    for (auto [a, b] : out.pairs) pairs.push_back({index(a), index(b)});
    json stars = json::array();
    for (const auto &s : out.stars) stars.push_back({{"center", index(s.center)}, {"leaves", ids(s.leaves)}});
    json recs = json::array();
    for (const auto &r : out.records) recs.push_back(to_json(r));
    return {{"components", std::move(comps)},
            {"pairs", std::move(pairs)},
            {"stars", std::move(stars)},
            {"measurements", {{"X", out.count(Basis::X)}, {"Y", out.count(Basis::Y)}, {"Z", out.count(Basis::Z)}}},
            {"records", std::move(recs)},
            {"graph", to_json(out.graph)}};
}

json fidelity_report(const NoiseState &ns) {
    json j = json::object();
    for (const auto &c : ns.graph.components()) {
        if (c.size() >= 2) j[resource_id(c)] = fidelity(ns, c);
    }
    return j;
}

json to_json(const CrosscheckReport &r) {
    json entries = json::array();
    for (const auto &e : r.entries) {
        entries.push_back({{"target", resource_id(e.target)}, {"nsf", e.nsf}, {"dense", e.dense}, {"delta", e.delta}});
    }
    json j = {{"p", r.noise.p},
              {"T_ms", real_to_json(r.noise.T_ms)},
              {"t_ms", r.noise.t_ms},
              {"method", to_string(r.method)},
              {"entries", std::move(entries)},
              {"max_delta", r.max_delta},
              {"pass", r.pass}};
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

json to_json(const ValidationReport &r) {
    json v = json::array();
    for (const auto &x : r.violations) {
        json w = json::array();
        for (auto id : x.witnesses) w.push_back(index(id));
        v.push_back({{"constraint", x.constraint}, {"detail", x.detail}, {"witnesses", std::move(w)}});
    }
    json j = {{"ok", r.ok()}, {"violations", std::move(v)}, {"params", nullptr}};
    if (r.params) {
        j["params"] = {{"kappa_b_hat", r.params->kappa_b_hat}, {"kappa_c", r.params->kappa_c}, {"n_o", r.params->n_o}};
    }
    return j;
}

json load_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw DomainError(path + ": " + e.what());
    }
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

}  // namespace rollnet::io
