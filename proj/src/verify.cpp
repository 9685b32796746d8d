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


#include "rollnet/verify.hpp"

#include <algorithm>
#include <exception>
#include <limits>

#include <fmt/format.h>

#include "rollnet/crosscheck.hpp"
#include "rollnet/errors.hpp"

namespace rollnet {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

void structure_suite(const VerifyBounds &b, VerifyReport &rep) {
    for (std::uint32_t kb = 1; kb <= b.max_kappa_b_hat; ++kb) {
        for (std::uint32_t no = 1; no <= b.max_n_o; ++no) {
            VerifyCheck c{"structure", fmt::format("GTL({},*,{})", kb, no), true, ""};
            for (std::uint32_t kc : {2 * kb, 2 * kb + 1}) {
                GtlParams params{kb, kc, no};
                auto s = build_gtl(params);
                auto r = validate_gtl(s.graph, s.orch, s.peers, kb);
                if (!r.ok()) {
                    c.pass = false;
                    c.detail += describe(r);
                } else if (!(*r.params == params)) {
                    c.pass = false;
                    c.detail += "recovered " + to_string(*r.params) + " instead of " + to_string(params) + "; ";
                }
                if (s.graph.num_vertices() != params.num_qubits()) {
                    c.pass = false;
                    c.detail += "qubit count mismatch; ";
                }
                if (gf2_rank(s.graph) != 2 * no) {
                    c.pass = false;
                    c.detail += fmt::format("rank {} for {}; ", gf2_rank(s.graph), to_string(params));
                }
            }
            rep.checks.push_back(std::move(c));
        }
    }
}

std::string rolling_failures(const GtlState &s) {
    std::string bad;
    const auto kb = s.params.kappa_b_hat, no = s.params.n_o;
    for (auto policy : {SupportPolicy::CarriedLast, SupportPolicy::ForwardLast}) {
        for (bool reverse : {false, true}) {
            if (reverse && no == 1) continue;
            const auto tag = fmt::format("{}{}", to_string(policy), reverse ? "/reverse" : "");
            try {
                execute_plan(s, plan_rolling(s, policy, reverse), true);
                // With one bridge per pair every star is a lone center.
                if (kb < 2) continue;
                auto ghz = execute_plan(s, plan_ghz(s, policy, reverse), true);
                if (ghz.stars.size() != no) bad += fmt::format("{}: {} GHZ stars; ", tag, ghz.stars.size());
                auto bell = execute_plan(s, plan_max_bell(s, policy, reverse), true);
                const std::size_t want_z = kb + no * (kb - 2);
                if (bell.pairs.size() != no || bell.components.size() != no || bell.count(Basis::X) != no ||
                    bell.count(Basis::Z) != want_z || bell.count(Basis::Y) != 0) {
                    bad += fmt::format("{}: {} pairs, {} X, {} Z (want {} pairs, {} Z); ", tag, bell.pairs.size(),
                                       bell.count(Basis::X), bell.count(Basis::Z), no, want_z);
                }
                if (schmidt_upper_bound(s) != bell.pairs.size()) {
                    bad += fmt::format("{}: rank/2 = {} but {} pairs; ", tag, schmidt_upper_bound(s), bell.pairs.size());
                }
            } catch (const std::exception &e) {
                bad += tag + ": " + e.what() + "; ";
            }
        }
    }
    return bad;
}

void rolling_suite(const VerifyBounds &b, VerifyReport &rep) {
    for (std::uint32_t kb = 1; kb <= b.max_kappa_b_hat; ++kb) {
        for (std::uint32_t no = 1; no <= b.max_n_o; ++no) {
            auto s = build_gtl({kb, 2 * kb, no});
            auto bad = rolling_failures(s);
            rep.checks.push_back({"rolling", to_string(s.params), bad.empty(), bad});
        }
    }
}

bool maps_equal(std::vector<NoiseMap> a, std::vector<NoiseMap> b) {
    auto by_origin = [](const NoiseMap &x, const NoiseMap &y) { return index(x.origin) < index(y.origin); };
    std::sort(a.begin(), a.end(), by_origin);
    std::sort(b.begin(), b.end(), by_origin);
    return a == b;
}

void nsf_suite(const VerifyBounds &b, VerifyReport &rep) {
    // Closed forms against stepwise propagation; p = 3/4 keeps every weight exact.
    const double p = 0.75;
    for (std::uint32_t kb = 2; kb <= std::min(3u, b.max_kappa_b_hat); ++kb) {
        for (std::uint32_t no = 1; no <= std::min(4u, b.max_n_o); ++no) {
            auto s = build_gtl({kb, 2 * kb, no});
            VerifyCheck c{"nsf", fmt::format("closed form {}", to_string(s.params)), true, ""};
            std::size_t n = 0;
            for (bool reverse : {false, true}) {
                if (reverse && no == 1) continue;
                for (const auto &plan : forward_plans(s, reverse)) {
                    NoiseState ns{s.graph, {}};
                    for (auto v : s.graph.live()) ns.maps.push_back(depolarizing_map(s.graph, v, p));
                    if (!maps_equal(closed_form_maps(s, plan, p), propagate(ns, plan).maps)) {
                        c.pass = false;
                        c.detail += "mismatch on plan " + io::to_json(plan).dump() + "; ";
                    }
                    ++n;
                }
            }
            if (n < 3) {
                c.pass = false;
                c.detail += fmt::format("only {} support sequences", n);
            }
            if (c.pass) c.detail = fmt::format("{} support sequences", n);
            rep.checks.push_back(std::move(c));
        }
    }
    // Dense crosscheck on every instance small enough.
    for (std::uint32_t kb = 2; kb <= b.max_kappa_b_hat; ++kb) {
        for (std::uint32_t no = 1; no <= b.max_n_o; ++no) {
            GtlParams params{kb, 2 * kb, no};
            if (params.num_qubits() > std::min(b.max_qubits, kCrosscheckMaxQubits)) continue;
            auto s = build_gtl(params);
            std::vector<std::pair<std::string, ResolutionPlan>> plans{{"ghz", plan_ghz(s)}, {"bell", plan_max_bell(s)}};
            for (const auto &[name, plan] : plans) {
                VerifyCheck c{"nsf", fmt::format("crosscheck {} {}", to_string(params), name), true, ""};
                double worst = 0;
                for (double pp : {0.7, 0.9, 1.0}) {
                    for (double T : {1.0, 10.0, kInf}) {
                        auto r = crosscheck(s, plan, {pp, T, 1.0});
                        worst = std::max(worst, r.max_delta);
                        if (!r.pass) {
                            c.pass = false;
                            c.detail += fmt::format("p={} T={}: delta {} {}; ", pp, T, r.max_delta, r.error);
                        }
                    }
                }
                if (c.pass) c.detail = fmt::format("max delta {:.3g}", worst);
                rep.checks.push_back(std::move(c));
            }
        }
    }
}

void input_checks(VerifyScope scope, const io::GtlDocument &doc, VerifyReport &rep) {
    auto v = io::validate(doc);
    std::string witnesses;
    if (!v.ok()) witnesses = describe(v);
    if (scope == VerifyScope::Structure || scope == VerifyScope::All) {
        rep.checks.push_back({"structure", "input GTL", v.ok(), witnesses});
    }
    if (scope == VerifyScope::Rolling || scope == VerifyScope::All) {
        if (!v.ok()) {
            rep.checks.push_back({"rolling", "input GTL", false, witnesses});
            return;
        }
        std::optional<std::uint32_t> hint;
        if (doc.params) hint = doc.params->kappa_b_hat;
        auto s = gtl_from_parts(doc.graph, doc.orch, doc.peers, hint);
        if (!s.params.specialized()) {
            rep.checks.push_back({"rolling", "input GTL", false, "not specialized: " + to_string(s.params)});
            return;
        }
        auto bad = rolling_failures(s);
        rep.checks.push_back({"rolling", "input GTL", bad.empty(), bad});
    }
}

}  // namespace

bool VerifyReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck &c) { return c.pass; });
}

VerifyReport verify(VerifyScope scope, const VerifyBounds &bounds, const std::optional<io::GtlDocument> &input) {
    VerifyReport rep;
    if (input) {
        input_checks(scope, *input, rep);
    } else {
        if (scope == VerifyScope::Structure || scope == VerifyScope::All) structure_suite(bounds, rep);
        if (scope == VerifyScope::Rolling || scope == VerifyScope::All) rolling_suite(bounds, rep);
    }
    if (scope == VerifyScope::Nsf || scope == VerifyScope::All) nsf_suite(bounds, rep);
    return rep;
}

std::string to_string(VerifyScope s) {
    switch (s) {
        case VerifyScope::Structure: return "structure";
        case VerifyScope::Rolling: return "rolling";
        case VerifyScope::Nsf: return "nsf";
        case VerifyScope::All: return "all";
    }
    return "?";
}

VerifyScope parse_verify_scope(const std::string &s) {
    if (s == "structure") return VerifyScope::Structure;
    if (s == "rolling") return VerifyScope::Rolling;
    if (s == "nsf") return VerifyScope::Nsf;
    if (s == "all") return VerifyScope::All;
    throw DomainError("unknown scope \"" + s + "\" (expected structure, rolling, nsf or all)");
}

nlohmann::json to_json(const VerifyReport &r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto &c : r.checks) {
        checks.push_back({{"suite", c.suite}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    return {{"ok", r.ok()}, {"checks", std::move(checks)}};
}

}  // namespace rollnet
