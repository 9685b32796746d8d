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


#include "rollnet/measurement.hpp"

#include <sstream>

#include "rollnet/errors.hpp"

namespace rollnet {

OutcomePolicy OutcomePolicy::seeded(std::uint64_t seed) {
    OutcomePolicy p;
    p.rng_.emplace(seed);
    return p;
}

Outcome OutcomePolicy::next(bool deterministic_plus) {
    if (deterministic_plus || !rng_) return Outcome::Plus;
    return ((*rng_)() & 1U) ? Outcome::Minus : Outcome::Plus;
}

namespace {

void check_args(const Graph &g, VertexId a, Basis basis, std::optional<VertexId> support) {
    if (!g.is_live(a)) {
        std::ostringstream ss;
        ss << "measure: vertex " << a << " is not live";
        throw DomainError(ss.str());
    }
    const auto &na = g.neighbors(a);
    if (basis == Basis::X && !na.empty()) {
        if (!support) throw DomainError("measure: X basis needs a support vertex");
        if (!na.contains(*support)) {
            std::ostringstream ss;
            ss << "measure: support " << *support << " is not a neighbour of " << a;
            throw DomainError(ss.str());
        }
    }
}

void push_all(std::vector<CorrectionOp> &out, const VertexSet &qs, Correction c) {
    for (auto q : qs) out.push_back({q, c});
}

}  // namespace

Graph measured_graph(const Graph &g, VertexId a, Basis basis, std::optional<VertexId> support) {
    check_args(g, a, basis, support);
    Graph out = g;
    switch (basis) {
        case Basis::Z:
            out.remove_vertex(a);
            break;
        case Basis::Y:
            out.complement_neighborhood(a);
            out.remove_vertex(a);
            break;
        case Basis::X:
            if (out.neighbors(a).empty()) {
                out.remove_vertex(a);
                break;
            }
            out.complement_neighborhood(*support);
            out.complement_neighborhood(a);
            out.remove_vertex(a);
            out.complement_neighborhood(*support);
            break;
    }
    return out;
}

std::vector<CorrectionOp> corrections_for(const Graph &g, VertexId a, Basis basis,
                                          std::optional<VertexId> support, Outcome outcome) {
    check_args(g, a, basis, support);
    const auto &na = g.neighbors(a);
    std::vector<CorrectionOp> out;
    bool plus = outcome == Outcome::Plus;
    switch (basis) {
        case Basis::Z:
            if (!plus) push_all(out, na, Correction::Z);
            break;
        case Basis::Y:
            push_all(out, na, plus ? Correction::RotZPos : Correction::RotZNeg);
            break;
        case Basis::X: {
            if (na.empty()) break;
            auto b0 = *support;
            const auto &nb = g.neighbors(b0);
            out.push_back({b0, plus ? Correction::RotYNeg : Correction::RotYPos});
            VertexSet zs = plus ? na - nb : nb - na;
            zs.erase(b0);
            zs.erase(a);
            push_all(out, zs, Correction::Z);
            break;
        }
    }
    return out;
}

MeasureResult measure_pauli(const Graph &g, VertexId a, Basis basis, std::optional<VertexId> support,
                            OutcomePolicy &policy) {
    check_args(g, a, basis, support);
    bool isolated_x = basis == Basis::X && g.neighbors(a).empty();
    if (isolated_x) support.reset();
    MeasureResult r{measured_graph(g, a, basis, support), {}};
    r.record.measured = a;
    r.record.basis = basis;
    r.record.support_choice = basis == Basis::X ? support : std::nullopt;
    r.record.outcome = policy.next(isolated_x);
    r.record.corrections = corrections_for(g, a, basis, support, r.record.outcome);
    return r;
}

MeasureResult measure_pauli(const Graph &g, VertexId a, Basis basis, std::optional<VertexId> support) {
    OutcomePolicy forced;
    return measure_pauli(g, a, basis, support, forced);
}

char basis_char(Basis b) {
    switch (b) {
        case Basis::X:
            return 'X';
        case Basis::Y:
            return 'Y';
        case Basis::Z:
            return 'Z';
    }
    return '?';
}

Basis parse_basis(const std::string &s) {
    if (s == "X" || s == "x") return Basis::X;
    if (s == "Y" || s == "y") return Basis::Y;
    if (s == "Z" || s == "z") return Basis::Z;
    throw DomainError("unknown basis '" + s + "'");
}

std::string to_string(Correction c) {
    switch (c) {
        case Correction::Z:
            return "Z";
        case Correction::RotZPos:
            return "RZ+";
        case Correction::RotZNeg:
            return "RZ-";
        case Correction::RotYPos:
            return "RY+";
        case Correction::RotYNeg:
            return "RY-";
    }
    return "?";
}

Correction parse_correction(const std::string &s) {
    for (auto c : {Correction::Z, Correction::RotZPos, Correction::RotZNeg, Correction::RotYPos, Correction::RotYNeg}) {
        if (to_string(c) == s) return c;
    }
    throw DomainError("unknown correction tag '" + s + "'");
}

}  // namespace rollnet
