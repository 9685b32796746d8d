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


#include "rollnet/pauli.hpp"

#include <ostream>
#include <sstream>

namespace rollnet {

bool commutes(const PauliString &a, const PauliString &b) {
    auto anti = (a.x & b.z).size() + (a.z & b.x).size();
    return anti % 2 == 0;
}

PauliString operator*(const PauliString &a, const PauliString &b) {
    // (X^xa Z^za)(X^xb Z^zb) = (-1)^{|za & xb|} X^{xa^xb} Z^{za^zb}
    PauliString out;
    out.x = a.x ^ b.x;
    out.z = a.z ^ b.z;
    auto flips = (a.z & b.x).size();
    out.phase = static_cast<std::uint8_t>((a.phase + b.phase + 2 * (flips % 2)) % 4);
    return out;
}

std::string to_string(const PauliString &p) {
    static const char *kPhase[] = {"+", "+i", "-", "-i"};
    std::ostringstream ss;
    ss << kPhase[p.phase % 4];
    auto all = p.x | p.z;
    for (auto v : all) {
        bool x = p.x.contains(v);
        bool z = p.z.contains(v);
        ss << (x && z ? "XZ" : x ? "X" : "Z") << index(v);
    }
    if (all.empty()) ss << "I";
    return ss.str();
}

std::ostream &operator<<(std::ostream &os, const PauliString &p) { return os << to_string(p); }

std::vector<PauliString> stabilizer_generators(const Graph &g) {
    std::vector<PauliString> out;
    out.reserve(g.num_vertices());
    for (auto a : g.live()) {
        PauliString k;
        k.x.insert(a);
        k.z = g.neighbors(a);
        out.push_back(std::move(k));
    }
    return out;
}

}  // namespace rollnet
