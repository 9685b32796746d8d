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

#include "rollnet/io.hpp"

namespace rollnet {

enum class VerifyScope { Structure, Rolling, Nsf, All };

struct VerifyBounds {
    std::uint32_t max_kappa_b_hat = 4;
    std::uint32_t max_n_o = 6;
    std::size_t max_qubits = 10;  // for the dense crosscheck
};

struct VerifyCheck {
    std::string suite;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool ok() const;
};

/// Runs the property suites within the bounds. With an input document the
/// structure and rolling suites also run on it; an invalid document fails
/// with its constraint witnesses.
VerifyReport verify(VerifyScope scope, const VerifyBounds &bounds, const std::optional<io::GtlDocument> &input = {});

std::string to_string(VerifyScope s);
VerifyScope parse_verify_scope(const std::string &s);
nlohmann::json to_json(const VerifyReport &r);

}  // namespace rollnet
