// Copyright 2026 The globalchain Authors
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

#ifndef GLOBALCHAIN_QEC_H
#define GLOBALCHAIN_QEC_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "globalchain/pauli.h"
#include "json.hpp"

namespace globalchain {

struct CodeSpec {
    std::string name;
    size_t n_physical = 0;
    size_t k_logical = 0;
    std::vector<PauliString> generators;
    std::vector<PauliString> logical_x;
    std::vector<PauliString> logical_z;
    size_t distance = 1;
    bool transversal_cz = false;
    // syndrome bits (bit g = generator g anticommutes) -> minimal-weight correction
    std::map<uint64_t, PauliString> decoder;

    uint64_t syndrome_of(const PauliString &e) const;
    size_t correctable_weight() const { return (distance - 1) / 2; }
};

CodeSpec builtin_code(const std::string &id);
CodeSpec code_from_json(const nlohmann::json &j);
nlohmann::json code_to_json(const CodeSpec &code);

// Fills the lookup table: minimal weight first, ties broken by lexicographic Pauli string.
void build_decoder(CodeSpec &code);

struct CodeCheck {
    bool ok = true;
    std::string problem;
};
CodeCheck check_code(const CodeSpec &code);

struct DecodeResult {
    PauliString correction;
    // Syndrome outside the guaranteed (weight <= (d-1)/2) domain; the correction is best effort.
    bool flagged = false;
};
DecodeResult decode(const CodeSpec &code, uint64_t syndrome);

enum class LogicalBasis { Z, X, Both };

// Does a residual Pauli (zero syndrome assumed or not) act as a logical error?
// Z basis: anticommutes with a logical Z (a flipped memory of |0>).
std::vector<bool> logical_flips(const CodeSpec &code, const PauliString &residual, LogicalBasis basis);

// Syndrome the injected error, decode, compose, test the logical action in both bases.
// True when the round leaves a logical error.
bool ec_round_reference(const CodeSpec &code, const PauliString &injected);

// Direct computation: transversal CZ between two copies maps the joint stabilizer group to itself
// and acts as logical CZ.
bool transversal_cz_preserves_code(const CodeSpec &code);

// Is p in the group generated by gens (signs ignored)?
bool in_span(const std::vector<PauliString> &gens, const PauliString &p);

}  // namespace globalchain

#endif
