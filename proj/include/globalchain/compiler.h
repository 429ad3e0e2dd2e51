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

#ifndef GLOBALCHAIN_COMPILER_H
#define GLOBALCHAIN_COMPILER_H

#include <set>
#include <string>
#include <vector>

#include "globalchain/layout.h"
#include "globalchain/pulse.h"
#include "globalchain/qec.h"
#include "json.hpp"

namespace globalchain {

struct GadgetSpec {
    std::string name;
    int level = 0;
    nlohmann::json params = nlohmann::json::object();
};

// What the schedule is supposed to do: a target family plus the cells it acts on.
struct ClaimedAction {
    std::string family;
    nlohmann::json roles = nlohmann::json::object();
    std::string preconditions;  // e.g. "C cells in |0>"
    nlohmann::json to_json() const;
};

struct CompilationResult {
    PulseSchedule schedule;
    ClaimedAction claimed_action;
    CostRecord budget;
};

const std::vector<std::string> &gadget_names();

// Smallest chain each gadget is demonstrated and dense-checked on.
ChainLayout demo_layout(const std::string &gadget, int level = 0);

// Measured mirror period: k_mirror(n) steps of S reverse a length-n subchain (identity frame).
int k_mirror(size_t n);
constexpr size_t kMirrorTableMax = 16;

CompilationResult compile_global_S(const std::set<Species> &species, const ChainLayout &layout);
CompilationResult compile_mirror_cycle(Species species, int level, const ChainLayout &layout);
CompilationResult compile_decoupling(const std::vector<Pair> &keep, double angle);
CompilationResult compile_edge_phase(Species species, double angle);
CompilationResult compile_cz_ab(int level);
CompilationResult compile_swap_interface(Species side);
CompilationResult compile_syndrome_reset(int level, const ChainLayout &layout);
CompilationResult compile_edge_rotation(double theta, int level);
CompilationResult compile_interblock_cz(int level, const ChainLayout &layout);
CompilationResult compile_intrablock_transversal_cz(const CodeSpec &code, const ChainLayout &layout);
CompilationResult compile_ancilla_reset(int level);
CompilationResult compile_ec_round(const CodeSpec &code, int level, const ChainLayout &layout);

// Dispatcher used by the CLI. params: theta, species, species_set, keep, code.
CompilationResult compile_gadget(const GadgetSpec &spec, const ChainLayout &layout);

// Pieces shared with tests.
PulseSchedule copy_to_c();  // |a>|0>_C -> |a>|a>_C on every A-C bond
PulseSchedule swap_sequence(Species side);  // SWAP between every C and its side-species neighbour
double interblock_window_angle();  // oracle-selected B-B angle
// Interblock CZ before the local-Z dressing: copy, shuttle, B-B window at phi, uncompute.
PulseSchedule interblock_core(double phi, int level, const ChainLayout &layout);

}  // namespace globalchain

#endif
