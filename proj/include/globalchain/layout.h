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

#ifndef GLOBALCHAIN_LAYOUT_H
#define GLOBALCHAIN_LAYOUT_H

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace globalchain {

enum class Species : uint8_t { A = 0, B = 1, C = 2 };
enum class CellRole : uint8_t { Data, Syndrome, Ancilla, Wire, Reset };
enum class NodeKind : uint8_t { Chain, ABlock, BBlock, Interconnect, CCell, Leaf };

char species_char(Species s);
Species species_from_char(char c);
std::string role_name(CellRole r);
CellRole role_from_name(const std::string &s);
std::string kind_name(NodeKind k);
NodeKind kind_from_name(const std::string &s);

struct LayoutConfig {
    size_t n_comp = 4;
    int level = 0;
    size_t blocks = 1;
    std::string code_id = "bare";
};

struct Interval {
    size_t lo = 0;
    size_t hi = 0;
    size_t size() const { return hi - lo; }
    bool operator==(const Interval &o) const = default;
};

struct LayoutNode {
    NodeKind kind = NodeKind::Leaf;
    int level = 0;
    Interval span;
    std::vector<LayoutNode> children;
};

struct Cell {
    Species species;
    CellRole role;
    bool operator==(const Cell &o) const = default;
};

struct ChainLayout {
    LayoutConfig config;
    std::vector<Cell> cells;
    LayoutNode root;
    // Chains assembled from a raw species string (test fixtures, CLI probes) skip the
    // recursion checks.
    bool custom = false;

    size_t size() const { return cells.size(); }
    std::string species_string() const;
    std::vector<size_t> cells_of(Species s) const;
    std::vector<size_t> cells_with_role(CellRole r) const;
};

// Interior role map for one computational block: (data, syndrome) cells per half-block.
struct RoleScheme {
    size_t data_per_half;
    size_t syndrome_per_half;
    size_t min_n_comp() const { return 2 * (data_per_half + syndrome_per_half); }
};
RoleScheme role_scheme(const std::string &code_id);
std::vector<CellRole> block_roles(const std::string &code_id, size_t n_comp);

size_t block_length(size_t n_comp, int level);         // len(A_k) == len(B_k)
size_t interconnect_length(size_t n_comp, int level);  // len(D_k)

ChainLayout build_layout(const LayoutConfig &config);
ChainLayout make_chain(const std::string &species);

std::pair<Species, CellRole> cell_at(const ChainLayout &layout, size_t index);

// Level is ignored for C cells and leaves.
std::vector<Interval> spans_of(const ChainLayout &layout, NodeKind kind, int level);

// Maximal runs of one species (the subchains the global automaton acts on).
std::vector<Interval> species_runs(const ChainLayout &layout, Species s);

struct LayoutReport {
    bool pass = true;
    std::string violation;
};
LayoutReport verify_layout_invariants(const ChainLayout &layout);

nlohmann::json layout_to_json(const ChainLayout &layout);
ChainLayout layout_from_json(const nlohmann::json &j);

}  // namespace globalchain

#endif
