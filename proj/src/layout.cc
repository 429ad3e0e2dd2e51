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

#include "globalchain/layout.h"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace globalchain {

char species_char(Species s) {
    switch (s) {
        case Species::A:
            return 'A';
        case Species::B:
            return 'B';
        case Species::C:
            return 'C';
    }
    return '?';
}

Species species_from_char(char c) {
    switch (c) {
        case 'A':
            return Species::A;
        case 'B':
            return Species::B;
        case 'C':
            return Species::C;
    }
    throw std::invalid_argument(std::string("unknown species '") + c + "'");
}

static const char *const ROLE_NAMES[] = {"data", "syndrome", "ancilla", "wire", "reset"};
static const char *const KIND_NAMES[] = {"chain", "A-block", "B-block", "interconnect", "C-cell", "leaf-spin"};

std::string role_name(CellRole r) {
    return ROLE_NAMES[(int)r];
}

CellRole role_from_name(const std::string &s) {
    for (int k = 0; k < 5; k++) {
        if (s == ROLE_NAMES[k]) {
            return (CellRole)k;
        }
    }
    throw std::invalid_argument("unknown cell role '" + s + "'");
}

std::string kind_name(NodeKind k) {
    return KIND_NAMES[(int)k];
}

NodeKind kind_from_name(const std::string &s) {
    for (int k = 0; k < 6; k++) {
        if (s == KIND_NAMES[k]) {
            return (NodeKind)k;
        }
    }
    throw std::invalid_argument("unknown node kind '" + s + "'");
}

std::string ChainLayout::species_string() const {
    std::string out;
    out.reserve(cells.size());
    for (const auto &c : cells) {
        out.push_back(species_char(c.species));
    }
    return out;
}

std::vector<size_t> ChainLayout::cells_of(Species s) const {
    std::vector<size_t> out;
    for (size_t k = 0; k < cells.size(); k++) {
        if (cells[k].species == s) {
            out.push_back(k);
        }
    }
    return out;
}

std::vector<size_t> ChainLayout::cells_with_role(CellRole r) const {
    std::vector<size_t> out;
    for (size_t k = 0; k < cells.size(); k++) {
        if (cells[k].role == r) {
            out.push_back(k);
        }
    }
    return out;
}

RoleScheme role_scheme(const std::string &code_id) {
    if (code_id == "bare") {
        return {1, 0};
    }
    if (code_id == "bare_s") {
        return {1, 1};
    }
    if (code_id == "steane") {
        return {7, 6};
    }
    // Codes loaded from a file: "custom-<data>-<syndrome>".
    unsigned d = 0, sy = 0;
    if (code_id.rfind("custom-", 0) == 0 && std::sscanf(code_id.c_str(), "custom-%u-%u", &d, &sy) == 2 && d > 0) {
        return {d, sy};
    }
    throw std::invalid_argument("unknown code_id '" + code_id + "'");
}

std::vector<CellRole> block_roles(const std::string &code_id, size_t n_comp) {
    RoleScheme rs = role_scheme(code_id);
    if (n_comp < rs.min_n_comp()) {
        throw std::invalid_argument(
            "n_comp=" + std::to_string(n_comp) + " too small for code '" + code_id + "' (needs " +
            std::to_string(rs.min_n_comp()) + ")");
    }
    std::vector<CellRole> roles(n_comp, CellRole::Ancilla);
    // bare and bare_s fill the interior with data; real codes leave spare cells as ancillas.
    CellRole filler = rs.syndrome_per_half > 1 ? CellRole::Ancilla : CellRole::Data;
    for (size_t k = 0; k < n_comp / 2; k++) {
        CellRole r;
        if (k < rs.syndrome_per_half) {
            r = CellRole::Syndrome;
        } else if (k < rs.syndrome_per_half + rs.data_per_half) {
            r = CellRole::Data;
        } else {
            r = filler;
        }
        roles[k] = r;
        roles[n_comp - 1 - k] = r;
    }
    if (n_comp % 2 == 1) {
        roles[n_comp / 2] = filler;
    }
    return roles;
}

size_t block_length(size_t n, int level) {
    if (level < 0) {
        return 2;
    }
    if (level == 0) {
        return n;
    }
    return n * block_length(n, level - 1) + (n - 1) * interconnect_length(n, level - 1);
}

size_t interconnect_length(size_t n, int level) {
    return 2 + block_length(n, level - 1);
}

namespace {

struct Builder {
    const LayoutConfig &cfg;
    std::vector<CellRole> roles0;
    std::vector<Cell> cells;

    LayoutNode leaf(Species s, CellRole r) {
        LayoutNode node;
        node.kind = s == Species::C ? NodeKind::CCell : NodeKind::Leaf;
        node.level = 0;
        node.span = {cells.size(), cells.size() + 1};
        cells.push_back({s, r});
        return node;
    }

    LayoutNode block(Species s, int k) {
        Species other = s == Species::A ? Species::B : Species::A;
        LayoutNode node;
        node.kind = s == Species::A ? NodeKind::ABlock : NodeKind::BBlock;
        node.level = k;
        node.span.lo = cells.size();
        if (k < 0) {
            CellRole r = s == Species::B ? CellRole::Wire : CellRole::Ancilla;
            node.children.push_back(leaf(s, r));
            node.children.push_back(leaf(s, r));
        } else if (k == 0) {
            for (size_t i = 0; i < cfg.n_comp; i++) {
                node.children.push_back(leaf(s, roles0[i]));
            }
        } else {
            for (size_t i = 0; i < cfg.n_comp; i++) {
                if (i) {
                    node.children.push_back(interconnect(other, k - 1));
                }
                node.children.push_back(block(s, k - 1));
            }
        }
        node.span.hi = cells.size();
        return node;
    }

    // D_k = C (inner block of level k-1) C
    LayoutNode interconnect(Species inner, int k) {
        LayoutNode node;
        node.kind = NodeKind::Interconnect;
        node.level = k;
        node.span.lo = cells.size();
        node.children.push_back(leaf(Species::C, CellRole::Reset));
        node.children.push_back(block(inner, k - 1));
        node.children.push_back(leaf(Species::C, CellRole::Reset));
        node.span.hi = cells.size();
        return node;
    }
};

}  // namespace

ChainLayout build_layout(const LayoutConfig &config) {
    if (config.level < 0) {
        throw std::invalid_argument("level must be >= 0");
    }
    if (config.blocks < 1) {
        throw std::invalid_argument("blocks must be >= 1");
    }
    if (config.n_comp < 1) {
        throw std::invalid_argument("n_comp must be >= 1");
    }
    Builder b{config, block_roles(config.code_id, config.n_comp), {}};
    ChainLayout out;
    out.config = config;
    out.root.kind = NodeKind::Chain;
    out.root.level = config.level;
    for (size_t i = 0; i < config.blocks; i++) {
        if (i) {
            out.root.children.push_back(b.interconnect(Species::B, config.level));
        }
        out.root.children.push_back(b.block(Species::A, config.level));
    }
    out.root.span = {0, b.cells.size()};
    out.cells = std::move(b.cells);
    return out;
}

ChainLayout make_chain(const std::string &species) {
    ChainLayout out;
    out.custom = true;
    out.config.n_comp = species.size();
    out.config.code_id = "bare";
    out.root.kind = NodeKind::Chain;
    out.root.span = {0, species.size()};
    for (size_t k = 0; k < species.size(); k++) {
        Species s = species_from_char(species[k]);
        CellRole r = s == Species::A ? CellRole::Data : s == Species::B ? CellRole::Wire : CellRole::Reset;
        out.cells.push_back({s, r});
        LayoutNode leaf;
        leaf.kind = s == Species::C ? NodeKind::CCell : NodeKind::Leaf;
        leaf.span = {k, k + 1};
        out.root.children.push_back(leaf);
    }
    return out;
}

std::pair<Species, CellRole> cell_at(const ChainLayout &layout, size_t index) {
    if (index >= layout.cells.size()) {
        throw std::out_of_range(
            "cell index " + std::to_string(index) + " out of range [0, " + std::to_string(layout.cells.size()) + ")");
    }
    return {layout.cells[index].species, layout.cells[index].role};
}

static void collect(const LayoutNode &n, NodeKind kind, int level, std::vector<Interval> &out) {
    bool any_level = kind == NodeKind::CCell || kind == NodeKind::Leaf;
    if (n.kind == kind && (any_level || n.level == level)) {
        out.push_back(n.span);
        return;
    }
    for (const auto &c : n.children) {
        collect(c, kind, level, out);
    }
}

std::vector<Interval> spans_of(const ChainLayout &layout, NodeKind kind, int level) {
    std::vector<Interval> out;
    collect(layout.root, kind, level, out);
    return out;
}

std::vector<Interval> species_runs(const ChainLayout &layout, Species s) {
    std::vector<Interval> out;
    size_t n = layout.cells.size();
    for (size_t k = 0; k < n;) {
        if (layout.cells[k].species != s) {
            k++;
            continue;
        }
        size_t e = k;
        while (e < n && layout.cells[e].species == s) {
            e++;
        }
        out.push_back({k, e});
        k = e;
    }
    return out;
}

namespace {

struct Checker {
    const ChainLayout &L;
    std::string fail;

    bool bad(const std::string &msg) {
        if (fail.empty()) {
            fail = msg;
        }
        return false;
    }

    void flatten(const LayoutNode &n, Species parent, std::string &out) {
        if (n.kind == NodeKind::CCell) {
            out.push_back('C');
            return;
        }
        if (n.kind == NodeKind::Leaf) {
            out.push_back(species_char(parent));
            return;
        }
        Species s = n.kind == NodeKind::ABlock ? Species::A : n.kind == NodeKind::BBlock ? Species::B : parent;
        for (const auto &c : n.children) {
            flatten(c, s, out);
        }
    }

    bool tiling(const LayoutNode &n) {
        if (n.span.hi < n.span.lo || n.span.hi > L.cells.size()) {
            return bad("tiling: span out of range");
        }
        if (n.children.empty()) {
            return n.span.size() == 1 || bad("tiling: leaf span is not a single cell");
        }
        size_t at = n.span.lo;
        for (const auto &c : n.children) {
            if (c.span.lo != at) {
                return bad("tiling: children do not tile parent span");
            }
            at = c.span.hi;
            if (!tiling(c)) {
                return false;
            }
        }
        return at == n.span.hi || bad("tiling: children do not tile parent span");
    }

    bool interconnects(const LayoutNode &n) {
        if (n.kind == NodeKind::Interconnect && n.level == 0) {
            std::string s;
            for (size_t k = n.span.lo; k < n.span.hi; k++) {
                s.push_back(species_char(L.cells[k].species));
            }
            if (s != "CBBC" && s != "CAAC") {
                return bad("interconnect pattern: level-0 interconnect reads " + s);
            }
        }
        for (const auto &c : n.children) {
            if (!interconnects(c)) {
                return false;
            }
        }
        return true;
    }

    bool shape(const LayoutNode &n) {
        size_t N = L.config.n_comp;
        switch (n.kind) {
            case NodeKind::Chain: {
                for (size_t i = 0; i < n.children.size(); i++) {
                    const auto &c = n.children[i];
                    NodeKind want = i % 2 == 0 ? NodeKind::ABlock : NodeKind::Interconnect;
                    if (c.kind != want || c.level != n.level) {
                        return bad("recursion shape: top level must alternate A-block and interconnect");
                    }
                }
                if (n.children.size() != 2 * L.config.blocks - 1) {
                    return bad("recursion shape: block count");
                }
                break;
            }
            case NodeKind::ABlock:
            case NodeKind::BBlock: {
                if (n.level < 0) {
                    if (n.children.size() != 2) {
                        return bad("recursion shape: level -1 block must be two spins");
                    }
                } else if (n.level == 0) {
                    if (n.children.size() != N) {
                        return bad("recursion shape: level-0 block must hold n_comp spins");
                    }
                } else {
                    if (n.children.size() != 2 * N - 1) {
                        return bad("recursion shape: level-k block must hold n_comp sub-blocks");
                    }
                    for (size_t i = 0; i < n.children.size(); i++) {
                        const auto &c = n.children[i];
                        bool ok = i % 2 == 0 ? (c.kind == n.kind && c.level == n.level - 1)
                                             : (c.kind == NodeKind::Interconnect && c.level == n.level - 1);
                        if (!ok) {
                            return bad("recursion shape: sub-blocks must alternate with interconnects");
                        }
                    }
                }
                break;
            }
            case NodeKind::Interconnect: {
                if (n.children.size() != 3 || n.children[0].kind != NodeKind::CCell ||
                    n.children[2].kind != NodeKind::CCell ||
                    (n.children[1].kind != NodeKind::ABlock && n.children[1].kind != NodeKind::BBlock) ||
                    n.children[1].level != n.level - 1) {
                    return bad("recursion shape: interconnect must be C, block(k-1), C");
                }
                break;
            }
            default:
                break;
        }
        for (const auto &c : n.children) {
            if (!shape(c)) {
                return false;
            }
        }
        return true;
    }

    bool roles() {
        for (size_t k = 0; k < L.cells.size(); k++) {
            const auto &c = L.cells[k];
            if ((c.role == CellRole::Reset) != (c.species == Species::C)) {
                return bad("role map: reset role must coincide with species C at cell " + std::to_string(k));
            }
            if (c.role == CellRole::Wire && c.species != Species::B) {
                return bad("role map: wire role on non-B cell " + std::to_string(k));
            }
        }
        return true;
    }

    // Flat chains carry no tree, so read interconnects off the species string: every non-A run
    // sitting between two A cells has to be C, a wire, C.
    bool chain_interconnects() {
        std::string s = L.species_string();
        size_t k = s.find('A');
        while (k != std::string::npos) {
            size_t lo = s.find_first_not_of('A', k);
            if (lo == std::string::npos) break;
            size_t hi = s.find('A', lo);
            if (hi == std::string::npos) break;
            std::string seg = s.substr(lo, hi - lo);
            bool ok = seg.size() >= 4 && seg.front() == 'C' && seg.back() == 'C' &&
                      seg.find_first_not_of('B', 1) == seg.size() - 1;
            if (!ok) return bad("interconnect pattern: segment at " + std::to_string(lo) + " reads " + seg);
            k = hi;
        }
        return true;
    }

    bool mirror() {
        for (Species s : {Species::A, Species::B}) {
            NodeKind kind = s == Species::A ? NodeKind::ABlock : NodeKind::BBlock;
            for (const auto &iv : spans_of(L, kind, 0)) {
                for (size_t k = 0; k < iv.size() / 2; k++) {
                    if (L.cells[iv.lo + k].role != L.cells[iv.hi - 1 - k].role) {
                        return bad("mirror symmetry: block roles at " + std::to_string(iv.lo + k));
                    }
                }
            }
        }
        size_t n = L.cells.size();
        for (size_t k = 0; k < n / 2; k++) {
            if (L.cells[k].species != L.cells[n - 1 - k].species) {
                return bad("mirror symmetry: chain species at " + std::to_string(k));
            }
        }
        return true;
    }
};

}  // namespace

LayoutReport verify_layout_invariants(const ChainLayout &layout) {
    Checker c{layout, {}};
    LayoutReport rep;
    std::string flat;
    c.flatten(layout.root, Species::A, flat);
    bool ok = true;
    if (layout.root.span.lo != 0 || layout.root.span.hi != layout.cells.size()) {
        ok = c.bad("tiling: root span does not cover the chain");
    } else if (layout.custom) {
        ok = c.tiling(layout.root) && c.chain_interconnects() && c.roles();
    } else if (flat != layout.species_string()) {
        ok = c.bad("flattening mismatch: tree gives " + flat + ", cells give " + layout.species_string());
    } else {
        ok = c.tiling(layout.root) && c.interconnects(layout.root) && c.shape(layout.root) && c.roles() && c.mirror();
    }
    rep.pass = ok;
    rep.violation = c.fail;
    return rep;
}

static nlohmann::json node_to_json(const LayoutNode &n) {
    nlohmann::json j;
    j["kind"] = kind_name(n.kind);
    j["level"] = n.level;
    j["span"] = {n.span.lo, n.span.hi};
    if (!n.children.empty()) {
        j["children"] = nlohmann::json::array();
        for (const auto &c : n.children) {
            j["children"].push_back(node_to_json(c));
        }
    }
    return j;
}

static LayoutNode node_from_json(const nlohmann::json &j) {
    LayoutNode n;
    n.kind = kind_from_name(j.at("kind").get<std::string>());
    n.level = j.at("level").get<int>();
    n.span = {j.at("span").at(0).get<size_t>(), j.at("span").at(1).get<size_t>()};
    if (j.contains("children")) {
        for (const auto &c : j["children"]) {
            n.children.push_back(node_from_json(c));
        }
    }
    return n;
}

nlohmann::json layout_to_json(const ChainLayout &layout) {
    nlohmann::json j;
    j["config"] = {
        {"n_comp", layout.config.n_comp},
        {"level", layout.config.level},
        {"blocks", layout.config.blocks},
        {"code_id", layout.config.code_id},
    };
    if (layout.custom) {
        j["config"]["custom"] = true;
    }
    j["cells"] = nlohmann::json::array();
    for (const auto &c : layout.cells) {
        j["cells"].push_back({{"species", std::string(1, species_char(c.species))}, {"role", role_name(c.role)}});
    }
    j["tree"] = node_to_json(layout.root);
    return j;
}

ChainLayout layout_from_json(const nlohmann::json &j) {
    ChainLayout out;
    const auto &cfg = j.at("config");
    out.config.n_comp = cfg.at("n_comp").get<size_t>();
    out.config.level = cfg.at("level").get<int>();
    out.config.blocks = cfg.at("blocks").get<size_t>();
    out.config.code_id = cfg.at("code_id").get<std::string>();
    out.custom = cfg.value("custom", false);
    for (const auto &c : j.at("cells")) {
        std::string s = c.at("species").get<std::string>();
        if (s.size() != 1) {
            throw std::invalid_argument("species tag must be one of A, B, C");
        }
        out.cells.push_back({species_from_char(s[0]), role_from_name(c.at("role").get<std::string>())});
    }
    out.root = node_from_json(j.at("tree"));
    return out;
}

}  // namespace globalchain
