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

#include "globalchain/qec.h"

#include <algorithm>
#include <stdexcept>

namespace globalchain {

uint64_t CodeSpec::syndrome_of(const PauliString &e) const {
    uint64_t s = 0;
    for (size_t g = 0; g < generators.size(); g++) {
        if (!generators[g].commutes(e)) {
            s |= uint64_t{1} << g;
        }
    }
    return s;
}

// All weight-w Paulis on n qubits, sorted by their string.
static std::vector<PauliString> weight_class(size_t n, size_t w) {
    std::vector<std::string> texts;
    std::vector<size_t> pos(w);
    auto rec = [&](auto &&self, size_t start, size_t depth, std::string &cur) -> void {
        if (depth == w) {
            texts.push_back(cur);
            return;
        }
        for (size_t q = start; q < n; q++) {
            for (char c : {'X', 'Y', 'Z'}) {
                cur[q] = c;
                self(self, q + 1, depth + 1, cur);
                cur[q] = 'I';
            }
        }
    };
    std::string cur(n, 'I');
    rec(rec, 0, 0, cur);
    std::sort(texts.begin(), texts.end());
    std::vector<PauliString> out;
    out.reserve(texts.size());
    for (auto &t : texts) {
        out.push_back(PauliString::from_str(t));
    }
    return out;
}

void build_decoder(CodeSpec &code) {
    code.decoder.clear();
    size_t r = code.generators.size();
    if (r > 40) {
        throw std::invalid_argument("too many generators for a lookup table");
    }
    uint64_t domain = uint64_t{1} << r;
    for (size_t w = 0; w <= code.n_physical && code.decoder.size() < domain; w++) {
        for (const auto &e : weight_class(code.n_physical, w)) {
            code.decoder.emplace(code.syndrome_of(e), e);  // keeps the first (lexicographic) entry
        }
    }
}

static CodeSpec make_code(std::string name, std::vector<std::string> gens, std::vector<std::string> lx,
                          std::vector<std::string> lz, size_t distance, bool tcz) {
    CodeSpec c;
    c.name = std::move(name);
    for (auto &g : gens) c.generators.push_back(PauliString::from_str(g));
    for (auto &g : lx) c.logical_x.push_back(PauliString::from_str(g));
    for (auto &g : lz) c.logical_z.push_back(PauliString::from_str(g));
    c.n_physical = c.logical_x.at(0).size();
    c.k_logical = c.logical_x.size();
    c.distance = distance;
    c.transversal_cz = tcz;
    build_decoder(c);
    return c;
}

CodeSpec builtin_code(const std::string &id) {
    if (id == "bare") {
        return make_code("bare", {}, {"X"}, {"Z"}, 1, true);
    }
    if (id == "steane") {
        return make_code("steane",
                         {"IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"},
                         {"XXXXXXX"}, {"ZZZZZZZ"}, 3, true);
    }
    throw std::invalid_argument("unknown code '" + id + "'");
}

static std::vector<std::string> strs(const std::vector<PauliString> &ps) {
    std::vector<std::string> out;
    for (auto &p : ps) {
        std::string s = p.str();
        std::replace(s.begin(), s.end(), '_', 'I');
        out.push_back(s.substr(s[0] == '+' ? 1 : 0));
    }
    return out;
}

nlohmann::json code_to_json(const CodeSpec &code) {
    return {{"name", code.name},
            {"n_physical", code.n_physical},
            {"k_logical", code.k_logical},
            {"generators", strs(code.generators)},
            {"logical_x", strs(code.logical_x)},
            {"logical_z", strs(code.logical_z)},
            {"distance", code.distance},
            {"transversal_cz", code.transversal_cz}};
}

CodeSpec code_from_json(const nlohmann::json &j) {
    auto list = [&](const char *key) {
        std::vector<std::string> out;
        if (j.contains(key)) {
            out = j.at(key).get<std::vector<std::string>>();
        }
        return out;
    };
    CodeSpec c = make_code(j.at("name").get<std::string>(), list("generators"), list("logical_x"),
                           list("logical_z"), j.at("distance").get<size_t>(), j.value("transversal_cz", false));
    if (j.contains("n_physical") && j.at("n_physical").get<size_t>() != c.n_physical) {
        throw std::invalid_argument("n_physical disagrees with operator length");
    }
    CodeCheck chk = check_code(c);
    if (!chk.ok) {
        throw std::invalid_argument("invalid code: " + chk.problem);
    }
    return c;
}

CodeCheck check_code(const CodeSpec &code) {
    auto fail = [](std::string why) { return CodeCheck{false, std::move(why)}; };
    if (code.logical_x.size() != code.k_logical || code.logical_z.size() != code.k_logical) {
        return fail("logical operator count != k");
    }
    auto all = code.generators;
    all.insert(all.end(), code.logical_x.begin(), code.logical_x.end());
    all.insert(all.end(), code.logical_z.begin(), code.logical_z.end());
    for (auto &p : all) {
        if (p.size() != code.n_physical) return fail("operator length != n");
    }
    for (size_t a = 0; a < code.generators.size(); a++) {
        for (size_t b = 0; b < all.size(); b++) {
            if (!code.generators[a].commutes(all[b])) return fail("generator " + std::to_string(a) + " anticommutes");
        }
    }
    for (size_t a = 0; a < code.k_logical; a++) {
        for (size_t b = 0; b < code.k_logical; b++) {
            bool anti = !code.logical_x[a].commutes(code.logical_z[b]);
            if (anti != (a == b)) return fail("logical pair " + std::to_string(a) + "," + std::to_string(b));
        }
    }
    for (size_t w = 1; w <= code.correctable_weight(); w++) {
        for (const auto &e : weight_class(code.n_physical, w)) {
            auto it = code.decoder.find(code.syndrome_of(e));
            if (it == code.decoder.end()) return fail("decoder misses " + e.str());
            PauliString r = it->second * e;
            if (logical_flips(code, r, LogicalBasis::Both) != std::vector<bool>(code.k_logical, false)) {
                return fail("decoder miscorrects " + e.str());
            }
        }
    }
    return {};
}

DecodeResult decode(const CodeSpec &code, uint64_t syndrome) {
    if (code.generators.size() < 64 && (syndrome >> code.generators.size()) != 0) {
        throw std::invalid_argument("syndrome wider than generator count");
    }
    auto it = code.decoder.find(syndrome);
    if (it == code.decoder.end()) {
        // unreachable syndromes only occur for malformed generator sets
        return {PauliString(code.n_physical), true};
    }
    return {it->second, it->second.weight() > code.correctable_weight()};
}

std::vector<bool> logical_flips(const CodeSpec &code, const PauliString &residual, LogicalBasis basis) {
    std::vector<bool> out(code.k_logical, false);
    for (size_t k = 0; k < code.k_logical; k++) {
        if (basis != LogicalBasis::X && !residual.commutes(code.logical_z[k])) out[k] = true;
        if (basis != LogicalBasis::Z && !residual.commutes(code.logical_x[k])) out[k] = true;
    }
    return out;
}

bool ec_round_reference(const CodeSpec &code, const PauliString &injected) {
    PauliString r = decode(code, code.syndrome_of(injected)).correction * injected;
    auto f = logical_flips(code, r, LogicalBasis::Both);
    return std::find(f.begin(), f.end(), true) != f.end();
}

bool in_span(const std::vector<PauliString> &gens, const PauliString &p) {
    size_t n = p.size();
    // rows as 2n-bit vectors, reduced to echelon form
    std::vector<std::vector<uint8_t>> rows;
    auto vec = [&](const PauliString &q) {
        std::vector<uint8_t> v(2 * n);
        for (size_t i = 0; i < n; i++) v[i] = q.xs[i], v[n + i] = q.zs[i];
        return v;
    };
    for (auto &g : gens) rows.push_back(vec(g));
    std::vector<uint8_t> target = vec(p);
    size_t rank = 0;
    for (size_t col = 0; col < 2 * n && rank < rows.size(); col++) {
        size_t piv = rank;
        while (piv < rows.size() && !rows[piv][col]) piv++;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (size_t r = 0; r < rows.size(); r++) {
            if (r != rank && rows[r][col]) {
                for (size_t c = 0; c < 2 * n; c++) rows[r][c] ^= rows[rank][c];
            }
        }
        if (target[col]) {
            for (size_t c = 0; c < 2 * n; c++) target[c] ^= rows[rank][c];
        }
        rank++;
    }
    return std::all_of(target.begin(), target.end(), [](uint8_t b) { return b == 0; });
}

// Heisenberg action of CZ on every (j, n + j) pair.
static PauliString through_transversal_cz(const PauliString &p, size_t n) {
    PauliString out = p;
    for (size_t j = 0; j < n; j++) {
        // CZ = exp(i pi/4 (1 - Z_a)(1 - Z_b)) ~ exp(i pi/4 Z_a Z_b) exp(-i pi/4 Z_a) exp(-i pi/4 Z_b)
        conj_zz_rotation(out, j, n + j, 1);
        conj_z_rotation(out, j, 3);
        conj_z_rotation(out, n + j, 3);
    }
    return out;
}

static PauliString embed_pair(const PauliString &a, const PauliString &b) {
    size_t n = a.size();
    PauliString out(2 * n);
    for (size_t j = 0; j < n; j++) {
        out.xs[j] = a.xs[j], out.zs[j] = a.zs[j];
        out.xs[n + j] = b.xs[j], out.zs[n + j] = b.zs[j];
    }
    out.phase = (uint8_t)((a.phase + b.phase) & 3);
    return out;
}

bool transversal_cz_preserves_code(const CodeSpec &code) {
    size_t n = code.n_physical;
    PauliString id(n);
    std::vector<PauliString> stab;
    for (auto &g : code.generators) {
        stab.push_back(embed_pair(g, id));
        stab.push_back(embed_pair(id, g));
    }
    for (auto &s : stab) {
        PauliString img = through_transversal_cz(s, n);
        if (!in_span(stab, img)) return false;
        // the image must also carry the + sign of the matching generator product
        size_t m = stab.size();
        if (m > 20) continue;
        for (uint64_t mask = 0; mask < (uint64_t{1} << m); mask++) {
            PauliString acc(2 * n);
            for (size_t i = 0; i < m; i++) {
                if (mask >> i & 1) acc *= stab[i];
            }
            if (acc.same_up_to_phase(img)) {
                if (acc.phase != img.phase) return false;
                break;
            }
        }
    }
    // logical action: X1 -> X1 Z2, X2 -> Z1 X2, Z unchanged (modulo stabilizers)
    for (size_t k = 0; k < code.k_logical; k++) {
        PauliString x1 = embed_pair(code.logical_x[k], id), x2 = embed_pair(id, code.logical_x[k]);
        PauliString z1 = embed_pair(code.logical_z[k], id), z2 = embed_pair(id, code.logical_z[k]);
        auto same_mod_stab = [&](const PauliString &a, const PauliString &b) {
            return in_span(stab, a * b);
        };
        if (!same_mod_stab(through_transversal_cz(x1, n), x1 * z2)) return false;
        if (!same_mod_stab(through_transversal_cz(x2, n), z1 * x2)) return false;
        if (!same_mod_stab(through_transversal_cz(z1, n), z1)) return false;
    }
    return true;
}

}  // namespace globalchain
