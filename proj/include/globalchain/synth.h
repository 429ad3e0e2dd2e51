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

#ifndef GLOBALCHAIN_SYNTH_H
#define GLOBALCHAIN_SYNTH_H

#include <cstdint>
#include <optional>
#include <vector>

#include "globalchain/layout.h"
#include "globalchain/pauli.h"
#include "globalchain/pulse.h"
#include "json.hpp"

// Block-Pauli synthesis for two mirror-image blocks A^m C B B C A^m.
//
// The undressed step M = [W_AA(pi/4), H_A] is run forwards and backwards. At step t, a
// controlled Pauli on the C-adjacent edge cell acts as a controlled O_t = U_t^dag P U_t on the
// block, and the O_t span the whole block Pauli group, so any block Pauli is a product of a few
// edge factors. The control register sits in the B cell next to the block's C cell.

namespace globalchain {

struct EdgeGeometry {
    size_t m = 0;       // block length
    size_t edge = 0;    // left block's C-adjacent cell
    size_t c_cell = 0;  // left C
    size_t b_cell = 0;  // left register
    size_t b_right = 0;
};
EdgeGeometry edge_geometry(const ChainLayout &layout);

struct OrbitFactor {
    int t;
    char p;  // 'Z' or 'X'
    bool operator==(const OrbitFactor &) const = default;
};

class EdgeOrbit {
  public:
    explicit EdgeOrbit(const ChainLayout &layout, int t_max = -1);

    int t_max() const { return t_max_; }
    const PauliString &at(int t, char p) const;
    // Fewest factors (then smallest largest t) whose product is target up to phase.
    // Throws if target touches cells outside the left block.
    std::optional<std::vector<OrbitFactor>> factorize(const PauliString &target, uint64_t seed = 1) const;
    // Product of the factors in the given application order equals i^k * target.
    int phase_exponent(const std::vector<OrbitFactor> &applied, const PauliString &target) const;

    const ChainLayout &layout() const { return layout_; }
    const EdgeGeometry &geometry() const { return geo_; }

  private:
    ChainLayout layout_;
    EdgeGeometry geo_;
    int t_max_;
    std::vector<PauliString> z_, x_;
};

class SweepBuilder {
  public:
    explicit SweepBuilder(const EdgeOrbit &orbit) : orbit_(orbit) {}

    // Measure a block Pauli into both registers; records readouts.
    void measure(const PauliString &g, const std::vector<OrbitFactor> &factors, size_t logical, size_t generator);
    // exp(i theta g) on the left block (and its mirror on the right block).
    void rotate(const PauliString &g, const std::vector<OrbitFactor> &factors, double theta);
    void finish() { move_to(0); }

    PulseSchedule schedule;
    nlohmann::json readouts = nlohmann::json::array();

  private:
    void move_to(int t);
    // Register-controlled product of factors, ordered for the shorter sweep; exact controlled-g.
    void controlled(const PauliString &g, std::vector<OrbitFactor> factors);
    void controlled_factor(const OrbitFactor &f);

    const EdgeOrbit &orbit_;
    int now_ = 0;
};

}  // namespace globalchain

#endif
