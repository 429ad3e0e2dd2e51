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

#ifndef GLOBALCHAIN_VERIFY_H
#define GLOBALCHAIN_VERIFY_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "globalchain/densesim.h"
#include "globalchain/layout.h"
#include "globalchain/pulse.h"
#include "json.hpp"

namespace globalchain {

// Action on the listed cells with every other cell prepared and required to end in |0>.
// Returns nothing if some input leaks out of that subspace by more than tol.
std::optional<Eigen::MatrixXcd> reduced_action(const PulseSchedule &s, const ChainLayout &layout,
                                               const std::vector<size_t> &cells, double tol = 1e-10,
                                               double *leakage = nullptr);

// Dense matrices on k cells (cell index inside the reduced register, leftmost most significant).
Eigen::MatrixXcd reduced_cz(size_t k, size_t a, size_t b);

struct GadgetCheck {
    std::string gadget;
    bool pass = false;
    double max_deviation = 0;
    nlohmann::json report;
    std::string note;
};

// Dense check of one gadget on its demo chain against the claimed action.
GadgetCheck verify_gadget(const std::string &name, int level = 0, double theta = 0.7853981633974483);
std::vector<GadgetCheck> selftest_all();

// Stabilizer vs dense evolution of random stabilizer inputs through a gadget's demo schedule.
struct AgreementReport {
    bool pass = true;
    size_t cases = 0;
    std::string detail;
};
AgreementReport stabilizer_dense_agreement(const std::string &gadget, uint64_t seed, size_t cases = 8);

// Random product state (seeded) on n cells.
std::vector<Eigen::Vector2cd> random_product(size_t n, uint64_t seed);

}  // namespace globalchain

#endif
