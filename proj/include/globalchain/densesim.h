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

#ifndef GLOBALCHAIN_DENSESIM_H
#define GLOBALCHAIN_DENSESIM_H

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "globalchain/layout.h"
#include "globalchain/pauli.h"
#include "globalchain/pulse.h"
#include "json.hpp"

namespace globalchain {

// Cell q is bit (n-1-q) of the amplitude index: the leftmost cell is most significant.
struct StateVector {
    size_t n = 0;
    Eigen::VectorXcd amp;

    static StateVector zero(size_t n);
    static StateVector basis(size_t n, size_t index);
    static StateVector product(const std::vector<Eigen::Vector2cd> &qubits);
    double norm() const { return amp.norm(); }
};

size_t dense_qubit_limit();
void set_dense_qubit_limit(size_t n);

StateVector apply_pulse(const StateVector &state, const Pulse &pulse, const ChainLayout &layout);
StateVector apply_schedule(const StateVector &state, const PulseSchedule &schedule, const ChainLayout &layout);
Eigen::MatrixXcd schedule_unitary(const PulseSchedule &schedule, const ChainLayout &layout);

struct EquivalenceReport {
    bool equal_up_to_phase = false;
    double max_deviation = 0;
    double phase = 0;
    std::vector<size_t> dressing_sites;
    std::optional<std::vector<int>> dressing;  // k per site: Z(k pi/4)
    nlohmann::json to_json() const;
};

EquivalenceReport equivalent_up_to_phase(const Eigen::MatrixXcd &u, const Eigen::MatrixXcd &v, double tol = 1e-10);

// Searches prod_s Z_s(k_s pi/4), k_s in 0..7, with dressing * u == target up to phase.
EquivalenceReport find_local_z_dressing(
    const Eigen::MatrixXcd &u, const Eigen::MatrixXcd &target, const std::vector<size_t> &sites, double tol = 1e-10);

StateVector apply_pauli(const StateVector &state, const PauliString &p);
std::complex<double> expectation(const StateVector &state, const PauliString &p);

// Reduced single-cell purity, used to police resets.
double cell_purity(const StateVector &state, size_t q);

// Dense operator helpers (n-qubit, same ordering as StateVector).
Eigen::Matrix2cd gate_h();
Eigen::Matrix2cd gate_x();
Eigen::Matrix2cd gate_z();
Eigen::Matrix2cd gate_rz(double theta);  // exp(i theta Z)
Eigen::MatrixXcd embed(size_t n, const std::map<size_t, Eigen::Matrix2cd> &ops);
Eigen::MatrixXcd diag_zz(size_t n, size_t a, size_t b, double phi);  // exp(i phi Z_a Z_b)
Eigen::MatrixXcd cz_matrix(size_t n, size_t a, size_t b);
Eigen::MatrixXcd swap_matrix(size_t n, size_t a, size_t b);

}  // namespace globalchain

#endif
