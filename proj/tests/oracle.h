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


// Test-side reference matrices built straight from Kronecker products. Shares nothing with
// densesim beyond the pulse structs, so the two can be checked against each other.

#ifndef GLOBALCHAIN_TESTS_ORACLE_H
#define GLOBALCHAIN_TESTS_ORACLE_H

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "globalchain/layout.h"
#include "globalchain/pulse.h"

namespace oracle {

using Mat = Eigen::MatrixXcd;
using cd = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
    return out;
}

inline Mat I2() { return Mat::Identity(2, 2); }
inline Mat H() {
    Mat m(2, 2);
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}
inline Mat X() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
inline Mat Z() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}
// exp(i theta Z)
inline Mat Rz(double t) {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = std::exp(cd(0, t));
    m(1, 1) = std::exp(cd(0, -t));
    return m;
}

// Single-cell operator on cell q of n; cell 0 is the leftmost Kronecker factor.
inline Mat on(size_t n, size_t q, const Mat &g) {
    Mat out = Mat::Identity(1, 1);
    for (size_t k = 0; k < n; k++) out = kron(out, k == q ? g : I2());
    return out;
}

// exp(i phi Z_a Z_b) as exp(i phi Z_a Z_b) = cos(phi) I + i sin(phi) Z_a Z_b
inline Mat ZZ(size_t n, size_t a, size_t b, double phi) {
    Mat zz = on(n, a, Z()) * on(n, b, Z());
    return std::cos(phi) * Mat::Identity(zz.rows(), zz.cols()) + cd(0, std::sin(phi)) * zz;
}

inline Mat CZ(size_t n, size_t a, size_t b) {
    // (I + Z_a + Z_b - Z_a Z_b) / 2
    Mat za = on(n, a, Z()), zb = on(n, b, Z());
    Mat id = Mat::Identity(za.rows(), za.cols());
    return (id + za + zb - za * zb) / 2.0;
}

inline Mat SWAP(size_t n, size_t a, size_t b) {
    // (I + XX + YY + ZZ) / 2 with YY = -(XZ)(XZ)
    Mat xa = on(n, a, X()), xb = on(n, b, X()), za = on(n, a, Z()), zb = on(n, b, Z());
    Mat id = Mat::Identity(xa.rows(), xa.cols());
    Mat ya = cd(0, 1) * xa * za, yb = cd(0, 1) * xb * zb;
    return (id + xa * xb + ya * yb + za * zb) / 2.0;
}

inline Mat pulse_matrix(const globalchain::Pulse &p, const globalchain::ChainLayout &layout) {
    using namespace globalchain;
    size_t n = layout.size();
    Mat u = Mat::Identity((Eigen::Index)1 << n, (Eigen::Index)1 << n);
    if (const auto *s = std::get_if<SpeciesUnitary>(&p)) {
        Mat g = s->gate == Gate::H ? H() : s->gate == Gate::X ? X() : Rz(s->theta);
        for (size_t q = 0; q < n; q++) {
            if (layout.cells[q].species == s->species) u = on(n, q, g) * u;
        }
        return u;
    }
    if (const auto *w = std::get_if<CouplingWindow>(&p)) {
        for (size_t q = 0; q + 1 < n; q++) {
            Pair pr = pair_of(layout.cells[q].species, layout.cells[q + 1].species);
            for (Pair k : w->pairs) {
                if (k == pr) u = ZZ(n, q, q + 1, w->angle) * u;
            }
        }
        return u;
    }
    throw std::invalid_argument("oracle: non-unitary pulse");
}

inline Mat schedule_matrix(const globalchain::PulseSchedule &s, const globalchain::ChainLayout &layout) {
    size_t n = layout.size();
    Mat u = Mat::Identity((Eigen::Index)1 << n, (Eigen::Index)1 << n);
    for (const auto &p : s.pulses) u = pulse_matrix(p, layout) * u;
    return u;
}

// max |u - e^{i a} v| with the phase taken from the largest entry of v
inline double phase_distance(const Mat &u, const Mat &v) {
    Eigen::Index r = 0, c = 0;
    v.cwiseAbs().maxCoeff(&r, &c);
    if (std::abs(u(r, c)) < 1e-12) return 1e9;
    cd ph = u(r, c) / v(r, c);
    ph /= std::abs(ph);
    return (u - ph * v).cwiseAbs().maxCoeff();
}

}  // namespace oracle

#endif
