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

#ifndef GLOBALCHAIN_THRESHOLD_H
#define GLOBALCHAIN_THRESHOLD_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "globalchain/layout.h"
#include "globalchain/pulse.h"
#include "globalchain/qec.h"
#include "json.hpp"

namespace globalchain {

struct RatePoint {
    double eps = 0;
    double p_logical = 0;  // per round
    double ci_low = 0;
    double ci_high = 0;
    uint64_t trials = 0;
    uint64_t failures = 0;
};

struct Interval95 {
    double lo, hi;
};
Interval95 wilson_interval(uint64_t failures, uint64_t trials, double z = 1.959963984540054);

// Canonical two-block level-0 layout hosting the code (blocks encode level-1 qubits).
ChainLayout canonical_layout(const CodeSpec &code);

RatePoint estimate_logical_rate(double eps, uint64_t trials, const CodeSpec &code, int level, int rounds,
                                uint64_t seed, unsigned jobs = 1);
// Same with explicit per-round schedules.
RatePoint estimate_logical_rate(double eps, uint64_t trials, const std::vector<PulseSchedule> &round,
                                const ChainLayout &layout, const CodeSpec &code, int rounds, uint64_t seed,
                                unsigned jobs = 1);

struct KappaFit {
    double kappa = 0;
    double slope = 0;
};
// Least squares of log p = log kappa + s log eps.
KappaFit fit_kappa(const std::vector<RatePoint> &points);
// Points with p < 1e-2 and at least 10 failures.
std::vector<RatePoint> fit_window(const std::vector<RatePoint> &points);

struct NCount {
    size_t N = 0;
    double kappa_bound = 0;
    std::string worst_gadget;
    size_t worst_gadget_ops = 0;
    size_t ec_ops = 0;
    std::map<std::string, size_t> per_gadget;
};
// N = max gadget per-qubit op count + EC-round per-qubit op count.
NCount count_N(const std::map<std::string, PulseSchedule> &gadgets, const PulseSchedule &ec,
               const ChainLayout &layout);
// Compiles the fault-tolerant gadget set at level L on the canonical layout and counts.
NCount count_N_at_level(int level, const CodeSpec &code);

struct Projection {
    std::vector<double> p;  // P_0 .. P_Lmax
    bool below_threshold = false;
};
Projection recursion_projection(double kappa, double eps, int l_max);

std::vector<double> parse_eps_spec(const std::string &spec);  // "1e-4:1e-2:10log", "0.1:0.3:3lin", "1e-3,2e-3"

struct ThresholdReport {
    std::vector<RatePoint> points;
    std::vector<RatePoint> window;
    bool fit_ok = false;
    double slope = 0;
    double kappa_fit = 0;
    size_t N = 0;
    double kappa_bound = 0;
    bool n_level_independent = false;
    std::vector<double> projected;  // analytic, at the largest swept eps inside the window (or the first point)
    double projected_eps = 0;
    double projected_kappa = 0;
    nlohmann::json to_json() const;
};

struct ThresholdConfig {
    std::vector<double> eps;
    uint64_t trials = 100000;
    std::string code = "steane";
    std::optional<CodeSpec> code_spec;  // overrides `code` (loaded from a file)
    int level = 1;
    int rounds = 1;
    uint64_t seed = 0;
    unsigned jobs = 1;
};
ThresholdReport run_threshold(const ThresholdConfig &cfg);

std::string points_to_csv(const std::vector<RatePoint> &points);
std::string format_double(double v);  // shortest round-trip, locale independent

}  // namespace globalchain

#endif
