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

#ifndef GLOBALCHAIN_STABSIM_H
#define GLOBALCHAIN_STABSIM_H

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "globalchain/layout.h"
#include "globalchain/pauli.h"
#include "globalchain/pulse.h"
#include "globalchain/qec.h"
#include "json.hpp"

namespace globalchain {

// mt19937_64 with our own conversions so draws match across standard libraries.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}
    uint64_t next() { return eng_(); }
    double uniform();                 // [0, 1)
    uint64_t below(uint64_t n);       // [0, n)
    uint64_t geometric(double p);     // failures before the first success

  private:
    std::mt19937_64 eng_;
};

// Seed for stream k derived from a base seed (splitmix64).
uint64_t derive_seed(uint64_t base, uint64_t k);

struct NoiseModel {
    double eps = 0;
    double eps_idle = 0;
    uint64_t seed = 0;
};

struct NoiseEvent {
    size_t qubit;
    char pauli;
    bool operator==(const NoiseEvent &) const = default;
};

// One uniform per cell (plus one for the Pauli type on a hit), in cell order.
std::vector<NoiseEvent> sample_noise(const NoiseModel &noise, const Pulse &pulse, const ChainLayout &layout, Rng &rng);

class Tableau {
  public:
    static Tableau zero(size_t n);

    size_t size() const { return n_; }
    const std::vector<PauliString> &stabilizers() const { return stab_; }

    void apply_pulse(const Pulse &pulse, const ChainLayout &layout);
    void apply_pauli(const PauliString &p);
    void h(size_t q);
    void rz_quarter(size_t q, int k);  // exp(i k pi/4 Z_q)
    void zz_quarter(size_t a, size_t b, int k);
    // Z measurement. Random outcomes use rng (or 0 when rng is null). Returns the outcome bit.
    int measure_z(size_t q, Rng *rng = nullptr, bool *deterministic = nullptr);
    // Same for any Hermitian Pauli observable.
    int measure(const PauliString &obs, Rng *rng = nullptr, bool *deterministic = nullptr);
    void reset(size_t q, Rng *rng = nullptr);
    // +1/-1 when p (a Hermitian Pauli) is in the stabilizer group up to sign, 0 otherwise.
    int expectation(const PauliString &p) const;

    // Same stabilizer group (with signs).
    bool same_state(const Tableau &o) const;

  private:
    size_t n_ = 0;
    std::vector<PauliString> stab_, destab_;
};

// Pauli-frame recovery data read off a compiled schedule's meta.
struct Readout {
    size_t at;  // number of pulses applied before the readout
    size_t cell;
    size_t block;
    size_t logical;
    size_t generator;
};
std::vector<Readout> schedule_readouts(const PulseSchedule &s);
// Pulse count after which the lookup decoder runs; none when the schedule has no hook.
std::optional<size_t> schedule_decode_point(const PulseSchedule &s);

// Code qubit j of (block, logical) -> chain cell.
std::vector<size_t> code_cells(const ChainLayout &layout, const CodeSpec &code, size_t block, size_t logical);

// Equivalent schedule in which X pulses are pushed past diagonal pulses and consecutive diagonal
// pulses are merged per pair and species. Refocused windows (W(phi/2) X W(phi/2) X) come out as
// single Clifford windows. Pulse positions change, so this is for noiseless runs only.
PulseSchedule clifford_normal_form(const PulseSchedule &s);

// Encoded |0>/|+> (basis 'Z'/'X') on every (block, logical) slot, all other cells |0>.
Tableau prepare_code_state(const ChainLayout &layout, const CodeSpec &code, char basis = 'Z');

// Noiseless tableau run of one schedule; readouts are Z measurements at the recorded points.
struct TableauRun {
    std::vector<int> outcomes;
    bool all_deterministic = true;
};
TableauRun run_schedule(Tableau &t, const PulseSchedule &s, const ChainLayout &layout, Rng *rng = nullptr);

// A code operator placed on a slot's cells.
PauliString place_on_slot(const PauliString &op, const ChainLayout &layout, const CodeSpec &code, size_t block,
                          size_t logical);

struct TrajectoryRecord {
    std::vector<std::vector<uint64_t>> syndromes;  // per round, per (block, logical) slot
    std::vector<bool> failures;                    // per (block, logical) slot
    size_t error_count = 0;
    bool decoder_flagged = false;
    PauliString final_frame;
    nlohmann::json to_json() const;
};

struct FrameOptions {
    LogicalBasis basis = LogicalBasis::Z;
    // Errors applied to the frame before the first pulse (deterministic injections).
    PauliString injected;
};

TrajectoryRecord run_trajectory(const std::vector<PulseSchedule> &schedules, const ChainLayout &layout,
                                const CodeSpec &code, const NoiseModel &noise, const FrameOptions &opts = {});

// Flags per (block, logical) slot from a residual frame: ideal decode of the residual on each
// slot, then a logical-operator test in the requested basis.
std::vector<bool> logical_failure(const PauliString &frame, const ChainLayout &layout, const CodeSpec &code,
                                  LogicalBasis basis = LogicalBasis::Z, bool ideal_decode = true);

// 64 trials per machine word. Results depend only on (schedules, noise, trials), not threads.
struct BatchResult {
    uint64_t trials = 0;
    uint64_t failures = 0;  // trials with any logical slot flipped
    uint64_t errors = 0;
};
BatchResult run_frame_batch(const std::vector<PulseSchedule> &schedules, const ChainLayout &layout,
                            const CodeSpec &code, const NoiseModel &noise, uint64_t trials, unsigned jobs = 1,
                            LogicalBasis basis = LogicalBasis::Z);

}  // namespace globalchain

#endif
