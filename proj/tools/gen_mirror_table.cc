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

// Brute-forces the mirror period of S = H.CZbar on a C-bounded subchain C s^n C with the
// stabilizer tableau and prints the table compiled into the library.

#include <cstdio>
#include <set>
#include <string>

#include "globalchain/compiler.h"
#include "globalchain/stabsim.h"

using namespace globalchain;

// True when, with C in |0>, the evolution maps X_i -> X_{n-1-i} and Z_i -> Z_{n-1-i} with + signs.
static bool reverses(const PulseSchedule &s, const ChainLayout &layout, size_t n) {
    for (size_t i = 0; i < n; i++) {
        for (char p : {'X', 'Z'}) {
            PauliString in(layout.size()), want(layout.size());
            in.set(i + 1, p);
            want.set(n - i, p);
            for (const auto &pulse : s.pulses) conj_pulse(in, pulse, layout);
            // the C cells stay in |0>, so Z factors there are +1
            for (size_t c : {size_t{0}, n + 1}) {
                if (in.xs[c]) return false;
                in.zs[c] = 0;
            }
            if (!(in == want)) return false;
        }
    }
    return true;
}

int main() {
    std::printf("// generated by gen_mirror_table: k_mirror(n) for n = 0..%zu (0 = unused)\n", kMirrorTableMax);
    std::printf("static const int kMirrorTable[] = {0");
    for (size_t n = 1; n <= kMirrorTableMax; n++) {
        ChainLayout layout = make_chain("C" + std::string(n, 'B') + "C");
        PulseSchedule step = compile_global_S({Species::B}, layout).schedule;
        PulseSchedule acc;
        int found = -1;
        for (int k = 1; k <= 4 * (int)n + 8 && found < 0; k++) {
            acc.append(step);
            if (reverses(acc, layout, n)) found = k;
        }
        std::printf(", %d", found);
    }
    std::printf("};\n");
    return 0;
}
