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

#include "globalchain/threshold.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "globalchain/compiler.h"
#include "globalchain/stabsim.h"

namespace globalchain {

Interval95 wilson_interval(uint64_t failures, uint64_t trials, double z) {
    if (failures > trials) throw std::invalid_argument("more failures than trials");
    if (trials == 0) return {0, 1};
    double n = (double)trials, p = (double)failures / n, z2 = z * z;
    double denom = 1 + z2 / n;
    double centre = (p + z2 / (2 * n)) / denom;
    double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    double lo = std::max(0.0, centre - half), hi = std::min(1.0, centre + half);
    // guard against rounding at the extremes
    return {std::min(lo, p), std::max(hi, p)};
}

ChainLayout canonical_layout(const CodeSpec &code) {
    std::string id = code.name == "bare" || code.name == "steane"
                         ? code.name
                         : "custom-" + std::to_string(code.n_physical) + "-" + std::to_string(code.generators.size());
    return build_layout({role_scheme(id).min_n_comp(), 0, 2, id});
}

static double per_round(double f, int rounds) {
    if (rounds <= 1) return f;
    return 1 - std::pow(1 - f, 1.0 / rounds);
}

RatePoint estimate_logical_rate(double eps, uint64_t trials, const std::vector<PulseSchedule> &round,
                                const ChainLayout &layout, const CodeSpec &code, int rounds, uint64_t seed,
                                unsigned jobs) {
    if (!(eps >= 0 && eps <= 1)) throw std::invalid_argument("eps must lie in [0, 1]");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
    std::vector<PulseSchedule> all;
    for (int r = 0; r < rounds; r++) all.insert(all.end(), round.begin(), round.end());
    NoiseModel nm;
    nm.eps = eps;
    nm.seed = seed;
    BatchResult b = run_frame_batch(all, layout, code, nm, trials, jobs);
    Interval95 ci = wilson_interval(b.failures, b.trials);
    RatePoint pt;
    pt.eps = eps;
    pt.trials = b.trials;
    pt.failures = b.failures;
    pt.p_logical = per_round((double)b.failures / (double)b.trials, rounds);
    pt.ci_low = per_round(ci.lo, rounds);
    pt.ci_high = per_round(ci.hi, rounds);
    return pt;
}

RatePoint estimate_logical_rate(double eps, uint64_t trials, const CodeSpec &code, int level, int rounds,
                                uint64_t seed, unsigned jobs) {
    ChainLayout layout = canonical_layout(code);
    PulseSchedule ec = compile_ec_round(code, level, layout).schedule;
    return estimate_logical_rate(eps, trials, {ec}, layout, code, rounds, seed, jobs);
}

KappaFit fit_kappa(const std::vector<RatePoint> &points) {
    if (points.size() < 3) throw std::invalid_argument("fit_kappa needs at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto &p : points) {
        if (!(p.eps > 0) || !(p.p_logical > 0)) throw std::invalid_argument("fit needs positive eps and p");
        double x = std::log(p.eps), y = std::log(p.p_logical);
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    double n = (double)points.size();
    double den = n * sxx - sx * sx;
    double spread = 0;
    for (const auto &p : points) spread = std::max(spread, std::abs(std::log(p.eps) - sx / n));
    if (spread < 1e-12 || std::abs(den) < 1e-300) throw std::invalid_argument("degenerate points: identical eps");
    double s = (n * sxy - sx * sy) / den;
    double c = (sy - s * sx) / n;
    return {std::exp(c), s};
}

std::vector<RatePoint> fit_window(const std::vector<RatePoint> &points) {
    std::vector<RatePoint> out;
    for (const auto &p : points) {
        if (p.p_logical < 1e-2 && p.failures >= 10) out.push_back(p);
    }
    return out;
}

NCount count_N(const std::map<std::string, PulseSchedule> &gadgets, const PulseSchedule &ec,
               const ChainLayout &layout) {
    if (gadgets.empty()) throw std::invalid_argument("count_N needs a non-empty gadget set");
    NCount out;
    for (const auto &[name, s] : gadgets) {
        size_t ops = schedule_cost(s, layout).max_per_qubit;
        out.per_gadget[name] = ops;
        if (ops > out.worst_gadget_ops) {
            out.worst_gadget_ops = ops;
            out.worst_gadget = name;
        }
    }
    out.ec_ops = schedule_cost(ec, layout).max_per_qubit;
    out.N = out.worst_gadget_ops + out.ec_ops;
    out.kappa_bound = (double)out.N * (double)(out.N - (out.N ? 1 : 0)) / 2;
    return out;
}

NCount count_N_at_level(int level, const CodeSpec &code) {
    if (level < 1) throw std::invalid_argument("N counts level-(L-1) operations; L must be >= 1");
    ChainLayout layout = canonical_layout(code);
    std::map<std::string, PulseSchedule> set;
    set["cz_ab"] = compile_cz_ab(level).schedule;
    set["edge_rotation"] = compile_edge_rotation(std::numbers::pi / 4, level).schedule;
    set["swap_interface_A"] = compile_swap_interface(Species::A).schedule;
    set["swap_interface_B"] = compile_swap_interface(Species::B).schedule;
    set["interblock_cz"] = compile_interblock_cz(level, layout).schedule;
    set["intrablock_transversal_cz"] = compile_intrablock_transversal_cz(code, layout).schedule;
    set["ancilla_reset"] = compile_ancilla_reset(level).schedule;
    try {
        set["syndrome_reset"] = compile_syndrome_reset(level, layout).schedule;
    } catch (const std::invalid_argument &) {
        // codes without C-adjacent syndrome cells have nothing to reset
    }
    return count_N(set, compile_ec_round(code, level, layout).schedule, layout);
}

Projection recursion_projection(double kappa, double eps, int l_max) {
    if (!(kappa > 0)) throw std::invalid_argument("kappa must be > 0");
    if (!(eps >= 0 && eps <= 1)) throw std::invalid_argument("eps must lie in [0, 1]");
    Projection out;
    for (int l = 0; l <= l_max; l++) {
        // kappa^(2^L - 1) eps^(2^L), written so that eps = 1/kappa stays flat
        out.p.push_back(std::pow(kappa * eps, std::ldexp(1.0, l)) / kappa);
    }
    out.below_threshold = eps < 1 / kappa;
    return out;
}

std::vector<double> parse_eps_spec(const std::string &spec) {
    std::vector<double> out;
    auto num = [](const std::string &s) {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
        return v;
    };
    if (spec.find(':') == std::string::npos) {
        std::stringstream ss(spec);
        for (std::string tok; std::getline(ss, tok, ',');) out.push_back(num(tok));
        return out;
    }
    std::stringstream ss(spec);
    std::string a, b, c;
    std::getline(ss, a, ':');
    std::getline(ss, b, ':');
    std::getline(ss, c);
    double lo = num(a), hi = num(b);
    bool logscale = c.size() > 3 && c.substr(c.size() - 3) == "log";
    bool linscale = c.size() > 3 && c.substr(c.size() - 3) == "lin";
    if (!logscale && !linscale) throw std::invalid_argument("eps spec needs a 'log' or 'lin' suffix: " + spec);
    int n = std::stoi(c.substr(0, c.size() - 3));
    if (n < 1 || (logscale && (lo <= 0 || hi <= 0))) throw std::invalid_argument("bad eps spec " + spec);
    for (int k = 0; k < n; k++) {
        double f = n == 1 ? 0 : (double)k / (n - 1);
        out.push_back(logscale ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo));
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general);
    return std::string(buf, r.ptr);
}

std::string points_to_csv(const std::vector<RatePoint> &points) {
    std::string out = "eps,p,ci_low,ci_high,trials\n";
    for (const auto &p : points) {
        out += format_double(p.eps) + "," + format_double(p.p_logical) + "," + format_double(p.ci_low) + "," +
               format_double(p.ci_high) + "," + std::to_string(p.trials) + "\n";
    }
    return out;
}

nlohmann::json ThresholdReport::to_json() const {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto &p : points) {
        pts.push_back({{"eps", p.eps},
                       {"p", p.p_logical},
                       {"ci_low", p.ci_low},
                       {"ci_high", p.ci_high},
                       {"trials", p.trials},
                       {"failures", p.failures}});
    }
    nlohmann::json j = {{"points", pts},
                        {"fit_window_points", window.size()},
                        {"fit_ok", fit_ok},
                        {"N", N},
                        {"kappa_bound", kappa_bound},
                        {"N_level_independent", n_level_independent},
                        {"projection_eps", projected_eps},
                        {"projection_kappa", projected_kappa},
                        {"projection_kappa_source", fit_ok ? "fit" : "bound"},
                        {"projected_analytic", projected}};
    if (fit_ok) {
        j["slope"] = slope;
        j["kappa_fit"] = kappa_fit;
    } else {
        j["slope"] = nullptr;
        j["kappa_fit"] = nullptr;
    }
    return j;
}

ThresholdReport run_threshold(const ThresholdConfig &cfg) {
    if (cfg.eps.empty()) throw std::invalid_argument("no eps values");
    CodeSpec code = cfg.code_spec ? *cfg.code_spec : builtin_code(cfg.code);
    ChainLayout layout = canonical_layout(code);
    PulseSchedule ec = compile_ec_round(code, cfg.level, layout).schedule;
    ThresholdReport rep;
    for (size_t i = 0; i < cfg.eps.size(); i++) {
        rep.points.push_back(
            estimate_logical_rate(cfg.eps[i], cfg.trials, {ec}, layout, code, cfg.rounds, derive_seed(cfg.seed, i),
                                  cfg.jobs));
    }
    rep.window = fit_window(rep.points);
    if (rep.window.size() >= 3) {
        try {
            KappaFit f = fit_kappa(rep.window);
            rep.fit_ok = true;
            rep.slope = f.slope;
            rep.kappa_fit = f.kappa;
        } catch (const std::invalid_argument &) {
            rep.fit_ok = false;
        }
    }
    int lvl = std::max(1, cfg.level);
    NCount n1 = count_N_at_level(lvl, code), n2 = count_N_at_level(lvl + 1, code);
    rep.N = n1.N;
    rep.kappa_bound = n1.kappa_bound;
    rep.n_level_independent = n1.N == n2.N;
    double kappa = rep.fit_ok ? rep.kappa_fit : rep.kappa_bound;
    rep.projected_kappa = kappa;
    rep.projected_eps = rep.window.empty() ? rep.points.front().eps : rep.window.back().eps;
    if (kappa > 0) rep.projected = recursion_projection(kappa, rep.projected_eps, 5).p;
    return rep;
}

}  // namespace globalchain
