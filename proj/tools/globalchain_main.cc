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


// globalchain: layout | compile | verify | simulate | threshold | selftest
//
// Exit codes: 0 ok, 1 a verification failed, 2 bad usage.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "globalchain/compiler.h"
#include "globalchain/layout.h"
#include "globalchain/qec.h"
#include "globalchain/stabsim.h"
#include "globalchain/threshold.h"
#include "globalchain/verify.h"

using namespace globalchain;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_file(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << text;
    if (!f) throw UsageError("failed writing '" + path + "'");
}

std::string dump(const nlohmann::json &j) { return j.dump(2) + "\n"; }

CodeSpec load_code(const std::string &id, const std::string &file) {
    if (file.empty()) return builtin_code(id);
    std::ifstream f(file);
    if (!f) throw UsageError("cannot read code file '" + file + "'");
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception &e) {
        throw UsageError("bad code file: " + std::string(e.what()));
    }
    return code_from_json(j);
}

unsigned default_jobs() {
    unsigned h = std::thread::hardware_concurrency();
    return h ? h : 1;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"globally controlled A/B/C spin chain: layouts, pulse compiler, simulators"};
    app.require_subcommand(1);

    // layout
    auto *lay = app.add_subcommand("layout", "build a recursive chain layout");
    size_t lay_ncomp = 4, lay_blocks = 1;
    int lay_level = 0;
    std::string lay_code = "bare", lay_out;
    lay->add_option("--ncomp", lay_ncomp, "cells per computational block")->capture_default_str();
    lay->add_option("--level", lay_level, "recursion level")->capture_default_str();
    lay->add_option("--blocks", lay_blocks, "number of A-blocks")->capture_default_str();
    lay->add_option("--code", lay_code, "role scheme (bare, bare_s, steane, custom-d-s)")->capture_default_str();
    lay->add_option("--out", lay_out, "write JSON here");

    // compile
    auto *comp = app.add_subcommand("compile", "compile a gadget to a pulse schedule");
    std::string c_gadget, c_out, c_species, c_code, c_code_file;
    int c_level = 0;
    double c_theta = 0.7853981633974483;
    size_t c_ncomp = 0;
    comp->add_option("--gadget", c_gadget, "gadget name")->required();
    comp->add_option("--level", c_level, "level")->capture_default_str();
    auto *theta_opt = comp->add_option("--theta", c_theta, "rotation angle (rad)");
    comp->add_option("--ncomp", c_ncomp, "compile on a two-block layout with this block size");
    comp->add_option("--species", c_species, "species (global_S: set like AB; others: A or B)");
    comp->add_option("--code", c_code, "code id");
    comp->add_option("--code-file", c_code_file, "custom code JSON");
    comp->add_option("--out", c_out, "write schedule JSON here");

    // verify
    auto *ver = app.add_subcommand("verify", "dense check of one gadget");
    std::string v_gadget, v_out;
    int v_level = 0;
    double v_theta = 0.7853981633974483;
    ver->add_option("--gadget", v_gadget, "gadget name")->required();
    ver->add_option("--level", v_level, "level")->capture_default_str();
    ver->add_option("--theta", v_theta, "angle for parametrised gadgets");
    ver->add_option("--out", v_out, "write report JSON here");

    // simulate
    auto *sim = app.add_subcommand("simulate", "noisy Pauli-frame Monte Carlo of EC rounds");
    std::string s_code = "steane", s_code_file, s_out;
    int s_level = 1, s_rounds = 1;
    size_t s_ncomp = 0;
    double s_eps = 0;
    uint64_t s_trials = 1000, s_seed = 0;
    unsigned s_jobs = default_jobs();
    sim->add_option("--code", s_code, "code id")->capture_default_str();
    sim->add_option("--code-file", s_code_file, "custom code JSON");
    sim->add_option("--level", s_level, "compile level")->capture_default_str();
    sim->add_option("--ncomp", s_ncomp, "block size (default: smallest that fits)");
    sim->add_option("--rounds", s_rounds, "EC rounds per trial")->capture_default_str();
    sim->add_option("--eps", s_eps, "error rate per operation")->required();
    sim->add_option("--trials", s_trials, "trials")->capture_default_str();
    sim->add_option("--seed", s_seed, "RNG seed")->required();
    sim->add_option("--jobs", s_jobs, "worker threads")->envname("GLOBALCHAIN_JOBS");
    sim->add_option("--out", s_out, "write record JSON here");

    // threshold
    auto *thr = app.add_subcommand("threshold", "logical error rate sweep and kappa fit");
    std::string t_eps, t_code = "steane", t_code_file, t_out, t_report;
    uint64_t t_trials = 100000, t_seed = 0;
    int t_level = 1, t_rounds = 1;
    unsigned t_jobs = default_jobs();
    thr->add_option("--eps", t_eps, "a:b:Nlog, a:b:Nlin or a comma list")->required();
    thr->add_option("--trials", t_trials, "trials per point")->capture_default_str();
    thr->add_option("--code", t_code, "code id")->capture_default_str();
    thr->add_option("--code-file", t_code_file, "custom code JSON");
    thr->add_option("--level", t_level, "compile level")->capture_default_str();
    thr->add_option("--rounds", t_rounds, "EC rounds per trial")->capture_default_str();
    thr->add_option("--seed", t_seed, "RNG seed")->required();
    thr->add_option("--jobs", t_jobs, "worker threads")->envname("GLOBALCHAIN_JOBS");
    thr->add_option("--out", t_out, "write CSV here");
    thr->add_option("--report", t_report, "write report JSON here (default: --out with .json)");

    // selftest
    auto *st = app.add_subcommand("selftest", "dense check of every gadget");
    int st_level = 0;
    std::string st_out;
    st->add_option("--level", st_level, "level")->capture_default_str();
    st->add_option("--out", st_out, "write reports JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (*lay) {
            ChainLayout l = build_layout({lay_ncomp, lay_level, lay_blocks, lay_code});
            std::string text = dump(layout_to_json(l));
            if (lay_out.empty()) {
                std::cout << text;
            } else {
                write_file(lay_out, text);
                std::cout << l.size() << " cells: " << l.species_string() << "\n";
            }
            return 0;
        }

        if (*comp) {
            GadgetSpec spec{c_gadget, c_level, nlohmann::json::object()};
            if (*theta_opt) {
                spec.params["theta"] = c_theta;
                spec.params["angle"] = c_theta;
            }
            if (!c_species.empty()) {
                spec.params["species"] = c_species;
                spec.params["species_set"] = c_species;
            }
            std::string code_id = c_code;
            if (!c_code_file.empty()) {
                // only the role scheme matters for compile; the code itself is rebuilt below
                code_id = canonical_layout(load_code("", c_code_file)).config.code_id;
            }
            if (!code_id.empty()) spec.params["code"] = code_id;
            ChainLayout l;
            if (c_ncomp) {
                l = build_layout({c_ncomp, 0, 2, code_id.empty() ? "bare" : code_id});
            } else if (!c_code_file.empty()) {
                l = canonical_layout(load_code("", c_code_file));
            } else {
                l = demo_layout(c_gadget, c_level);
            }
            CompilationResult r;
            if (!c_code_file.empty() && (c_gadget == "ec_round" || c_gadget == "intrablock_transversal_cz")) {
                CodeSpec code = load_code("", c_code_file);
                r = c_gadget == "ec_round" ? compile_ec_round(code, c_level, l)
                                           : compile_intrablock_transversal_cz(code, l);
            } else {
                r = compile_gadget(spec, l);
            }
            ValidationReport v = validate_schedule(r.schedule);
            nlohmann::json out = {{"layout", l.species_string()},
                                  {"schedule", schedule_to_json(r.schedule)},
                                  {"claimed_action", r.claimed_action.to_json()},
                                  {"budget",
                                   {{"pulses", r.budget.pulses},
                                    {"max_per_qubit", r.budget.max_per_qubit},
                                    {"per_qubit", r.budget.per_qubit},
                                    {"qubits_touched", r.budget.qubits_touched}}},
                                  {"legal", v.legal}};
            if (!c_out.empty()) write_file(c_out, dump(out));
            std::cout << c_gadget << " (level " << c_level << ") on " << l.species_string() << ": " << r.budget.pulses
                      << " pulses, max " << r.budget.max_per_qubit << " ops per qubit, "
                      << (v.legal ? "legal" : "ILLEGAL") << "\n";
            return v.legal ? 0 : 1;
        }

        if (*ver) {
            GadgetCheck g = verify_gadget(v_gadget, v_level, v_theta);
            nlohmann::json j = g.report;
            j["gadget"] = g.gadget;
            j["pass"] = g.pass;
            if (!g.note.empty()) j["note"] = g.note;
            std::string text = dump(j);
            std::cout << text;
            if (!v_out.empty()) write_file(v_out, text);
            return g.pass ? 0 : 1;
        }

        if (*sim) {
            if (s_jobs == 0) throw UsageError("--jobs must be >= 1");
            CodeSpec code = load_code(s_code, s_code_file);
            ChainLayout l = canonical_layout(code);
            if (s_ncomp) {
                LayoutConfig cfg = l.config;
                cfg.n_comp = s_ncomp;
                l = build_layout(cfg);
            }
            PulseSchedule ec = compile_ec_round(code, s_level, l).schedule;
            RatePoint pt = estimate_logical_rate(s_eps, s_trials, {ec}, l, code, s_rounds, s_seed, s_jobs);
            // one full trajectory for inspection
            std::vector<PulseSchedule> all(s_rounds, ec);
            TrajectoryRecord first = run_trajectory(all, l, code, {s_eps, 0, derive_seed(s_seed, 0xfeed)});
            nlohmann::json out = {{"config",
                                   {{"code", code.name},
                                    {"level", s_level},
                                    {"ncomp", l.config.n_comp},
                                    {"rounds", s_rounds},
                                    {"eps", s_eps},
                                    {"trials", s_trials},
                                    {"seed", s_seed}}},
                                  {"layout", l.species_string()},
                                  {"pulses_per_round", ec.size()},
                                  {"failures", pt.failures},
                                  {"p_logical", pt.p_logical},
                                  {"ci_low", pt.ci_low},
                                  {"ci_high", pt.ci_high},
                                  {"example_trajectory", first.to_json()}};
            if (!s_out.empty()) write_file(s_out, dump(out));
            std::cout << code.name << " level " << s_level << ", eps " << format_double(s_eps) << ": " << pt.failures
                      << "/" << pt.trials << " failed, p per round " << format_double(pt.p_logical) << " ["
                      << format_double(pt.ci_low) << ", " << format_double(pt.ci_high) << "]\n";
            return 0;
        }

        if (*thr) {
            if (t_jobs == 0) throw UsageError("--jobs must be >= 1");
            ThresholdConfig cfg;
            try {
                cfg.eps = parse_eps_spec(t_eps);
            } catch (const std::invalid_argument &e) {
                throw UsageError(e.what());
            }
            cfg.trials = t_trials;
            cfg.code = t_code;
            if (!t_code_file.empty()) cfg.code_spec = load_code("", t_code_file);
            cfg.level = t_level;
            cfg.rounds = t_rounds;
            cfg.seed = t_seed;
            cfg.jobs = t_jobs;
            ThresholdReport rep = run_threshold(cfg);
            std::string csv = points_to_csv(rep.points);
            if (!t_out.empty()) {
                write_file(t_out, csv);
                std::string rp = t_report;
                if (rp.empty()) {
                    auto dot = t_out.find_last_of('.');
                    auto slash = t_out.find_last_of('/');
                    bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
                    rp = (has_ext ? t_out.substr(0, dot) : t_out) + ".json";
                }
                write_file(rp, dump(rep.to_json()));
            } else {
                std::cout << csv;
            }
            std::cout << rep.points.size() << " points, " << rep.window.size() << " in the fit window; ";
            if (rep.fit_ok) {
                std::cout << "slope " << format_double(rep.slope) << ", kappa_fit " << format_double(rep.kappa_fit);
            } else {
                std::cout << "no fit";
            }
            std::cout << "; N " << rep.N << ", kappa_bound " << format_double(rep.kappa_bound) << "\n";
            return 0;
        }

        if (*st) {
            auto checks = std::vector<GadgetCheck>{};
            for (const auto &name : gadget_names()) checks.push_back(verify_gadget(name, st_level));
            bool ok = true;
            nlohmann::json all = nlohmann::json::array();
            for (const auto &g : checks) {
                ok = ok && g.pass;
                char line[160];
                std::snprintf(line, sizeof line, "%-28s %s  %.2e", g.gadget.c_str(), g.pass ? "PASS" : "FAIL",
                              g.max_deviation);
                std::cout << line << "\n";
                nlohmann::json j = g.report;
                j["gadget"] = g.gadget;
                j["pass"] = g.pass;
                all.push_back(j);
            }
            if (!st_out.empty()) write_file(st_out, dump(all));
            std::cout << (ok ? "all gadgets PASS" : "some gadgets FAIL") << "\n";
            return ok ? 0 : 1;
        }
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
