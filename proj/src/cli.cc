// Copyright 2026 The mcnot Authors
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

#include "mcnot/cli.h"

#include "mcnot/cnot_protocol.h"
#include "mcnot/flux_readout.h"
#include "mcnot/nanowire_bdg.h"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

namespace mcnot {

namespace {

std::string num(double v, int precision = 12) {
    std::ostringstream s;
    s << std::setprecision(precision) << v;
    return s.str();
}

std::string sci(double v) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(12) << v;
    return s.str();
}

void emit(const std::string& path, const std::string& contents, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << contents;
    } else {
        write_file_atomically(path, contents);
    }
}

StateVector parse_qubit(const std::string& text) {
    const double r = 1.0 / std::sqrt(2.0);
    if (text == "0") return StateVector::basis(1, 0);
    if (text == "1") return StateVector::basis(1, 1);
    if (text == "+" || text == "plus") return state_from<double>({r, r});
    if (text == "-" || text == "minus") return state_from<double>({r, -r});
    throw std::invalid_argument("qubit state must be one of 0, 1, +, -");
}

std::string branch_label(const MeasurementRecord& r) {
    return std::string(label(r.p1)) + "-" + std::string(label(r.p2)) + "-" + std::to_string(r.m);
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("MCNOT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("MCNOT_SEED must be an unsigned integer");
        }
    }
    return 0;
}

struct WireOptions {
    std::size_t sites = 400;
    double t = 1.0;
    double mu = 0.0;
    double so = 0.5;
    double vb = 0.2;
    double delta = 0.1;
    double phase = 0.0;

    void add_to(CLI::App* app) {
        app->add_option("--sites", sites, "Number of lattice sites")->capture_default_str();
        app->add_option("--t", t, "Hopping t (energy unit)")->capture_default_str();
        app->add_option("--mu", mu, "Chemical potential from the band bottom, units of t")->capture_default_str();
        app->add_option("--so", so, "Spin-orbit strength hbar u / a, units of t")->capture_default_str();
        app->add_option("--vb", vb, "Zeeman energy V_B, units of t")->capture_default_str();
        app->add_option("--delta", delta, "Pairing magnitude |Delta|, units of t")->capture_default_str();
        app->add_option("--phase", phase, "Superconducting phase, radians")->capture_default_str();
    }

    WireParams params() const {
        WireParams p = WireParams::uniform(sites, mu, vb, delta, t, so);
        p.delta_phase = phase;
        p.validate();
        return p;
    }

    std::string header() const {
        return "# sites=" + std::to_string(sites) + " t=" + num(t) + " so=" + num(so) + " vb=" + num(vb) +
               " delta=" + num(delta) + " phase=" + num(phase);
    }
};

std::vector<GateSegment> read_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open profile '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed profile JSON: ") + e.what());
    }
    if (!doc.is_array()) throw std::invalid_argument("profile JSON must be an array of segments");
    std::vector<GateSegment> segments;
    for (const auto& item : doc) {
        if (!item.is_object() || !item.contains("start_site") || !item.contains("end_site") || !item.contains("mu") ||
            !item["start_site"].is_number_unsigned() || !item["end_site"].is_number_unsigned() ||
            !item["mu"].is_number()) {
            throw std::invalid_argument("each segment needs unsigned start_site, end_site and numeric mu");
        }
        segments.push_back({item["start_site"].get<std::size_t>(), item["end_site"].get<std::size_t>(),
                            item["mu"].get<double>()});
    }
    return segments;
}

int protocol_verify(double tol, bool json, const std::string& output, std::ostream& out) {
    const ProtocolReport report = verify_cnot(tol);
    if (json || !output.empty()) {
        emit(output, to_json(report).dump(2) + "\n", out);
    }
    if (!json) {
        std::ostringstream s;
        s << "branch            rule   deviation             probability\n";
        for (const auto& b : report.branches) {
            s << std::left << std::setw(18) << to_string(b.record) << gate_name(b.rule.gate_c) << ","
              << gate_name(b.rule.gate_t) << "    " << std::setw(22) << sci(b.deviation) << num(b.probability) << "\n";
        }
        s << "max_deviation " << sci(report.max_deviation) << "\n";
        s << "completeness_residual " << sci(report.completeness_residual) << "\n";
        s << (report.pass ? "PASS" : "FAIL") << " (tolerance " << sci(tol) << ")\n";
        out << s.str();
    }
    return report.pass ? kExitOk : kExitVerificationFailed;
}

int protocol_run(const std::string& control_text, const std::string& target_text, std::uint64_t shots,
                 std::uint64_t seed, const std::string& force, const std::string& output, std::ostream& out) {
    const StateVector control = parse_qubit(control_text);
    const StateVector target = parse_qubit(target_text);
    if (shots < 1) throw std::invalid_argument("--shots must be at least 1");
    std::optional<MeasurementRecord> forced;
    if (!force.empty()) forced = parse_record(force);
    const ShotStatistics stats =
        forced ? shot_run_forced(control, target, shots, *forced) : shot_run(control, target, shots, seed);

    std::ostringstream s;
    s << "# mcnot protocol run\n";
    s << "# control=" << control_text << " target=" << target_text << " shots=" << shots << " seed=" << seed
      << " force=" << (forced ? to_string(*forced) : "none") << "\n";
    s << "# branch = p1-p2-m (joint parity dot/control, joint parity dot/target, dot readout)\n";
    s << "branch,count\n";
    for (std::size_t b = 0; b < kBranchCount; ++b) s << branch_label(record_at(b)) << "," << stats.counts[b] << "\n";
    s << "# mean_fidelity=" << num(stats.mean_fidelity, 15) << "\n";
    s << "# min_fidelity=" << num(stats.min_fidelity, 15) << "\n";
    s << "# last_output=";
    for (std::size_t i = 0; i < 4; ++i) {
        const auto a = stats.last_output[i];
        s << (i ? " " : "") << num(a.real()) << (a.imag() < 0 ? "-" : "+") << num(std::abs(a.imag())) << "i";
    }
    s << "\n";
    emit(output, s.str(), out);
    return kExitOk;
}

int protocol_table(const std::string& output, std::ostream& out) {
    const CorrectionTable derived = derive_correction_table();
    const CorrectionTable& published = table_one();
    std::ostringstream s;
    s << "# mcnot protocol table\n";
    s << "# gate_c/gate_t: published corrections; derived_*: rebuilt from projector algebra\n";
    s << "p1,p2,m,gate_c,gate_t,derived_c,derived_t,match\n";
    bool all = true;
    for (std::size_t b = 0; b < kBranchCount; ++b) {
        const auto r = record_at(b);
        const bool match = derived[b] == published[b];
        all = all && match;
        s << label(r.p1) << "," << label(r.p2) << "," << r.m << "," << gate_name(published[b].gate_c) << ","
          << gate_name(published[b].gate_t) << "," << gate_name(derived[b].gate_c) << ","
          << gate_name(derived[b].gate_t) << "," << (match ? "yes" : "no") << "\n";
    }
    emit(output, s.str(), out);
    return all ? kExitOk : kExitVerificationFailed;
}

int wire_spectrum(const WireOptions& w, const std::string& output, std::ostream& out) {
    const WireParams p = w.params();
    const auto spec = spectrum(build_bdg(p), false);
    std::ostringstream s;
    s << "# mcnot wire spectrum\n" << w.header() << " mu=" << num(w.mu) << "\n# units: energy in t\n";
    s << "index,energy\n";
    for (Eigen::Index i = 0; i < spec.energies.size(); ++i) s << i << "," << sci(spec.energies(i)) << "\n";
    emit(output, s.str(), out);
    return kExitOk;
}

int wire_phase_scan(const WireOptions& w, double mu_min, double mu_max, std::size_t steps, double tol,
                    const std::string& output, std::ostream& out) {
    const auto points = phase_scan(w.params(), mu_min, mu_max, steps, tol);
    std::ostringstream s;
    s << "# mcnot wire phase-scan\n"
      << w.header() << " mu_min=" << num(mu_min) << " mu_max=" << num(mu_max) << " steps=" << steps
      << " energy_tol=" << num(tol) << "\n";
    try {
        s << "# critical_mu=" << num(critical_mu(w.vb, w.delta)) << "\n";
    } catch (const std::domain_error&) {
        s << "# critical_mu=none\n";
    }
    s << "# units: energy in t\n";
    s << "mu,min_abs_energy,topological\n";
    for (const auto& pt : points) s << num(pt.mu) << "," << sci(pt.min_abs_energy) << "," << (pt.topological ? 1 : 0) << "\n";
    emit(output, s.str(), out);
    return kExitOk;
}

int wire_keyboard(const WireOptions& w, const std::string& profile_path, double base_mu, double tol,
                  const std::string& output, std::ostream& out) {
    const auto segments = read_profile(profile_path);
    WireParams p = w.params();
    p.mu = keyboard_profile(segments, base_mu, p.n_sites);
    const auto spec = spectrum(build_bdg(p), true);
    const auto modes = majorana_modes(spec, tol * p.hopping, 2 * segments.size());
    std::ostringstream s;
    s << "# mcnot wire keyboard\n" << w.header() << " base_mu=" << num(base_mu) << " energy_tol=" << num(tol) << "\n";
    s << "# segments=";
    for (std::size_t i = 0; i < segments.size(); ++i) {
        s << (i ? ";" : "") << "[" << segments[i].start_site << "," << segments[i].end_site << ")@" << num(segments[i].mu);
    }
    s << "\n# modes=" << modes.weights.size() << " expected=" << 2 * segments.size() << "\n";
    s << "# energies=";
    for (std::size_t i = 0; i < modes.energies.size(); ++i) s << (i ? " " : "") << sci(modes.energies[i]);
    s << "\n# centers=";
    for (std::size_t i = 0; i < modes.localization_centers.size(); ++i) s << (i ? " " : "") << modes.localization_centers[i];
    s << "\n# units: energy in t, weights are per-site probabilities\n";
    s << "site";
    for (std::size_t k = 0; k < modes.weights.size(); ++k) s << ",weight_mode_" << k + 1;
    s << "\n";
    for (std::size_t j = 0; j < p.n_sites; ++j) {
        s << j;
        for (const auto& wgt : modes.weights) s << "," << sci(wgt[j]);
        s << "\n";
    }
    emit(output, s.str(), out);
    return kExitOk;
}

int flux_potential(const FluxParams& fp, std::size_t grid, const std::string& output, std::ostream& out) {
    fp.validate();
    if (grid < 2) throw std::invalid_argument("--grid must be at least 2");
    const auto minima = find_minima(fp, std::max<std::size_t>(grid, 64));
    const auto lowest = lowest_minima(minima, fp);
    std::ostringstream s;
    s << "# mcnot flux potential\n";
    s << "# ej=" << num(fp.e_j) << " alpha=" << num(fp.alpha) << " flux=" << num(fp.f) << " grid=" << grid << "\n";
    s << "# units: phases in radians, energy in E_J\n";
    s << "# local_minima=" << minima.size() << " degenerate_lowest=" << lowest.size() << "\n";
    for (const auto& m : minima) {
        s << "# minimum phi1=" << num(m.phi1) << " phi3=" << num(m.phi3) << " energy=" << num(m.energy / fp.e_j) << "\n";
    }
    s << "phi1,phi3,energy\n";
    const double h = 2.0 * std::numbers::pi / static_cast<double>(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        for (std::size_t k = 0; k < grid; ++k) {
            const double p1 = h * static_cast<double>(i), p3 = h * static_cast<double>(k);
            s << num(p1) << "," << num(p3) << "," << num(potential(p1, p3, fp) / fp.e_j) << "\n";
        }
    }
    emit(output, s.str(), out);
    return kExitOk;
}

int flux_splitting(const ChargeConfig& c, double delta0, double threshold, std::ostream& out) {
    const double q = total_charge(c);
    const double d = tunnel_splitting(q, delta0);
    const ParityOutcome parity = parity_readout(c, delta0, threshold);
    out << "q=" << num(q) << " delta=" << sci(d) << " delta0=" << sci(delta0) << " delta_kelvin=" << num(ev_to_kelvin(d))
        << " parity=" << label(parity) << "\n";
    return kExitOk;
}

}  // namespace

void write_file_atomically(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        f << contents;
        f.flush();
        if (!f) throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, target);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Measurement-based CNOT for Majorana qubits: protocol, nanowire and flux-qubit tools", "mcnot"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string output;
    std::function<int()> action;

    // protocol
    auto* protocol = app.add_subcommand("protocol", "Measurement-based CNOT protocol")->require_subcommand(1);
    double tol = 1e-12;
    bool json = false;
    auto* verify = protocol->add_subcommand("verify", "Check every measurement branch against CNOT");
    verify->add_option("--tol", tol, "Kraus deviation tolerance")->capture_default_str();
    verify->add_flag("--json", json, "Print the JSON report");
    verify->add_option("-o,--output", output, "Write the JSON report to this file");
    verify->callback([&] { action = [&] { return protocol_verify(tol, json, output, out); }; });

    std::string control = "0", target = "0", force;
    std::uint64_t shots = 1, seed = 0;
    auto* run = protocol->add_subcommand("run", "Sample protocol executions");
    run->add_option("--control", control, "Control qubit: 0, 1, +, -")->capture_default_str();
    run->add_option("--target", target, "Target qubit: 0, 1, +, -")->capture_default_str();
    run->add_option("--shots", shots, "Number of shots")->capture_default_str();
    auto* seed_opt = run->add_option("--seed", seed, "RNG seed (default 0, or MCNOT_SEED)");
    run->add_option("--force", force, "Force every shot onto a branch, e.g. even,even,0");
    run->add_option("-o,--output", output, "Output CSV path");
    run->callback([&] {
        if (seed_opt->count() == 0) seed = default_seed();
        action = [&] { return protocol_run(control, target, shots, seed, force, output, out); };
    });

    auto* table = protocol->add_subcommand("table", "Published and derived correction tables");
    table->add_option("-o,--output", output, "Output CSV path");
    table->callback([&] { action = [&] { return protocol_table(output, out); }; });

    // wire
    auto* wire = app.add_subcommand("wire", "Nanowire BdG model")->require_subcommand(1);
    WireOptions w;
    double energy_tol = kZeroModeTolerance;
    auto* spec_cmd = wire->add_subcommand("spectrum", "BdG spectrum of a uniform wire");
    w.add_to(spec_cmd);
    spec_cmd->add_option("-o,--output", output, "Output CSV path");
    spec_cmd->callback([&] { action = [&] { return wire_spectrum(w, output, out); }; });

    double mu_min = 0.0, mu_max = 0.3;
    std::size_t steps = 61;
    auto* scan = wire->add_subcommand("phase-scan", "Sweep a uniform chemical potential");
    w.add_to(scan);
    scan->add_option("--mu-min", mu_min)->capture_default_str();
    scan->add_option("--mu-max", mu_max)->capture_default_str();
    scan->add_option("--steps", steps)->capture_default_str();
    scan->add_option("--tol", energy_tol, "Zero-mode threshold in units of t")->capture_default_str();
    scan->add_option("-o,--output", output, "Output CSV path");
    scan->callback([&] { action = [&] { return wire_phase_scan(w, mu_min, mu_max, steps, energy_tol, output, out); }; });

    std::string profile;
    double base_mu = -0.5;
    auto* keyboard = wire->add_subcommand("keyboard", "Majorana modes of a gate-defined profile");
    w.add_to(keyboard);
    keyboard->add_option("--profile", profile, "JSON array of {start_site, end_site, mu}")->required();
    keyboard->add_option("--base-mu", base_mu, "Chemical potential outside the segments")->capture_default_str();
    keyboard->add_option("--tol", energy_tol, "Zero-mode threshold in units of t")->capture_default_str();
    keyboard->add_option("-o,--output", output, "Output CSV path");
    keyboard->callback([&] { action = [&] { return wire_keyboard(w, profile, base_mu, energy_tol, output, out); }; });

    // flux
    auto* flux = app.add_subcommand("flux", "Flux-qubit parity meter")->require_subcommand(1);
    FluxParams fp;
    std::size_t grid = 201;
    auto* pot = flux->add_subcommand("potential", "Potential surface and its minima");
    pot->add_option("--ej", fp.e_j, "Josephson energy E_J")->capture_default_str();
    pot->add_option("--alpha", fp.alpha, "Junction-2 coupling ratio")->capture_default_str();
    pot->add_option("--flux", fp.f, "Reduced flux Phi_x / Phi_0")->capture_default_str();
    pot->add_option("--grid", grid, "Grid points per period")->capture_default_str();
    pot->add_option("-o,--output", output, "Output CSV path");
    pot->callback([&] { action = [&] { return flux_potential(fp, grid, output, out); }; });

    ChargeConfig cc;
    double delta0 = kDefaultDelta0Ev, threshold = 0.5;
    auto* split = flux->add_subcommand("splitting", "Aharonov-Casher tunnel splitting and parity label");
    split->add_option("--np-l", cc.np_l, "Left island occupation")->check(CLI::Range(0, 1))->capture_default_str();
    split->add_option("--np-r", cc.np_r, "Right island occupation")->check(CLI::Range(0, 1))->capture_default_str();
    split->add_option("--dot", cc.dot_bit, "Upper-dot occupation")->check(CLI::Range(0, 1))->capture_default_str();
    split->add_option("--q-l", cc.q_l, "Left gate charge, units of e")->capture_default_str();
    split->add_option("--q-r", cc.q_r, "Right gate charge, units of e")->capture_default_str();
    split->add_option("--delta0", delta0, "Bare splitting, eV")->capture_default_str();
    split->add_option("--threshold", threshold, "Even/odd threshold as a fraction of delta0")->capture_default_str();
    split->callback([&] { action = [&] { return flux_splitting(cc, delta0, threshold, out); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    try {
        return action();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
}

}  // namespace mcnot
