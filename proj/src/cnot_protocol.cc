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

#include "mcnot/cnot_protocol.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mcnot {

namespace {

void require_normalized(const StateVector& s, const char* what) {
    if (s.n_sites() != 1) throw std::invalid_argument(std::string(what) + " must be a single-qubit state");
    if (std::abs(s.norm_squared() - 1.0) > 1e-10) throw std::invalid_argument(std::string(what) + " is not normalized");
}

StateVector apply_correction(const StateVector& ct, const CorrectionRule& rule) {
    return apply_single(apply_single(ct, rule.gate_c, 0), rule.gate_t, 1);
}

void check_rule(const CorrectionRule& rule) {
    if (rule.gate_c != Gate::I && rule.gate_c != Gate::Z) throw std::invalid_argument("control correction must be I or Z");
    if (rule.gate_t != Gate::I && rule.gate_t != Gate::X) throw std::invalid_argument("target correction must be I or X");
}

double operator_norm(const Operator4& m) {
    Eigen::JacobiSVD<Operator4> svd(m);
    return svd.singularValues()(0);
}

}  // namespace

std::size_t branch_index(const MeasurementRecord& r) {
    if (r.m != 0 && r.m != 1) throw std::invalid_argument("dot readout must be 0 or 1");
    return (r.p1 == ParityOutcome::odd ? 4u : 0u) + (r.p2 == ParityOutcome::odd ? 2u : 0u) + static_cast<unsigned>(r.m);
}

MeasurementRecord record_at(std::size_t index) {
    if (index >= kBranchCount) throw std::out_of_range("branch index out of range");
    return {(index & 4) ? ParityOutcome::odd : ParityOutcome::even, (index & 2) ? ParityOutcome::odd : ParityOutcome::even,
            static_cast<int>(index & 1)};
}

std::string to_string(const MeasurementRecord& r) {
    return std::string(label(r.p1)) + "," + std::string(label(r.p2)) + "," + std::to_string(r.m);
}

MeasurementRecord parse_record(std::string_view text) {
    std::vector<std::string_view> parts;
    for (;;) {
        const auto comma = text.find(',');
        parts.push_back(text.substr(0, comma));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (parts.size() != 3) throw std::invalid_argument("measurement record must look like 'even,odd,1'");
    MeasurementRecord r{parse_parity_outcome(parts[0]), parse_parity_outcome(parts[1]), 0};
    if (parts[2] == "0") r.m = 0;
    else if (parts[2] == "1") r.m = 1;
    else throw std::invalid_argument("dot readout must be 0 or 1");
    return r;
}

const CorrectionTable& table_one() {
    using enum Gate;
    // P1 P2 M  ->  C  T
    static const CorrectionTable table{{
        {I, I},  // even even 0
        {I, X},  // even even 1
        {Z, I},  // even odd  0
        {Z, X},  // even odd  1
        {I, X},  // odd  even 0
        {I, I},  // odd  even 1
        {Z, X},  // odd  odd  0
        {Z, I},  // odd  odd  1
    }};
    return table;
}

CorrectionRule correction_lookup(const MeasurementRecord& r) { return table_one()[branch_index(r)]; }

ProtocolRun run_protocol(const StateVector& control, const StateVector& target, const MeasurementRecord& forced,
                         bool apply_corrections) {
    require_normalized(control, "control");
    require_normalized(target, "target");
    StateVector s = tensor(StateVector::basis(1, 0), tensor(control, target));
    s = apply_single(s, Gate::H, kDotSite);
    auto m1 = measure_parity(s, joint_parity_observable(kDotSite, kControlSite), forced.p1);
    s = apply_single(apply_single(m1.state, Gate::H, kDotSite), Gate::H, kTargetSite);
    auto m2 = measure_parity(s, joint_parity_observable(kDotSite, kTargetSite), forced.p2);
    s = apply_single(apply_single(m2.state, Gate::H, kDotSite), Gate::H, kTargetSite);
    auto readout = measure_site_z(s, kDotSite, forced.m);
    StateVector ct = slice_site(readout.state, kDotSite, readout.bit);
    if (apply_corrections) ct = apply_correction(ct, correction_lookup(forced));
    return {ct, forced, m1.probability * m2.probability * readout.probability};
}

ProtocolRun run_protocol(const StateVector& control, const StateVector& target, Rng& rng, bool apply_corrections) {
    require_normalized(control, "control");
    require_normalized(target, "target");
    StateVector s = tensor(StateVector::basis(1, 0), tensor(control, target));
    s = apply_single(s, Gate::H, kDotSite);
    auto m1 = measure_parity(s, joint_parity_observable(kDotSite, kControlSite), rng);
    s = apply_single(apply_single(m1.state, Gate::H, kDotSite), Gate::H, kTargetSite);
    auto m2 = measure_parity(s, joint_parity_observable(kDotSite, kTargetSite), rng);
    s = apply_single(apply_single(m2.state, Gate::H, kDotSite), Gate::H, kTargetSite);
    auto readout = measure_site_z(s, kDotSite, rng);
    MeasurementRecord record{m1.outcome, m2.outcome, readout.bit};
    StateVector ct = slice_site(readout.state, kDotSite, readout.bit);
    if (apply_corrections) ct = apply_correction(ct, correction_lookup(record));
    return {ct, record, m1.probability * m2.probability * readout.probability};
}

Operator4 cnot_matrix() {
    Operator4 c = Operator4::Zero();
    c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1.0;
    return c;
}

Operator4 correction_operator(const CorrectionRule& rule) {
    check_rule(rule);
    Operator4 out;
    for (int i = 0; i < 4; ++i) out.col(i) = apply_correction(StateVector::basis(2, i), rule).amplitudes();
    return out;
}

Operator4 branch_kraus(const MeasurementRecord& r, bool with_corrections, const CorrectionTable& table) {
    const auto& rule = table[branch_index(r)];
    Operator4 k;
    for (int i = 0; i < 4; ++i) {
        StateVector s = StateVector::basis(3, static_cast<std::uint64_t>(i));  // |0>_A |c t>
        s = apply_single(s, Gate::H, kDotSite);
        s = project_parity(s, joint_parity_observable(kDotSite, kControlSite), r.p1).state;
        s = apply_single(apply_single(s, Gate::H, kDotSite), Gate::H, kTargetSite);
        s = project_parity(s, joint_parity_observable(kDotSite, kTargetSite), r.p2).state;
        s = apply_single(apply_single(s, Gate::H, kDotSite), Gate::H, kTargetSite);
        StateVector ct = slice_site(s, kDotSite, r.m);
        if (with_corrections) ct = apply_correction(ct, rule);
        k.col(i) = ct.amplitudes();
    }
    return k;
}

Proportionality proportionality(const Operator4& k, const Operator4& target, double expected_scale) {
    const double support = target.cwiseAbs().maxCoeff();
    Eigen::Index bi = -1, bj = -1;
    double best = -1;
    for (Eigen::Index j = 0; j < 4; ++j) {
        for (Eigen::Index i = 0; i < 4; ++i) {
            if (std::abs(target(i, j)) < 0.5 * support) continue;
            if (std::abs(k(i, j)) > best) {
                best = std::abs(k(i, j));
                bi = i;
                bj = j;
            }
        }
    }
    const std::complex<double> ratio = k(bi, bj) / target(bi, bj);
    if (std::abs(ratio) == 0.0) return {operator_norm(target), ratio};
    const std::complex<double> phase = ratio / std::abs(ratio);
    return {operator_norm(k / (expected_scale * phase) - target), ratio};
}

CorrectionTable derive_correction_table(double tolerance) {
    const Operator4 cnot = cnot_matrix();
    CorrectionTable derived{};
    for (std::size_t b = 0; b < kBranchCount; ++b) {
        const Operator4 raw = branch_kraus(record_at(b), false);
        int found = 0;
        for (Gate gc : {Gate::I, Gate::Z}) {
            for (Gate gt : {Gate::I, Gate::X}) {
                CorrectionRule rule{gc, gt};
                const Operator4 k = correction_operator(rule) * raw;
                auto p = proportionality(k, cnot, std::abs(proportionality(k, cnot, 1.0).ratio));
                if (p.deviation < tolerance) {
                    derived[b] = rule;
                    ++found;
                }
            }
        }
        if (found != 1) {
            throw std::logic_error("branch " + to_string(record_at(b)) + " admits " + std::to_string(found) +
                                   " corrections; expected exactly one");
        }
    }
    return derived;
}

ProtocolReport verify_cnot(double tolerance, const CorrectionTable& table, std::uint64_t seed, int n_inputs) {
    for (const auto& rule : table) check_rule(rule);
    const Operator4 cnot = cnot_matrix();

    Rng rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<Eigen::Vector4cd> inputs;
    for (int n = 0; n < n_inputs; ++n) {
        Eigen::Vector2cd c, t;
        for (int i = 0; i < 2; ++i) {
            c(i) = {gauss(rng), gauss(rng)};
            t(i) = {gauss(rng), gauss(rng)};
        }
        c.normalize();
        t.normalize();
        Eigen::Vector4cd ct;
        ct << c(0) * t(0), c(0) * t(1), c(1) * t(0), c(1) * t(1);
        inputs.push_back(ct);
    }

    ProtocolReport report;
    report.tolerance = tolerance;
    Operator4 completeness = Operator4::Zero();
    bool all = true;
    for (std::size_t b = 0; b < kBranchCount; ++b) {
        BranchReport& br = report.branches[b];
        br.record = record_at(b);
        br.rule = table[b];
        const Operator4 k = branch_kraus(br.record, true, table);
        completeness += k.adjoint() * k;
        const auto p = proportionality(k, cnot, kKrausScale);
        br.deviation = p.deviation;
        br.scale = std::abs(p.ratio);
        std::vector<double> probs;
        for (const auto& in : inputs) probs.push_back((k * in).squaredNorm());
        double mean = 0;
        for (double q : probs) mean += q;
        mean /= static_cast<double>(probs.size());
        double spread = 0;
        for (double q : probs) spread = std::max(spread, std::abs(q - mean));
        br.probability = mean;
        br.probability_spread = spread;
        br.pass = br.deviation < tolerance;
        all = all && br.pass;
        report.max_deviation = std::max(report.max_deviation, br.deviation);
        report.probability_sum += mean;
    }
    report.completeness_residual = operator_norm(completeness - Operator4::Identity());
    report.pass = all;
    return report;
}

nlohmann::ordered_json to_json(const ProtocolReport& report) {
    nlohmann::ordered_json j;
    j["pass"] = report.pass;
    j["tolerance"] = report.tolerance;
    j["max_deviation"] = report.max_deviation;
    j["completeness_residual"] = report.completeness_residual;
    j["probability_sum"] = report.probability_sum;
    nlohmann::ordered_json branches = nlohmann::ordered_json::object();
    for (const auto& b : report.branches) {
        branches[to_string(b.record)] = {
            {"deviation", b.deviation},
            {"probability", b.probability},
            {"probability_spread", b.probability_spread},
            {"scale", b.scale},
            {"rule", {{"control", std::string(gate_name(b.rule.gate_c))}, {"target", std::string(gate_name(b.rule.gate_t))}}},
            {"pass", b.pass},
        };
    }
    j["branches"] = branches;
    return j;
}

StateVector ideal_cnot_output(const StateVector& control, const StateVector& target) {
    const StateVector in = tensor(control, target);
    return StateVector(2, cnot_matrix() * in.amplitudes());
}

std::uint64_t shot_seed(std::uint64_t seed, std::uint64_t shot) {
    // splitmix64 over (seed, shot)
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (shot + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

template <typename RunOne>
ShotStatistics accumulate(const StateVector& control, const StateVector& target, std::uint64_t n_shots, RunOne run_one) {
    if (n_shots < 1) throw std::invalid_argument("n_shots must be at least 1");
    const StateVector ideal = ideal_cnot_output(control, target);
    ShotStatistics stats;
    double sum = 0;
    for (std::uint64_t shot = 0; shot < n_shots; ++shot) {
        ProtocolRun run = run_one(shot);
        const double f = fidelity(ideal, run.output);
        ++stats.counts[branch_index(run.record)];
        sum += f;
        stats.min_fidelity = std::min(stats.min_fidelity, f);
        stats.last_output = std::move(run.output);
    }
    stats.mean_fidelity = sum / static_cast<double>(n_shots);
    return stats;
}

}  // namespace

ShotStatistics shot_run(const StateVector& control, const StateVector& target, std::uint64_t n_shots,
                        std::uint64_t seed) {
    return accumulate(control, target, n_shots, [&](std::uint64_t shot) {
        Rng rng(shot_seed(seed, shot));
        return run_protocol(control, target, rng);
    });
}

ShotStatistics shot_run_forced(const StateVector& control, const StateVector& target, std::uint64_t n_shots,
                               const MeasurementRecord& forced) {
    return accumulate(control, target, n_shots,
                      [&](std::uint64_t) { return run_protocol(control, target, forced); });
}

}  // namespace mcnot
