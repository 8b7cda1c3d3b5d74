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

#ifndef MCNOT_CNOT_PROTOCOL_H
#define MCNOT_CNOT_PROTOCOL_H

// Measurement-based CNOT between two topological qubits using a quantum-dot
// ancilla. Qubits are held in the compact representation on a three-site
// register: the dot ancilla (A) at site 0, control (C) at site 1, target (T)
// at site 2. A joint parity between the dot and a Majorana pair is Z (x) Z on
// the dot site and the qubit site.

#include "mcnot/qstate.h"

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace mcnot {

inline constexpr std::size_t kDotSite = 0;
inline constexpr std::size_t kControlSite = 1;
inline constexpr std::size_t kTargetSite = 2;
inline constexpr std::size_t kBranchCount = 8;

/// Outcomes of one protocol run: the two joint parities and the final dot
/// readout bit.
struct MeasurementRecord {
    ParityOutcome p1 = ParityOutcome::even;
    ParityOutcome p2 = ParityOutcome::even;
    int m = 0;

    friend bool operator==(const MeasurementRecord&, const MeasurementRecord&) = default;
};

/// Row of the correction table (even before odd, then m = 0 before m = 1).
std::size_t branch_index(const MeasurementRecord& r);
MeasurementRecord record_at(std::size_t index);

/// "even,even,0" style text.
std::string to_string(const MeasurementRecord& r);
MeasurementRecord parse_record(std::string_view text);

struct CorrectionRule {
    Gate gate_c = Gate::I;  // I or Z
    Gate gate_t = Gate::I;  // I or X

    friend bool operator==(const CorrectionRule&, const CorrectionRule&) = default;
};

using CorrectionTable = std::array<CorrectionRule, kBranchCount>;

/// Published correspondence between outcomes and Pauli corrections.
const CorrectionTable& table_one();

CorrectionRule correction_lookup(const MeasurementRecord& r);

inline ParityObservable joint_parity_observable(std::size_t dot_site, std::size_t qubit_site) {
    return ParityObservable{{dot_site, qubit_site}, +1};
}

struct ProtocolRun {
    StateVector output;  // two sites: control, target
    MeasurementRecord record;
    double probability;
};

ProtocolRun run_protocol(const StateVector& control, const StateVector& target, const MeasurementRecord& forced,
                         bool apply_corrections = true);
ProtocolRun run_protocol(const StateVector& control, const StateVector& target, Rng& rng,
                         bool apply_corrections = true);

using Operator4 = Eigen::Matrix4cd;

Operator4 cnot_matrix();
Operator4 correction_operator(const CorrectionRule& rule);

/// Linear map on (C, T) realised by one measurement branch, with the dot
/// ancilla prepared in |0> and discarded after readout.
Operator4 branch_kraus(const MeasurementRecord& r, bool with_corrections,
                       const CorrectionTable& table = table_one());

inline const double kKrausScale = 1.0 / (2.0 * std::sqrt(2.0));

/// Operator-norm distance between `target` and `k` rescaled by `expected_scale`
/// after removing the global phase. The phase is read off the entry of `k`
/// with the largest magnitude on the support of `target`.
struct Proportionality {
    double deviation;
    std::complex<double> ratio;  // k ~ ratio * target
};
Proportionality proportionality(const Operator4& k, const Operator4& target, double expected_scale);

/// Rebuilds the correction table from projector algebra alone by searching
/// {I, Z} x {I, X} for the unique rule making each branch proportional to
/// CNOT. Throws std::logic_error if a branch has zero or several solutions.
CorrectionTable derive_correction_table(double tolerance = 1e-9);

struct BranchReport {
    MeasurementRecord record;
    CorrectionRule rule;
    double deviation = 0;
    double scale = 0;
    double probability = 0;         // mean over the sampled product inputs
    double probability_spread = 0;  // max |p - mean| over those inputs
    bool pass = false;
};

struct ProtocolReport {
    std::array<BranchReport, kBranchCount> branches;
    double tolerance = 0;
    double max_deviation = 0;
    double completeness_residual = 0;
    double probability_sum = 0;
    bool pass = false;
};

ProtocolReport verify_cnot(double tolerance, const CorrectionTable& table = table_one(), std::uint64_t seed = 7,
                           int n_inputs = 16);

nlohmann::ordered_json to_json(const ProtocolReport& report);

struct ShotStatistics {
    std::array<std::uint64_t, kBranchCount> counts{};
    double mean_fidelity = 0;
    double min_fidelity = 1;
    StateVector last_output = StateVector::basis(2, 0);
};

/// Runs `n_shots` independent protocol executions. Shot i draws from its own
/// engine seeded by (seed, i).
ShotStatistics shot_run(const StateVector& control, const StateVector& target, std::uint64_t n_shots,
                        std::uint64_t seed);

/// Runs shots with every measurement forced to `forced`.
ShotStatistics shot_run_forced(const StateVector& control, const StateVector& target, std::uint64_t n_shots,
                               const MeasurementRecord& forced);

StateVector ideal_cnot_output(const StateVector& control, const StateVector& target);

std::uint64_t shot_seed(std::uint64_t seed, std::uint64_t shot);

}  // namespace mcnot

#endif  // MCNOT_CNOT_PROTOCOL_H
