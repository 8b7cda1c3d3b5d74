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

#ifndef MCNOT_FLUX_READOUT_H
#define MCNOT_FLUX_READOUT_H

// Three-junction flux qubit used as a charge-parity meter. Junctions 1 and 3
// have coupling E_J, junction 2 has alpha * E_J; the phase across junction 2
// is eliminated through phi1 + phi2 + phi3 = 2 pi f. A Josephson vortex
// circling both islands picks up the Aharonov-Casher phase pi q / e, so the
// tunnel splitting between the two persistent-current states reads out the
// parity of the enclosed charge.

#include "mcnot/qstate.h"

#include <cstddef>
#include <vector>

namespace mcnot {

inline constexpr double kDefaultDelta0Ev = 100e-6;
inline constexpr double kBoltzmannEvPerKelvin = 8.617333262e-5;
inline constexpr double kDegeneracyTolerance = 1e-9;  // in units of E_J
inline constexpr double kCalibrationTolerance = 1e-9;  // in units of e

inline double ev_to_kelvin(double ev) { return ev / kBoltzmannEvPerKelvin; }
inline double kelvin_to_ev(double kelvin) { return kelvin * kBoltzmannEvPerKelvin; }

struct FluxParams {
    double e_j = 1.0;
    double alpha = 1.2;
    double f = 0.5;  // Phi_x / Phi_0
    double delta0 = kDefaultDelta0Ev;

    void validate() const;
};

/// -E_J [cos phi1 + cos phi3 + alpha cos(2 pi f - phi1 - phi3)]
double potential(double phi1, double phi3, const FluxParams& params);

struct PotentialMinimum {
    double phi1;  // in [0, 2 pi)
    double phi3;
    double energy;
};

/// All local minima on the torus, sorted by energy. Seeds are grid points
/// not higher than any of their eight neighbours; each seed is polished by a
/// compass search until the step drops below refine_tolerance. Seeds that
/// land on the same point are merged; distinct points of equal energy are not.
std::vector<PotentialMinimum> find_minima(const FluxParams& params, std::size_t grid_resolution = 128,
                                          double refine_tolerance = 1e-10);

/// Minima within tolerance * E_J of the global minimum.
std::vector<PotentialMinimum> lowest_minima(const std::vector<PotentialMinimum>& minima, const FluxParams& params,
                                            double tolerance = kDegeneracyTolerance);

/// Shortest distance between two points on the 2 pi periodic torus.
double torus_distance(double a1, double a3, double b1, double b3);

/// Delta0 |cos(pi q / 2)| for total charge q in units of e.
double tunnel_splitting(double q_total, double delta0);

struct ChargeConfig {
    int np_l = 0;     // left-island fermion occupation
    int np_r = 0;     // right-island fermion occupation
    int dot_bit = 0;  // electron on the upper dot
    double q_l = 0;   // gate charges, units of e
    double q_r = 0;

    void validate() const;
};

double total_charge(const ChargeConfig& config);

/// Distance of q_l + q_r from the nearest even integer.
double calibration_residual(const ChargeConfig& config);

/// Shifts q_l so that the gate charges sum to the nearest even integer,
/// which maximizes the splitting with empty islands. Requires np_l, np_r and
/// dot_bit all zero.
ChargeConfig calibrate_gate_charges(const ChargeConfig& config);

/// even if the splitting exceeds threshold_fraction * delta0, odd otherwise.
/// Throws std::domain_error if the gate charges are not calibrated.
ParityOutcome parity_readout(const ChargeConfig& config, double delta0 = kDefaultDelta0Ev,
                             double threshold_fraction = 0.5);

}  // namespace mcnot

#endif  // MCNOT_FLUX_READOUT_H
