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

#include "mcnot/flux_readout.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mcnot/cnot_protocol.h"
#include "mcnot/qstate.h"
#include "oracles.h"

using namespace mcnot;
namespace ref = mcnot::oracle;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(flux_readout, potential_values) {
    EXPECT_NEAR(potential(0, 0, {1.0, 0.8, 0.0}), -2.8, 1e-15);
    EXPECT_NEAR(potential(0, 0, {2.0, 1.2, 0.5}), -2.0 * (2.0 - 1.2), 1e-14);
    EXPECT_THROW(find_minima({0.0, 1.2, 0.5}), std::invalid_argument);
    EXPECT_THROW(find_minima({1.0, -1.0, 0.5}), std::invalid_argument);
}

TEST(flux_readout, potential_symmetry_and_periodicity) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int i = 0; i < 200; ++i) {
        const double a = u(rng), b = u(rng);
        const FluxParams p{1.3, 0.4 + std::abs(u(rng)) / 5, std::abs(u(rng)) / 10};
        EXPECT_NEAR(potential(a + 2 * kPi, b, p), potential(a, b, p), 1e-12);
        EXPECT_NEAR(potential(a, b - 4 * kPi, p), potential(a, b, p), 1e-12);
        EXPECT_NEAR(potential(a, b, p), potential(b, a, p), 1e-12);
    }
    // At half a flux quantum the potential is even under phi -> -phi.
    const FluxParams half{1.0, 1.2, 0.5};
    for (int i = 0; i < 100; ++i) {
        const double a = u(rng), b = u(rng);
        EXPECT_NEAR(potential(-a, -b, half), potential(a, b, half), 1e-12);
    }
}

TEST(flux_readout, unique_minimum_without_flux) {
    const auto minima = lowest_minima(find_minima({1.0, 0.8, 0.0}), {1.0, 0.8, 0.0});
    ASSERT_EQ(minima.size(), 1u);
    EXPECT_NEAR(minima[0].energy, -2.8, 1e-12);
    EXPECT_LT(torus_distance(minima[0].phi1, minima[0].phi3, 0, 0), 1e-6);
}

TEST(flux_readout, degenerate_minima_at_half_flux) {
    const FluxParams p{1.0, 1.2, 0.5};
    const auto all = find_minima(p);
    const auto low = lowest_minima(all, p);
    ASSERT_EQ(low.size(), 2u);
    // cos(phi) = 1 / (2 alpha) on the symmetric line phi1 = phi3.
    const double phi = std::acos(1.0 / 2.4);
    const double e_min = -(2 * std::cos(phi) + 1.2 * std::cos(kPi - 2 * phi));
    for (const auto& m : low) {
        EXPECT_NEAR(m.energy, e_min, 1e-12);
        EXPECT_NEAR(m.energy, -1.6166666666666667, 1e-12);
        EXPECT_LT(std::min(torus_distance(m.phi1, m.phi3, phi, phi), torus_distance(m.phi1, m.phi3, -phi, -phi)), 1e-6);
    }
    EXPECT_LT(torus_distance(low[0].phi1, low[0].phi3, -low[1].phi1, -low[1].phi3), 1e-6);
    EXPECT_GT(torus_distance(low[0].phi1, low[0].phi3, low[1].phi1, low[1].phi3), 1.0);
}

TEST(flux_readout, minima_agree_with_brute_force_grid) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 8; ++i) {
        const FluxParams p{0.5 + u(rng), 0.3 + 1.5 * u(rng), u(rng)};
        const auto minima = find_minima(p);
        ASSERT_FALSE(minima.empty());
        const auto grid = ref::flux_grid_minimum(p.e_j, p.alpha, p.f, 400);
        EXPECT_LE(minima.front().energy, grid.energy + 1e-12);
        // A 400 point grid is within a quadratic step of the true minimum.
        EXPECT_GT(minima.front().energy, grid.energy - 1e-3 * p.e_j * (1 + p.alpha));
        for (std::size_t k = 1; k < minima.size(); ++k) EXPECT_LE(minima[k - 1].energy, minima[k].energy);
    }
}

TEST(flux_readout, minima_resolution_checked) {
    EXPECT_THROW(find_minima({1.0, 1.2, 0.5}, 16), std::invalid_argument);
}

TEST(flux_readout, torus_distance_wraps) {
    EXPECT_NEAR(torus_distance(0.1, 0.0, 2 * kPi - 0.1, 0.0), 0.2, 1e-12);
    EXPECT_NEAR(torus_distance(0.0, 0.0, 0.3, 0.4), 0.5, 1e-12);
}

TEST(flux_readout, tunnel_splitting_values) {
    EXPECT_EQ(tunnel_splitting(0.0, 1.0), 1.0);
    EXPECT_EQ(tunnel_splitting(1.0, 1.0), 0.0);
    EXPECT_EQ(tunnel_splitting(2.0, 1.0), 1.0);
    EXPECT_EQ(tunnel_splitting(-3.0, 1.0), 0.0);
    EXPECT_NEAR(tunnel_splitting(0.5, 2.0), std::sqrt(2.0), 1e-15);
    EXPECT_THROW(tunnel_splitting(0.0, -1.0), std::invalid_argument);

    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-20, 20);
    for (int i = 0; i < 500; ++i) {
        const double q = u(rng);
        EXPECT_NEAR(tunnel_splitting(q, 1.0), tunnel_splitting(q + 2.0, 1.0), 1e-12);
        EXPECT_NEAR(tunnel_splitting(q, 1.0), tunnel_splitting(-q, 1.0), 1e-12);
        EXPECT_NEAR(tunnel_splitting(q, 1.0), std::abs(std::cos(kPi * q / 2)), 1e-12);
    }
}

TEST(flux_readout, total_charge_and_calibration) {
    EXPECT_EQ(total_charge({1, 0, 1, 0.0, 0.0}), 2.0);
    EXPECT_EQ(total_charge({1, 1, 1, 0.0, 0.0}), 3.0);
    EXPECT_THROW(total_charge({2, 0, 0, 0.0, 0.0}), std::invalid_argument);

    auto c = calibrate_gate_charges({0, 0, 0, 0.3, 0.0});
    EXPECT_NEAR(c.q_l, 0.0, 1e-15);
    EXPECT_LT(calibration_residual(c), kCalibrationTolerance);
    c = calibrate_gate_charges({0, 0, 0, 1.0, 0.0});
    EXPECT_LT(calibration_residual(c), kCalibrationTolerance);
    EXPECT_NEAR(std::fmod(c.q_l + c.q_r, 2.0), 0.0, 1e-15);
    EXPECT_NEAR(tunnel_splitting(total_charge(c), 1.0), 1.0, 1e-15);
    EXPECT_THROW(calibrate_gate_charges({1, 0, 0, 0.0, 0.0}), std::invalid_argument);
}

TEST(flux_readout, readout_examples) {
    EXPECT_EQ(parity_readout({0, 0, 0, 0.0, 0.0}), ParityOutcome::even);
    EXPECT_EQ(parity_readout({1, 0, 0, 0.0, 0.0}), ParityOutcome::odd);
    EXPECT_EQ(parity_readout({1, 1, 0, 0.0, 0.0}), ParityOutcome::even);
    EXPECT_EQ(parity_readout({1, 1, 1, 0.0, 0.0}), ParityOutcome::odd);
    EXPECT_THROW(parity_readout({0, 0, 0, 0.3, 0.0}), std::domain_error);
    EXPECT_THROW(parity_readout({0, 0, 0, 0.0, 0.0}, 0.0), std::invalid_argument);
}

TEST(flux_readout, readout_scale_free_in_delta0) {
    for (double d0 : {1e-9, 100e-6, 1.0, 1e6}) {
        for (int bits = 0; bits < 8; ++bits) {
            const ChargeConfig c{bits >> 2 & 1, bits >> 1 & 1, bits & 1, 0.0, 0.0};
            EXPECT_EQ(parity_readout(c, d0), parity_readout(c)) << d0 << " " << bits;
        }
    }
}

// The flux readout of three fermion occupations must agree with the parity
// operator Z x Z x Z acting on the matching basis state.
TEST(flux_readout, readout_matches_qubit_parity_operator) {
    const ParityObservable zzz{{0, 1, 2}, +1};
    for (std::uint64_t idx = 0; idx < 8; ++idx) {
        const ChargeConfig c{int(idx >> 2 & 1), int(idx >> 1 & 1), int(idx & 1), 0.0, 0.0};
        EXPECT_EQ(sign(parity_readout(c)), zzz.eigenvalue(idx, 3)) << idx;
        // Reference: diagonal of the explicit Z x Z x Z matrix.
        const ref::Mat z3 = ref::kron_all({ref::pauli_z(), ref::pauli_z(), ref::pauli_z()});
        EXPECT_EQ(sign(parity_readout(c)), static_cast<int>(z3(idx, idx).real())) << idx;
    }
    // Two-fermion version against the protocol's joint parity measurement.
    const auto joint = joint_parity_observable(kDotSite, kControlSite);
    for (int dot = 0; dot < 2; ++dot) {
        for (int ctl = 0; ctl < 2; ++ctl) {
            const auto psi = new_state<double>(3, std::uint64_t(dot) << 2 | std::uint64_t(ctl) << 1);
            const auto m = project_parity(psi, joint, ParityOutcome::even);
            const ParityOutcome measured = m.probability > 0.5 ? ParityOutcome::even : ParityOutcome::odd;
            EXPECT_EQ(parity_readout({ctl, 0, dot, 0.0, 0.0}), measured);
        }
    }
}

TEST(flux_readout, kelvin_conversion) {
    EXPECT_NEAR(ev_to_kelvin(kDefaultDelta0Ev), 1.16045, 1e-4);
    EXPECT_NEAR(kelvin_to_ev(ev_to_kelvin(3.7e-5)), 3.7e-5, 1e-18);
}
