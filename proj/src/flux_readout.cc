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

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mcnot {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0) w += kTwoPi;
    if (w >= kTwoPi) w = 0;
    return w;
}

void check_bit(int b, const char* name) {
    if (b != 0 && b != 1) throw std::invalid_argument(std::string(name) + " must be 0 or 1");
}

PotentialMinimum polish(double phi1, double phi3, const FluxParams& params, double step, double tolerance) {
    static constexpr std::array<std::array<int, 2>, 8> kMoves{
        {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}}};
    double u = potential(phi1, phi3, params);
    while (step > tolerance) {
        bool moved = false;
        for (const auto& mv : kMoves) {
            const double c1 = phi1 + mv[0] * step;
            const double c3 = phi3 + mv[1] * step;
            const double uc = potential(c1, c3, params);
            if (uc < u) {
                phi1 = c1;
                phi3 = c3;
                u = uc;
                moved = true;
                break;
            }
        }
        if (!moved) step /= 2;
    }
    return {wrap(phi1), wrap(phi3), u};
}

}  // namespace

void FluxParams::validate() const {
    if (!(e_j > 0)) throw std::invalid_argument("E_J must be positive");
    if (!(alpha > 0)) throw std::invalid_argument("alpha must be positive");
    if (delta0 < 0) throw std::invalid_argument("delta0 must be non-negative");
}

double potential(double phi1, double phi3, const FluxParams& p) {
    return -p.e_j * (std::cos(phi1) + std::cos(phi3) + p.alpha * std::cos(kTwoPi * p.f - phi1 - phi3));
}

double torus_distance(double a1, double a3, double b1, double b3) {
    auto d = [](double x, double y) {
        double r = std::fmod(std::abs(x - y), kTwoPi);
        return std::min(r, kTwoPi - r);
    };
    return std::hypot(d(a1, b1), d(a3, b3));
}

std::vector<PotentialMinimum> find_minima(const FluxParams& params, std::size_t grid_resolution,
                                          double refine_tolerance) {
    params.validate();
    if (grid_resolution < 64) throw std::invalid_argument("grid resolution must be at least 64 per period");
    const std::size_t n = grid_resolution;
    const double h = kTwoPi / static_cast<double>(n);
    std::vector<double> grid(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            grid[i * n + k] = potential(h * static_cast<double>(i), h * static_cast<double>(k), params);

    std::vector<PotentialMinimum> found;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const double u = grid[i * n + k];
            bool seed = true;
            for (std::size_t di = n - 1; di <= n + 1 && seed; ++di) {
                for (std::size_t dk = n - 1; dk <= n + 1; ++dk) {
                    if (di == n && dk == n) continue;
                    const std::size_t ii = (i + di) % n;
                    const std::size_t kk = (k + dk) % n;
                    if (grid[ii * n + kk] < u) {
                        seed = false;
                        break;
                    }
                }
            }
            if (!seed) continue;
            auto m = polish(h * static_cast<double>(i), h * static_cast<double>(k), params, h / 2, refine_tolerance);
            const bool duplicate = std::any_of(found.begin(), found.end(), [&](const PotentialMinimum& o) {
                return torus_distance(o.phi1, o.phi3, m.phi1, m.phi3) < 1e-6;
            });
            if (!duplicate) found.push_back(m);
        }
    }
    std::sort(found.begin(), found.end(), [](const PotentialMinimum& a, const PotentialMinimum& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        return a.phi1 < b.phi1;
    });
    return found;
}

std::vector<PotentialMinimum> lowest_minima(const std::vector<PotentialMinimum>& minima, const FluxParams& params,
                                            double tolerance) {
    std::vector<PotentialMinimum> out;
    if (minima.empty()) return out;
    double lowest = minima.front().energy;
    for (const auto& m : minima) lowest = std::min(lowest, m.energy);
    for (const auto& m : minima)
        if (m.energy - lowest <= tolerance * params.e_j) out.push_back(m);
    return out;
}

double tunnel_splitting(double q_total, double delta0) {
    if (delta0 < 0) throw std::invalid_argument("delta0 must be non-negative");
    // Reduce q mod 2 first so that integer charges land exactly on the nodes.
    double r = std::fmod(q_total, 2.0);
    if (r < 0) r += 2.0;
    if (r == 0.0) return delta0;
    if (r == 1.0) return 0.0;
    return delta0 * std::abs(std::cos(std::numbers::pi * r / 2.0));
}

void ChargeConfig::validate() const {
    check_bit(np_l, "np_l");
    check_bit(np_r, "np_r");
    check_bit(dot_bit, "dot_bit");
}

double total_charge(const ChargeConfig& c) {
    c.validate();
    return static_cast<double>(c.np_l + c.np_r + c.dot_bit) + c.q_l + c.q_r;
}

double calibration_residual(const ChargeConfig& c) {
    const double q = c.q_l + c.q_r;
    return std::abs(q - 2.0 * std::round(q / 2.0));
}

ChargeConfig calibrate_gate_charges(const ChargeConfig& config) {
    config.validate();
    if (config.np_l != 0 || config.np_r != 0 || config.dot_bit != 0) {
        throw std::invalid_argument("calibration requires empty islands and dot");
    }
    ChargeConfig out = config;
    const double q = config.q_l + config.q_r;
    out.q_l += 2.0 * std::round(q / 2.0) - q;
    return out;
}

ParityOutcome parity_readout(const ChargeConfig& config, double delta0, double threshold_fraction) {
    if (!(delta0 > 0)) throw std::invalid_argument("delta0 must be positive for a readout");
    if (!(threshold_fraction > 0 && threshold_fraction < 1)) {
        throw std::invalid_argument("threshold fraction must lie in (0, 1)");
    }
    if (calibration_residual(config) > kCalibrationTolerance) {
        throw std::domain_error("gate charges are not calibrated to an even integer");
    }
    const double d = tunnel_splitting(total_charge(config), delta0);
    return d > threshold_fraction * delta0 ? ParityOutcome::even : ParityOutcome::odd;
}

}  // namespace mcnot
