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

#include "mcnot/nanowire_bdg.h"

#include <algorithm>
#include <thread>

namespace mcnot {

std::vector<PhaseScanPoint> phase_scan(const WireParams& params, double mu_min, double mu_max, std::size_t steps,
                                       double energy_tol) {
    if (steps < 2) throw std::invalid_argument("phase scan needs at least 2 steps");
    if (!(mu_max > mu_min)) throw std::invalid_argument("phase scan needs mu_max > mu_min");
    WireParams base = params;
    base.mu.assign(base.n_sites, 0.0);
    base.validate();

    std::vector<PhaseScanPoint> out(steps);
    auto evaluate = [&](std::size_t i) {
        WireParams p = base;
        const double mu = mu_min + (mu_max - mu_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
        p.mu.assign(p.n_sites, mu);
        const double e = min_abs_energy(chiral_energies(p));
        out[i] = {mu, e, e < energy_tol * p.hopping};
    };

    const std::size_t workers = std::min<std::size_t>(steps, std::max(1u, std::thread::hardware_concurrency()));
    if (workers == 1) {
        for (std::size_t i = 0; i < steps; ++i) evaluate(i);
        return out;
    }
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < steps; i += workers) evaluate(i);
            });
        }
    }
    return out;
}

std::vector<double> keyboard_profile(const std::vector<GateSegment>& segments, double base_mu, std::size_t n_sites) {
    std::vector<GateSegment> sorted = segments;
    std::sort(sorted.begin(), sorted.end(),
              [](const GateSegment& a, const GateSegment& b) { return a.start_site < b.start_site; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const auto& s = sorted[i];
        if (s.start_site >= s.end_site) throw std::invalid_argument("segment must satisfy start_site < end_site");
        if (s.end_site > n_sites) throw std::out_of_range("segment extends past the end of the wire");
        if (i > 0 && s.start_site < sorted[i - 1].end_site) throw std::invalid_argument("segments overlap");
    }
    std::vector<double> mu(n_sites, base_mu);
    for (const auto& s : sorted) std::fill(mu.begin() + static_cast<long>(s.start_site), mu.begin() + static_cast<long>(s.end_site), s.mu);
    return mu;
}

std::vector<double> segment_interfaces(const std::vector<GateSegment>& segments, std::size_t n_sites) {
    keyboard_profile(segments, 0.0, n_sites);  // validation only
    std::vector<double> out;
    for (const auto& s : segments) {
        out.push_back(static_cast<double>(s.start_site) - 0.5);
        out.push_back(static_cast<double>(s.end_site) - 0.5);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace mcnot
