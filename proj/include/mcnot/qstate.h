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

#ifndef MCNOT_QSTATE_H
#define MCNOT_QSTATE_H

// Dense state-vector engine over a register of two-level sites.
//
// Storage order: site 0 is the most significant bit of the basis index, so
// the amplitude of |b0 b1 ... b{n-1}> lives at index sum_s b_s << (n-1-s).

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mcnot {

using Rng = std::mt19937_64;

/// Branches whose Born probability is at or below this are impossible and
/// cannot be forced.
inline constexpr double kImpossibleBranchTolerance = 1e-12;

/// Registers larger than this are rejected outright.
inline constexpr std::size_t kMaxSites = 24;

template <typename Real>
using Amplitudes = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

enum class Gate { I, X, Z, H };

inline Gate parse_gate(std::string_view name) {
    if (name == "I") return Gate::I;
    if (name == "X") return Gate::X;
    if (name == "Z") return Gate::Z;
    if (name == "H") return Gate::H;
    throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
}

inline std::string_view gate_name(Gate g) {
    switch (g) {
        case Gate::I: return "I";
        case Gate::X: return "X";
        case Gate::Z: return "Z";
        case Gate::H: return "H";
    }
    return "?";
}

/// Outcome of a Z-type parity measurement. The numeric value is the
/// eigenvalue: +1 is even, -1 is odd.
enum class ParityOutcome : int { even = +1, odd = -1 };

inline int sign(ParityOutcome o) { return static_cast<int>(o); }

inline ParityOutcome outcome_from_sign(int s) {
    if (s == +1) return ParityOutcome::even;
    if (s == -1) return ParityOutcome::odd;
    throw std::invalid_argument("parity sign must be +1 or -1");
}

inline std::string_view label(ParityOutcome o) { return o == ParityOutcome::even ? "even" : "odd"; }

inline ParityOutcome parse_parity_outcome(std::string_view text) {
    if (text == "even" || text == "+1" || text == "1") return ParityOutcome::even;
    if (text == "odd" || text == "-1" || text == "0") return ParityOutcome::odd;
    throw std::invalid_argument("unknown parity outcome '" + std::string(text) + "'");
}

template <typename Real>
class BasicStateVector {
   public:
    using Scalar = std::complex<Real>;

    BasicStateVector(std::size_t n_sites, Amplitudes<Real> amplitudes)
        : n_sites_(n_sites), amplitudes_(std::move(amplitudes)) {
        if (n_sites == 0 || n_sites > kMaxSites) {
            throw std::invalid_argument("register size must be in [1, " + std::to_string(kMaxSites) + "]");
        }
        if (static_cast<std::size_t>(amplitudes_.size()) != dim_of(n_sites)) {
            throw std::invalid_argument("amplitude count must be 2^n_sites");
        }
    }

    static BasicStateVector basis(std::size_t n_sites, std::uint64_t index) {
        if (n_sites == 0 || n_sites > kMaxSites) {
            throw std::invalid_argument("register size must be in [1, " + std::to_string(kMaxSites) + "]");
        }
        if (index >= dim_of(n_sites)) {
            throw std::out_of_range("basis index " + std::to_string(index) + " out of range for " +
                                    std::to_string(n_sites) + " sites");
        }
        Amplitudes<Real> a = Amplitudes<Real>::Zero(static_cast<Eigen::Index>(dim_of(n_sites)));
        a(static_cast<Eigen::Index>(index)) = Scalar(1);
        return BasicStateVector(n_sites, std::move(a));
    }

    static constexpr std::size_t dim_of(std::size_t n_sites) { return std::size_t{1} << n_sites; }

    std::size_t n_sites() const { return n_sites_; }
    std::size_t dim() const { return dim_of(n_sites_); }
    const Amplitudes<Real>& amplitudes() const { return amplitudes_; }
    Scalar operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

    Real norm_squared() const { return amplitudes_.squaredNorm(); }

    BasicStateVector normalized() const {
        Real n = amplitudes_.norm();
        if (!(n > Real(0))) throw std::domain_error("cannot normalize the zero vector");
        return BasicStateVector(n_sites_, amplitudes_ / n);
    }

    BasicStateVector scaled(Scalar c) const { return BasicStateVector(n_sites_, amplitudes_ * c); }

    /// Bit mask selecting `site` within a basis index.
    std::uint64_t site_mask(std::size_t site) const {
        check_site(site);
        return std::uint64_t{1} << (n_sites_ - 1 - site);
    }

    void check_site(std::size_t site) const {
        if (site >= n_sites_) {
            throw std::out_of_range("site " + std::to_string(site) + " out of range for " +
                                    std::to_string(n_sites_) + " sites");
        }
    }

   private:
    std::size_t n_sites_;
    Amplitudes<Real> amplitudes_;
};

using StateVector = BasicStateVector<double>;

template <typename Real = double>
BasicStateVector<Real> new_state(std::size_t n_sites, std::uint64_t basis_index) {
    return BasicStateVector<Real>::basis(n_sites, basis_index);
}

/// Builds a state from an explicit amplitude list; the register size is
/// inferred from its length.
template <typename Real = double>
BasicStateVector<Real> state_from(std::initializer_list<std::complex<Real>> amps) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < amps.size()) ++n;
    Amplitudes<Real> a(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index i = 0;
    for (auto z : amps) a(i++) = z;
    return BasicStateVector<Real>(n, std::move(a));
}

template <typename Real>
BasicStateVector<Real> apply_single(const BasicStateVector<Real>& state, Gate gate, std::size_t site) {
    const std::uint64_t mask = state.site_mask(site);
    Amplitudes<Real> a = state.amplitudes();
    if (gate == Gate::I) return BasicStateVector<Real>(state.n_sites(), std::move(a));
    const Real r = Real(1) / std::sqrt(Real(2));
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        if (i & mask) continue;
        auto lo = static_cast<Eigen::Index>(i);
        auto hi = static_cast<Eigen::Index>(i | mask);
        const std::complex<Real> a0 = a(lo);
        const std::complex<Real> a1 = a(hi);
        switch (gate) {
            case Gate::X:
                a(lo) = a1;
                a(hi) = a0;
                break;
            case Gate::Z:
                a(hi) = -a1;
                break;
            case Gate::H:
                a(lo) = r * (a0 + a1);
                a(hi) = r * (a0 - a1);
                break;
            case Gate::I:
                break;
        }
    }
    return BasicStateVector<Real>(state.n_sites(), std::move(a));
}

/// Product of Z on every listed site, optionally negated by `polarity`.
/// Eigenvalues are +1 (even) and -1 (odd).
struct ParityObservable {
    std::vector<std::size_t> sites;
    int polarity = +1;

    void validate(std::size_t n_sites) const {
        if (sites.empty()) throw std::invalid_argument("parity observable needs at least one site");
        if (polarity != 1 && polarity != -1) throw std::invalid_argument("polarity must be +1 or -1");
        std::uint64_t seen = 0;
        for (auto s : sites) {
            if (s >= n_sites) throw std::out_of_range("parity observable site out of range");
            const std::uint64_t bit = std::uint64_t{1} << s;
            if (seen & bit) throw std::invalid_argument("parity observable sites must be distinct");
            seen |= bit;
        }
    }

    std::uint64_t mask(std::size_t n_sites) const {
        std::uint64_t m = 0;
        for (auto s : sites) m |= std::uint64_t{1} << (n_sites - 1 - s);
        return m;
    }

    int eigenvalue(std::uint64_t basis_index, std::size_t n_sites) const {
        const bool odd = std::popcount(basis_index & mask(n_sites)) & 1;
        return odd ? -polarity : polarity;
    }
};

template <typename Real>
struct Projection {
    BasicStateVector<Real> state;  // unnormalized
    Real probability;
};

/// Applies (1 + s*obs)/2 with s the outcome sign. The probability is the
/// squared norm of the projected vector.
template <typename Real>
Projection<Real> project_parity(const BasicStateVector<Real>& state, const ParityObservable& obs,
                                ParityOutcome outcome) {
    obs.validate(state.n_sites());
    const int want = sign(outcome);
    Amplitudes<Real> a = state.amplitudes();
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        if (obs.eigenvalue(i, state.n_sites()) != want) a(static_cast<Eigen::Index>(i)) = 0;
    }
    const Real p = a.squaredNorm();
    return {BasicStateVector<Real>(state.n_sites(), std::move(a)), p};
}

template <typename Real>
struct ParityMeasurement {
    ParityOutcome outcome;
    Real probability;
    BasicStateVector<Real> state;
};

template <typename Real>
struct SiteMeasurement {
    int bit;
    Real probability;
    BasicStateVector<Real> state;
};

/// Uniform draw in [0, 1) from the top 53 bits of one engine output.
inline double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <typename Real>
ParityMeasurement<Real> measure_parity(const BasicStateVector<Real>& state, const ParityObservable& obs,
                                       ParityOutcome forced) {
    auto proj = project_parity(state, obs, forced);
    if (!(proj.probability > Real(kImpossibleBranchTolerance))) {
        throw std::domain_error("forced parity outcome '" + std::string(label(forced)) +
                                "' has zero probability");
    }
    return {forced, proj.probability, proj.state.normalized()};
}

template <typename Real>
ParityMeasurement<Real> measure_parity(const BasicStateVector<Real>& state, const ParityObservable& obs,
                                       Rng& rng) {
    auto even = project_parity(state, obs, ParityOutcome::even);
    auto odd = project_parity(state, obs, ParityOutcome::odd);
    const double u = uniform_unit(rng);
    const bool pick_even = u < static_cast<double>(even.probability) ||
                           !(odd.probability > Real(kImpossibleBranchTolerance));
    if (pick_even) return {ParityOutcome::even, even.probability, even.state.normalized()};
    return {ParityOutcome::odd, odd.probability, odd.state.normalized()};
}

template <typename Real>
SiteMeasurement<Real> measure_site_z(const BasicStateVector<Real>& state, std::size_t site, int forced_bit) {
    if (forced_bit != 0 && forced_bit != 1) throw std::invalid_argument("measured bit must be 0 or 1");
    state.check_site(site);
    ParityObservable z{{site}, +1};
    auto m = measure_parity(state, z, forced_bit == 0 ? ParityOutcome::even : ParityOutcome::odd);
    return {forced_bit, m.probability, std::move(m.state)};
}

template <typename Real>
SiteMeasurement<Real> measure_site_z(const BasicStateVector<Real>& state, std::size_t site, Rng& rng) {
    state.check_site(site);
    auto m = measure_parity(state, ParityObservable{{site}, +1}, rng);
    return {m.outcome == ParityOutcome::even ? 0 : 1, m.probability, std::move(m.state)};
}

template <typename Real>
std::complex<Real> inner(const BasicStateVector<Real>& a, const BasicStateVector<Real>& b) {
    if (a.n_sites() != b.n_sites()) throw std::invalid_argument("register size mismatch");
    return a.amplitudes().dot(b.amplitudes());  // conjugates the left operand
}

/// |<a|b>|^2 for normalized inputs.
template <typename Real>
Real fidelity(const BasicStateVector<Real>& a, const BasicStateVector<Real>& b) {
    return std::norm(inner(a, b));
}

/// |a> (x) |b>, with `a` occupying the leading sites.
template <typename Real>
BasicStateVector<Real> tensor(const BasicStateVector<Real>& a, const BasicStateVector<Real>& b) {
    Amplitudes<Real> out(static_cast<Eigen::Index>(a.dim() * b.dim()));
    for (std::size_t i = 0; i < a.dim(); ++i) {
        out.segment(static_cast<Eigen::Index>(i * b.dim()), static_cast<Eigen::Index>(b.dim())) =
            a[i] * b.amplitudes();
    }
    return BasicStateVector<Real>(a.n_sites() + b.n_sites(), std::move(out));
}

/// Amplitudes of the sub-register with `site` fixed to `bit`. The result is
/// not renormalized.
template <typename Real>
BasicStateVector<Real> slice_site(const BasicStateVector<Real>& state, std::size_t site, int bit) {
    if (state.n_sites() < 2) throw std::invalid_argument("cannot slice a single-site register");
    if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
    const std::uint64_t mask = state.site_mask(site);
    const std::uint64_t low = mask - 1;
    Amplitudes<Real> out(static_cast<Eigen::Index>(state.dim() / 2));
    for (std::uint64_t j = 0; j < state.dim() / 2; ++j) {
        const std::uint64_t i = ((j & ~low) << 1) | (bit ? mask : 0) | (j & low);
        out(static_cast<Eigen::Index>(j)) = state[i];
    }
    return BasicStateVector<Real>(state.n_sites() - 1, std::move(out));
}

}  // namespace mcnot

#endif  // MCNOT_QSTATE_H
