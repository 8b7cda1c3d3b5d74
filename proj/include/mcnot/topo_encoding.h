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

#ifndef MCNOT_TOPO_ENCODING_H
#define MCNOT_TOPO_ENCODING_H

// Topological qubits built from four Majorana modes. The pairs (g1, g2) and
// (g3, g4) form fermions c1 and c2; the logical code space is the even
// total-parity span {|00>, |11>} of their occupations.
//
// A qubit lives on the register either compactly (one site holding the
// logical bit) or explicitly (two adjacent sites holding the occupations of
// c1 and c2). The two forms are related by |0>_L <-> |00>, |1>_L <-> |11>.

#include "mcnot/qstate.h"

#include <array>
#include <string>
#include <vector>

namespace mcnot {

/// Weight outside the code space tolerated by compact_reduce.
inline constexpr double kLeakageTolerance = 1e-12;

enum class Representation { compact, explicit_pair };

enum class Pair { first, second };

struct MajoranaQubit {
    std::array<std::string, 4> mf_labels{"gamma1", "gamma2", "gamma3", "gamma4"};
    Representation representation = Representation::compact;
    std::size_t site = 0;  // explicit form also occupies site + 1

    static MajoranaQubit compact_at(std::size_t site) { return {{}, Representation::compact, site}; }
    static MajoranaQubit explicit_at(std::size_t site) { return {{}, Representation::explicit_pair, site}; }

    std::vector<std::size_t> register_sites() const {
        if (representation == Representation::compact) return {site};
        return {site, site + 1};
    }

    std::size_t site_of(Pair pair) const {
        if (representation == Representation::compact || pair == Pair::first) return site;
        return site + 1;
    }
};

/// Fermion parity of one Majorana pair: -1 for an empty fermion, +1 for an
/// occupied one.
struct PairParity {
    int value;
    friend bool operator==(PairParity, PairParity) = default;
};

/// Explicit two-site code-space state a|00> + b|11>.
template <typename Real = double>
BasicStateVector<Real> encode_logical(std::complex<Real> a, std::complex<Real> b) {
    Amplitudes<Real> amps = Amplitudes<Real>::Zero(4);
    amps(0) = a;
    amps(3) = b;
    return BasicStateVector<Real>(2, std::move(amps));
}

template <typename Real = double>
BasicStateVector<Real> encode_logical(int bit) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("logical bit must be 0 or 1");
    return bit == 0 ? encode_logical<Real>(1, 0) : encode_logical<Real>(0, 1);
}

/// Z on the site carrying the requested fermion, negated so that an empty
/// fermion reads -1.
inline ParityObservable pair_parity_observable(const MajoranaQubit& qubit, Pair pair) {
    return ParityObservable{{qubit.site_of(pair)}, -1};
}

template <typename Real>
struct PairParityMeasurement {
    PairParity parity;
    Real probability;
    BasicStateVector<Real> state;
};

template <typename Real>
PairParityMeasurement<Real> measure_pair_parity(const BasicStateVector<Real>& state, const MajoranaQubit& qubit,
                                                Pair pair, PairParity forced) {
    auto m = measure_parity(state, pair_parity_observable(qubit, pair), outcome_from_sign(forced.value));
    return {forced, m.probability, std::move(m.state)};
}

template <typename Real>
PairParityMeasurement<Real> measure_pair_parity(const BasicStateVector<Real>& state, const MajoranaQubit& qubit,
                                                Pair pair, Rng& rng) {
    auto m = measure_parity(state, pair_parity_observable(qubit, pair), rng);
    return {PairParity{sign(m.outcome)}, m.probability, std::move(m.state)};
}

/// Squared weight on basis states where sites `site` and `site + 1` disagree.
template <typename Real>
Real code_space_leakage(const BasicStateVector<Real>& state, std::size_t site) {
    const std::uint64_t m0 = state.site_mask(site);
    const std::uint64_t m1 = state.site_mask(site + 1);
    Real w = 0;
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        if (bool(i & m0) != bool(i & m1)) w += std::norm(state[i]);
    }
    return w;
}

template <typename Real>
Real code_space_leakage(const BasicStateVector<Real>& state, const MajoranaQubit& qubit) {
    if (qubit.representation == Representation::compact) return Real(0);
    return code_space_leakage(state, qubit.site);
}

/// Replaces the logical site `site` by the occupation pair (site, site + 1).
template <typename Real>
BasicStateVector<Real> compact_expand(const BasicStateVector<Real>& state, std::size_t site) {
    const std::size_t n = state.n_sites();
    state.check_site(site);
    const std::size_t tail = n - 1 - site;  // sites after `site`
    Amplitudes<Real> out = Amplitudes<Real>::Zero(static_cast<Eigen::Index>(state.dim() * 2));
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        const std::uint64_t high = i >> tail;  // includes the logical bit
        const std::uint64_t low = i & ((std::uint64_t{1} << tail) - 1);
        const std::uint64_t j = (((high << 1) | (high & 1)) << tail) | low;
        out(static_cast<Eigen::Index>(j)) = state[i];
    }
    return BasicStateVector<Real>(n + 1, std::move(out));
}

template <typename Real>
BasicStateVector<Real> compact_expand(const BasicStateVector<Real>& state) {
    if (state.n_sites() != 1) throw std::invalid_argument("compact_expand expects a one-site state");
    return compact_expand(state, 0);
}

/// Flips site + 1 wherever `site` is set; maps |00>,|11> to |00>,|10>.
template <typename Real>
BasicStateVector<Real> apply_cnot_into_second(const BasicStateVector<Real>& state, std::size_t site) {
    const std::uint64_t c = state.site_mask(site);
    const std::uint64_t t = state.site_mask(site + 1);
    Amplitudes<Real> a = state.amplitudes();
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        if ((i & c) && !(i & t)) std::swap(a(static_cast<Eigen::Index>(i)), a(static_cast<Eigen::Index>(i | t)));
    }
    return BasicStateVector<Real>(state.n_sites(), std::move(a));
}

/// Inverse of compact_expand. Throws if the pair carries weight outside the
/// code space.
template <typename Real>
BasicStateVector<Real> compact_reduce(const BasicStateVector<Real>& state, std::size_t site) {
    state.check_site(site + 1);
    const Real leak = code_space_leakage(state, site);
    if (leak > Real(kLeakageTolerance) * state.norm_squared()) {
        throw std::domain_error("state has weight " + std::to_string(static_cast<double>(leak)) +
                                " outside the even-parity code space");
    }
    return slice_site(apply_cnot_into_second(state, site), site + 1, 0);
}

template <typename Real>
BasicStateVector<Real> compact_reduce(const BasicStateVector<Real>& state) {
    if (state.n_sites() != 2) throw std::invalid_argument("compact_reduce expects a two-site state");
    return compact_reduce(state, 0);
}

/// Applies a logical single-qubit unitary. In the explicit form this is
/// reduce -> apply -> expand, so the code space is preserved exactly.
template <typename Real>
BasicStateVector<Real> logical_gate(const BasicStateVector<Real>& state, const MajoranaQubit& qubit, Gate gate) {
    if (qubit.representation == Representation::compact) return apply_single(state, gate, qubit.site);
    auto reduced = compact_reduce(state, qubit.site);
    return compact_expand(apply_single(reduced, gate, qubit.site), qubit.site);
}

}  // namespace mcnot

#endif  // MCNOT_TOPO_ENCODING_H
