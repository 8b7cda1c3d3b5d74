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

#ifndef MCNOT_NANOWIRE_BDG_H
#define MCNOT_NANOWIRE_BDG_H

// Lattice Bogoliubov-de Gennes model of a spin-orbit coupled wire with a
// Zeeman field and proximity-induced s-wave pairing.
//
// Basis: site-major, four components per site, index 4*j + 2*p + s with
// p = 0 for the particle (c_{j,s}) and p = 1 for the hole (c^dag_{j,s})
// component, s = 0 for spin up and 1 for spin down. The matrix is
//
//     [ h      D   ]
//     [ D^dag  -h* ]
//
// with h the normal-state tight-binding Hamiltonian and D = |Delta| e^{i phi}
// (i sigma_y) on every site. Particle-hole conjugation is tau_x K.
//
// Energies are in units of whatever `hopping` is expressed in; mu is measured
// from the bottom of the band via the onsite term (2t - mu).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcnot {

template <typename Real>
using BdGMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// Default relative zero-mode threshold: |E| < kZeroModeTolerance * t.
inline constexpr double kZeroModeTolerance = 1e-4;

template <typename Real>
struct BasicWireParams {
    std::size_t n_sites = 0;
    Real hopping = 1;            // t = hbar^2 / (2 m a^2)
    std::vector<Real> mu;        // per-site chemical potential
    Real so_strength = 0.5;      // hbar u / a, along sigma_y
    Real v_b = 0;                // Zeeman energy (sigma_z)
    Real delta_mod = 0;          // |Delta|
    Real delta_phase = 0;        // phi, radians

    static BasicWireParams uniform(std::size_t n, Real mu_value, Real v_b, Real delta_mod, Real hopping = 1,
                                   Real so_strength = Real(0.5)) {
        BasicWireParams p;
        p.n_sites = n;
        p.hopping = hopping;
        p.mu.assign(n, mu_value);
        p.so_strength = so_strength;
        p.v_b = v_b;
        p.delta_mod = delta_mod;
        return p;
    }

    void validate() const {
        if (n_sites < 2) throw std::invalid_argument("wire needs at least 2 sites");
        if (!(hopping > 0)) throw std::invalid_argument("hopping must be positive");
        if (delta_mod < 0) throw std::invalid_argument("pairing magnitude must be non-negative");
        if (mu.size() != n_sites) throw std::invalid_argument("chemical-potential profile length must equal n_sites");
    }
};

using WireParams = BasicWireParams<double>;

template <typename Real>
BdGMatrix<Real> build_bdg(const BasicWireParams<Real>& p) {
    p.validate();
    using C = std::complex<Real>;
    const auto n = static_cast<Eigen::Index>(p.n_sites);
    BdGMatrix<Real> h = BdGMatrix<Real>::Zero(4 * n, 4 * n);
    const C pair = std::polar(p.delta_mod, p.delta_phase);
    const Real t = p.hopping;
    const Real so = p.so_strength / 2;
    for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::Index o = 4 * j;
        const Real onsite = 2 * t - p.mu[static_cast<std::size_t>(j)];
        // particle block: (2t - mu) + V_B sigma_z; hole block is its negated conjugate
        h(o + 0, o + 0) = onsite + p.v_b;
        h(o + 1, o + 1) = onsite - p.v_b;
        h(o + 2, o + 2) = -(onsite + p.v_b);
        h(o + 3, o + 3) = -(onsite - p.v_b);
        // D = pair * i sigma_y
        h(o + 0, o + 3) = pair;
        h(o + 1, o + 2) = -pair;
        h(o + 3, o + 0) = std::conj(pair);
        h(o + 2, o + 1) = -std::conj(pair);
        if (j + 1 == n) continue;
        const Eigen::Index q = o + 4;
        // hop j -> j+1 in the particle block: -t - i so sigma_y
        //   -i sigma_y = [[0, -1], [1, 0]]
        Eigen::Matrix<C, 2, 2> hop;
        hop << C(-t), C(-so), C(so), C(-t);
        h.template block<2, 2>(o, q) = hop;
        h.template block<2, 2>(q, o) = hop.adjoint();
        h.template block<2, 2>(o + 2, q + 2) = -hop.conjugate();
        h.template block<2, 2>(q + 2, o + 2) = -hop.conjugate().adjoint();
    }
    return h;
}

template <typename Real>
Real hermiticity_residual(const BdGMatrix<Real>& h) {
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

/// max |(tau_x K) H (tau_x K)^{-1} + H|.
template <typename Real>
Real particle_hole_residual(const BdGMatrix<Real>& h) {
    const Eigen::Index dim = h.rows();
    if (dim % 4 != 0) throw std::invalid_argument("BdG dimension must be a multiple of 4");
    Eigen::PermutationMatrix<Eigen::Dynamic> tau_x(dim);
    for (Eigen::Index i = 0; i < dim; ++i) tau_x.indices()(i) = static_cast<int>(i ^ 2);
    const BdGMatrix<Real> conj = tau_x * h.conjugate() * tau_x.transpose();
    return (conj + h).cwiseAbs().maxCoeff();
}

template <typename Real>
struct Spectrum {
    RealVector<Real> energies;  // ascending
    BdGMatrix<Real> vectors;    // columns; empty when not requested
};

/// Dense Hermitian diagonalization. Real matrices (phi = 0) go through the
/// real symmetric solver.
template <typename Real>
Spectrum<Real> spectrum(const BdGMatrix<Real>& h, bool with_vectors = true) {
    const Real scale = Real(1) + h.cwiseAbs().maxCoeff();
    if (hermiticity_residual(h) > Real(1e-10) * scale) throw std::invalid_argument("matrix is not Hermitian");
    const int opts = with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
    Spectrum<Real> out;
    if (h.imag().cwiseAbs().maxCoeff() == Real(0)) {
        using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(RealMatrix(h.real()), opts);
        if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
        out.energies = es.eigenvalues();
        if (with_vectors) out.vectors = es.eigenvectors().template cast<std::complex<Real>>();
    } else {
        Eigen::SelfAdjointEigenSolver<BdGMatrix<Real>> es(h, opts);
        if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
        out.energies = es.eigenvalues();
        if (with_vectors) out.vectors = es.eigenvectors();
    }
    return out;
}

/// All BdG energies, ascending, from the singular values of the chiral
/// block. A uniform pairing phase is a global gauge, so the matrix is built
/// at phi = 0 where it is real; it then anticommutes with tau_x, and in the
/// tau_x = +1 / -1 basis it takes the form [[0, A], [A^T, 0]] with energies
/// +/- sigma(A). Half the dimension of the direct route.
template <typename Real>
RealVector<Real> chiral_energies(const BasicWireParams<Real>& params) {
    using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
    BasicWireParams<Real> gauge = params;
    gauge.delta_phase = 0;
    const RealMatrix h = build_bdg(gauge).real();
    const Eigen::Index half = h.rows() / 2;
    RealMatrix a(half, half);
    // chiral index 2j + s pairs particle row 4j + s with hole row 4j + 2 + s
    auto particle = [](Eigen::Index c) { return 4 * (c / 2) + c % 2; };
    for (Eigen::Index c = 0; c < half; ++c) {
        const Eigen::Index pc = particle(c), hc = pc + 2;
        for (Eigen::Index r = 0; r < half; ++r) {
            const Eigen::Index pr = particle(r), hr = pr + 2;
            a(r, c) = (h(pr, pc) - h(pr, hc) + h(hr, pc) - h(hr, hc)) / 2;
        }
    }
    Eigen::BDCSVD<RealMatrix> svd(a);
    const RealVector<Real>& sigma = svd.singularValues();  // descending
    RealVector<Real> e(2 * half);
    for (Eigen::Index i = 0; i < half; ++i) {
        e(i) = -sigma(i);
        e(2 * half - 1 - i) = sigma(i);
    }
    return e;
}

/// Largest |E_i + E_{n-1-i}| over the ascending spectrum.
template <typename Real>
Real spectral_symmetry_residual(const RealVector<Real>& energies) {
    Real r = 0;
    const Eigen::Index n = energies.size();
    for (Eigen::Index i = 0; i < n; ++i) r = std::max(r, std::abs(energies(i) + energies(n - 1 - i)));
    return r;
}

template <typename Real>
Real min_abs_energy(const RealVector<Real>& energies) {
    return energies.cwiseAbs().minCoeff();
}

/// Edge of the topological window, sqrt(V_B^2 - |Delta|^2). Throws
/// std::domain_error when |V_B| < |Delta| and no window exists.
template <typename Real>
Real critical_mu(Real v_b, Real delta_mod) {
    if (std::abs(v_b) < delta_mod) {
        throw std::domain_error("no topological window: |V_B| < |Delta|");
    }
    return std::sqrt(v_b * v_b - delta_mod * delta_mod);
}

template <typename Real>
struct MajoranaModeSet {
    std::vector<Real> energies;                    // selected eigenvalues, ascending
    std::vector<std::vector<Real>> weights;        // per mode, per site; each sums to 1
    std::vector<std::size_t> localization_centers; // argmax site per mode
    std::vector<Real> positions;                   // mean site per mode
    bool count_matches = true;
};

/// Collects eigenstates with |E| < energy_tol and rotates them into modes of
/// sharp position: the selected subspace is closed under particle-hole
/// conjugation, so diagonalizing the site-position operator inside it
/// yields the self-conjugate combinations, one per interface.
template <typename Real>
MajoranaModeSet<Real> majorana_modes(const Spectrum<Real>& spec, Real energy_tol, std::size_t n_expected) {
    if (spec.vectors.size() == 0) throw std::invalid_argument("majorana_modes needs eigenvectors");
    const Eigen::Index dim = spec.vectors.rows();
    const Eigen::Index n_sites = dim / 4;
    std::vector<Eigen::Index> picked;
    MajoranaModeSet<Real> out;
    for (Eigen::Index i = 0; i < spec.energies.size(); ++i) {
        if (std::abs(spec.energies(i)) < energy_tol) {
            picked.push_back(i);
            out.energies.push_back(spec.energies(i));
        }
    }
    out.count_matches = picked.size() == n_expected;
    if (picked.empty()) return out;

    const auto m = static_cast<Eigen::Index>(picked.size());
    BdGMatrix<Real> v(dim, m);
    for (Eigen::Index k = 0; k < m; ++k) v.col(k) = spec.vectors.col(picked[static_cast<std::size_t>(k)]);
    RealVector<Real> x(dim);
    for (Eigen::Index i = 0; i < dim; ++i) x(i) = static_cast<Real>(i / 4);
    const BdGMatrix<Real> projected = v.adjoint() * x.asDiagonal() * v;
    Eigen::SelfAdjointEigenSolver<BdGMatrix<Real>> es(projected);
    const BdGMatrix<Real> modes = v * es.eigenvectors();

    for (Eigen::Index k = 0; k < m; ++k) {
        std::vector<Real> w(static_cast<std::size_t>(n_sites), Real(0));
        for (Eigen::Index i = 0; i < dim; ++i) w[static_cast<std::size_t>(i / 4)] += std::norm(modes(i, k));
        Real total = 0;
        for (Real x_i : w) total += x_i;
        for (Real& x_i : w) x_i /= total;
        out.localization_centers.push_back(
            static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin()));
        out.positions.push_back(es.eigenvalues()(k));
        out.weights.push_back(std::move(w));
    }
    return out;
}

/// Fraction of `weights` on sites [lo, hi], clipped to the wire.
template <typename Real>
Real mass_within(const std::vector<Real>& weights, long lo, long hi) {
    Real s = 0;
    for (long i = std::max(0L, lo); i <= std::min<long>(static_cast<long>(weights.size()) - 1, hi); ++i) {
        s += weights[static_cast<std::size_t>(i)];
    }
    return s;
}

struct PhaseScanPoint {
    double mu;
    double min_abs_energy;
    bool topological;
};

/// Uniform-mu sweep over `steps` equally spaced points in [mu_min, mu_max].
/// The profile in `params` is replaced at each point. A point is flagged
/// topological when its smallest |E| is below energy_tol * t.
std::vector<PhaseScanPoint> phase_scan(const WireParams& params, double mu_min, double mu_max, std::size_t steps,
                                       double energy_tol = kZeroModeTolerance);

/// Half-open site range [start_site, end_site) held at chemical potential `mu`.
struct GateSegment {
    std::size_t start_site;
    std::size_t end_site;
    double mu;
};

std::vector<double> keyboard_profile(const std::vector<GateSegment>& segments, double base_mu, std::size_t n_sites);

/// Boundary positions of every segment, halfway between lattice sites:
/// start_site - 0.5 and end_site - 0.5. With segments marking the topological
/// stretches these are where the end modes sit.
std::vector<double> segment_interfaces(const std::vector<GateSegment>& segments, std::size_t n_sites);

// Conversions from physical parameters; a in Angstrom, energies in eV.
inline constexpr double kHbarSquaredOver2Me = 3.80998212;  // eV Angstrom^2

inline double hopping_from_effective_mass(double mass_ratio, double lattice_angstrom) {
    return kHbarSquaredOver2Me / (mass_ratio * lattice_angstrom * lattice_angstrom);
}

inline double so_strength_from_velocity(double hbar_u_ev_angstrom, double lattice_angstrom) {
    return hbar_u_ev_angstrom / lattice_angstrom;
}

}  // namespace mcnot

#endif  // MCNOT_NANOWIRE_BDG_H
