#pragma once

// Pointwise kernels on (C \ R)^n x R^n.
//
// K_n(z,t) = i * ( 2 prod A(z_l, t_l) - prod A(i, t_l) ),
// A(z,t)   = (1/2i) (1/(t - z) - 1/(t + i)).
//
// Precision degrades like 1/|Im z_j| near the real axis; nothing is rescaled.

#include <cmath>
#include <span>
#include <string>

#include "hnv/core.hpp"

namespace hnv {

namespace detail {

inline void require_same_dimension(std::size_t nz, std::size_t nt, const char* who) {
    if (nz != nt)
        throw InvalidArgument(std::string(who) + ": point has dimension " + std::to_string(nz) +
                              " but t has dimension " + std::to_string(nt));
    if (nz == 0) throw InvalidArgument(std::string(who) + ": empty argument");
}

}  // namespace detail

/// A(z,t) = (1/2i)(1/(t-z) - 1/(t+i)). Accepts any z off the point t itself.
inline cplx a_factor(cplx z, double t) {
    if (z.imag() == 0.0 && z.real() == t) throw PoleError("a_factor: t coincides with a real z");
    // Combined over a common denominator; the two-term form cancels for large |t|.
    const cplx half_inv_i{0.0, -0.5};
    return half_inv_i * (z + kI) / ((t - z) * (t + kI));
}

/// K_n evaluated from the product formula. With A(z,t) = N_0(t) (1 + v) / 2
/// and v = (1 + t z) / (i (t - z)) it reads
/// i prod N_0 (2^{1-n} prod (1 + v_l) - 1); prod (1 + v_l) - 1 is accumulated
/// directly so that n = 1 involves no cancelling subtraction.
inline cplx kernel_K(std::span<const cplx> z, std::span<const double> t) {
    detail::require_same_dimension(z.size(), t.size(), "kernel_K");
    cplx excess{};  // prod (1 + v_l) - 1
    double fixed = 1.0;
    for (std::size_t l = 0; l < z.size(); ++l) {
        if (z[l].imag() == 0.0 && z[l].real() == t[l]) throw PoleError("kernel_K: t coincides with a real z");
        const cplx v = (1.0 + t[l] * z[l]) / (kI * (t[l] - z[l]));
        excess += v + excess * v;
        fixed /= 1.0 + t[l] * t[l];
    }
    const double half_pow = std::ldexp(1.0, 1 - static_cast<int>(z.size()));
    return kI * fixed * (half_pow * excess + (half_pow - 1.0));
}

inline cplx kernel_K(const CutPlanePoint& z, std::span<const double> t) { return kernel_K(z.coords(), t); }

/// K_1(z,t) = 1/(t-z) - t/(1+t^2).
inline cplx kernel_K1_closed(cplx z, double t) {
    if (on_cut(z)) throw InvalidArgument("kernel_K1_closed: z must be non-real");
    return (1.0 + t * z) / ((t - z) * (1.0 + t * t));
}

enum class Rho : int { minus = -1, zero = 0, plus = 1 };

inline Rho rho_from_int(int r) {
    if (r < -1 || r > 1) throw InvalidArgument("rho must be -1, 0 or 1, got " + std::to_string(r));
    return static_cast<Rho>(r);
}

/// N_{-1}, N_0, N_1. N_0 is independent of z and equals 1/(1+t^2).
inline cplx n_factor(Rho rho, cplx z, double t) {
    const cplx half_inv_i{0.0, -0.5};
    switch (rho) {
        case Rho::minus: return half_inv_i * (z - kI) / ((t - z) * (t - kI));
        case Rho::zero: return cplx(1.0 / (1.0 + t * t));
        case Rho::plus: return half_inv_i * (-std::conj(z) - kI) / ((t + kI) * (t - std::conj(z)));
    }
    throw InvalidArgument("invalid rho");
}

inline cplx n_factor(int rho, cplx z, double t) { return n_factor(rho_from_int(rho), z, t); }

inline void require_upper(std::span<const cplx> z, const char* who) {
    for (std::size_t j = 0; j < z.size(); ++j)
        if (!(z[j].imag() > 0.0))
            throw InvalidArgument(std::string(who) + ": coordinate " + std::to_string(j + 1) +
                                  " is not in the upper half-plane");
}

/// P_n(z,t) = prod Im z_j / |t_j - z_j|^2 on C^{+n}.
inline double poisson(std::span<const cplx> z, std::span<const double> t) {
    detail::require_same_dimension(z.size(), t.size(), "poisson");
    require_upper(z, "poisson");
    double p = 1.0;
    for (std::size_t j = 0; j < z.size(); ++j) p *= z[j].imag() / std::norm(t[j] - z[j]);
    return p;
}

inline double poisson(const CutPlanePoint& z, std::span<const double> t) { return poisson(z.coords(), t); }

/// |K_n(z,t) - sum_{B != {}} (-1)^{|B|+1} conj K_n(Psi_B(i1, z), t)|
inline double kernel_symmetry_residual(const CutPlanePoint& z, std::span<const double> t) {
    detail::require_same_dimension(z.dimension(), t.size(), "kernel_symmetry_residual");
    cplx sum{0.0, 0.0};
    for (const IndexSet& b : enumerate_subsets(z.dimension(), SubsetFilter::nonempty(), kMaxMaskDimension)) {
        const CutPlanePoint reflected = reflect_from_i(b, z);
        sum += -b.parity_sign() * std::conj(kernel_K(reflected, t));
    }
    return std::abs(kernel_K(z, t) - sum);
}

/// sum_{B} (-1)^{|B|} K_n(Psi_B(z,z), t); equals 2i P_n(z,t) on C^{+n}.
inline cplx poisson_alternating_sum(const CutPlanePoint& z, std::span<const double> t) {
    detail::require_same_dimension(z.dimension(), t.size(), "poisson_alternating_sum");
    require_upper(z.coords(), "poisson_alternating_sum");
    cplx sum{0.0, 0.0};
    for (const IndexSet& b : enumerate_subsets(z.dimension(), SubsetFilter::all(), kMaxMaskDimension))
        sum += b.parity_sign() * kernel_K(psi_map(b, z, z), t);
    return sum;
}

}  // namespace hnv
