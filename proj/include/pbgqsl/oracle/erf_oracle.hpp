// erf_oracle.hpp: Extended-precision reference values of erf and the Faddeeva function
//
// Validation only. Uses MPFR through Boost.Multiprecision with a working
// precision chosen per argument, so it shares no arithmetic with specfun.hpp.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "pbgqsl/errors.hpp"

namespace pbgqsl::oracle {

using Real = boost::multiprecision::mpfr_float;

/// Minimal complex arithmetic on MPFR reals (Boost's mpc backend needs libmpc).
struct MpComplex {
    Real re;
    Real im;

    friend MpComplex operator+(const MpComplex& a, const MpComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend MpComplex operator-(const MpComplex& a, const MpComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend MpComplex operator*(const MpComplex& a, const MpComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend MpComplex operator*(const MpComplex& a, const Real& k) { return {a.re * k, a.im * k}; }
    friend MpComplex operator/(const MpComplex& a, const MpComplex& b) {
        const Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Real abs() const { return boost::multiprecision::sqrt(re * re + im * im); }
};

inline MpComplex mp_exp(const MpComplex& z) {
    const Real m = boost::multiprecision::exp(z.re);
    return {m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im)};
}

/// Result rounded to double, with a flag for values outside the double range.
struct OracleValue {
    std::complex<double> value;
    bool overflow = false;
};

namespace erf_oracle_detail {

inline constexpr double kLog2E = 1.4426950408889634;
inline constexpr unsigned kGuardBits = 96;

class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits) : saved_(Real::default_precision()) {
        // default_precision() counts decimal digits
        Real::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2);
    }
    ~PrecisionScope() { Real::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

inline OracleValue to_double(const MpComplex& v) {
    const Real limit = std::numeric_limits<double>::max();
    if (boost::multiprecision::abs(v.re) > limit || boost::multiprecision::abs(v.im) > limit)
        return {{}, true};
    return {{v.re.convert_to<double>(), v.im.convert_to<double>()}, false};
}

/// Maclaurin series of erf(u) summed at the current precision.
///
/// Terms are t_n = (-1)^n u^{2n+1} / (n! (2n+1)). Once n + 1 > 2|u|^2 the
/// ratio of successive magnitudes is below 1/2, so the tail is bounded by
/// twice the last term; summation stops when that bound is below `tolerance`.
inline MpComplex erf_series(const MpComplex& u, const Real& tolerance) {
    const MpComplex u2 = u * u;
    const double u2_abs = std::abs(std::complex<double>(u2.re.convert_to<double>(), u2.im.convert_to<double>()));
    MpComplex power = u;  // (-1)^n u^{2n+1} / n!
    MpComplex sum = u;
    for (long n = 1;; ++n) {
        power = power * u2 * (Real(-1) / n);
        const MpComplex term = power * (Real(1) / (2 * n + 1));
        sum = sum + term;
        if (n + 1 > 2.0 * u2_abs && 2 * term.abs() < tolerance)
            break;
    }
    const Real scale = 2 / boost::multiprecision::sqrt(boost::math::constants::pi<Real>());
    return sum * scale;
}

/// w(z) for Im z >= 0 from the Maclaurin series of erf(-iz):
/// w = e^{-z^2} (1 - erf(-iz)).
///
/// The series terms peak near e^{|z|^2} while |e^{z^2} w(z)| is at least
/// e^{Re z^2} / (2 (1 + |z|)) in the closed upper half-plane, which fixes the
/// number of bits that cancel; kGuardBits are kept beyond that.
inline MpComplex faddeeva_series(std::complex<double> z) {
    const double z2_re = z.real() * z.real() - z.imag() * z.imag();
    const double cancel = (std::norm(z) - z2_re) * kLog2E + std::log2(2.0 * (1.0 + std::abs(z)));
    const unsigned bits = kGuardBits + static_cast<unsigned>(std::ceil(std::max(cancel, 0.0)));
    PrecisionScope scope(bits);
    const MpComplex zz{Real(z.real()), Real(z.imag())};
    const MpComplex u{zz.im, -zz.re};  // -i z
    const Real result_floor = boost::multiprecision::exp(Real(z2_re)) / (2 * (1 + zz.abs()));
    const Real tolerance = result_floor * boost::multiprecision::pow(Real(2), -static_cast<int>(kGuardBits - 16));
    const MpComplex erfc = MpComplex{Real(1), Real(0)} - erf_series(u, tolerance);
    const MpComplex minus_z2{-(zz * zz).re, -(zz * zz).im};
    return mp_exp(minus_z2) * erfc;
}

inline constexpr unsigned kFractionBits = 192;
inline constexpr long kFractionMaxTerms = 200000;

/// w(z) for Im z > 0 from the Jacobi continued fraction
/// w = (i/sqrt(pi)) / (z - (1/2)/(z - 1/(z - (3/2)/(z - ...)))),
/// evaluated top-down by the modified Lentz method at 192 bits until a
/// convergent changes the value by less than 2^-120.
inline MpComplex faddeeva_fraction(std::complex<double> z) {
    PrecisionScope scope(kFractionBits);
    const MpComplex zz{Real(z.real()), Real(z.imag())};
    const Real tiny = boost::multiprecision::pow(Real(2), -400);
    const Real eps = boost::multiprecision::pow(Real(2), -120);
    MpComplex f = zz;
    MpComplex c = zz;
    MpComplex d{Real(0), Real(0)};
    const MpComplex one{Real(1), Real(0)};
    for (long n = 1; n <= kFractionMaxTerms; ++n) {
        const Real a = Real(-n) / 2;
        d = zz + d * a;
        if (d.abs() < tiny)
            d = {tiny, Real(0)};
        c = zz + MpComplex{a, Real(0)} / c;
        if (c.abs() < tiny)
            c = {tiny, Real(0)};
        d = one / d;
        const MpComplex delta = c * d;
        f = f * delta;
        if ((delta - one).abs() < eps) {
            const Real inv_sqrt_pi = 1 / boost::multiprecision::sqrt(boost::math::constants::pi<Real>());
            return MpComplex{Real(0), inv_sqrt_pi} / f;
        }
    }
    throw PrecisionError("faddeeva_reference: continued fraction did not converge", {}, 0.0);
}

/// Series near the origin and the real axis, continued fraction elsewhere.
inline constexpr double kFractionRadius = 8.0;
inline constexpr double kFractionImag = 1.0;

inline MpComplex faddeeva_upper(std::complex<double> z) {
    if (std::abs(z) > kFractionRadius && z.imag() >= kFractionImag)
        return faddeeva_fraction(z);
    return faddeeva_series(z);
}

/// w(z) on the whole plane; the lower half-plane uses w(z) = 2 e^{-z^2} - w(-z).
inline MpComplex faddeeva_any(std::complex<double> z) {
    if (z.imag() >= 0.0)
        return faddeeva_upper(z);
    MpComplex reflected = faddeeva_upper(-z);
    const double z2_re = z.real() * z.real() - z.imag() * z.imag();
    PrecisionScope scope(kGuardBits + static_cast<unsigned>(std::ceil(std::abs(z2_re) * kLog2E)) + 64);
    const MpComplex zz{Real(z.real()), Real(z.imag())};
    const MpComplex sq = zz * zz;
    const MpComplex two_exp = mp_exp(MpComplex{-sq.re, -sq.im}) * Real(2);
    return two_exp - reflected;
}

} // namespace erf_oracle_detail

/// Reference w(z).
inline OracleValue faddeeva_reference(std::complex<double> z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("faddeeva_reference: non-finite argument");
    return erf_oracle_detail::to_double(erf_oracle_detail::faddeeva_any(z));
}

/// Reference erf(z): the Maclaurin series up to |z| = 8, then
/// erf z = sign(Re z) (1 - e^{-z^2} w(i z)) with z reflected into Re z >= 0.
inline OracleValue erf_reference(std::complex<double> z) {
    using namespace erf_oracle_detail;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("erf_reference: non-finite argument");
    if (std::abs(z) > kFractionRadius) {
        const bool flip = z.real() < 0.0;
        const std::complex<double> zr = flip ? -z : z;
        const MpComplex w = faddeeva_upper({-zr.imag(), zr.real()});
        const double z2_re = zr.real() * zr.real() - zr.imag() * zr.imag();
        PrecisionScope scope(kGuardBits + 64 + static_cast<unsigned>(std::ceil(std::abs(z2_re) * kLog2E)));
        const MpComplex zz{Real(zr.real()), Real(zr.imag())};
        const MpComplex sq = zz * zz;
        MpComplex erf = MpComplex{Real(1), Real(0)} - mp_exp(MpComplex{-sq.re, -sq.im}) * w;
        if (flip)
            erf = MpComplex{-erf.re, -erf.im};
        return to_double(erf);
    }
    // |erf z| >= c e^{-Re z^2}/(1+|z|) away from its zeros for large |z|, and
    // erf z ~ 2z/sqrt(pi) near the origin; the floor below covers both.
    const double z2_re = z.real() * z.real() - z.imag() * z.imag();
    const double floor_log2 = std::min(0.0, -z2_re * kLog2E) - std::log2(2.0 * (1.0 + std::abs(z))) +
                              std::min(0.0, std::log2(std::abs(z) + 1e-300));
    const double cancel = std::norm(z) * kLog2E - floor_log2;
    const unsigned bits = kGuardBits + static_cast<unsigned>(std::ceil(std::max(cancel, 0.0)));
    PrecisionScope scope(bits);
    const MpComplex zz{Real(z.real()), Real(z.imag())};
    const Real tolerance = boost::multiprecision::pow(Real(2), static_cast<int>(std::floor(floor_log2)) -
                                                                   static_cast<int>(kGuardBits - 16));
    return to_double(erf_series(zz, tolerance));
}

/// The two reference paths for w evaluated at the same point (used to check
/// that they agree where both apply).
inline std::pair<OracleValue, OracleValue> faddeeva_reference_both_paths(std::complex<double> z) {
    using namespace erf_oracle_detail;
    return {to_double(faddeeva_series(z)), to_double(faddeeva_fraction(z))};
}

} // namespace pbgqsl::oracle
