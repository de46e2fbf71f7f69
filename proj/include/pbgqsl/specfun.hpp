// specfun.hpp: Faddeeva function w(z) and the complex error function

#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "pbgqsl/errors.hpp"

namespace pbgqsl {

using Complex = std::complex<double>;

namespace specfun_detail {

inline constexpr double kInvSqrtPi = std::numbers::inv_sqrtpi;

// Region boundaries in the first quadrant. Below kSeriesRadius erf is summed
// directly; w uses the Maclaurin route unless |z| >= kCfRadius or
// Im z >= kCfImag, where the Laplace continued fraction converges quickly.
inline constexpr double kErfSeriesRadius = 2.0;
inline constexpr double kCfRadius = 6.0;
inline constexpr double kCfImag = 2.0;

inline void require_finite(Complex z, const char* who) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError(std::string(who) + ": non-finite argument");
}

/// Maclaurin series 2/sqrt(pi) * sum (-1)^n u^{2n+1} / (n! (2n+1)).
/// Accurate while exp(min(|u|^2, 2 Re(u)^2)) stays moderate.
inline Complex erf_maclaurin(Complex u) {
    const Complex u2 = u * u;
    const double mag2 = std::norm(u);
    Complex term = u;
    Complex sum = u;
    for (int n = 1; n < 600; ++n) {
        term *= -u2 / static_cast<double>(n);
        const Complex add = term / static_cast<double>(2 * n + 1);
        sum += add;
        if (n > mag2 && std::abs(add) <= 1e-17 * std::abs(sum))
            break;
    }
    return 2.0 * kInvSqrtPi * sum;
}

/// Laplace continued fraction for w(z), Im z > 0, evaluated bottom-up.
inline Complex faddeeva_continued_fraction(Complex z, int terms) {
    Complex tail{0.0, 0.0};
    for (int k = terms; k >= 1; --k)
        tail = (0.5 * k) / (z - tail);
    return Complex{0.0, kInvSqrtPi} / (z - tail);
}

inline int continued_fraction_terms(Complex z) {
    return std::abs(z) >= kCfRadius ? 32 : 64;
}

/// w(z) = exp(-z^2) erfc(-iz) through the Maclaurin series of erf(-iz).
inline Complex faddeeva_series(Complex z) {
    const Complex u{z.imag(), -z.real()};  // -i z
    return std::exp(-z * z) * (1.0 - erf_maclaurin(u));
}

/// w on the closed first quadrant.
inline Complex faddeeva_first_quadrant(Complex z) {
    if (std::abs(z) >= kCfRadius || z.imag() >= kCfImag)
        return faddeeva_continued_fraction(z, continued_fraction_terms(z));
    return faddeeva_series(z);
}

/// w on the closed upper half-plane, |w| <= 1 there.
inline Complex faddeeva_upper(Complex z) {
    if (z.real() < 0.0)
        return std::conj(faddeeva_first_quadrant(-std::conj(z)));
    return faddeeva_first_quadrant(z);
}

// exp(a) * m without intermediate overflow when |m| is small.
inline Complex scaled_exp(Complex a, Complex m) {
    if (std::abs(a.real()) < 700.0 || m == Complex{0.0, 0.0})
        return std::exp(a) * m;
    return std::exp(a + std::log(m));
}

inline Complex checked(Complex v, const char* who) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw RangeError(std::string(who) + ": result not representable in double");
    return v;
}

} // namespace specfun_detail

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
///
/// The upper half-plane is evaluated directly; the lower half-plane uses
/// w(z) = 2 exp(-z^2) - w(-z). Throws RangeError where |w| overflows
/// (deep in the lower half-plane) and DomainError on non-finite input.
inline Complex faddeeva(Complex z) {
    using namespace specfun_detail;
    require_finite(z, "faddeeva");
    if (z.imag() >= 0.0)
        return faddeeva_upper(z);
    const Complex reflected = faddeeva_upper(-z);
    const Complex e = scaled_exp(-z * z, Complex{2.0, 0.0});
    return checked(e - reflected, "faddeeva");
}

/// Error function of complex argument (the entire function).
///
/// Small |z| is summed from the Maclaurin series; elsewhere
/// erf(z) = 1 - exp(-z^2) w(iz) on the first quadrant, extended by
/// erf(-z) = -erf(z) and erf(conj z) = conj(erf z), so both symmetries hold
/// exactly.
inline Complex erf_complex(Complex z) {
    using namespace specfun_detail;
    require_finite(z, "erf_complex");
    if (z.real() < 0.0)
        return -erf_complex(-z);
    if (z.imag() < 0.0)
        return std::conj(erf_complex(std::conj(z)));
    if (std::abs(z) <= kErfSeriesRadius)
        return erf_maclaurin(z);
    // i z lies in the second quadrant; w(iz) = conj(w(y + ix)).
    const Complex w_iz = std::conj(faddeeva_first_quadrant(Complex{z.imag(), z.real()}));
    return checked(1.0 - scaled_exp(-z * z, w_iz), "erf_complex");
}

/// erfc(z) = exp(-z^2) w(iz); stable where erf(z) is close to 1.
inline Complex erfc_complex(Complex z) {
    using namespace specfun_detail;
    require_finite(z, "erfc_complex");
    const Complex iz{-z.imag(), z.real()};
    if (iz.imag() >= 0.0)
        return checked(scaled_exp(-z * z, faddeeva_upper(iz)), "erfc_complex");
    return 1.0 - erf_complex(z);
}

} // namespace pbgqsl
