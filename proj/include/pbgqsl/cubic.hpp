// cubic.hpp: Roots of the band-edge pole cubic s^3 - i delta s^2 + i = 0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "pbgqsl/errors.hpp"

namespace pbgqsl {

using Complex = std::complex<double>;

/// Parameters x_l with s^3 - i delta s^2 + i = (s + x1)(s + x2)(s + x3),
/// natural units beta = 1. Sorted by real part, ties broken by imaginary part.
struct CubicRoots {
    std::array<Complex, 3> x;

    const Complex& operator[](std::size_t l) const { return x[l]; }
    Complex x1() const { return x[0]; }
    Complex x2() const { return x[1]; }
    Complex x3() const { return x[2]; }
};

namespace cubic_detail {

inline Complex eval(Complex u, double a, double b, double c) {
    return ((u + a) * u + b) * u + c;
}

inline Complex polish(Complex u, double a, double b, double c) {
    for (int it = 0; it < 4; ++it) {
        const Complex f = eval(u, a, b, c);
        const Complex df = (3.0 * u + 2.0 * a) * u + b;
        if (std::abs(df) < 1e-300)
            break;
        const Complex step = f / df;
        u -= step;
        if (std::abs(step) <= 1e-16 * std::abs(u))
            break;
    }
    return u;
}

} // namespace cubic_detail

/// Roots of the real monic cubic u^3 + a u^2 + b u + c, Newton-polished.
inline std::array<Complex, 3> real_cubic_roots(double a, double b, double c) {
    using namespace cubic_detail;
    const double shift = -a / 3.0;
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double disc = 0.25 * q * q + p * p * p / 27.0;

    std::array<Complex, 3> u{};
    if (disc < 0.0) {
        const double r = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (2.0 * p) * std::sqrt(-3.0 / p), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            u[k] = r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) + shift;
    } else {
        // Pick the cube root of larger magnitude to avoid cancellation.
        const double big = std::cbrt(-0.5 * q - std::copysign(std::sqrt(disc), q));
        const double small = big != 0.0 ? -p / (3.0 * big) : 0.0;
        const double re = -0.5 * (big + small) + shift;
        const double im = 0.5 * std::sqrt(3.0) * (big - small);
        u[0] = big + small + shift;
        u[1] = Complex{re, im};
        u[2] = Complex{re, -im};
    }
    for (auto& root : u)
        root = polish(root, a, b, c);
    return u;
}

/// Solves s^3 - i delta s^2 + i = 0 (beta = 1) and returns x_l = -s_l.
///
/// With s = i u the cubic becomes the real equation u^3 - delta u^2 - 1 = 0,
/// so x_l = -i u_l.
inline CubicRoots solve_cubic(double delta) {
    if (!std::isfinite(delta))
        throw DomainError("solve_cubic: delta must be finite");
    const auto u = real_cubic_roots(-delta, 0.0, -1.0);
    CubicRoots out;
    for (std::size_t l = 0; l < 3; ++l)
        out.x[l] = Complex{u[l].imag(), -u[l].real()};
    const double scale = 1.0 + std::abs(delta);
    std::sort(out.x.begin(), out.x.end(), [scale](const Complex& lhs, const Complex& rhs) {
        if (std::abs(lhs.real() - rhs.real()) > 1e-12 * scale)
            return lhs.real() < rhs.real();
        return lhs.imag() < rhs.imag();
    });
    return out;
}

} // namespace pbgqsl
