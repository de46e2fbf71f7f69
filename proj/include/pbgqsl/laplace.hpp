// laplace.hpp: Numerical inverse Laplace transform on a deformed Bromwich contour

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "pbgqsl/errors.hpp"

namespace pbgqsl {

using Complex = std::complex<double>;

/// Where the singularities of the transform live: Re s <= abscissa and
/// imag_min <= Im s <= imag_max, with any branch cuts running off to Re s -> -inf.
struct ContourBounds {
    double abscissa = 0.0;
    double imag_min = -1.0;
    double imag_max = 1.0;
};

struct InversionResult {
    Complex value;
    double error_estimate = 0.0;
    int panels = 0;
};

namespace laplace_detail {

// integral over u in [0, length] of exp(s t) F(s) ds along s = start + dir * u
template <class F>
Complex contour_piece(const F& transform, double t, Complex start, Complex dir, double length, int panels) {
    using Rule = boost::math::quadrature::gauss<double, 16>;
    const double h = length / panels;
    Complex sum{0.0, 0.0};
    for (int p = 0; p < panels; ++p) {
        auto integrand = [&](double u) {
            const Complex s = start + dir * u;
            return std::exp(s * t) * transform(s);
        };
        sum += Rule::integrate(integrand, p * h, (p + 1) * h);
    }
    return sum * dir;
}

} // namespace laplace_detail

/// Inverts a Laplace transform at time t > 0.
///
/// The Bromwich line is deformed into a vertical segment at
/// Re s = abscissa + 2/t spanning the singular strip (plus a margin), closed
/// by two rays at 135 and 225 degrees along which exp(s t) decays. Each piece
/// uses composite 16-point Gauss-Legendre; the panel count doubles until two
/// successive estimates agree to accuracy_target. Throws PrecisionError with
/// the best estimate if the budget runs out.
template <class F>
InversionResult inverse_laplace_numeric(const F& transform, double t, double accuracy_target,
                                        ContourBounds bounds = {}) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw DomainError("inverse_laplace_numeric: t must be positive");
    if (!(accuracy_target > 0.0))
        throw DomainError("inverse_laplace_numeric: accuracy target must be positive");

    const double re0 = bounds.abscissa + 2.0 / t;
    const double margin = 1.0 + 2.0 / t;
    const Complex bottom{re0, bounds.imag_min - margin};
    const Complex top{re0, bounds.imag_max + margin};
    const double height = top.imag() - bottom.imag();
    // exp(s t) falls below 1e-17 of its corner value along the rays.
    const double ray_length = std::numbers::sqrt2 * (re0 * t + 40.0) / t;
    const Complex up_left = std::polar(1.0, 0.75 * std::numbers::pi);
    const Complex down_left = std::conj(up_left);

    auto estimate = [&](int panels) {
        using laplace_detail::contour_piece;
        Complex sum = contour_piece(transform, t, bottom, Complex{0.0, 1.0}, height, panels);
        sum += contour_piece(transform, t, top, up_left, ray_length, panels);
        sum -= contour_piece(transform, t, bottom, down_left, ray_length, panels);
        return sum / Complex{0.0, 2.0 * std::numbers::pi};
    };

    constexpr int kMaxPanels = 4096;
    int panels = 8;
    Complex previous = estimate(panels);
    double change = 0.0;
    while (panels < kMaxPanels) {
        panels *= 2;
        const Complex current = estimate(panels);
        change = std::abs(current - previous);
        previous = current;
        if (change <= 0.25 * accuracy_target)
            return InversionResult{current, change, panels};
    }
    throw PrecisionError("inverse_laplace_numeric: accuracy target not met", previous, change);
}

} // namespace pbgqsl
