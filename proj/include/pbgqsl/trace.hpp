// trace.hpp: Sampled decoherence traces with turning-point refinement

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pbgqsl/errors.hpp"
#include "pbgqsl/reservoirs.hpp"

namespace pbgqsl {

/// b_t, b_dot, P_t = |b_t|^2 and dP/dt on a time grid (units 1/beta).
///
/// The grid is uniform with spacing `step` on [0, tau] (the last cell may be
/// shorter). Every sign change of dP/dt found between uniform nodes is located
/// by bisection; the two ends of the final bracket are inserted as extra nodes
/// and the midpoint is recorded in `turning_points`. P is monotone between
/// consecutive entries of segment_breaks().
struct DecoherenceTrace {
    DecoherenceFunction source;
    double tau = 0.0;
    double step = 0.0;
    std::vector<double> grid;
    std::vector<Complex> b;
    std::vector<Complex> b_dot;
    std::vector<double> P;
    std::vector<double> dPdt;
    std::vector<double> turning_points;

    std::size_t size() const { return grid.size(); }
    double final_population() const { return P.back(); }

    /// {0, turning points..., tau}
    std::vector<double> segment_breaks() const {
        std::vector<double> out;
        out.reserve(turning_points.size() + 2);
        out.push_back(0.0);
        out.insert(out.end(), turning_points.begin(), turning_points.end());
        out.push_back(tau);
        return out;
    }
};

inline constexpr double kDefaultStep = 1e-3;
inline constexpr double kTurningPointTolerance = 1e-10;

// Relative tolerance of the adaptive segment quadrature; tighter values
// only chase rounding noise in b_dot near t = 0.
inline constexpr unsigned kQuadDepth = 12;
inline constexpr double kQuadTolerance = 1e-11;

namespace trace_detail {

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

struct Node {
    double t;
    BtValue value;
};

} // namespace trace_detail

/// Samples the decoherence function of `model` on [0, tau].
inline DecoherenceTrace sample_trace(const ReservoirModel& model, double tau, double step = kDefaultStep) {
    using trace_detail::Node;
    using trace_detail::sign_of;
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw ConfigError("sample_trace: tau must be positive");
    if (!(step > 0.0) || !std::isfinite(step))
        throw ConfigError("sample_trace: step must be positive");
    if (step >= tau)
        throw ConfigError("sample_trace: step must be smaller than tau");

    DecoherenceFunction source(model);
    const auto cells = static_cast<std::size_t>(std::ceil(tau / step - 1e-9));

    std::vector<Node> uniform;
    uniform.reserve(cells + 1);
    for (std::size_t k = 0; k < cells; ++k) {
        const double t = static_cast<double>(k) * step;
        uniform.push_back({t, source.evaluate(t)});
    }
    uniform.push_back({tau, source.evaluate(tau)});

    std::vector<Node> nodes;
    std::vector<double> turning;
    nodes.reserve(uniform.size() + 16);
    nodes.push_back(uniform.front());
    // dP/dt vanishes at t = 0 for both reservoirs; signs are read from t > 0.
    for (std::size_t k = 1; k < uniform.size(); ++k) {
        const Node& left = uniform[k - 1];
        const Node& right = uniform[k];
        const int s_left = sign_of(left.value.population_rate());
        const int s_right = sign_of(right.value.population_rate());
        if (k >= 2 && s_left != 0 && s_right != 0 && s_left != s_right) {
            double lo = left.t;
            double hi = right.t;
            BtValue lo_val = left.value;
            BtValue hi_val = right.value;
            while (hi - lo > kTurningPointTolerance) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi)
                    break;
                const BtValue v = source.evaluate(mid);
                const int s_mid = sign_of(v.population_rate());
                if (s_mid == 0) {
                    lo = hi = mid;
                    lo_val = hi_val = v;
                    break;
                }
                if (s_mid == s_left) {
                    lo = mid;
                    lo_val = v;
                } else {
                    hi = mid;
                    hi_val = v;
                }
            }
            turning.push_back(0.5 * (lo + hi));
            if (lo > left.t)
                nodes.push_back({lo, lo_val});
            if (hi < right.t && hi > lo)
                nodes.push_back({hi, hi_val});
        } else if (k >= 2 && s_left == 0) {
            const int s_before = sign_of(uniform[k - 2].value.population_rate());
            if (s_before != 0 && s_right != 0 && s_before != s_right)
                turning.push_back(left.t);
        }
        nodes.push_back(right);
    }

    DecoherenceTrace trace{source, tau, step, {}, {}, {}, {}, {}, std::move(turning)};
    trace.grid.reserve(nodes.size());
    trace.b.reserve(nodes.size());
    trace.b_dot.reserve(nodes.size());
    trace.P.reserve(nodes.size());
    trace.dPdt.reserve(nodes.size());
    for (const auto& node : nodes) {
        trace.grid.push_back(node.t);
        trace.b.push_back(node.value.b);
        trace.b_dot.push_back(node.value.b_dot);
        trace.P.push_back(node.value.population());
        trace.dPdt.push_back(node.value.population_rate());
    }
    return trace;
}

/// Adaptive Gauss-Kronrod integral of f over [a, b]. When a = 0 the
/// substitution t = u^2 removes the sqrt(t) behaviour of the band-edge
/// amplitude near the origin.
template <class F>
double integrate_smooth_segment(const F& f, double a, double b) {
    using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
    if (b <= a)
        return 0.0;
    double error = 0.0;
    if (a == 0.0) {
        auto g = [&f](double u) { return 2.0 * u * f(u * u); };
        return Rule::integrate(g, 0.0, std::sqrt(b), kQuadDepth, kQuadTolerance, &error);
    }
    return Rule::integrate(f, a, b, kQuadDepth, kQuadTolerance, &error);
}

/// Integral over [0, tau] of a function that is smooth on every monotone
/// segment of P, split at the trace's turning points.
template <class F>
double integrate_over_segments(const DecoherenceTrace& trace, const F& f) {
    const auto breaks = trace.segment_breaks();
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k)
        total += integrate_smooth_segment(f, breaks[k], breaks[k + 1]);
    return total;
}

/// Quadrature of |dP/dt| over [0, tau] from the analytic b_dot.
inline double integrate_abs_population_rate(const DecoherenceTrace& trace) {
    const auto& source = trace.source;
    return integrate_over_segments(trace, [&source](double t) {
        return std::abs(source.evaluate(t).population_rate());
    });
}

} // namespace pbgqsl
