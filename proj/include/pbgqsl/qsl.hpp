// qsl.hpp: Quantum speed limit time of the damped qubit

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "pbgqsl/dynamics.hpp"
#include "pbgqsl/errors.hpp"
#include "pbgqsl/reservoirs.hpp"
#include "pbgqsl/trace.hpp"

namespace pbgqsl {

/// Schatten norm orders used by the unified bound.
enum class SchattenOrder { one, two, infinity };

inline constexpr std::array<SchattenOrder, 3> kSchattenOrders{SchattenOrder::one, SchattenOrder::two,
                                                              SchattenOrder::infinity};

/// One value per Schatten order.
struct PerOrder {
    double one = 0.0;
    double two = 0.0;
    double infinity = 0.0;

    double& operator[](SchattenOrder p) {
        return p == SchattenOrder::one ? one : (p == SchattenOrder::two ? two : infinity);
    }
    double operator[](SchattenOrder p) const {
        return p == SchattenOrder::one ? one : (p == SchattenOrder::two ? two : infinity);
    }
};

struct QslResult {
    double tau = 0.0;
    double tau_qsl = 0.0;
    PerOrder tau_p;
    double bures_angle = 0.0;
    PerOrder E_p;  // time-averaged norms (1/tau) int ||L_t rho_t||_p dt
};

/// Singular values of a 2x2 complex matrix, largest first.
inline std::array<double, 2> singular_values(const Matrix2c& m) {
    const double frob2 = m.squaredNorm();
    const double det = std::abs(m.determinant());
    const double disc = std::sqrt(std::max(0.0, frob2 * frob2 - 4.0 * det * det));
    const double s1 = std::sqrt(0.5 * (frob2 + disc));
    const double s2 = s1 > 0.0 ? det / s1 : 0.0;
    return {s1, s2};
}

inline double schatten_norm(const Matrix2c& m, SchattenOrder p) {
    const auto s = singular_values(m);
    switch (p) {
    case SchattenOrder::one:
        return s[0] + s[1];
    case SchattenOrder::two:
        return std::hypot(s[0], s[1]);
    case SchattenOrder::infinity:
        return s[0];
    }
    return s[0];
}

/// arccos sqrt(<psi0|rho|psi0>) for a pure reference state, in [0, pi/2].
inline double bures_angle(const QubitDensityMatrix& psi0, const QubitDensityMatrix& rho_tau) {
    if (!psi0.is_pure())
        throw PreconditionError("bures_angle: reference state must be pure");
    const double fidelity = (psi0.matrix() * rho_tau.matrix()).trace().real();
    return std::acos(std::sqrt(std::clamp(fidelity, 0.0, 1.0)));
}

/// Unified bound max{tau_1, tau_2, tau_inf}, tau_p = sin^2 B / E_p, with
/// L_t rho_t taken as the exact derivative of the mapped state. Each norm is
/// integrated by adaptive quadrature between the turning points of P.
inline QslResult qsl_time_general(const QubitDensityMatrix& psi0, const DecoherenceTrace& trace) {
    if (!psi0.is_pure())
        throw PreconditionError("qsl_time_general: initial state must be pure");
    const double tau = trace.tau;
    const auto& source = trace.source;

    QslResult out;
    out.tau = tau;
    const QubitDensityMatrix rho_tau = apply_map(psi0, trace.b.back());
    out.bures_angle = bures_angle(psi0, rho_tau);
    const double sin2 = std::pow(std::sin(out.bures_angle), 2);

    for (SchattenOrder p : kSchattenOrders) {
        const double integral = integrate_over_segments(trace, [&](double t) {
            const BtValue v = source.evaluate(t);
            return schatten_norm(mapped_state_derivative(psi0, v.b, v.b_dot), p);
        });
        out.E_p[p] = integral / tau;
    }
    if (out.E_p.infinity <= 0.0)
        throw DegenerateEvolutionError("qsl_time_general: the state does not evolve");
    out.tau_qsl = 0.0;
    for (SchattenOrder p : kSchattenOrders) {
        out.tau_p[p] = sin2 / out.E_p[p];
        out.tau_qsl = std::max(out.tau_qsl, out.tau_p[p]);
    }
    return out;
}

inline QslResult qsl_time_general(const QubitDensityMatrix& psi0, const ReservoirModel& model, double tau,
                                  double step = kDefaultStep) {
    return qsl_time_general(psi0, sample_trace(model, tau, step));
}

/// (1 - P_tau) / ((1/tau) int_0^tau |dP/dt| dt) for the excited initial state.
inline double qsl_time_excited(const DecoherenceTrace& trace) {
    const double moved = integrate_abs_population_rate(trace);
    if (!(moved > 0.0))
        throw DegenerateEvolutionError("qsl_time_excited: integral of |dP/dt| vanishes");
    return (1.0 - trace.final_population()) * trace.tau / moved;
}

inline double qsl_time_excited(const ReservoirModel& model, double tau, double step = kDefaultStep) {
    return qsl_time_excited(sample_trace(model, tau, step));
}

} // namespace pbgqsl
