// jc_ode.hpp: Memory-kernel ODE reference for the damped cavity reservoir

#pragma once

#include <array>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "pbgqsl/errors.hpp"
#include "pbgqsl/reservoirs.hpp"

namespace pbgqsl::oracle {

/// b and b_dot at each requested time from b'' + lambda b' + (gamma0 lambda / 2) b = 0,
/// b(0) = 1, b'(0) = 0, integrated by adaptive Dormand-Prince 5(4).
/// `times` must be non-decreasing and start at or after 0.
inline std::vector<BtValue> jc_ode_solution(const JcModel& model, const std::vector<double>& times,
                                            double tolerance = 1e-13) {
    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, 2>;
    if (!(model.gamma0 > 0.0) || !(model.lambda > 0.0))
        throw DomainError("jc_ode_solution: gamma0 and lambda must be positive");
    for (std::size_t k = 0; k < times.size(); ++k)
        if (times[k] < 0.0 || (k > 0 && times[k] < times[k - 1]))
            throw DomainError("jc_ode_solution: times must be non-negative and sorted");

    const double lambda = model.lambda;
    const double stiffness = 0.5 * model.gamma0 * model.lambda;
    auto rhs = [lambda, stiffness](const State& y, State& dy, double) {
        dy[0] = y[1];
        dy[1] = -lambda * y[1] - stiffness * y[0];
    };

    std::vector<BtValue> out;
    out.reserve(times.size());
    State y{1.0, 0.0};
    double now = 0.0;
    auto stepper = odeint::make_dense_output(tolerance, tolerance, odeint::runge_kutta_dopri5<State>());
    for (double t : times) {
        if (t > now) {
            odeint::integrate_adaptive(stepper, rhs, y, now, t, 1e-3);
            now = t;
        }
        out.push_back({Complex{y[0], 0.0}, Complex{y[1], 0.0}});
    }
    return out;
}

} // namespace pbgqsl::oracle
