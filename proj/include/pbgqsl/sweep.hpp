// sweep.hpp: Detuning/driving-time sweeps of the band-gap reservoir

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "pbgqsl/errors.hpp"
#include "pbgqsl/nonmarkov.hpp"
#include "pbgqsl/parallel.hpp"
#include "pbgqsl/qsl.hpp"
#include "pbgqsl/reservoirs.hpp"
#include "pbgqsl/trace.hpp"

namespace pbgqsl {

enum class ModelKind { pbg, jc };

struct SweepConfig {
    ModelKind model = ModelKind::pbg;
    double delta = -10.0;
    double delta_min = -10.0;
    double delta_max = 10.0;
    int delta_steps = 201;
    std::vector<double> tau{1.0, 3.0, 5.0, 10.0};
    double gamma0 = 1.0;
    double lambda = 1.0;
    double step = kDefaultStep;
    std::uint64_t seed = 42;
    std::size_t n_pairs = 2000;
    unsigned workers = 0;  // 0: resolve from the environment

    void validate() const {
        if (delta_steps < 1)
            throw ConfigError("delta-steps must be >= 1");
        if (!std::isfinite(delta_min) || !std::isfinite(delta_max) || delta_min > delta_max)
            throw ConfigError("delta range must be finite with delta-min <= delta-max");
        if (!std::isfinite(delta))
            throw ConfigError("delta must be finite");
        if (tau.empty())
            throw ConfigError("at least one tau is required");
        for (double t : tau)
            if (!(t > 0.0) || !std::isfinite(t))
                throw ConfigError("tau values must be positive");
        if (!(step > 0.0) || !std::isfinite(step))
            throw ConfigError("dt must be positive");
        if (!(gamma0 > 0.0) || !(lambda > 0.0))
            throw ConfigError("gamma0 and lambda must be positive");
    }

    ReservoirModel model_at(double d) const {
        if (model == ModelKind::jc)
            return JcModel{gamma0, lambda};
        return PbgModel{d};
    }
};

/// Evenly spaced detunings; endpoints are reproduced exactly.
inline std::vector<double> delta_grid(const SweepConfig& config) {
    if (config.delta_steps < 1)
        throw ConfigError("delta-steps must be >= 1");
    if (config.delta_steps == 1)
        return {config.delta_min};
    const int n = config.delta_steps - 1;
    std::vector<double> out(static_cast<std::size_t>(config.delta_steps));
    for (int k = 0; k <= n; ++k)
        out[static_cast<std::size_t>(k)] = (config.delta_min * (n - k) + config.delta_max * k) / n;
    return out;
}

struct SweepRow {
    double delta = 0.0;
    double tau = 0.0;
    double tau_qsl = 0.0;            // from the population-rate integral
    double n_value = 0.0;            // telescoping sum over rising intervals
    double n_closed = 0.0;           // half of (int |dP/dt| + P_tau - 1)
    double p_tau = 0.0;
    double identity_residual = 0.0;  // |tau / (2N/(1-P_tau) + 1) - tau_qsl| / tau
    bool flagged = false;
    std::string error;
};

inline constexpr double kIdentityTolerance = 1e-6;

/// All quantities of one (delta, tau) point from a single trace.
inline SweepRow evaluate_point(const ReservoirModel& model, double delta, double tau, double step) {
    SweepRow row;
    row.delta = delta;
    row.tau = tau;
    try {
        const auto trace = sample_trace(model, tau, step);
        row.p_tau = trace.final_population();
        row.tau_qsl = qsl_time_excited(trace);
        row.n_value = blp_integral(StatePair::canonical(), trace).value;
        row.n_closed = nonmarkovianity_closed(trace);
        const double via_identity = qsl_from_nonmarkov(row.n_value, row.p_tau, tau);
        row.identity_residual = std::abs(via_identity - row.tau_qsl) / tau;
        row.flagged = !(row.identity_residual < kIdentityTolerance);
        if (row.flagged)
            row.error = "identity residual above tolerance";
    } catch (const Error& e) {
        row.flagged = true;
        row.error = e.what();
        row.identity_residual = std::nan("");
    }
    return row;
}

/// One row per (delta, tau), sorted by tau then delta; rows are computed
/// independently so the result does not depend on the worker count.
inline std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    config.validate();
    if (config.model != ModelKind::pbg)
        throw ConfigError("sweeps are defined for the band-gap model only");
    const auto deltas = delta_grid(config);
    std::vector<double> taus = config.tau;
    std::sort(taus.begin(), taus.end());
    taus.erase(std::unique(taus.begin(), taus.end()), taus.end());

    std::vector<SweepRow> rows(deltas.size() * taus.size());
    parallel_for(rows.size(), resolve_workers(config.workers), [&](std::size_t i) {
        const double tau = taus[i / deltas.size()];
        const double delta = deltas[i % deltas.size()];
        rows[i] = evaluate_point(config.model_at(delta), delta, tau, config.step);
    });
    return rows;
}

} // namespace pbgqsl
