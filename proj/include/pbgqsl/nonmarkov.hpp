// nonmarkov.hpp: Trace-distance information flow and the BLP non-Markovianity

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "pbgqsl/dynamics.hpp"
#include "pbgqsl/errors.hpp"
#include "pbgqsl/parallel.hpp"
#include "pbgqsl/qsl.hpp"
#include "pbgqsl/trace.hpp"

namespace pbgqsl {

struct StatePair {
    QubitDensityMatrix rho1;
    QubitDensityMatrix rho2;

    double population_difference() const { return rho1.rho11() - rho2.rho11(); }
    Complex coherence_difference() const { return rho1.rho10() - rho2.rho10(); }

    /// (|0>, |1>), the pair whose evolved distance is P_t itself.
    static StatePair canonical() { return {QubitDensityMatrix::ground(), QubitDensityMatrix::excited()}; }
};

struct NonMarkovResult {
    double value = 0.0;
    std::vector<std::pair<double, double>> positive_intervals;
    StatePair pair;
};

struct SamplingReport {
    std::uint64_t seed = 0;
    std::size_t n_pairs = 0;
    std::vector<double> integrals;
    double optimal_value = 0.0;
};

/// (1/2)||rho1 - rho2||_1 = sqrt(a^2 + |c|^2) for qubits.
inline double trace_distance(const QubitDensityMatrix& rho1, const QubitDensityMatrix& rho2) {
    const double a = rho1.rho11() - rho2.rho11();
    return std::sqrt(a * a + std::norm(rho1.rho10() - rho2.rho10()));
}

/// Distance of the evolved pair as a function of P_t = |b_t|^2:
/// sqrt(a^2 P^2 + |c|^2 P).
inline double evolved_trace_distance(const StatePair& pair, double population) {
    if (population < 0.0 || population > 1.0 + 1e-12)
        throw DomainError("evolved_trace_distance: P must lie in [0, 1]");
    const double a = pair.population_difference();
    const double c2 = std::norm(pair.coherence_difference());
    return std::sqrt(a * a * population * population + c2 * population);
}

/// Integral of G_t = dD_t/dt over G_t > 0 for one pair.
///
/// D_t is an increasing function of P_t for every pair, so G_t > 0 exactly
/// where P rises; the integral is the telescoping sum of D over the rising
/// segments between the trace's turning points.
inline NonMarkovResult blp_integral(const StatePair& pair, const DecoherenceTrace& trace) {
    NonMarkovResult out{0.0, {}, pair};
    const auto breaks = trace.segment_breaks();
    std::vector<double> population(breaks.size());
    population.front() = trace.P.front();
    population.back() = trace.final_population();
    for (std::size_t k = 1; k + 1 < breaks.size(); ++k)
        population[k] = std::min(trace.source.evaluate(breaks[k]).population(), 1.0);
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        if (population[k + 1] <= population[k])
            continue;
        const double rise =
            evolved_trace_distance(pair, population[k + 1]) - evolved_trace_distance(pair, population[k]);
        if (rise > 0.0) {
            out.value += rise;
            out.positive_intervals.emplace_back(breaks[k], breaks[k + 1]);
        }
    }
    return out;
}

/// (1/2)[int_0^tau |dP/dt| dt + P_tau - 1]; requires an excited start, P(0) = 1.
inline double nonmarkovianity_closed(const DecoherenceTrace& trace) {
    if (std::abs(trace.P.front() - 1.0) > 1e-12)
        throw PreconditionError("nonmarkovianity_closed: trace must start from P = 1");
    const double value = 0.5 * (integrate_abs_population_rate(trace) + trace.final_population() - 1.0);
    return std::max(value, 0.0);
}

/// tau / (2 N / (1 - P_tau) + 1).
inline double qsl_from_nonmarkov(double n_value, double p_tau, double tau) {
    if (!(tau > 0.0))
        throw DomainError("qsl_from_nonmarkov: tau must be positive");
    if (!(n_value >= 0.0))
        throw DomainError("qsl_from_nonmarkov: N must be non-negative");
    if (!(p_tau >= 0.0) || p_tau > 1.0)
        throw DomainError("qsl_from_nonmarkov: P_tau must lie in [0, 1)");
    if (p_tau == 1.0)
        throw SingularityError("qsl_from_nonmarkov: P_tau = 1 (population fully trapped)");
    return tau / (2.0 * n_value / (1.0 - p_tau) + 1.0);
}

/// Random pair number `index` of the stream `seed`: two mixed states drawn
/// uniformly from the Bloch ball. Each pair has its own generator seeded
/// from (seed, index), so results do not depend on evaluation order.
inline StatePair sample_pair(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    auto draw = [&] {
        const double r = std::cbrt(uniform());
        const double cos_theta = 2.0 * uniform() - 1.0;
        const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
        const double phi = 2.0 * std::numbers::pi * uniform();
        return QubitDensityMatrix::from_bloch(r * sin_theta * std::cos(phi), r * sin_theta * std::sin(phi),
                                              r * cos_theta);
    };
    QubitDensityMatrix first = draw();
    QubitDensityMatrix second = draw();
    return {first, second};
}

/// BLP integrals of `n_pairs` random pairs on one trace, plus the canonical pair.
inline SamplingReport blp_measure_sampled(const DecoherenceTrace& trace, std::size_t n_pairs, std::uint64_t seed,
                                          unsigned workers = 1) {
    if (n_pairs < 1)
        throw ConfigError("blp_measure_sampled: n_pairs must be >= 1");
    SamplingReport report;
    report.seed = seed;
    report.n_pairs = n_pairs;
    report.integrals.assign(n_pairs, 0.0);
    parallel_for(n_pairs, workers, [&](std::size_t i) {
        report.integrals[i] = blp_integral(sample_pair(seed, i), trace).value;
    });
    report.optimal_value = blp_integral(StatePair::canonical(), trace).value;
    return report;
}

inline SamplingReport blp_measure_sampled(const ReservoirModel& model, double tau, std::size_t n_pairs,
                                          std::uint64_t seed, double step = kDefaultStep, unsigned workers = 1) {
    if (n_pairs < 1)
        throw ConfigError("blp_measure_sampled: n_pairs must be >= 1");
    return blp_measure_sampled(sample_trace(model, tau, step), n_pairs, seed, workers);
}

struct JcSpeedup {
    double n_tilde = 0.0;
    double tau_qsl = 0.0;
};

/// Non-Markovianity with D_t := P_t on the damped cavity, and tau / (2 N + 1).
inline JcSpeedup jc_nonmarkov_and_qsl(const JcModel& model, double tau, double step = kDefaultStep) {
    const auto trace = sample_trace(model, tau, step);
    const double n_tilde = blp_integral(StatePair::canonical(), trace).value;
    return {n_tilde, tau / (2.0 * n_tilde + 1.0)};
}

} // namespace pbgqsl
