// validation.hpp: Oracle suites behind the `validate` command

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pbgqsl/laplace.hpp"
#include "pbgqsl/nonmarkov.hpp"
#include "pbgqsl/oracle/erf_oracle.hpp"
#include "pbgqsl/oracle/jc_ode.hpp"
#include "pbgqsl/qsl.hpp"
#include "pbgqsl/reservoirs.hpp"
#include "pbgqsl/specfun.hpp"
#include "pbgqsl/sweep.hpp"

namespace pbgqsl {

struct SuiteResult {
    std::string name;
    bool passed = false;
    double worst = 0.0;      // largest observed deviation
    double tolerance = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<SuiteResult> suites;

    bool all_passed() const {
        return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
    }
    const SuiteResult* first_failure() const {
        for (const auto& s : suites)
            if (!s.passed)
                return &s;
        return nullptr;
    }
};

/// Closed-form b_t under test; swapped out by the mutation test.
using ClosedForm = std::function<Complex(double delta, double t)>;

struct ValidationOptions {
    std::size_t specfun_points = 2000;
    std::uint64_t seed = 42;
    ClosedForm closed_form = [](double delta, double t) { return pbg_bt(delta, t); };
};

namespace validation_detail {

inline std::string describe_point(const char* label, double a, double b) {
    std::ostringstream os;
    os << label << " (" << a << ", " << b << ")";
    return os.str();
}

inline std::vector<double> log_spaced(double lo, double hi, int count) {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k)
        out[static_cast<std::size_t>(k)] = lo * std::pow(hi / lo, static_cast<double>(k) / (count - 1));
    out.back() = hi;
    return out;
}

} // namespace validation_detail

/// Singularities of the band-gap transform lie within |s| <= 1 + max(|delta|, 1)
/// (Cauchy bound of the pole cubic) and on the cut from i delta leftwards.
inline ContourBounds pbg_contour_bounds(double delta) {
    const double radius = 1.0 + std::max(std::abs(delta), 1.0);
    return {0.0, -radius, radius};
}

/// erf and w against the extended-precision oracle at random points with |z| <= 30,
/// plus the reflection and conjugation symmetries.
inline SuiteResult check_specfun(std::size_t points, std::uint64_t seed) {
    SuiteResult out{"specfun", true, 0.0, 1e-10, {}};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t compared = 0;
    for (std::size_t k = 0; k < points; ++k) {
        const Complex z = std::polar(30.0 * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
        const auto ref_w = oracle::faddeeva_reference(z);
        const auto ref_erf = oracle::erf_reference(z);
        auto compare = [&](const oracle::OracleValue& ref, auto&& eval, const char* what) {
            if (ref.overflow) {
                try {
                    (void)eval(z);
                    out.passed = false;
                    out.detail = std::string(what) + " returned a value beyond the double range";
                } catch (const RangeError&) {
                }
                return;
            }
            const double err = std::abs(eval(z) - ref.value) / std::abs(ref.value);
            ++compared;
            if (err > out.worst) {
                out.worst = err;
                if (err > out.tolerance) {
                    out.passed = false;
                    out.detail = validation_detail::describe_point(what, z.real(), z.imag());
                }
            }
        };
        compare(ref_w, [](Complex x) { return faddeeva(x); }, "w");
        compare(ref_erf, [](Complex x) { return erf_complex(x); }, "erf");
        if (!ref_erf.overflow) {
            const Complex e = erf_complex(z);
            const double odd = std::abs(erf_complex(-z) + e) / std::abs(e);
            const double conj = std::abs(erf_complex(std::conj(z)) - std::conj(e)) / std::abs(e);
            if (std::max(odd, conj) > 1e-12) {
                out.passed = false;
                out.detail = validation_detail::describe_point("erf symmetry broken at", z.real(), z.imag());
            }
        }
    }
    if (out.passed)
        out.detail = std::to_string(compared) + " finite reference values";
    return out;
}

/// Closed form against numerical inversion of the transform: 21 log-spaced
/// t in [0.1, 10] for each delta in {-10, -5, -1, 0, 1, 5, 10}.
inline SuiteResult check_laplace(const ClosedForm& closed_form) {
    SuiteResult out{"laplace", true, 0.0, 1e-6, {}};
    for (double delta : {-10.0, -5.0, -1.0, 0.0, 1.0, 5.0, 10.0}) {
        for (double t : validation_detail::log_spaced(0.1, 10.0, 21)) {
            const auto transform = [delta](Complex s) { return pbg_bt_laplace(delta, s); };
            double err = 0.0;
            try {
                const auto inverted = inverse_laplace_numeric(transform, t, 1e-9, pbg_contour_bounds(delta));
                err = std::abs(closed_form(delta, t) - inverted.value);
            } catch (const Error&) {
                out.passed = false;
                out.detail = validation_detail::describe_point("inversion failed at (delta, t) =", delta, t);
                return out;
            }
            if (err > out.worst) {
                out.worst = err;
                if (err > out.tolerance) {
                    out.passed = false;
                    out.detail = validation_detail::describe_point("mismatch at (delta, t) =", delta, t);
                }
            }
        }
    }
    if (out.passed)
        out.detail = "147 points";
    return out;
}

/// Damped-cavity closed form against the ODE on t in [0, 20] for an
/// underdamped, an overdamped and the critical regime.
inline SuiteResult check_jc_ode() {
    SuiteResult out{"jc-ode", true, 0.0, 1e-8, {}};
    std::vector<double> times;
    for (int k = 0; k <= 400; ++k)
        times.push_back(0.05 * k);
    for (const JcModel model : {JcModel{1.0, 5.0}, JcModel{1.0, 0.2}, JcModel{1.0, 2.0}}) {
        const auto reference = oracle::jc_ode_solution(model, times);
        const JcAmplitude amplitude(model);
        for (std::size_t k = 0; k < times.size(); ++k) {
            const double err = std::abs(amplitude.value(times[k]) - reference[k].b);
            if (err > out.worst) {
                out.worst = err;
                if (err > out.tolerance) {
                    out.passed = false;
                    out.detail = validation_detail::describe_point("mismatch at (lambda, t) =", model.lambda, times[k]);
                }
            }
        }
    }
    if (out.passed)
        out.detail = "lambda in {5, 0.2, 2}, 401 times each";
    return out;
}

namespace validation_detail {

inline std::vector<SweepRow> integer_grid_rows() {
    SweepConfig config;
    config.delta_min = -10.0;
    config.delta_max = 10.0;
    config.delta_steps = 21;
    config.workers = 1;
    return run_sweep(config);
}

// Rows that failed before the identity could be evaluated.
inline bool row_failed(const SweepRow& row) { return row.flagged && !std::isfinite(row.identity_residual); }

template <class Metric>
SuiteResult grid_suite(const char* name, double tolerance, const std::vector<SweepRow>& rows, const Metric& metric) {
    SuiteResult out{name, true, 0.0, tolerance, {}};
    for (const auto& row : rows) {
        const double err = row_failed(row) ? std::nan("") : metric(row);
        if (!(err < tolerance)) {
            out.passed = false;
            out.detail = describe_point(row_failed(row) ? row.error.c_str() : "deviation at (delta, tau) =",
                                        row.delta, row.tau);
            if (!std::isfinite(err))
                return out;
        }
        out.worst = std::max(out.worst, err);
    }
    if (out.passed)
        out.detail = std::to_string(rows.size()) + " grid points";
    return out;
}

} // namespace validation_detail

/// Rising-interval sum against the closed form of the non-Markovianity.
inline SuiteResult check_nonmarkov_closed(const std::vector<SweepRow>& rows) {
    return validation_detail::grid_suite("nonmarkov-closed-form", 1e-8, rows,
                                         [](const SweepRow& r) { return std::abs(r.n_value - r.n_closed); });
}

/// tau / (2N/(1-P_tau) + 1) against the population-rate form of the QSL time.
inline SuiteResult check_qsl_identity(const std::vector<SweepRow>& rows) {
    return validation_detail::grid_suite("qsl-identity", kIdentityTolerance, rows,
                                         [](const SweepRow& r) { return r.identity_residual; });
}

/// Vieta relations of the pole cubic at random detunings.
inline SuiteResult check_cubic(std::uint64_t seed) {
    SuiteResult out{"cubic-vieta", true, 0.0, 1e-12, {}};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-20.0, 20.0);
    for (int k = 0; k < 1000; ++k) {
        const double delta = dist(rng);
        const auto r = solve_cubic(delta);
        const Complex sum = r.x1() + r.x2() + r.x3();
        const Complex pairs = r.x1() * r.x2() + r.x1() * r.x3() + r.x2() * r.x3();
        const Complex product = r.x1() * r.x2() * r.x3();
        const double scale = 1.0 + std::abs(delta);
        const double err = std::max({std::abs(sum - Complex{0.0, -delta}) / scale, std::abs(pairs) / (scale * scale),
                                     std::abs(product - Complex{0.0, 1.0})});
        if (err > out.worst) {
            out.worst = err;
            if (err > out.tolerance) {
                out.passed = false;
                out.detail = validation_detail::describe_point("residual at delta =", delta, err);
            }
        }
    }
    if (out.passed)
        out.detail = "1000 detunings in [-20, 20]";
    return out;
}

/// Runs every suite; order is fixed so reports are comparable.
inline ValidationReport run_validation(const ValidationOptions& options = {}) {
    ValidationReport report;
    report.suites.push_back(check_specfun(options.specfun_points, options.seed));
    report.suites.push_back(check_cubic(options.seed));
    report.suites.push_back(check_laplace(options.closed_form));
    report.suites.push_back(check_jc_ode());
    const auto rows = validation_detail::integer_grid_rows();
    report.suites.push_back(check_nonmarkov_closed(rows));
    report.suites.push_back(check_qsl_identity(rows));
    return report;
}

} // namespace pbgqsl
