// Pole cubic, band-gap and cavity decoherence functions, contour inversion, traces

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "pbgqsl/laplace.hpp"
#include "pbgqsl/oracle/jc_ode.hpp"
#include "pbgqsl/reservoirs.hpp"
#include "pbgqsl/trace.hpp"
#include "pbgqsl/validation.hpp"

using namespace pbgqsl;

namespace {

const Complex kI{0.0, 1.0};

Complex cubic_residual(double delta, Complex s) { return s * s * s - kI * delta * s * s + kI; }

// Roots of s^3 - i delta s^2 + i from the companion matrix.
std::vector<Complex> companion_roots(double delta) {
    Eigen::Matrix3cd c = Eigen::Matrix3cd::Zero();
    c(1, 0) = 1.0;
    c(2, 1) = 1.0;
    c(0, 2) = -kI;
    c(1, 2) = 0.0;
    c(2, 2) = kI * delta;
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(c);
    std::vector<Complex> out;
    for (int k = 0; k < 3; ++k)
        out.push_back(solver.eigenvalues()[k]);
    return out;
}

struct Frozen {
    double delta, t;
    Complex b, b_dot;
};

// Literal three-term closed form evaluated with 40-digit arithmetic; b_dot by
// numerical differentiation at the same precision.
const Frozen kFrozen[] = {
    {-10.0, 1.0, {0.93680011674534382, 0.30660417800346569}, {-0.045238119454565385, 0.29906292859904394}},
    {-10.0, 10.0, {-0.98376014309840935, 0.02634775416470658}, {-0.015234866920071463, -0.31657088546745295}},
    {0.0, 5.0, {0.16361007745355759, -0.66062655267040966}, {0.64836165477350947, 0.20116513630186635}},
    {10.0, 1.0, {0.72223127004406627, 0.0088469681148639143}, {-0.23785085293466003, -0.068709175843053325}},
    {10.0, 10.0, {0.044021481781321041, -0.00347446486512669}, {0.006887903056709867, 0.017053227059749035}},
    {-1.9, 3.0, {-0.25550483673521574, 0.82523625659467384}, {-0.57937901303853069, -0.21040536034536601}},
    {-1.0, 0.1, {0.98351887950212066, 0.016983792864043721}, {-0.24380343621186108, 0.25548822863203169}},
    {5.0, 3.0, {0.251828779241493, 0.012292210374906674}, {-0.19902288336512457, -0.053275504612481102}},
};

} // namespace

TEST(SolveCubic, ZeroDetuningHasRootMinusI) {
    const auto r = solve_cubic(0.0);
    const auto hit = std::count_if(r.x.begin(), r.x.end(), [](Complex x) { return std::abs(x + kI) < 1e-15; });
    EXPECT_EQ(hit, 1);
}

TEST(SolveCubic, VietaRelationsRandom) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(-20.0, 20.0);
    for (int k = 0; k < 1000; ++k) {
        const double delta = dist(rng);
        const auto r = solve_cubic(delta);
        EXPECT_LT(std::abs(r.x1() + r.x2() + r.x3() + kI * delta), 1e-12 * (1.0 + std::abs(delta)));
        EXPECT_LT(std::abs(r.x1() * r.x2() + r.x1() * r.x3() + r.x2() * r.x3()), 1e-12 * (1.0 + delta * delta));
        EXPECT_LT(std::abs(r.x1() * r.x2() * r.x3() - kI), 1e-12);
    }
}

TEST(SolveCubic, MatchesCompanionMatrixAtMinusTen) {
    const auto r = solve_cubic(-10.0);
    auto reference = companion_roots(-10.0);
    for (std::size_t l = 0; l < 3; ++l) {
        const Complex s = -r[l];
        EXPECT_LT(std::abs(cubic_residual(-10.0, s)), 1e-10);
        const auto nearest = std::min_element(reference.begin(), reference.end(), [s](Complex a, Complex b) {
            return std::abs(a - s) < std::abs(b - s);
        });
        EXPECT_LT(std::abs(*nearest - s), 1e-12);
    }
}

TEST(SolveCubic, OrderingIsByRealThenImaginaryPart) {
    for (double delta : {-10.0, -1.9, 0.0, 3.0}) {
        const auto r = solve_cubic(delta);
        for (std::size_t l = 0; l + 1 < 3; ++l) {
            const bool tie = std::abs(r[l].real() - r[l + 1].real()) <= 1e-12 * (1.0 + std::abs(delta));
            if (tie)
                EXPECT_LT(r[l].imag(), r[l + 1].imag());
            else
                EXPECT_LT(r[l].real(), r[l + 1].real());
        }
    }
}

TEST(SolveCubic, RejectsNonFinite) {
    EXPECT_THROW(solve_cubic(std::nan("")), DomainError);
}

TEST(PbgLaplace, LargeRealArgumentBehavesAsOneOverS) {
    for (double s : {1e4, 1e6, 1e8})
        EXPECT_NEAR(std::abs(pbg_bt_laplace(-3.0, s) * s), 1.0, 2.0 / std::pow(s, 1.5));
}

TEST(PbgLaplace, ExtendedPrecisionValue) {
    const Complex v = pbg_bt_laplace(-10.0, 1.0);
    EXPECT_NEAR(v.real(), 0.89812188429532247513, 1e-15);
    EXPECT_NEAR(v.imag(), 0.27857637303019122256, 1e-15);
}

TEST(PbgLaplace, SquaredPoleConditionIsTheCubic) {
    // ((i)^{3/2})^2 = i^3 = -i, so s^2 (s - i delta) = -i is s^3 - i delta s^2 + i = 0.
    const Complex prefactor = std::polar(1.0, 0.75 * std::numbers::pi);
    EXPECT_LT(std::abs(prefactor * prefactor + kI), 1e-15);
    for (double delta : {-10.0, -1.0, 0.0, 2.5}) {
        const auto r = solve_cubic(delta);
        for (std::size_t l = 0; l < 3; ++l) {
            const Complex s = -r[l];
            EXPECT_LT(std::abs(s * s * (s - kI * delta) - prefactor * prefactor), 1e-12);
        }
    }
}

TEST(PbgLaplace, PoleAndBranchPointAreSingular) {
    const double delta = -10.0;
    const PbgAmplitude amp(delta);
    int physical = 0;
    for (std::size_t l = 0; l < 3; ++l) {
        if (!amp.is_physical_pole(l))
            continue;
        ++physical;
        EXPECT_THROW(pbg_bt_laplace(delta, -amp.roots()[l]), SingularityError);
    }
    EXPECT_GE(physical, 1);
    EXPECT_THROW(pbg_bt_laplace(delta, Complex{0.0, delta}), SingularityError);
}

TEST(PbgBt, InitialValueIsOne) {
    for (double delta : {-10.0, -1.0, 0.0, 4.0})
        EXPECT_EQ(pbg_bt(delta, 0.0), Complex(1.0, 0.0));
}

TEST(PbgBt, FrozenExtendedPrecisionValues) {
    for (const auto& f : kFrozen) {
        const auto v = PbgAmplitude(f.delta).evaluate(f.t);
        EXPECT_LT(std::abs(v.b - f.b), 1e-12) << f.delta << " " << f.t;
        EXPECT_LT(std::abs(v.b_dot - f.b_dot), 1e-11) << f.delta << " " << f.t;
    }
}

TEST(PbgBt, AgreesWithContourInversion) {
    for (double delta : {-10.0, 0.0}) {
        for (double t : {1.0, 5.0}) {
            auto transform = [delta](Complex s) { return pbg_bt_laplace(delta, s); };
            const auto inv = inverse_laplace_numeric(transform, t, 1e-10, pbg_contour_bounds(delta));
            EXPECT_LT(std::abs(inv.value - pbg_bt(delta, t)), 1e-6);
            EXPECT_LE(inv.error_estimate, 1e-10);
        }
    }
}

TEST(PbgBt, WrongBranchIsDetected) {
    const double delta = 0.0;
    const double t = 5.0;
    auto transform = [delta](Complex s) { return pbg_bt_laplace(delta, s); };
    const auto inv = inverse_laplace_numeric(transform, t, 1e-10, pbg_contour_bounds(delta));
    EXPECT_GT(std::abs(inv.value - PbgAmplitude(delta, BranchSign::flipped).value(t)), 1e-3);
}

TEST(PbgBt, PopulationTrappedInsideTheGap) {
    const double inside = std::norm(pbg_bt(-10.0, 50.0));
    const double outside = std::norm(pbg_bt(10.0, 50.0));
    EXPECT_GT(inside, 0.9);
    EXPECT_GT(inside, outside);
    EXPECT_NEAR(std::norm(pbg_bt(-10.0, 60.0)), inside, 0.05);
}

TEST(PbgBt, NegativeTimeIsDomainError) {
    EXPECT_THROW(pbg_bt(0.0, -1.0), DomainError);
    EXPECT_THROW(jc_bt(JcModel{}, -1.0), DomainError);
}

TEST(PbgBt, CoincidentRootsAreReported) {
    const double critical = -std::cbrt(27.0 / 4.0);
    try {
        PbgAmplitude amp(critical);
        FAIL() << "expected DegeneracyError";
    } catch (const DegeneracyError& e) {
        EXPECT_DOUBLE_EQ(e.delta(), critical);
    }
    EXPECT_NO_THROW(PbgAmplitude(-1.9));
}

TEST(PbgBt, ContractiveOnSampledGrids) {
    for (double delta : {-10.0, -2.0, -1.0, 0.0, 1.0, 10.0}) {
        const auto trace = sample_trace(PbgModel{delta}, 10.0, 0.01);
        for (double p : trace.P)
            EXPECT_LE(p, 1.0 + 1e-12);
    }
}

TEST(BtDerivative, MatchesRichardsonFiniteDifference) {
    for (const ReservoirModel model : {ReservoirModel{PbgModel{-10.0}}, ReservoirModel{PbgModel{2.0}},
                                       ReservoirModel{JcModel{1.0, 0.2}}}) {
        const DecoherenceFunction f(model);
        for (double t : {0.5, 1.0, 3.0}) {
            auto central = [&](double h) { return (f.value(t + h) - f.value(t - h)) / (2.0 * h); };
            const double h = 1e-3;
            const Complex richardson = (4.0 * central(0.5 * h) - central(h)) / 3.0;
            const Complex analytic = bt_derivative(model, t);
            EXPECT_LT(std::abs(analytic - richardson), 1e-7 * std::max(1.0, std::abs(analytic))) << describe(model) << t;
        }
    }
}

TEST(BtDerivative, PopulationRateIdentity) {
    const DecoherenceFunction f(PbgModel{-1.0});
    for (double t : {0.3, 1.7, 4.2}) {
        const auto v = f.evaluate(t);
        const double h = 1e-4;
        const double fd = (std::norm(f.value(t + h)) - std::norm(f.value(t - h))) / (2.0 * h);
        EXPECT_NEAR(v.population_rate(), fd, 1e-7);
    }
}

TEST(BtDerivative, RejectsNonPositiveTime) {
    EXPECT_THROW(bt_derivative(PbgModel{0.0}, 0.0), DomainError);
    EXPECT_THROW(bt_derivative(JcModel{}, -1.0), DomainError);
}

TEST(BtDerivative, CavityStartsFlat) {
    EXPECT_LT(std::abs(bt_derivative(JcModel{1.0, 5.0}, 1e-9)), 1e-8);
}

TEST(InverseLaplace, StepFunction) {
    const auto r = inverse_laplace_numeric([](Complex s) { return 1.0 / s; }, 3.0, 1e-10);
    EXPECT_NEAR(r.value.real(), 1.0, 1e-9);
    EXPECT_NEAR(r.value.imag(), 0.0, 1e-9);
}

TEST(InverseLaplace, Exponential) {
    const auto r = inverse_laplace_numeric([](Complex s) { return 1.0 / (s + 1.0); }, 2.0, 1e-10);
    EXPECT_NEAR(r.value.real(), std::exp(-2.0), 1e-9);
}

TEST(InverseLaplace, UnreachableTargetReportsBestEstimate) {
    try {
        inverse_laplace_numeric([](Complex s) { return 1.0 / (s + 1.0); }, 2.0, 1e-300);
        FAIL() << "expected PrecisionError";
    } catch (const PrecisionError& e) {
        EXPECT_NEAR(e.best_estimate().real(), std::exp(-2.0), 1e-9);
        EXPECT_GE(e.error_estimate(), 0.0);
    }
}

TEST(InverseLaplace, RejectsBadArguments) {
    auto f = [](Complex s) { return 1.0 / s; };
    EXPECT_THROW(inverse_laplace_numeric(f, 0.0, 1e-8), DomainError);
    EXPECT_THROW(inverse_laplace_numeric(f, 1.0, 0.0), DomainError);
}

TEST(JcBt, InitialValueIsOne) {
    EXPECT_EQ(jc_bt(JcModel{1.0, 0.2}, 0.0), Complex(1.0, 0.0));
}

TEST(JcBt, MatchesOdeOracleInThreeRegimes) {
    std::vector<double> times;
    for (int k = 0; k <= 2000; ++k)
        times.push_back(0.01 * k);
    for (const JcModel model : {JcModel{1.0, 5.0}, JcModel{1.0, 0.2}, JcModel{1.0, 2.0}}) {
        const auto ref = oracle::jc_ode_solution(model, times);
        for (std::size_t k = 0; k < times.size(); ++k) {
            const auto v = JcAmplitude(model).evaluate(times[k]);
            ASSERT_LT(std::abs(v.b - ref[k].b), 1e-8) << model.lambda << " " << times[k];
            ASSERT_LT(std::abs(v.b_dot - ref[k].b_dot), 1e-8) << model.lambda << " " << times[k];
        }
    }
}

TEST(JcBt, CriticalPointIsContinuous) {
    const JcModel critical{1.0, 2.0};
    for (double t : {0.5, 2.0, 7.0}) {
        const double left = jc_bt(JcModel{1.0, 2.0 - 1e-7}, t).real();
        const double right = jc_bt(JcModel{1.0, 2.0 + 1e-7}, t).real();
        const double mid = jc_bt(critical, t).real();
        EXPECT_NEAR(mid, 0.5 * (left + right), 1e-9);
        EXPECT_NEAR(mid, std::exp(-t) * (1.0 + t), 1e-14);
    }
}

TEST(JcBt, MarkovianLimit) {
    const JcModel model{1.0, 50.0};
    for (int k = 0; k <= 500; ++k) {
        const double t = 0.01 * k;
        EXPECT_LT(std::abs(jc_bt(model, t) - std::exp(-0.5 * t)), 0.02);
    }
}

TEST(JcBt, FirstNodeOfTheRevivalRegime) {
    const JcModel model{1.0, 0.2};
    // Bisect the ODE solution for its first sign change.
    double lo = 1.0;
    double hi = 10.0;
    auto ode_b = [&](double t) { return oracle::jc_ode_solution(model, {t}).front().b.real(); };
    ASSERT_GT(ode_b(lo), 0.0);
    ASSERT_LT(ode_b(hi), 0.0);
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (ode_b(mid) > 0.0 ? lo : hi) = mid;
    }
    const double node = 0.5 * (lo + hi);
    EXPECT_NEAR(node, (std::numbers::pi - std::atan(3.0)) / 0.3, 1e-9);
    EXPECT_LT(std::norm(jc_bt(model, node)), 1e-20);
    const DecoherenceFunction f(model);
    EXPECT_LT(f.evaluate(node - 1e-3).population_rate(), 0.0);
    EXPECT_GT(f.evaluate(node + 1e-3).population_rate(), 0.0);

    const auto trace = sample_trace(model, 10.0);
    ASSERT_FALSE(trace.turning_points.empty());
    EXPECT_NEAR(trace.turning_points.front(), node, 1e-8);
}

TEST(JcBt, RejectsNonPositiveParameters) {
    EXPECT_THROW(JcAmplitude(JcModel{0.0, 1.0}), DomainError);
    EXPECT_THROW(JcAmplitude(JcModel{1.0, -1.0}), DomainError);
}

TEST(SampleTrace, MonotoneDecayFarAboveTheEdge) {
    const auto trace = sample_trace(PbgModel{10.0}, 1.0);
    EXPECT_TRUE(trace.turning_points.empty());
    for (std::size_t k = 1; k < trace.size(); ++k)
        EXPECT_LT(trace.dPdt[k], 0.0) << trace.grid[k];
}

TEST(SampleTrace, InvariantsHold) {
    const auto trace = sample_trace(PbgModel{-10.0}, 10.0);
    EXPECT_EQ(trace.P.front(), 1.0);
    EXPECT_EQ(trace.grid.front(), 0.0);
    EXPECT_EQ(trace.grid.back(), 10.0);
    for (std::size_t k = 1; k < trace.size(); ++k)
        EXPECT_GT(trace.grid[k], trace.grid[k - 1]);
    for (double p : trace.P) {
        EXPECT_GE(p, 0.0);
        EXPECT_LE(p, 1.0 + 1e-12);
    }
}

TEST(SampleTrace, EverySignChangeOfAFinerGridIsBracketed) {
    for (const ReservoirModel model : {ReservoirModel{PbgModel{-1.0}}, ReservoirModel{PbgModel{-10.0}},
                                       ReservoirModel{JcModel{1.0, 0.2}}}) {
        const double tau = 20.0;
        const double step = 1e-2;
        const auto trace = sample_trace(model, tau, step);
        const DecoherenceFunction f(model);
        std::vector<double> fine_changes;
        double previous = f.evaluate(step / 10.0).population_rate();
        for (int k = 2; k <= 20000; ++k) {
            const double t = k * step / 10.0;
            const double rate = f.evaluate(t).population_rate();
            if ((rate > 0.0) != (previous > 0.0))
                fine_changes.push_back(t);
            previous = rate;
        }
        ASSERT_EQ(fine_changes.size(), trace.turning_points.size()) << describe(model);
        for (std::size_t k = 0; k < fine_changes.size(); ++k) {
            const double tp = trace.turning_points[k];
            EXPECT_NEAR(tp, fine_changes[k], step / 10.0);
            // The two ends of the final bisection bracket are grid nodes.
            const auto above = std::upper_bound(trace.grid.begin(), trace.grid.end(), tp);
            ASSERT_TRUE(above != trace.grid.begin() && above != trace.grid.end());
            EXPECT_LE(*above - *(above - 1), 2e-9);
        }
    }
}

TEST(SampleTrace, ConfigurationErrors) {
    EXPECT_THROW(sample_trace(PbgModel{0.0}, 1.0, 1.0), ConfigError);
    EXPECT_THROW(sample_trace(PbgModel{0.0}, 1.0, 2.0), ConfigError);
    EXPECT_THROW(sample_trace(PbgModel{0.0}, 0.0, 0.1), ConfigError);
    EXPECT_THROW(sample_trace(PbgModel{0.0}, 1.0, -0.1), ConfigError);
}

TEST(PhysicalBeta, OrderOfAGigahertz) {
    const double beta = physical_beta(2.9e15, 4e-30);
    EXPECT_GT(beta, 1e8);
    EXPECT_LT(beta, 1e10);
}

TEST(PhysicalBeta, DipoleScaling) {
    const double ratio = physical_beta(2.9e15, 8e-30) / physical_beta(2.9e15, 4e-30);
    EXPECT_NEAR(ratio, std::pow(2.0, 4.0 / 3.0), 1e-12);
}

TEST(PhysicalBeta, NaturalUnits) {
    EXPECT_NEAR(physical_beta(1.0, 1.0, 1.0), 1.0, 1e-15);
}

TEST(PhysicalBeta, RejectsNonPositiveInput) {
    EXPECT_THROW(physical_beta(0.0, 1.0), DomainError);
    EXPECT_THROW(physical_beta(1.0, -1.0), DomainError);
}
