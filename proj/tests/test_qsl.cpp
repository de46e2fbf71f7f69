// Bures angle, Schatten norms and the speed-limit time

#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "pbgqsl/qsl.hpp"

using namespace pbgqsl;

TEST(BuresAngle, IdenticalStatesGiveZero) {
    const auto psi = QubitDensityMatrix::pure(0.7, 0.2);
    EXPECT_NEAR(bures_angle(psi, psi), 0.0, 1e-7);
}

TEST(BuresAngle, OrthogonalStatesGiveRightAngle) {
    EXPECT_DOUBLE_EQ(bures_angle(QubitDensityMatrix::excited(), QubitDensityMatrix::ground()), std::numbers::pi / 2);
}

TEST(BuresAngle, QuarterFidelity) {
    const QubitDensityMatrix rho(0.25, 0.0);
    EXPECT_NEAR(bures_angle(QubitDensityMatrix::excited(), rho), std::numbers::pi / 3, 1e-15);
}

TEST(BuresAngle, DecreasesWithFidelity) {
    double previous = bures_angle(QubitDensityMatrix::excited(), QubitDensityMatrix(0.0, 0.0));
    for (int k = 1; k <= 100; ++k) {
        const double angle = bures_angle(QubitDensityMatrix::excited(), QubitDensityMatrix(0.01 * k, 0.0));
        EXPECT_LT(angle, previous);
        previous = angle;
    }
}

TEST(BuresAngle, MixedReferenceIsRejected) {
    EXPECT_THROW(bures_angle(QubitDensityMatrix(0.5, 0.0), QubitDensityMatrix::excited()), PreconditionError);
}

TEST(SchattenNorm, Identity) {
    const Matrix2c id = Matrix2c::Identity();
    EXPECT_NEAR(schatten_norm(id, SchattenOrder::one), 2.0, 1e-15);
    EXPECT_NEAR(schatten_norm(id, SchattenOrder::two), std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(schatten_norm(id, SchattenOrder::infinity), 1.0, 1e-15);
}

TEST(SchattenNorm, TracelessDiagonal) {
    Matrix2c m = Matrix2c::Zero();
    m(0, 0) = -0.37;
    m(1, 1) = 0.37;
    EXPECT_NEAR(schatten_norm(m, SchattenOrder::infinity), 0.37, 1e-16);
    EXPECT_NEAR(schatten_norm(m, SchattenOrder::one), 0.74, 1e-16);
    EXPECT_NEAR(schatten_norm(m, SchattenOrder::two), 0.37 * std::sqrt(2.0), 1e-16);
}

TEST(SchattenNorm, RandomMatricesAgainstSvd) {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g;
    for (int k = 0; k < 500; ++k) {
        Matrix2c m;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                m(i, j) = Complex{g(rng), g(rng)};
        // Singular values from the eigenvalues of m^dagger m by the quadratic formula.
        const Matrix2c h = m.adjoint() * m;
        const double tr = h.trace().real();
        const double det = h.determinant().real();
        const double root = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
        const double a1 = std::sqrt(0.5 * tr + root);
        const double a2 = std::sqrt(std::max(0.0, 0.5 * tr - root));
        Eigen::JacobiSVD<Matrix2c> svd(m);
        EXPECT_NEAR(a1, svd.singularValues()[0], 1e-12);
        EXPECT_NEAR(schatten_norm(m, SchattenOrder::infinity), a1, 1e-12);
        EXPECT_NEAR(schatten_norm(m, SchattenOrder::one), a1 + a2, 1e-12);
        EXPECT_NEAR(schatten_norm(m, SchattenOrder::two), std::hypot(a1, a2), 1e-12);
    }
}

TEST(QslTimeGeneral, NormRatiosForTheExcitedState) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> delta(-10.0, 10.0);
    std::uniform_real_distribution<double> tau(0.5, 10.0);
    std::uniform_real_distribution<double> lambda(0.1, 10.0);
    for (int k = 0; k < 20; ++k) {
        const ReservoirModel model = k % 4 == 3 ? ReservoirModel{JcModel{1.0, lambda(rng)}}
                                                : ReservoirModel{PbgModel{delta(rng)}};
        const auto r = qsl_time_general(QubitDensityMatrix::excited(), model, tau(rng));
        EXPECT_NEAR(r.E_p.infinity, r.E_p.one / 2.0, 1e-12 * r.E_p.infinity) << describe(model);
        EXPECT_NEAR(r.E_p.infinity, r.E_p.two / std::sqrt(2.0), 1e-12 * r.E_p.infinity) << describe(model);
        EXPECT_DOUBLE_EQ(r.tau_qsl, r.tau_p.infinity);
    }
}

TEST(QslTimeGeneral, AgreesWithExcitedStateFormula) {
    for (double delta : {-10.0, -1.0, 0.0, 3.0}) {
        const auto trace = sample_trace(PbgModel{delta}, 5.0);
        const auto general = qsl_time_general(QubitDensityMatrix::excited(), trace);
        EXPECT_NEAR(general.tau_qsl, qsl_time_excited(trace), 1e-9) << delta;
    }
}

TEST(QslTimeGeneral, CoherentInitialState) {
    const auto r = qsl_time_general(QubitDensityMatrix::pure(1.0, 0.4), PbgModel{-1.0}, 5.0);
    EXPECT_GT(r.tau_qsl, 0.0);
    EXPECT_GE(r.bures_angle, 0.0);
    EXPECT_LE(r.bures_angle, std::numbers::pi / 2);
    EXPECT_DOUBLE_EQ(r.tau_qsl, std::max({r.tau_p.one, r.tau_p.two, r.tau_p.infinity}));
}

TEST(QslTimeGeneral, FrozenStateIsDegenerate) {
    EXPECT_THROW(qsl_time_general(QubitDensityMatrix::ground(), PbgModel{0.0}, 1.0), DegenerateEvolutionError);
}

TEST(QslTimeGeneral, MixedInitialStateIsRejected) {
    EXPECT_THROW(qsl_time_general(QubitDensityMatrix(0.5, 0.0), PbgModel{0.0}, 1.0), PreconditionError);
}

TEST(QslTimeGeneral, NoSpeedupFarAboveTheEdge) {
    const auto r = qsl_time_general(QubitDensityMatrix::excited(), PbgModel{10.0}, 1.0);
    EXPECT_GE(r.tau_qsl / r.tau, 0.95);
    EXPECT_LE(r.tau_qsl / r.tau, 1.0 + 1e-12);
}

TEST(QslTimeExcited, MonotoneDecayGivesTheDrivingTime) {
    EXPECT_NEAR(qsl_time_excited(PbgModel{10.0}, 1.0), 1.0, 1e-10);
    EXPECT_NEAR(qsl_time_excited(JcModel{1.0, 50.0}, 5.0), 5.0, 1e-9);
}

TEST(QslTimeExcited, SpeedupNearTheEdge) {
    EXPECT_LT(qsl_time_excited(PbgModel{0.0}, 3.0), 3.0 * (1.0 - 1e-4));
}

TEST(QslTimeExcited, StrongSpeedupDeepInsideTheGap) {
    EXPECT_LT(qsl_time_excited(PbgModel{-10.0}, 10.0), 5.0);
}

TEST(QslTimeExcited, NeverExceedsTheDrivingTime) {
    for (double delta = -10.0; delta <= 10.0; delta += 2.5)
        for (double tau : {1.0, 3.0, 10.0})
            EXPECT_LE(qsl_time_excited(PbgModel{delta}, tau), tau * (1.0 + 1e-12)) << delta << " " << tau;
}

TEST(QslTimeExcited, HalvingTheStepChangesLittle) {
    for (double delta : {-10.0, -1.0, 0.0, 1.0, 10.0}) {
        for (double tau : {1.0, 3.0, 5.0, 10.0}) {
            const double coarse = qsl_time_excited(PbgModel{delta}, tau, 1e-3);
            const double fine = qsl_time_excited(PbgModel{delta}, tau, 5e-4);
            EXPECT_LT(std::abs(coarse - fine) / fine, 1e-6) << delta << " " << tau;
        }
    }
}
