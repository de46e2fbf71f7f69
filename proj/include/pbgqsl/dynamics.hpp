// dynamics.hpp: Qubit states, the amplitude-damping map and its time-local generator

#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "pbgqsl/errors.hpp"

namespace pbgqsl {

using Complex = std::complex<double>;

/// 2x2 matrices are indexed by level label: (0,0) is ground, (1,1) excited.
using Matrix2c = Eigen::Matrix2cd;

/// Qubit density matrix stored as the excited population rho11 and the
/// coherence rho10 = <1|rho|0>; rho00 = 1 - rho11 and rho01 = conj(rho10).
class QubitDensityMatrix {
public:
    static constexpr double kTolerance = 1e-12;

    QubitDensityMatrix() = default;
    QubitDensityMatrix(double rho11, Complex rho10) : rho11_(rho11), rho10_(rho10) {
        if (!std::isfinite(rho11) || !std::isfinite(rho10.real()) || !std::isfinite(rho10.imag()))
            throw DomainError("QubitDensityMatrix: non-finite entries");
        if (rho11 < -kTolerance || rho11 > 1.0 + kTolerance)
            throw DomainError("QubitDensityMatrix: rho11 outside [0, 1]");
        if (std::norm(rho10) > rho11 * (1.0 - rho11) + kTolerance)
            throw DomainError("QubitDensityMatrix: coherence violates positivity");
    }

    static QubitDensityMatrix excited() { return {1.0, Complex{0.0, 0.0}}; }
    static QubitDensityMatrix ground() { return {0.0, Complex{0.0, 0.0}}; }

    /// Pure state cos(theta/2)|1> + e^{i phi} sin(theta/2)|0>.
    static QubitDensityMatrix pure(double theta, double phi) {
        const double c = std::cos(0.5 * theta);
        const double s = std::sin(0.5 * theta);
        return {c * c, c * s * std::polar(1.0, -phi)};
    }

    /// rho = (I + r . sigma)/2 with the excited level at Bloch z = +1.
    static QubitDensityMatrix from_bloch(double x, double y, double z) {
        return {0.5 * (1.0 + z), Complex{0.5 * x, -0.5 * y}};
    }

    double rho11() const { return rho11_; }
    double rho00() const { return 1.0 - rho11_; }
    Complex rho10() const { return rho10_; }
    Complex rho01() const { return std::conj(rho10_); }

    bool is_pure(double tol = kTolerance) const {
        return std::abs(std::norm(rho10_) - rho11_ * (1.0 - rho11_)) <= tol;
    }

    Matrix2c matrix() const {
        Matrix2c m;
        m(0, 0) = rho00();
        m(0, 1) = rho01();
        m(1, 0) = rho10_;
        m(1, 1) = rho11_;
        return m;
    }

    double trace() const { return matrix().trace().real(); }

private:
    double rho11_ = 1.0;
    Complex rho10_{0.0, 0.0};
};

/// Lamb shift epsilon_t = Im(b_dot/b) and rate gamma_t = Re(b_dot/b), as printed
/// in the generator; gamma_t < 0 while the population decays.
struct GeneratorRates {
    double epsilon = 0.0;
    double gamma = 0.0;
};

inline Matrix2c sigma_plus() {
    Matrix2c m = Matrix2c::Zero();
    m(1, 0) = 1.0;
    return m;
}

inline Matrix2c sigma_minus() {
    Matrix2c m = Matrix2c::Zero();
    m(0, 1) = 1.0;
    return m;
}

/// Lambda_t: rho11 -> rho11 |b|^2, rho10 -> rho10 b.
inline QubitDensityMatrix apply_map(const QubitDensityMatrix& rho0, Complex b) {
    const double mag2 = std::norm(b);
    if (mag2 > 1.0 + 1e-12)
        throw ContractivityError("apply_map: |b| > 1");
    return {rho0.rho11() * std::min(mag2, 1.0), rho0.rho10() * b};
}

/// |b| below this is treated as a node of b_t where the rates are undefined.
inline constexpr double kSingularAmplitude = 1e-12;

inline GeneratorRates rates_from_b(Complex b, Complex b_dot) {
    if (std::abs(b) <= kSingularAmplitude)
        throw SingularRateError("rates_from_b: b_t vanishes");
    const Complex q = b_dot / b;
    return {q.imag(), q.real()};
}

/// L rho = i eps [s+ s-, rho] + gamma (s+ s- rho + rho s+ s- - 2 s- rho s+).
inline Matrix2c generator_action(const QubitDensityMatrix& rho, const GeneratorRates& rates) {
    if (!std::isfinite(rates.epsilon) || !std::isfinite(rates.gamma))
        throw DomainError("generator_action: non-finite rates");
    const Matrix2c sp = sigma_plus();
    const Matrix2c sm = sigma_minus();
    const Matrix2c n = sp * sm;
    const Matrix2c r = rho.matrix();
    const Complex i{0.0, 1.0};
    return i * rates.epsilon * (n * r - r * n) + rates.gamma * (n * r + r * n - 2.0 * sm * r * sp);
}

/// d/dt of Lambda_t rho0 from b and b_dot; well-defined at nodes of b.
inline Matrix2c mapped_state_derivative(const QubitDensityMatrix& rho0, Complex b, Complex b_dot) {
    const double rate = 2.0 * (b_dot * std::conj(b)).real();
    Matrix2c m;
    m(1, 1) = rho0.rho11() * rate;
    m(0, 0) = -m(1, 1);
    m(1, 0) = rho0.rho10() * b_dot;
    m(0, 1) = std::conj(m(1, 0));
    return m;
}

} // namespace pbgqsl
