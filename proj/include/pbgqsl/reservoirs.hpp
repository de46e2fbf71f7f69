// reservoirs.hpp: Decoherence functions b_t for the band-gap and damped-cavity reservoirs

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <variant>

#include "pbgqsl/cubic.hpp"
#include "pbgqsl/errors.hpp"
#include "pbgqsl/specfun.hpp"

namespace pbgqsl {

/// Atom near the upper band edge of an isotropic photonic crystal.
/// delta = omega0 - omega_c in units of beta; time in units of 1/beta.
struct PbgModel {
    double delta = 0.0;
};

/// Atom resonantly coupled to a leaky cavity with Lorentzian spectral density.
struct JcModel {
    double gamma0 = 1.0;  // Markovian decay scale
    double lambda = 1.0;  // spectral width
};

using ReservoirModel = std::variant<PbgModel, JcModel>;

/// b_t together with its time derivative.
struct BtValue {
    Complex b;
    Complex b_dot;

    double population() const { return std::norm(b); }
    /// d|b|^2/dt = 2 Re(b_dot conj(b))
    double population_rate() const { return 2.0 * (b_dot * std::conj(b)).real(); }
};

inline std::string describe(const ReservoirModel& model) {
    if (const auto* pbg = std::get_if<PbgModel>(&model))
        return "pbg(delta=" + std::to_string(pbg->delta) + ")";
    const auto& jc = std::get<JcModel>(model);
    return "jc(gamma0=" + std::to_string(jc.gamma0) + ",lambda=" + std::to_string(jc.lambda) + ")";
}

namespace reservoir_detail {

// (i beta)^{3/2} on the principal branch, beta = 1.
inline const Complex kIPow32 = std::polar(1.0, 0.75 * std::numbers::pi);

inline void require_time(double t, const char* who) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw DomainError(std::string(who) + ": t must be finite and >= 0");
}

} // namespace reservoir_detail

/// Laplace transform of the band-edge decoherence function,
/// [s - (i beta)^{3/2} / sqrt(s - i delta)]^{-1}, principal branches.
inline Complex pbg_bt_laplace(double delta, Complex s) {
    using reservoir_detail::kIPow32;
    const Complex shifted = s - Complex{0.0, delta};
    if (shifted == Complex{0.0, 0.0})
        throw SingularityError("pbg_bt_laplace: branch point s = i delta");
    const Complex tail = kIPow32 / std::sqrt(shifted);
    const Complex denom = s - tail;
    if (std::abs(denom) <= 1e-14 * (std::abs(s) + std::abs(tail)))
        throw SingularityError("pbg_bt_laplace: s is a pole of the transform");
    return 1.0 / denom;
}

/// Sign of the (i beta)^{3/2} prefactor in the closed form. Only `principal`
/// is physical; `flipped` exists so validation can prove it detects a wrong branch.
enum class BranchSign { principal = 1, flipped = -1 };

/// Closed-form band-edge decoherence function.
///
/// With s_l = -x_l the roots of s^3 - i delta s^2 + i and A_l = s_l (s_l - i delta),
/// B_l = (i)^{3/2} sqrt(s_l - i delta), z_l = sqrt(t (s_l - i delta)):
///
///   b_t = sum_l e^{s_l t} [A_l + B_l erf(z_l)] / p'(s_l),  p'(s_l) = prod_{m!=l} (s_l - s_m)
///
/// Each summand is rewritten as e^{s_l t}(A_l + B_l) - B_l e^{i delta t} w(i z_l),
/// using e^{s t} erfc(z) = e^{i delta t} w(iz). A_l + B_l factors as
/// sqrt(s_l - i delta) [s_l sqrt(s_l - i delta) + (i)^{3/2}], which is exactly
/// 2 B_l for a pole of the transform and 0 for a root on the other sheet, so the
/// exponentially growing pieces of non-physical roots never enter the sum.
/// The derivative is b_dot = sum_l s_l * summand_l; the erf' contributions
/// cancel because sum_l (s_l - i delta) / p'(s_l) = 0.
class PbgAmplitude {
public:
    explicit PbgAmplitude(double delta, BranchSign sign = BranchSign::principal)
        : delta_(delta), roots_(solve_cubic(delta)) {
        using reservoir_detail::kIPow32;
        const double prefactor_sign = static_cast<double>(static_cast<int>(sign));
        for (std::size_t l = 0; l < 3; ++l)
            s_[l] = -roots_.x[l];

        const double scale = 1.0 + std::abs(delta);
        for (std::size_t l = 0; l < 3; ++l) {
            Complex dp{1.0, 0.0};
            for (std::size_t m = 0; m < 3; ++m) {
                if (m == l)
                    continue;
                const Complex gap = s_[l] - s_[m];
                if (std::abs(gap) < 1e-6 * scale)
                    throw DegeneracyError("pbg_bt: coincident cubic roots at delta = " + std::to_string(delta), delta);
                dp *= gap;
            }
            root_shift_[l] = std::sqrt(s_[l] - Complex{0.0, delta_});
            prefactor_[l] = prefactor_sign * kIPow32 * root_shift_[l] / dp;
            // s sqrt(s - i delta) equals +prefactor phase on the physical sheet, - on the other.
            const Complex ratio = s_[l] * root_shift_[l] / (prefactor_sign * kIPow32);
            physical_[l] = std::abs(ratio - 1.0) < std::abs(ratio + 1.0);
        }
    }

    double delta() const { return delta_; }
    const CubicRoots& roots() const { return roots_; }
    bool is_physical_pole(std::size_t l) const { return physical_[l]; }

    Complex value(double t) const { return evaluate(t).b; }

    BtValue evaluate(double t) const {
        reservoir_detail::require_time(t, "pbg_bt");
        if (t == 0.0)
            return {Complex{1.0, 0.0}, Complex{0.0, 0.0}};
        const double sqrt_t = std::sqrt(t);
        const Complex carrier = std::polar(1.0, delta_ * t);
        BtValue out{Complex{0.0, 0.0}, Complex{0.0, 0.0}};
        for (std::size_t l = 0; l < 3; ++l) {
            const Complex z = sqrt_t * root_shift_[l];
            const Complex w = specfun_detail::faddeeva_upper(Complex{-z.imag(), z.real()});
            Complex term = -prefactor_[l] * carrier * w;
            if (physical_[l])
                term += 2.0 * prefactor_[l] * std::exp(s_[l] * t);
            out.b += term;
            out.b_dot += s_[l] * term;
        }
        return out;
    }

private:
    double delta_;
    CubicRoots roots_;
    std::array<Complex, 3> s_{};
    std::array<Complex, 3> root_shift_{};
    std::array<Complex, 3> prefactor_{};  // B_l / p'(s_l)
    std::array<bool, 3> physical_{};
};

/// Damped Jaynes-Cummings decoherence function
/// b_t = e^{-lambda t/2} [cosh(Omega t/2) + (lambda/Omega) sinh(Omega t/2)],
/// Omega = sqrt(lambda^2 - 2 gamma0 lambda). Real for every parameter set;
/// the critical point Omega = 0 is the continuous limit.
class JcAmplitude {
public:
    explicit JcAmplitude(JcModel model) : model_(model) {
        if (!(model.gamma0 > 0.0) || !(model.lambda > 0.0) || !std::isfinite(model.gamma0) ||
            !std::isfinite(model.lambda))
            throw DomainError("jc_bt: gamma0 and lambda must be positive and finite");
        omega_sq_ = model.lambda * model.lambda - 2.0 * model.gamma0 * model.lambda;
        omega_ = std::sqrt(std::abs(omega_sq_));
    }

    const JcModel& model() const { return model_; }

    Complex value(double t) const { return evaluate(t).b; }

    BtValue evaluate(double t) const {
        reservoir_detail::require_time(t, "jc_bt");
        const double half = 0.5 * t;
        const double lambda = model_.lambda;
        const double a = omega_ * half;
        // c = e^{-lambda t/2} cosh-or-cos(a), s = e^{-lambda t/2} sinh-or-sin(a)/a
        double c = 0.0;
        double s = 0.0;
        if (omega_sq_ >= 0.0) {
            if (a > 1e-3) {
                const double grow = std::exp((omega_ - lambda) * half);
                const double fall = std::exp(-(omega_ + lambda) * half);
                c = 0.5 * (grow + fall);
                s = 0.5 * (grow - fall) / a;
            } else {
                const double damp = std::exp(-lambda * half);
                const double a2 = a * a;
                c = damp * std::cosh(a);
                s = damp * (1.0 + a2 / 6.0 * (1.0 + a2 / 20.0 * (1.0 + a2 / 42.0)));
            }
        } else {
            const double damp = std::exp(-lambda * half);
            const double a2 = a * a;
            c = damp * std::cos(a);
            s = a > 1e-3 ? damp * std::sin(a) / a : damp * (1.0 - a2 / 6.0 * (1.0 - a2 / 20.0 * (1.0 - a2 / 42.0)));
        }
        const double b = c + lambda * half * s;
        const double b_dot = -0.5 * model_.gamma0 * lambda * t * s;
        return {Complex{b, 0.0}, Complex{b_dot, 0.0}};
    }

private:
    JcModel model_;
    double omega_sq_ = 0.0;
    double omega_ = 0.0;
};

/// Evaluates b_t and b_dot for either reservoir. Cheap to copy; the PBG cubic
/// is solved once at construction.
class DecoherenceFunction {
public:
    explicit DecoherenceFunction(const ReservoirModel& model) : model_(model), impl_(make(model)) {}

    const ReservoirModel& model() const { return model_; }

    BtValue evaluate(double t) const {
        return std::visit([t](const auto& amp) { return amp.evaluate(t); }, impl_);
    }
    Complex value(double t) const { return evaluate(t).b; }

private:
    using Impl = std::variant<PbgAmplitude, JcAmplitude>;

    static Impl make(const ReservoirModel& model) {
        if (const auto* pbg = std::get_if<PbgModel>(&model))
            return PbgAmplitude(pbg->delta);
        return JcAmplitude(std::get<JcModel>(model));
    }

    ReservoirModel model_;
    Impl impl_;
};

inline Complex pbg_bt(double delta, double t) {
    reservoir_detail::require_time(t, "pbg_bt");
    return PbgAmplitude(delta).value(t);
}

inline Complex jc_bt(const JcModel& model, double t) {
    return JcAmplitude(model).value(t);
}

/// Analytic b_dot for t > 0; the one-sided derivative at t = 0 is not exposed.
inline Complex bt_derivative(const ReservoirModel& model, double t) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw DomainError("bt_derivative: t must be positive");
    return DecoherenceFunction(model).evaluate(t).b_dot;
}

namespace si {
inline constexpr double kEpsilon0 = 8.8541878128e-12;  // F/m
inline constexpr double kHbar = 1.054571817e-34;       // J s
inline constexpr double kSpeedOfLight = 299792458.0;   // m/s
} // namespace si

/// 6 pi eps0 hbar c^3 in SI units.
inline double band_edge_coupling_denominator() {
    return 6.0 * std::numbers::pi * si::kEpsilon0 * si::kHbar * std::pow(si::kSpeedOfLight, 3);
}

/// beta = [omega0^{7/2} d^2 / (6 pi eps0 hbar c^3)]^{2/3}.
/// omega0 in Hz (angular), dipole in C m. `denominator` overrides 6 pi eps0 hbar c^3.
inline double physical_beta(double omega0, double dipole,
                            double denominator = band_edge_coupling_denominator()) {
    if (!(omega0 > 0.0) || !(dipole > 0.0) || !(denominator > 0.0) || !std::isfinite(omega0) ||
        !std::isfinite(dipole))
        throw DomainError("physical_beta: omega0 and dipole must be positive");
    const double log_beta32 = 3.5 * std::log(omega0) + 2.0 * std::log(dipole) - std::log(denominator);
    return std::exp(log_beta32 * 2.0 / 3.0);
}

} // namespace pbgqsl
