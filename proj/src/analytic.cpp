#include "gstrand/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "gstrand/errors.hpp"
#include "gstrand/peakon.hpp"

namespace gstrand {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// f, f', f'' of the shape at θ.
std::array<double, 3> shape_values(WaveShape shape, double theta) {
    switch (shape) {
        case WaveShape::Sin: return {std::sin(theta), std::cos(theta), -std::sin(theta)};
        case WaveShape::Cos: return {std::cos(theta), -std::sin(theta), -std::cos(theta)};
        case WaveShape::Linear: return {theta, 1.0, 0.0};
    }
    return {0.0, 0.0, 0.0};
}

bool integer_multiple(double x) { return std::abs(x - std::round(x)) <= 1e-9 * std::max(1.0, std::abs(x)); }

bool wavenumber_fits(double k, double length) {
    return integer_multiple(k * length / (2.0 * std::numbers::pi));
}

// K₀ − K(X) = ½(1 − e^{−|X|}), evaluated without cancellation.
double kernel_gap(double x) { return -0.5 * std::expm1(-std::abs(x)); }

}  // namespace

WaveProfile::WaveProfile(Descriptor d) : descriptor_(std::move(d)) { check_wave_equation(); }

WaveProfile WaveProfile::traveling(WaveShape shape, double amp, double k, int direction, double phase) {
    if (direction != 1 && direction != -1) {
        throw ValidationError("traveling wave direction must be +1 or -1");
    }
    return WaveProfile(Traveling{shape, amp, k, phase, direction});
}

WaveProfile WaveProfile::standing(double amp, double k, double phase_s, double phase_t) {
    return WaveProfile(Standing{amp, k, phase_s, phase_t});
}

WaveProfile WaveProfile::constant(double value) { return WaveProfile(Constant{value}); }

WaveProfile WaveProfile::superposition(std::vector<WaveProfile> parts) {
    return WaveProfile(Superposition{std::move(parts)});
}

WaveDerivatives WaveProfile::eval(double s, double t) const {
    return std::visit(
        Overloaded{
            [&](const Traveling& w) {
                const double dir = w.direction;
                const auto [f0, f1, f2] = shape_values(w.shape, w.k * (s - dir * t) + w.phase);
                const double a = w.amp, k = w.k;
                return WaveDerivatives{a * f0,          -dir * a * k * f1, a * k * f1,
                                       a * k * k * f2,  a * k * k * f2,    -dir * a * k * k * f2};
            },
            [&](const Standing& w) {
                const double cs = std::cos(w.k * s + w.phase_s), ss = std::sin(w.k * s + w.phase_s);
                const double ct = std::cos(w.k * t + w.phase_t), st = std::sin(w.k * t + w.phase_t);
                const double a = w.amp, k = w.k;
                const double h = a * cs * ct;
                return WaveDerivatives{h, -a * k * cs * st, -a * k * ss * ct,
                                       -k * k * h, -k * k * h, a * k * k * ss * st};
            },
            [&](const Constant& c) { return WaveDerivatives{c.value, 0, 0, 0, 0, 0}; },
            [&](const Superposition& sup) {
                WaveDerivatives sum;
                for (const auto& part : sup.parts) {
                    const auto d = part.eval(s, t);
                    sum.h += d.h;
                    sum.h_t += d.h_t;
                    sum.h_s += d.h_s;
                    sum.h_tt += d.h_tt;
                    sum.h_ss += d.h_ss;
                    sum.h_st += d.h_st;
                }
                return sum;
            },
        },
        descriptor_);
}

bool WaveProfile::periodic_over(double length) const {
    return std::visit(
        Overloaded{
            [&](const Traveling& w) {
                if (w.amp == 0.0) return true;
                if (w.shape == WaveShape::Linear) return w.k == 0.0;
                return wavenumber_fits(w.k, length);
            },
            [&](const Standing& w) { return w.amp == 0.0 || wavenumber_fits(w.k, length); },
            [&](const Constant&) { return true; },
            [&](const Superposition& sup) {
                return std::all_of(sup.parts.begin(), sup.parts.end(),
                                   [&](const WaveProfile& p) { return p.periodic_over(length); });
            },
        },
        descriptor_);
}

double WaveProfile::max_wavenumber() const {
    return std::visit(Overloaded{
                          [](const Traveling& w) { return std::abs(w.k); },
                          [](const Standing& w) { return std::abs(w.k); },
                          [](const Constant&) { return 0.0; },
                          [](const Superposition& sup) {
                              double k = 0.0;
                              for (const auto& p : sup.parts) k = std::max(k, p.max_wavenumber());
                              return k;
                          },
                      },
                      descriptor_);
}

void WaveProfile::check_wave_equation() const {
    const double step = 1e-3 / std::max(1.0, max_wavenumber());

    constexpr double s_samples[] = {0.1, 0.7, 1.9, 3.3, 5.1};
    constexpr double t_samples[] = {0.0, 0.4, 1.3};
    double scale = 1.0, defect = 0.0;
    for (double s : s_samples) {
        for (double t : t_samples) {
            const auto c = eval(s, t);
            const double h = c.h;
            const double tt = (eval(s, t + step).h - 2.0 * h + eval(s, t - step).h) / (step * step);
            const double ss = (eval(s + step, t).h - 2.0 * h + eval(s - step, t).h) / (step * step);
            defect = std::max(defect, std::abs(tt - ss));
            scale = std::max(scale, std::abs(h) + std::abs(c.h_tt) + std::abs(c.h_ss));
        }
    }
    if (!(defect <= 1e-6 * scale)) {
        throw ValidationError("wave profile does not satisfy h_tt = h_ss");
    }
}

SinglePeakonValues single_peakon_exact(const WaveProfile& profile, double s, double t) {
    const auto d = profile.eval(s, t);
    return {d.h, d.h_t / Kernel::K0, -d.h_s / Kernel::K0};
}

double collision_F(double x) {
    if (x == 0.0) return 0.0;
    const double a = 0.5 * std::abs(x);
    // cosh⁻¹(e^a) = ln(e^a + √(e^{2a} − 1)) = log1p(expm1(a) + √expm1(2a))
    const double value = std::log1p(std::expm1(a) + std::sqrt(std::expm1(2.0 * a)));
    return std::copysign(2.0 * std::numbers::sqrt2 * value, x);
}

double collision_F_inverse(double f) {
    if (f == 0.0) return 0.0;
    const double y = std::abs(f) / (2.0 * std::numbers::sqrt2);
    double log_cosh;
    if (y < 20.0) {
        const double sh = std::sinh(0.5 * y);
        log_cosh = std::log1p(2.0 * sh * sh);  // cosh y = 1 + 2 sinh²(y/2)
    } else {
        log_cosh = y + std::log1p(std::exp(-2.0 * y)) - std::numbers::ln2;
    }
    return std::copysign(2.0 * log_cosh, f);
}

CollisionSolution::CollisionSolution(WaveProfile p, int branch_sign)
    : profile(std::move(p)), branch(branch_sign) {
    if (branch != 1 && branch != -1) {
        throw ValidationError("collision branch must be +1 or -1");
    }
}

double collision_separation(const CollisionSolution& sol, double s, double t) {
    const double h = sol.profile(s, t);
    return sol.branch * 2.0 * std::log(std::cosh(h));
}

CollisionValues collision_exact(const CollisionSolution& sol, double s, double t) {
    const auto d = sol.profile.eval(s, t);
    CollisionValues out;
    out.X = sol.branch * 2.0 * std::log(std::cosh(d.h));
    const double th = std::tanh(d.h);
    out.X_t = sol.branch * 2.0 * th * d.h_t;
    out.X_s = sol.branch * 2.0 * th * d.h_s;
    out.Q1 = 0.5 * out.X;
    out.Q2 = -0.5 * out.X;
    if (out.X == 0.0) {
        throw SingularConfigurationError("collision instant: peakon separation X = 0");
    }
    const double gap = kernel_gap(out.X);
    out.M1 = out.X_t / (2.0 * gap);
    out.M2 = -out.M1;
    out.N1 = -out.X_s / (2.0 * gap);
    out.N2 = -out.N1;
    return out;
}

PotentialsReport potentials_resolve(const CollisionSamples& in) {
    const auto nt = in.X.rows();
    const auto ns = in.X.cols();
    auto same_shape = [&](const Eigen::MatrixXd& m) { return m.rows() == nt && m.cols() == ns; };
    if (!same_shape(in.M1) || !same_shape(in.M2) || !same_shape(in.N1) || !same_shape(in.N2)) {
        throw ValidationError("potentials_resolve: sample arrays differ in shape");
    }
    if (nt < 3 || ns < 3 || !(in.ds > 0.0) || !(in.dt > 0.0)) {
        throw ValidationError("potentials_resolve: need a 3x3 grid or larger with positive steps");
    }

    PotentialsReport r;
    const Eigen::MatrixXd msum = in.M1 + in.M2;
    const Eigen::MatrixXd nsum = in.N1 + in.N2;
    r.max_phi_s = msum.cwiseAbs().maxCoeff();
    r.max_phi_t = nsum.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 1; i + 1 < nt; ++i) {
        for (Eigen::Index j = 1; j + 1 < ns; ++j) {
            const double gap = kernel_gap(in.X(i, j));
            const double xt = (in.X(i + 1, j) - in.X(i - 1, j)) / (2.0 * in.dt);
            const double xs = (in.X(i, j + 1) - in.X(i, j - 1)) / (2.0 * in.ds);
            r.max_M_difference_residual = std::max(
                r.max_M_difference_residual, std::abs(in.M1(i, j) - in.M2(i, j) - xt / gap));
            r.max_N_difference_residual = std::max(
                r.max_N_difference_residual, std::abs(in.N1(i, j) - in.N2(i, j) + xs / gap));
            const double curl = (msum(i + 1, j) - msum(i - 1, j)) / (2.0 * in.dt) +
                                (nsum(i, j + 1) - nsum(i, j - 1)) / (2.0 * in.ds);
            r.max_curl_residual = std::max(r.max_curl_residual, std::abs(curl));
        }
    }
    return r;
}

}  // namespace gstrand
