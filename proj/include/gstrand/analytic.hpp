#pragma once

#include <memory>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace gstrand {

// Shape of a one-dimensional wave: amp·f(k·ξ + phase).
enum class WaveShape { Sin, Cos, Linear };

struct WaveDerivatives {
    double h = 0.0;
    double h_t = 0.0;
    double h_s = 0.0;
    double h_tt = 0.0;
    double h_ss = 0.0;
    double h_st = 0.0;
};

/**
 * Closed-form solution h(s,t) of h_tt = h_ss.
 *
 *   traveling:     amp·f(k(s − direction·t) + phase), direction = ±1
 *   standing:      amp·cos(k s + phase_s)·cos(k t + phase_t)
 *   constant:      value
 *   superposition: Σ components
 *
 * Construction checks the wave equation by centered finite differences on
 * a sample grid and throws ValidationError if the relative defect is above
 * 1e-6.
 */
class WaveProfile {
public:
    struct Traveling {
        WaveShape shape = WaveShape::Sin;
        double amp = 1.0;
        double k = 1.0;
        double phase = 0.0;
        int direction = 1;
    };
    struct Standing {
        double amp = 1.0;
        double k = 1.0;
        double phase_s = 0.0;
        double phase_t = 0.0;
    };
    struct Constant {
        double value = 0.0;
    };
    struct Superposition {
        std::vector<WaveProfile> parts;
    };

    static WaveProfile traveling(WaveShape shape, double amp, double k, int direction,
                                 double phase = 0.0);
    static WaveProfile standing(double amp, double k, double phase_s = 0.0, double phase_t = 0.0);
    static WaveProfile constant(double value);
    static WaveProfile superposition(std::vector<WaveProfile> parts);

    double operator()(double s, double t) const { return eval(s, t).h; }
    WaveDerivatives eval(double s, double t) const;

    // True when every component is 2π/k-periodic with k·S/(2π) an integer.
    bool periodic_over(double length) const;

private:
    using Descriptor = std::variant<Traveling, Standing, Constant, Superposition>;
    explicit WaveProfile(Descriptor d);
    void check_wave_equation() const;
    double max_wavenumber() const;

    Descriptor descriptor_;
};

struct SinglePeakonValues {
    double Q = 0.0;
    double M = 0.0;
    double N = 0.0;
};

/**
 * Q¹ = h, M₁ = hₜ/K₀, N₁ = −hₛ/K₀.
 * The sign of N₁ follows from the s-equation ∂ₛQ¹ = −N₁K₀; with it the
 * t-equations reduce to the wave equation for h.
 */
SinglePeakonValues single_peakon_exact(const WaveProfile& profile, double s, double t);

/// F(X) = 2√2 sign(X) cosh⁻¹(e^{|X|/2}), the primitive of (K₀ − K(Y))^{−1/2} from 0.
double collision_F(double x);
/// X = sign(F)·2 ln cosh(F / (2√2)).
double collision_F_inverse(double f);

struct CollisionSolution {
    WaveProfile profile;
    int branch = 1;  // ±1, never inferred

    CollisionSolution(WaveProfile p, int branch_sign);
};

struct CollisionValues {
    double Q1 = 0.0, Q2 = 0.0;
    double M1 = 0.0, M2 = 0.0;
    double N1 = 0.0, N2 = 0.0;
    double X = 0.0;
    double X_t = 0.0, X_s = 0.0;
};

/// X = branch·ln cosh²(h). Defined everywhere, including X = 0.
double collision_separation(const CollisionSolution& sol, double s, double t);

/**
 * Antisymmetric peakon–antipeakon pair centred at 0:
 *   Q¹ = X/2, Q² = −X/2,
 *   M₁ = −M₂ = Xₜ / (2(K₀ − K(X))),  N₁ = −N₂ = −Xₛ / (2(K₀ − K(X))).
 * Throws SingularConfigurationError at the collision instant X = 0.
 */
CollisionValues collision_exact(const CollisionSolution& sol, double s, double t);

// Samples on a uniform (t, s) grid, row-major: value(i_t, j_s).
struct CollisionSamples {
    double ds = 0.0;
    double dt = 0.0;
    Eigen::MatrixXd M1, M2, N1, N2, X;
};

struct PotentialsReport {
    double max_M_difference_residual = 0.0;  // |M₁−M₂ − DₜX/(K₀−K)|
    double max_N_difference_residual = 0.0;  // |N₁−N₂ + DₛX/(K₀−K)|
    double max_curl_residual = 0.0;          // |Dₜ(M₁+M₂) + Dₛ(N₁+N₂)|
    double max_phi_s = 0.0;                  // max |M₁+M₂| = |∂ₛφ|
    double max_phi_t = 0.0;                  // max |N₁+N₂| = |∂ₜφ|
};

/**
 * Checks the potential representation
 *   M₁−M₂ = ∂ₜX/(K₀−K), N₁−N₂ = −∂ₛX/(K₀−K), M₁+M₂ = ∂ₛφ, N₁+N₂ = −∂ₜφ
 * with centered differences on interior samples (s is not assumed
 * periodic). The φ relations are checked through their integrability
 * condition.
 */
PotentialsReport potentials_resolve(const CollisionSamples& samples);

}  // namespace gstrand
