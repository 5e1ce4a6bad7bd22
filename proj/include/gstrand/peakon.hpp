#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gstrand/grid.hpp"

namespace gstrand {

/// Helmholtz Green function K(x,y) = ½ e^{−|x−y|}, the inverse of (1 − ∂ₓ²).
struct Kernel {
    static constexpr double K0 = 0.5;

    static double eval(double x, double y) { return eval(x - y); }
    static double eval(double separation);
    // dK/dX at X ≠ 0; 0 at X = 0 (symmetric value at the peak).
    static double derivative(double separation);
};

Eigen::MatrixXd kernel_matrix(std::span<const double> q);

/// D(a,c) = ∂K^{ac}/∂Qᵃ = −½ sign(Qᵃ−Qᶜ) e^{−|Qᵃ−Qᶜ|}, D(a,a) = 0.
Eigen::MatrixXd kernel_deriv(std::span<const double> q);

// Singular-solution parameters (Qᵃ, Mₐ, Nₐ), a = 0..count-1, at every s-node.
// Storage is node-major: Q[j*count + a]. Also used for time derivatives.
struct PeakonState {
    PeriodicGrid grid;
    std::size_t count;
    std::vector<double> Q;
    std::vector<double> M;
    std::vector<double> N;

    PeakonState(PeriodicGrid g, std::size_t peakons);
    PeakonState(PeriodicGrid g, std::size_t peakons, std::vector<double> q, std::vector<double> m,
                std::vector<double> n);

    std::size_t size() const noexcept { return grid.size(); }
    std::size_t index(std::size_t node, std::size_t a) const noexcept { return node * count + a; }

    std::span<const double> Q_at(std::size_t node) const { return {Q.data() + node * count, count}; }
    std::span<const double> M_at(std::size_t node) const { return {M.data() + node * count, count}; }
    std::span<const double> N_at(std::size_t node) const { return {N.data() + node * count, count}; }

    // Values of one peakon's parameter along s.
    std::vector<double> Q_of(std::size_t a) const;
    std::vector<double> M_of(std::size_t a) const;
    std::vector<double> N_of(std::size_t a) const;

    PeakonState& operator+=(const PeakonState& other);
    PeakonState& operator*=(double a);
    bool all_finite() const;
};

PeakonState operator+(PeakonState a, const PeakonState& b);
PeakonState operator*(double a, PeakonState s);

struct PeakonOptions {
    double min_gap = 1e-8;           // ε_Q, coincidence guard
    double max_condition = 1e12;     // 2-norm condition bound for K^{ab}
};

struct Atom {
    double position;
    double weight;
};

struct FieldSample {
    std::vector<double> x;
    std::vector<double> u;  // Σ Mₐ K(x, Qᵃ)
    std::vector<double> v;  // −Σ Nₐ K(x, Qᵃ)
    std::vector<Atom> m_atoms;
    std::vector<Atom> n_atoms;
};

FieldSample reconstruct_fields(std::span<const double> q, std::span<const double> m,
                               std::span<const double> n, std::span<const double> x);

/**
 * Time derivative of the singular-solution parameters at every s-node:
 *   ∂ₜQᵃ = Σ_b M_b K^{ab}
 *   ∂ₜMₐ = −∂ₛNₐ − Σ_c (MₐM_c − NₐN_c) ∂K^{ac}/∂Qᵃ
 *   ∂ₜNₐ = −∂ₛMₐ + (K⁻¹ T)ₐ,
 *   T_e = Σ_{b,c} (N_bM_c − M_bN_c)(∂K^{ec}/∂Qᵉ)(K^{eb} − K^{cb})
 * The s-equation for Qᵃ is a constraint; see s_constraint_residual.
 * Throws SingularConfigurationError when two positions at a node are closer
 * than min_gap, ConditioningError when K is too ill-conditioned or fails
 * its Cholesky factorization.
 */
PeakonState peakon_rhs(const PeakonState& state, const DerivativeStencil& stencil,
                       const PeakonOptions& options = {});

/// max over nodes and peakons of |∂ₛQᵃ + Σ_b N_b K^{ab}|.
double s_constraint_residual(const PeakonState& state, const DerivativeStencil& stencil);

/**
 * Two-peakon system written out directly in terms of X = Q¹ − Q²:
 *   ∂ₜX = (M₁−M₂)(K₀−K),  ∂ₜ(Q¹+Q²) = (M₁+M₂)(K₀+K)
 *   ∂ₜM₁ = −∂ₛN₁ − (M₁M₂−N₁N₂)K′,  ∂ₜM₂ = −∂ₛN₂ + (M₁M₂−N₁N₂)K′
 *   ∂ₜNₐ = −∂ₛMₐ + (N₁M₂−M₁N₂)(K₀−K)/(K₀+K)·K′
 * Independent of peakon_rhs; used to cross-check its index conventions.
 */
PeakonState collision_pair_rhs(const PeakonState& state, const DerivativeStencil& stencil);

}  // namespace gstrand
