#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gstrand/so3_dynamics.hpp"

namespace gstrand {

// Matrix-valued potential pair with ψₛ = Uψ, ψₜ = Vψ at every s-node.
struct LaxConnection {
    int algebra_dim = 3;
    double lambda = 1.0;
    std::vector<Eigen::MatrixXd> U;
    std::vector<Eigen::MatrixXd> V;
};

/**
 * Chiral-model pair, per node:
 *   L =  ¼[(1+λ)(û−v̂) − (1+1/λ)(û+v̂)]
 *   M = −¼[(1+λ)(û−v̂) + (1+1/λ)(û+v̂)]
 * stored as U = L, V = M. Throws ValidationError for λ = 0.
 */
LaxConnection chiral_lax(const So3StrandState& state, double lambda);

/**
 * 4x4 anisotropic pair: U = A(v,u)(λ·Id + J), V = A(u,v)(λ·Id + J) with
 * J = build_J(P) and A = embed_so4. Note the argument swap between U and V.
 * These potentials are not antisymmetric in general.
 */
LaxConnection aniso_lax(const So3StrandState& state, double lambda, const DiagonalParams& p);

/**
 * The anisotropy to hand to aniso_lax so that its zero-curvature condition
 * reproduces aniso_rhs_uv at anisotropy p. The pair built from build_J(P)
 * is compatible with the equations at P/2, so this returns 2P.
 */
DiagonalParams lax_anisotropy_for(const DiagonalParams& p);

struct ZeroCurvatureResidual {
    double max_norm = 0.0;
    // fields[k][j]: residual at interior time level k+1, node j.
    std::vector<std::vector<Eigen::MatrixXd>> fields;
};

/**
 * R = DₜU − DₛV + [U, V] on interior time levels, with centered time
 * differences over consecutive snapshots spaced dt. Needs ≥ 3 levels.
 */
ZeroCurvatureResidual zero_curvature_residual(std::span<const LaxConnection> traj,
                                              const PeriodicGrid& grid,
                                              const DerivativeStencil& stencil, double dt);

/**
 * Discrete form of the compatibility relation v_t − ∂ₛu + u×v = 0 on
 * interior snapshots (centered in time). Also the residual of the second
 * chiral equation. fields[k][j] is a vector residual.
 */
struct VectorResidual {
    double max_norm = 0.0;
    std::vector<VectorField> fields;
};

VectorResidual compatibility_residual(std::span<const So3StrandState> traj,
                                      const DerivativeStencil& stencil, double dt);

struct InvariantDrift {
    double max_X_drift = 0.0;  // max over nodes and times of ||X(t,s)|² − |X(0,s)|²|
    double max_Y_drift = 0.0;
    double X_sum_drift = 0.0;  // max over times of |Σ|X|²Δs − Σ|X(0)|²Δs|
    double Y_sum_drift = 0.0;
};

/// Drifts measured against traj[0]. Needs ≥ 2 levels.
InvariantDrift invariant_drift(std::span<const XYState> traj);

}  // namespace gstrand
