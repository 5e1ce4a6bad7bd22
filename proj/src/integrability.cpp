#include "gstrand/integrability.hpp"

#include <algorithm>
#include <cmath>

#include "gstrand/errors.hpp"

namespace gstrand {

LaxConnection chiral_lax(const So3StrandState& state, double lambda) {
    if (lambda == 0.0) {
        throw ValidationError("chiral Lax pair has a pole at lambda = 0");
    }
    const double a = 0.25 * (1.0 + lambda);
    const double b = 0.25 * (1.0 + 1.0 / lambda);
    LaxConnection lax{3, lambda, {}, {}};
    lax.U.reserve(state.size());
    lax.V.reserve(state.size());
    for (std::size_t j = 0; j < state.size(); ++j) {
        const So3Matrix uh = hat(state.u[j]);
        const So3Matrix vh = hat(state.v[j]);
        lax.U.emplace_back(a * (uh - vh) - b * (uh + vh));
        lax.V.emplace_back(-a * (uh - vh) - b * (uh + vh));
    }
    return lax;
}

LaxConnection aniso_lax(const So3StrandState& state, double lambda, const DiagonalParams& p) {
    const So4Matrix shift = lambda * So4Matrix::Identity() + build_J(p);
    LaxConnection lax{4, lambda, {}, {}};
    lax.U.reserve(state.size());
    lax.V.reserve(state.size());
    for (std::size_t j = 0; j < state.size(); ++j) {
        lax.U.emplace_back(embed_so4(state.v[j], state.u[j]) * shift);
        lax.V.emplace_back(embed_so4(state.u[j], state.v[j]) * shift);
    }
    return lax;
}

DiagonalParams lax_anisotropy_for(const DiagonalParams& p) {
    return {2.0 * p.diagonal(), DiagonalParams::Role::AnisotropyP};
}

ZeroCurvatureResidual zero_curvature_residual(std::span<const LaxConnection> traj,
                                              const PeriodicGrid& grid,
                                              const DerivativeStencil& stencil, double dt) {
    if (traj.size() < 3) {
        throw ValidationError("zero-curvature residual needs at least 3 time levels");
    }
    if (!(dt > 0.0)) {
        throw ValidationError("time step must be positive");
    }
    const std::size_t n = grid.size();
    for (const auto& lax : traj) {
        if (lax.U.size() != n || lax.V.size() != n) {
            throw ValidationError("connection size does not match the grid");
        }
    }

    ZeroCurvatureResidual out;
    for (std::size_t k = 1; k + 1 < traj.size(); ++k) {
        const auto& now = traj[k];
        const auto dV = stencil.apply<Eigen::MatrixXd>(std::span<const Eigen::MatrixXd>(now.V),
                                                       grid.spacing());
        std::vector<Eigen::MatrixXd> level(n);
        for (std::size_t j = 0; j < n; ++j) {
            const Eigen::MatrixXd dU = (traj[k + 1].U[j] - traj[k - 1].U[j]) / (2.0 * dt);
            level[j] = dU - dV[j] + now.U[j] * now.V[j] - now.V[j] * now.U[j];
            out.max_norm = std::max(out.max_norm, level[j].cwiseAbs().maxCoeff());
        }
        out.fields.push_back(std::move(level));
    }
    return out;
}

VectorResidual compatibility_residual(std::span<const So3StrandState> traj,
                                      const DerivativeStencil& stencil, double dt) {
    if (traj.size() < 3) {
        throw ValidationError("compatibility residual needs at least 3 time levels");
    }
    VectorResidual out;
    for (std::size_t k = 1; k + 1 < traj.size(); ++k) {
        const auto& now = traj[k];
        const auto du = stencil.apply<So3Vector>(std::span<const So3Vector>(now.u),
                                                 now.grid.spacing());
        VectorField level(now.size());
        for (std::size_t j = 0; j < now.size(); ++j) {
            const So3Vector vt = (traj[k + 1].v[j] - traj[k - 1].v[j]) / (2.0 * dt);
            level[j] = vt - du[j] + now.u[j].cross(now.v[j]);
            out.max_norm = std::max(out.max_norm, level[j].cwiseAbs().maxCoeff());
        }
        out.fields.push_back(std::move(level));
    }
    return out;
}

InvariantDrift invariant_drift(std::span<const XYState> traj) {
    if (traj.size() < 2) {
        throw ValidationError("invariant drift needs at least 2 time levels");
    }
    const auto& first = traj.front();
    const double ds = first.grid.spacing();
    double x0_sum = 0.0, y0_sum = 0.0;
    for (std::size_t j = 0; j < first.size(); ++j) {
        x0_sum += first.X[j].squaredNorm() * ds;
        y0_sum += first.Y[j].squaredNorm() * ds;
    }

    InvariantDrift out;
    for (const auto& level : traj.subspan(1)) {
        double x_sum = 0.0, y_sum = 0.0;
        for (std::size_t j = 0; j < level.size(); ++j) {
            const double x2 = level.X[j].squaredNorm();
            const double y2 = level.Y[j].squaredNorm();
            out.max_X_drift = std::max(out.max_X_drift, std::abs(x2 - first.X[j].squaredNorm()));
            out.max_Y_drift = std::max(out.max_Y_drift, std::abs(y2 - first.Y[j].squaredNorm()));
            x_sum += x2 * ds;
            y_sum += y2 * ds;
        }
        out.X_sum_drift = std::max(out.X_sum_drift, std::abs(x_sum - x0_sum));
        out.Y_sum_drift = std::max(out.Y_sum_drift, std::abs(y_sum - y0_sum));
    }
    return out;
}

}  // namespace gstrand
