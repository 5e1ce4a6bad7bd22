#pragma once

#include <utility>
#include <vector>

#include "gstrand/algebra.hpp"
#include "gstrand/grid.hpp"

namespace gstrand {

using VectorField = std::vector<So3Vector>;

// Pair of so(3)-valued fields (u, v) on a periodic s-grid. Also used for
// time derivatives (u_t, v_t) of such a state.
struct So3StrandState {
    PeriodicGrid grid;
    VectorField u;
    VectorField v;

    So3StrandState(PeriodicGrid g, VectorField u_field, VectorField v_field);
    static So3StrandState zeros(const PeriodicGrid& g);

    std::size_t size() const noexcept { return grid.size(); }

    So3StrandState& operator+=(const So3StrandState& other);
    So3StrandState& operator*=(double a);
    bool all_finite() const;
};

So3StrandState operator+(So3StrandState a, const So3StrandState& b);
So3StrandState operator*(double a, So3StrandState s);

struct SpinChainParams {
    DiagonalParams A;
    DiagonalParams B;
};

// X = u − v, Y = −u − v. Per-node |X|², |Y|² at construction are kept for
// drift monitoring and carried through arithmetic unchanged.
struct XYState {
    PeriodicGrid grid;
    VectorField X;
    VectorField Y;
    std::vector<double> initial_X_norm2;
    std::vector<double> initial_Y_norm2;

    XYState(PeriodicGrid g, VectorField x_field, VectorField y_field);

    std::size_t size() const noexcept { return grid.size(); }

    XYState& operator+=(const XYState& other);
    XYState& operator*=(double a);
    bool all_finite() const;
};

XYState operator+(XYState a, const XYState& b);
XYState operator*(double a, XYState s);

/// u_t = −A⁻¹(u×Au + ∂ₛ(Bv) + v×Bv),  v_t = ∂ₛu + v×u.
So3StrandState spin_chain_rhs(const So3StrandState& state, const SpinChainParams& params,
                              const DerivativeStencil& stencil);

/// u_t = ∂ₛv,  v_t = ∂ₛu − u×v.
So3StrandState chiral_rhs(const So3StrandState& state, const DerivativeStencil& stencil);

/// u_t = ∂ₛv − v×Pv + u×Pu,  v_t = ∂ₛu − u×Pv + v×Pu.
So3StrandState aniso_rhs_uv(const So3StrandState& state, const DiagonalParams& p,
                            const DerivativeStencil& stencil);

XYState to_XY(const So3StrandState& state);
So3StrandState from_XY(const XYState& xy);

// Linear pushforward of a (u_t, v_t) rate to (X_t, Y_t); unlike to_XY the
// recorded initial magnitudes are irrelevant here.
XYState push_rate_to_XY(const So3StrandState& rate);

/**
 * X_t = −∂ₛX − X×PY,  Y_t = ∂ₛY + Y×PX.
 *
 * The sign of the Y cross term is the one produced by substituting
 * X = u − v, Y = −u − v into aniso_rhs_uv, so both forms describe the same
 * flow. Both cross terms are orthogonal to their field, so |X|², |Y|² are
 * transported by ∓∂ₛ.
 */
XYState aniso_rhs_XY(const XYState& xy, const DiagonalParams& p, const DerivativeStencil& stencil);

struct MomentumRate {
    VectorField m_t;
    VectorField v_t;
};

/**
 * Lie–Poisson form in (m, v) with h(m, v) = ½ m·A⁻¹m + ½ v·Bv:
 *   m_t = ad*_{δh/δm} m + ∂ₛ(δh/δv) − ad*_v(δh/δv)
 *   v_t = ∂ₛ(δh/δm) − ad_{δh/δm} v
 * with δh/δm = A⁻¹m and δh/δv = −Bv.
 */
MomentumRate lie_poisson_rhs_spin_chain(const VectorField& m, const VectorField& v,
                                        const SpinChainParams& params, const PeriodicGrid& grid,
                                        const DerivativeStencil& stencil);

/// Residual pair of a proposed rate against the chiral equations:
/// (u_t − ∂ₛv, v_t − ∂ₛu + u×v).
So3StrandState chiral_residual(const So3StrandState& state, const So3StrandState& rate,
                               const DerivativeStencil& stencil);

/// Residual pair against the anisotropic equations:
/// (u_t − ∂ₛv + v×Pv − u×Pu, v_t − ∂ₛu + u×Pv − v×Pu).
So3StrandState aniso_residual(const So3StrandState& state, const So3StrandState& rate,
                              const DiagonalParams& p, const DerivativeStencil& stencil);

}  // namespace gstrand
