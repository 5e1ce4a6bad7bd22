#include "gstrand/so3_dynamics.hpp"

#include "gstrand/errors.hpp"

namespace gstrand {
namespace {

VectorField ds_of(const VectorField& f, const PeriodicGrid& grid, const DerivativeStencil& stencil) {
    return stencil.apply<So3Vector>(std::span<const So3Vector>(f), grid.spacing());
}

void check_sizes(const PeriodicGrid& g, const VectorField& a, const VectorField& b) {
    if (a.size() != g.size() || b.size() != g.size()) {
        throw ValidationError("field length does not match the grid");
    }
}

bool finite(const VectorField& f) {
    for (const auto& x : f) {
        if (!x.allFinite()) return false;
    }
    return true;
}

void axpy(VectorField& y, const VectorField& x, double a = 1.0) {
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += a * x[j];
}

void scale(VectorField& y, double a) {
    for (auto& x : y) x *= a;
}

std::vector<double> norms2(const VectorField& f) {
    std::vector<double> out(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) out[j] = f[j].squaredNorm();
    return out;
}

}  // namespace

So3StrandState::So3StrandState(PeriodicGrid g, VectorField u_field, VectorField v_field)
    : grid(g), u(std::move(u_field)), v(std::move(v_field)) {
    check_sizes(grid, u, v);
}

So3StrandState So3StrandState::zeros(const PeriodicGrid& g) {
    return {g, VectorField(g.size(), So3Vector::Zero()), VectorField(g.size(), So3Vector::Zero())};
}

So3StrandState& So3StrandState::operator+=(const So3StrandState& other) {
    axpy(u, other.u);
    axpy(v, other.v);
    return *this;
}

So3StrandState& So3StrandState::operator*=(double a) {
    scale(u, a);
    scale(v, a);
    return *this;
}

bool So3StrandState::all_finite() const { return finite(u) && finite(v); }

So3StrandState operator+(So3StrandState a, const So3StrandState& b) { return a += b; }
So3StrandState operator*(double a, So3StrandState s) { return s *= a; }

XYState::XYState(PeriodicGrid g, VectorField x_field, VectorField y_field)
    : grid(g), X(std::move(x_field)), Y(std::move(y_field)) {
    check_sizes(grid, X, Y);
    initial_X_norm2 = norms2(X);
    initial_Y_norm2 = norms2(Y);
}

XYState& XYState::operator+=(const XYState& other) {
    axpy(X, other.X);
    axpy(Y, other.Y);
    return *this;
}

XYState& XYState::operator*=(double a) {
    scale(X, a);
    scale(Y, a);
    return *this;
}

bool XYState::all_finite() const { return finite(X) && finite(Y); }

XYState operator+(XYState a, const XYState& b) { return a += b; }
XYState operator*(double a, XYState s) { return s *= a; }

So3StrandState spin_chain_rhs(const So3StrandState& state, const SpinChainParams& params,
                              const DerivativeStencil& stencil) {
    const auto n = state.size();
    VectorField bv(n);
    for (std::size_t j = 0; j < n; ++j) bv[j] = params.B.apply(state.v[j]);
    const VectorField dbv = ds_of(bv, state.grid, stencil);
    const VectorField du = ds_of(state.u, state.grid, stencil);

    auto out = So3StrandState::zeros(state.grid);
    for (std::size_t j = 0; j < n; ++j) {
        const So3Vector& u = state.u[j];
        const So3Vector& v = state.v[j];
        const So3Vector force = u.cross(params.A.apply(u)) + dbv[j] + v.cross(bv[j]);
        out.u[j] = -params.A.apply_inverse(force);
        out.v[j] = du[j] + v.cross(u);
    }
    return out;
}

So3StrandState chiral_rhs(const So3StrandState& state, const DerivativeStencil& stencil) {
    const VectorField du = ds_of(state.u, state.grid, stencil);
    const VectorField dv = ds_of(state.v, state.grid, stencil);
    auto out = So3StrandState::zeros(state.grid);
    for (std::size_t j = 0; j < state.size(); ++j) {
        out.u[j] = dv[j];
        out.v[j] = du[j] - state.u[j].cross(state.v[j]);
    }
    return out;
}

So3StrandState aniso_rhs_uv(const So3StrandState& state, const DiagonalParams& p,
                            const DerivativeStencil& stencil) {
    const VectorField du = ds_of(state.u, state.grid, stencil);
    const VectorField dv = ds_of(state.v, state.grid, stencil);
    auto out = So3StrandState::zeros(state.grid);
    for (std::size_t j = 0; j < state.size(); ++j) {
        const So3Vector& u = state.u[j];
        const So3Vector& v = state.v[j];
        const So3Vector pu = p.apply(u);
        const So3Vector pv = p.apply(v);
        out.u[j] = dv[j] - v.cross(pv) + u.cross(pu);
        out.v[j] = du[j] - u.cross(pv) + v.cross(pu);
    }
    return out;
}

XYState to_XY(const So3StrandState& state) {
    VectorField x(state.size()), y(state.size());
    for (std::size_t j = 0; j < state.size(); ++j) {
        x[j] = state.u[j] - state.v[j];
        y[j] = -state.u[j] - state.v[j];
    }
    return {state.grid, std::move(x), std::move(y)};
}

So3StrandState from_XY(const XYState& xy) {
    VectorField u(xy.size()), v(xy.size());
    for (std::size_t j = 0; j < xy.size(); ++j) {
        u[j] = 0.5 * (xy.X[j] - xy.Y[j]);
        v[j] = -0.5 * (xy.X[j] + xy.Y[j]);
    }
    return {xy.grid, std::move(u), std::move(v)};
}

XYState push_rate_to_XY(const So3StrandState& rate) { return to_XY(rate); }

XYState aniso_rhs_XY(const XYState& xy, const DiagonalParams& p, const DerivativeStencil& stencil) {
    const VectorField dx = ds_of(xy.X, xy.grid, stencil);
    const VectorField dy = ds_of(xy.Y, xy.grid, stencil);
    XYState out = xy;
    for (std::size_t j = 0; j < xy.size(); ++j) {
        const So3Vector& x = xy.X[j];
        const So3Vector& y = xy.Y[j];
        out.X[j] = -dx[j] - x.cross(p.apply(y));
        out.Y[j] = dy[j] + y.cross(p.apply(x));
    }
    return out;
}

MomentumRate lie_poisson_rhs_spin_chain(const VectorField& m, const VectorField& v,
                                        const SpinChainParams& params, const PeriodicGrid& grid,
                                        const DerivativeStencil& stencil) {
    check_sizes(grid, m, v);
    const auto n = grid.size();
    VectorField dh_dm(n), dh_dv(n);
    for (std::size_t j = 0; j < n; ++j) {
        dh_dm[j] = params.A.apply_inverse(m[j]);
        dh_dv[j] = -params.B.apply(v[j]);
    }
    const VectorField d_dh_dv = ds_of(dh_dv, grid, stencil);
    const VectorField d_dh_dm = ds_of(dh_dm, grid, stencil);

    MomentumRate out{VectorField(n), VectorField(n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.m_t[j] = ad_star(dh_dm[j], m[j]) + d_dh_dv[j] - ad_star(v[j], dh_dv[j]);
        out.v_t[j] = d_dh_dm[j] - ad(dh_dm[j], v[j]);
    }
    return out;
}

So3StrandState chiral_residual(const So3StrandState& state, const So3StrandState& rate,
                               const DerivativeStencil& stencil) {
    auto r = chiral_rhs(state, stencil);
    r *= -1.0;
    r += rate;
    return r;
}

So3StrandState aniso_residual(const So3StrandState& state, const So3StrandState& rate,
                              const DiagonalParams& p, const DerivativeStencil& stencil) {
    auto r = aniso_rhs_uv(state, p, stencil);
    r *= -1.0;
    r += rate;
    return r;
}

}  // namespace gstrand
