#include "gstrand/peakon.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gstrand/errors.hpp"

namespace gstrand {

double Kernel::eval(double separation) { return K0 * std::exp(-std::abs(separation)); }

double Kernel::derivative(double separation) {
    if (separation == 0.0) return 0.0;
    return -std::copysign(1.0, separation) * eval(separation);
}

Eigen::MatrixXd kernel_matrix(std::span<const double> q) {
    const auto n = static_cast<Eigen::Index>(q.size());
    Eigen::MatrixXd k(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        k(a, a) = Kernel::K0;
        for (Eigen::Index b = a + 1; b < n; ++b) {
            k(a, b) = k(b, a) = Kernel::eval(q[a], q[b]);
        }
    }
    return k;
}

Eigen::MatrixXd kernel_deriv(std::span<const double> q) {
    const auto n = static_cast<Eigen::Index>(q.size());
    Eigen::MatrixXd d(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index c = 0; c < n; ++c) {
            d(a, c) = (a == c) ? 0.0 : Kernel::derivative(q[a] - q[c]);
        }
    }
    return d;
}

PeakonState::PeakonState(PeriodicGrid g, std::size_t peakons)
    : PeakonState(g, peakons, std::vector<double>(g.size() * peakons, 0.0),
                  std::vector<double>(g.size() * peakons, 0.0),
                  std::vector<double>(g.size() * peakons, 0.0)) {}

PeakonState::PeakonState(PeriodicGrid g, std::size_t peakons, std::vector<double> q,
                         std::vector<double> m, std::vector<double> n)
    : grid(g), count(peakons), Q(std::move(q)), M(std::move(m)), N(std::move(n)) {
    if (count == 0) {
        throw ValidationError("peakon count must be positive");
    }
    const auto expected = grid.size() * count;
    if (Q.size() != expected || M.size() != expected || N.size() != expected) {
        throw ValidationError("peakon parameter arrays do not match grid size x peakon count");
    }
}

namespace {

std::vector<double> column(const std::vector<double>& data, std::size_t count, std::size_t a,
                           std::size_t nodes) {
    std::vector<double> out(nodes);
    for (std::size_t j = 0; j < nodes; ++j) out[j] = data[j * count + a];
    return out;
}

// ∂ₛ of one peakon's parameter, for every peakon, in node-major layout.
std::vector<double> ds_all(const std::vector<double>& data, const PeakonState& s,
                           const DerivativeStencil& stencil) {
    std::vector<double> out(data.size());
    for (std::size_t a = 0; a < s.count; ++a) {
        const auto col = column(data, s.count, a, s.size());
        const auto d = stencil.apply<double>(std::span<const double>(col), s.grid.spacing());
        for (std::size_t j = 0; j < s.size(); ++j) out[s.index(j, a)] = d[j];
    }
    return out;
}

void check_separation(std::span<const double> q, double min_gap, std::size_t node) {
    std::vector<double> sorted(q.begin(), q.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t a = 1; a < sorted.size(); ++a) {
        if (!(sorted[a] - sorted[a - 1] >= min_gap)) {
            throw SingularConfigurationError("coincident peakons at s-node " + std::to_string(node));
        }
    }
}

Eigen::VectorXd solve_kernel_system(const Eigen::MatrixXd& k, const Eigen::VectorXd& rhs,
                                    const PeakonOptions& options, std::size_t node) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || hi / lo > options.max_condition) {
        throw ConditioningError("kernel matrix ill-conditioned at s-node " + std::to_string(node));
    }
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    if (llt.info() != Eigen::Success) {
        throw ConditioningError("kernel matrix not positive definite at s-node " +
                                std::to_string(node));
    }
    return llt.solve(rhs);
}

}  // namespace

std::vector<double> PeakonState::Q_of(std::size_t a) const { return column(Q, count, a, size()); }
std::vector<double> PeakonState::M_of(std::size_t a) const { return column(M, count, a, size()); }
std::vector<double> PeakonState::N_of(std::size_t a) const { return column(N, count, a, size()); }

PeakonState& PeakonState::operator+=(const PeakonState& other) {
    for (std::size_t i = 0; i < Q.size(); ++i) {
        Q[i] += other.Q[i];
        M[i] += other.M[i];
        N[i] += other.N[i];
    }
    return *this;
}

PeakonState& PeakonState::operator*=(double a) {
    for (std::size_t i = 0; i < Q.size(); ++i) {
        Q[i] *= a;
        M[i] *= a;
        N[i] *= a;
    }
    return *this;
}

bool PeakonState::all_finite() const {
    auto finite = [](const std::vector<double>& x) {
        return std::all_of(x.begin(), x.end(), [](double y) { return std::isfinite(y); });
    };
    return finite(Q) && finite(M) && finite(N);
}

PeakonState operator+(PeakonState a, const PeakonState& b) { return a += b; }
PeakonState operator*(double a, PeakonState s) { return s *= a; }

FieldSample reconstruct_fields(std::span<const double> q, std::span<const double> m,
                               std::span<const double> n, std::span<const double> x) {
    if (m.size() != q.size() || n.size() != q.size()) {
        throw ValidationError("reconstruct_fields: Q, M, N lengths differ");
    }
    FieldSample out;
    out.x.assign(x.begin(), x.end());
    out.u.assign(x.size(), 0.0);
    out.v.assign(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t a = 0; a < q.size(); ++a) {
            const double k = Kernel::eval(x[i], q[a]);
            out.u[i] += m[a] * k;
            out.v[i] -= n[a] * k;
        }
    }
    for (std::size_t a = 0; a < q.size(); ++a) {
        out.m_atoms.push_back({q[a], m[a]});
        out.n_atoms.push_back({q[a], n[a]});
    }
    return out;
}

PeakonState peakon_rhs(const PeakonState& state, const DerivativeStencil& stencil,
                       const PeakonOptions& options) {
    const std::size_t count = state.count;
    const auto dM = ds_all(state.M, state, stencil);
    const auto dN = ds_all(state.N, state, stencil);

    PeakonState out(state.grid, count);
    for (std::size_t j = 0; j < state.size(); ++j) {
        const auto q = state.Q_at(j);
        const auto m = state.M_at(j);
        const auto n = state.N_at(j);
        check_separation(q, options.min_gap, j);

        const Eigen::MatrixXd k = kernel_matrix(q);
        const Eigen::MatrixXd dk = kernel_deriv(q);
        const Eigen::Map<const Eigen::VectorXd> mv(m.data(), static_cast<Eigen::Index>(count));
        const Eigen::VectorXd qt = k * mv;

        Eigen::VectorXd t(static_cast<Eigen::Index>(count));
        for (std::size_t e = 0; e < count; ++e) {
            double sum = 0.0;
            for (std::size_t c = 0; c < count; ++c) {
                const double dkec = dk(e, c);
                if (dkec == 0.0) continue;
                double inner = 0.0;
                for (std::size_t b = 0; b < count; ++b) {
                    inner += (n[b] * m[c] - m[b] * n[c]) * (k(e, b) - k(c, b));
                }
                sum += dkec * inner;
            }
            t(e) = sum;
        }
        const Eigen::VectorXd y = solve_kernel_system(k, t, options, j);

        for (std::size_t a = 0; a < count; ++a) {
            double force = 0.0;
            for (std::size_t c = 0; c < count; ++c) {
                force += (m[a] * m[c] - n[a] * n[c]) * dk(a, c);
            }
            const auto i = state.index(j, a);
            out.Q[i] = qt(a);
            out.M[i] = -dN[i] - force;
            out.N[i] = -dM[i] + y(a);
        }
    }
    return out;
}

double s_constraint_residual(const PeakonState& state, const DerivativeStencil& stencil) {
    const auto dQ = ds_all(state.Q, state, stencil);
    double worst = 0.0;
    for (std::size_t j = 0; j < state.size(); ++j) {
        const auto q = state.Q_at(j);
        const auto n = state.N_at(j);
        for (std::size_t a = 0; a < state.count; ++a) {
            double v = 0.0;
            for (std::size_t b = 0; b < state.count; ++b) v += n[b] * Kernel::eval(q[a], q[b]);
            worst = std::max(worst, std::abs(dQ[state.index(j, a)] + v));
        }
    }
    return worst;
}

PeakonState collision_pair_rhs(const PeakonState& state, const DerivativeStencil& stencil) {
    if (state.count != 2) {
        throw ValidationError("collision_pair_rhs needs exactly two peakons");
    }
    const auto dM = ds_all(state.M, state, stencil);
    const auto dN = ds_all(state.N, state, stencil);
    constexpr double k0 = Kernel::K0;

    PeakonState out(state.grid, 2);
    for (std::size_t j = 0; j < state.size(); ++j) {
        const auto i1 = state.index(j, 0);
        const auto i2 = state.index(j, 1);
        const double m1 = state.M[i1], m2 = state.M[i2];
        const double n1 = state.N[i1], n2 = state.N[i2];
        const double x = state.Q[i1] - state.Q[i2];
        const double k = Kernel::eval(x);
        const double kp = Kernel::derivative(x);

        const double xt = (m1 - m2) * (k0 - k);
        const double centre_t = (m1 + m2) * (k0 + k);
        out.Q[i1] = 0.5 * (centre_t + xt);
        out.Q[i2] = 0.5 * (centre_t - xt);

        const double mm = (m1 * m2 - n1 * n2) * kp;
        out.M[i1] = -dN[i1] - mm;
        out.M[i2] = -dN[i2] + mm;

        const double nn = (n1 * m2 - m1 * n2) * (k0 - k) / (k0 + k) * kp;
        out.N[i1] = -dM[i1] + nn;
        out.N[i2] = -dM[i2] + nn;
    }
    return out;
}

}  // namespace gstrand
