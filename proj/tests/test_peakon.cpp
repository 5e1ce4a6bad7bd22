#include <doctest.h>

#include <numbers>

#include "gstrand/errors.hpp"
#include "gstrand/integrator.hpp"
#include "gstrand/peakon.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace gstrand;
using testing::max_abs_diff;

namespace {

const PeriodicGrid kGrid(2.0 * std::numbers::pi, 16);

PeakonState uniform_state(std::size_t count, const std::vector<double>& q, const std::vector<double>& m,
                          const std::vector<double>& n) {
    PeakonState s(kGrid, count);
    for (std::size_t j = 0; j < kGrid.size(); ++j)
        for (std::size_t a = 0; a < count; ++a) {
            s.Q[s.index(j, a)] = q[a];
            s.M[s.index(j, a)] = m[a];
            s.N[s.index(j, a)] = n[a];
        }
    return s;
}

double max_abs(const std::vector<double>& x) {
    double w = 0.0;
    for (double v : x) w = std::max(w, std::abs(v));
    return w;
}

// Smooth compactly supported bump on (c − w, c + w) and its second derivative.
double bump(double x, double c, double w) {
    const double y = (x - c) / w;
    return std::abs(y) < 1.0 ? std::exp(-1.0 / (1.0 - y * y)) : 0.0;
}

double bump_dd(double x, double c, double w) {
    const double y = (x - c) / w;
    if (std::abs(y) >= 1.0) return 0.0;
    const double d = 1.0 - y * y;
    // d²/dy² exp(−1/d) = exp(−1/d)·(6y⁴ − 2) / d⁴
    return std::exp(-1.0 / d) * (6.0 * std::pow(y, 4) - 2.0) / std::pow(d, 4) / (w * w);
}

}  // namespace

TEST_SUITE("peakon_dynamics") {

TEST_CASE("kernel values") {
    CHECK(Kernel::eval(0.0, 0.0) == 0.5);
    CHECK(Kernel::eval(1.0, 0.0) == doctest::Approx(0.1839397).epsilon(1e-7));
    CHECK(Kernel::eval(1.3, -0.4) == Kernel::eval(-0.4, 1.3));
    CHECK(Kernel::derivative(0.0) == 0.0);
    CHECK(Kernel::derivative(0.7) == doctest::Approx(-0.5 * std::exp(-0.7)).epsilon(1e-15));
    CHECK(Kernel::derivative(-0.7) == doctest::Approx(0.5 * std::exp(-0.7)).epsilon(1e-15));
    testing::Rng rng(51);
    for (int i = 0; i < 100; ++i) {
        const double x = rng.uniform(-5, 5), y = rng.uniform(-5, 5);
        CHECK(Kernel::eval(x, y) > 0.0);
        CHECK(Kernel::eval(x, y) <= Kernel::K0);
    }
}

TEST_CASE("kernel matrices") {
    const std::vector<double> q{-1.0, 0.2, 1.5, 3.0};
    const auto k = kernel_matrix(q);
    const auto d = kernel_deriv(q);
    CHECK((k - k.transpose()).cwiseAbs().maxCoeff() == 0.0);
    for (int a = 0; a < 4; ++a) {
        CHECK(k(a, a) == 0.5);
        CHECK(d(a, a) == 0.0);
        for (int c = 0; c < 4; ++c) {
            CHECK(d(a, c) == doctest::Approx(oracle::dK(q[a], q[c])).epsilon(1e-15));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("field reconstruction") {
    const std::vector<double> q{0.0}, m{1.0}, n{0.0}, x{0.0, 1.0};
    const auto f = reconstruct_fields(q, m, n, x);
    CHECK(f.u[0] == 0.5);
    CHECK(f.u[1] == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-15));
    CHECK(f.m_atoms.size() == 1);
    CHECK(f.m_atoms[0].position == 0.0);
    CHECK(f.m_atoms[0].weight == 1.0);

    const std::vector<double> q2{-1.0, 2.0}, z{0.0, 0.0}, nn{0.5, -2.0};
    const auto g = reconstruct_fields(q2, z, z, x);
    CHECK(max_abs(g.u) == 0.0);
    CHECK(max_abs(g.v) == 0.0);
    const auto h = reconstruct_fields(q2, z, nn, std::vector<double>{2.0});
    CHECK(h.v[0] == doctest::Approx(-(0.5 * 0.5 * std::exp(-3.0) - 2.0 * 0.5)).epsilon(1e-15));
    CHECK_THROWS_AS(reconstruct_fields(q2, m, z, x), ValidationError);
}

TEST_CASE("reconstructed velocity solves the Helmholtz equation weakly") {
    const std::vector<double> q{-0.8, 0.3, 1.1}, m{1.0, -0.5, 2.0}, n{0.0, 0.0, 0.0};
    const double c = 0.2, w = 2.5;
    // ∫ u (φ − φ″) dx by composite Simpson on a fine grid, split at the peaks.
    std::vector<double> breaks{c - w, q[0], q[1], q[2], c + w};
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        integral += oracle::simpson(
            [&](double x) {
                const double u = reconstruct_fields(q, m, n, std::vector<double>{x}).u[0];
                return u * (bump(x, c, w) - bump_dd(x, c, w));
            },
            breaks[i], breaks[i + 1], 1e-11);
    }
    double expected = 0.0;
    for (std::size_t a = 0; a < q.size(); ++a) expected += m[a] * bump(q[a], c, w);
    CHECK(std::abs(integral - expected) <= 1e-6);
}

TEST_CASE("single peakon reduces to the linear system") {
    testing::Rng rng(52);
    PeakonState s(kGrid, 1);
    for (std::size_t j = 0; j < kGrid.size(); ++j) {
        s.Q[j] = rng.uniform();
        s.M[j] = rng.uniform();
        s.N[j] = rng.uniform();
    }
    const DerivativeStencil st(2);
    const auto r = peakon_rhs(s, st);
    const auto dM = st.apply<double>(std::span<const double>(s.M), kGrid.spacing());
    const auto dN = st.apply<double>(std::span<const double>(s.N), kGrid.spacing());
    for (std::size_t j = 0; j < kGrid.size(); ++j) {
        CHECK(r.Q[j] == s.M[j] * Kernel::K0);
        CHECK(r.M[j] == -dN[j]);
        CHECK(r.N[j] == -dM[j]);
    }
}

TEST_CASE("zero momenta with s-independent positions stay at rest") {
    const auto s = uniform_state(3, {-1.0, 0.5, 2.0}, {0, 0, 0}, {0, 0, 0});
    const auto r = peakon_rhs(s, DerivativeStencil(2));
    CHECK(max_abs(r.Q) == 0.0);
    CHECK(max_abs(r.M) == 0.0);
    CHECK(max_abs(r.N) == 0.0);
}

TEST_CASE("symmetric pair: separation rate") {
    const double mu = 0.7, nu = -0.3, q = 0.4;
    const auto s = uniform_state(2, {q, -q}, {mu, -mu}, {nu, -nu});
    const auto r = peakon_rhs(s, DerivativeStencil(2));
    const double gap = Kernel::K0 - Kernel::eval(2.0 * q);
    CHECK(r.Q[0] == doctest::Approx(mu * gap).epsilon(1e-14));
    CHECK(r.Q[0] - r.Q[1] == doctest::Approx(2.0 * mu * gap).epsilon(1e-14));
}

TEST_CASE("general system against the written-out oracle") {
    testing::Rng rng(53);
    for (std::size_t count : {1, 2, 3, 5}) {
        for (int order : {2, 4}) {
            const auto s = rng.peakons(kGrid, count);
            const auto r = peakon_rhs(s, DerivativeStencil(order));
            const auto o = oracle::peakon(s.Q, s.M, s.N, count, kGrid.spacing(), order);
            CHECK(max_abs_diff(r.Q, o.Q) <= 1e-12);
            CHECK(max_abs_diff(r.M, o.M) <= 1e-12);
            CHECK(max_abs_diff(r.N, o.N) <= 1e-12);
        }
    }
}

TEST_CASE("two-peakon specialization matches the general system") {
    testing::Rng rng(54);
    for (int i = 0; i < 50; ++i) {
        const auto s = rng.peakons(kGrid, 2, 1e-3);
        const DerivativeStencil st(2);
        const auto a = peakon_rhs(s, st);
        const auto b = collision_pair_rhs(s, st);
        CHECK(max_abs_diff(a.Q, b.Q) <= 1e-12);
        CHECK(max_abs_diff(a.M, b.M) <= 1e-12);
        CHECK(max_abs_diff(a.N, b.N) <= 1e-12);
    }
    CHECK_THROWS_AS(collision_pair_rhs(PeakonState(kGrid, 3), DerivativeStencil(2)), ValidationError);
}

TEST_CASE("coincident peakons raise a singular-configuration error") {
    const auto s = uniform_state(2, {0.3, 0.3}, {1, -1}, {0, 0});
    CHECK_THROWS_AS(peakon_rhs(s, DerivativeStencil(2)), SingularConfigurationError);
    const auto close = uniform_state(2, {0.3, 0.3 + 1e-9}, {1, -1}, {0, 0});
    CHECK_THROWS_AS(peakon_rhs(close, DerivativeStencil(2)), SingularConfigurationError);
}

TEST_CASE("near-coincident peakons raise a conditioning error when the gap guard is off") {
    const auto s = uniform_state(2, {0.3, 0.3 + 1e-13}, {1, -1}, {0, 0});
    PeakonOptions opts;
    opts.min_gap = 0.0;
    CHECK_THROWS_AS(peakon_rhs(s, DerivativeStencil(2), opts), ConditioningError);
    opts.max_condition = 1e15;
    CHECK_NOTHROW(peakon_rhs(s, DerivativeStencil(2), opts));
}

TEST_CASE("s-constraint residual") {
    const auto rest = uniform_state(1, {0.4}, {1.0}, {0.0});
    CHECK(s_constraint_residual(rest, DerivativeStencil(2)) == 0.0);

    // Q = sin s, N = −cos s / K₀ satisfies ∂ₛQ = −N K₀.
    PeakonState s(kGrid, 1);
    for (std::size_t j = 0; j < kGrid.size(); ++j) {
        s.Q[j] = std::sin(kGrid.node(j));
        s.N[j] = -std::cos(kGrid.node(j)) / Kernel::K0;
    }
    const double ds = kGrid.spacing();
    CHECK(s_constraint_residual(s, DerivativeStencil(2)) <= ds * ds / 6.0);
    for (auto& n : s.N) n *= 2.0;
    CHECK(s_constraint_residual(s, DerivativeStencil(2)) > 0.5);
}

TEST_CASE("pair conservation sums along a trajectory") {
    const PeriodicGrid g(2.0 * std::numbers::pi, 32);
    PeakonState s(g, 2);
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double x = g.node(j);
        s.Q[s.index(j, 0)] = 1.0 + 0.2 * std::sin(x);
        s.Q[s.index(j, 1)] = -1.0;
        s.M[s.index(j, 0)] = 0.5 + 0.1 * std::cos(x);
        s.M[s.index(j, 1)] = -0.3;
        s.N[s.index(j, 0)] = 0.2 * std::sin(2 * x);
        s.N[s.index(j, 1)] = 0.1;
    }
    auto sums = [](const PeakonState& p) {
        double m = 0.0, n = 0.0;
        for (std::size_t j = 0; j < p.size(); ++j) {
            m += p.M[p.index(j, 0)] + p.M[p.index(j, 1)];
            n += p.N[p.index(j, 0)] - p.N[p.index(j, 1)];
        }
        return std::pair{m, n};
    };
    const auto [m0, n0] = sums(s);
    const auto end = integrate(s, [](const PeakonState& p) { return peakon_rhs(p, DerivativeStencil(2)); }, 0.02, 50);
    const auto [m1, n1] = sums(end);
    CHECK(std::abs(m1 - m0) <= 1e-12);
    CHECK(std::abs(n1 - n0) <= 1e-12);
}

TEST_CASE("state validation") {
    CHECK_THROWS_AS(PeakonState(kGrid, 0), ValidationError);
    CHECK_THROWS_AS(PeakonState(kGrid, 2, std::vector<double>(5), std::vector<double>(32), std::vector<double>(32)),
                    ValidationError);
}

}
