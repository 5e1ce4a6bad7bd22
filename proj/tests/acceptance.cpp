// Acceptance checks 1-10. One PASS/FAIL line per criterion, INFO lines for
// supporting numbers. Exit status is non-zero when any criterion fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gstrand/algebra.hpp"
#include "gstrand/analytic.hpp"
#include "gstrand/config.hpp"
#include "gstrand/errors.hpp"
#include "gstrand/integrability.hpp"
#include "gstrand/integrator.hpp"
#include "gstrand/output.hpp"
#include "gstrand/peakon.hpp"
#include "gstrand/registry.hpp"
#include "gstrand/scenario.hpp"
#include "gstrand/so3_dynamics.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace gstrand;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int failures = 0;

std::string num(double x) { return format_short(x); }

void verdict(int id, bool pass, const std::string& what) {
    std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", what.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

void info(const std::string& what) {
    std::printf("        info: %s\n", what.c_str());
    std::fflush(stdout);
}

ScenarioConfig builtin(const std::string& name) {
    auto cfg = parse_config(builtin_scenario(name).config_json);
    cfg.output.directory.clear();
    return cfg;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double max_diff(const VectorField& a, const VectorField& b) { return testing::max_abs_diff(a, b); }

// ---------------------------------------------------------------------------

void criterion1() {
    testing::Rng rng(1001);
    double adj = 0.0, comm = 0.0, pair = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const So3Vector u = rng.vec3(), v = rng.vec3(), m = rng.vec3();
        adj = std::max(adj, std::abs(ad_star(u, m).dot(v) - m.dot(u.cross(v))));
        comm = std::max(comm, (hat(ad(u, v)) - commutator(hat(u), hat(v))).cwiseAbs().maxCoeff());
        pair = std::max(pair, std::abs(pairing(hat(u), hat(v)) - u.dot(v)));
    }
    verdict(1, adj <= 1e-12 && comm <= 1e-12 && pair <= 1e-12,
            "algebra identities, 1000 samples: adjointness " + num(adj) + ", hat/commutator " + num(comm) +
                ", pairing " + num(pair) + " (tol 1e-12)");
}

void criterion2() {
    const PeriodicGrid g(kTwoPi, 64);
    const DerivativeStencil st(2);
    const SpinChainParams p{DiagonalParams({1, 2, 3}, DiagonalParams::Role::InertiaA),
                            DiagonalParams({2, 1, 1}, DiagonalParams::Role::InertiaB)};
    testing::Rng rng(1002);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto s = rng.state(g);
        VectorField m(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) m[j] = p.A.apply(s.u[j]);
        const auto lp = lie_poisson_rhs_spin_chain(m, s.v, p, g, st);
        const auto ep = spin_chain_rhs(s, p, st);
        VectorField m_t(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) m_t[j] = p.A.apply(ep.u[j]);
        worst = std::max({worst, max_diff(lp.m_t, m_t), max_diff(lp.v_t, ep.v)});
    }
    verdict(2, worst <= 1e-12, "EP vs Lie-Poisson spin chain, 100 states, N_s 64: max diff " + num(worst) +
                                   " (tol 1e-12)");
}

// Per-step comparison of the lambda = 1 Lax residual with the discrete
// compatibility residual, on the chiral trajectory at the config's grid.
double lambda1_mirror(const ScenarioConfig& cfg) {
    const PeriodicGrid g(cfg.grid.S, cfg.grid.N_s);
    const DerivativeStencil st(cfg.grid.stencil_order);
    VectorField u(g.size()), v(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double s = g.node(j);
        u[j] = So3Vector(std::sin(s), 0.0, std::cos(s));
        v[j] = So3Vector(0.0, std::cos(s), 0.0);
    }
    std::vector<So3StrandState> traj;
    integrate(So3StrandState(g, u, v), [&](const So3StrandState& s) { return chiral_rhs(s, st); }, cfg.grid.dt,
              cfg.grid.steps, [&](std::size_t, double, const So3StrandState& s) { traj.push_back(s); });
    double worst = 0.0;
    for (std::size_t k = 0; k + 2 < traj.size(); ++k) {
        std::vector<LaxConnection> lax;
        for (std::size_t i = k; i < k + 3; ++i) lax.push_back(chiral_lax(traj[i], 1.0));
        const auto zc = zero_curvature_residual(lax, g, st, cfg.grid.dt);
        const auto cr = compatibility_residual(std::span<const So3StrandState>(traj.data() + k, 3), st, cfg.grid.dt);
        for (std::size_t j = 0; j < g.size(); ++j) {
            worst = std::max(worst, (zc.fields[0][j] + hat(cr.fields[0][j])).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

void criterion3() {
    const auto cfg = builtin("chiral_smooth");
    const auto table = convergence_study(cfg, 3);
    bool pass = true;
    std::string detail;
    for (const char* col : {"lax_0.5", "lax_1", "lax_2"}) {
        const auto& c = table.column("zero_curvature", col);
        double lo = 1e300;
        for (const auto& o : c.orders) lo = std::min(lo, o ? *o : -1e300);
        pass = pass && lo >= 1.8;
        detail += std::string(col) + " order " + num(lo) + ", ";
        info(std::string(col) + " errors " + num(c.errors[0]) + " " + num(c.errors[1]) + " " + num(c.errors[2]));
    }
    // lambda = -1 gives U = -hat(u + v), V = -hat(u + v): the residual vanishes
    // identically on any trajectory, so there is no order to measure.
    const auto& m1 = table.column("zero_curvature", "lax_-1");
    double m1_max = 0.0;
    for (double e : m1.errors) m1_max = std::max(m1_max, e);
    pass = pass && m1_max <= kConvergenceFloor;
    detail += "lax_-1 max " + num(m1_max) + " (degenerate, identically 0), ";
    double mirror = 0.0;
    for (const auto& level : {cfg, refined(cfg), refined(refined(cfg))}) mirror = std::max(mirror, lambda1_mirror(level));
    pass = pass && mirror <= 1e-13;
    detail += "lambda=1 vs compatibility residual " + num(mirror) + " (tol 1e-13)";
    verdict(3, pass, "chiral zero curvature, N_s 64/128/256, min order >= 1.8: " + detail);
}

void criterion4() {
    auto cfg = builtin("aniso_unit_sphere");
    const auto coarse = run_scenario(cfg);
    const auto& d = coarse.series("invariant_drift");
    const double dx = d.max_abs("max_X_drift"), dy = d.max_abs("max_Y_drift");

    // Temporal order with the grid held fixed. Per-node drift also carries
    // the spatial transport error, which does not shrink with dt; the sums
    // are exactly conserved by the semi-discrete system.
    auto with_dt = [&](double dt) {
        auto c = cfg;
        c.grid.dt = dt;
        c.output.cadence = static_cast<std::size_t>(std::lround(cfg.grid.dt / dt * static_cast<double>(cfg.output.cadence)));
        validate(c);
        return run_scenario(c).series("invariant_drift");
    };
    const auto half = with_dt(cfg.grid.dt / 2);
    const double ox = std::log2(d.max_abs("X_sum_drift") / half.max_abs("X_sum_drift"));
    const double oy = std::log2(d.max_abs("Y_sum_drift") / half.max_abs("Y_sum_drift"));
    info("sum drifts dt=" + num(cfg.grid.dt) + ": " + num(d.max_abs("X_sum_drift")) + ", " +
         num(d.max_abs("Y_sum_drift")) + "; dt/2: " + num(half.max_abs("X_sum_drift")) + ", " +
         num(half.max_abs("Y_sum_drift")));
    info("per-node drift dt/2: " + num(half.max_abs("max_X_drift")) + ", " + num(half.max_abs("max_Y_drift")));
    verdict(4, dx <= 1e-6 && dy <= 1e-6 && ox >= 3.5 && oy >= 3.5,
            "aniso magnitudes, N_s 128, dt 5e-3: per-node drift |X|^2 " + num(dx) + ", |Y|^2 " + num(dy) +
                " (tol 1e-6); dt-halving order of integrated drift " + num(ox) + ", " + num(oy) + " (>= 3.5)");
}

void criterion5() {
    const PeriodicGrid g(kTwoPi, 64);
    const DerivativeStencil st(2);
    const auto id = DiagonalParams::identity(DiagonalParams::Role::AnisotropyP);
    testing::Rng rng(1005);
    double worst = 0.0, literal = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto s = rng.state(g), rate = rng.state(g);
        const auto aniso = aniso_residual(s, rate, id, st);
        worst = std::max(worst, testing::max_abs_diff(chiral_residual(2.0 * s, 2.0 * rate, st), 2.0 * aniso));
        literal = std::max(literal, testing::max_abs_diff(2.0 * chiral_residual(0.5 * s, 0.5 * rate, st), aniso));
    }
    info("halved form 2*ChiralResidual(u/2, v/2) vs AnisoResidual(u, v): " + num(literal) +
         " (differs by the quadratic term, not an identity)");
    verdict(5, worst <= 1e-13, "P = Id scaling ChiralResidual(2u, 2v) = 2*AnisoResidual(u, v), 100 states: " +
                                   num(worst) + " (tol 1e-13)");
}

void criterion6() {
    const auto cfg = builtin("single_peakon");
    const auto table = convergence_study(cfg, 3);
    const auto& base = table.levels[0].report;
    const double q_err = base.series("exact_error").max_abs("max_Q_error");
    auto min_order = [&](const char* d, const char* c) {
        double lo = 1e300;
        for (const auto& o : table.column(d, c).orders) lo = std::min(lo, o ? *o : -1e300);
        return lo;
    };
    const double oq = min_order("exact_error", "max_Q_error");
    const double ow = min_order("wave_residual", "max_wave_residual");
    // bounded by C(ds^2 + dt^2): the constant must not grow under refinement
    std::vector<double> cs;
    for (const auto& l : table.levels) {
        const double h2 = l.report.ds * l.report.ds + l.dt * l.dt;
        cs.push_back(l.report.series("s_constraint").max_abs("s_constraint_residual") / h2);
    }
    const bool bounded = cs[1] <= 1.1 * cs[0] && cs[2] <= 1.1 * cs[0];
    info("s-constraint C per level: " + num(cs[0]) + " " + num(cs[1]) + " " + num(cs[2]));
    info("max_Q_error per level: " + num(table.column("exact_error", "max_Q_error").errors[0]) + " " +
         num(table.column("exact_error", "max_Q_error").errors[1]) + " " +
         num(table.column("exact_error", "max_Q_error").errors[2]));
    verdict(6, q_err <= 1e-3 && oq >= 1.8 && ow >= 1.8 && bounded,
            "single peakon, N_s 256/512/1024: max |Q - h| " + num(q_err) + " (tol 1e-3), Q order " + num(oq) +
                ", wave residual order " + num(ow) + " (>= 1.8), s-constraint C(ds^2+dt^2) " +
                (bounded ? "bounded" : "growing"));
}

struct CollisionOutcome {
    std::string failure;
    double x_error = 0.0;
    double sum_m_drift = 0.0;
    double diff_n_drift = 0.0;
    PotentialsReport numeric;
    PotentialsReport exact;
};

// Integrates the two-peakon system from collision_exact data at t = 0 and
// compares with the closed form over [0, 1].
CollisionOutcome run_collision(const WaveProfile& h, std::size_t n_s) {
    CollisionOutcome out;
    const CollisionSolution sol(h, 1);
    const PeriodicGrid g(kTwoPi, n_s);
    const DerivativeStencil st(2);
    const double dt = 1.0 / std::ceil(1.0 / (0.25 * g.spacing()));
    const auto steps = static_cast<std::size_t>(std::lround(1.0 / dt));
    try {
        PeakonState s(g, 2);
        for (std::size_t j = 0; j < n_s; ++j) {
            const auto v = collision_exact(sol, g.node(j), 0.0);
            s.Q[s.index(j, 0)] = v.Q1;
            s.Q[s.index(j, 1)] = v.Q2;
            s.M[s.index(j, 0)] = v.M1;
            s.M[s.index(j, 1)] = v.M2;
            s.N[s.index(j, 0)] = v.N1;
            s.N[s.index(j, 1)] = v.N2;
        }
        CollisionSamples num, ex;
        num.ds = ex.ds = g.spacing();
        num.dt = ex.dt = dt;
        for (auto* m : {&num.M1, &num.M2, &num.N1, &num.N2, &num.X, &ex.M1, &ex.M2, &ex.N1, &ex.N2, &ex.X})
            m->resize(static_cast<Eigen::Index>(steps + 1), static_cast<Eigen::Index>(n_s));
        double m0 = 0.0, n0 = 0.0;
        integrate(s, [&](const PeakonState& p) { return peakon_rhs(p, st); }, dt, steps,
                  [&](std::size_t n, double t, const PeakonState& p) {
                      double msum = 0.0, nsum = 0.0;
                      const auto i = static_cast<Eigen::Index>(n);
                      for (std::size_t j = 0; j < n_s; ++j) {
                          const auto jj = static_cast<Eigen::Index>(j);
                          const double x = p.Q[p.index(j, 0)] - p.Q[p.index(j, 1)];
                          out.x_error = std::max(out.x_error, std::abs(x - collision_separation(sol, g.node(j), t)));
                          msum += (p.M[p.index(j, 0)] + p.M[p.index(j, 1)]) * g.spacing();
                          nsum += (p.N[p.index(j, 0)] - p.N[p.index(j, 1)]) * g.spacing();
                          num.X(i, jj) = x;
                          num.M1(i, jj) = p.M[p.index(j, 0)];
                          num.M2(i, jj) = p.M[p.index(j, 1)];
                          num.N1(i, jj) = p.N[p.index(j, 0)];
                          num.N2(i, jj) = p.N[p.index(j, 1)];
                          const auto e = collision_exact(sol, g.node(j), t);
                          ex.X(i, jj) = e.X;
                          ex.M1(i, jj) = e.M1;
                          ex.M2(i, jj) = e.M2;
                          ex.N1(i, jj) = e.N1;
                          ex.N2(i, jj) = e.N2;
                      }
                      if (n == 0) {
                          m0 = msum;
                          n0 = nsum;
                      }
                      out.sum_m_drift = std::max(out.sum_m_drift, std::abs(msum - m0));
                      out.diff_n_drift = std::max(out.diff_n_drift, std::abs(nsum - n0));
                  });
        out.numeric = potentials_resolve(num);
        out.exact = potentials_resolve(ex);
    } catch (const RuntimeFailure& e) {
        // untimed failures come from building the t = 0 data
        out.failure = std::string(e.kind()) + " at t = " + num(e.time().value_or(0.0)) + ": " + e.what();
    }
    return out;
}

// Truncation tolerance for the potentials check: twice the residual of the
// exact solution sampled on the same (s, t) grid, and round-off for the
// identically-zero curl and phi gradients.
bool potentials_ok(const CollisionOutcome& o) {
    return o.numeric.max_M_difference_residual <= 2.0 * o.exact.max_M_difference_residual &&
           o.numeric.max_N_difference_residual <= 2.0 * o.exact.max_N_difference_residual &&
           o.numeric.max_curl_residual <= 1e-8 && o.numeric.max_phi_s <= 1e-8 && o.numeric.max_phi_t <= 1e-8;
}

std::string describe(const CollisionOutcome& o) {
    if (!o.failure.empty()) return "run failed, " + o.failure;
    return "max |X - ln cosh^2 h| " + num(o.x_error) + " (tol 1e-3), sum drift M1+M2 " + num(o.sum_m_drift) +
           ", N1-N2 " + num(o.diff_n_drift) + " (tol 1e-8), potentials M " +
           num(o.numeric.max_M_difference_residual) + "/" + num(o.exact.max_M_difference_residual) + " N " +
           num(o.numeric.max_N_difference_residual) + "/" + num(o.exact.max_N_difference_residual) + " curl " +
           num(o.numeric.max_curl_residual) + (potentials_ok(o) ? " ok" : " over tolerance");
}

bool collision_ok(const CollisionOutcome& o) {
    return o.failure.empty() && o.x_error <= 1e-3 && o.sum_m_drift <= 1e-8 && o.diff_n_drift <= 1e-8 &&
           potentials_ok(o);
}

void criterion7() {
    const auto literal = WaveProfile::standing(0.5, 1.0);
    // h vanishes on s = pi/2, 3pi/2 for all t: the pair coincides there and
    // N = -X_s / (2(K0 - K)) ~ tan s is unbounded next to those lines.
    const auto o = run_collision(literal, 256);
    const auto odd = run_collision(literal, 255);
    info("same profile, N_s 255 (no node on the collision lines): " + describe(odd));
    const auto offset =
        run_collision(WaveProfile::superposition({WaveProfile::constant(1.0), WaveProfile::standing(0.5, 1.0)}), 256);
    info("regular companion h = 1 + 0.5 cos s cos t, N_s 256: " + describe(offset) +
         (collision_ok(offset) ? " [meets all criterion-7 tolerances]" : " [misses a tolerance]"));
    verdict(7, collision_ok(o), "peakon-antipeakon pair, h = 0.5 cos s cos t, N_s 256: " + describe(o));
}

void criterion8() {
    double trip = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        const double x = -20.0 + 0.01 * i;
        trip = std::max(trip, std::abs(collision_F_inverse(collision_F(x)) - x));
    }
    double quad = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double x = -10.0 + 0.1 * i;
        quad = std::max(quad, std::abs(collision_F(x) - oracle::collision_F(x)));
    }
    const auto regular = WaveProfile::superposition({WaveProfile::constant(1.0), WaveProfile::standing(0.5, 1.0)});
    const auto literal = WaveProfile::standing(0.5, 1.0);
    const CollisionSolution a(regular, 1), b(literal, 1);
    double lin = 0.0;
    const double root8 = 2.0 * std::numbers::sqrt2;
    for (int i = 0; i < 64; ++i)
        for (int k = 0; k <= 20; ++k) {
            const double s = kTwoPi * i / 64.0, t = 0.05 * k;
            lin = std::max(lin, std::abs(collision_F(collision_separation(a, s, t)) - root8 * regular(s, t)));
            // h of either sign: the + branch gives F(X) = 2 sqrt2 |h|
            lin = std::max(lin, std::abs(collision_F(collision_separation(b, s, t)) - root8 * std::abs(literal(s, t))));
        }
    verdict(8, trip <= 1e-12 && quad <= 1e-8 && lin <= 1e-12,
            "F round trip on [-20, 20] " + num(trip) + " (tol 1e-12), F vs quadrature on [-10, 10] " + num(quad) +
                " (tol 1e-8), F(X) = 2 sqrt2 h " + num(lin) + " (tol 1e-12)");
}

void criterion9() {
    const PeriodicGrid g(kTwoPi, 32);
    const DerivativeStencil st(2);
    testing::Rng rng(1009);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto s = rng.peakons(g, 2, 1e-3);
        const auto a = peakon_rhs(s, st);
        const auto b = collision_pair_rhs(s, st);
        worst = std::max({worst, testing::max_abs_diff(a.Q, b.Q), testing::max_abs_diff(a.M, b.M),
                          testing::max_abs_diff(a.N, b.N)});
    }
    verdict(9, worst <= 1e-12, "general A = 2 system vs written-out pair system, 100 states: " + num(worst) +
                                   " (tol 1e-12)");
}

template <class E>
bool raises(const std::function<void()>& f) {
    try {
        f();
    } catch (const E&) {
        return true;
    } catch (...) {
        return false;
    }
    return false;
}

void criterion10() {
    const auto root = fs::temp_directory_path() / "gstrand_acceptance";
    fs::remove_all(root);
    bool identical = true;
    std::size_t files = 0;
    {
        auto cfg = builtin("chiral_smooth");
        cfg.output.directory = (root / "a").string();
        run_scenario(cfg);
        cfg.output.directory = (root / "b").string();
        run_scenario(cfg);
        for (const auto& e : fs::directory_iterator(root / "a")) {
            identical = identical && fs::exists(root / "b" / e.path().filename()) &&
                        slurp(e.path()) == slurp(root / "b" / e.path().filename());
            ++files;
        }
    }

    const bool cfl = raises<ValidationError>([] {
        json j = json::parse(builtin_scenario("chiral_smooth").config_json);
        j["grid"].erase("cfl");
        const double ds = kTwoPi / 64.0;
        j["grid"]["dt"] = 2.0 * ds;
        j["grid"]["t_end"] = 20.0 * ds;
        parse_config(j.dump());
    });

    const bool blowup = raises<BlowUpError>([] {
        json j = json::parse(builtin_scenario("spin_chain_smooth").config_json);
        j["params"]["A"] = {1e-6, 1e-6, 1e-6};
        j["output"] = json::object();
        run_scenario(parse_config(j.dump()));
    });

    const bool singular = raises<SingularConfigurationError>([] {
        json j = json::parse(builtin_scenario("peakon_three").config_json);
        j["initial"]["Q"][1] = json::array({{{"fn", "const"}, {"amp", -2.0}}, {{"fn", "sin"}, {"amp", 0.1}}});
        j["output"] = json::object();
        run_scenario(parse_config(j.dump()));
    });
    fs::remove_all(root);

    verdict(10, identical && files > 0 && cfl && blowup && singular,
            std::string("determinism ") + (identical ? "byte-identical" : "DIFFERS") + " over " +
                std::to_string(files) + " files, CFL guard " + (cfl ? "raised" : "missing") + ", blow-up " +
                (blowup ? "raised" : "missing") + ", singular configuration " + (singular ? "raised" : "missing"));
}

}  // namespace

int main() {
    const std::vector<std::function<void()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                      criterion6, criterion7, criterion8, criterion9, criterion10};
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i]();
        } catch (const std::exception& e) {
            verdict(static_cast<int>(i + 1), false, std::string("unexpected exception: ") + e.what());
        }
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
