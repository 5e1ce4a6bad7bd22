#include "gstrand/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>

#include "gstrand/errors.hpp"
#include "gstrand/integrability.hpp"
#include "gstrand/integrator.hpp"
#include "gstrand/output.hpp"
#include "gstrand/so3_dynamics.hpp"

namespace gstrand {

std::size_t DiagnosticSeries::column_index(const std::string& column) const {
    auto it = std::find(columns.begin(), columns.end(), column);
    if (it == columns.end()) {
        throw ValidationError("diagnostic " + name + " has no column '" + column + "'");
    }
    return static_cast<std::size_t>(it - columns.begin());
}

double DiagnosticSeries::max_abs(const std::string& column) const {
    const auto c = column_index(column);
    double worst = 0.0;
    for (const auto& r : rows) {
        if (std::isnan(r[c])) return r[c];
        worst = std::max(worst, std::abs(r[c]));
    }
    return worst;
}

const DiagnosticSeries& RunReport::series(const std::string& name) const {
    for (const auto& s : diagnostics) {
        if (s.name == name) return s;
    }
    throw ValidationError("report has no diagnostic '" + name + "'");
}

const ConvergenceColumn& ConvergenceTable::column(const std::string& diagnostic,
                                                  const std::string& name) const {
    for (const auto& c : columns) {
        if (c.diagnostic == diagnostic && c.column == name) return c;
    }
    throw ValidationError("convergence table has no column " + diagnostic + "." + name);
}

namespace {

namespace fs = std::filesystem;

struct Context {
    const ScenarioConfig& cfg;
    PeriodicGrid grid;
    DerivativeStencil stencil;
    double dt;
    fs::path dir;  // empty: no files
    RunReport& report;
};

// window holds one state, or three consecutive states for centred entries.
template <class State>
struct Diagnostic {
    std::size_t series;
    bool centred;
    std::function<std::vector<double>(std::span<const State>, double)> eval;
    std::unique_ptr<CsvWriter> csv;
};

template <class State>
struct FieldOutput {
    std::function<void(const State&, std::size_t node, std::vector<double>&)> values;
    std::unique_ptr<CsvWriter> csv;
};

template <class State>
class Recorder {
public:
    explicit Recorder(Context& ctx) : ctx_(ctx) {}

    void add_diagnostic(std::string name, std::vector<std::string> columns, bool centred,
                        std::function<std::vector<double>(std::span<const State>, double)> eval) {
        std::unique_ptr<CsvWriter> csv;
        if (!ctx_.dir.empty()) {
            std::vector<std::string> header{"t"};
            header.insert(header.end(), columns.begin(), columns.end());
            csv = std::make_unique<CsvWriter>(ctx_.dir / (name + ".csv"), header);
        }
        ctx_.report.diagnostics.push_back({std::move(name), std::move(columns), {}, {}});
        diagnostics_.push_back({ctx_.report.diagnostics.size() - 1, centred, std::move(eval), std::move(csv)});
    }

    void add_field(const std::string& name, const std::vector<std::string>& value_columns,
                   std::function<void(const State&, std::size_t, std::vector<double>&)> values) {
        if (ctx_.dir.empty()) return;
        std::vector<std::string> header{"t", "s_index"};
        header.insert(header.end(), value_columns.begin(), value_columns.end());
        fields_.push_back({std::move(values), std::make_unique<CsvWriter>(ctx_.dir / (name + ".csv"), header)});
    }

    template <class Rhs>
    void run(State y, const Rhs& rhs) {
        const std::size_t cadence = ctx_.cfg.output.cadence;
        const std::size_t steps = ctx_.cfg.grid.steps;
        auto time_of = [&](std::size_t n) { return static_cast<double>(n) * ctx_.dt; };

        std::vector<State> window;
        window.reserve(4);
        window.push_back(std::move(y));
        try {
            sample(0, time_of(0), window.back(), steps);
            for (std::size_t n = 0; n < steps; ++n) {
                window.push_back(rk4_step(window.back(), rhs, ctx_.dt, time_of(n)));
                if (window.size() > 3) window.erase(window.begin());
                ctx_.report.steps_completed = n + 1;
                if (window.size() == 3 && n % cadence == 0) {
                    evaluate(true, time_of(n), std::span<const State>(window));
                }
                sample(n + 1, time_of(n + 1), window.back(), steps);
            }
        } catch (...) {
            flush();
            throw;
        }
        flush();
    }

private:
    void sample(std::size_t n, double t, const State& y, std::size_t steps) {
        if (n % ctx_.cfg.output.cadence != 0 && n != steps) return;
        evaluate(false, t, std::span<const State>(&y, 1));
        std::vector<double> values;
        for (auto& f : fields_) {
            for (std::size_t j = 0; j < ctx_.grid.size(); ++j) {
                values.clear();
                f.values(y, j, values);
                f.csv->row(t, j, values);
            }
        }
    }

    void evaluate(bool centred, double t, std::span<const State> window) {
        for (auto& d : diagnostics_) {
            if (d.centred != centred) continue;
            auto values = d.eval(window, t);
            auto& series = ctx_.report.diagnostics[d.series];
            if (d.csv) d.csv->row(t, values);
            series.times.push_back(t);
            series.rows.push_back(std::move(values));
        }
    }

    void flush() {
        for (auto& d : diagnostics_) {
            if (d.csv) d.csv->flush();
        }
        for (auto& f : fields_) f.csv->flush();
    }

    Context& ctx_;
    std::vector<Diagnostic<State>> diagnostics_;
    std::vector<FieldOutput<State>> fields_;
};

// ---- so(3) models ----------------------------------------------------------

VectorField sample_field(const ComponentSet& set, const PeriodicGrid& grid, bool normalize,
                         const char* name) {
    VectorField f(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        for (int c = 0; c < 3; ++c) f[j](c) = evaluate(set[static_cast<std::size_t>(c)], grid.node(j));
        if (normalize) {
            const double n = f[j].norm();
            if (!(n > 0.0)) {
                throw ValidationError(std::string("initial.") + name + " vanishes at s-node " +
                                      std::to_string(j) + "; cannot normalize");
            }
            f[j] /= n;
        }
    }
    return f;
}

So3StrandState as_uv(const So3StrandState& s) { return s; }
So3StrandState as_uv(const XYState& s) { return from_XY(s); }
XYState as_xy(const So3StrandState& s) { return to_XY(s); }
XYState as_xy(const XYState& s) { return s; }

template <class State>
void add_so3_fields(Recorder<State>& rec, const char* a, const char* b) {
    auto cols = [](const char* n) {
        return std::vector<std::string>{std::string(n) + "1", std::string(n) + "2", std::string(n) + "3"};
    };
    auto pick = [](bool first) {
        return [first](const State& s, std::size_t j, std::vector<double>& out) {
            const So3Vector& x = [&]() -> const So3Vector& {
                if constexpr (std::is_same_v<State, XYState>) return first ? s.X[j] : s.Y[j];
                else return first ? s.u[j] : s.v[j];
            }();
            out.assign(x.data(), x.data() + 3);
        };
    };
    rec.add_field(a, cols(a), pick(true));
    rec.add_field(b, cols(b), pick(false));
}

template <class State>
void add_so3_diagnostics(Recorder<State>& rec, Context& ctx, const XYState& first_xy) {
    const auto& cfg = ctx.cfg;
    const double dt = ctx.dt;
    for (const auto& req : cfg.diagnostics) {
        const std::string name(diagnostic_name(req.kind));
        switch (req.kind) {
            case DiagnosticKind::ZeroCurvature: {
                std::vector<std::string> cols{"compat_residual"};
                for (double l : req.lambdas) cols.push_back("lax_" + format_short(l));
                const auto lambdas = req.lambdas;
                rec.add_diagnostic(name, cols, true, [&ctx, lambdas, dt](std::span<const State> w, double) {
                    const std::vector<So3StrandState> uv{as_uv(w[0]), as_uv(w[1]), as_uv(w[2])};
                    std::vector<double> out{compatibility_residual(uv, ctx.stencil, dt).max_norm};
                    for (double l : lambdas) {
                        const std::vector<LaxConnection> lax{chiral_lax(uv[0], l), chiral_lax(uv[1], l),
                                                             chiral_lax(uv[2], l)};
                        out.push_back(zero_curvature_residual(lax, ctx.grid, ctx.stencil, dt).max_norm);
                    }
                    return out;
                });
                break;
            }
            case DiagnosticKind::Lax: {
                std::vector<std::string> cols;
                for (double l : req.lambdas) cols.push_back("lax_" + format_short(l));
                const auto lambdas = req.lambdas;
                const DiagonalParams p =
                    lax_anisotropy_for(DiagonalParams(*cfg.params.P, DiagonalParams::Role::AnisotropyP));
                rec.add_diagnostic(name, cols, true, [&ctx, lambdas, p, dt](std::span<const State> w, double) {
                    const std::vector<So3StrandState> uv{as_uv(w[0]), as_uv(w[1]), as_uv(w[2])};
                    std::vector<double> out;
                    for (double l : lambdas) {
                        const std::vector<LaxConnection> lax{aniso_lax(uv[0], l, p), aniso_lax(uv[1], l, p),
                                                             aniso_lax(uv[2], l, p)};
                        out.push_back(zero_curvature_residual(lax, ctx.grid, ctx.stencil, dt).max_norm);
                    }
                    return out;
                });
                break;
            }
            case DiagnosticKind::InvariantDrift:
                rec.add_diagnostic(name, {"max_X_drift", "max_Y_drift", "X_sum_drift", "Y_sum_drift"}, false,
                                   [first_xy](std::span<const State> w, double) {
                                       const std::vector<XYState> pair{first_xy, as_xy(w[0])};
                                       const auto d = invariant_drift(pair);
                                       return std::vector<double>{d.max_X_drift, d.max_Y_drift,
                                                                  d.X_sum_drift, d.Y_sum_drift};
                                   });
                break;
            default:
                break;
        }
    }
}

void run_so3(Context& ctx) {
    const auto& cfg = ctx.cfg;
    const auto& in = cfg.initial;
    const PeriodicGrid& g = ctx.grid;

    So3StrandState uv0 = So3StrandState::zeros(g);
    std::optional<XYState> xy0;
    if (in.u) {
        uv0 = So3StrandState(g, sample_field(*in.u, g, in.normalize, "u"),
                             sample_field(*in.v, g, in.normalize, "v"));
        xy0 = to_XY(uv0);
    } else {
        xy0 = XYState(g, sample_field(*in.X, g, in.normalize, "X"), sample_field(*in.Y, g, in.normalize, "Y"));
        uv0 = from_XY(*xy0);
    }

    const DerivativeStencil& st = ctx.stencil;
    if (cfg.model == Model::AnisoXY) {
        const DiagonalParams p(*cfg.params.P, DiagonalParams::Role::AnisotropyP);
        Recorder<XYState> rec(ctx);
        add_so3_fields(rec, "X", "Y");
        add_so3_diagnostics(rec, ctx, *xy0);
        rec.run(*xy0, [&](const XYState& s) { return aniso_rhs_XY(s, p, st); });
        return;
    }

    Recorder<So3StrandState> rec(ctx);
    add_so3_fields(rec, "u", "v");
    add_so3_diagnostics(rec, ctx, *xy0);
    switch (cfg.model) {
        case Model::SpinChain: {
            const SpinChainParams params{DiagonalParams(*cfg.params.A, DiagonalParams::Role::InertiaA),
                                         DiagonalParams(*cfg.params.B, DiagonalParams::Role::InertiaB)};
            rec.run(uv0, [&](const So3StrandState& s) { return spin_chain_rhs(s, params, st); });
            break;
        }
        case Model::Chiral:
            rec.run(uv0, [&](const So3StrandState& s) { return chiral_rhs(s, st); });
            break;
        case Model::AnisoUV: {
            const DiagonalParams p(*cfg.params.P, DiagonalParams::Role::AnisotropyP);
            rec.run(uv0, [&](const So3StrandState& s) { return aniso_rhs_uv(s, p, st); });
            break;
        }
        default:
            break;
    }
}

// ---- peakon models ---------------------------------------------------------

PeakonState peakon_initial(const Context& ctx) {
    const auto& cfg = ctx.cfg;
    const PeriodicGrid& g = ctx.grid;
    const std::size_t count = cfg.params.peakon_count;
    PeakonState s(g, count);
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double x = g.node(j);
        switch (cfg.model) {
            case Model::Peakon:
                for (std::size_t a = 0; a < count; ++a) {
                    s.Q[s.index(j, a)] = evaluate((*cfg.initial.Q)[a], x);
                    s.M[s.index(j, a)] = evaluate((*cfg.initial.M)[a], x);
                    s.N[s.index(j, a)] = evaluate((*cfg.initial.N)[a], x);
                }
                break;
            case Model::PeakonSingleExact: {
                const auto e = single_peakon_exact(*cfg.params.profile, x, 0.0);
                s.Q[j] = e.Q;
                s.M[j] = e.M;
                s.N[j] = e.N;
                break;
            }
            case Model::PeakonCollisionExact: {
                const CollisionSolution sol(*cfg.params.profile, cfg.params.branch);
                const auto e = collision_exact(sol, x, 0.0);
                s.Q[s.index(j, 0)] = e.Q1;
                s.Q[s.index(j, 1)] = e.Q2;
                s.M[s.index(j, 0)] = e.M1;
                s.M[s.index(j, 1)] = e.M2;
                s.N[s.index(j, 0)] = e.N1;
                s.N[s.index(j, 1)] = e.N2;
                break;
            }
            default:
                break;
        }
    }
    return s;
}

// Σ_j Σ_a value Δs, optionally with per-peakon weights.
double grid_sum(const std::vector<double>& data, const PeakonState& s, std::span<const double> weights) {
    double sum = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        for (std::size_t a = 0; a < s.count; ++a) sum += weights[a] * data[s.index(j, a)];
    }
    return sum * s.grid.spacing();
}

void run_peakon(Context& ctx) {
    const auto& cfg = ctx.cfg;
    const std::size_t count = cfg.params.peakon_count;
    const double t_step = ctx.dt;
    Recorder<PeakonState> rec(ctx);

    auto cols = [count](const char* n) {
        std::vector<std::string> out;
        for (std::size_t a = 1; a <= count; ++a) out.push_back(n + std::to_string(a));
        return out;
    };
    rec.add_field("Q", cols("Q"), [](const PeakonState& s, std::size_t j, std::vector<double>& out) {
        const auto q = s.Q_at(j);
        out.assign(q.begin(), q.end());
    });
    rec.add_field("M", cols("M"), [](const PeakonState& s, std::size_t j, std::vector<double>& out) {
        const auto m = s.M_at(j);
        out.assign(m.begin(), m.end());
    });
    rec.add_field("N", cols("N"), [](const PeakonState& s, std::size_t j, std::vector<double>& out) {
        const auto n = s.N_at(j);
        out.assign(n.begin(), n.end());
    });

    PeakonState y0 = peakon_initial(ctx);

    for (const auto& req : cfg.diagnostics) {
        const std::string name(diagnostic_name(req.kind));
        if (req.kind == DiagnosticKind::SConstraint) {
            rec.add_diagnostic(name, {"s_constraint_residual"}, false, [&ctx](std::span<const PeakonState> w, double) {
                return std::vector<double>{s_constraint_residual(w[0], ctx.stencil)};
            });
        } else if (req.kind == DiagnosticKind::ConservationSums) {
            const std::vector<double> ones(count, 1.0);
            std::vector<double> diff(count, 0.0);
            std::vector<std::string> columns{"sum_M_drift"};
            if (count == 2) {
                diff = {1.0, -1.0};
                columns.push_back("diff_N_drift");
            }
            const double m0 = grid_sum(y0.M, y0, ones);
            const double n0 = grid_sum(y0.N, y0, diff);
            rec.add_diagnostic(name, columns, false, [=](std::span<const PeakonState> w, double) {
                std::vector<double> out{std::abs(grid_sum(w[0].M, w[0], ones) - m0)};
                if (count == 2) out.push_back(std::abs(grid_sum(w[0].N, w[0], diff) - n0));
                return out;
            });
        }
    }

    if (cfg.model == Model::PeakonSingleExact) {
        const WaveProfile profile = *cfg.params.profile;
        rec.add_diagnostic("exact_error", {"max_Q_error", "max_M_error", "max_N_error"}, false,
                           [profile](std::span<const PeakonState> w, double t) {
                               const auto& s = w[0];
                               std::vector<double> out(3, 0.0);
                               for (std::size_t j = 0; j < s.size(); ++j) {
                                   const auto e = single_peakon_exact(profile, s.grid.node(j), t);
                                   out[0] = std::max(out[0], std::abs(s.Q[j] - e.Q));
                                   out[1] = std::max(out[1], std::abs(s.M[j] - e.M));
                                   out[2] = std::max(out[2], std::abs(s.N[j] - e.N));
                               }
                               return out;
                           });
        // (D_t² − D_s²)Q with three-point second differences.
        rec.add_diagnostic("wave_residual", {"max_wave_residual"}, true,
                           [t_step](std::span<const PeakonState> w, double) {
                               const auto& now = w[1];
                               const std::size_t n = now.size();
                               const double ds = now.grid.spacing();
                               double worst = 0.0;
                               for (std::size_t j = 0; j < n; ++j) {
                                   const double qtt = (w[2].Q[j] - 2.0 * now.Q[j] + w[0].Q[j]) / (t_step * t_step);
                                   const double qss = (now.Q[(j + 1) % n] - 2.0 * now.Q[j] + now.Q[(j + n - 1) % n]) / (ds * ds);
                                   worst = std::max(worst, std::abs(qtt - qss));
                               }
                               return std::vector<double>{worst};
                           });
    } else if (cfg.model == Model::PeakonCollisionExact) {
        const CollisionSolution sol(*cfg.params.profile, cfg.params.branch);
        rec.add_diagnostic("exact_error", {"max_X_error", "max_M_error", "max_N_error"}, false,
                           [sol](std::span<const PeakonState> w, double t) {
                               const auto& s = w[0];
                               std::vector<double> out(3, 0.0);
                               for (std::size_t j = 0; j < s.size(); ++j) {
                                   const auto i1 = s.index(j, 0), i2 = s.index(j, 1);
                                   const auto e = collision_exact(sol, s.grid.node(j), t);
                                   out[0] = std::max(out[0], std::abs(s.Q[i1] - s.Q[i2] - e.X));
                                   out[1] = std::max({out[1], std::abs(s.M[i1] - e.M1), std::abs(s.M[i2] - e.M2)});
                                   out[2] = std::max({out[2], std::abs(s.N[i1] - e.N1), std::abs(s.N[i2] - e.N2)});
                               }
                               return out;
                           });
    }

    const PeakonOptions options = cfg.params.peakon;
    rec.run(std::move(y0), [&ctx, options](const PeakonState& s) { return peakon_rhs(s, ctx.stencil, options); });
}

}  // namespace

RunReport run_scenario(const ScenarioConfig& input) {
    ScenarioConfig cfg = input;
    validate(cfg);

    RunReport report;
    report.model = cfg.model;
    report.N_s = cfg.grid.N_s;
    report.ds = cfg.grid.spacing();
    report.dt = cfg.grid.dt;

    fs::path dir;
    if (!cfg.output.directory.empty()) {
        dir = cfg.output.directory;
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw ValidationError("cannot create output directory " + dir.string() + ": " + ec.message());
    }

    Context ctx{cfg, PeriodicGrid(cfg.grid.S, cfg.grid.N_s), DerivativeStencil(cfg.grid.stencil_order),
                cfg.grid.dt, dir, report};
    try {
        if (is_so3_model(cfg.model)) {
            run_so3(ctx);
        } else {
            run_peakon(ctx);
        }
    } catch (RuntimeFailure& e) {
        if (!e.time()) e.set_time(static_cast<double>(report.steps_completed) * cfg.grid.dt);
        report.failure = RunFailure{e.kind(), e.what(), e.time()};
        if (!dir.empty()) write_run_report(dir / "report.json", report);
        throw;
    }
    if (!dir.empty()) write_run_report(dir / "report.json", report);
    return report;
}

ConvergenceTable convergence_study(const ScenarioConfig& cfg, int levels, const fs::path& write_to) {
    if (levels < 3) {
        throw ValidationError("convergence study needs at least 3 refinement levels");
    }
    ConvergenceTable table;
    ScenarioConfig level = cfg;
    level.output.directory.clear();
    validate(level);
    for (int k = 0; k < levels; ++k) {
        if (k > 0) level = refined(level);
        table.levels.push_back({level.grid.N_s, level.grid.dt, run_scenario(level)});
    }

    for (const auto& s : table.levels.front().report.diagnostics) {
        for (const auto& c : s.columns) {
            ConvergenceColumn col{s.name, c, {}, {}};
            for (const auto& l : table.levels) col.errors.push_back(l.report.series(s.name).max_abs(c));
            for (std::size_t k = 0; k + 1 < col.errors.size(); ++k) {
                const double a = col.errors[k], b = col.errors[k + 1];
                if (a > kConvergenceFloor && b > kConvergenceFloor && b < a) {
                    col.orders.push_back(std::log2(a / b));
                } else {
                    col.orders.push_back(std::nullopt);
                }
            }
            table.columns.push_back(std::move(col));
        }
    }
    if (!write_to.empty()) {
        std::error_code ec;
        fs::create_directories(write_to, ec);
        write_convergence_report(write_to / "report.json", table);
    }
    return table;
}

}  // namespace gstrand
