#include "gstrand/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gstrand/algebra.hpp"
#include "gstrand/errors.hpp"

namespace gstrand {

using nlohmann::json;

namespace {

constexpr std::pair<Model, std::string_view> kModelNames[] = {
    {Model::SpinChain, "spin_chain"},
    {Model::Chiral, "chiral"},
    {Model::AnisoUV, "aniso_uv"},
    {Model::AnisoXY, "aniso_xy"},
    {Model::Peakon, "peakon"},
    {Model::PeakonSingleExact, "peakon_single_exact"},
    {Model::PeakonCollisionExact, "peakon_collision_exact"},
};

constexpr std::pair<DiagnosticKind, std::string_view> kDiagnosticNames[] = {
    {DiagnosticKind::ZeroCurvature, "zero_curvature"},
    {DiagnosticKind::Lax, "lax"},
    {DiagnosticKind::InvariantDrift, "invariant_drift"},
    {DiagnosticKind::SConstraint, "s_constraint"},
    {DiagnosticKind::ConservationSums, "conservation_sums"},
};

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ValidationError(path + ": " + what);
}

// Object view that remembers which keys were read; finish() rejects the rest.
class Fields {
public:
    Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail(path_, "expected an object");
    }

    const json* get(const std::string& key) {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    const json& require(const std::string& key) {
        const json* v = get(key);
        if (!v) fail(path_, "missing key '" + key + "'");
        return *v;
    }

    std::string at(const std::string& key) const { return path_ + "." + key; }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) fail(path_, "unknown key '" + it.key() + "'");
        }
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

double number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) fail(path, "must be finite");
    return x;
}

std::size_t count(const json& j, const std::string& path) {
    const double x = number(j, path);
    if (x < 0 || x != std::floor(x) || x > 1e9) fail(path, "expected a non-negative integer");
    return static_cast<std::size_t>(x);
}

int sign(const json& j, const std::string& path) {
    const double x = number(j, path);
    if (x != 1.0 && x != -1.0) fail(path, "expected +1 or -1");
    return static_cast<int>(x);
}

std::string text(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

Eigen::Vector3d vec3(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3) fail(path, "expected an array of 3 numbers");
    Eigen::Vector3d out;
    for (int i = 0; i < 3; ++i) out(i) = number(j[i], path + "[" + std::to_string(i) + "]");
    return out;
}

Mode parse_mode(const json& j, const std::string& path) {
    Fields f(j, path);
    Mode m;
    const auto fn = text(f.require("fn"), f.at("fn"));
    if (fn == "sin") m.fn = Mode::Fn::Sin;
    else if (fn == "cos") m.fn = Mode::Fn::Cos;
    else if (fn == "const") m.fn = Mode::Fn::Const;
    else fail(f.at("fn"), "expected sin, cos or const");
    m.amp = number(f.require("amp"), f.at("amp"));
    if (const json* k = f.get("k")) m.k = number(*k, f.at("k"));
    if (const json* p = f.get("phase")) m.phase = number(*p, f.at("phase"));
    f.finish();
    return m;
}

ComponentSet parse_components(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of components");
    ComponentSet out;
    for (std::size_t c = 0; c < j.size(); ++c) {
        const auto cpath = path + "[" + std::to_string(c) + "]";
        if (!j[c].is_array()) fail(cpath, "expected an array of modes");
        Component comp;
        for (std::size_t i = 0; i < j[c].size(); ++i) {
            comp.push_back(parse_mode(j[c][i], cpath + "[" + std::to_string(i) + "]"));
        }
        out.push_back(std::move(comp));
    }
    return out;
}

WaveProfile parse_profile(const json& j, const std::string& path) {
    Fields f(j, path);
    const auto type = text(f.require("type"), f.at("type"));
    auto opt = [&](const char* key, double fallback) {
        const json* v = f.get(key);
        return v ? number(*v, f.at(key)) : fallback;
    };
    auto build = [&]() -> WaveProfile {
        if (type == "traveling") {
            const auto shape_name = text(f.require("shape"), f.at("shape"));
            WaveShape shape;
            if (shape_name == "sin") shape = WaveShape::Sin;
            else if (shape_name == "cos") shape = WaveShape::Cos;
            else if (shape_name == "linear") shape = WaveShape::Linear;
            else fail(f.at("shape"), "expected sin, cos or linear");
            const double amp = number(f.require("amp"), f.at("amp"));
            const double k = number(f.require("k"), f.at("k"));
            const int dir = sign(f.require("direction"), f.at("direction"));
            return WaveProfile::traveling(shape, amp, k, dir, opt("phase", 0.0));
        }
        if (type == "standing") {
            const double amp = number(f.require("amp"), f.at("amp"));
            const double k = number(f.require("k"), f.at("k"));
            return WaveProfile::standing(amp, k, opt("phase_s", 0.0), opt("phase_t", 0.0));
        }
        if (type == "constant") {
            return WaveProfile::constant(number(f.require("value"), f.at("value")));
        }
        if (type == "superposition") {
            const json& parts = f.require("parts");
            if (!parts.is_array() || parts.empty()) fail(f.at("parts"), "expected a non-empty array");
            std::vector<WaveProfile> out;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                out.push_back(parse_profile(parts[i], f.at("parts") + "[" + std::to_string(i) + "]"));
            }
            return WaveProfile::superposition(std::move(out));
        }
        fail(f.at("type"), "expected traveling, standing, constant or superposition");
    };
    WaveProfile p = build();
    f.finish();
    return p;
}

GridConfig parse_grid(const json& j) {
    Fields f(j, "grid");
    GridConfig g;
    g.S = number(f.require("S"), f.at("S"));
    g.N_s = count(f.require("N_s"), f.at("N_s"));
    g.t_end = number(f.require("t_end"), f.at("t_end"));
    const json* dt = f.get("dt");
    const json* cfl = f.get("cfl");
    if ((dt != nullptr) == (cfl != nullptr)) fail("grid", "give exactly one of 'dt' and 'cfl'");
    if (dt) g.dt = number(*dt, f.at("dt"));
    if (cfl) g.cfl = number(*cfl, f.at("cfl"));
    if (const json* o = f.get("stencil_order")) g.stencil_order = static_cast<int>(count(*o, f.at("stencil_order")));
    f.finish();
    return g;
}

ParamsConfig parse_params(const json& j) {
    Fields f(j, "params");
    ParamsConfig p;
    if (const json* a = f.get("A")) p.A = vec3(*a, f.at("A"));
    if (const json* b = f.get("B")) p.B = vec3(*b, f.at("B"));
    if (const json* pp = f.get("P")) p.P = vec3(*pp, f.at("P"));
    if (const json* c = f.get("peakon_count")) p.peakon_count = count(*c, f.at("peakon_count"));
    if (const json* pr = f.get("profile")) p.profile = parse_profile(*pr, f.at("profile"));
    if (const json* br = f.get("branch")) p.branch = sign(*br, f.at("branch"));
    if (const json* g = f.get("min_gap")) p.peakon.min_gap = number(*g, f.at("min_gap"));
    if (const json* c = f.get("max_condition")) p.peakon.max_condition = number(*c, f.at("max_condition"));
    f.finish();
    return p;
}

InitialConfig parse_initial(const json& j) {
    Fields f(j, "initial");
    InitialConfig in;
    const std::pair<const char*, std::optional<ComponentSet>*> slots[] = {
        {"u", &in.u}, {"v", &in.v}, {"X", &in.X}, {"Y", &in.Y},
        {"Q", &in.Q}, {"M", &in.M}, {"N", &in.N},
    };
    for (const auto& [key, slot] : slots) {
        if (const json* c = f.get(key)) *slot = parse_components(*c, f.at(key));
    }
    if (const json* n = f.get("normalize")) {
        if (!n->is_boolean()) fail(f.at("normalize"), "expected true or false");
        in.normalize = n->get<bool>();
    }
    f.finish();
    return in;
}

std::vector<DiagnosticRequest> parse_diagnostics(const json& j) {
    if (!j.is_array()) fail("diagnostics", "expected an array");
    std::vector<DiagnosticRequest> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        Fields f(j[i], "diagnostics[" + std::to_string(i) + "]");
        const auto name = text(f.require("kind"), f.at("kind"));
        auto it = std::find_if(std::begin(kDiagnosticNames), std::end(kDiagnosticNames),
                               [&](const auto& e) { return e.second == name; });
        if (it == std::end(kDiagnosticNames)) fail(f.at("kind"), "unknown diagnostic '" + name + "'");
        DiagnosticRequest req{it->first, {}};
        if (const json* l = f.get("lambdas")) {
            if (!l->is_array()) fail(f.at("lambdas"), "expected an array of numbers");
            for (std::size_t k = 0; k < l->size(); ++k) {
                req.lambdas.push_back(number((*l)[k], f.at("lambdas") + "[" + std::to_string(k) + "]"));
            }
        }
        f.finish();
        out.push_back(std::move(req));
    }
    return out;
}

OutputConfig parse_output(const json& j) {
    Fields f(j, "output");
    OutputConfig o;
    if (const json* d = f.get("directory")) o.directory = text(*d, f.at("directory"));
    if (const json* c = f.get("cadence")) o.cadence = count(*c, f.at("cadence"));
    f.finish();
    return o;
}

void check_components(const std::optional<ComponentSet>& set, const char* name, std::size_t expected,
                      double length) {
    if (!set) return;
    const std::string path = std::string("initial.") + name;
    if (set->size() != expected) {
        fail(path, "expected " + std::to_string(expected) + " components, got " +
                       std::to_string(set->size()));
    }
    for (const auto& comp : *set) {
        for (const auto& m : comp) {
            if (m.fn == Mode::Fn::Const) continue;
            const double cycles = m.k * length / (2.0 * std::numbers::pi);
            if (std::abs(cycles - std::round(cycles)) > 1e-9 * std::max(1.0, std::abs(cycles))) {
                fail(path, "mode with k = " + std::to_string(m.k) + " is not periodic on [0, S)");
            }
        }
    }
}

void forbid(bool present, const std::string& path, Model m) {
    if (present) fail(path, "not used by model " + std::string(model_name(m)));
}

void validate_grid(GridConfig& g) {
    if (!(g.S > 0.0)) fail("grid.S", "must be positive");
    if (g.N_s < PeriodicGrid::kMinNodes) {
        fail("grid.N_s", "need at least " + std::to_string(PeriodicGrid::kMinNodes) + " nodes");
    }
    if (g.stencil_order != 2 && g.stencil_order != 4) fail("grid.stencil_order", "must be 2 or 4");
    if (!(g.t_end > 0.0)) fail("grid.t_end", "must be positive");
    const double ds = g.spacing();
    if (g.cfl && g.dt == 0.0) {
        if (!(*g.cfl > 0.0)) fail("grid.cfl", "must be positive");
        g.dt = g.t_end / std::ceil(g.t_end / (*g.cfl * ds));
    }
    if (!(g.dt > 0.0)) fail("grid.dt", "must be positive");
    if (g.t_end < g.dt) fail("grid.t_end", "must be at least dt");
    const double steps = std::round(g.t_end / g.dt);
    if (std::abs(steps * g.dt - g.t_end) > 1e-9 * g.t_end) {
        fail("grid.dt", "t_end must be an integer multiple of dt");
    }
    g.steps = static_cast<std::size_t>(steps);
    const double courant = g.dt / ds;
    if (courant > 0.5) {
        fail("grid", "CFL number dt/ds = " + std::to_string(courant) + " exceeds 0.5");
    }
}

}  // namespace

std::string_view model_name(Model m) {
    for (const auto& [model, name] : kModelNames) {
        if (model == m) return name;
    }
    return "unknown";
}

Model parse_model(std::string_view name) {
    for (const auto& [model, n] : kModelNames) {
        if (n == name) return model;
    }
    throw ValidationError("model: unknown model '" + std::string(name) + "'");
}

bool is_so3_model(Model m) {
    return m == Model::SpinChain || m == Model::Chiral || m == Model::AnisoUV || m == Model::AnisoXY;
}

bool is_peakon_model(Model m) { return !is_so3_model(m); }

std::string_view diagnostic_name(DiagnosticKind k) {
    for (const auto& [kind, name] : kDiagnosticNames) {
        if (kind == k) return name;
    }
    return "unknown";
}

double Mode::operator()(double s) const {
    switch (fn) {
        case Fn::Sin: return amp * std::sin(k * s + phase);
        case Fn::Cos: return amp * std::cos(k * s + phase);
        case Fn::Const: return amp;
    }
    return 0.0;
}

double evaluate(const Component& c, double s) {
    double sum = 0.0;
    for (const auto& m : c) sum += m(s);
    return sum;
}

ScenarioConfig parse_config(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    Fields f(j, "config");
    ScenarioConfig cfg;
    cfg.model = parse_model(text(f.require("model"), "model"));
    cfg.grid = parse_grid(f.require("grid"));
    if (const json* p = f.get("params")) cfg.params = parse_params(*p);
    if (const json* i = f.get("initial")) cfg.initial = parse_initial(*i);
    if (const json* d = f.get("diagnostics")) cfg.diagnostics = parse_diagnostics(*d);
    if (const json* o = f.get("output")) cfg.output = parse_output(*o);
    f.finish();
    validate(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate(ScenarioConfig& cfg) {
    validate_grid(cfg.grid);
    const Model m = cfg.model;
    auto& p = cfg.params;
    auto& in = cfg.initial;

    // Parameters.
    if (m == Model::SpinChain) {
        if (!p.A || !p.B) fail("params", "spin_chain needs A and B");
        (void)DiagonalParams(*p.A, DiagonalParams::Role::InertiaA);
        (void)DiagonalParams(*p.B, DiagonalParams::Role::InertiaB);
    } else {
        forbid(p.A.has_value(), "params.A", m);
        forbid(p.B.has_value(), "params.B", m);
    }
    if (m == Model::AnisoUV || m == Model::AnisoXY) {
        if (!p.P) fail("params", std::string(model_name(m)) + " needs P");
        (void)DiagonalParams(*p.P, DiagonalParams::Role::AnisotropyP);
    } else {
        forbid(p.P.has_value(), "params.P", m);
    }
    if (m == Model::PeakonSingleExact || m == Model::PeakonCollisionExact) {
        if (!p.profile) fail("params", std::string(model_name(m)) + " needs a profile");
        if (!p.profile->periodic_over(cfg.grid.S)) {
            fail("params.profile", "profile is not periodic on [0, S)");
        }
        const std::size_t expected = m == Model::PeakonSingleExact ? 1 : 2;
        if (p.peakon_count != 1 && p.peakon_count != expected) {
            fail("params.peakon_count", "must be " + std::to_string(expected) + " for this model");
        }
        p.peakon_count = expected;
    } else {
        forbid(p.profile.has_value(), "params.profile", m);
    }
    if (m != Model::PeakonCollisionExact && p.branch != 1) forbid(true, "params.branch", m);
    if (is_peakon_model(m)) {
        if (p.peakon_count == 0) fail("params.peakon_count", "must be positive");
        if (!(p.peakon.min_gap >= 0.0)) fail("params.min_gap", "must be non-negative");
        if (!(p.peakon.max_condition > 1.0)) fail("params.max_condition", "must exceed 1");
    } else {
        const PeakonOptions defaults;
        forbid(p.peakon_count != 1, "params.peakon_count", m);
        forbid(p.peakon.min_gap != defaults.min_gap, "params.min_gap", m);
        forbid(p.peakon.max_condition != defaults.max_condition, "params.max_condition", m);
    }

    // Initial data.
    const double S = cfg.grid.S;
    if (is_so3_model(m)) {
        forbid(in.Q || in.M || in.N, "initial.Q/M/N", m);
        const bool uv = in.u || in.v;
        const bool xy = in.X || in.Y;
        if (uv == xy) fail("initial", "give either u and v, or X and Y");
        if (uv && !(in.u && in.v)) fail("initial", "both u and v are required");
        if (xy && !(in.X && in.Y)) fail("initial", "both X and Y are required");
        check_components(in.u, "u", 3, S);
        check_components(in.v, "v", 3, S);
        check_components(in.X, "X", 3, S);
        check_components(in.Y, "Y", 3, S);
    } else if (m == Model::Peakon) {
        forbid(in.u || in.v || in.X || in.Y, "initial.u/v/X/Y", m);
        if (!in.Q || !in.M || !in.N) fail("initial", "peakon needs Q, M and N");
        if (in.normalize) fail("initial.normalize", "not used by model peakon");
        check_components(in.Q, "Q", p.peakon_count, S);
        check_components(in.M, "M", p.peakon_count, S);
        check_components(in.N, "N", p.peakon_count, S);
    } else {
        const bool any = in.u || in.v || in.X || in.Y || in.Q || in.M || in.N || in.normalize;
        if (any) fail("initial", "exact models take their initial data from the profile");
    }

    // Diagnostics.
    std::set<DiagnosticKind> seen;
    for (const auto& d : cfg.diagnostics) {
        const std::string path = "diagnostics." + std::string(diagnostic_name(d.kind));
        if (!seen.insert(d.kind).second) fail(path, "requested more than once");
        bool allowed = false;
        switch (d.kind) {
            case DiagnosticKind::ZeroCurvature:
                allowed = m == Model::SpinChain || m == Model::Chiral;
                if (m == Model::SpinChain && !d.lambdas.empty()) {
                    fail(path, "spin_chain has no Lax pair; lambdas must be empty");
                }
                break;
            case DiagnosticKind::Lax:
                allowed = m == Model::AnisoUV || m == Model::AnisoXY;
                if (allowed && d.lambdas.empty()) fail(path, "needs at least one lambda");
                break;
            case DiagnosticKind::InvariantDrift:
                allowed = m == Model::AnisoUV || m == Model::AnisoXY;
                break;
            case DiagnosticKind::SConstraint:
            case DiagnosticKind::ConservationSums:
                allowed = is_peakon_model(m);
                break;
        }
        if (!allowed) fail(path, "not available for model " + std::string(model_name(m)));
        if (d.kind != DiagnosticKind::ZeroCurvature && d.kind != DiagnosticKind::Lax &&
            !d.lambdas.empty()) {
            fail(path, "takes no lambdas");
        }
        std::set<double> unique;
        for (double l : d.lambdas) {
            if (l == 0.0 && d.kind == DiagnosticKind::ZeroCurvature) {
                fail(path, "lambda = 0 is a pole of the chiral Lax pair");
            }
            if (!unique.insert(l).second) fail(path, "duplicate lambda");
        }
    }

    if (cfg.output.cadence == 0) fail("output.cadence", "must be at least 1");
}

ScenarioConfig refined(const ScenarioConfig& cfg) {
    ScenarioConfig out = cfg;
    out.grid.N_s *= 2;
    out.grid.dt *= 0.5;
    out.grid.steps *= 2;
    out.output.cadence *= 2;
    validate(out);
    return out;
}

}  // namespace gstrand
