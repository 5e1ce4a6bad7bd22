#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gstrand/analytic.hpp"
#include "gstrand/peakon.hpp"

namespace gstrand {

enum class Model { SpinChain, Chiral, AnisoUV, AnisoXY, Peakon, PeakonSingleExact, PeakonCollisionExact };

std::string_view model_name(Model m);
Model parse_model(std::string_view name);  // throws ValidationError
bool is_so3_model(Model m);
bool is_peakon_model(Model m);

// One Fourier-type term amp·fn(k s + phase) of an initial-data component.
struct Mode {
    enum class Fn { Sin, Cos, Const };
    Fn fn = Fn::Sin;
    double amp = 0.0;
    double k = 1.0;
    double phase = 0.0;

    double operator()(double s) const;
};

// A scalar component is a sum of modes; a field is a list of components
// (3 for so(3) fields, peakon_count for peakon parameters).
using Component = std::vector<Mode>;
using ComponentSet = std::vector<Component>;

double evaluate(const Component& c, double s);

struct GridConfig {
    double S = 0.0;
    std::size_t N_s = 0;
    double dt = 0.0;
    double t_end = 0.0;
    int stencil_order = 2;
    std::optional<double> cfl;  // when set, dt was derived from it
    std::size_t steps = 0;      // t_end / dt

    double spacing() const { return S / static_cast<double>(N_s); }
};

struct ParamsConfig {
    std::optional<Eigen::Vector3d> A;
    std::optional<Eigen::Vector3d> B;
    std::optional<Eigen::Vector3d> P;
    std::size_t peakon_count = 1;
    std::optional<WaveProfile> profile;
    int branch = 1;
    PeakonOptions peakon;
};

struct InitialConfig {
    std::optional<ComponentSet> u, v, X, Y;
    std::optional<ComponentSet> Q, M, N;
    bool normalize = false;  // rescale each given so(3) field to unit length per node
};

enum class DiagnosticKind { ZeroCurvature, Lax, InvariantDrift, SConstraint, ConservationSums };

std::string_view diagnostic_name(DiagnosticKind k);

struct DiagnosticRequest {
    DiagnosticKind kind;
    std::vector<double> lambdas;
};

struct OutputConfig {
    std::string directory;  // empty: no files
    std::size_t cadence = 1;
};

struct ScenarioConfig {
    Model model = Model::Chiral;
    GridConfig grid;
    ParamsConfig params;
    InitialConfig initial;
    std::vector<DiagnosticRequest> diagnostics;
    OutputConfig output;
};

/**
 * JSON schema (unknown keys anywhere are rejected):
 *   model:       spin_chain | chiral | aniso_uv | aniso_xy | peakon |
 *                peakon_single_exact | peakon_collision_exact
 *   grid:        {S, N_s, t_end, dt | cfl, stencil_order?}
 *   params:      {A?, B?, P? : [3 numbers], peakon_count?, profile?, branch?,
 *                 min_gap?, max_condition?}
 *   initial:     {u?, v?, X?, Y?, Q?, M?, N? : [[mode...] per component],
 *                 normalize?}
 *     mode:      {fn: sin|cos|const, amp, k?, phase?}
 *     profile:   {type: traveling, shape: sin|cos|linear, amp, k, direction, phase?}
 *                {type: standing, amp, k, phase_s?, phase_t?}
 *                {type: constant, value}
 *                {type: superposition, parts: [profile...]}
 *   diagnostics: [{kind: zero_curvature|lax|invariant_drift|s_constraint|
 *                  conservation_sums, lambdas?}]
 *   output:      {directory?, cadence?}
 * With cfl given, dt = t_end / ceil(t_end / (cfl·Δs)).
 */
ScenarioConfig parse_config(std::string_view json_text);
ScenarioConfig load_config(const std::filesystem::path& path);

// Checks every cross-field constraint and fills grid.steps. parse_config
// calls this; call it again after editing a config in code.
void validate(ScenarioConfig& cfg);

// Copy with Δs and Δt halved, step count and output cadence doubled.
ScenarioConfig refined(const ScenarioConfig& cfg);

}  // namespace gstrand
