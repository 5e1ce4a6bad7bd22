#include "gstrand/registry.hpp"

#include <algorithm>

#include "gstrand/errors.hpp"

namespace gstrand {

const std::vector<NamedScenario>& builtin_scenarios() {
    static const std::vector<NamedScenario> scenarios = {
        {"chiral_smooth", "chiral model, u = (sin s, 0, cos s), v = (0, cos s, 0), Lax residuals at four lambdas",
         R"({
  "model": "chiral",
  "grid": {"S": 6.283185307179586, "N_s": 64, "cfl": 0.25, "t_end": 1.0},
  "initial": {
    "u": [[{"fn": "sin", "amp": 1.0}], [], [{"fn": "cos", "amp": 1.0}]],
    "v": [[], [{"fn": "cos", "amp": 1.0}], []]
  },
  "diagnostics": [{"kind": "zero_curvature", "lambdas": [0.5, 1.0, 2.0, -1.0]}],
  "output": {"directory": "out/chiral_smooth", "cadence": 1}
})"},
        {"chiral_fixed_point", "chiral model at the constant solution u = v = (0, 0, 1)",
         R"({
  "model": "chiral",
  "grid": {"S": 6.283185307179586, "N_s": 32, "cfl": 0.25, "t_end": 1.0},
  "initial": {
    "u": [[], [], [{"fn": "const", "amp": 1.0}]],
    "v": [[], [], [{"fn": "const", "amp": 1.0}]]
  },
  "diagnostics": [{"kind": "zero_curvature", "lambdas": [0.5, 1.0, 2.0]}],
  "output": {"directory": "out/chiral_fixed_point", "cadence": 4}
})"},
        {"spin_chain_smooth", "spin chain with A = diag(1,2,3), B = diag(2,1,1), compatibility residual",
         R"({
  "model": "spin_chain",
  "grid": {"S": 6.283185307179586, "N_s": 64, "cfl": 0.25, "t_end": 1.0},
  "params": {"A": [1.0, 2.0, 3.0], "B": [2.0, 1.0, 1.0]},
  "initial": {
    "u": [[{"fn": "sin", "amp": 0.5}], [{"fn": "cos", "amp": 0.3}], [{"fn": "const", "amp": 0.2}]],
    "v": [[{"fn": "const", "amp": 1.0}], [{"fn": "sin", "amp": 0.2, "k": 2.0}], [{"fn": "cos", "amp": 0.4}]]
  },
  "diagnostics": [{"kind": "zero_curvature", "lambdas": []}],
  "output": {"directory": "out/spin_chain_smooth", "cadence": 2}
})"},
        {"aniso_unit_sphere", "anisotropic XY form, P = diag(1,2,3), unit-length X and Y, magnitude drift",
         R"({
  "model": "aniso_xy",
  "grid": {"S": 6.283185307179586, "N_s": 128, "dt": 0.005, "t_end": 1.0, "stencil_order": 4},
  "params": {"P": [1.0, 2.0, 3.0]},
  "initial": {
    "X": [[{"fn": "const", "amp": 1.0}], [{"fn": "sin", "amp": 0.05}], [{"fn": "cos", "amp": 0.05}]],
    "Y": [[{"fn": "cos", "amp": 0.05}],
          [{"fn": "const", "amp": 0.6}, {"fn": "sin", "amp": 0.05, "k": 2.0}],
          [{"fn": "const", "amp": 0.8}]],
    "normalize": true
  },
  "diagnostics": [{"kind": "invariant_drift"}, {"kind": "lax", "lambdas": [0.5, 2.0]}],
  "output": {"directory": "out/aniso_unit_sphere", "cadence": 10}
})"},
        {"aniso_uv_lax", "anisotropic model in (u, v), P = diag(1,2,3), 4x4 Lax residual",
         R"({
  "model": "aniso_uv",
  "grid": {"S": 6.283185307179586, "N_s": 64, "cfl": 0.25, "t_end": 1.0},
  "params": {"P": [1.0, 2.0, 3.0]},
  "initial": {
    "u": [[{"fn": "sin", "amp": 0.5}], [{"fn": "const", "amp": 0.2}], [{"fn": "cos", "amp": 0.5}]],
    "v": [[{"fn": "const", "amp": 0.1}], [{"fn": "cos", "amp": 0.5}], [{"fn": "sin", "amp": 0.3, "k": 2.0}]]
  },
  "diagnostics": [{"kind": "lax", "lambdas": [0.5, 1.0, 2.0]}, {"kind": "invariant_drift"}],
  "output": {"directory": "out/aniso_uv_lax", "cadence": 1}
})"},
        {"single_peakon", "one peakon driven by h = 0.3 sin(s-t) + 0.1 sin(2(s+t)), compared to the exact solution",
         R"({
  "model": "peakon_single_exact",
  "grid": {"S": 6.283185307179586, "N_s": 256, "cfl": 0.25, "t_end": 1.0},
  "params": {"profile": {"type": "superposition", "parts": [
    {"type": "traveling", "shape": "sin", "amp": 0.3, "k": 1.0, "direction": 1},
    {"type": "traveling", "shape": "sin", "amp": 0.1, "k": 2.0, "direction": -1}
  ]}},
  "diagnostics": [{"kind": "s_constraint"}, {"kind": "conservation_sums"}],
  "output": {"directory": "out/single_peakon", "cadence": 1}
})"},
        {"peakon_collision", "peakon-antipeakon pair from h = 0.5 cos s cos t; X = 0 on s = pi/2, 3pi/2",
         R"({
  "model": "peakon_collision_exact",
  "grid": {"S": 6.283185307179586, "N_s": 256, "cfl": 0.25, "t_end": 1.0},
  "params": {"profile": {"type": "standing", "amp": 0.5, "k": 1.0}, "branch": 1},
  "diagnostics": [{"kind": "s_constraint"}, {"kind": "conservation_sums"}],
  "output": {"directory": "out/peakon_collision", "cadence": 1}
})"},
        {"peakon_collision_offset", "peakon-antipeakon pair from h = 1 + 0.5 cos s cos t (never collides)",
         R"({
  "model": "peakon_collision_exact",
  "grid": {"S": 6.283185307179586, "N_s": 256, "cfl": 0.25, "t_end": 1.0},
  "params": {"profile": {"type": "superposition", "parts": [
    {"type": "constant", "value": 1.0},
    {"type": "standing", "amp": 0.5, "k": 1.0}
  ]}, "branch": 1},
  "diagnostics": [{"kind": "s_constraint"}, {"kind": "conservation_sums"}],
  "output": {"directory": "out/peakon_collision_offset", "cadence": 1}
})"},
        {"peakon_three", "three peakons with s-dependent positions and momenta",
         R"({
  "model": "peakon",
  "grid": {"S": 6.283185307179586, "N_s": 64, "cfl": 0.25, "t_end": 0.5},
  "params": {"peakon_count": 3},
  "initial": {
    "Q": [[{"fn": "const", "amp": -2.0}, {"fn": "sin", "amp": 0.1}],
          [{"fn": "cos", "amp": 0.1}],
          [{"fn": "const", "amp": 2.0}]],
    "M": [[{"fn": "const", "amp": 1.0}], [{"fn": "const", "amp": 0.5}], [{"fn": "const", "amp": -1.0}]],
    "N": [[{"fn": "sin", "amp": 0.2}], [], [{"fn": "cos", "amp": 0.2}]]
  },
  "diagnostics": [{"kind": "s_constraint"}, {"kind": "conservation_sums"}],
  "output": {"directory": "out/peakon_three", "cadence": 2}
})"},
    };
    return scenarios;
}

const NamedScenario& builtin_scenario(std::string_view name) {
    const auto& all = builtin_scenarios();
    auto it = std::find_if(all.begin(), all.end(), [&](const NamedScenario& s) { return s.name == name; });
    if (it == all.end()) throw ValidationError("unknown scenario '" + std::string(name) + "'");
    return *it;
}

}  // namespace gstrand
