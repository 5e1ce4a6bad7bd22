// gstrand: run G-strand scenarios from JSON configs.
//
//   gstrand run --config <path> [--out <dir>]
//   gstrand converge --config <path> --levels <n> [--out <dir>]
//   gstrand list-scenarios [--write <dir>]
//
// Exit status: 0 ok, 2 invalid input, 3 runtime failure (blow-up, singular
// or ill-conditioned configuration).

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gstrand/config.hpp"
#include "gstrand/errors.hpp"
#include "gstrand/output.hpp"
#include "gstrand/registry.hpp"
#include "gstrand/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

void print_report(const gstrand::RunReport& r) {
    std::cout << "model " << gstrand::model_name(r.model) << ", N_s " << r.N_s << ", dt "
              << gstrand::format_number(r.dt) << ", steps " << r.steps_completed << '\n';
    for (const auto& s : r.diagnostics) {
        for (const auto& c : s.columns) {
            std::cout << "  " << s.name << '.' << c << "  max " << gstrand::format_number(s.max_abs(c)) << '\n';
        }
    }
}

void print_table(const gstrand::ConvergenceTable& t) {
    std::cout << "levels:";
    for (const auto& l : t.levels) std::cout << " N_s=" << l.N_s;
    std::cout << '\n';
    for (const auto& c : t.columns) {
        std::cout << "  " << c.diagnostic << '.' << c.column << "  errors";
        for (double e : c.errors) std::cout << ' ' << gstrand::format_number(e);
        std::cout << "  orders";
        for (const auto& p : c.orders) std::cout << ' ' << (p ? gstrand::format_short(*p) : "undefined");
        std::cout << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"G-strand scenario runner"};
    app.require_subcommand(1);

    std::string config_path, out_dir, write_dir;
    int levels = 3;

    auto* run = app.add_subcommand("run", "integrate one scenario and write its outputs");
    run->add_option("--config", config_path, "scenario JSON file")->required();
    run->add_option("--out", out_dir, "output directory (overrides output.directory)");

    auto* converge = app.add_subcommand("converge", "refinement study with jointly halved ds and dt");
    converge->add_option("--config", config_path, "scenario JSON file")->required();
    converge->add_option("--levels", levels, "number of refinement levels (>= 3)")->required();
    converge->add_option("--out", out_dir, "directory for report.json (default output.directory)");

    auto* list = app.add_subcommand("list-scenarios", "print the built-in scenarios");
    list->add_option("--write", write_dir, "also write each scenario as <name>.json here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*list) {
            for (const auto& s : gstrand::builtin_scenarios()) {
                std::cout << s.name << "\t" << s.description << '\n';
                if (!write_dir.empty()) {
                    std::filesystem::create_directories(write_dir);
                    std::ofstream(std::filesystem::path(write_dir) / (s.name + ".json")) << s.config_json << '\n';
                }
            }
            return kExitOk;
        }

        auto cfg = gstrand::load_config(config_path);
        if (!out_dir.empty()) cfg.output.directory = out_dir;

        if (*run) {
            print_report(gstrand::run_scenario(cfg));
        } else {
            print_table(gstrand::convergence_study(cfg, levels, cfg.output.directory));
        }
        return kExitOk;
    } catch (const gstrand::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitValidation;
    } catch (const gstrand::RuntimeFailure& e) {
        std::cerr << e.kind() << " failure";
        if (e.time()) std::cerr << " at t = " << gstrand::format_number(*e.time());
        std::cerr << ": " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
