#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gstrand/config.hpp"

namespace gstrand {

// Time series of one diagnostic; rows[i] holds the non-time columns at times[i].
struct DiagnosticSeries {
    std::string name;
    std::vector<std::string> columns;  // excluding t
    std::vector<double> times;
    std::vector<std::vector<double>> rows;

    // max over rows of |value| in the named column; throws if unknown.
    double max_abs(const std::string& column) const;
    std::size_t column_index(const std::string& column) const;
};

struct RunFailure {
    std::string kind;  // blowup, singular_configuration, conditioning
    std::string message;
    std::optional<double> time;
};

struct RunReport {
    Model model = Model::Chiral;
    std::size_t N_s = 0;
    double ds = 0.0;
    double dt = 0.0;
    std::size_t steps_completed = 0;
    std::vector<DiagnosticSeries> diagnostics;
    std::optional<RunFailure> failure;

    const DiagnosticSeries& series(const std::string& name) const;
};

/**
 * Integrates the configured model with RK4 and evaluates diagnostics every
 * output.cadence steps. Time-centred diagnostics (zero_curvature, lax and the
 * wave residual of peakon_single_exact) are reported at interior steps only.
 * Exact models always get an exact_error series.
 *
 * With output.directory non-empty, writes one CSV per field and diagnostic
 * plus report.json there; partial output is kept on failure. Runtime
 * failures are recorded in report.json and rethrown.
 */
RunReport run_scenario(const ScenarioConfig& cfg);

struct ConvergenceLevel {
    std::size_t N_s = 0;
    double dt = 0.0;
    RunReport report;
};

struct ConvergenceColumn {
    std::string diagnostic;
    std::string column;
    std::vector<double> errors;                // max |value| per level
    std::vector<std::optional<double>> orders;  // log2(e_k/e_{k+1}); empty when undefined
};

struct ConvergenceTable {
    std::vector<ConvergenceLevel> levels;
    std::vector<ConvergenceColumn> columns;

    const ConvergenceColumn& column(const std::string& diagnostic, const std::string& column) const;
};

// Errors at or below this are treated as exact; orders computed from them
// are undefined.
inline constexpr double kConvergenceFloor = 1e-13;

/**
 * Runs cfg and levels-1 successive refinements (Δs, Δt halved jointly).
 * An order is undefined when either error is at the floor or the sequence
 * does not decrease. Field output is disabled; with write_to non-empty a
 * report.json with the table is written there.
 */
ConvergenceTable convergence_study(const ScenarioConfig& cfg, int levels,
                                   const std::filesystem::path& write_to = {});

}  // namespace gstrand
