#include "gstrand/output.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include <json.hpp>

#include "gstrand/errors.hpp"
#include "gstrand/scenario.hpp"

namespace gstrand {

using nlohmann::ordered_json;

namespace {

std::string non_finite(double x) {
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

// JSON has no nan/inf; encode them as strings so nothing is silently lost.
ordered_json json_number(double x) {
    if (std::isfinite(x)) return x;
    return non_finite(x);
}

void write_json(const std::filesystem::path& path, const ordered_json& j) {
    std::ofstream out(path);
    if (!out) throw RuntimeFailure("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

ordered_json series_summary(const DiagnosticSeries& s) {
    ordered_json cols = ordered_json::object();
    for (const auto& c : s.columns) {
        ordered_json entry;
        entry["max"] = s.rows.empty() ? ordered_json(nullptr) : json_number(s.max_abs(c));
        entry["final"] = s.rows.empty() ? ordered_json(nullptr)
                                        : json_number(s.rows.back()[s.column_index(c)]);
        cols[c] = entry;
    }
    ordered_json j;
    j["samples"] = s.rows.size();
    j["columns"] = cols;
    return j;
}

}  // namespace

std::string format_number(double x) {
    if (!std::isfinite(x)) return non_finite(x);
    std::array<char, 40> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

std::string format_short(double x) {
    if (!std::isfinite(x)) return non_finite(x);
    std::array<char, 40> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path), path_(path) {
    if (!out_) throw RuntimeFailure("cannot write " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i) {
        out_ << (i ? "," : "") << header[i];
    }
    out_ << '\n';
}

void CsvWriter::row(double t, std::span<const double> values) {
    out_ << format_number(t);
    for (double v : values) out_ << ',' << format_number(v);
    out_ << '\n';
}

void CsvWriter::row(double t, std::size_t s_index, std::span<const double> values) {
    out_ << format_number(t) << ',' << s_index;
    for (double v : values) out_ << ',' << format_number(v);
    out_ << '\n';
}

void write_run_report(const std::filesystem::path& path, const RunReport& r) {
    ordered_json j;
    j["model"] = std::string(model_name(r.model));
    j["status"] = r.failure ? r.failure->kind : "ok";
    j["N_s"] = r.N_s;
    j["ds"] = r.ds;
    j["dt"] = r.dt;
    j["steps_completed"] = r.steps_completed;
    if (r.failure) {
        ordered_json f;
        f["kind"] = r.failure->kind;
        f["message"] = r.failure->message;
        f["time"] = r.failure->time ? ordered_json(*r.failure->time) : ordered_json(nullptr);
        j["failure"] = f;
    }
    ordered_json diags = ordered_json::object();
    for (const auto& s : r.diagnostics) diags[s.name] = series_summary(s);
    j["diagnostics"] = diags;
    write_json(path, j);
}

void write_convergence_report(const std::filesystem::path& path, const ConvergenceTable& t) {
    ordered_json j;
    ordered_json levels = ordered_json::array();
    for (const auto& l : t.levels) {
        ordered_json e;
        e["N_s"] = l.N_s;
        e["dt"] = l.dt;
        ordered_json diags = ordered_json::object();
        for (const auto& s : l.report.diagnostics) diags[s.name] = series_summary(s);
        e["diagnostics"] = diags;
        levels.push_back(e);
    }
    j["levels"] = levels;
    ordered_json orders = ordered_json::object();
    for (const auto& c : t.columns) {
        ordered_json e;
        ordered_json errs = ordered_json::array();
        for (double x : c.errors) errs.push_back(json_number(x));
        ordered_json ords = ordered_json::array();
        for (const auto& p : c.orders) ords.push_back(p ? ordered_json(*p) : ordered_json(nullptr));
        e["errors"] = errs;
        e["orders"] = ords;
        orders[c.diagnostic][c.column] = e;
    }
    j["convergence"] = orders;
    write_json(path, j);
}

}  // namespace gstrand
