#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace gstrand {

struct RunReport;
struct ConvergenceTable;

// 17 significant digits, shortest exponent form ("%.17g"-style); nan/inf as text.
std::string format_number(double x);

// Shortest round-trip form, used in column names such as lax_0.5.
std::string format_short(double x);

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    // Diagnostic row: t, values...
    void row(double t, std::span<const double> values);
    // Field row: t, s_index, values...
    void row(double t, std::size_t s_index, std::span<const double> values);
    void flush() { out_.flush(); }

private:
    std::ofstream out_;
    std::filesystem::path path_;
};

void write_run_report(const std::filesystem::path& path, const RunReport& report);
void write_convergence_report(const std::filesystem::path& path, const ConvergenceTable& table);

}  // namespace gstrand
