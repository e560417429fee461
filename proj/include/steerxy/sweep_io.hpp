#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "steerxy/criticality.hpp"

namespace steerxy {

inline constexpr const char* kVersion = "1.0.0";

// %.17g: enough digits for parse(format(x)) == x bit for bit.
std::string format_g17(double x);

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

// '#'-prefixed metadata lines: version, then every config entry as key=value.
void write_metadata(std::ostream& out, const std::string& command, const ConfigEntries& config);

// Single-table or multi-size sweep output. Columns:
//   N,h,S,dS_dh              (plain)
//   N,h,S,S10,dS_dh,dS10_dh  (with the inequality columns)
// N is the spin count, "inf" for the thermodynamic limit. Every table in the
// span must agree on the presence of the inequality columns.
void write_sweep_csv(std::ostream& out, std::span<const SweepTable> tables,
                     const ConfigEntries& config, char delim = ',');

// Scaling output: one row per size (N, ln_N, h_m, peak_dS_dh) plus the fitted
// constants as metadata entries (kappa1, kappa2, nu, windows, rms values).
void write_scaling_csv(std::ostream& out, const ScalingFit& fit, const ConfigEntries& config,
                       char delim = ',');

// Generic one-row helpers used by the corr/steer/ineq subcommands.
void write_header(std::ostream& out, std::span<const std::string> columns, char delim = ',');
void write_row(std::ostream& out, std::span<const double> values, char delim = ',');

struct CsvTable {
    std::vector<std::string> comments;  // without the leading '#'
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    char delim = ',';
};

// Parses output written by this artifact. The delimiter is inferred from the
// header line. Throws ValidationError on a malformed header or value.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

enum class Figure { Fig1a, Fig1b, Fig2, Fig4 };

Figure figure_from_name(const std::string& name);  // "fig1a", "fig1b", "fig2", "fig4"

// A self-contained gnuplot script rendering the named figure layout from a
// CSV produced by this artifact. Reads the file to validate the header and to
// enumerate curves; computes no physics. Throws ValidationError when the
// table lacks the needed columns or has no data rows.
std::string plot_script(const std::string& table_path, Figure figure);

}  // namespace steerxy
