#include "steerxy/sweep_io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "steerxy/errors.hpp"

namespace steerxy {

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_metadata(std::ostream& out, const std::string& command, const ConfigEntries& config) {
    out << "# steerxy " << kVersion << "\n";
    out << "# command=" << command;
    for (const auto& [key, value] : config) out << ' ' << key << '=' << value;
    out << "\n";
}

void write_header(std::ostream& out, std::span<const std::string> columns, char delim) {
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) out << delim;
        out << columns[i];
    }
    out << "\n";
}

void write_row(std::ostream& out, std::span<const double> values, char delim) {
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) out << delim;
        out << format_g17(values[i]);
    }
    out << "\n";
}

namespace {

double size_column(const ChainSize& size) {
    return size.is_thermodynamic() ? std::numeric_limits<double>::infinity()
                                   : static_cast<double>(size.n());
}

}  // namespace

void write_sweep_csv(std::ostream& out, std::span<const SweepTable> tables,
                     const ConfigEntries& config, char delim) {
    if (tables.empty()) throw ValidationError("write_sweep_csv: no tables");
    const bool with_ineq = tables.front().has_inequality();
    for (const SweepTable& t : tables)
        if (t.has_inequality() != with_ineq)
            throw ValidationError("write_sweep_csv: mixed inequality columns");

    write_metadata(out, "sweep", config);
    std::vector<std::string> columns = {"N", "h", "S", "dS_dh"};
    if (with_ineq) columns = {"N", "h", "S", "S10", "dS_dh", "dS10_dh"};
    write_header(out, columns, delim);

    for (const SweepTable& t : tables) {
        const double n_col = size_column(t.size);
        for (const SweepRow& row : t.rows) {
            if (with_ineq) {
                const std::array<double, 6> vals{n_col,    row.h,      row.s,
                                                 *row.s10, row.ds_dh, *row.ds10_dh};
                write_row(out, vals, delim);
            } else {
                const std::array<double, 4> vals{n_col, row.h, row.s, row.ds_dh};
                write_row(out, vals, delim);
            }
        }
    }
}

void write_scaling_csv(std::ostream& out, const ScalingFit& fit, const ConfigEntries& config,
                       char delim) {
    ConfigEntries all = config;
    if (fit.k1.below) {
        all.emplace_back("kappa1_below", format_g17(fit.k1.below->slope));
        all.emplace_back("kappa1_below_rms", format_g17(fit.k1.below->rms));
    }
    if (fit.k1.above) {
        all.emplace_back("kappa1_above", format_g17(fit.k1.above->slope));
        all.emplace_back("kappa1_above_rms", format_g17(fit.k1.above->rms));
    }
    all.emplace_back("kappa1", format_g17(fit.k1.kappa1));
    all.emplace_back("kappa1_window", format_g17(fit.k1.d_lo) + ":" + format_g17(fit.k1.d_hi));
    all.emplace_back("kappa2", format_g17(fit.k2.kappa2));
    all.emplace_back("kappa2_rms", format_g17(fit.k2.rms));
    LinearFit line;  // intercept for the fig2 overlay
    {
        std::vector<int> sizes;
        std::vector<double> peaks;
        for (const SizePeak& p : fit.k2.peaks) {
            sizes.push_back(p.n);
            peaks.push_back(p.peak);
        }
        line = fit_kappa2_points(sizes, peaks);
    }
    all.emplace_back("kappa2_intercept", format_g17(line.intercept));
    all.emplace_back("nu", format_g17(fit.nu));

    write_metadata(out, "scaling", all);
    const std::vector<std::string> columns = {"N", "ln_N", "h_m", "peak_dS_dh"};
    write_header(out, columns, delim);
    for (const SizePeak& p : fit.k2.peaks) {
        const std::array<double, 4> vals{static_cast<double>(p.n),
                                         std::log(static_cast<double>(p.n)), p.h_m, p.peak};
        write_row(out, vals, delim);
    }
}

namespace {

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : line) {
        if (c == delim) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            table.comments.push_back(line.substr(1));
            continue;
        }
        if (!have_header) {
            table.delim = line.find('\t') != std::string::npos ? '\t' : ',';
            table.columns = split(line, table.delim);
            if (table.columns.size() < 2 || table.columns.front().empty())
                throw ValidationError("csv: malformed header line");
            for (const std::string& c : table.columns) {
                char* end = nullptr;
                std::strtod(c.c_str(), &end);
                if (end != c.c_str() && *end == '\0')
                    throw ValidationError("csv: header line looks numeric");
            }
            have_header = true;
            continue;
        }
        const std::vector<std::string> parts = split(line, table.delim);
        if (parts.size() != table.columns.size())
            throw ValidationError("csv: row width differs from header");
        std::vector<double> row(parts.size());
        for (size_t i = 0; i < parts.size(); ++i) {
            char* end = nullptr;
            row[i] = std::strtod(parts[i].c_str(), &end);
            if (end == parts[i].c_str() || *end != '\0')
                throw ValidationError("csv: non-numeric value '" + parts[i] + "'");
        }
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw ValidationError("csv: missing header line");
    return table;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    return read_csv(in);
}

Figure figure_from_name(const std::string& name) {
    if (name == "fig1a") return Figure::Fig1a;
    if (name == "fig1b") return Figure::Fig1b;
    if (name == "fig2") return Figure::Fig2;
    if (name == "fig4") return Figure::Fig4;
    throw ValidationError("unknown figure '" + name + "' (expected fig1a, fig1b, fig2 or fig4)");
}

namespace {

int column_index(const CsvTable& t, const std::string& name) {
    for (size_t i = 0; i < t.columns.size(); ++i)
        if (t.columns[i] == name) return static_cast<int>(i);
    throw ValidationError("csv lacks required column '" + name + "'");
}

std::string metadata_value(const CsvTable& t, const std::string& key) {
    for (const std::string& c : t.comments) {
        size_t pos = 0;
        while ((pos = c.find(key + "=", pos)) != std::string::npos) {
            const bool at_token = pos == 0 || c[pos - 1] == ' ';
            if (at_token) {
                const size_t start = pos + key.size() + 1;
                const size_t end = c.find(' ', start);
                return c.substr(start, end == std::string::npos ? end : end - start);
            }
            ++pos;
        }
    }
    throw ValidationError("csv metadata lacks '" + key + "'");
}

std::string gnuplot_prologue(const std::string& table_path, char delim) {
    std::string s;
    s += "#!/usr/bin/env gnuplot\n";
    s += "# generated by steerxy " + std::string(kVersion) + "\n";
    s += std::string("set datafile separator '") + (delim == '\t' ? "\\t" : ",") + "'\n";
    s += "table = '" + table_path + "'\n";
    s += "set grid\n";
    return s;
}

}  // namespace

std::string plot_script(const std::string& table_path, Figure figure) {
    const CsvTable t = read_csv_file(table_path);
    if (t.rows.empty()) throw ValidationError("csv has no data rows");

    std::string s = gnuplot_prologue(table_path, t.delim);
    const auto col = [&](const std::string& name) { return column_index(t, name) + 1; };

    switch (figure) {
        case Figure::Fig1a: {
            const int ch = col("h"), cs = col("S");
            s += "set xlabel 'h'\nset ylabel 'S'\n";
            s += "plot table using " + std::to_string(ch) + ":" + std::to_string(cs) +
                 " with lines title 'S', 0 with lines dt 2 lc 'black' notitle\n";
            break;
        }
        case Figure::Fig1b: {
            const int cn = col("N"), ch = col("h"), cd = col("dS_dh");
            std::set<double> sizes;
            for (const auto& row : t.rows) sizes.insert(row[cn - 1]);
            s += "set xlabel 'h'\nset ylabel 'dS/dh'\n";
            s += "plot ";
            bool first = true;
            for (double n : sizes) {
                if (!first) s += ", \\\n     ";
                first = false;
                std::string cond, title;
                if (std::isinf(n)) {
                    cond = "$" + std::to_string(cn) + " > 1e300";
                    title = "N=inf";
                } else {
                    cond = "$" + std::to_string(cn) + " == " + format_g17(n);
                    title = "N=" + std::to_string(static_cast<long long>(n));
                }
                s += "table using " + std::to_string(ch) + ":(" + cond + " ? $" +
                     std::to_string(cd) + " : 1/0) with lines title '" + title + "'";
            }
            s += "\n";
            break;
        }
        case Figure::Fig2: {
            const int cl = col("ln_N"), cp = col("peak_dS_dh");
            const std::string k2 = metadata_value(t, "kappa2");
            const std::string c2 = metadata_value(t, "kappa2_intercept");
            s += "set xlabel 'ln N'\nset ylabel 'peak dS/dh'\n";
            s += "k2 = " + k2 + "\nc2 = " + c2 + "\n";
            s += "plot table using " + std::to_string(cl) + ":" + std::to_string(cp) +
                 " with points pt 7 title 'peaks', k2*x + c2 with lines title 'fit'\n";
            break;
        }
        case Figure::Fig4: {
            const int ch = col("h"), cs10 = col("S10"), cd10 = col("dS10_dh");
            s += "C10 = 0.5236\n";
            s += "set multiplot layout 2,1\n";
            s += "set xlabel 'h'\nset ylabel 'S10'\n";
            s += "plot table using " + std::to_string(ch) + ":" + std::to_string(cs10) +
                 " with lines title 'S10', C10 with lines dt 2 lc 'black' title 'C10'\n";
            s += "set ylabel 'dS10/dh'\n";
            s += "plot table using " + std::to_string(ch) + ":" + std::to_string(cd10) +
                 " with lines title 'dS10/dh'\n";
            s += "unset multiplot\n";
            break;
        }
    }
    return s;
}

}  // namespace steerxy
