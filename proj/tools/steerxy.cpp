// steerxy: EPR steerability of the transverse-field XY chain's two-site
// ground state, with the criticality analysis around h = 1.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 numerical or
// output failure.
#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "steerxy/criticality.hpp"
#include "steerxy/errors.hpp"
#include "steerxy/sweep_io.hpp"

namespace {

using namespace steerxy;

struct CommonOpts {
    double gamma = 0.6;
    int r = 1;
    bool limit = false;
    int n = 0;  // finite size when > 0
    std::string out;
    std::string format = "csv";
};

char delim_of(const std::string& format) { return format == "tsv" ? '\t' : ','; }

// Output resolution: explicit -o wins; otherwise $STEERXY_OUT_DIR/<default name>
// when the variable is set; stdout as the last resort.
std::string resolve_out(const std::string& out, const std::string& default_name) {
    if (!out.empty()) return out;
    if (const char* dir = std::getenv("STEERXY_OUT_DIR"); dir && *dir)
        return (std::filesystem::path(dir) / default_name).string();
    return {};
}

// Writes through a stringstream so a failed run never leaves a partial file.
int emit(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return std::cout ? 0 : 3;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output path '" << path << "'\n";
        return 3;
    }
    f << content;
    f.flush();
    if (!f) {
        std::cerr << "error: write to '" << path << "' failed\n";
        return 3;
    }
    return 0;
}

ChainSize size_of(const CommonOpts& o) {
    if (o.limit == (o.n > 0))
        throw ValidationError("exactly one of --limit / --N must be given");
    return o.limit ? ChainSize::thermodynamic() : ChainSize::finite(o.n);
}

std::string size_str(const ChainSize& s) {
    return s.is_thermodynamic() ? "inf" : std::to_string(s.n());
}

double size_col(const ChainSize& s) {
    return s.is_thermodynamic() ? std::numeric_limits<double>::infinity()
                                : static_cast<double>(s.n());
}

void add_common(CLI::App* cmd, CommonOpts& o, double* h, bool with_size = true) {
    cmd->set_help_flag("--help", "print this help message and exit");
    cmd->add_option("--gamma", o.gamma, "anisotropy in [0,1]")->capture_default_str();
    cmd->add_option("--r", o.r, "site separation")->capture_default_str();
    if (with_size) {
        cmd->add_flag("--limit", o.limit, "thermodynamic limit");
        cmd->add_option("--N", o.n, "finite chain size (odd, >= 3)");
    }
    cmd->add_option("-o,--out", o.out, "output path (default: $STEERXY_OUT_DIR/<cmd> or stdout)");
    cmd->add_option("--format", o.format, "csv or tsv")
        ->check(CLI::IsMember({"csv", "tsv"}))
        ->capture_default_str();
    if (h) cmd->add_option("--h", *h, "field strength")->required();
}

HRange parse_range(const std::string& text) {
    HRange r;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> r.lo >> c1 >> r.hi >> c2 >> r.step) || c1 != ':' || c2 != ':' || !in.eof())
        throw ValidationError("range must be lo:hi:step, got '" + text + "'");
    r.validate();
    return r;
}

std::vector<int> parse_sizes(const std::string& text) {
    std::vector<int> sizes;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            size_t used = 0;
            sizes.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError("bad size entry '" + item + "'");
        }
    }
    if (sizes.empty()) throw ValidationError("no sizes given");
    return sizes;
}

int run_corr(const CommonOpts& o, double h) {
    const ChainSize size = size_of(o);
    const CorrelatorSet c = correlators({o.gamma, h, size, o.r});
    std::ostringstream out;
    write_metadata(out, "corr",
                   {{"gamma", format_g17(o.gamma)},
                    {"h", format_g17(h)},
                    {"size", size_str(size)},
                    {"r", std::to_string(o.r)}});
    const std::vector<std::string> cols = {"gamma", "h", "N", "r", "sz", "szsz", "sxsx", "sysy"};
    const char d = delim_of(o.format);
    write_header(out, cols, d);
    const std::array<double, 8> row{o.gamma, h,    size_col(size), static_cast<double>(o.r),
                                    c.sz,    c.szsz, c.sxsx,       c.sysy};
    write_row(out, row, d);
    return emit(resolve_out(o.out, "corr.csv"), out.str());
}

int run_steer(const CommonOpts& o, double h) {
    const ChainSize size = size_of(o);
    const TwoQubitState state = reduced_state({o.gamma, h, size, o.r});
    const PtEigenvalues pt = pt_eigenvalues(state);
    std::ostringstream out;
    write_metadata(out, "steer",
                   {{"gamma", format_g17(o.gamma)},
                    {"h", format_g17(h)},
                    {"size", size_str(size)},
                    {"r", std::to_string(o.r)}});
    const std::vector<std::string> cols = {"gamma", "h",       "N",       "r",      "lambda1",
                                           "lambda2", "lambda3", "lambda4", "S"};
    const char d = delim_of(o.format);
    write_header(out, cols, d);
    const std::array<double, 9> row{o.gamma,       h,
                                    size_col(size), static_cast<double>(o.r),
                                    pt.lambda[0],  pt.lambda[1],
                                    pt.lambda[2],  pt.lambda[3],
                                    steerability(pt)};
    write_row(out, row, d);
    return emit(resolve_out(o.out, "steer.csv"), out.str());
}

int run_state(const CommonOpts& o, double h) {
    const ChainSize size = size_of(o);
    const TwoQubitState state = reduced_state({o.gamma, h, size, o.r});
    return emit(resolve_out(o.out, "state.txt"), serialize(state) + "\n");
}

int run_ineq(const CommonOpts& o, double h, int settings, const std::string& axes_file) {
    const ChainSize size = size_of(o);
    const TwoQubitState state = reduced_state({o.gamma, h, size, o.r});
    AxisSet axes;
    if (!axes_file.empty())
        axes = axis_set_from_file(axes_file, axis_set(settings).bound, &std::cerr);
    else
        axes = axis_set(settings);
    const double value_opt = quantum_value_optimized(state, axes);
    const double value_id = quantum_value(state, axes, Rotation::identity());

    std::ostringstream out;
    write_metadata(out, "ineq",
                   {{"gamma", format_g17(o.gamma)},
                    {"h", format_g17(h)},
                    {"size", size_str(size)},
                    {"r", std::to_string(o.r)},
                    {"settings", std::to_string(settings)},
                    {"axes", axes_file.empty() ? "canonical" : axes_file}});
    const std::vector<std::string> cols = {"gamma", "h",     "N",           "r",     "settings",
                                           "value", "bound", "value_fixed", "violated"};
    const char d = delim_of(o.format);
    write_header(out, cols, d);
    const std::array<double, 9> row{o.gamma,
                                    h,
                                    size_col(size),
                                    static_cast<double>(o.r),
                                    static_cast<double>(settings),
                                    value_opt,
                                    axes.bound,
                                    value_id,
                                    value_opt > axes.bound ? 1.0 : 0.0};
    write_row(out, row, d);
    return emit(resolve_out(o.out, "ineq.csv"), out.str());
}

int run_sweep(const CommonOpts& o, const std::string& range_text, const std::string& sizes_text,
              bool with_ineq, bool serial) {
    const HRange range = parse_range(range_text);
    const Exec exec = serial ? Exec::Serial : Exec::Parallel;

    std::vector<ChainSize> sizes;
    if (!sizes_text.empty()) {
        if (o.limit || o.n > 0)
            throw ValidationError("give either --sizes or --limit/--N, not both");
        for (int n : parse_sizes(sizes_text)) sizes.push_back(ChainSize::finite(n));
    } else {
        sizes.push_back(size_of(o));
    }

    std::vector<SweepTable> tables;
    tables.reserve(sizes.size());
    for (const ChainSize& size : sizes)
        tables.push_back(sweep(o.gamma, size, range, o.r, with_ineq, exec));

    std::string size_list;
    for (size_t i = 0; i < sizes.size(); ++i)
        size_list += (i ? "," : "") + size_str(sizes[i]);

    std::ostringstream out;
    write_sweep_csv(out, tables,
                    {{"gamma", format_g17(o.gamma)},
                     {"sizes", size_list},
                     {"r", std::to_string(o.r)},
                     {"h_range", range_text},
                     {"with_inequality", with_ineq ? "1" : "0"}},
                    delim_of(o.format));
    return emit(resolve_out(o.out, "sweep.csv"), out.str());
}

int run_scaling(const CommonOpts& o, const std::string& sizes_text, const std::string& window_text,
                const std::string& side_text, const std::string& grid_text, int points, bool serial) {
    const std::vector<int> sizes = parse_sizes(sizes_text);
    double d_lo = 0, d_hi = 0;
    {
        char c = 0;
        std::istringstream in(window_text);
        if (!(in >> d_lo >> c >> d_hi) || c != ':' || !in.eof())
            throw ValidationError("window must be d_lo:d_hi, got '" + window_text + "'");
    }
    FitSide side = FitSide::Both;
    if (side_text == "below") side = FitSide::Below;
    else if (side_text == "above") side = FitSide::Above;
    else if (side_text != "both") throw ValidationError("side must be below, above or both");

    const HRange grid = parse_range(grid_text);
    const Exec exec = serial ? Exec::Serial : Exec::Parallel;
    const ScalingFit fit = scaling_fit(o.gamma, sizes, d_lo, d_hi, side, grid, o.r, points, exec);

    std::ostringstream out;
    write_scaling_csv(out, fit,
                      {{"gamma", format_g17(o.gamma)},
                       {"sizes", sizes_text},
                       {"r", std::to_string(o.r)},
                       {"window", window_text},
                       {"side", side_text},
                       {"grid", grid_text},
                       {"points_per_side", std::to_string(points)}},
                      delim_of(o.format));
    return emit(resolve_out(o.out, "scaling.csv"), out.str());
}

int run_plot(const std::string& table, const std::string& figure, const std::string& out) {
    const std::string script = plot_script(table, figure_from_name(figure));
    return emit(out, script);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"EPR steerability of the transverse-field XY chain ground state"};
    app.require_subcommand(1);

    CommonOpts corr_o, steer_o, state_o, ineq_o, sweep_o, scaling_o;
    double corr_h = 0, steer_h = 0, state_h = 0, ineq_h = 0;

    auto* corr = app.add_subcommand("corr", "ground-state correlators at one (gamma, h)");
    add_common(corr, corr_o, &corr_h);

    auto* steer = app.add_subcommand("steer", "partial-transpose spectrum and S at one (gamma, h)");
    add_common(steer, steer_o, &steer_h);

    auto* state = app.add_subcommand("state", "two-site reduced density matrix, 16 re/im pairs");
    add_common(state, state_o, &state_h);

    auto* ineq = app.add_subcommand("ineq", "N-setting steering inequality at one (gamma, h)");
    int ineq_settings = 10;
    std::string ineq_axes;
    add_common(ineq, ineq_o, &ineq_h);
    ineq->add_option("--settings", ineq_settings, "2, 3 or 10")->capture_default_str();
    ineq->add_option("--axes-file", ineq_axes, "custom axes, one 'x y z' per line");

    auto* sweepc = app.add_subcommand("sweep", "S (and optionally S10) over an h grid");
    std::string sweep_range = "0:2:0.002", sweep_sizes;
    bool sweep_ineq = false, sweep_serial = false;
    add_common(sweepc, sweep_o, nullptr);
    sweepc->add_option("--h-range", sweep_range, "lo:hi:step")->capture_default_str();
    sweepc->add_option("--sizes", sweep_sizes, "comma list of odd sizes (multi-curve sweep)");
    sweepc->add_flag("--with-ineq", sweep_ineq, "add the optimized 10-setting columns");
    sweepc->add_flag("--serial", sweep_serial, "serial reference execution");

    auto* scaling = app.add_subcommand("scaling", "kappa1/kappa2 fits and the exponent nu");
    std::string scaling_sizes = "101,201,401,801,1601,3201";
    std::string scaling_window = "1e-3:5e-2", scaling_side = "both", scaling_grid = "0.5:1.5:0.002";
    int scaling_points = 24;
    bool scaling_serial = false;
    add_common(scaling, scaling_o, nullptr, /*with_size=*/false);
    scaling->add_option("--sizes", scaling_sizes, "comma list of odd sizes")->capture_default_str();
    scaling->add_option("--window", scaling_window, "|h-1| fit window d_lo:d_hi")->capture_default_str();
    scaling->add_option("--side", scaling_side, "below, above or both")->capture_default_str();
    scaling->add_option("--grid", scaling_grid, "coarse peak-search grid lo:hi:step")->capture_default_str();
    scaling->add_option("--points-per-side", scaling_points, "fit nodes per side")->capture_default_str();
    scaling->add_flag("--serial", scaling_serial, "serial reference execution");

    auto* plot = app.add_subcommand("plot", "gnuplot script for a CSV produced by this tool");
    std::string plot_table, plot_figure, plot_out;
    plot->add_option("--table", plot_table, "input CSV")->required();
    plot->add_option("--figure", plot_figure, "fig1a, fig1b, fig2 or fig4")->required();
    plot->add_option("-o,--out", plot_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion") {
            return app.exit(e);
        }
        app.exit(e);  // prints the message and usage hint
        return 2;
    }

    try {
        if (corr->parsed()) return run_corr(corr_o, corr_h);
        if (steer->parsed()) return run_steer(steer_o, steer_h);
        if (state->parsed()) return run_state(state_o, state_h);
        if (ineq->parsed()) return run_ineq(ineq_o, ineq_h, ineq_settings, ineq_axes);
        if (sweepc->parsed())
            return run_sweep(sweep_o, sweep_range, sweep_sizes, sweep_ineq, sweep_serial);
        if (scaling->parsed())
            return run_scaling(scaling_o, scaling_sizes, scaling_window, scaling_side, scaling_grid,
                               scaling_points, scaling_serial);
        if (plot->parsed()) return run_plot(plot_table, plot_figure, plot_out);
        return 2;
    } catch (const steerxy::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
