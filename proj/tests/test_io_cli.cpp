#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "steerxy/errors.hpp"
#include "steerxy/sweep_io.hpp"

using namespace steerxy;
namespace fs = std::filesystem;

namespace {

struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / name) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    fs::path operator/(const std::string& p) const { return dir / p; }
};

int run_cli(const std::string& args, const fs::path& workdir, std::string* out = nullptr,
            std::string* err = nullptr) {
    const fs::path out_path = workdir / "__stdout";
    const fs::path err_path = workdir / "__stderr";
    const std::string cmd = "cd '" + workdir.string() + "' && '" + STEERXY_CLI_PATH "' " + args +
                            " >'" + out_path.string() + "' 2>'" + err_path.string() + "'";
    const int status = std::system(cmd.c_str());
    const auto slurp = [](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    if (out) *out = slurp(out_path);
    if (err) *err = slurp(err_path);
    fs::remove(out_path);
    fs::remove(err_path);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

double column_value(const CsvTable& t, const std::string& col, size_t row) {
    for (size_t i = 0; i < t.columns.size(); ++i)
        if (t.columns[i] == col) return t.rows.at(row).at(i);
    throw std::runtime_error("no column " + col);
}

}  // namespace

TEST_CASE("format_g17 round trips bit-exactly") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    std::uniform_int_distribution<int> ed(-300, 300);
    for (int i = 0; i < 10000; ++i) {
        const double x = std::ldexp(ud(gen), ed(gen) % 60);
        const std::string text = format_g17(x);
        CHECK(std::strtod(text.c_str(), nullptr) == x);
    }
    for (double x : {0.0, -0.0, 1e-300, -1e300, 0.1, 2.0 / 3.0}) {
        CHECK(std::strtod(format_g17(x).c_str(), nullptr) == x);
    }
    CHECK(format_g17(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("sweep csv: write then read, values bit-identical") {
    std::vector<double> s, s10;
    for (int i = 0; i <= 10; ++i) {
        s.push_back(0.01 * i * i - 0.3);
        s10.push_back(0.4 + 0.001 * i);
    }
    const SweepTable t = table_from_samples(0.6, ChainSize::finite(101), 1, 0.5, 0.1, s, s10);

    std::ostringstream out;
    write_sweep_csv(out, std::span<const SweepTable>(&t, 1), {{"gamma", "0.6"}});
    std::istringstream in(out.str());
    const CsvTable parsed = read_csv(in);

    REQUIRE(parsed.columns == std::vector<std::string>{"N", "h", "S", "S10", "dS_dh", "dS10_dh"});
    REQUIRE(parsed.rows.size() == t.rows.size());
    for (size_t i = 0; i < t.rows.size(); ++i) {
        CHECK(parsed.rows[i][0] == 101.0);
        CHECK(parsed.rows[i][1] == t.rows[i].h);
        CHECK(parsed.rows[i][2] == t.rows[i].s);
        CHECK(parsed.rows[i][3] == *t.rows[i].s10);
        CHECK(parsed.rows[i][4] == t.rows[i].ds_dh);
        CHECK(parsed.rows[i][5] == *t.rows[i].ds10_dh);
    }
    CHECK(!parsed.comments.empty());
    CHECK(parsed.comments[1].find("command=sweep") != std::string::npos);
}

TEST_CASE("sweep csv: thermodynamic N column is inf; tsv delimiter honoured") {
    const std::vector<double> s = {0.1, 0.2, 0.3};
    const SweepTable t = table_from_samples(0.6, ChainSize::thermodynamic(), 1, 0.0, 0.5, s);
    std::ostringstream out;
    write_sweep_csv(out, std::span<const SweepTable>(&t, 1), {}, '\t');
    CHECK(out.str().find("N\th\tS\tdS_dh") != std::string::npos);
    std::istringstream in(out.str());
    const CsvTable parsed = read_csv(in);
    CHECK(parsed.delim == '\t');
    CHECK(std::isinf(parsed.rows[0][0]));
}

TEST_CASE("read_csv rejects malformed input") {
    const auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_csv(in);
    };
    CHECK_THROWS_AS(parse(""), ValidationError);                          // no header
    CHECK_THROWS_AS(parse("# only comments\n"), ValidationError);
    CHECK_THROWS_AS(parse("1,2,3\n4,5,6\n"), ValidationError);            // numeric header
    CHECK_THROWS_AS(parse("h,S\n1,2,3\n"), ValidationError);              // ragged row
    CHECK_THROWS_AS(parse("h,S\n1,abc\n"), ValidationError);              // non-numeric cell
}

TEST_CASE("plot scripts cover the four figure layouts") {
    Scratch scratch("steerxy_plot_test");

    // fig1a / fig1b need a sweep table; build a two-size one
    std::vector<double> s1 = {0.1, 0.0, -0.1}, s2 = {0.2, 0.0, -0.2};
    const SweepTable t1 = table_from_samples(0.6, ChainSize::finite(101), 1, 0.9, 0.1, s1);
    const SweepTable t2 = table_from_samples(0.6, ChainSize::finite(401), 1, 0.9, 0.1, s2);
    const std::vector<SweepTable> both = {t1, t2};
    {
        std::ofstream f(scratch / "sweep.csv");
        write_sweep_csv(f, both, {});
    }
    const std::string fig1a = plot_script((scratch / "sweep.csv").string(), Figure::Fig1a);
    CHECK(fig1a.find("plot table using") != std::string::npos);
    CHECK(fig1a.find("sweep.csv") != std::string::npos);

    const std::string fig1b = plot_script((scratch / "sweep.csv").string(), Figure::Fig1b);
    CHECK(fig1b.find("N=101") != std::string::npos);
    CHECK(fig1b.find("N=401") != std::string::npos);

    // fig4 needs the inequality columns
    CHECK_THROWS_AS(plot_script((scratch / "sweep.csv").string(), Figure::Fig4), ValidationError);
    std::vector<double> s10 = {0.4, 0.45, 0.42};
    const SweepTable ti = table_from_samples(0.6, ChainSize::thermodynamic(), 1, 0.9, 0.1, s1, s10);
    {
        std::ofstream f(scratch / "ineq.csv");
        write_sweep_csv(f, std::span<const SweepTable>(&ti, 1), {});
    }
    const std::string fig4 = plot_script((scratch / "ineq.csv").string(), Figure::Fig4);
    CHECK(fig4.find("C10 = 0.5236") != std::string::npos);
    CHECK(fig4.find("multiplot") != std::string::npos);

    // fig2 needs a scaling table with fit metadata
    ScalingFit fit;
    fit.k1.kappa1 = 0.24;
    fit.k1.rms = 1e-3;
    fit.k1.d_lo = 1e-3;
    fit.k1.d_hi = 5e-2;
    fit.k2.peaks = {{101, 0.99, 0.64}, {201, 0.995, 0.80}, {401, 0.999, 0.97},
                    {801, 0.9995, 1.15}, {1601, 0.9999, 1.32}};
    {
        std::vector<int> sizes;
        std::vector<double> peaks;
        for (const auto& p : fit.k2.peaks) {
            sizes.push_back(p.n);
            peaks.push_back(p.peak);
        }
        const LinearFit lf = fit_kappa2_points(sizes, peaks);
        fit.k2.kappa2 = lf.slope;
        fit.k2.rms = lf.rms;
    }
    fit.nu = std::abs(fit.k1.kappa1 / fit.k2.kappa2);
    {
        std::ofstream f(scratch / "scaling.csv");
        write_scaling_csv(f, fit, {});
    }
    const std::string fig2 = plot_script((scratch / "scaling.csv").string(), Figure::Fig2);
    CHECK(fig2.find("k2 = ") != std::string::npos);
    CHECK(fig2.find("with points") != std::string::npos);

    // degenerate input: header but no rows
    {
        std::ofstream f(scratch / "empty.csv");
        f << "h,S\n";
    }
    CHECK_THROWS_AS(plot_script((scratch / "empty.csv").string(), Figure::Fig1a), ValidationError);

    CHECK_THROWS_AS(figure_from_name("fig9"), ValidationError);
}

TEST_CASE("cli: steer emits a single steerable row past the onset") {
    Scratch scratch("steerxy_cli_steer");
    std::string out;
    const int code = run_cli("steer --gamma 0.6 --h 1.2 --limit", scratch.dir, &out);
    CHECK(code == 0);
    std::istringstream in(out);
    const CsvTable t = read_csv(in);
    REQUIRE(t.rows.size() == 1);
    CHECK(column_value(t, "S", 0) < 0.0);
    CHECK(column_value(t, "lambda1", 0) < 0.0);
}

TEST_CASE("cli: corr reproduces the zero-field Ising row") {
    Scratch scratch("steerxy_cli_corr");
    std::string out;
    const int code = run_cli("corr --gamma 1.0 --h 0.0 --limit --r 1", scratch.dir, &out);
    CHECK(code == 0);
    std::istringstream in(out);
    const CsvTable t = read_csv(in);
    REQUIRE(t.rows.size() == 1);
    CHECK(column_value(t, "sxsx", 0) == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(std::abs(column_value(t, "sz", 0)) < 1e-9);
}

TEST_CASE("cli: identical sweep invocations produce byte-identical files") {
    Scratch scratch("steerxy_cli_det");
    const int c1 = run_cli("sweep --gamma 0.6 --h-range 0:2:0.002 --N 101 -o a.csv", scratch.dir);
    const int c2 = run_cli("sweep --gamma 0.6 --h-range 0:2:0.002 --N 101 -o b.csv", scratch.dir);
    CHECK(c1 == 0);
    CHECK(c2 == 0);
    const std::string a = slurp_file(scratch / "a.csv");
    const std::string b = slurp_file(scratch / "b.csv");
    CHECK(!a.empty());
    CHECK(a == b);
}

TEST_CASE("cli: sweep rows round trip into the library values") {
    Scratch scratch("steerxy_cli_round");
    const int code = run_cli("sweep --gamma 0.6 --h-range 0.5:1.5:0.1 --N 11 -o t.csv", scratch.dir);
    REQUIRE(code == 0);
    const CsvTable t = read_csv_file((scratch / "t.csv").string());
    const SweepTable lib = sweep(0.6, ChainSize::finite(11), {0.5, 1.5, 0.1}, 1);
    REQUIRE(t.rows.size() == lib.rows.size());
    for (size_t i = 0; i < lib.rows.size(); ++i) {
        CHECK(column_value(t, "h", i) == lib.rows[i].h);
        CHECK(column_value(t, "S", i) == lib.rows[i].s);        // full 17-digit precision
        CHECK(column_value(t, "dS_dh", i) == lib.rows[i].ds_dh);
    }
}

TEST_CASE("cli: multi-size sweep emits one block per N") {
    Scratch scratch("steerxy_cli_multi");
    const int code = run_cli("sweep --h-range 0.9:1.1:0.1 --sizes 11,21 -o m.csv", scratch.dir);
    REQUIRE(code == 0);
    const CsvTable t = read_csv_file((scratch / "m.csv").string());
    REQUIRE(t.rows.size() == 6);
    CHECK(t.rows[0][0] == 11.0);
    CHECK(t.rows[3][0] == 21.0);
}

TEST_CASE("cli: validation failures exit 2") {
    Scratch scratch("steerxy_cli_val");
    std::string out, err;
    CHECK(run_cli("steer --gamma 0.6 --h 1.0 --limit --bogus-flag", scratch.dir, &out, &err) == 2);
    CHECK(err.find("bogus") != std::string::npos);
    CHECK(run_cli("steer --gamma 0.6 --limit", scratch.dir) == 2);          // missing --h
    CHECK(run_cli("steer --gamma 0.6 --h 1.0", scratch.dir) == 2);          // no size choice
    CHECK(run_cli("steer --h 1.0 --limit --N 11", scratch.dir) == 2);       // both sizes
    CHECK(run_cli("steer --h 1.0 --N 10", scratch.dir) == 2);               // even N
    CHECK(run_cli("sweep --h-range 2:0:0.1 --limit", scratch.dir) == 2);    // bad range
    CHECK(run_cli("corr --h 1.0 --limit --gamma 2.0", scratch.dir) == 2);   // gamma out of range
    CHECK(run_cli("", scratch.dir) == 2);                                   // no subcommand
    CHECK(run_cli("plot --table missing.csv --figure fig1a", scratch.dir) == 2);
}

TEST_CASE("cli: unwritable output path exits 3") {
    Scratch scratch("steerxy_cli_unwritable");
    CHECK(run_cli("steer --h 1.0 --limit -o /nonexistent-dir/x.csv", scratch.dir) == 3);
}

TEST_CASE("cli: no stray files beyond the declared output") {
    Scratch scratch("steerxy_cli_clean");
    const int code = run_cli("steer --gamma 0.6 --h 1.0 --limit -o only.csv", scratch.dir);
    REQUIRE(code == 0);
    int entries = 0;
    for (const auto& e : fs::directory_iterator(scratch.dir)) {
        ++entries;
        CHECK(e.path().filename() == "only.csv");
    }
    CHECK(entries == 1);
}

TEST_CASE("cli: STEERXY_OUT_DIR provides the default output directory") {
    Scratch scratch("steerxy_cli_env");
    const fs::path outdir = scratch / "outputs";
    fs::create_directories(outdir);
    const std::string cmd = "cd '" + scratch.dir.string() + "' && STEERXY_OUT_DIR='" +
                            outdir.string() + "' '" + STEERXY_CLI_PATH +
                            "' steer --gamma 0.6 --h 1.0 --limit >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(fs::exists(outdir / "steer.csv"));
}

TEST_CASE("cli: state prints 32 whitespace-separated numbers") {
    Scratch scratch("steerxy_cli_state");
    std::string out;
    REQUIRE(run_cli("state --gamma 0.6 --h 0.5 --limit", scratch.dir, &out) == 0);
    std::istringstream in(out);
    double v;
    int count = 0;
    while (in >> v) ++count;
    CHECK(count == 32);
}

TEST_CASE("cli: ineq reports value, bound and the fixed-orientation reference") {
    Scratch scratch("steerxy_cli_ineq");
    std::string out;
    REQUIRE(run_cli("ineq --gamma 0.6 --h 1.0 --limit --settings 10", scratch.dir, &out) == 0);
    std::istringstream in(out);
    const CsvTable t = read_csv(in);
    CHECK(column_value(t, "bound", 0) == 0.5236);
    CHECK(column_value(t, "value", 0) <= 0.5236);
    CHECK(column_value(t, "value", 0) + 1e-9 >= column_value(t, "value_fixed", 0));
    CHECK(column_value(t, "violated", 0) == 0.0);
}

TEST_CASE("cli: tsv format switches the delimiter") {
    Scratch scratch("steerxy_cli_tsv");
    std::string out;
    REQUIRE(run_cli("corr --gamma 0.6 --h 0.5 --limit --format tsv", scratch.dir, &out) == 0);
    CHECK(out.find("gamma\th\tN") != std::string::npos);
}

TEST_CASE("cli: plot generates scripts and rejects bad tables") {
    Scratch scratch("steerxy_cli_plot");
    REQUIRE(run_cli("sweep --gamma 0.6 --h-range 0.9:1.1:0.05 --limit -o s.csv", scratch.dir) == 0);
    std::string out;
    CHECK(run_cli("plot --table s.csv --figure fig1a", scratch.dir, &out) == 0);
    CHECK(out.find("gnuplot") != std::string::npos);
    CHECK(run_cli("plot --table s.csv --figure fig9", scratch.dir) == 2);
    CHECK(run_cli("plot --table s.csv --figure fig4", scratch.dir) == 2);  // no S10 columns

    std::ofstream(scratch / "empty.csv") << "h,S\n";
    CHECK(run_cli("plot --table empty.csv --figure fig1a", scratch.dir) == 2);
    std::ofstream(scratch / "badhdr.csv") << "1,2\n3,4\n";
    CHECK(run_cli("plot --table badhdr.csv --figure fig1a", scratch.dir) == 2);
}
