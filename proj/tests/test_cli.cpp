#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "grushin/config.hpp"

using namespace grushin;
namespace fs = std::filesystem;

namespace {

fs::path binary_path() {
    // tests run from the build tree; the tool lives next door
    fs::path p = fs::current_path() / "tools" / "grushinlab";
    if (!fs::exists(p)) p = fs::current_path() / ".." / "tools" / "grushinlab";
    return p;
}

int run(const std::string& args) {
    std::string cmd = binary_path().string() + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path write_config(const std::string& body, const std::string& name) {
    fs::path p = fs::temp_directory_path() / name;
    std::ofstream f(p);
    f << body;
    return p;
}

}  // namespace

TEST_CASE("config: defaults, parsing, unknown keys") {
    Config c;
    CHECK(c.get_double("alpha") == 0.5);
    CHECK(c.get_int("n") == 9);
    CHECK_THROWS_AS(c.set("no.such.key", "1"), ConfigError);
    CHECK_THROWS_AS(c.get_double("nope"), ConfigError);

    fs::path good = write_config("alpha = 0.75\n# comment\nn = 16\n",
                                 "cfg_good.txt");
    Config g = Config::load(good.string());
    CHECK(g.get_double("alpha") == 0.75);
    CHECK(g.get_int("n") == 16);
    CHECK(g.has_explicit("alpha"));
    CHECK_FALSE(g.has_explicit("c_m"));

    fs::path bad = write_config("alfa = 0.75\n", "cfg_bad.txt");
    CHECK_THROWS_WITH_AS(Config::load(bad.string()),
                         "unknown config key: alfa", ConfigError);
    fs::path junk = write_config("alpha = 0.75x\n", "cfg_junk.txt");
    Config j = Config::load(junk.string());
    CHECK_THROWS_AS(j.get_double("alpha"), ConfigError);
}

TEST_CASE("cli: malformed key exits with code 2 naming the key") {
    fs::path bad = write_config("grid.nonsense = 3\n", "cfg_cli_bad.txt");
    fs::path out = fs::temp_directory_path() / "cli_bad_out";
    std::string cmd = binary_path().string() + " covercheck --config " +
                      bad.string() + " --out " + out.string() +
                      " 2> " + (out.string() + ".err");
    int mk = std::system(("mkdir -p " + out.string()).c_str());
    REQUIRE(WEXITSTATUS(mk) == 0);
    int rc = WEXITSTATUS(std::system(cmd.c_str()));
    CHECK(rc == 2);
    CHECK(slurp(out.string() + ".err").find("grid.nonsense") !=
          std::string::npos);
}

TEST_CASE("cli: covercheck runs, emits manifest and plot script") {
    fs::path out = fs::temp_directory_path() / "cli_cover";
    int rc = run("covercheck --out " + out.string());
    CHECK(rc == 0);
    CHECK(fs::exists(out / "manifest.json"));
    CHECK(fs::exists(out / "theta_residuals.csv"));
    CHECK(fs::exists(out / "plot_covercheck.gp"));
    std::string manifest = slurp(out / "manifest.json");
    CHECK(manifest.find("\"status\": \"OK\"") != std::string::npos);
    // manifest echoes the full resolved config
    CHECK(manifest.find("\"alpha\"") != std::string::npos);
    CHECK(manifest.find("\"covercheck.terms\"") != std::string::npos);
    // plot script references only emitted CSVs
    std::string plot = slurp(out / "plot_covercheck.gp");
    CHECK(plot.find("covering_tail.csv") != std::string::npos);
}

TEST_CASE("cli: identical configs give byte-identical CSVs") {
    fs::path o1 = fs::temp_directory_path() / "cli_det1";
    fs::path o2 = fs::temp_directory_path() / "cli_det2";
    CHECK(run("covercheck --out " + o1.string()) == 0);
    CHECK(run("covercheck --out " + o2.string() + " --workers 1") == 0);
    CHECK(slurp(o1 / "theta_residuals.csv") ==
          slurp(o2 / "theta_residuals.csv"));
    CHECK(slurp(o1 / "covering_tail.csv") == slurp(o2 / "covering_tail.csv"));
}

TEST_CASE("cli: spectrum CSV is worker-count independent") {
    fs::path cfg = write_config(
        "spectrum.lambda_max = 24\nspectrum.nr = 401\n", "cfg_det.txt");
    fs::path o1 = fs::temp_directory_path() / "cli_sdet1";
    fs::path o2 = fs::temp_directory_path() / "cli_sdet2";
    CHECK(run("spectrum --config " + cfg.string() + " --out " + o1.string() +
              " --workers 2") == 0);
    CHECK(run("spectrum --config " + cfg.string() + " --out " + o2.string() +
              " --workers 1") == 0);
    CHECK(slurp(o1 / "spectrum.csv") == slurp(o2 / "spectrum.csv"));
    CHECK(slurp(o1 / "counting.csv") == slurp(o2 / "counting.csv"));
}

TEST_CASE("cli: --refine halves spacings and reports convergence ratios") {
    fs::path cfg = write_config(
        "grid.nr = 81\ngrid.nv = 81\ngeodesic.base_nr = 65\n"
        "geodesic.levels = 3\ngeodesic.pairs = 2\ngeodesic.v_count = 3\n"
        "geodesic.slope_tol = 0.03\n",
        "cfg_refine.txt");
    fs::path out = fs::temp_directory_path() / "cli_refine";
    int rc = run("geodesic --config " + cfg.string() + " --out " +
                 out.string() + " --refine 1");
    CHECK(rc == 0);
    std::string manifest = slurp(out / "manifest.json");
    CHECK(manifest.find("\"refine\": 1") != std::string::npos);
    CHECK(manifest.find("convergence_ratios") != std::string::npos);
}

TEST_CASE("cli: spectrum CSV starts with the 4|k|m ladder") {
    fs::path cfg = write_config(
        "spectrum.space = ybar\nspectrum.lambda_max = 20\n"
        "spectrum.nr = 801\nspectrum.k_max = 3\n",
        "cfg_spec.txt");
    fs::path out = fs::temp_directory_path() / "cli_spec";
    int rc = run("spectrum --config " + cfg.string() + " --out " +
                 out.string());
    CHECK(rc == 0);
    std::ifstream csv(out / "spectrum.csv");
    std::string header, l1, l2, l3, l4;
    std::getline(csv, header);
    std::getline(csv, l1);
    std::getline(csv, l2);
    std::getline(csv, l3);
    std::getline(csv, l4);
    CHECK(header == "lambda,mult,k,radial_index,bc");
    CHECK(std::stod(l1) == doctest::Approx(4.0).epsilon(1e-4));
    CHECK(std::stod(l2) == doctest::Approx(8.0).epsilon(1e-4));
    CHECK(std::stod(l3) == doctest::Approx(8.0).epsilon(1e-4));
    CHECK(std::stod(l4) == doctest::Approx(12.0).epsilon(1e-4));
}

TEST_CASE("cli: heattrace smoke run with the reduced config") {
    fs::path cfg = write_config(
        "heattrace.period = 4\nheattrace.s_lo = 0.14\nheattrace.s_hi = 0.5\n"
        "heattrace.s_count = 7\nheattrace.tau_min = 0.08\n"
        "heattrace.tau_count = 9\nheattrace.grid_nodes = 701\n",
        "cfg_heat.txt");
    fs::path out = fs::temp_directory_path() / "cli_heat";
    int rc = run("heattrace --config " + cfg.string() + " --out " +
                 out.string());
    CHECK(rc == 0);
    CHECK(fs::exists(out / "h_table.csv"));
    CHECK(fs::exists(out / "box_trace.csv"));
    CHECK(fs::exists(out / "trace_fit.json"));
    std::string manifest = slurp(out / "manifest.json");
    CHECK(manifest.find("route_consistency") != std::string::npos);
}

TEST_CASE("cli: weyl on the ideal spectrum reports the 1/2 log law") {
    fs::path cfg = write_config(
        "weyl.source = ideal\nweyl.law = log\nweyl.ideal_jmax = 250000\n",
        "cfg_weyl.txt");
    fs::path out = fs::temp_directory_path() / "cli_weyl";
    int rc = run("weyl --config " + cfg.string() + " --out " + out.string());
    CHECK(rc == 0);
    std::string fit = slurp(out / "weyl_fit.json");
    CHECK(fit.find("log_corrected") != std::string::npos);
    auto pos = fit.find("\"leading_coefficient\": ");
    REQUIRE(pos != std::string::npos);
    double a = std::stod(fit.substr(pos + 23));
    CHECK(a == doctest::Approx(0.5).epsilon(0.05));
}
