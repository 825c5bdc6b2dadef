// End-to-end tests of the fractal_chain binary. The executable path arrives
// via FRACTAL_CHAIN_BIN (set by CMake on the test target).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <json.hpp>

#include "fractal_chain/io.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("fc_cli_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string binary() {
    const char* bin = std::getenv("FRACTAL_CHAIN_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "FRACTAL_CHAIN_BIN not set");
    return bin;
}

int run_cli(const std::string& args, const fs::path& stdout_file = {}) {
    std::string cmd = binary() + " " + args;
    if (!stdout_file.empty()) cmd += " > " + stdout_file.string();
    cmd += " 2> /dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

json summary_of(const fs::path& stdout_file) {
    return json::parse(slurp(stdout_file));
}

} // namespace

TEST_CASE("simulate with zero steps emits only the initial state") {
    TempDir tmp;
    const auto out = tmp.path / "run";
    const int rc = run_cli("simulate --n-particles 8 --mode-index 1 --dt 0.01 "
                           "--n-steps 0 --out " +
                               out.string(),
                           tmp.path / "stdout.json");
    CHECK(rc == 0);
    const std::string traj = slurp(out / "trajectory.csv");
    CHECK(std::count(traj.begin(), traj.end(), '\n') == 9); // header + 8 rows
    const auto s = summary_of(tmp.path / "stdout.json");
    CHECK(s.at("command") == "simulate");
    CHECK(s.at("diverged") == false);
}

TEST_CASE("a stable 1e4-step run reports energy drift below 1e-6") {
    TempDir tmp;
    const auto out = tmp.path / "run";
    // nearest neighbor: omega_max = 2, dt = 0.05 gives dt*omega_max = 0.1
    const int rc = run_cli(
        "simulate --n-particles 64 --init random --seed 1 --dt 0.05 "
        "--n-steps 10000 --record-every 1 --out " +
            out.string(),
        tmp.path / "stdout.json");
    CHECK(rc == 0);
    const auto s = summary_of(tmp.path / "stdout.json");
    CHECK(s.at("energy_drift").get<double>() <= 1e-6);
    CHECK(fs::exists(out / "energy.csv"));
}

TEST_CASE("dt breaking the stability guard exits 2 before stepping") {
    TempDir tmp;
    const auto out = tmp.path / "run";
    const int rc = run_cli("simulate --n-particles 8 --mode-index 1 --dt 1.5 "
                           "--n-steps 100 --out " +
                           out.string());
    CHECK(rc == 2);
    CHECK(!fs::exists(out / "trajectory.csv"));
}

TEST_CASE("dispersion of the nearest-neighbor chain matches 2|sin(k/2)|") {
    TempDir tmp;
    const auto out = tmp.path / "run";
    const int rc = run_cli(
        "dispersion --k-min 0 --k-max 3.141592653589793 --n-points 9 --out " +
        out.string());
    CHECK(rc == 0);
    const auto curve =
        fractal_chain::read_dispersion_csv(out / "dispersion.csv");
    REQUIRE(curve.k.size() == 9);
    for (std::size_t i = 0; i < curve.k.size(); ++i) {
        const double expected = 2.0 * std::abs(std::sin(0.5 * curve.k[i]));
        CHECK(curve.omega[i] == doctest::Approx(expected).epsilon(1e-14));
    }
    CHECK(fs::exists(out / "dispersion_kernel.json"));
}

TEST_CASE("dispersion --measure reports relative errors below 1e-4") {
    TempDir tmp;
    const auto out = tmp.path / "run";
    const int rc = run_cli(
        "dispersion --n-points 5 --measure --measure-modes 3,9,16 "
        "--n-particles 64 --out " +
            out.string(),
        tmp.path / "stdout.json");
    CHECK(rc == 0);
    const auto s = summary_of(tmp.path / "stdout.json");
    CHECK(s.at("worst_rel_error").get<double>() <= 1e-4);
    const std::string text = slurp(out / "measured_modes.csv");
    CHECK(text.find("mode_index,k,omega_analytic,omega_measured,rel_error") == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_CASE("empty dispersion grid exits 2") {
    TempDir tmp;
    CHECK(run_cli("dispersion --n-points 0 --out " + (tmp.path / "o").string()) ==
          2);
}

TEST_CASE("weierstrass endpoints and tail bound") {
    TempDir tmp;
    const auto out = tmp.path / "run";
    const int rc = run_cli(
        "weierstrass --a 3 --b 0.5 --n-max 60 --x-min 0 --x-max 1 "
        "--n-samples 3 --out " +
        out.string());
    CHECK(rc == 0);
    const auto g =
        fractal_chain::read_two_column_csv(out / "weierstrass.csv", "x,W");
    REQUIRE(g.size() == 3);
    CHECK(std::abs(g.front().second - 2.0) <= 1e-12);
    CHECK(std::abs(g.back().second - (-2.0)) <= 1e-12);

    const auto meta = json::parse(slurp(out / "weierstrass_meta.json"));
    CHECK(meta.at("tail_bound").get<double>() ==
          doctest::Approx(std::pow(0.5, 61) / 0.5).epsilon(1e-15));
}

TEST_CASE("weierstrass with a single sample lands on x_min") {
    TempDir tmp;
    const auto out = tmp.path / "run";
    const int rc = run_cli(
        "weierstrass --a 3 --b 0.5 --n-max 10 --x-min 0.25 --x-max 1 "
        "--n-samples 1 --out " +
        out.string());
    CHECK(rc == 0);
    const std::string text = slurp(out / "weierstrass.csv");
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
    CHECK(text.find("0.25,") != std::string::npos);
}

TEST_CASE("boxdim of a line graph reports dimension 1") {
    TempDir tmp;
    fractal_chain::PlanarGraph g;
    for (int i = 0; i <= 2000; ++i) {
        g.x.push_back(i / 2000.0);
        g.y.push_back(i / 2000.0);
    }
    fractal_chain::write_planar_graph_csv(tmp.path / "line.csv", g);
    const auto out = tmp.path / "run";
    const int rc = run_cli("boxdim --input " + (tmp.path / "line.csv").string() +
                               " --eps-max 0.25 --eps-min 0.00390625 "
                               "--n-scales 7 --out " +
                               out.string(),
                           tmp.path / "stdout.json");
    CHECK(rc == 0);
    const auto res = fractal_chain::read_box_count_json(out / "boxdim.json");
    CHECK(std::abs(res.dimension - 1.0) <= 0.05);
    CHECK(res.r_squared >= 0.98);
}

TEST_CASE("boxdim with too few scales exits 2") {
    TempDir tmp;
    fractal_chain::PlanarGraph g;
    for (int i = 0; i <= 100; ++i) {
        g.x.push_back(i / 100.0);
        g.y.push_back(i / 100.0);
    }
    fractal_chain::write_planar_graph_csv(tmp.path / "line.csv", g);
    CHECK(run_cli("boxdim --input " + (tmp.path / "line.csv").string() +
                  " --eps-max 0.25 --eps-min 0.0625 --n-scales 3 --out " +
                  (tmp.path / "o").string()) == 2);
}

TEST_CASE("poor log-log fit exits 4 with results still written") {
    TempDir tmp;
    // scales straddling the saturation knee of a unit diagonal: counts
    // (1, 1, 3, 5) bend visibly in log-log, r^2 ~ 0.89
    fractal_chain::PlanarGraph g;
    for (int i = 0; i <= 400; ++i) {
        g.x.push_back(i / 400.0);
        g.y.push_back(i / 400.0);
    }
    fractal_chain::write_planar_graph_csv(tmp.path / "diag.csv", g);
    const auto out = tmp.path / "run";
    const int rc = run_cli("boxdim --input " + (tmp.path / "diag.csv").string() +
                               " --eps-max 3.0 --eps-min 0.375 --n-scales 4 --out " +
                               out.string(),
                           tmp.path / "stdout.json");
    CHECK(rc == 4);
    REQUIRE(fs::exists(out / "boxdim.json"));
    const auto res = fractal_chain::read_box_count_json(out / "boxdim.json");
    CHECK(res.r_squared < 0.98);
    const auto s = summary_of(tmp.path / "stdout.json");
    CHECK(s.at("fit_ok") == false);
}

TEST_CASE("boxdim on malformed CSV exits 2") {
    TempDir tmp;
    std::ofstream(tmp.path / "bad.csv") << "x,y\n0.0,zero\n1.0,1.0\n";
    CHECK(run_cli("boxdim --input " + (tmp.path / "bad.csv").string() +
                  " --out " + (tmp.path / "o").string()) == 2);
}

TEST_CASE("generated Weierstrass graph lands near the closed form") {
    TempDir tmp;
    const auto out = tmp.path / "run";
    const int rc = run_cli(
        "boxdim --a 3 --b 0.5 --n-max 40 --x-min 0 --x-max 1 "
        "--n-samples 200001 --eps-max 0.125 --eps-min 0.001953125 "
        "--n-scales 7 --out " +
            out.string(),
        tmp.path / "stdout.json");
    CHECK(rc == 0);
    const auto res = fractal_chain::read_box_count_json(out / "boxdim.json");
    CHECK(std::abs(res.dimension - 1.3690702464285426) <= 0.1);
    CHECK(fs::exists(out / "graph.csv"));
}

TEST_CASE("identical runs produce byte-identical data files") {
    TempDir tmp;
    const std::string args =
        "simulate --n-particles 32 --init random --seed 7 --dt 0.02 "
        "--n-steps 500 --record-every 25 --out ";
    CHECK(run_cli(args + (tmp.path / "r1").string()) == 0);
    CHECK(run_cli(args + (tmp.path / "r2").string()) == 0);
    CHECK(slurp(tmp.path / "r1" / "trajectory.csv") ==
          slurp(tmp.path / "r2" / "trajectory.csv"));
    CHECK(slurp(tmp.path / "r1" / "energy.csv") ==
          slurp(tmp.path / "r2" / "energy.csv"));
    CHECK(slurp(tmp.path / "r1" / "kernel.json") ==
          slurp(tmp.path / "r2" / "kernel.json"));

    const std::string dargs =
        "dispersion --family wm_fractal --a 2 --d-graph 1.5 --order 8 "
        "--k-min 0 --k-max 3.14 --n-points 1000 --out ";
    CHECK(run_cli(dargs + (tmp.path / "d1").string()) == 0);
    CHECK(run_cli(dargs + (tmp.path / "d2").string()) == 0);
    CHECK(slurp(tmp.path / "d1" / "dispersion.csv") ==
          slurp(tmp.path / "d2" / "dispersion.csv"));
}

TEST_CASE("config file drives the run and flags override it") {
    TempDir tmp;
    std::ofstream(tmp.path / "exp.cfg") << "[kernel]\n"
                                           "family = nearest_neighbor\n"
                                           "[sim]\n"
                                           "n_particles = 16\n"
                                           "mode_index = 2\n"
                                           "dt = 0.02\n"
                                           "n_steps = 10\n"
                                           "[output]\n"
                                           "dir = " +
                                               (tmp.path / "from_file").string() +
                                               "\n";
    CHECK(run_cli("--config " + (tmp.path / "exp.cfg").string() + " simulate") ==
          0);
    CHECK(fs::exists(tmp.path / "from_file" / "trajectory.csv"));

    // --out beats [output] dir
    CHECK(run_cli("--config " + (tmp.path / "exp.cfg").string() +
                  " --out " + (tmp.path / "flag_wins").string() + " simulate") ==
          0);
    CHECK(fs::exists(tmp.path / "flag_wins" / "trajectory.csv"));

    // value flags beat file values: 4 steps recorded instead of 10
    CHECK(run_cli("--config " + (tmp.path / "exp.cfg").string() + " --out " +
                  (tmp.path / "steps_win").string() +
                  " simulate --n-steps 4 --record-every 1") == 0);
    const auto tr = fractal_chain::read_trajectory_csv(tmp.path / "steps_win" /
                                                       "trajectory.csv");
    CHECK(tr.times.size() == 5);

    CHECK(run_cli("--config " + (tmp.path / "missing.cfg").string() +
                  " simulate") == 2);

    std::ofstream(tmp.path / "broken.cfg") << "[kernel]\nfamily\n";
    CHECK(run_cli("--config " + (tmp.path / "broken.cfg").string() +
                  " simulate") == 2);
}

TEST_CASE("json format emits a json trajectory") {
    TempDir tmp;
    const auto out = tmp.path / "run";
    const int rc = run_cli("simulate --n-particles 8 --mode-index 1 --dt 0.01 "
                           "--n-steps 4 --format json --out " +
                           out.string());
    CHECK(rc == 0);
    CHECK(fs::exists(out / "trajectory.json"));
    CHECK(!fs::exists(out / "trajectory.csv"));
    const auto tr = fractal_chain::read_trajectory_json(out / "trajectory.json");
    CHECK(tr.times.size() == 5);
}

TEST_CASE("plot scripts are emitted on request") {
    TempDir tmp;
    const auto out = tmp.path / "run";
    const int rc = run_cli("--plot-script dispersion --n-points 11 --out " +
                           out.string());
    CHECK(rc == 0);
    CHECK(fs::exists(out / "plot_dispersion.py"));
}
