#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fractal_chain/config.hpp"
#include "fractal_chain/errors.hpp"

using namespace fractal_chain;

TEST_CASE("full config file parses into every section") {
    const std::string text = R"(
# experiment
[kernel]
family = geometric_weierstrass
a = 2
b = 0.6
order = 10
c = 1.5
h = 0.5

[sim]
n_particles = 128
init = random
seed = 42
dt = 0.005
n_steps = 2000
record_every = 5

[dispersion]
k_min = 0.0
k_max = 6.283185307179586
n_points = 513
measure_modes = 1, 2, 7

[weierstrass]
a = 3
b = 0.5
n_max = 30
fractal = true
x_min = -1.0
x_max = 1.0
n_samples = 4097

[boxdim]
eps_max = 0.25
eps_min = 0.001
n_scales = 9

[output]
dir = results
format = json
)";
    const auto cfg = config_from_map(parse_config_text(text));
    CHECK(cfg.kernel.family == "geometric_weierstrass");
    CHECK(cfg.kernel.b == 0.6);
    CHECK(cfg.kernel.order == 10);
    CHECK(cfg.kernel.c == 1.5);
    CHECK(cfg.kernel.h == 0.5);
    CHECK(cfg.sim.n_particles == 128);
    CHECK(cfg.sim.init == "random");
    CHECK(cfg.sim.seed == 42);
    CHECK(cfg.sim.record_every == 5);
    CHECK(cfg.dispersion.n_points == 513);
    CHECK(cfg.dispersion.measure_modes == std::vector<std::int64_t>{1, 2, 7});
    CHECK(cfg.weierstrass.fractal);
    CHECK(cfg.weierstrass.n_samples == 4097);
    CHECK(cfg.boxdim.n_scales == 9);
    CHECK(cfg.output.dir == "results");
    CHECK(cfg.output.format == "json");

    const auto family = cfg.kernel.to_family();
    const auto* gw = std::get_if<GeometricWeierstrass>(&family);
    REQUIRE(gw != nullptr);
    CHECK(gw->b == 0.6);
}

TEST_CASE("defaults survive a minimal file") {
    const auto cfg = config_from_map(parse_config_text("[kernel]\nfamily = nearest_neighbor\n"));
    CHECK(cfg.sim.n_particles == 64);
    CHECK(cfg.output.format == "csv");
    CHECK(std::holds_alternative<NearestNeighbor>(cfg.kernel.to_family()));
}

TEST_CASE("explicit kernel terms parse") {
    const auto cfg = config_from_map(parse_config_text(
        "[kernel]\nfamily = explicit\nterms = 1:1.0, 2:0.5, 4:0.25\n"));
    const auto family = cfg.kernel.to_family();
    const auto* ex = std::get_if<ExplicitTerms>(&family);
    REQUIRE(ex != nullptr);
    REQUIRE(ex->terms.size() == 3);
    CHECK(ex->terms[1].offset == 2);
    CHECK(ex->terms[1].weight == 0.5);
}

TEST_CASE("parse errors are specific") {
    CHECK_THROWS_AS(parse_config_text("[kernel\nfamily = x\n"), io_error);
    CHECK_THROWS_AS(parse_config_text("key_without_section = 1\n"), io_error);
    CHECK_THROWS_AS(parse_config_text("[kernel]\nnot a kv line\n"), io_error);
    CHECK_THROWS_AS(config_from_map(parse_config_text("[mystery]\nx = 1\n")),
                    io_error);
    CHECK_THROWS_AS(config_from_map(parse_config_text("[kernel]\nbogus = 1\n")),
                    io_error);
    CHECK_THROWS_AS(config_from_map(parse_config_text("[sim]\ndt = fast\n")),
                    io_error);
    CHECK_THROWS_AS(
        config_from_map(parse_config_text("[output]\nformat = xml\n")),
        io_error);
    CHECK_THROWS_AS(
        config_from_map(parse_config_text("[weierstrass]\nfractal = maybe\n")),
        io_error);
}

TEST_CASE("unknown family is rejected when realized") {
    auto cfg = config_from_map(parse_config_text("[kernel]\nfamily = cubic\n"));
    CHECK_THROWS_AS(cfg.kernel.to_family(), parameter_error);
}

TEST_CASE("geometric scale builder") {
    const auto eps = geometric_scales(0.125, 0.001953125, 7);
    REQUIRE(eps.size() == 7);
    CHECK(eps.front() == 0.125);
    CHECK(eps.back() == 0.001953125);
    for (std::size_t i = 1; i < eps.size(); ++i) {
        CHECK(eps[i] < eps[i - 1]);
        CHECK(eps[i] / eps[i - 1] ==
              doctest::Approx(0.5).epsilon(1e-12)); // 2^-3 .. 2^-9
    }
    CHECK_THROWS_AS(geometric_scales(0.1, 0.2, 5), parameter_error);
    CHECK_THROWS_AS(geometric_scales(0.1, 0.01, 1), parameter_error);
}
