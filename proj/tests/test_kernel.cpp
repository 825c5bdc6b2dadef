#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fractal_chain/errors.hpp"
#include "fractal_chain/kernel.hpp"

using namespace fractal_chain;

TEST_CASE("nearest neighbor is the single term (1, 1)") {
    const auto k = build_kernel(NearestNeighbor{}, 1.0, 1.0);
    REQUIRE(k.terms.size() == 1);
    CHECK(k.terms[0].offset == 1);
    CHECK(k.terms[0].weight == 1.0);
    CHECK(k.weight_sum == 1.0);
}

TEST_CASE("geometric family realizes offsets a^m and weights b^m") {
    const auto k = build_kernel(GeometricWeierstrass{2, 0.5, 3}, 1.0, 1.0);
    REQUIRE(k.terms.size() == 4);
    const std::int64_t offsets[] = {1, 2, 4, 8};
    const double weights[] = {1.0, 0.5, 0.25, 0.125};
    for (int m = 0; m < 4; ++m) {
        CHECK(k.terms[m].offset == offsets[m]);
        CHECK(k.terms[m].weight == weights[m]);
    }
}

TEST_CASE("wm fractal family weights a^((D-2)m)") {
    const auto k = build_kernel(WMFractal{2, 1.5, 2}, 1.0, 1.0);
    REQUIRE(k.terms.size() == 3);
    CHECK(k.terms[0].offset == 1);
    CHECK(k.terms[1].offset == 2);
    CHECK(k.terms[2].offset == 4);
    CHECK(k.terms[0].weight == 1.0);
    CHECK(k.terms[1].weight ==
          doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-15));
    CHECK(k.terms[2].weight == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("cached weight_sum matches the geometric closed form") {
    for (int order : {0, 3, 10, 25}) {
        const double b = 0.7;
        const auto k = build_kernel(GeometricWeierstrass{2, b, order}, 1.0, 1.0);
        const double closed = (1.0 - std::pow(b, order + 1)) / (1.0 - b);
        CHECK(std::abs(k.weight_sum - closed) <= 1e-14 * closed);
    }
}

TEST_CASE("build_kernel is deterministic") {
    const auto k1 = build_kernel(WMFractal{3, 1.25, 7}, 2.0, 0.5);
    const auto k2 = build_kernel(WMFractal{3, 1.25, 7}, 2.0, 0.5);
    REQUIRE(k1.terms.size() == k2.terms.size());
    for (std::size_t i = 0; i < k1.terms.size(); ++i) {
        CHECK(k1.terms[i].offset == k2.terms[i].offset);
        CHECK(k1.terms[i].weight == k2.terms[i].weight); // bit identical
    }
    CHECK(k1.id == k2.id);
}

TEST_CASE("duplicate offsets merge weight-additively") {
    const auto merged =
        build_kernel(ExplicitTerms{{{2, 0.3}, {2, 0.2}}}, 1.0, 1.0);
    const auto direct = build_kernel(ExplicitTerms{{{2, 0.5}}}, 1.0, 1.0);
    REQUIRE(merged.terms.size() == 1);
    CHECK(merged.terms[0].offset == 2);
    CHECK(merged.terms[0].weight == direct.terms[0].weight);
}

TEST_CASE("explicit terms are sorted by offset") {
    const auto k =
        build_kernel(ExplicitTerms{{{5, 0.1}, {1, 1.0}, {3, 0.4}}}, 1.0, 1.0);
    REQUIRE(k.terms.size() == 3);
    CHECK(k.terms[0].offset == 1);
    CHECK(k.terms[1].offset == 3);
    CHECK(k.terms[2].offset == 5);
}

TEST_CASE("family parameter domains") {
    CHECK_THROWS_AS(build_kernel(WMFractal{1, 1.5, 2}, 1.0, 1.0),
                    parameter_error);
    CHECK_THROWS_AS(build_kernel(WMFractal{2, 1.0, 2}, 1.0, 1.0),
                    parameter_error);
    CHECK_THROWS_AS(build_kernel(WMFractal{2, 2.0, 2}, 1.0, 1.0),
                    parameter_error);
    CHECK_THROWS_AS(build_kernel(GeometricWeierstrass{2, 0.0, 2}, 1.0, 1.0),
                    parameter_error);
    CHECK_THROWS_AS(build_kernel(GeometricWeierstrass{2, 1.0, 2}, 1.0, 1.0),
                    parameter_error);
    CHECK_THROWS_AS(build_kernel(GeometricWeierstrass{1, 0.5, 2}, 1.0, 1.0),
                    parameter_error);
    CHECK_THROWS_AS(build_kernel(NearestNeighbor{}, 0.0, 1.0), parameter_error);
    CHECK_THROWS_AS(build_kernel(NearestNeighbor{}, 1.0, -1.0), parameter_error);
    CHECK_THROWS_AS(build_kernel(ExplicitTerms{{}}, 1.0, 1.0), parameter_error);
    CHECK_THROWS_AS(build_kernel(ExplicitTerms{{{0, 1.0}}}, 1.0, 1.0),
                    parameter_error);
    CHECK_THROWS_AS(build_kernel(ExplicitTerms{{{1, -1.0}}}, 1.0, 1.0),
                    parameter_error);
    // 2^70 overflows the 64-bit offset
    CHECK_THROWS_AS(build_kernel(GeometricWeierstrass{2, 0.5, 70}, 1.0, 1.0),
                    parameter_error);
}

TEST_CASE("effective mass closed form") {
    CHECK(effective_mass_squared(0.5, 1.0) == 4.0);
    CHECK(effective_mass_squared(0.0, 1.0) == 0.0); // massless limit
    CHECK(effective_mass_squared(0.5, 2.0) == 1.0);
    CHECK_THROWS_AS(effective_mass_squared(1.0, 1.0), parameter_error);
    CHECK_THROWS_AS(effective_mass_squared(1.5, 1.0), parameter_error);
    CHECK_THROWS_AS(effective_mass_squared(0.5, 0.0), parameter_error);
}

TEST_CASE("ring validation flags offsets wrapping halfway or more") {
    const auto nn = build_kernel(NearestNeighbor{}, 1.0, 1.0);
    CHECK(validate_kernel_for_ring(nn, 8).empty());

    const auto geo = build_kernel(GeometricWeierstrass{2, 0.5, 3}, 1.0, 1.0);
    const auto warnings = validate_kernel_for_ring(geo, 16); // offsets 1,2,4,8
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("offset 8") != std::string::npos);

    const auto small = build_kernel(GeometricWeierstrass{2, 0.5, 2}, 1.0, 1.0);
    CHECK(validate_kernel_for_ring(small, 64).empty()); // offsets 1,2,4

    CHECK_THROWS_AS(validate_kernel_for_ring(nn, 1), parameter_error);
}
