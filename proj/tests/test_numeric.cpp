#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "permdec/errors.hpp"
#include "permdec/numeric.hpp"

#include "test_support.hpp"

using namespace permdec;

TEST_CASE("pairwise sum matches sequential sum on small inputs") {
    std::vector<double> v{1.0, 2.0, 3.0, 4.0, 5.0};
    CHECK(pairwise_sum(v) == 15.0);
    CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
    CHECK(pairwise_sum(std::vector<double>{7.5}) == 7.5);
}

TEST_CASE("pairwise sum is reproducible and close to exact on large inputs") {
    std::mt19937 rng(11);
    std::vector<double> v(100003);
    long double exact = 0.0L;
    for (auto& x : v) {
        x = testsup::uniform(rng, -1.0, 1.0);
        exact += static_cast<long double>(x);
    }
    const double a = pairwise_sum(v);
    const double b = pairwise_sum(v);
    CHECK(a == b);
    CHECK(std::abs(a - static_cast<double>(exact)) < 1e-9);
}

TEST_CASE("all_equal detects constant spans") {
    CHECK(all_equal(std::vector<double>{3.0, 3.0, 3.0}));
    CHECK(all_equal(std::vector<double>{}));
    CHECK_FALSE(all_equal(std::vector<double>{3.0, 3.0000001}));
}

TEST_CASE("mean_of is exact on constant input regardless of length") {
    std::vector<double> v(999983, 67.633);
    CHECK(mean_of(v) == 67.633);
    CHECK_THROWS_AS(mean_of(std::vector<double>{}), Error);
}

TEST_CASE("harmonic mean: hand values, zero convention, constant exactness") {
    CHECK(harmonic_mean_of(std::vector<double>{100.0, 300.0}) == 150.0);
    CHECK(harmonic_mean_of(std::vector<double>{100.0, 0.0, 300.0}) == 0.0);
    std::vector<double> v(12345, 85.8);
    CHECK(harmonic_mean_of(v) == 85.8);
}

TEST_CASE("format_double round-trips") {
    for (double x : {0.0858, 67.633, 72072.0 / 485.0, -1.5e-300, 4.0 - 3.141592653589793}) {
        CHECK(std::stod(format_double(x)) == x);
    }
}
