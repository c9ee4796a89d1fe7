#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "tct/rng.hpp"

using namespace tct;

TEST_CASE("splitmix64 streams are reproducible and seed-sensitive") {
    SplitMix64 a(42), b(42), c(43);
    for (int i = 0; i < 64; ++i) {
        const auto x = a.next_u64();
        REQUIRE(x == b.next_u64());
    }
    bool differs = false;
    SplitMix64 a2(42);
    for (int i = 0; i < 64; ++i) differs |= (a2.next_u64() != c.next_u64());
    REQUIRE(differs);
}

TEST_CASE("uniform01 stays in [0,1) and fills the unit interval") {
    SplitMix64 rng(7);
    double lo = 1.0, hi = 0.0, sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    REQUIRE(lo < 1e-4);
    REQUIRE(hi > 1.0 - 1e-4);
    REQUIRE(std::abs(sum / n - 0.5) < 0.005);
}

TEST_CASE("normal sampler passes a KS test against N(0,1)") {
    SplitMix64 rng(2024);
    const int n = 100000;
    std::vector<double> z(n);
    for (auto& x : z) x = rng.normal();
    std::sort(z.begin(), z.end());
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        const double cdf = 0.5 * std::erfc(-z[i] / std::sqrt(2.0));
        d = std::max(d, std::abs(cdf - static_cast<double>(i + 1) / n));
        d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
    }
    REQUIRE(d < 1.63 / std::sqrt(static_cast<double>(n)));  // alpha ~ 0.01
}

TEST_CASE("gamma variate moments, shape >= 1") {
    SplitMix64 rng(11);
    const int n = 1000000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = gamma_variate(rng, 5.0, 5.0);
        REQUIRE(x >= 0.0);
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    // mean 1, var 1/5; 3 sigma bands
    REQUIRE(std::abs(mean - 1.0) < 3.0 * std::sqrt(0.2 / n));
    REQUIRE(std::abs(var - 0.2) < 0.01);
}

TEST_CASE("gamma variate moments, shape < 1 (boost path)") {
    SplitMix64 rng(12);
    const int n = 1000000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = gamma_variate(rng, 0.5, 1.0);
        REQUIRE(x >= 0.0);
        sum += x;
    }
    REQUIRE(std::abs(sum / n - 0.5) < 3.0 * std::sqrt(0.5 / n));
}

TEST_CASE("inverse gaussian variate moments") {
    SplitMix64 rng(13);
    const int n = 1000000;
    const double mu = 2.0, lambda = 3.0;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = inverse_gaussian_variate(rng, mu, lambda);
        REQUIRE(x > 0.0);
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    const double true_var = mu * mu * mu / lambda;  // 8/3
    REQUIRE(std::abs(mean - mu) < 3.0 * std::sqrt(true_var / n));
    REQUIRE(std::abs(var - true_var) < 0.05);
}

TEST_CASE("sampler parameter validation") {
    SplitMix64 rng(1);
    REQUIRE_THROWS_AS(gamma_variate(rng, 0.0, 1.0), parameter_error);
    REQUIRE_THROWS_AS(gamma_variate(rng, 1.0, -1.0), parameter_error);
    REQUIRE_THROWS_AS(inverse_gaussian_variate(rng, 0.0, 1.0), parameter_error);
}
