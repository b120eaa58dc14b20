#include "maglev/fit.hpp"

#include <doctest.h>

#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace maglev;

TEST_CASE("polyfit recovers exact polynomial coefficients") {
    std::vector<double> x, y;
    for (int i = 0; i <= 20; ++i) {
        const double t = -1.0 + 0.1 * i;
        x.push_back(t);
        y.push_back(3.0 - 2.0 * t + 0.5 * t * t);
    }
    const auto c = polyfit(x, y, 2);
    CHECK(c[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(c[1] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(c[2] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("power-law exponent") {
    std::vector<double> x, y;
    for (int i = 1; i <= 30; ++i) {
        x.push_back(i * 0.37);
        y.push_back(4.2 * std::pow(i * 0.37, -1.5));
    }
    CHECK(power_law_exponent(x, y) == doctest::Approx(-1.5).epsilon(1e-12));
    y[3] = -1.0;
    CHECK_THROWS_AS(power_law_exponent(x, y), std::domain_error);
}

TEST_CASE("levenberg fit on a noiseless exponential") {
    const auto model = [](double t, std::span<const double> p) {
        return p[0] * std::exp(-t / p[1]) + p[2];
    };
    std::vector<double> t, v;
    for (int i = 0; i < 40; ++i) {
        t.push_back(0.25 * i);
        v.push_back(2.0 * std::exp(-0.25 * i / 3.0) + 0.1);
    }
    const auto res = levenberg_fit(model, t, v, {1.0, 1.0, 0.0});
    REQUIRE(res.converged);
    CHECK(res.params[0] == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(res.params[1] == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(res.params[2] == doctest::Approx(0.1).epsilon(1e-6));
    CHECK(res.residual_norm < 1e-8);
}

TEST_CASE("levenberg fit covariance coverage") {
    // Monte-Carlo: the reported 1 sigma interval should cover truth in a
    // clear majority of trials (>= 60%; a calibrated fit gives ~68%)
    const auto model = [](double t, std::span<const double> p) {
        return p[0] * std::sin(t) + p[1];
    };
    std::mt19937_64 rng(97);
    const double slope = 1.7, offset = 0.4, sigma = 0.05;
    int covered_slope = 0;
    const int trials = 100;
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<double> t, v;
        for (int i = 0; i < 50; ++i) {
            const double u1 = oracles::uniform(rng, 1e-12, 1.0);
            const double u2 = oracles::uniform(rng, 0.0, 1.0);
            const double n = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * oracles::kPi * u2);
            t.push_back(0.13 * i);
            v.push_back(slope * std::sin(0.13 * i) + offset + sigma * n);
        }
        const auto res = levenberg_fit(model, t, v, {1.0, 0.0});
        if (std::abs(res.params[0] - slope) <= res.sigma(0)) ++covered_slope;
    }
    CHECK(covered_slope >= 60);
    CHECK(covered_slope <= 80);
}

TEST_CASE("levenberg fit error paths") {
    const auto model = [](double t, std::span<const double> p) { return p[0] * t + p[1]; };
    // fewer points than parameters
    CHECK_THROWS_AS(levenberg_fit(model, std::vector<double>{1.0}, std::vector<double>{2.0},
                                  {1.0, 1.0}),
                    std::invalid_argument);
    // degenerate model (parameter never used) -> singular Jacobian
    const auto degenerate = [](double t, std::span<const double> p) { return p[0] * t + 0.0 * p[1]; };
    std::vector<double> t{0.0, 1.0, 2.0, 3.0};
    std::vector<double> v{0.1, 1.2, 1.9, 3.1};
    CHECK_THROWS_AS(levenberg_fit(degenerate, t, v, {1.0, 1.0}), std::runtime_error);
}
