#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "core/bounds.hpp"

using namespace rslab;

TEST_CASE("beta of mu") {
    CHECK(beta_of_mu(0.0) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(beta_of_mu(32.0 / 205.0) == doctest::Approx(410.0 / 897.0).epsilon(1e-12));
    CHECK(410.0 / 897.0 == doctest::Approx(0.4570791527).epsilon(1e-9));
    // continuity towards mu -> 1/2
    CHECK(beta_of_mu(0.4999999) == doctest::Approx(2.0 / 3.0).epsilon(1e-5));
    CHECK_THROWS_AS(beta_of_mu(-0.1), argument_error);
    CHECK_THROWS_AS(beta_of_mu(0.5), argument_error);
}

TEST_CASE("theorem 1 exponents") {
    auto [a0, g0] = theorem1_exponents(0.0);
    CHECK(a0 == doctest::Approx(9.0 / 7.0).epsilon(1e-12));
    CHECK(g0 == doctest::Approx(8.0 / 7.0).epsilon(1e-12));

    auto [ah, gh] = theorem1_exponents(32.0 / 205.0);
    CHECK(ah == doctest::Approx(2229.0 / 1563.0).epsilon(1e-12));  // = 743/521
    CHECK(gh == doctest::Approx(1640.0 / 1563.0).epsilon(1e-12));
    CHECK(ah == doctest::Approx(1.42610).epsilon(1e-4));
    CHECK(gh == doctest::Approx(1.04926).epsilon(1e-4));

    SUBCASE("alpha increases with mu") {
        double prev = 0.0;
        for (double mu = 0.0; mu < 0.5; mu += 0.01) {
            double a = theorem1_exponents(mu).first;
            CHECK(a > prev);
            prev = a;
        }
    }
}

TEST_CASE("improvement range") {
    ImprovementRange r0 = improvement_range(0.0);
    CHECK(r0.u_low == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(r0.u_high == doctest::Approx(9.0 / 20.0).epsilon(1e-12));
    CHECK(r0.nonempty);

    ImprovementRange rh = improvement_range(32.0 / 205.0);
    CHECK(rh.u_low == doctest::Approx(333.0 / 743.0).epsilon(1e-12));
    CHECK(rh.u_low == doctest::Approx(0.44818).epsilon(1e-4));
    CHECK(rh.u_high == doctest::Approx(0.46514).epsilon(1e-4));
    CHECK(rh.nonempty);

    SUBCASE("envelope-intersection identity at sampled mu") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> mus(0.0, 0.49);
        for (int i = 0; i < 200; ++i) {
            double mu = mus(rng);
            auto [a, g] = theorem1_exponents(mu);
            double ulow = improvement_range(mu).u_low;
            CHECK(std::abs(a + g * ulow - (1.0 + 2.0 * ulow)) <= 1e-9);
        }
    }
}

TEST_CASE("optimal T") {
    OptimalT t1 = optimal_T(1e6, 1e6, 0.0);
    CHECK(t1.value == doctest::Approx(std::pow(1e6, 2.0 / 7.0)).epsilon(1e-12));
    CHECK(t1.within_x);
    OptimalT t2 = optimal_T(1e6, 1.0, 0.0);
    CHECK(t2.value == doctest::Approx(std::pow(1e6, 6.0 / 7.0)).epsilon(1e-12));
    CHECK(t2.within_x);

    CHECK_THROWS_AS(optimal_T(100.0, 0.5, 0.0), argument_error);
    CHECK_THROWS_AS(optimal_T(100.0, 200.0, 0.0), argument_error);

    SUBCASE("equalization identity at random (X, U, mu)") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> xd(10.0, 1e8), ud01(0.0, 1.0),
            mud(0.0, 0.49);
        for (int i = 0; i < 300; ++i) {
            double X = xd(rng);
            double U = std::pow(X, ud01(rng));
            double mu = mud(rng);
            double T = optimal_T(X, U, mu).value;
            double lhs = U * U * std::pow(T, 1.5 + 2.0 * mu);
            double rhs = X * X * X / (T * T);
            CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs));
        }
    }
}

TEST_CASE("exponent fitting") {
    SUBCASE("exact square law") {
        std::vector<std::pair<double, double>> pts;
        for (double x : {1.0, 2.0, 5.0, 13.0, 40.0}) pts.emplace_back(x, x * x);
        ExponentFit f = fit_exponent(pts);
        CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(f.residual_rms <= 1e-12);
        CHECK(f.points == 5);
    }

    SUBCASE("constant values give slope zero") {
        std::vector<std::pair<double, double>> pts = {{1, 3}, {10, 3}, {100, 3}};
        CHECK(fit_exponent(pts).slope == doctest::Approx(0.0).epsilon(1e-12));
    }

    SUBCASE("noisy synthetic power law over one decade") {
        std::mt19937_64 rng(42);
        std::normal_distribution<double> noise(0.0, 0.05);
        std::vector<std::pair<double, double>> pts;
        const double p = 1.7;
        for (int i = 0; i < 50; ++i) {
            double x = std::pow(10.0, 1.0 + (double)i / 49.0);
            pts.emplace_back(x, 3.0 * std::pow(x, p) * std::exp(noise(rng)));
        }
        ExponentFit f = fit_exponent(pts);
        // 3 sigma of the slope standard error
        double sdx = 0.0, mx = 0.0;
        for (auto [x, y] : pts) mx += std::log(x);
        mx /= (double)pts.size();
        for (auto [x, y] : pts) sdx += (std::log(x) - mx) * (std::log(x) - mx);
        double stderr_slope = f.residual_rms * std::sqrt((double)pts.size() /
                                                         ((double)pts.size() - 2.0)) /
                              std::sqrt(sdx);
        CHECK(std::abs(f.slope - p) <= 3.0 * stderr_slope);
    }

    SUBCASE("rejects nonpositive and undersized input") {
        CHECK_THROWS_AS(fit_exponent({{1, 1}, {2, 4}}), argument_error);
        CHECK_THROWS_AS(fit_exponent({{1, 1}, {2, -4}, {3, 9}}), argument_error);
        CHECK_THROWS_AS(fit_exponent({{0, 1}, {2, 4}, {3, 9}}), argument_error);
    }
}

TEST_CASE("divisor baseline fit") {
    SUBCASE("cubic underdetermined below 4 U values") {
        DivisorTable dt = DivisorTable::build(1000);
        CHECK_THROWS_AS(divisor_leading_coefficient(dt, 100, {8, 16, 32}), argument_error);
    }

    SUBCASE("range checked per U") {
        DivisorTable dt = DivisorTable::build(1000);
        CHECK_THROWS_AS(divisor_leading_coefficient(dt, 600, {8, 16, 32, 64}), range_error);
    }

    SUBCASE("small-scale run is finite with positive moments") {
        static DivisorTable dt = DivisorTable::build((1u << 15) + 128);
        DivisorBaselineFit f = divisor_leading_coefficient(dt, 1u << 14, {16, 32, 64, 128});
        REQUIRE(f.m2_over_xu.size() == 4);
        for (double v : f.m2_over_xu) CHECK(v > 0.0);
        CHECK(std::isfinite(f.leading));
        CHECK(f.leading == f.coeffs[3]);
    }
}
