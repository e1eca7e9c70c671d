#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/error_terms.hpp"
#include "core/short_interval.hpp"
#include "test_fixtures.hpp"

using namespace rslab;

TEST_CASE("window differences") {
    const CoefficientTable& t = table10k();
    const double C = 2.0;

    CHECK(window_diff(100.0, 0.0, C, t) == 0.0);
    CHECK(window_diff(0.0, 2.0, C, t) ==
          doctest::Approx(t.c[1] + t.c[2] - 2.0 * C).epsilon(1e-14));
    // single lattice point captured
    CHECK(window_diff(1.5, 1.0, C, t) == doctest::Approx(t.c[2] - C).epsilon(1e-14));

    CHECK_THROWS_AS(window_diff(100.0, -1.0, C, t), argument_error);
    CHECK_THROWS_AS(window_diff((double)t.n_max, 1.0, C, t), range_error);

    SUBCASE("piecewise constant between integers for integer U") {
        for (double frac : {0.1, 0.25, 0.5, 0.9}) {
            CHECK(window_diff(200.0 + frac, 7.0, C, t) == window_diff(200.0, 7.0, C, t));
        }
    }

    SUBCASE("window bound on the built table") {
        for (uint64_t m = 1000; m <= 5000; m += 13) {
            double w = window_diff((double)m, 20.0, 2.0, t);
            REQUIRE(std::abs(w) <= 10.0 * 21.0);
        }
    }
}

TEST_CASE("continuous mean square") {
    const CoefficientTable& t = table10k();
    const double C = estimate_C(t, MeanMethod::LeastSquares).value;

    CHECK(mean_square_continuous(100, 0.0, C, t) == 0.0);
    CHECK_THROWS_AS(mean_square_continuous(100, -2.0, C, t), argument_error);
    CHECK_THROWS_AS(mean_square_continuous(t.n_max, 1.0, C, t), range_error);

    SUBCASE("perfectly regular synthetic sequence integrates to zero") {
        // c_n = 1/2 everywhere and C = 1/2: every integer-U window vanishes
        CoefficientTable s = CoefficientTable::from_c(std::vector<double>(1001, 0.5));
        CHECK(mean_square_continuous(100, 7.0, 0.5, s) == 0.0);
    }

    SUBCASE("continuous equals shifted discrete for integer U") {
        DiscreteMeanSquare d = mean_square_discrete(1000, 50.0, C, t);
        double cont = mean_square_continuous(1000, 50.0, C, t);
        CHECK(cont == doctest::Approx(d.shifted).epsilon(1e-9));
    }

    SUBCASE("real U breakpoint count") {
        uint64_t bps = 0;
        mean_square_continuous(100, 10.5, C, t, &bps);
        // two interleaved breakpoint streams over (X, 2X]
        CHECK(bps >= 150);
        CHECK(bps <= 201);
    }
}

TEST_CASE("discrete mean squares") {
    const CoefficientTable& t = table10k();
    const double C = estimate_C(t, MeanMethod::LeastSquares).value;

    SUBCASE("U = 0") {
        DiscreteMeanSquare d = mean_square_discrete(100, 0.0, C, t);
        CHECK(d.discrete == 0.0);
        CHECK(d.shifted == 0.0);
    }

    SUBCASE("X = 10, U = 1 against a direct loop without prefix sums") {
        DiscreteMeanSquare d = mean_square_discrete(10, 1.0, C, t);
        double direct = 0.0;
        for (uint64_t n = 11; n <= 20; ++n) {
            double w = t.c[n + 1] - C;  // sum over (n, n+1] is just c_{n+1}
            direct += w * w;
        }
        CHECK(d.discrete == doctest::Approx(direct).epsilon(1e-12));
    }

    SUBCASE("boundary gap is the index-shift pair") {
        uint64_t X = 500;
        double U = 25.0;
        DiscreteMeanSquare d = mean_square_discrete(X, U, C, t);
        double wX = window_diff((double)X, U, C, t);
        double w2X = window_diff((double)(2 * X), U, C, t);
        CHECK(std::abs(d.discrete - d.shifted) ==
              doctest::Approx(std::abs(w2X * w2X - wX * wX)).epsilon(1e-9));
        CHECK(std::abs(d.discrete - d.shifted) <= 2.0 * d.max_window * d.max_window);
    }
}

TEST_CASE("trivial envelope") {
    CHECK(trivial_envelope(1e4, 1.0, 0.4) == doctest::Approx(1e4).epsilon(1e-12));
    CHECK(trivial_envelope(1e4, 1e3, 0.4) ==
          doctest::Approx(std::pow(10.0, 7.2)).epsilon(1e-12));

    SUBCASE("branch crossover at U = X^beta") {
        double X = 5e4, beta = 0.37;
        double U = std::pow(X, beta);
        CHECK(std::pow(X, 1.0 + 2.0 * beta) == doctest::Approx(X * U * U).epsilon(1e-12));
    }

    CHECK_THROWS_AS(trivial_envelope(1e4, 0.5, 0.4), argument_error);
    CHECK_THROWS_AS(trivial_envelope(1e4, 10.0, 0.6), argument_error);
}

TEST_CASE("sweep") {
    const CoefficientTable& t = table10k();
    const double C = estimate_C(t, MeanMethod::LeastSquares).value;

    SUBCASE("single cell") {
        SweepResult r = sweep({2000}, {1.0 / 3.0}, 0.0, C, t);
        REQUIRE(r.cells.size() == 1);
        CHECK(r.cells[0].ok);
        CHECK(r.cells[0].U == doctest::Approx(std::pow(2000.0, 1.0 / 3.0)));
    }

    SUBCASE("grid: measured below fitted envelopes by construction") {
        SweepResult r = sweep({1000, 2000}, {0.2, 1.0 / 3.0, 0.4, 0.45, 0.5}, 0.0, C, t);
        REQUIRE(r.cells.size() == 10);
        for (const SweepCell& c : r.cells) {
            REQUIRE(c.ok);
            CHECK(c.ms.continuous <= c.trivial_env * (1.0 + 1e-12));
            CHECK(c.ratio_trivial <= 1.0 + 1e-12);
            CHECK(c.ratio_theorem1 <= 1.0 + 1e-12);
            CHECK(c.ratio_lindelofz <= 1.0 + 1e-12);
        }
        CHECK(r.trivial.k0 > 0.0);

        SUBCASE("threaded execution matches sequential bitwise") {
            SweepResult r4 = sweep({1000, 2000}, {0.2, 1.0 / 3.0, 0.4, 0.45, 0.5}, 0.0, C, t, 4);
            REQUIRE(r4.cells.size() == r.cells.size());
            for (size_t i = 0; i < r.cells.size(); ++i) {
                CHECK(r4.cells[i].ms.continuous == r.cells[i].ms.continuous);
                CHECK(r4.cells[i].ms.discrete == r.cells[i].ms.discrete);
            }
        }
    }

    SUBCASE("oversized cells are skipped with a warning") {
        SweepResult r = sweep({2000, 1u << 20}, {0.5}, 0.0, C, t);
        REQUIRE(r.cells.size() == 2);
        CHECK(r.cells[0].ok);
        CHECK_FALSE(r.cells[1].ok);
        CHECK(r.cells[1].warning.find("skipped") != std::string::npos);
    }

    SUBCASE("mean squares trend upward in U (rank correlation)") {
        std::vector<double> us = {0.2, 0.3, 0.4, 0.5};
        SweepResult r = sweep({4000}, us, 0.0, C, t);
        std::vector<double> measured;
        for (const SweepCell& c : r.cells) measured.push_back(c.ms.continuous);
        CHECK(spearman_rank_correlation(us, measured) > 0.0);
    }
}

TEST_CASE("spearman rank correlation") {
    CHECK(spearman_rank_correlation({1, 2, 3, 4}, {2, 4, 8, 16}) == doctest::Approx(1.0));
    CHECK(spearman_rank_correlation({1, 2, 3, 4}, {9, 6, 4, 1}) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(spearman_rank_correlation({1.0}, {1.0}), argument_error);
}
