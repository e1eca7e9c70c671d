#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/coefficients.hpp"

namespace rslab {

// One (X, U) cell of the short-interval mean-square experiment.
struct IntervalMeanSquare {
    uint64_t X = 0;
    double U = 0.0;
    double continuous = 0.0;        // int_X^{2X} (Delta(x+U) - Delta(x))^2 dx
    double discrete = 0.0;          // sum_{X < n <= 2X}
    double shifted_discrete = 0.0;  // sum_{X <= m <= 2X-1}
    uint64_t breakpoints = 0;
    double max_window = 0.0;        // max |Delta(n+U) - Delta(n)| seen over the cell
};

// Delta(m+U) - Delta(m) = sum_{m < n <= m+U} c_n - C U.
double window_diff(double m, double U, double C, const CoefficientTable& table);

// Exact integral: the integrand is piecewise constant between the
// breakpoints {n} and {n - U}, so the integral is a finite sum of
// (segment length) * (window value)^2.
double mean_square_continuous(uint64_t X, double U, double C, const CoefficientTable& table,
                              uint64_t* breakpoints_out = nullptr);

struct DiscreteMeanSquare {
    double discrete = 0.0;
    double shifted = 0.0;
    double max_window = 0.0;
};

DiscreteMeanSquare mean_square_discrete(uint64_t X, double U, double C,
                                        const CoefficientTable& table);

IntervalMeanSquare interval_mean_square(uint64_t X, double U, double C,
                                        const CoefficientTable& table);

// min(X^{1+2 beta}, X U^2); the epsilon powers live in the fitted constant.
double trivial_envelope(double X, double U, double beta);

struct BoundEnvelope {
    std::string name;  // trivial | theorem1 | lindelofZ
    double alpha = 0.0;
    double gamma = 0.0;
    double k0 = 0.0;  // max measured/shape over the sweep
};

struct SweepCell {
    uint64_t X = 0;
    double u_exp = 0.0;
    double U = 0.0;
    IntervalMeanSquare ms;
    double trivial_env = 0.0;  // K0-fitted envelope values
    double theorem1_env = 0.0;
    double lindelofz_env = 0.0;
    double ratio_trivial = 0.0;
    double ratio_theorem1 = 0.0;
    double ratio_lindelofz = 0.0;
    double window_over_sqrtu = 0.0;  // exploratory Jutila-style statistic
    bool ok = false;
    std::string warning;
};

struct SweepResult {
    std::vector<SweepCell> cells;  // deterministic grid order: X-major, then u
    BoundEnvelope trivial;
    BoundEnvelope theorem1;
    BoundEnvelope lindelofz;
    double mu = 0.0;
    double C = 0.0;
};

// U = X^u over the (X, u) grid.  Cells whose window would leave the table
// are skipped with a warning, never clamped.  Cells may be computed
// concurrently; results are always in grid order.
SweepResult sweep(const std::vector<uint64_t>& x_grid, const std::vector<double>& u_grid,
                  double mu, double C, const CoefficientTable& table, int threads = 1);

double spearman_rank_correlation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace rslab
