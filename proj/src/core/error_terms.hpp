#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/coefficients.hpp"
#include "core/util.hpp"

namespace rslab {

// Euler-Mascheroni constant, 20 digits.
inline constexpr double kEulerGamma = 0.57721566490153286061;

enum class MeanMethod { LeastSquares, DifferenceQuotient };

// Estimate of the mean value C in sum_{n<=x} c_n ~ C x (or D for the
// |a(n)|^2 partial sums).  The closed form is not computed; two independent
// empirical estimators with a cross-agreement guard stand in for it.
struct MeanConstantEstimate {
    double value = 0.0;
    MeanMethod method = MeanMethod::LeastSquares;
    std::string sample;        // human-readable description of the sample used
    double uncertainty = 0.0;  // half-width of the spread across disjoint subsamples
};

struct ErrorTermSample {
    double x = 0.0;
    double delta = 0.0;
    double normalized = 0.0;  // delta / x^{3/5}
};

// sum_{n<=x} c_n, read off the compensated prefix sums.
double partial_sum_c(double x, const CoefficientTable& table);

MeanConstantEstimate estimate_C(const CoefficientTable& table, MeanMethod method);

// Delta(x) = sum_{n<=x} c_n - C x.
double delta(double x, double C, const CoefficientTable& table);
ErrorTermSample delta_sample(double x, double C, const CoefficientTable& table);

// Divisor prefix table for the Dirichlet divisor baseline; prefix sums are
// exact 64-bit integers.
struct DivisorTable {
    uint64_t n_max = 0;
    std::vector<uint64_t> prefix_d;  // [0..n_max]

    static DivisorTable build(uint64_t n_max);
};

// Delta_2(x) = sum_{n<=x} d(n) - x(log x + 2 gamma - 1).
double delta2(double x, const DivisorTable& table);

struct SumASquared {
    double value = 0.0;       // sum_{n<=x} tau(n)^2, exact integer reported as real
    double d_estimate = 0.0;  // value / x^kappa
};

SumASquared sum_a_squared(double x, const CoefficientTable& table);

}  // namespace rslab
