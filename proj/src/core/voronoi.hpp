#pragma once

#include <cstdint>
#include <vector>

#include "core/coefficients.hpp"
#include "core/util.hpp"

namespace rslab {

struct VoronoiEvaluation {
    double x = 0.0;
    uint64_t k = 0;
    double value = 0.0;
    double exact_delta = 0.0;
    double abs_error = 0.0;
};

// Accumulates the terms for k_lo <= k <= k_hi of
//   (x^{3/8} / 2pi) sum_k c_k k^{-5/8} sin(8 pi (kx)^{1/4} + 3pi/4)
// into acc, ascending k.  Exposed so range sums reproduce full sums bitwise.
void voronoi_accumulate(double x, uint64_t k_lo, uint64_t k_hi,
                        const CoefficientTable& table, dd& acc);

// Truncated Voronoi-type expansion of Delta(x) with cutoff K.
double voronoi_delta(double x, uint64_t k, const CoefficientTable& table);

// The sin(8 pi (kx)^{1/4} + 3 pi/4) kernel is only the leading term of the
// asymptotic expansion of the exact Voronoi kernel.  The next term is a
// phase shift beta (kx)^{-1/4} with
//   beta = (a1(a1-1) + a2(a2-1)) / (4 pi) = 241 / (4 pi),  a1 = 1/2, a2 = 23/2,
// obtained by Stirling expansion of the functional-equation factor
// Gamma(1-s)Gamma(12-s) / (Gamma(s)Gamma(s+11)) around its saddle.  The
// weight-12 shift makes beta large: the correction is O(1) radians for
// kx <~ 1e5, and without it the truncation error of the leading-order sum
// stalls at a desk-scale floor instead of decaying in K.
inline constexpr double kVoronoiPhase2 = 241.0 / (4.0 * 3.14159265358979323846);

void voronoi_accumulate_refined(double x, uint64_t k_lo, uint64_t k_hi,
                                const CoefficientTable& table, dd& acc);
double voronoi_delta_refined(double x, uint64_t k, const CoefficientTable& table);

VoronoiEvaluation voronoi_evaluate(double x, uint64_t k, double C, const CoefficientTable& table);

struct TruncationFit {
    double x = 0.0;
    double slope = 0.0;      // d log(error) / d log K
    double intercept = 0.0;
    std::vector<double> window_rms_error;  // one entry per K in the scan grid
};

// For each x in x_grid: spread jitter points over 10 windows covering
// [x, 1.1x], average the signed error voronoi_delta_refined - delta within
// each window (the window mean suppresses the unit-scale sawtooth of Delta
// while keeping the slowly varying truncation tail), take the rms of the
// window means, then least-squares fit log(error) against log K.  Uses the
// refined kernel: with the leading-order kernel the second-order phase error
// dominates at any K and the fit is flat.
std::vector<TruncationFit> truncation_scan(const std::vector<double>& x_grid,
                                           const std::vector<uint64_t>& k_grid,
                                           const CoefficientTable& table, double C,
                                           int jitter_points = 100);

}  // namespace rslab
