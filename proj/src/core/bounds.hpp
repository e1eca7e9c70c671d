#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "core/error_terms.hpp"

namespace rslab {

// mu(1/2) (the Lindelof function at the critical line) is an input, never
// computed.  mu = 0 is the Lindelof hypothesis; the best unconditional
// value is 32/205.
struct LindelofParams {
    double mu_half = 0.0;
    double beta = 0.4;  // 2 / (5 - 4 mu_half)
};

// beta = 2 / (5 - 4 mu), the mean-square exponent for Delta(x).
double beta_of_mu(double mu);

LindelofParams make_lindelof(double mu);

// Exponent pair (alpha, gamma) of the short-interval mean-square bound
// X^alpha U^gamma: alpha = (9 + 12 mu)/(7 + 4 mu), gamma = 8/(7 + 4 mu).
std::pair<double, double> theorem1_exponents(double mu);

struct ImprovementRange {
    double u_low = 0.0;   // (1 + 4 mu)/(3 + 4 mu)
    double u_high = 0.0;  // (16 mu^2 - 8 mu + 9)/(20 - 16 mu)
    bool nonempty = false;
};

ImprovementRange improvement_range(double mu);

struct OptimalT {
    double value = 0.0;
    bool within_x = false;  // T <= X
};

// T = X^{3/(7/2 + 2mu)} U^{-2/(7/2 + 2mu)}, the choice equalizing
// U^2 T^{3/2 + 2mu} and X^3 T^{-2}.
OptimalT optimal_T(double X, double U, double mu);

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
    uint64_t points = 0;
};

// Ordinary least squares of log(value) on log(scale).
ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& points);

struct DivisorBaselineFit {
    double coeffs[4] = {0, 0, 0, 0};  // cubic in L = log(sqrt(X)/U), coeffs[3] leads
    double leading = 0.0;             // == coeffs[3], compared against 8/pi^2
    std::vector<double> m2_over_xu;   // fitted samples, one per U
};

// Discrete second moment of Delta_2(m+U) - Delta_2(m) over [X, 2X-1],
// normalized by XU and fitted as a cubic in L = log(sqrt(X)/U).  The fit is
// pooled over a descending bracket of X values (X/4 .. X, same U grid) so
// that L and U are independent coordinates; at a single X the smooth
// U-dependent error of the asymptotic aliases into the cubic and drags the
// leading coefficient far off.  m2_over_xu holds the samples at the nominal
// X only.  The leading coefficient has the known value 8/pi^2.
DivisorBaselineFit divisor_leading_coefficient(const DivisorTable& table, uint64_t X,
                                               const std::vector<uint64_t>& u_values);

inline constexpr double kDivisorLeadingTarget = 0.81056946913870217155;  // 8/pi^2

}  // namespace rslab
