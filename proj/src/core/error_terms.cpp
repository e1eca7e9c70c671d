#include "core/error_terms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <gmpxx.h>

namespace rslab {

double partial_sum_c(double x, const CoefficientTable& table) {
    if (!(x >= 0.0) || x > (double)table.n_max)
        throw range_error("partial_sum_c: x outside [0, n_max]");
    uint64_t n = (uint64_t)std::floor(x);
    return table.prefix_c[n].value();
}

namespace {

// Least squares of prefix_c[x_i] against C * x_i over geometrically spaced
// sample points; the closed form is C = sum P_i x_i / sum x_i^2.
double lsq_over(const CoefficientTable& table, const std::vector<uint64_t>& xs) {
    double num = 0.0, den = 0.0;
    for (uint64_t x : xs) {
        double p = table.prefix_c[x].value();
        num += p * (double)x;
        den += (double)x * (double)x;
    }
    return num / den;
}

}  // namespace

MeanConstantEstimate estimate_C(const CoefficientTable& table, MeanMethod method) {
    if (table.n_max < 10000) throw argument_error("estimate_C: table must have n_max >= 1e4");
    MeanConstantEstimate est;
    est.method = method;

    if (method == MeanMethod::LeastSquares) {
        const int kPoints = 200;
        const double lo = (double)table.n_max / 100.0;
        const double hi = (double)table.n_max;
        std::vector<uint64_t> xs(kPoints);
        for (int i = 0; i < kPoints; ++i) {
            double t = (double)i / (kPoints - 1);
            xs[i] = (uint64_t)std::llround(lo * std::pow(hi / lo, t));
        }
        est.value = lsq_over(table, xs);

        // Spread across four interleaved subsamples.
        double cmin = est.value, cmax = est.value;
        for (int r = 0; r < 4; ++r) {
            std::vector<uint64_t> sub;
            for (int i = r; i < kPoints; i += 4) sub.push_back(xs[i]);
            double c = lsq_over(table, sub);
            cmin = std::min(cmin, c);
            cmax = std::max(cmax, c);
        }
        est.uncertainty = (cmax - cmin) / 2.0;
        std::ostringstream os;
        os << kPoints << " geometric points in [" << (uint64_t)lo << ", " << (uint64_t)hi << "]";
        est.sample = os.str();
        return est;
    }

    // Difference quotient (prefix[2N] - prefix[N]) / N over the top octaves.
    std::vector<double> quotients;
    uint64_t n2 = table.n_max;
    for (int oct = 0; oct < 4 && n2 / 2 >= 1; ++oct) {
        uint64_t n = n2 / 2;
        double q = dd_sub(table.prefix_c[n2], table.prefix_c[n]).value() / (double)(n2 - n);
        quotients.push_back(q);
        n2 = n;
    }
    double sum = 0.0;
    for (double q : quotients) sum += q;
    est.value = sum / (double)quotients.size();
    auto [mn, mx] = std::minmax_element(quotients.begin(), quotients.end());
    est.uncertainty = (*mx - *mn) / 2.0;
    std::ostringstream os;
    os << quotients.size() << " octaves below n_max = " << table.n_max;
    est.sample = os.str();
    return est;
}

double delta(double x, double C, const CoefficientTable& table) {
    return partial_sum_c(x, table) - C * x;
}

ErrorTermSample delta_sample(double x, double C, const CoefficientTable& table) {
    ErrorTermSample s;
    s.x = x;
    s.delta = delta(x, C, table);
    s.normalized = x > 0 ? s.delta / std::pow(x, 0.6) : 0.0;
    return s;
}

DivisorTable DivisorTable::build(uint64_t n_max) {
    DivisorTable t;
    t.n_max = n_max;
    std::vector<uint32_t> d = sieve_divisor(n_max);
    t.prefix_d.resize(n_max + 1);
    t.prefix_d[0] = 0;
    for (uint64_t n = 1; n <= n_max; ++n) t.prefix_d[n] = t.prefix_d[n - 1] + d[n];
    return t;
}

double delta2(double x, const DivisorTable& table) {
    if (!(x >= 1.0) || x > (double)table.n_max)
        throw range_error("delta2: x outside [1, n_max]");
    uint64_t n = (uint64_t)std::floor(x);
    double main = x * (std::log(x) + 2.0 * kEulerGamma - 1.0);
    return (double)table.prefix_d[n] - main;
}

SumASquared sum_a_squared(double x, const CoefficientTable& table) {
    if (table.tau.empty()) throw argument_error("sum_a_squared requires tau values");
    if (!(x >= 1.0) || x > (double)table.n_max)
        throw range_error("sum_a_squared: x outside [1, n_max]");
    uint64_t nmax = (uint64_t)std::floor(x);
    mpz_class acc = 0;
    mpz_class t;
    for (uint64_t n = 1; n <= nmax; ++n) {
        int128 v = table.tau[n];
        uint128 mag = v < 0 ? (uint128)(-(v + 1)) + 1 : (uint128)v;
        uint64_t limbs[2] = {(uint64_t)mag, (uint64_t)(mag >> 64)};
        mpz_import(t.get_mpz_t(), 2, -1, sizeof(uint64_t), 0, 0, limbs);
        mpz_addmul(acc.get_mpz_t(), t.get_mpz_t(), t.get_mpz_t());
    }
    SumASquared r;
    r.value = acc.get_d();
    r.d_estimate = r.value / std::pow(x, (double)table.kappa);
    return r;
}

}  // namespace rslab
