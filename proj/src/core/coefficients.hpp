#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "core/util.hpp"

namespace rslab {

// Truncated sparse power series with integer coefficients.  The one series
// we actually build is prod_{k>=1} (1 - x^k) up to degree N: its exponents
// are the generalized pentagonal numbers k(3k-1)/2 and its coefficients
// are +-1, so the term count is Theta(sqrt(N)).
struct SparseSeries {
    std::vector<std::pair<uint64_t, int>> terms;  // (exponent, coefficient), exponents strictly increasing
    uint64_t degree_bound = 0;
};

SparseSeries pentagonal_euler_product(uint64_t n);

// Exact coefficient table for the weight-12 cusp form: tau(n), the
// Rankin-Selberg convolution coefficients c_n, the Dirichlet-division
// coefficients b_n with zeta(s) * B(s) = sum c_n n^{-s}, plus mu(n), d(n)
// and the compensated prefix sums of c_n.
//
// A completed table is immutable; everything downstream reads it only.
struct CoefficientTable {
    uint64_t n_max = 0;
    unsigned kappa = 12;
    std::vector<int128> tau;     // [1..n_max], tau[0] unused
    std::vector<double> c;       // [1..n_max]
    std::vector<double> b;       // [1..n_max]
    std::vector<int8_t> mobius;  // [1..n_max]
    std::vector<uint32_t> d;     // [1..n_max]
    std::vector<dd> prefix_c;    // [0..n_max], prefix_c[0] = 0

    static CoefficientTable build(uint64_t n_max);

    // Rebuilds every derived array from a tau array (cache load, import).
    static CoefficientTable from_tau(std::vector<int128> tau_one_based);

    // Synthetic table with prescribed c values (tau left empty); used for
    // analysis code that only consumes c and its prefix sums.
    static CoefficientTable from_c(std::vector<double> c_one_based);

    // c_n as an exact rational, for the exact-mode identity checks.
    mpq_class c_exact(uint64_t n) const;
};

// tau(n) for n <= n_max via 24 in-place multiplications of the pentagonal
// series into a dense arbitrary-precision array.
std::vector<mpz_class> sieve_tau(uint64_t n_max);

// Independent oracle: Delta = (E4^3 - E6^2)/1728 with dense convolutions of
// the Eisenstein series 1 + 240 sum sigma_3(n) x^n and 1 - 504 sum sigma_5(n) x^n.
// Shares no code with sieve_tau.  Dense O(N^2) multiplication, so capped.
constexpr uint64_t kOracleTauLimit = 10000;
std::vector<mpz_class> oracle_tau_eisenstein(uint64_t n_max);

std::vector<int8_t> sieve_mobius(uint64_t n_max);
std::vector<uint32_t> sieve_divisor(uint64_t n_max);

// c_n = n^{1-kappa} sum_{m^2 | n} m^{2(kappa-1)} tau(n/m^2)^2, each n's sum
// kept in exact integers and divided by n^{kappa-1} once at the end.
std::vector<double> compute_c(const std::vector<int128>& tau_one_based, unsigned kappa = 12);

// b = mu * c (Dirichlet convolution), inverting c = 1 * b.
std::vector<double> compute_b(const std::vector<double>& c, const std::vector<int8_t>& mobius);

// Max over n of the relative discrepancy between tau(n)^2 n^{1-kappa} and
// sum_{d^2|n} mu(d) c_{n/d^2}.
double verify_mobius_square_inversion(const CoefficientTable& table);

// Same identity in exact rational arithmetic; returns true iff the
// discrepancy is exactly zero for all n <= limit.
bool verify_mobius_square_inversion_exact(const CoefficientTable& table, uint64_t limit = 2000);

}  // namespace rslab
