#include "core/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace rslab {

namespace {

constexpr uint64_t kSieveTauLimit = 10'000'000;

int128 narrow_to_int128(const mpz_class& z) {
    if (mpz_sizeinbase(z.get_mpz_t(), 2) > 127)
        throw overflow_error("tau value does not fit in a signed 128-bit integer");
    uint64_t limbs[2] = {0, 0};
    size_t count = 0;
    mpz_export(limbs, &count, -1, sizeof(uint64_t), 0, 0, z.get_mpz_t());
    uint128 mag = ((uint128)limbs[1] << 64) | limbs[0];
    return mpz_sgn(z.get_mpz_t()) < 0 ? -(int128)mag : (int128)mag;
}

mpz_class int128_to_mpz(int128 v) {
    bool neg = v < 0;
    uint128 mag = neg ? (uint128)(-(v + 1)) + 1 : (uint128)v;
    uint64_t limbs[2] = {(uint64_t)mag, (uint64_t)(mag >> 64)};
    mpz_class z;
    mpz_import(z.get_mpz_t(), 2, -1, sizeof(uint64_t), 0, 0, limbs);
    return neg ? mpz_class(-z) : z;
}

}  // namespace

SparseSeries pentagonal_euler_product(uint64_t n) {
    SparseSeries s;
    s.degree_bound = n;
    s.terms.emplace_back(0, 1);
    for (uint64_t k = 1;; ++k) {
        uint64_t g1 = k * (3 * k - 1) / 2;
        uint64_t g2 = k * (3 * k + 1) / 2;
        int sign = (k % 2 == 0) ? 1 : -1;
        if (g1 > n) break;
        s.terms.emplace_back(g1, sign);
        if (g2 <= n) s.terms.emplace_back(g2, sign);
    }
    return s;
}

std::vector<mpz_class> sieve_tau(uint64_t n_max) {
    if (n_max < 1) throw argument_error("sieve_tau: n_max must be >= 1");
    if (n_max > kSieveTauLimit)
        throw resource_error("sieve_tau: n_max exceeds the configured sieve limit");

    // tau(n) is the coefficient of x^{n-1} in {prod (1-x^k)}^24, so the
    // dense work array covers degrees 0..n_max-1.
    const uint64_t deg = n_max - 1;
    SparseSeries euler = pentagonal_euler_product(deg);
    std::vector<mpz_class> dense(deg + 1);
    dense[0] = 1;

    for (int pass = 0; pass < 24; ++pass) {
        for (uint64_t i = deg; i >= 1; --i) {
            mpz_ptr di = dense[i].get_mpz_t();
            // term (0,+1) leaves dense[i] in place; remaining terms read
            // lower indices that still hold the previous pass's values.
            for (size_t t = 1; t < euler.terms.size(); ++t) {
                uint64_t p = euler.terms[t].first;
                if (p > i) break;
                mpz_srcptr src = dense[i - p].get_mpz_t();
                if (euler.terms[t].second > 0)
                    mpz_add(di, di, src);
                else
                    mpz_sub(di, di, src);
            }
        }
    }

    std::vector<mpz_class> tau(n_max + 1);
    for (uint64_t i = 0; i <= deg; ++i) tau[i + 1] = std::move(dense[i]);
    return tau;
}

std::vector<mpz_class> oracle_tau_eisenstein(uint64_t n_max) {
    if (n_max < 1) throw argument_error("oracle_tau_eisenstein: n_max must be >= 1");
    if (n_max > kOracleTauLimit)
        throw argument_error("oracle_tau_eisenstein: n_max exceeds the oracle limit");

    const uint64_t deg = n_max;  // series in q up to q^n_max
    std::vector<mpz_class> sigma3(deg + 1), sigma5(deg + 1);
    for (uint64_t i = 1; i <= deg; ++i) {
        mpz_class i3 = mpz_class(i) * i * i;
        mpz_class i5 = i3 * i * i;
        for (uint64_t j = i; j <= deg; j += i) {
            sigma3[j] += i3;
            sigma5[j] += i5;
        }
    }

    std::vector<mpz_class> e4(deg + 1), e6(deg + 1);
    e4[0] = 1;
    e6[0] = 1;
    for (uint64_t i = 1; i <= deg; ++i) {
        e4[i] = 240 * sigma3[i];
        e6[i] = -504 * sigma5[i];
    }

    auto mul = [deg](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
        std::vector<mpz_class> r(deg + 1);
        for (uint64_t i = 0; i <= deg; ++i) {
            if (mpz_sgn(a[i].get_mpz_t()) == 0) continue;
            for (uint64_t j = 0; i + j <= deg; ++j)
                mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
        return r;
    };

    std::vector<mpz_class> e4sq = mul(e4, e4);
    std::vector<mpz_class> e4cb = mul(e4sq, e4);
    std::vector<mpz_class> e6sq = mul(e6, e6);

    std::vector<mpz_class> tau(n_max + 1);
    for (uint64_t i = 1; i <= deg; ++i) {
        mpz_class num = e4cb[i] - e6sq[i];
        mpz_divexact_ui(tau[i].get_mpz_t(), num.get_mpz_t(), 1728);
    }
    return tau;
}

std::vector<int8_t> sieve_mobius(uint64_t n_max) {
    std::vector<int8_t> mu(n_max + 1, 0);
    std::vector<uint32_t> primes;
    std::vector<bool> composite(n_max + 1, false);
    mu[1] = 1;
    for (uint64_t i = 2; i <= n_max; ++i) {
        if (!composite[i]) {
            primes.push_back((uint32_t)i);
            mu[i] = -1;
        }
        for (uint32_t p : primes) {
            if (i * p > n_max) break;
            composite[i * p] = true;
            if (i % p == 0) {
                mu[i * p] = 0;
                break;
            }
            mu[i * p] = -mu[i];
        }
    }
    return mu;
}

std::vector<uint32_t> sieve_divisor(uint64_t n_max) {
    std::vector<uint32_t> d(n_max + 1, 0);
    for (uint64_t i = 1; i <= n_max; ++i)
        for (uint64_t j = i; j <= n_max; j += i) ++d[j];
    return d;
}

std::vector<double> compute_c(const std::vector<int128>& tau, unsigned kappa) {
    const uint64_t n_max = tau.size() - 1;
    std::vector<mpz_class> tsq(n_max + 1);
    for (uint64_t q = 1; q <= n_max; ++q) {
        mpz_class t = int128_to_mpz(tau[q]);
        tsq[q] = t * t;
    }

    std::vector<mpz_class> acc(n_max + 1);
    for (uint64_t m = 1; m * m <= n_max; ++m) {
        mpz_class mpow;
        mpz_ui_pow_ui(mpow.get_mpz_t(), m, 2 * (kappa - 1));
        uint64_t m2 = m * m;
        for (uint64_t q = 1; q * m2 <= n_max; ++q)
            mpz_addmul(acc[q * m2].get_mpz_t(), mpow.get_mpz_t(), tsq[q].get_mpz_t());
    }

    std::vector<double> c(n_max + 1, 0.0);
    mpz_class den;
    for (uint64_t n = 1; n <= n_max; ++n) {
        mpz_ui_pow_ui(den.get_mpz_t(), n, kappa - 1);
        mpq_class r(acc[n], den);
        r.canonicalize();
        c[n] = r.get_d();
    }
    return c;
}

std::vector<double> compute_b(const std::vector<double>& c, const std::vector<int8_t>& mobius) {
    const uint64_t n_max = c.size() - 1;
    std::vector<double> b(n_max + 1, 0.0);
    for (uint64_t d = 1; d <= n_max; ++d) {
        int m = mobius[d];
        if (m == 0) continue;
        if (m > 0)
            for (uint64_t k = 1; k * d <= n_max; ++k) b[k * d] += c[k];
        else
            for (uint64_t k = 1; k * d <= n_max; ++k) b[k * d] -= c[k];
    }
    return b;
}

CoefficientTable CoefficientTable::from_tau(std::vector<int128> tau_one_based) {
    if (tau_one_based.size() < 2) throw argument_error("coefficient table needs n_max >= 1");
    CoefficientTable t;
    t.n_max = tau_one_based.size() - 1;
    t.tau = std::move(tau_one_based);
    if (t.tau[1] != 1) throw argument_error("tau(1) must be 1 (Hecke normalization)");
    t.c = compute_c(t.tau, t.kappa);
    t.mobius = sieve_mobius(t.n_max);
    t.d = sieve_divisor(t.n_max);
    t.b = compute_b(t.c, t.mobius);
    t.prefix_c.resize(t.n_max + 1);
    t.prefix_c[0] = dd{};
    for (uint64_t n = 1; n <= t.n_max; ++n) t.prefix_c[n] = dd_add(t.prefix_c[n - 1], t.c[n]);
    return t;
}

CoefficientTable CoefficientTable::build(uint64_t n_max) {
    std::vector<mpz_class> tz = sieve_tau(n_max);
    std::vector<int128> tau(n_max + 1, 0);
    for (uint64_t n = 1; n <= n_max; ++n) tau[n] = narrow_to_int128(tz[n]);
    return from_tau(std::move(tau));
}

CoefficientTable CoefficientTable::from_c(std::vector<double> c_one_based) {
    if (c_one_based.size() < 2) throw argument_error("coefficient table needs n_max >= 1");
    CoefficientTable t;
    t.n_max = c_one_based.size() - 1;
    t.c = std::move(c_one_based);
    t.mobius = sieve_mobius(t.n_max);
    t.d = sieve_divisor(t.n_max);
    t.b = compute_b(t.c, t.mobius);
    t.prefix_c.resize(t.n_max + 1);
    t.prefix_c[0] = dd{};
    for (uint64_t n = 1; n <= t.n_max; ++n) t.prefix_c[n] = dd_add(t.prefix_c[n - 1], t.c[n]);
    return t;
}

mpq_class CoefficientTable::c_exact(uint64_t n) const {
    if (tau.empty()) throw argument_error("c_exact requires a table with tau values");
    if (n < 1 || n > n_max) throw range_error("c_exact: n out of table range");
    mpz_class num = 0;
    for (uint64_t m = 1; m * m <= n; ++m) {
        if (n % (m * m) != 0) continue;
        mpz_class mpow;
        mpz_ui_pow_ui(mpow.get_mpz_t(), m, 2 * (kappa - 1));
        mpz_class t = int128_to_mpz(tau[n / (m * m)]);
        num += mpow * t * t;
    }
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), n, kappa - 1);
    mpq_class r(num, den);
    r.canonicalize();
    return r;
}

double verify_mobius_square_inversion(const CoefficientTable& table) {
    const uint64_t n_max = table.n_max;
    std::vector<double> rhs(n_max + 1, 0.0);
    for (uint64_t d = 1; d * d <= n_max; ++d) {
        int m = table.mobius[d];
        if (m == 0) continue;
        uint64_t d2 = d * d;
        for (uint64_t q = 1; q * d2 <= n_max; ++q) rhs[q * d2] += m * table.c[q];
    }
    double worst = 0.0;
    for (uint64_t n = 1; n <= n_max; ++n) {
        double t = (double)table.tau[n];
        double lhs = t * t / std::pow((double)n, (double)(table.kappa - 1));
        double rel = std::abs(lhs - rhs[n]) / std::max(1.0, std::abs(lhs));
        worst = std::max(worst, rel);
    }
    return worst;
}

bool verify_mobius_square_inversion_exact(const CoefficientTable& table, uint64_t limit) {
    limit = std::min(limit, table.n_max);
    for (uint64_t n = 1; n <= limit; ++n) {
        mpz_class t = int128_to_mpz(table.tau[n]);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), n, table.kappa - 1);
        mpq_class lhs(t * t, den);
        lhs.canonicalize();
        mpq_class rhs = 0;
        for (uint64_t d = 1; d * d <= n; ++d) {
            if (n % (d * d) != 0) continue;
            int m = table.mobius[d];
            if (m == 0) continue;
            rhs += m * table.c_exact(n / (d * d));
        }
        if (lhs != rhs) return false;
    }
    return true;
}

}  // namespace rslab
