#include "rslab.h"

#include <cstdio>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "core/bounds.hpp"
#include "core/coefficients.hpp"
#include "core/error_terms.hpp"
#include "core/persistence.hpp"
#include "core/short_interval.hpp"
#include "core/util.hpp"
#include "core/voronoi.hpp"

struct rslab_table {
    rslab::CoefficientTable t;
};

struct rslab_divisor {
    rslab::DivisorTable t;
};

namespace {

thread_local std::string g_last_error;

rslab_status fail(rslab_status code, const char* what) {
    g_last_error = what;
    return code;
}

// Translates the core exception taxonomy into status codes.
template <typename Fn>
rslab_status guarded(Fn&& fn) {
    try {
        fn();
        return RSLAB_OK;
    } catch (const rslab::argument_error& e) {
        return fail(RSLAB_ERR_ARGUMENT, e.what());
    } catch (const rslab::range_error& e) {
        return fail(RSLAB_ERR_RANGE, e.what());
    } catch (const rslab::format_error& e) {
        return fail(RSLAB_ERR_FORMAT, e.what());
    } catch (const rslab::corrupt_cache_error& e) {
        return fail(RSLAB_ERR_CORRUPT, e.what());
    } catch (const rslab::overflow_error& e) {
        return fail(RSLAB_ERR_OVERFLOW, e.what());
    } catch (const rslab::resource_error& e) {
        return fail(RSLAB_ERR_RESOURCE, e.what());
    } catch (const rslab::io_error& e) {
        return fail(RSLAB_ERR_IO, e.what());
    } catch (const std::bad_alloc& e) {
        return fail(RSLAB_ERR_RESOURCE, "allocation failure");
    } catch (const std::exception& e) {
        return fail(RSLAB_ERR_INTERNAL, e.what());
    }
}

rslab_status check_handle(const void* h) {
    return h ? RSLAB_OK : fail(RSLAB_ERR_ARGUMENT, "null handle");
}

}  // namespace

extern "C" {

const char* rslab_last_error(void) { return g_last_error.c_str(); }

rslab_status rslab_table_build(uint64_t n_max, rslab_table** out) {
    if (!out) return fail(RSLAB_ERR_ARGUMENT, "null output pointer");
    return guarded([&] { *out = new rslab_table{rslab::CoefficientTable::build(n_max)}; });
}

rslab_status rslab_table_load(const char* path, rslab_table** out) {
    if (!out || !path) return fail(RSLAB_ERR_ARGUMENT, "null argument");
    return guarded([&] { *out = new rslab_table{rslab::load_table(path)}; });
}

rslab_status rslab_table_save(const rslab_table* t, const char* path) {
    if (check_handle(t) || !path) return fail(RSLAB_ERR_ARGUMENT, "null argument");
    return guarded([&] { rslab::save_table(path, t->t); });
}

rslab_status rslab_table_import(const char* path, rslab_table** out) {
    if (!out || !path) return fail(RSLAB_ERR_ARGUMENT, "null argument");
    return guarded([&] { *out = new rslab_table{rslab::import_external_tau(path)}; });
}

void rslab_table_free(rslab_table* t) { delete t; }

uint64_t rslab_table_nmax(const rslab_table* t) { return t ? t->t.n_max : 0; }

rslab_status rslab_table_tau(const rslab_table* t, uint64_t n, int64_t* hi, uint64_t* lo) {
    if (check_handle(t) || !hi || !lo) return fail(RSLAB_ERR_ARGUMENT, "null argument");
    if (n < 1 || n > t->t.n_max) return fail(RSLAB_ERR_RANGE, "n outside table");
    rslab::int128 v = t->t.tau[n];
    *lo = (uint64_t)(rslab::uint128)v;
    *hi = (int64_t)((rslab::uint128)v >> 64);
    return RSLAB_OK;
}

rslab_status rslab_table_c(const rslab_table* t, uint64_t n, double* out) {
    if (check_handle(t) || !out) return fail(RSLAB_ERR_ARGUMENT, "null argument");
    if (n < 1 || n > t->t.n_max) return fail(RSLAB_ERR_RANGE, "n outside table");
    *out = t->t.c[n];
    return RSLAB_OK;
}

rslab_status rslab_table_b(const rslab_table* t, uint64_t n, double* out) {
    if (check_handle(t) || !out) return fail(RSLAB_ERR_ARGUMENT, "null argument");
    if (n < 1 || n > t->t.n_max) return fail(RSLAB_ERR_RANGE, "n outside table");
    *out = t->t.b[n];
    return RSLAB_OK;
}

rslab_status rslab_table_mobius(const rslab_table* t, uint64_t n, int* out) {
    if (check_handle(t) || !out) return fail(RSLAB_ERR_ARGUMENT, "null argument");
    if (n < 1 || n > t->t.n_max) return fail(RSLAB_ERR_RANGE, "n outside table");
    *out = t->t.mobius[n];
    return RSLAB_OK;
}

rslab_status rslab_table_divisor_count(const rslab_table* t, uint64_t n, uint32_t* out) {
    if (check_handle(t) || !out) return fail(RSLAB_ERR_ARGUMENT, "null argument");
    if (n < 1 || n > t->t.n_max) return fail(RSLAB_ERR_RANGE, "n outside table");
    *out = t->t.d[n];
    return RSLAB_OK;
}

rslab_status rslab_oracle_check(const rslab_table* t, uint64_t upto) {
    if (check_handle(t)) return RSLAB_ERR_ARGUMENT;
    return guarded([&] {
        if (upto > t->t.n_max) throw rslab::range_error("oracle check beyond table");
        std::vector<mpz_class> oracle = rslab::oracle_tau_eisenstein(upto);
        for (uint64_t n = 1; n <= upto; ++n) {
            mpz_class sieved(rslab::int128_to_string(t->t.tau[n]));
            if (sieved != oracle[n])
                throw rslab::argument_error("oracle disagreement at n = " + std::to_string(n));
        }
    });
}

rslab_status rslab_estimate_c(const rslab_table* t, int method, rslab_mean_estimate* out) {
    if (check_handle(t) || !out) return fail(RSLAB_ERR_ARGUMENT, "null argument");
    if (method != RSLAB_MEAN_LSQ && method != RSLAB_MEAN_DIFFQUOT)
        return fail(RSLAB_ERR_ARGUMENT, "unknown estimator method");
    return guarded([&] {
        rslab::MeanConstantEstimate e = rslab::estimate_C(
            t->t, method == RSLAB_MEAN_LSQ ? rslab::MeanMethod::LeastSquares
                                           : rslab::MeanMethod::DifferenceQuotient);
        out->value = e.value;
        out->uncertainty = e.uncertainty;
        out->method = method;
        std::snprintf(out->sample, sizeof(out->sample), "%s", e.sample.c_str());
    });
}

rslab_status rslab_partial_sum_c(const rslab_table* t, double x, double* out) {
    if (check_handle(t) || !out) return fail(RSLAB_ERR_ARGUMENT, "null argument");
    return guarded([&] { *out = rslab::partial_sum_c(x, t->t); });
}

rslab_status rslab_delta(const rslab_table* t, double x, double c_mean, double* out) {
    if (check_handle(t) || !out) return fail(RSLAB_ERR_ARGUMENT, "null argument");
    return guarded([&] { *out = rslab::delta(x, c_mean, t->t); });
}

rslab_status rslab_sum_a_squared(const rslab_table* t, double x, double* value,
                                 double* d_estimate) {
    if (check_handle(t) || !value || !d_estimate)
        return fail(RSLAB_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        rslab::SumASquared s = rslab::sum_a_squared(x, t->t);
        *value = s.value;
        *d_estimate = s.d_estimate;
    });
}

rslab_status rslab_divisor_build(uint64_t n_max, rslab_divisor** out) {
    if (!out) return fail(RSLAB_ERR_ARGUMENT, "null output pointer");
    return guarded([&] { *out = new rslab_divisor{rslab::DivisorTable::build(n_max)}; });
}

void rslab_divisor_free(rslab_divisor* d) { delete d; }

rslab_status rslab_delta2(const rslab_divisor* d, double x, double* out) {
    if (check_handle(d) || !out) return fail(RSLAB_ERR_ARGUMENT, "null argument");
    return guarded([&] { *out = rslab::delta2(x, d->t); });
}

rslab_status rslab_divisor_leading_coefficient(const rslab_divisor* d, uint64_t x,
                                               const uint64_t* us, size_t nu, double coeffs[4],
                                               double* m2_over_xu) {
    if (check_handle(d) || !us || !coeffs) return fail(RSLAB_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        rslab::DivisorBaselineFit fit = rslab::divisor_leading_coefficient(
            d->t, x, std::vector<uint64_t>(us, us + nu));
        for (int i = 0; i < 4; ++i) coeffs[i] = fit.coeffs[i];
        if (m2_over_xu)
            for (size_t i = 0; i < nu; ++i) m2_over_xu[i] = fit.m2_over_xu[i];
    });
}

rslab_status rslab_voronoi_delta(const rslab_table* t, double x, uint64_t k, double* out) {
    if (check_handle(t) || !out) return fail(RSLAB_ERR_ARGUMENT, "null argument");
    return guarded([&] { *out = rslab::voronoi_delta(x, k, t->t); });
}

rslab_status rslab_voronoi_scan(const rslab_table* t, double c_mean, double x,
                                const uint64_t* ks, size_t nk, double* slope,
                                double* intercept, double* errors_out) {
    if (check_handle(t) || !ks || !slope || !intercept)
        return fail(RSLAB_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        std::vector<rslab::TruncationFit> fits = rslab::truncation_scan(
            {x}, std::vector<uint64_t>(ks, ks + nk), t->t, c_mean);
        *slope = fits[0].slope;
        *intercept = fits[0].intercept;
        if (errors_out)
            for (size_t i = 0; i < nk; ++i) errors_out[i] = fits[0].window_rms_error[i];
    });
}

rslab_status rslab_window_diff(const rslab_table* t, double m, double u, double c_mean,
                               double* out) {
    if (check_handle(t) || !out) return fail(RSLAB_ERR_ARGUMENT, "null argument");
    return guarded([&] { *out = rslab::window_diff(m, u, c_mean, t->t); });
}

rslab_status rslab_mean_square(const rslab_table* t, uint64_t x, double u, double c_mean,
                               rslab_interval_ms* out) {
    if (check_handle(t) || !out) return fail(RSLAB_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        rslab::IntervalMeanSquare ms = rslab::interval_mean_square(x, u, c_mean, t->t);
        out->x = ms.X;
        out->u = ms.U;
        out->continuous_ms = ms.continuous;
        out->discrete_ms = ms.discrete;
        out->shifted_ms = ms.shifted_discrete;
        out->breakpoints = ms.breakpoints;
        out->max_window = ms.max_window;
    });
}

rslab_status rslab_trivial_envelope(double x, double u, double beta, double* out) {
    if (!out) return fail(RSLAB_ERR_ARGUMENT, "null argument");
    return guarded([&] { *out = rslab::trivial_envelope(x, u, beta); });
}

rslab_status rslab_sweep(const rslab_table* t, double c_mean, double mu, const uint64_t* xs,
                         size_t nx, const double* us, size_t nu, int threads,
                         rslab_sweep_cell* cells, double k0_out[3]) {
    if (check_handle(t) || !xs || !us || !cells)
        return fail(RSLAB_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        rslab::SweepResult res =
            rslab::sweep(std::vector<uint64_t>(xs, xs + nx), std::vector<double>(us, us + nu),
                         mu, c_mean, t->t, threads);
        for (size_t i = 0; i < res.cells.size(); ++i) {
            const rslab::SweepCell& c = res.cells[i];
            rslab_sweep_cell& o = cells[i];
            o.x = c.X;
            o.u_exp = c.u_exp;
            o.u = c.U;
            o.continuous_ms = c.ms.continuous;
            o.discrete_ms = c.ms.discrete;
            o.shifted_ms = c.ms.shifted_discrete;
            o.trivial_env = c.trivial_env;
            o.theorem1_env = c.theorem1_env;
            o.lindelofz_env = c.lindelofz_env;
            o.ratio_trivial = c.ratio_trivial;
            o.ratio_theorem1 = c.ratio_theorem1;
            o.ratio_lindelofz = c.ratio_lindelofz;
            o.window_over_sqrtu = c.window_over_sqrtu;
            o.ok = c.ok ? 1 : 0;
        }
        if (k0_out) {
            k0_out[0] = res.trivial.k0;
            k0_out[1] = res.theorem1.k0;
            k0_out[2] = res.lindelofz.k0;
        }
    });
}

rslab_status rslab_beta_of_mu(double mu, double* out) {
    if (!out) return fail(RSLAB_ERR_ARGUMENT, "null argument");
    return guarded([&] { *out = rslab::beta_of_mu(mu); });
}

rslab_status rslab_theorem1_exponents(double mu, double* alpha, double* gamma) {
    if (!alpha || !gamma) return fail(RSLAB_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        auto [a, g] = rslab::theorem1_exponents(mu);
        *alpha = a;
        *gamma = g;
    });
}

rslab_status rslab_improvement_range(double mu, double* u_low, double* u_high, int* nonempty) {
    if (!u_low || !u_high) return fail(RSLAB_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        rslab::ImprovementRange r = rslab::improvement_range(mu);
        *u_low = r.u_low;
        *u_high = r.u_high;
        if (nonempty) *nonempty = r.nonempty ? 1 : 0;
    });
}

rslab_status rslab_optimal_t(double x, double u, double mu, double* out, int* within_x) {
    if (!out) return fail(RSLAB_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        rslab::OptimalT t = rslab::optimal_T(x, u, mu);
        *out = t.value;
        if (within_x) *within_x = t.within_x ? 1 : 0;
    });
}

rslab_status rslab_fit_exponent(const double* scales, const double* values, size_t n,
                                rslab_exponent_fit* out) {
    if (!scales || !values || !out) return fail(RSLAB_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        std::vector<std::pair<double, double>> pts(n);
        for (size_t i = 0; i < n; ++i) pts[i] = {scales[i], values[i]};
        rslab::ExponentFit f = rslab::fit_exponent(pts);
        out->slope = f.slope;
        out->intercept = f.intercept;
        out->residual_rms = f.residual_rms;
        out->points = f.points;
    });
}

}  // extern "C"
