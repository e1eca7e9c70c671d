#include "core/voronoi.hpp"

#include <cmath>
#include <random>

#include "core/bounds.hpp"
#include "core/error_terms.hpp"

namespace rslab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void voronoi_accumulate(double x, uint64_t k_lo, uint64_t k_hi,
                        const CoefficientTable& table, dd& acc) {
    if (x < 1.0) throw argument_error("voronoi: x must be >= 1");
    if (k_hi < 1 || k_hi > table.n_max)
        throw argument_error("voronoi: K must be in [1, n_max]");
    const double prefactor = std::pow(x, 0.375) / (2.0 * kPi);
    for (uint64_t k = k_lo; k <= k_hi; ++k) {
        double phase = 8.0 * kPi * std::pow((double)k * x, 0.25) + 0.75 * kPi;
        double term = prefactor * table.c[k] * std::pow((double)k, -0.625) * std::sin(phase);
        acc = dd_add(acc, term);
    }
}

double voronoi_delta(double x, uint64_t k, const CoefficientTable& table) {
    dd acc;
    voronoi_accumulate(x, 1, k, table, acc);
    return acc.value();
}

void voronoi_accumulate_refined(double x, uint64_t k_lo, uint64_t k_hi,
                                const CoefficientTable& table, dd& acc) {
    if (x < 1.0) throw argument_error("voronoi: x must be >= 1");
    if (k_hi < 1 || k_hi > table.n_max)
        throw argument_error("voronoi: K must be in [1, n_max]");
    const double prefactor = std::pow(x, 0.375) / (2.0 * kPi);
    for (uint64_t k = k_lo; k <= k_hi; ++k) {
        double q = std::pow((double)k * x, 0.25);
        double phase = 8.0 * kPi * q + 0.75 * kPi + kVoronoiPhase2 / q;
        double term = prefactor * table.c[k] * std::pow((double)k, -0.625) * std::sin(phase);
        acc = dd_add(acc, term);
    }
}

double voronoi_delta_refined(double x, uint64_t k, const CoefficientTable& table) {
    dd acc;
    voronoi_accumulate_refined(x, 1, k, table, acc);
    return acc.value();
}

VoronoiEvaluation voronoi_evaluate(double x, uint64_t k, double C, const CoefficientTable& table) {
    VoronoiEvaluation e;
    e.x = x;
    e.k = k;
    e.value = voronoi_delta(x, k, table);
    e.exact_delta = delta(x, C, table);
    e.abs_error = std::abs(e.value - e.exact_delta);
    return e;
}

std::vector<TruncationFit> truncation_scan(const std::vector<double>& x_grid,
                                           const std::vector<uint64_t>& k_grid,
                                           const CoefficientTable& table, double C,
                                           int jitter_points) {
    if (x_grid.empty() || k_grid.empty()) throw argument_error("truncation_scan: empty grid");
    std::vector<TruncationFit> fits;
    fits.reserve(x_grid.size());
    const int windows = 10;
    for (size_t xi = 0; xi < x_grid.size(); ++xi) {
        double x0 = x_grid[xi];
        // fixed seed per grid point: scans are deterministic
        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ (uint64_t)xi);
        std::uniform_real_distribution<double> jitter(0.0, 1e-2);
        const int per_window = std::max(1, jitter_points / windows);
        std::vector<double> xs;
        xs.reserve((size_t)windows * per_window);
        for (int w = 0; w < windows; ++w) {
            double base = x0 * (1.0 + 1e-2 * w);
            for (int j = 0; j < per_window; ++j) xs.push_back(base * (1.0 + jitter(rng)));
        }

        TruncationFit fit;
        fit.x = x0;
        std::vector<std::pair<double, double>> pts;
        for (uint64_t k : k_grid) {
            CompensatedSum sq;
            for (int w = 0; w < windows; ++w) {
                CompensatedSum signed_err;
                for (int j = 0; j < per_window; ++j) {
                    double x = xs[(size_t)w * per_window + j];
                    signed_err.add(voronoi_delta_refined(x, k, table) - delta(x, C, table));
                }
                double m = signed_err.value() / (double)per_window;
                sq.add(m * m);
            }
            double rms = std::sqrt(sq.value() / (double)windows);
            fit.window_rms_error.push_back(rms);
            pts.emplace_back((double)k, rms);
        }
        if (pts.size() >= 3) {
            ExponentFit f = fit_exponent(pts);
            fit.slope = f.slope;
            fit.intercept = f.intercept;
        } else if (pts.size() == 2) {
            fit.slope = std::log(pts[1].second / pts[0].second) /
                        std::log(pts[1].first / pts[0].first);
            fit.intercept = std::log(pts[0].second) - fit.slope * std::log(pts[0].first);
        }
        fits.push_back(std::move(fit));
    }
    return fits;
}

}  // namespace rslab
