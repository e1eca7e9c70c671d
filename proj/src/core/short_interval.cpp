#include "core/short_interval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "core/bounds.hpp"

namespace rslab {

double window_diff(double m, double U, double C, const CoefficientTable& table) {
    if (U < 0.0) throw argument_error("window_diff: U must be >= 0");
    if (!(m >= 0.0) || m + U > (double)table.n_max)
        throw range_error("window_diff: window outside [0, n_max]");
    uint64_t hi = (uint64_t)std::floor(m + U);
    uint64_t lo = (uint64_t)std::floor(m);
    return dd_sub(table.prefix_c[hi], table.prefix_c[lo]).value() - C * U;
}

double mean_square_continuous(uint64_t X, double U, double C, const CoefficientTable& table,
                              uint64_t* breakpoints_out) {
    if (U < 0.0) throw argument_error("mean_square_continuous: U must be >= 0");
    if (X < 1 || 2.0 * (double)X + U > (double)table.n_max)
        throw range_error("mean_square_continuous: [X, 2X+U] outside table");
    if (U == 0.0) {
        if (breakpoints_out) *breakpoints_out = 0;
        return 0.0;
    }

    // Breakpoints in (X, 2X]: integers n, and points k - U where x + U
    // crosses an integer k.
    std::vector<double> bps;
    for (uint64_t n = X + 1; n <= 2 * X; ++n) bps.push_back((double)n);
    for (uint64_t k = (uint64_t)std::floor((double)X + U) + 1;
         (double)k - U < (double)(2 * X); ++k) {
        double p = (double)k - U;
        if (p > (double)X) bps.push_back(p);
    }
    std::sort(bps.begin(), bps.end());

    uint64_t count = 0;
    CompensatedSum integral;
    double prev = (double)X;
    for (double bp : bps) {
        double len = bp - prev;
        if (len > 0.0) {
            double w = window_diff(prev + len / 2.0, U, C, table);
            integral.add(len * w * w);
            ++count;
        }
        prev = bp;
    }
    if (breakpoints_out) *breakpoints_out = count;
    return integral.value();
}

DiscreteMeanSquare mean_square_discrete(uint64_t X, double U, double C,
                                        const CoefficientTable& table) {
    if (U < 0.0) throw argument_error("mean_square_discrete: U must be >= 0");
    if (X < 1 || 2.0 * (double)X + U > (double)table.n_max)
        throw range_error("mean_square_discrete: [X, 2X+U] outside table");
    DiscreteMeanSquare r;
    CompensatedSum disc, shifted;
    for (uint64_t n = X; n <= 2 * X; ++n) {
        double w = window_diff((double)n, U, C, table);
        r.max_window = std::max(r.max_window, std::abs(w));
        if (n > X) disc.add(w * w);
        if (n < 2 * X) shifted.add(w * w);
    }
    r.discrete = disc.value();
    r.shifted = shifted.value();
    return r;
}

IntervalMeanSquare interval_mean_square(uint64_t X, double U, double C,
                                        const CoefficientTable& table) {
    IntervalMeanSquare ms;
    ms.X = X;
    ms.U = U;
    ms.continuous = mean_square_continuous(X, U, C, table, &ms.breakpoints);
    DiscreteMeanSquare d = mean_square_discrete(X, U, C, table);
    ms.discrete = d.discrete;
    ms.shifted_discrete = d.shifted;
    ms.max_window = d.max_window;
    return ms;
}

double trivial_envelope(double X, double U, double beta) {
    if (!(X >= 1.0) || !(U >= 1.0)) throw argument_error("trivial_envelope: X, U must be >= 1");
    if (!(beta > 0.0 && beta < 0.5)) throw argument_error("trivial_envelope: beta in (0, 1/2)");
    return std::min(std::pow(X, 1.0 + 2.0 * beta), X * U * U);
}

SweepResult sweep(const std::vector<uint64_t>& x_grid, const std::vector<double>& u_grid,
                  double mu, double C, const CoefficientTable& table, int threads) {
    if (x_grid.empty() || u_grid.empty()) throw argument_error("sweep: empty grid");
    SweepResult res;
    res.mu = mu;
    res.C = C;
    const double beta = beta_of_mu(mu);
    auto [alpha, gamma] = theorem1_exponents(mu);
    res.trivial = {"trivial", 1.0, 2.0, 0.0};
    res.theorem1 = {"theorem1", alpha, gamma, 0.0};
    res.lindelofz = {"lindelofZ", 1.0, 4.0 / 3.0, 0.0};

    res.cells.resize(x_grid.size() * u_grid.size());
    auto run_cell = [&](size_t idx) {
        SweepCell& cell = res.cells[idx];
        cell.X = x_grid[idx / u_grid.size()];
        cell.u_exp = u_grid[idx % u_grid.size()];
        cell.U = std::pow((double)cell.X, cell.u_exp);
        try {
            cell.ms = interval_mean_square(cell.X, cell.U, C, table);
            cell.window_over_sqrtu = cell.ms.max_window / std::sqrt(cell.U);
            cell.ok = true;
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "skipped cell (X=" << cell.X << ", U=" << cell.U << "): " << e.what();
            cell.warning = os.str();
        }
    };

    const size_t n_cells = res.cells.size();
    threads = std::max(1, threads);
    if (threads == 1 || n_cells < 2) {
        for (size_t i = 0; i < n_cells; ++i) run_cell(i);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (size_t i = (size_t)t; i < n_cells; i += (size_t)threads) run_cell(i);
            });
        for (auto& th : pool) th.join();
    }

    // Fit K0 per envelope as the max measured/shape ratio, then evaluate.
    auto shape_trivial = [&](const SweepCell& c) {
        return trivial_envelope((double)c.X, c.U, beta);
    };
    auto shape_theorem1 = [&](const SweepCell& c) {
        return std::pow((double)c.X, alpha) * std::pow(c.U, gamma);
    };
    auto shape_lz = [&](const SweepCell& c) {
        return (double)c.X * std::pow(c.U, 4.0 / 3.0);
    };
    for (const SweepCell& c : res.cells) {
        if (!c.ok) continue;
        res.trivial.k0 = std::max(res.trivial.k0, c.ms.continuous / shape_trivial(c));
        res.theorem1.k0 = std::max(res.theorem1.k0, c.ms.continuous / shape_theorem1(c));
        res.lindelofz.k0 = std::max(res.lindelofz.k0, c.ms.continuous / shape_lz(c));
    }
    for (SweepCell& c : res.cells) {
        if (!c.ok) continue;
        c.trivial_env = res.trivial.k0 * shape_trivial(c);
        c.theorem1_env = res.theorem1.k0 * shape_theorem1(c);
        c.lindelofz_env = res.lindelofz.k0 * shape_lz(c);
        c.ratio_trivial = c.trivial_env > 0 ? c.ms.continuous / c.trivial_env : 0.0;
        c.ratio_theorem1 = c.theorem1_env > 0 ? c.ms.continuous / c.theorem1_env : 0.0;
        c.ratio_lindelofz = c.lindelofz_env > 0 ? c.ms.continuous / c.lindelofz_env : 0.0;
    }
    return res;
}

double spearman_rank_correlation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw argument_error("spearman: need two equal-length series, size >= 2");
    auto ranks = [](const std::vector<double>& v) {
        std::vector<size_t> idx(v.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](size_t i, size_t j) { return v[i] < v[j]; });
        std::vector<double> r(v.size());
        for (size_t k = 0; k < idx.size(); ++k) r[idx[k]] = (double)k;
        return r;
    };
    std::vector<double> ra = ranks(a), rb = ranks(b);
    double n = (double)a.size();
    double mean = (n - 1.0) / 2.0;
    double num = 0, da = 0, db = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        num += (ra[i] - mean) * (rb[i] - mean);
        da += (ra[i] - mean) * (ra[i] - mean);
        db += (rb[i] - mean) * (rb[i] - mean);
    }
    return num / std::sqrt(da * db);
}

}  // namespace rslab
