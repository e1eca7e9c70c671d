// rslab command-line front end.  Talks to the core exclusively through the
// C API in rslab.h.

#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rslab.h"

namespace {

// Shortest round-trip decimal rendering; all numeric output goes through
// here so repeated runs are byte-identical.
std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

[[noreturn]] void die(rslab_status st, const std::string& context) {
    std::cerr << "error: " << context << ": " << rslab_last_error() << "\n";
    std::exit(1);
}

struct TableDeleter {
    void operator()(rslab_table* t) const { rslab_table_free(t); }
};
using TablePtr = std::unique_ptr<rslab_table, TableDeleter>;

struct DivisorDeleter {
    void operator()(rslab_divisor* d) const { rslab_divisor_free(d); }
};
using DivisorPtr = std::unique_ptr<rslab_divisor, DivisorDeleter>;

// Common table-source options: either load a cache or sieve fresh.
struct TableSource {
    std::string cache;
    uint64_t nmax = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--cache", cache, "coefficient table cache file to load");
        cmd->add_option("--nmax", nmax, "sieve a fresh table up to N");
    }

    TablePtr open() const {
        rslab_table* t = nullptr;
        if (!cache.empty() && nmax == 0) {
            if (rslab_status st = rslab_table_load(cache.c_str(), &t))
                die(st, "loading " + cache);
        } else if (nmax > 0 && cache.empty()) {
            if (rslab_status st = rslab_table_build(nmax, &t))
                die(st, "building table");
        } else {
            std::cerr << "error: give exactly one of --cache or --nmax\n";
            std::exit(2);
        }
        return TablePtr(t);
    }
};

double resolve_c(const rslab_table* t, double c_override, bool have_override) {
    if (have_override) return c_override;
    rslab_mean_estimate est;
    if (rslab_status st = rslab_estimate_c(t, RSLAB_MEAN_LSQ, &est))
        die(st, "estimating C");
    return est.value;
}

double parse_mu(const std::string& s) {
    size_t slash = s.find('/');
    if (slash != std::string::npos) {
        double num = std::stod(s.substr(0, slash));
        double den = std::stod(s.substr(slash + 1));
        return num / den;
    }
    return std::stod(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rankin-Selberg short-interval laboratory"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker threads for sweep cells");

    // ---- sieve ----
    auto* sieve = app.add_subcommand("sieve", "build a coefficient table");
    uint64_t sieve_nmax = 0;
    std::string sieve_cache;
    uint64_t oracle_upto = 0;
    sieve->add_option("--nmax", sieve_nmax, "table size")->required();
    sieve->add_option("--cache", sieve_cache, "write the table to this cache file");
    sieve->add_option("--oracle-check", oracle_upto,
                      "cross-check tau against the Eisenstein oracle up to M");

    // ---- import ----
    auto* import = app.add_subcommand("import", "import an external tau table (text)");
    std::string import_input, import_cache;
    import->add_option("--input", import_input, "text file, one 'n tau(n)' per line")->required();
    import->add_option("--cache", import_cache, "write the imported table to this cache file");

    // ---- delta ----
    auto* deltacmd = app.add_subcommand("delta", "evaluate Delta(x)");
    TableSource delta_src;
    delta_src.attach(deltacmd);
    double delta_x = 0, delta_c = 0;
    deltacmd->add_option("--x", delta_x, "evaluation point")->required();
    auto* delta_c_opt = deltacmd->add_option("--c", delta_c, "override the mean value C");

    // ---- estimate-c ----
    auto* estc = app.add_subcommand("estimate-c", "estimate the mean value C");
    TableSource estc_src;
    estc_src.attach(estc);
    std::string estc_method = "both";
    estc->add_option("--method", estc_method, "lsq | diffquot | both")
        ->check(CLI::IsMember({"lsq", "diffquot", "both"}));

    // ---- voronoi ----
    auto* voronoi = app.add_subcommand("voronoi", "truncated Voronoi expansion of Delta(x)");
    TableSource vor_src;
    vor_src.attach(voronoi);
    double vor_x = 0, vor_c = 0;
    uint64_t vor_kmax = 0;
    bool vor_scan = false;
    voronoi->add_option("--x", vor_x, "evaluation point")->required();
    voronoi->add_option("--kmax", vor_kmax, "truncation parameter K")->required();
    voronoi->add_flag("--scan", vor_scan, "truncation-error slope scan over K = 16,64,...,kmax");
    auto* vor_c_opt = voronoi->add_option("--c", vor_c, "override the mean value C");

    // ---- meansquare ----
    auto* meansq = app.add_subcommand("meansquare", "short-interval mean square at one (X, U)");
    TableSource ms_src;
    ms_src.attach(meansq);
    uint64_t ms_x = 0;
    double ms_u = 0, ms_c = 0, ms_mu = 0;
    bool ms_real_u = false;
    meansq->add_option("--x", ms_x, "X (integer)")->required();
    meansq->add_option("--u", ms_u, "window length U")->required();
    meansq->add_flag("--real-u", ms_real_u, "allow non-integer U");
    meansq->add_option("--mu", ms_mu, "Lindelof mu(1/2) for the envelopes");
    auto* ms_c_opt = meansq->add_option("--c", ms_c, "override the mean value C");

    // ---- sweep ----
    auto* sweep = app.add_subcommand("sweep", "mean-square sweep over an (X, u) grid");
    TableSource sw_src;
    sw_src.attach(sweep);
    std::vector<uint64_t> sw_xs;
    std::vector<double> sw_us;
    std::string sw_mu = "0", sw_format = "csv";
    double sw_c = 0;
    sweep->add_option("--x-list", sw_xs, "X values")->required()->delimiter(',');
    sweep->add_option("--u-exp-list", sw_us, "u exponents, U = X^u")->required()->delimiter(',');
    sweep->add_option("--mu", sw_mu, "Lindelof mu(1/2), e.g. 0 or 32/205");
    sweep->add_option("--format", sw_format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    auto* sw_c_opt = sweep->add_option("--c", sw_c, "override the mean value C");

    // ---- fit ----
    auto* fit = app.add_subcommand("fit", "log-log exponent fit over CSV columns");
    std::string fit_input, fit_xcol, fit_ycol;
    fit->add_option("--input", fit_input, "CSV file with a header row")->required();
    fit->add_option("--xcol", fit_xcol, "scale column name")->required();
    fit->add_option("--ycol", fit_ycol, "value column name")->required();

    // ---- divisor-baseline ----
    auto* divisor = app.add_subcommand("divisor-baseline",
                                       "Dirichlet divisor-problem mean-square baseline");
    uint64_t div_x = 0;
    std::vector<uint64_t> div_us;
    divisor->add_option("--x", div_x, "X (integer)")->required();
    divisor->add_option("--u-list", div_us, "U values")->required()->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*sieve) {
        rslab_table* t = nullptr;
        if (rslab_status st = rslab_table_build(sieve_nmax, &t)) die(st, "building table");
        TablePtr table(t);
        std::cout << "built table: n_max=" << sieve_nmax << "\n";
        if (oracle_upto > 0) {
            if (rslab_status st = rslab_oracle_check(table.get(), oracle_upto))
                die(st, "oracle check");
            std::cout << "oracle check passed up to " << oracle_upto << "\n";
        }
        if (!sieve_cache.empty()) {
            if (rslab_status st = rslab_table_save(table.get(), sieve_cache.c_str()))
                die(st, "saving " + sieve_cache);
            std::cout << "cached to " << sieve_cache << "\n";
        }
        return 0;
    }

    if (*import) {
        rslab_table* t = nullptr;
        if (rslab_status st = rslab_table_import(import_input.c_str(), &t))
            die(st, "importing " + import_input);
        TablePtr table(t);
        std::cout << "imported table: n_max=" << rslab_table_nmax(table.get()) << "\n";
        if (!import_cache.empty()) {
            if (rslab_status st = rslab_table_save(table.get(), import_cache.c_str()))
                die(st, "saving " + import_cache);
            std::cout << "cached to " << import_cache << "\n";
        }
        return 0;
    }

    if (*deltacmd) {
        TablePtr table = delta_src.open();
        double C = resolve_c(table.get(), delta_c, delta_c_opt->count() > 0);
        double d = 0;
        if (rslab_status st = rslab_delta(table.get(), delta_x, C, &d))
            die(st, "delta(x=" + fmt(delta_x) + ")");
        std::cout << "x=" << fmt(delta_x) << " C=" << fmt(C) << " delta=" << fmt(d)
                  << " normalized=" << fmt(d / std::pow(delta_x, 0.6)) << "\n";
        return 0;
    }

    if (*estc) {
        TablePtr table = estc_src.open();
        auto report = [&](int method, const char* name) {
            rslab_mean_estimate est;
            if (rslab_status st = rslab_estimate_c(table.get(), method, &est))
                die(st, "estimate-c");
            std::cout << name << ": C=" << fmt(est.value)
                      << " uncertainty=" << fmt(est.uncertainty) << " sample=\"" << est.sample
                      << "\"\n";
        };
        if (estc_method != "diffquot") report(RSLAB_MEAN_LSQ, "least-squares");
        if (estc_method != "lsq") report(RSLAB_MEAN_DIFFQUOT, "difference-quotient");
        return 0;
    }

    if (*voronoi) {
        TablePtr table = vor_src.open();
        double C = resolve_c(table.get(), vor_c, vor_c_opt->count() > 0);
        if (vor_scan) {
            std::vector<uint64_t> ks;
            for (uint64_t k = 16; k <= vor_kmax; k *= 4) ks.push_back(k);
            if (ks.size() < 2) {
                std::cerr << "error: --scan needs kmax >= 64\n";
                return 2;
            }
            std::vector<double> errs(ks.size());
            double slope = 0, intercept = 0;
            if (rslab_status st = rslab_voronoi_scan(table.get(), C, vor_x, ks.data(),
                                                     ks.size(), &slope, &intercept, errs.data()))
                die(st, "voronoi scan at x=" + fmt(vor_x));
            for (size_t i = 0; i < ks.size(); ++i)
                std::cout << "K=" << ks[i] << " window_rms_error=" << fmt(errs[i]) << "\n";
            std::cout << "slope=" << fmt(slope) << " intercept=" << fmt(intercept) << "\n";
        } else {
            double v = 0, d = 0;
            if (rslab_status st = rslab_voronoi_delta(table.get(), vor_x, vor_kmax, &v))
                die(st, "voronoi at x=" + fmt(vor_x));
            if (rslab_status st = rslab_delta(table.get(), vor_x, C, &d))
                die(st, "delta(x=" + fmt(vor_x) + ")");
            std::cout << "x=" << fmt(vor_x) << " K=" << vor_kmax << " voronoi=" << fmt(v)
                      << " exact=" << fmt(d) << " abs_error=" << fmt(std::abs(v - d)) << "\n";
        }
        return 0;
    }

    if (*meansq) {
        if (!ms_real_u && ms_u != std::floor(ms_u)) {
            std::cerr << "error: --u is not an integer; pass --real-u for real windows\n";
            return 2;
        }
        TablePtr table = ms_src.open();
        double C = resolve_c(table.get(), ms_c, ms_c_opt->count() > 0);
        rslab_interval_ms ms;
        if (rslab_status st = rslab_mean_square(table.get(), ms_x, ms_u, C, &ms))
            die(st, "meansquare at (X=" + std::to_string(ms_x) + ", U=" + fmt(ms_u) + ")");
        double beta = 0, alpha = 0, gamma = 0;
        rslab_beta_of_mu(ms_mu, &beta);
        rslab_theorem1_exponents(ms_mu, &alpha, &gamma);
        double trivial = 0;
        if (ms_u >= 1.0) rslab_trivial_envelope((double)ms_x, ms_u, beta, &trivial);
        std::cout << "X=" << ms_x << " U=" << fmt(ms_u) << " C=" << fmt(C) << "\n"
                  << "continuous=" << fmt(ms.continuous_ms) << "\n"
                  << "discrete=" << fmt(ms.discrete_ms) << "\n"
                  << "shifted_discrete=" << fmt(ms.shifted_ms) << "\n"
                  << "breakpoints=" << ms.breakpoints << "\n"
                  << "max_window=" << fmt(ms.max_window) << "\n"
                  << "trivial_shape=" << fmt(trivial) << "\n"
                  << "theorem1_shape="
                  << fmt(std::pow((double)ms_x, alpha) * std::pow(ms_u, gamma)) << "\n"
                  << "lindelofZ_shape="
                  << fmt((double)ms_x * std::pow(ms_u, 4.0 / 3.0)) << "\n";
        return 0;
    }

    if (*sweep) {
        TablePtr table = sw_src.open();
        double C = resolve_c(table.get(), sw_c, sw_c_opt->count() > 0);
        double mu = parse_mu(sw_mu);
        std::vector<rslab_sweep_cell> cells(sw_xs.size() * sw_us.size());
        double k0[3] = {0, 0, 0};
        if (rslab_status st = rslab_sweep(table.get(), C, mu, sw_xs.data(), sw_xs.size(),
                                          sw_us.data(), sw_us.size(), threads, cells.data(), k0))
            die(st, "sweep");
        if (sw_format == "csv") {
            std::cout << "X,u,U,continuous,discrete,shifted_discrete,trivial_env,"
                         "theorem1_env,lindelofZ_env,ratio_trivial,ratio_theorem1,"
                         "ratio_lindelofZ,window_over_sqrtU\n";
            for (const rslab_sweep_cell& c : cells) {
                if (!c.ok) {
                    std::cerr << "warning: skipped cell (X=" << c.x << ", U=" << fmt(c.u)
                              << "): window leaves the table\n";
                    continue;
                }
                std::cout << c.x << ',' << fmt(c.u_exp) << ',' << fmt(c.u) << ','
                          << fmt(c.continuous_ms) << ',' << fmt(c.discrete_ms) << ','
                          << fmt(c.shifted_ms) << ',' << fmt(c.trivial_env) << ','
                          << fmt(c.theorem1_env) << ',' << fmt(c.lindelofz_env) << ','
                          << fmt(c.ratio_trivial) << ',' << fmt(c.ratio_theorem1) << ','
                          << fmt(c.ratio_lindelofz) << ',' << fmt(c.window_over_sqrtu) << "\n";
            }
        } else {
            for (const rslab_sweep_cell& c : cells) {
                if (!c.ok) {
                    std::cerr << "warning: skipped cell (X=" << c.x << ", U=" << fmt(c.u)
                              << "): window leaves the table\n";
                    continue;
                }
                std::cout << "{\"X\":" << c.x << ",\"u\":" << fmt(c.u_exp)
                          << ",\"U\":" << fmt(c.u) << ",\"continuous\":" << fmt(c.continuous_ms)
                          << ",\"discrete\":" << fmt(c.discrete_ms)
                          << ",\"shifted_discrete\":" << fmt(c.shifted_ms)
                          << ",\"trivial_env\":" << fmt(c.trivial_env)
                          << ",\"theorem1_env\":" << fmt(c.theorem1_env)
                          << ",\"lindelofZ_env\":" << fmt(c.lindelofz_env)
                          << ",\"ratio_trivial\":" << fmt(c.ratio_trivial)
                          << ",\"ratio_theorem1\":" << fmt(c.ratio_theorem1)
                          << ",\"ratio_lindelofZ\":" << fmt(c.ratio_lindelofz)
                          << ",\"window_over_sqrtU\":" << fmt(c.window_over_sqrtu) << "}\n";
            }
        }
        return 0;
    }

    if (*fit) {
        std::ifstream in(fit_input);
        if (!in) {
            std::cerr << "error: cannot open " << fit_input << "\n";
            return 1;
        }
        std::string header;
        if (!std::getline(in, header)) {
            std::cerr << "error: empty CSV\n";
            return 1;
        }
        auto split = [](const std::string& line) {
            std::vector<std::string> out;
            std::stringstream ss(line);
            std::string tok;
            while (std::getline(ss, tok, ',')) out.push_back(tok);
            return out;
        };
        std::vector<std::string> cols = split(header);
        int xi = -1, yi = -1;
        for (size_t i = 0; i < cols.size(); ++i) {
            if (cols[i] == fit_xcol) xi = (int)i;
            if (cols[i] == fit_ycol) yi = (int)i;
        }
        if (xi < 0 || yi < 0) {
            std::cerr << "error: column not found in header\n";
            return 1;
        }
        std::vector<double> xs, ys;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::vector<std::string> f = split(line);
            if ((int)f.size() <= std::max(xi, yi)) continue;
            xs.push_back(std::stod(f[xi]));
            ys.push_back(std::stod(f[yi]));
        }
        rslab_exponent_fit ef;
        if (rslab_status st = rslab_fit_exponent(xs.data(), ys.data(), xs.size(), &ef))
            die(st, "fit");
        std::cout << "slope=" << fmt(ef.slope) << " intercept=" << fmt(ef.intercept)
                  << " residual_rms=" << fmt(ef.residual_rms) << " points=" << ef.points
                  << "\n";
        return 0;
    }

    if (*divisor) {
        uint64_t max_u = 0;
        for (uint64_t u : div_us) max_u = std::max(max_u, u);
        rslab_divisor* d = nullptr;
        if (rslab_status st = rslab_divisor_build(2 * div_x + max_u, &d))
            die(st, "divisor sieve");
        DivisorPtr divtab(d);
        double coeffs[4];
        std::vector<double> samples(div_us.size());
        if (rslab_status st = rslab_divisor_leading_coefficient(
                divtab.get(), div_x, div_us.data(), div_us.size(), coeffs, samples.data()))
            die(st, "divisor baseline at X=" + std::to_string(div_x));
        for (size_t i = 0; i < div_us.size(); ++i)
            std::cout << "U=" << div_us[i] << " M2/(XU)=" << fmt(samples[i]) << "\n";
        std::cout << "cubic: c0=" << fmt(coeffs[0]) << " c1=" << fmt(coeffs[1])
                  << " c2=" << fmt(coeffs[2]) << " c3=" << fmt(coeffs[3]) << "\n"
                  << "target c3=8/pi^2=" << fmt(0.81056946913870217155)
                  << " relative_error=" << fmt(std::abs(coeffs[3] / 0.81056946913870217155 - 1.0))
                  << "\n";
        return 0;
    }

    return 2;
}
