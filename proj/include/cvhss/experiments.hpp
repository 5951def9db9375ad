// cvhss: reproducible numerical studies.
//
// Three experiment drivers share one config/report shape:
//   * rank_experiment     xi-ranks of admissible Cauchy blocks over annulus
//                         row knots, one cell per (n, h, k, xi);
//   * eval_experiment     multipoint evaluation accuracy of the structured
//                         pipeline against Horner, one cell per degree;
//   * mb_comparison       remainder-tree evaluator against Horner, showing
//                         its collapse at moderate degree.
//
// Every random draw comes from a substream addressed by (seed, cell, trial),
// so any single cell can be reproduced in isolation and reports are byte
// identical across runs. Wall time is kept in the report struct for logs but
// never serialized.

#ifndef CVHSS_EXPERIMENTS_HPP
#define CVHSS_EXPERIMENTS_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvhss/baselines.hpp"
#include "cvhss/cauchy.hpp"
#include "cvhss/core.hpp"
#include "cvhss/csv.hpp"
#include "cvhss/dense.hpp"
#include "cvhss/problems.hpp"
#include "cvhss/sector.hpp"

namespace cvhss {

enum class KnotMode { circle, disc };
enum class CoeffMode { real_gaussian, complex_gaussian };

inline const char* to_string(KnotMode m) {
    return m == KnotMode::circle ? "circle" : "disc";
}
inline const char* to_string(CoeffMode m) {
    return m == CoeffMode::real_gaussian ? "real" : "complex";
}

struct ExperimentConfig {
    std::vector<int> n_list;       // matrix dims (rank) or coefficient counts
    std::vector<int> k_list;       // sector counts (rank study only)
    std::vector<int> h_list;       // radius spread exponents (rank study only)
    std::vector<double> xi_list;   // tolerances
    int trials = 100;
    std::uint64_t seed = 1;
    KnotMode knot_mode = KnotMode::circle;
    CoeffMode coeff_mode = CoeffMode::real_gaussian;
    int threads = 1;               // interface hint; execution is serial
};

// One measured cell. Fields not meaningful for a given experiment stay at
// their defaults and the renderers leave them out.
struct ExperimentCell {
    int n = 0;
    int h = -1;
    int k = 0;
    double xi = 0.0;
    int trials = 0;                // trials actually run
    long long blocks = 0;          // admissible blocks measured (rank study)
    bool skipped = false;
    bool measured_separation = false;   // k < 12: no closed-form guarantee
    double mean = 0.0;             // mean rank / mean abs error
    double stddev = 0.0;
    double maximum = 0.0;
    double mean_norm = 0.0;        // mean block Frobenius norm (rank study)
    int max_generator_length = 0;  // eval study
};

struct ExperimentReport {
    std::string kind;              // "rank" | "eval" | "mb"
    std::uint64_t seed = 0;
    int trials = 0;
    KnotMode knot_mode = KnotMode::circle;
    CoeffMode coeff_mode = CoeffMode::real_gaussian;
    std::vector<ExperimentCell> cells;
    std::uint64_t hss_flops = 0;   // structured multiply-add total
    std::uint64_t dense_flops = 0; // dense contrast counter delta
    double wall_seconds = 0.0;     // informational; excluded from renderers
};

namespace detail {

// Substream address: experiment tag in the top byte, then the cell
// parameters. Streams never collide across experiments or cells.
inline std::uint64_t cell_tag(std::uint64_t kind, std::uint64_t a, std::uint64_t b = 0) {
    return (kind << 56) ^ (a << 24) ^ b;
}

inline void require_trials(const ExperimentConfig& cfg) {
    if (cfg.trials < 1)
        throw std::invalid_argument("experiment: trials must be >= 1");
    if (cfg.threads < 1)
        throw std::invalid_argument("experiment: threads must be >= 1");
}

// Singular values below this pad are discarded by the factored route; it
// sits ten decades under the smallest tolerance anyone measures ranks at.
inline constexpr double kSigmaPad = 1e-14;

// Singular values of one admissible block: rows = knots outside the three
// sector guard zone, cols = column knots of sector q. The factored route
// avoids forming tall blocks whenever the geometric-series length needed to
// reach kSigmaPad fits inside the block; otherwise plain dense SVD.
inline std::vector<double> admissible_block_sv(const cvec& s_far, const cvec& t_arc,
                                               cplx c) {
    const int m = int(s_far.size()), w = int(t_arc.size());
    double tmax = 0.0;
    for (const cplx& t : t_arc) tmax = std::max(tmax, std::abs(t - c));
    double smin = std::numeric_limits<double>::infinity();
    for (const cplx& s : s_far) smin = std::min(smin, std::abs(s - c));
    const double theta = (smin > 0.0) ? tmax / smin
                                      : std::numeric_limits<double>::infinity();
    if (theta < 0.95) {
        const int rho = rho_for_tolerance(theta, smin, kSigmaPad);
        if (rho <= std::min(m, w) && std::min(m, w) > 48) {
            LowRankBlock blk = admissible_generators(s_far, t_arc, c, rho);
            return product_singular_values(blk.f_factor, blk.g_factor);
        }
    }
    DenseMatrix a{std::size_t(m), std::size_t(w)};
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < w; ++j) a(i, j) = 1.0 / (s_far[i] - t_arc[j]);
    return singular_values(a);
}

} // namespace detail

// xi-ranks of single-level admissible blocks. Row knots are n points with
// uniform angles and radii uniform on [1 - 2^-h, 1 + 2^-h); column knots are
// the order-n roots of unity. For each sector q the admissible block pairs
// the sector's columns with every row outside sectors q-1, q, q+1; its
// xi-rank is the number of singular values above xi. Knot draws depend on
// (n, h, trial) only, so all k and xi cells of a row see the same instances.
inline ExperimentReport rank_experiment(const ExperimentConfig& cfg) {
    detail::require_trials(cfg);
    if (cfg.n_list.empty() || cfg.k_list.empty() || cfg.h_list.empty() ||
        cfg.xi_list.empty())
        throw std::invalid_argument("rank_experiment: empty parameter list");
    for (int n : cfg.n_list)
        if (n < 16) throw std::invalid_argument("rank_experiment: n must be >= 16");
    for (int k : cfg.k_list)
        if (k < 2 || !is_pow2(std::size_t(k)))
            throw std::invalid_argument("rank_experiment: k must be a power of two >= 2");
    for (int h : cfg.h_list)
        if (h < 0 || h > 40)
            throw std::invalid_argument("rank_experiment: h must be in [0, 40]");
    for (double xi : cfg.xi_list)
        if (!(xi > 0.0)) throw std::invalid_argument("rank_experiment: xi must be > 0");

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t dense0 = dense_ops();

    const int N = int(cfg.n_list.size()), K = int(cfg.k_list.size());
    const int H = int(cfg.h_list.size()), X = int(cfg.xi_list.size());
    struct Acc {
        long long cnt = 0;
        double sum = 0.0, sumsq = 0.0, mx = 0.0, frob = 0.0;
    };
    std::vector<Acc> acc(std::size_t(N) * K * H * X);
    auto at = [&](int ih, int ix, int in, int ik) -> Acc& {
        return acc[std::size_t(((ih * X + ix) * N + in) * K + ik)];
    };

    for (int in = 0; in < N; ++in) {
        const int n = cfg.n_list[in];
        for (int ih = 0; ih < H; ++ih) {
            const int h = cfg.h_list[ih];
            const double spread = std::ldexp(1.0, -h);
            for (int trial = 0; trial < cfg.trials; ++trial) {
                RngStream rng = RngStream::derived(
                    cfg.seed, detail::cell_tag(1, std::uint64_t(n), std::uint64_t(h)),
                    std::uint64_t(trial));
                std::vector<double> ang(n), rad(n);
                for (int i = 0; i < n; ++i) ang[i] = rng.uniform(0.0, 2.0 * M_PI);
                for (int i = 0; i < n; ++i)
                    rad[i] = rng.uniform(1.0 - spread, 1.0 + spread);
                cvec s(n);
                for (int i = 0; i < n; ++i) s[i] = std::polar(rad[i], ang[i]);

                for (int ik = 0; ik < K; ++ik) {
                    const int k = cfg.k_list[ik];
                    if (k < 4 || n / k < 2) continue;
                    const SectorPartition part = bucket_partition(s, cplx(1.0), n, k);
                    cvec s_sorted(n), t_sorted(n);
                    for (int p = 0; p < n; ++p) s_sorted[p] = s[part.s_order[p]];
                    for (int p = 0; p < n; ++p)
                        t_sorted[p] = std::polar(
                            1.0, 2.0 * M_PI * double(part.t_order[p]) / double(n));

                    for (int q = 0; q < k; ++q) {
                        const int cb = part.t_offsets[q], ce = part.t_offsets[q + 1];
                        if (cb == ce) continue;
                        cvec t_arc(t_sorted.begin() + cb, t_sorted.begin() + ce);
                        cvec s_far;
                        for (int d = 2; d <= k - 2; ++d) {
                            const int qq = (q + d) % k;
                            s_far.insert(s_far.end(),
                                         s_sorted.begin() + part.s_offsets[qq],
                                         s_sorted.begin() + part.s_offsets[qq + 1]);
                        }
                        if (s_far.empty()) continue;
                        const std::vector<double> sv =
                            detail::admissible_block_sv(s_far, t_arc, part.center(q));
                        double frob2 = 0.0;
                        for (double sig : sv) frob2 += sig * sig;
                        const double frob = std::sqrt(frob2);
                        for (int ix = 0; ix < X; ++ix) {
                            const double xi = cfg.xi_list[ix];
                            int r = 0;
                            for (double sig : sv)
                                if (sig > xi) ++r;
                            Acc& a = at(ih, ix, in, ik);
                            ++a.cnt;
                            a.sum += double(r);
                            a.sumsq += double(r) * double(r);
                            a.mx = std::max(a.mx, double(r));
                            a.frob += frob;
                        }
                    }
                }
            }
        }
    }

    ExperimentReport rep;
    rep.kind = "rank";
    rep.seed = cfg.seed;
    rep.trials = cfg.trials;
    rep.knot_mode = cfg.knot_mode;
    rep.coeff_mode = cfg.coeff_mode;
    for (int ih = 0; ih < H; ++ih)
        for (int ix = 0; ix < X; ++ix)
            for (int in = 0; in < N; ++in)
                for (int ik = 0; ik < K; ++ik) {
                    const Acc& a = at(ih, ix, in, ik);
                    ExperimentCell c;
                    c.n = cfg.n_list[in];
                    c.h = cfg.h_list[ih];
                    c.k = cfg.k_list[ik];
                    c.xi = cfg.xi_list[ix];
                    c.measured_separation = c.k < 12;
                    if (a.cnt == 0) {
                        c.skipped = true;
                    } else {
                        c.trials = cfg.trials;
                        c.blocks = a.cnt;
                        c.mean = a.sum / double(a.cnt);
                        if (a.cnt > 1) {
                            const double var =
                                (a.sumsq - a.sum * a.sum / double(a.cnt)) /
                                double(a.cnt - 1);
                            c.stddev = std::sqrt(std::max(var, 0.0));
                        }
                        c.maximum = a.mx;
                        c.mean_norm = a.frob / double(a.cnt);
                    }
                    rep.cells.push_back(std::move(c));
                }
    rep.dense_flops = dense_ops() - dense0;
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

namespace detail {

// Shared instance draw for the evaluation studies. Order is fixed: angles,
// then radii (disc mode only), then coefficients.
inline void draw_eval_instance(RngStream& rng, int n, KnotMode km, CoeffMode cm,
                               cvec& knots, cvec& coeffs) {
    std::vector<double> ang(n);
    for (int i = 0; i < n; ++i) ang[i] = 2.0 * M_PI * rng.uniform();
    knots.resize(n);
    if (km == KnotMode::disc) {
        for (int i = 0; i < n; ++i) knots[i] = std::polar(rng.uniform(), ang[i]);
    } else {
        for (int i = 0; i < n; ++i) knots[i] = std::polar(1.0, ang[i]);
    }
    coeffs.resize(n);
    if (cm == CoeffMode::real_gaussian) {
        for (int i = 0; i < n; ++i) coeffs[i] = cplx(rng.gaussian(), 0.0);
    } else {
        for (int i = 0; i < n; ++i) coeffs[i] = rng.gaussian_cplx();
    }
}

// Mean absolute gap between two value vectors; any non-finite entry makes
// the whole trial +Inf (never NaN, so aggregates stay well defined).
inline double mean_abs_gap(const cvec& a, const cvec& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::abs(a[i] - b[i]);
        if (!std::isfinite(d)) return std::numeric_limits<double>::infinity();
        sum += d;
    }
    return sum / double(a.size());
}

struct TrialAgg {
    double sum = 0.0, sumsq = 0.0, mx = 0.0;
    int cnt = 0;
    bool inf = false;
    void add(double v) {
        ++cnt;
        if (!std::isfinite(v)) {
            inf = true;
            return;
        }
        sum += v;
        sumsq += v * v;
        mx = std::max(mx, v);
    }
    double mean() const {
        return inf ? std::numeric_limits<double>::infinity() : sum / double(cnt);
    }
    double stddev() const {
        if (inf) return std::numeric_limits<double>::infinity();
        if (cnt < 2) return 0.0;
        const double var = (sumsq - sum * sum / double(cnt)) / double(cnt - 1);
        return std::sqrt(std::max(var, 0.0));
    }
    double maximum() const {
        return inf ? std::numeric_limits<double>::infinity() : mx;
    }
};

} // namespace detail

// Structured multipoint evaluation against Horner. One cell per coefficient
// count; knots are fresh per trial per the configured mode, and the error is
// the per-trial mean absolute gap averaged over trials.
inline ExperimentReport eval_experiment(const ExperimentConfig& cfg) {
    detail::require_trials(cfg);
    if (cfg.n_list.empty())
        throw std::invalid_argument("eval_experiment: empty degree list");
    for (int n : cfg.n_list)
        if (n < 2) throw std::invalid_argument("eval_experiment: degree must be >= 2");
    if (cfg.xi_list.size() > 1)
        throw std::invalid_argument("eval_experiment: at most one xi");
    const double xi = cfg.xi_list.empty() ? detail::kEvalXiDefault : cfg.xi_list[0];
    if (!(xi > 0.0)) throw std::invalid_argument("eval_experiment: xi must be > 0");

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t dense0 = dense_ops();

    ExperimentReport rep;
    rep.kind = "eval";
    rep.seed = cfg.seed;
    rep.trials = cfg.trials;
    rep.knot_mode = cfg.knot_mode;
    rep.coeff_mode = cfg.coeff_mode;

    const std::uint64_t mode_bits =
        (cfg.knot_mode == KnotMode::disc ? 2u : 0u) |
        (cfg.coeff_mode == CoeffMode::complex_gaussian ? 1u : 0u);
    FastOptions opts;
    opts.xi = xi;

    for (int n : cfg.n_list) {
        detail::TrialAgg agg;
        int max_len = 0;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            RngStream rng = RngStream::derived(
                cfg.seed, detail::cell_tag(2, std::uint64_t(n), mode_bits),
                std::uint64_t(trial));
            cvec knots, coeffs;
            detail::draw_eval_instance(rng, n, cfg.knot_mode, cfg.coeff_mode,
                                       knots, coeffs);
            PolyEvalResult r = polyeval_fast(coeffs, knots, opts);
            const cvec ref = horner_eval(Polynomial(coeffs), knots);
            agg.add(detail::mean_abs_gap(r.values, ref));
            max_len = std::max(max_len, r.max_generator_length);
            rep.hss_flops += r.hss_flops;
        }
        ExperimentCell c;
        c.n = n;
        c.xi = xi;
        c.trials = cfg.trials;
        c.mean = agg.mean();
        c.stddev = agg.stddev();
        c.maximum = agg.maximum();
        c.max_generator_length = max_len;
        rep.cells.push_back(std::move(c));
    }
    rep.dense_flops = dense_ops() - dense0;
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// Remainder-tree evaluator against Horner on unit-circle knots. The cell
// statistics are mean and standard deviation of the per-trial mean absolute
// gap; overflowed trials enter as +Inf.
inline ExperimentReport mb_comparison(const ExperimentConfig& cfg) {
    detail::require_trials(cfg);
    if (cfg.n_list.empty())
        throw std::invalid_argument("mb_comparison: empty degree list");
    for (int n : cfg.n_list)
        if (n < 2) throw std::invalid_argument("mb_comparison: degree must be >= 2");

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t dense0 = dense_ops();

    ExperimentReport rep;
    rep.kind = "mb";
    rep.seed = cfg.seed;
    rep.trials = cfg.trials;
    rep.knot_mode = KnotMode::circle;
    rep.coeff_mode = cfg.coeff_mode;

    const std::uint64_t mode_bits =
        cfg.coeff_mode == CoeffMode::complex_gaussian ? 1u : 0u;

    for (int n : cfg.n_list) {
        detail::TrialAgg agg;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            RngStream rng = RngStream::derived(
                cfg.seed, detail::cell_tag(3, std::uint64_t(n), mode_bits),
                std::uint64_t(trial));
            cvec knots, coeffs;
            detail::draw_eval_instance(rng, n, KnotMode::circle, cfg.coeff_mode,
                                       knots, coeffs);
            // Knots sorted by nondecreasing angle, as every structured run
            // orders them. The product tree then multiplies arc clusters, and
            // that coherent regime collapses orders of magnitude harder than
            // an interleaved ordering would.
            std::sort(knots.begin(), knots.end(),
                      [](const cplx& a, const cplx& b) {
                          return std::arg(a) < std::arg(b);
                      });
            const Polynomial p{coeffs};
            const cvec tree = mb_eval(p, knots);
            const cvec ref = horner_eval(p, knots);
            agg.add(detail::mean_abs_gap(tree, ref));
        }
        ExperimentCell c;
        c.n = n;
        c.trials = cfg.trials;
        c.mean = agg.mean();
        c.stddev = agg.stddev();
        c.maximum = agg.maximum();
        rep.cells.push_back(std::move(c));
    }
    rep.dense_flops = dense_ops() - dense0;
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// Canonical grids used by the command line tool and the acceptance checks.
inline ExperimentConfig default_rank_config() {
    ExperimentConfig cfg;
    cfg.n_list = {1024, 2048, 4096};
    cfg.k_list = {4, 32, 512};
    cfg.h_list = {0, 1, 4};
    cfg.xi_list = {1e-2, 1e-3, 1e-4};
    return cfg;
}

inline ExperimentConfig default_eval_config(KnotMode km = KnotMode::circle,
                                            CoeffMode cm = CoeffMode::real_gaussian) {
    ExperimentConfig cfg;
    cfg.n_list = {32, 64, 128, 256, 512, 1024, 2048, 4096};
    cfg.xi_list = {1e-5};
    cfg.knot_mode = km;
    cfg.coeff_mode = cm;
    return cfg;
}

inline ExperimentConfig default_mb_config(CoeffMode cm = CoeffMode::real_gaussian) {
    ExperimentConfig cfg;
    cfg.n_list = {16, 32, 64, 128};
    cfg.coeff_mode = cm;
    return cfg;
}

namespace detail {

inline std::string fmt_sci(double v) {
    if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

inline std::string fmt_xi(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.0e", v);
    return buf;
}

// Distinct values in first-appearance order; cells drive the table layout so
// renderers need no access to the original config.
template <class T, class F>
std::vector<T> distinct(const std::vector<ExperimentCell>& cells, F&& get) {
    std::vector<T> out;
    for (const ExperimentCell& c : cells) {
        T v = get(c);
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
    return out;
}

} // namespace detail

// Flat CSV, one row per cell, preceded by '#' comment lines carrying the
// run parameters. Wall time is deliberately absent: two runs of the same
// config must produce identical bytes.
inline void write_report_csv(const ExperimentReport& rep, std::ostream& os) {
    os << "# kind=" << rep.kind << " seed=" << rep.seed << " trials=" << rep.trials;
    if (rep.kind != "rank")
        os << " knots=" << to_string(rep.knot_mode)
           << " coeffs=" << to_string(rep.coeff_mode);
    os << " hss_flops=" << rep.hss_flops << " dense_flops=" << rep.dense_flops
       << '\n';
    if (rep.kind == "rank") {
        os << "n,h,k,xi,trials,blocks,skipped,measured_separation,"
              "mean_rank,std_rank,max_rank,mean_frob_norm\n";
        for (const ExperimentCell& c : rep.cells)
            os << c.n << ',' << c.h << ',' << c.k << ',' << format_double(c.xi)
               << ',' << c.trials << ',' << c.blocks << ',' << int(c.skipped)
               << ',' << int(c.measured_separation) << ','
               << format_double(c.mean) << ',' << format_double(c.stddev) << ','
               << format_double(c.maximum) << ',' << format_double(c.mean_norm)
               << '\n';
    } else if (rep.kind == "eval") {
        os << "degree,xi,trials,max_generator_length,mean_abs_error,"
              "std_abs_error,max_abs_error\n";
        for (const ExperimentCell& c : rep.cells)
            os << c.n << ',' << format_double(c.xi) << ',' << c.trials << ','
               << c.max_generator_length << ',' << format_double(c.mean) << ','
               << format_double(c.stddev) << ',' << format_double(c.maximum)
               << '\n';
    } else {
        os << "degree,trials,mean_abs_diff,std_abs_diff,max_abs_diff\n";
        for (const ExperimentCell& c : rep.cells)
            os << c.n << ',' << c.trials << ',' << format_double(c.mean) << ','
               << format_double(c.stddev) << ',' << format_double(c.maximum)
               << '\n';
    }
}

// Markdown tables in the familiar report layout: the rank study prints one
// table per radius spread with a (xi, n) row per pair and a column per k;
// the evaluation studies print one row per degree.
inline void write_report_markdown(const ExperimentReport& rep, std::ostream& os) {
    if (rep.kind == "rank") {
        os << "## Mean ranks of admissible blocks at tolerance xi\n\n";
        os << "Seed " << rep.seed << ", " << rep.trials << " trials per cell.\n";
        const auto hs = detail::distinct<int>(rep.cells,
                                              [](const ExperimentCell& c) { return c.h; });
        const auto ks = detail::distinct<int>(rep.cells,
                                              [](const ExperimentCell& c) { return c.k; });
        const auto xis = detail::distinct<double>(
            rep.cells, [](const ExperimentCell& c) { return c.xi; });
        const auto ns = detail::distinct<int>(rep.cells,
                                              [](const ExperimentCell& c) { return c.n; });
        auto find_cell = [&](int h, double xi, int n, int k) -> const ExperimentCell* {
            for (const ExperimentCell& c : rep.cells)
                if (c.h == h && c.xi == xi && c.n == n && c.k == k) return &c;
            return nullptr;
        };
        bool any_measured = false;
        for (int h : hs) {
            os << "\n### Radius spread 2^-" << h << "\n\n";
            os << "| xi | n |";
            for (int k : ks) {
                os << " k = " << k;
                if (k < 12) {
                    os << " \\*";
                    any_measured = true;
                }
                os << " |";
            }
            os << "\n|---:|---:|";
            for (std::size_t i = 0; i < ks.size(); ++i) os << "---:|";
            os << '\n';
            for (double xi : xis)
                for (int n : ns) {
                    os << "| " << detail::fmt_xi(xi) << " | " << n << " |";
                    for (int k : ks) {
                        const ExperimentCell* c = find_cell(h, xi, n, k);
                        if (!c || c->skipped) {
                            os << " - |";
                        } else {
                            char buf[32];
                            std::snprintf(buf, sizeof buf, "%.1f", c->mean);
                            os << ' ' << buf << " |";
                        }
                    }
                    os << '\n';
                }
        }
        if (any_measured)
            os << "\n\\* separation measured per block; no closed-form guarantee "
                  "below k = 12.\n";
    } else if (rep.kind == "eval") {
        os << "## Structured evaluation against Horner\n\n";
        os << "Knots: " << to_string(rep.knot_mode) << ", coefficients: "
           << to_string(rep.coeff_mode) << ", seed " << rep.seed << ", "
           << rep.trials << " trials per degree.\n\n";
        os << "| Degree | Max rank | Mean abs error |\n|---:|---:|---:|\n";
        for (const ExperimentCell& c : rep.cells)
            os << "| " << c.n << " | " << c.max_generator_length << " | "
               << detail::fmt_sci(c.mean) << " |\n";
    } else {
        os << "## Remainder-tree evaluation against Horner\n\n";
        os << "Knots on the unit circle, coefficients: "
           << to_string(rep.coeff_mode) << ", seed " << rep.seed << ", "
           << rep.trials << " trials per degree.\n\n";
        os << "| Degree | Mean abs diff | Std abs diff |\n|---:|---:|---:|\n";
        for (const ExperimentCell& c : rep.cells)
            os << "| " << c.n << " | " << detail::fmt_sci(c.mean) << " | "
               << detail::fmt_sci(c.stddev) << " |\n";
    }
}

} // namespace cvhss

#endif
