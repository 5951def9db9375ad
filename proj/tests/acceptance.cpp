// Acceptance gate for the structured Cauchy/Vandermonde library. Seven
// criteria, one PASS/FAIL line each; the exit code is the number of
// failures. Every tolerance and all frozen reference values are pinned in
// this file. A red line means the library misses its contract; the fix
// belongs in the library, never here.
//
// The run is deterministic (seed 1 throughout) and takes a few minutes,
// dominated by the 100-trial rank grid.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "cvhss/cvhss.hpp"

namespace {

using cvhss::cplx;
using cvhss::cvec;

constexpr std::uint64_t kSeed = 1;

// criterion 1: mean rank per cell within this window of the reference
constexpr double kRankMeanWindow = 2.0;
// criterion 2: admissible blocks whose entrywise error must sit under the
// certified generator bound. Generator length is derived from a target
// tolerance drawn across the library's operating envelope, the same way the
// builders pick it. Certificates below kBoundFloor are re-drawn: checking
// them would need reconstructions finer than double rounding can express,
// and no driver requests them.
constexpr int kBoundBlocks = 1000;
constexpr double kBoundXiLo = 1e-6;
constexpr double kBoundXiHi = 1e-2;
constexpr int kBoundRhoCap = 25;
constexpr double kBoundFloor = 1e-10;
// criterion 3: per-cell mean |fast - horner| ceiling and generator cap
constexpr double kEvalMeanCeiling = 1e-4;
constexpr int kGenLenCeiling = 20;
// criterion 4: remainder-tree agreement at degree 16, collapse beyond
constexpr double kMbTinyCeiling = 1e-6;
constexpr double kMbBlowupFloor = 1e6;
constexpr double kMbDeg128Floor = 1e100;
// criterion 5: spread of flops / (n log2^2 n) across sizes, and the dense
// contrast growth per doubling
constexpr double kMatvecSpread = 1.5;
constexpr double kDenseRatioLo = 3.9;
constexpr double kDenseRatioHi = 4.1;
// criterion 6: solve accuracy, refusal discipline, and work scaling
constexpr double kSolveRelErr = 1e-6;
constexpr int kSolveMaxRefine = 2;
constexpr int kSolveTrials = 100;
constexpr int kSolveSuccessFloor = 95;
constexpr double kSolveSpread = 2.0;

// Frozen reference values: mean ranks of admissible blocks at tolerance xi,
// averaged over 100 trials. Index order: radius spread h in {0,1,4},
// xi in {1e-2,1e-3,1e-4}, n in {1024,2048,4096}, sector count k in {4,32,512}.
constexpr int kRefH[3] = {0, 1, 4};
constexpr double kRefXi[3] = {1e-2, 1e-3, 1e-4};
constexpr int kRefN[3] = {1024, 2048, 4096};
constexpr int kRefK[3] = {4, 32, 512};
constexpr double kRefRank[3][3][3][3] = {
    {
        // h = 0
        {{5.0, 5.0, 2.0}, {5.0, 5.0, 3.0}, {5.0, 5.0, 3.8}},
        {{6.0, 6.0, 2.0}, {6.0, 6.0, 3.8}, {6.0, 6.3, 4.3}},
        {{7.0, 7.0, 2.0}, {7.0, 7.0, 4.0}, {7.0, 7.8, 5.0}},
    },
    {
        // h = 1
        {{4.0, 5.0, 2.0}, {4.0, 5.0, 3.4}, {5.0, 5.8, 4.0}},
        {{5.0, 6.0, 2.0}, {5.0, 6.0, 4.0}, {6.0, 7.0, 4.8}},
        {{6.0, 7.0, 2.0}, {6.0, 7.0, 4.0}, {6.0, 8.0, 5.4}},
    },
    {
        // h = 4
        {{4.0, 5.0, 2.0}, {4.0, 5.0, 4.0}, {4.0, 5.0, 5.0}},
        {{4.0, 6.0, 2.0}, {5.0, 6.0, 4.0}, {5.0, 6.0, 5.9}},
        {{5.0, 7.0, 2.0}, {5.0, 7.0, 4.0}, {6.0, 7.0, 6.6}},
    },
};

int g_failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
    std::printf("criterion %d (%s): %s  %s\n", idx, name, pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double inf_norm(const cvec& v) {
    double m = 0.0;
    for (const cplx& z : v) m = std::max(m, std::abs(z));
    return m;
}

cvec interlaced_circle(cvhss::RngStream& rng, int n) {
    cvec s(n);
    for (int i = 0; i < n; ++i)
        s[i] = std::polar(1.0, 2.0 * M_PI * (i + 0.25 + 0.5 * rng.uniform()) / double(n));
    return s;
}

// ---------------------------------------------------------------------------

void criterion_rank_tables() {
    cvhss::ExperimentConfig cfg = cvhss::default_rank_config();
    cfg.seed = kSeed;
    const cvhss::ExperimentReport rep = cvhss::rank_experiment(cfg);
    double worst = -1.0;
    char where[96] = "(none)";
    bool complete = true;
    for (int ih = 0; ih < 3; ++ih)
        for (int ix = 0; ix < 3; ++ix)
            for (int in2 = 0; in2 < 3; ++in2)
                for (int ik = 0; ik < 3; ++ik) {
                    const cvhss::ExperimentCell* cell = nullptr;
                    for (const cvhss::ExperimentCell& c : rep.cells)
                        if (c.h == kRefH[ih] && c.xi == kRefXi[ix] &&
                            c.n == kRefN[in2] && c.k == kRefK[ik]) {
                            cell = &c;
                            break;
                        }
                    if (!cell || cell->skipped || cell->trials != cfg.trials) {
                        complete = false;
                        continue;
                    }
                    const double dev = std::abs(cell->mean - kRefRank[ih][ix][in2][ik]);
                    if (dev > worst) {
                        worst = dev;
                        std::snprintf(where, sizeof where, "h=%d xi=%g n=%d k=%d",
                                      kRefH[ih], kRefXi[ix], kRefN[in2], kRefK[ik]);
                    }
                }
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "81 cells, 100 trials each; worst |mean - reference| = %.2f "
                  "(window %.1f) at %s",
                  worst, kRankMeanWindow, where);
    report(1, "block rank tables", complete && worst >= 0.0 && worst <= kRankMeanWindow,
           buf);
}

void criterion_generator_bound() {
    cvhss::RngStream rng(kSeed);
    int checked = 0, covered = 0;
    double worst_fill = 0.0;   // entrywise error over certified bound
    for (int trial = 0; checked < kBoundBlocks && trial < 10 * kBoundBlocks; ++trial) {
        const double phi = rng.uniform(0.0, 2.0 * M_PI);
        const cplx c = std::polar(1.0, phi);
        const int w = 4 + int(rng.uniform() * 60.0);
        const int m = 4 + int(rng.uniform() * 92.0);
        cvec t(w), s(m);
        const int regime = trial % 3;
        if (regime == 0) {
            // columns in a disc around the arc center, rows outside a ring
            const double a = rng.uniform(0.05, 0.45);
            for (cplx& z : t)
                z = c + std::polar(a * rng.uniform(), rng.uniform(0.0, 2.0 * M_PI));
            const double b = a / rng.uniform(0.15, 0.85);
            for (cplx& z : s)
                z = c + std::polar(b * (1.0 + rng.uniform()),
                                   rng.uniform(0.0, 2.0 * M_PI));
        } else if (regime == 1) {
            // both families on the unit circle, on well separated arcs
            const double half = rng.uniform(0.02, 0.3);
            for (cplx& z : t)
                z = std::polar(1.0, phi + half * rng.uniform(-1.0, 1.0));
            for (cplx& z : s)
                z = std::polar(1.0, phi + M_PI + rng.uniform(-1.0, 1.0));
        } else {
            // columns near the circle, rows deep inside the disc
            for (cplx& z : t)
                z = c + std::polar(0.2 * rng.uniform(), rng.uniform(0.0, 2.0 * M_PI));
            for (cplx& z : s)
                z = std::polar(0.4 * rng.uniform(), rng.uniform(0.0, 2.0 * M_PI));
        }
        double tmax = 0.0;
        for (const cplx& z : t) tmax = std::max(tmax, std::abs(z - c));
        double smin = std::numeric_limits<double>::infinity();
        for (const cplx& z : s) smin = std::min(smin, std::abs(z - c));
        if (!(smin > 0.0) || tmax / smin >= 1.0) continue;
        const double theta = tmax / smin;
        const double xi = std::pow(10.0, rng.uniform(std::log10(kBoundXiLo),
                                                     std::log10(kBoundXiHi)));
        const int rho = std::min(cvhss::rho_for_tolerance(theta, smin, xi),
                                 kBoundRhoCap);
        if (cvhss::generator_tail_bound(theta, smin, rho) < kBoundFloor) continue;
        try {
            const cvhss::LowRankBlock blk = cvhss::admissible_generators(s, t, c, rho);
            ++checked;
            double worst = 0.0;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < w; ++j) {
                    cplx approx = 0.0;
                    for (int v = 0; v < blk.rank(); ++v)
                        approx += blk.f_factor(i, v) * blk.g_factor(j, v);
                    worst = std::max(worst, std::abs(1.0 / (s[i] - t[j]) - approx));
                }
            if (blk.error_bound > 0.0)
                worst_fill = std::max(worst_fill, worst / blk.error_bound);
            if (worst <= blk.error_bound) ++covered;
        } catch (const cvhss::NotSeparated&) {
            // geometry landed inadmissible; draw another block
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%d/%d blocks under the certified bound; worst error/bound = %.3g",
                  covered, checked, worst_fill);
    report(2, "generator bound soundness", checked == kBoundBlocks && covered == checked,
           buf);
}

void criterion_eval_tables() {
    const cvhss::KnotMode kms[2] = {cvhss::KnotMode::circle, cvhss::KnotMode::disc};
    const cvhss::CoeffMode cms[2] = {cvhss::CoeffMode::real_gaussian,
                                     cvhss::CoeffMode::complex_gaussian};
    bool pass = true;
    double worst_mean = 0.0;
    int worst_len = 0, cells = 0;
    char where[96] = "(none)";
    for (cvhss::KnotMode km : kms)
        for (cvhss::CoeffMode cm : cms) {
            cvhss::ExperimentConfig cfg = cvhss::default_eval_config(km, cm);
            cfg.seed = kSeed;
            const cvhss::ExperimentReport rep = cvhss::eval_experiment(cfg);
            for (const cvhss::ExperimentCell& c : rep.cells) {
                ++cells;
                if (!(c.mean <= kEvalMeanCeiling) ||
                    c.max_generator_length > kGenLenCeiling)
                    pass = false;
                if (c.mean > worst_mean) {
                    worst_mean = c.mean;
                    std::snprintf(where, sizeof where, "degree %d, %s knots, %s",
                                  c.n, to_string(km), to_string(cm));
                }
                worst_len = std::max(worst_len, c.max_generator_length);
            }
        }
    char buf[224];
    std::snprintf(buf, sizeof buf,
                  "%d cells; worst mean error %.3g (ceiling %.0e) at %s; "
                  "max generator length %d (cap %d)",
                  cells, worst_mean, kEvalMeanCeiling, where, worst_len, kGenLenCeiling);
    report(3, "evaluation accuracy tables", pass && cells == 32, buf);
}

void criterion_remainder_tree() {
    cvhss::ExperimentConfig cfg = cvhss::default_mb_config(cvhss::CoeffMode::real_gaussian);
    cfg.seed = kSeed;
    const cvhss::ExperimentReport real_rep = cvhss::mb_comparison(cfg);
    cfg = cvhss::default_mb_config(cvhss::CoeffMode::complex_gaussian);
    cfg.seed = kSeed;
    const cvhss::ExperimentReport cplx_rep = cvhss::mb_comparison(cfg);

    auto mean_at = [](const cvhss::ExperimentReport& r, int n) {
        for (const cvhss::ExperimentCell& c : r.cells)
            if (c.n == n) return c.mean;
        return std::nan("");
    };
    const double r16 = mean_at(real_rep, 16);
    const double r64 = mean_at(real_rep, 64);
    const double r128 = mean_at(real_rep, 128);
    const double c128 = mean_at(cplx_rep, 128);
    const bool pass = r16 <= kMbTinyCeiling && r64 >= kMbBlowupFloor &&
                      r128 >= kMbBlowupFloor &&
                      (std::isinf(c128) || c128 >= kMbDeg128Floor);
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "real mean gap: %.2e at degree 16, %.2e at 64, %.2e at 128; "
                  "complex at 128: %.2e",
                  r16, r64, r128, c128);
    report(4, "remainder tree divergence", pass, buf);
}

void criterion_matvec_scaling() {
    const int ns[4] = {512, 1024, 2048, 4096};
    double cn[4] = {0, 0, 0, 0};
    std::uint64_t dense[4] = {0, 0, 0, 0};
    cvhss::RngStream rng(kSeed);
    for (int idx = 0; idx < 4; ++idx) {
        const int n = ns[idx];
        cvec s(n), x(n);
        for (cplx& z : s) z = std::polar(1.0, rng.uniform(0.0, 2.0 * M_PI));
        for (cplx& z : x) z = rng.gaussian_cplx();
        const cvhss::ChooseFResult cf = cvhss::choose_f(s, n, 5);
        const cvhss::CVMatrix cmat(s, cf.f, n);
        const cvhss::ExtendedHssMatrix h = cvhss::build_extended_hss(
            cmat, cvhss::default_sector_count(n), cvhss::HssTarget::fixed_xi(1e-5));
        h.reset_flops();
        (void)h.matvec(x);
        const double lg = std::log2(double(n));
        cn[idx] = double(h.flops()) / (double(n) * lg * lg);

        cvhss::reset_dense_ops();
        {
            const cvhss::DenseMatrix d = cmat.to_dense();
            (void)cvhss::dense_matvec(d, x);
        }
        dense[idx] = cvhss::dense_ops();
    }
    double lo = cn[0], hi = cn[0];
    for (double v : cn) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool dense_ok = true;
    for (int i = 0; i + 1 < 4; ++i) {
        const double r = double(dense[i + 1]) / double(dense[i]);
        if (r < kDenseRatioLo || r > kDenseRatioHi) dense_ok = false;
    }
    char buf[224];
    std::snprintf(buf, sizeof buf,
                  "flops/(n log2^2 n) = %.1f, %.1f, %.1f, %.1f over n = 512..4096 "
                  "(spread %.2f, limit %.1f); dense contrast x%.2f per doubling",
                  cn[0], cn[1], cn[2], cn[3], hi / lo, kMatvecSpread,
                  double(dense[1]) / double(dense[0]));
    report(5, "near linear structured product", hi / lo <= kMatvecSpread && dense_ok,
           buf);
}

void criterion_solve() {
    const int ns[3] = {256, 512, 1024};
    bool pass = true;
    double cn_lo = 0.0, cn_hi = 0.0;
    int total_success = 0, total_hrv = 0, total_other = 0;
    cvhss::RngStream rng(kSeed);
    for (int idx = 0; idx < 3; ++idx) {
        const int n = ns[idx];
        int success = 0, hrv = 0, other = 0;
        std::uint64_t flop_sum = 0;
        std::uint64_t flop_trials = 0;
        for (int trial = 0; trial < kSolveTrials; ++trial) {
            const cvec s = interlaced_circle(rng, n);
            cvec xstar(n);
            for (cplx& z : xstar) z = rng.gaussian_cplx();
            cvec b(n, cplx(0.0));
            for (int i = 0; i < n; ++i) {
                cplx acc = 0.0;
                for (int j = 0; j < n; ++j)
                    acc += xstar[j] / (s[i] - std::polar(1.0, 2.0 * M_PI * j / double(n)));
                b[i] = acc;
            }
            try {
                const cvhss::CVMatrix c(s, cplx(1.0), n);
                const cvhss::ExtendedHssMatrix h = cvhss::build_extended_hss(
                    c, cvhss::default_sector_count(n), cvhss::HssTarget::fixed_xi(1e-13));
                h.reset_flops();
                const cvhss::HssSolveResult r =
                    cvhss::hss_solve(h, b, 1e-10, kSolveMaxRefine);
                flop_sum += h.flops();
                ++flop_trials;
                double err = 0.0;
                for (int j = 0; j < n; ++j)
                    err = std::max(err, std::abs(r.x[j] - xstar[j]));
                if (err <= kSolveRelErr * inf_norm(xstar))
                    ++success;
                else
                    ++other;   // a quiet wrong answer is a contract violation
            } catch (const cvhss::HierarchicalRegularityViolation&) {
                ++hrv;         // honest refusal, allowed for a few trials
            } catch (const std::exception&) {
                ++other;
            }
        }
        total_success += success;
        total_hrv += hrv;
        total_other += other;
        if (success < kSolveSuccessFloor || other != 0) pass = false;
        if (flop_trials > 0) {
            const double lg = std::log2(double(n));
            const double cn =
                double(flop_sum) / double(flop_trials) / (double(n) * lg * lg * lg);
            if (idx == 0) {
                cn_lo = cn_hi = cn;
            } else {
                cn_lo = std::min(cn_lo, cn);
                cn_hi = std::max(cn_hi, cn);
            }
        } else {
            pass = false;
        }
    }
    if (cn_lo <= 0.0 || cn_hi / cn_lo > kSolveSpread) pass = false;
    char buf[224];
    std::snprintf(buf, sizeof buf,
                  "%d/%d solves within %.0e (floor %d per size), %d refusals, "
                  "%d other failures; flops/(n log2^3 n) spread %.2f (limit %.1f)",
                  total_success, 3 * kSolveTrials, kSolveRelErr, kSolveSuccessFloor,
                  total_hrv, total_other, cn_lo > 0.0 ? cn_hi / cn_lo : -1.0,
                  kSolveSpread);
    report(6, "structured solve", pass, buf);
}

void criterion_properties() {
    cvhss::RngStream rng(kSeed);
    std::string failed;
    auto sub = [&](const char* name, bool ok) {
        if (!ok) {
            if (!failed.empty()) failed += ", ";
            failed += name;
        }
    };

    {
        // transform round trip
        const int n = 1024;
        cvec x(n);
        for (cplx& z : x) z = rng.gaussian_cplx();
        const cvec back =
            cvhss::fft(cvhss::fft(x, cvhss::FftDirection::forward),
                       cvhss::FftDirection::inverse);
        double err = 0.0;
        for (int i = 0; i < n; ++i) err = std::max(err, std::abs(back[i] - x[i]));
        sub("fft round trip", err <= 1e-12 * inf_norm(x));
    }
    {
        // the normalized transform is unitary: norms and inner products survive
        const int n = 256;
        cvec x(n), y(n);
        for (cplx& z : x) z = rng.gaussian_cplx();
        for (cplx& z : y) z = rng.gaussian_cplx();
        const double rt = std::sqrt(double(n));
        cvec fx = cvhss::fft(x, cvhss::FftDirection::forward);
        cvec fy = cvhss::fft(y, cvhss::FftDirection::forward);
        for (cplx& z : fx) z /= rt;
        for (cplx& z : fy) z /= rt;
        double nx = 0.0, nfx = 0.0;
        cplx ip = 0.0, fip = 0.0;
        for (int i = 0; i < n; ++i) {
            nx += std::norm(x[i]);
            nfx += std::norm(fx[i]);
            ip += std::conj(x[i]) * y[i];
            fip += std::conj(fx[i]) * fy[i];
        }
        sub("unitary transform",
            std::abs(nx - nfx) <= 1e-10 * nx && std::abs(ip - fip) <= 1e-10 * std::abs(ip));
    }
    {
        // fast convolution against the schoolbook sum
        cvec a(17), b(9);
        for (cplx& z : a) z = rng.gaussian_cplx();
        for (cplx& z : b) z = rng.gaussian_cplx();
        const cvhss::Polynomial prod =
            cvhss::poly_mul(cvhss::Polynomial(a), cvhss::Polynomial(b));
        cvec school(a.size() + b.size() - 1, cplx(0.0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) school[i + j] += a[i] * b[j];
        double err = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < school.size(); ++i) {
            err = std::max(err, std::abs(prod.coeffs[i] - school[i]));
            scale = std::max(scale, std::abs(school[i]));
        }
        sub("convolution vs schoolbook",
            prod.coeffs.size() == school.size() && err <= 1e-11 * scale);
    }
    {
        // subproduct tree: (x - 1)^64 concentrates 2^64 of coefficient mass
        cvec ones(64, cplx(1.0));
        const cvhss::Polynomial p = cvhss::subproduct_tree(ones).root();
        double mass = 0.0;
        for (const cplx& z : p.coeffs) mass += std::abs(z);
        sub("subproduct coefficient growth",
            std::abs(mass - 1.8446744073709552e19) <= 1e10 &&
                std::abs(std::abs(p.coeffs[32]) - 1.8326241409425905e18) <= 1e9);
    }
    {
        // shifting and scaling both knot families rescales the kernel by 1/a
        const int n = 32;
        cvec s(n);
        for (cplx& z : s)
            z = std::polar(rng.uniform(1.1, 2.0), rng.uniform(0.0, 2.0 * M_PI));
        const cvhss::CVMatrix c(s, cplx(1.0), n);
        const cplx a(1.7, -0.4), b0(0.3, 0.9);
        double err = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const cplx t = c.knot_t(j);
                const cplx lhs = 1.0 / ((a * s[i] + b0) - (a * t + b0));
                const cplx rhs = c.entry(i, j) / a;
                err = std::max(err, std::abs(lhs - rhs) / std::abs(rhs));
            }
        sub("shift scale covariance", err <= 1e-12);
    }
    {
        // degree <= 2 evaluates exactly through the public entry point
        const cvec coeffs{cplx(0.5, 1.0), cplx(-2.0, 0.0), cplx(0.0, 3.0)};
        cvec pts(40);
        for (cplx& z : pts)
            z = std::polar(rng.uniform(), rng.uniform(0.0, 2.0 * M_PI));
        const cvhss::PolyEvalResult r = cvhss::polyeval_fast(coeffs, pts);
        double err = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const cplx want = coeffs[0] + pts[i] * (coeffs[1] + pts[i] * coeffs[2]);
            err = std::max(err, std::abs(r.values[i] - want));
        }
        sub("quadratic exactness", err <= 1e-10);
    }
    {
        // interpolation undoes evaluation
        const int n = 256;
        const cvec pts = interlaced_circle(rng, n);
        cvec coeffs(n);
        for (cplx& z : coeffs) z = rng.gaussian_cplx();
        cvhss::FastOptions tight;
        tight.xi = 1e-10;
        const cvhss::PolyEvalResult ev = cvhss::polyeval_fast(coeffs, pts, tight);
        const cvhss::PolyInterpResult ip = cvhss::polyinterp_fast(pts, ev.values);
        double cerr = 0.0, cscale = 0.0;
        for (int j = 0; j < n; ++j) {
            cerr = std::max(cerr, std::abs(ip.poly.coeffs[j] - coeffs[j]));
            cscale = std::max(cscale, std::abs(coeffs[j]));
        }
        double verr = 0.0;
        for (int j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (std::size_t v = ip.poly.coeffs.size(); v-- > 0;)
                acc = acc * pts[j] + ip.poly.coeffs[v];
            verr = std::max(verr, std::abs(acc - ev.values[j]));
        }
        sub("interpolation inverts evaluation",
            cerr <= 1e-6 * cscale && verr <= 1e-6 * std::max(1.0, inf_norm(ev.values)));
    }

    report(7, "algebraic properties", failed.empty(),
           failed.empty() ? "7/7 subchecks green" : "failed: " + failed);
}

} // namespace

int main() {
    std::printf("acceptance run, seed %llu\n", static_cast<unsigned long long>(kSeed));
    std::fflush(stdout);
    criterion_rank_tables();
    criterion_generator_bound();
    criterion_eval_tables();
    criterion_remainder_tree();
    criterion_matvec_scaling();
    criterion_solve();
    criterion_properties();
    std::printf("%d of 7 criteria passed\n", 7 - g_failures);
    return g_failures;
}
