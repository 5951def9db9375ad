// Polynomial evaluation, interpolation, and Cauchy products/solves through
// the structured pipeline, all checked against independent direct routes.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cvhss/problems.hpp"
#include "oracles.hpp"

using cvhss::cplx;
using cvhss::cvec;

namespace {

double inf_norm(const cvec& v) {
    double m = 0.0;
    for (const cplx& z : v) m = std::max(m, std::abs(z));
    return m;
}

cvec roots_of_unity(int n) {
    cvec t(n);
    for (int j = 0; j < n; ++j) t[j] = std::polar(1.0, 2.0 * M_PI * j / double(n));
    return t;
}

cvec interlaced_circle(cvhss::RngStream& rng, int n) {
    cvec s(n);
    for (int i = 0; i < n; ++i)
        s[i] = std::polar(1.0, 2.0 * M_PI * (i + 0.25 + 0.5 * rng.uniform()) / double(n));
    return s;
}

} // namespace

TEST_CASE("default sector count follows n over log n") {
    REQUIRE(cvhss::default_sector_count(32) == 16);
    REQUIRE(cvhss::default_sector_count(64) == 16);
    REQUIRE(cvhss::default_sector_count(1024) == 128);
    REQUIRE(cvhss::default_sector_count(4096) == 256);
    REQUIRE_THROWS_AS(cvhss::default_sector_count(16), std::invalid_argument);
}

TEST_CASE("degree at most two evaluates exactly") {
    cvhss::RngStream rng(91);
    const cvec coeffs{cplx(1.5, -0.5), cplx(0.0, 2.0), cplx(-3.0, 0.25)};
    cvec pts(40);
    for (cplx& z : pts) z = std::polar(rng.uniform(), rng.uniform(0.0, 2.0 * M_PI));
    const cvhss::PolyEvalResult r = cvhss::polyeval_fast(coeffs, pts);
    REQUIRE_FALSE(r.fast);   // tiny problems stay on the direct path
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const cplx want = coeffs[0] + pts[i] * (coeffs[1] + pts[i] * coeffs[2]);
        REQUIRE(std::abs(r.values[i] - want) < 1e-10);
    }
    // constant and linear polynomials as degenerate cases
    const cvhss::PolyEvalResult c0 = cvhss::polyeval_fast(cvec{cplx(4.0, 1.0)}, pts);
    for (const cplx& v : c0.values) REQUIRE(std::abs(v - cplx(4.0, 1.0)) < 1e-15);
}

TEST_CASE("structured evaluation matches horner on circle knots") {
    cvhss::RngStream rng(92);
    const int n = 512;
    cvec coeffs(n), pts(n);
    for (cplx& z : coeffs) z = rng.gaussian_cplx();
    for (cplx& z : pts) z = std::polar(1.0, rng.uniform(0.0, 2.0 * M_PI));
    cvhss::FastOptions opts;
    opts.xi = 1e-5;
    const cvhss::PolyEvalResult r = cvhss::polyeval_fast(coeffs, pts, opts);
    REQUIRE(r.fast);
    REQUIRE(r.xi <= 1e-5);
    REQUIRE(r.max_generator_length <= 20);
    REQUIRE(r.hss_flops > 0);

    cvec ref(n);
    for (int i = 0; i < n; ++i) ref[i] = oracle::horner(coeffs, pts[i]);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += std::abs(r.values[i] - ref[i]);
    REQUIRE(sum / n <= 1e-4);
    REQUIRE(oracle::max_gap(r.values, ref) <= 1e-2);
}

TEST_CASE("structured evaluation handles knots on the column grid angles") {
    // evaluation points equal to the plain roots of unity force the scan to
    // rotate the internal grid between them
    const int n = 64;
    cvhss::RngStream rng(93);
    const cvec pts = roots_of_unity(n);
    cvec coeffs(n);
    for (cplx& z : coeffs) z = rng.gaussian_cplx();
    const cvhss::PolyEvalResult r = cvhss::polyeval_fast(coeffs, pts);
    REQUIRE(r.fast);
    cvec ref(n);
    for (int i = 0; i < n; ++i) ref[i] = oracle::horner(coeffs, pts[i]);
    REQUIRE(oracle::max_gap(r.values, ref) <= 5e-3 * std::max(1.0, inf_norm(ref)));
}

TEST_CASE("forcing the dense path reproduces horner exactly") {
    cvhss::RngStream rng(94);
    const int n = 64;
    cvec coeffs(n), pts(8);
    for (cplx& z : coeffs) z = rng.gaussian_cplx();
    for (cplx& z : pts) z = std::polar(rng.uniform(0.5, 1.0), rng.uniform(0.0, 2.0 * M_PI));
    cvhss::FastOptions opts;
    opts.force_dense = true;
    const cvhss::PolyEvalResult r = cvhss::polyeval_fast(coeffs, pts, opts);
    REQUIRE_FALSE(r.fast);
    for (int i = 0; i < 8; ++i)
        REQUIRE(std::abs(r.values[i] - oracle::horner(coeffs, pts[i])) < 1e-12);
}

TEST_CASE("evaluation then interpolation returns the coefficients") {
    cvhss::RngStream rng(95);
    const int n = 256;
    const cvec pts = interlaced_circle(rng, n);
    cvec coeffs(n);
    for (cplx& z : coeffs) z = rng.gaussian_cplx();
    // tight evaluation tolerance so the coefficient comparison is not
    // dominated by amplification through the inverse Vandermonde
    cvhss::FastOptions tight;
    tight.xi = 1e-10;
    const cvhss::PolyEvalResult ev = cvhss::polyeval_fast(coeffs, pts, tight);
    const cvhss::PolyInterpResult ip = cvhss::polyinterp_fast(pts, ev.values);
    REQUIRE(ip.fast);
    REQUIRE(ip.residual <= 1e-7);
    double err = 0.0, scale = 0.0;
    for (int j = 0; j < n; ++j) {
        err = std::max(err, std::abs(ip.poly.coeffs[j] - coeffs[j]));
        scale = std::max(scale, std::abs(coeffs[j]));
    }
    REQUIRE(err <= 1e-6 * scale);

    // value round trip: the recovered polynomial reproduces the samples
    double vgap = 0.0;
    for (int j = 0; j < n; ++j)
        vgap = std::max(vgap, std::abs(oracle::horner(ip.poly.coeffs, pts[j]) -
                                       ev.values[j]));
    REQUIRE(vgap <= 1e-6 * std::max(1.0, inf_norm(ev.values)));
}

TEST_CASE("small interpolation runs through the dense solve") {
    cvhss::RngStream rng(96);
    const int n = 12;
    cvec pts(n);
    for (int j = 0; j < n; ++j) pts[j] = 1.1 * std::polar(1.0, 2.0 * M_PI * j / double(n));
    cvec coeffs(n);
    for (cplx& z : coeffs) z = rng.gaussian_cplx();
    cvec values(n);
    for (int j = 0; j < n; ++j) values[j] = oracle::horner(coeffs, pts[j]);
    const cvhss::PolyInterpResult ip = cvhss::polyinterp_fast(pts, values);
    REQUIRE_FALSE(ip.fast);
    REQUIRE(ip.residual <= 1e-9);
    double err = 0.0;
    for (int j = 0; j < n; ++j) err = std::max(err, std::abs(ip.poly.coeffs[j] - coeffs[j]));
    REQUIRE(err <= 1e-8 * inf_norm(coeffs));
}

TEST_CASE("interpolation validates its inputs") {
    REQUIRE_THROWS_AS(cvhss::polyinterp_fast(cvec{}, cvec{}), std::invalid_argument);
    REQUIRE_THROWS_AS(cvhss::polyinterp_fast(cvec{cplx(1.0)}, cvec{}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(cvhss::polyeval_fast(cvec{cplx(1.0)}, cvec{}),
                      std::invalid_argument);
}

TEST_CASE("cauchy product takes the structured path on grid columns") {
    cvhss::RngStream rng(97);
    const int n = 128;
    cvec s(n), x(n);
    for (cplx& z : s) z = std::polar(rng.uniform(0.95, 1.05), rng.uniform(0.0, 2.0 * M_PI));
    for (cplx& z : x) z = rng.gaussian_cplx();
    const cvec t = roots_of_unity(n);
    const cvhss::CauchyApplyResult r = cvhss::cauchy_matvec(s, t, x);
    REQUIRE(r.fast);
    const cvec ref = oracle::cauchy_apply(s, t, x);
    REQUIRE(oracle::max_gap(r.y, ref) <= double(n) * 1e-5 * inf_norm(x));
}

TEST_CASE("cauchy product falls back to the dense sum off the grid") {
    cvhss::RngStream rng(98);
    const int n = 40;
    cvec s(n), t(n), x(n);
    for (cplx& z : s) z = std::polar(rng.uniform(1.2, 1.8), rng.uniform(0.0, 2.0 * M_PI));
    for (cplx& z : t) z = std::polar(rng.uniform(0.2, 0.8), rng.uniform(0.0, 2.0 * M_PI));
    for (cplx& z : x) z = rng.gaussian_cplx();

    const std::uint64_t before = cvhss::dense_ops();
    const cvhss::CauchyApplyResult r = cvhss::cauchy_matvec(s, t, x);
    REQUIRE_FALSE(r.fast);
    REQUIRE(cvhss::dense_ops() - before == std::uint64_t(n) * n);
    REQUIRE(oracle::max_gap(r.y, oracle::cauchy_apply(s, t, x)) <= 1e-12);

    cvhss::FastOptions strict;
    strict.dense_fallback = false;
    REQUIRE_THROWS_AS(cvhss::cauchy_matvec(s, t, x, strict), cvhss::NotSeparated);
}

TEST_CASE("cauchy solve round trips a manufactured solution") {
    cvhss::RngStream rng(99);
    const int n = 256;
    const cvec s = interlaced_circle(rng, n);
    const cvec t = roots_of_unity(n);
    cvec xstar(n);
    for (cplx& z : xstar) z = rng.gaussian_cplx();
    const cvec b = oracle::cauchy_apply(s, t, xstar);
    const cvhss::CauchySolveResult r = cvhss::cauchy_solve(s, t, b);
    REQUIRE(r.fast);
    REQUIRE(r.residual <= 1e-7);
    double err = 0.0;
    for (int j = 0; j < n; ++j) err = std::max(err, std::abs(r.x[j] - xstar[j]));
    REQUIRE(err <= 1e-6 * inf_norm(xstar));
}

TEST_CASE("small cauchy systems are solved densely") {
    cvhss::RngStream rng(100);
    const int n = 12;
    cvec s(n);
    for (int j = 0; j < n; ++j)
        s[j] = 1.5 * std::polar(1.0, 2.0 * M_PI * (j + 0.5) / double(n));
    const cvec t = roots_of_unity(n);
    cvec xstar(n);
    for (cplx& z : xstar) z = rng.gaussian_cplx();
    const cvec b = oracle::cauchy_apply(s, t, xstar);
    const cvhss::CauchySolveResult r = cvhss::cauchy_solve(s, t, b);
    REQUIRE_FALSE(r.fast);
    double err = 0.0;
    for (int j = 0; j < n; ++j) err = std::max(err, std::abs(r.x[j] - xstar[j]));
    REQUIRE(err <= 1e-8 * inf_norm(xstar));
    REQUIRE(r.residual <= 1e-10);

    REQUIRE_THROWS_AS(cvhss::cauchy_solve(s, roots_of_unity(8), b),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(cvhss::cauchy_solve(cvec{cplx(0.5)}, cvec{cplx(0.5)},
                                          cvec{cplx(1.0)}),
                      cvhss::SingularEntry);
}

TEST_CASE("transposed vandermonde product matches the direct sum") {
    cvhss::RngStream rng(101);
    const int m = 100, n = 64;
    cvec s(m), x(m);
    for (cplx& z : s) z = std::polar(rng.uniform(0.2, 0.95), rng.uniform(0.0, 2.0 * M_PI));
    for (cplx& z : x) z = rng.gaussian_cplx();
    const cvec fast = cvhss::vandermonde_transpose_matvec(s, x, n);
    const cvec ref = oracle::vandermonde_tapply(s, x, n);
    REQUIRE(fast.size() == std::size_t(n));
    REQUIRE(oracle::max_gap(fast, ref) <= 2.0 * double(n) * 1e-5 * inf_norm(x));

    // below the fast-path cutoff the sum is computed directly
    const cvec small = cvhss::vandermonde_transpose_matvec(s, x, 16);
    REQUIRE(oracle::max_gap(small, oracle::vandermonde_tapply(s, x, 16)) <= 1e-10);
}

TEST_CASE("vandermonde rows on the grid reduce to the transform") {
    // V at the n-th roots of unity is the unnormalized forward transform
    cvhss::RngStream rng(102);
    const int n = 32;
    const cvec s = roots_of_unity(n);
    cvec x(n);
    for (cplx& z : x) z = rng.gaussian_cplx();
    const cvec direct = oracle::vandermonde_apply(s, x);
    const cvec viafft = cvhss::fft(x, cvhss::FftDirection::forward);
    REQUIRE(oracle::max_gap(direct, viafft) <= 1e-10);
}
