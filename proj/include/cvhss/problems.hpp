// cvhss: polynomial and Cauchy problems through the unit-circle pipeline.
//
// A Vandermonde matrix on knots s factors through a Cauchy matrix whose
// column knots are the scaled n-th roots of unity f w^j:
//
//   V_s = (f^(1-n)/sqrt(n)) diag(s_i^n - f^n) C diag(w^j) Omega diag(f^j)
//
// with Omega the unitary DFT and w = exp(2 pi i / n). Multipoint evaluation,
// interpolation, and the transposed apply all reduce to diagonal scalings,
// one FFT, and one structured product or solve with C. The rotation f is
// placed by choose_f so the outer diagonal stays away from zero.
//
// Large problems run through the extended HSS form of C; small ones (or
// column knots without the roots-of-unity structure) fall back to direct
// dense arithmetic.

#ifndef CVHSS_PROBLEMS_HPP
#define CVHSS_PROBLEMS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cvhss/cauchy.hpp"
#include "cvhss/core.hpp"
#include "cvhss/dense.hpp"
#include "cvhss/errors.hpp"
#include "cvhss/fft.hpp"
#include "cvhss/hss.hpp"
#include "cvhss/hss_solve.hpp"
#include "cvhss/poly.hpp"

namespace cvhss {

// Smallest problem handed to the structured path; below this the dense
// route is both faster and simpler.
inline constexpr int kFastPathMinSize = 32;

// Sector count for an n-column build: n / log2(n) rounded to a power of
// two, at least 16. Keeps per-sector column counts near log2(n).
inline int default_sector_count(int n) {
    if (n < 32) throw std::invalid_argument("default_sector_count: n must be >= 32");
    const double ideal = double(n) / std::log2(double(n));
    int k = 1 << int(std::lround(std::log2(ideal)));
    k = std::max(k, 16);
    k = std::min(k, n / 2);
    return k;
}

struct FastOptions {
    int k = 0;              // sector count; 0 picks default_sector_count
    double xi = 0.0;        // certified tolerance; 0 picks the path default
    int rho = 0;            // > 0: fixed generator length instead of xi
    bool force_dense = false;
    bool dense_fallback = true;   // unstructured column knots: dense instead of throwing
    int nc = 5;             // candidate rotations per free slot in choose_f
};

namespace detail {

inline constexpr double kEvalXiDefault = 1e-5;
inline constexpr double kSolveXiDefault = 1e-13;

inline HssTarget target_from(const FastOptions& o, double xi_default) {
    if (o.rho > 0) return HssTarget::fixed_rho(o.rho);
    return HssTarget::fixed_xi(o.xi > 0.0 ? o.xi : xi_default);
}

inline int sector_count_from(const FastOptions& o, int n) {
    return o.k > 0 ? o.k : default_sector_count(n);
}

inline cplx horner_at(const cvec& coeffs, cplx x) {
    cplx acc = 0.0;
    for (std::size_t j = coeffs.size(); j-- > 0;) acc = acc * x + coeffs[j];
    return acc;
}

// diag factors of the Vandermonde reduction for row knots s
struct VdmDiagonals {
    cvec outer;    // (f^(1-n)/sqrt(n)) (s_i^n - f^n)
    cvec outer_inv_scaled;  // f^(n-1) / (s_i^n - f^n), used by interpolation
};

inline VdmDiagonals vdm_diagonals(const cvec& s, cplx f, int n) {
    VdmDiagonals d;
    const double phi = std::arg(f);
    const cplx fn = std::polar(1.0, phi * n);
    const cplx f_pre = std::polar(1.0, -phi * (n - 1)) / std::sqrt(double(n));
    const cplx f_post = std::polar(1.0, phi * (n - 1));
    d.outer.resize(s.size());
    d.outer_inv_scaled.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const cplx gap = ipow(s[i], n) - fn;
        d.outer[i] = f_pre * gap;
        d.outer_inv_scaled[i] = f_post / gap;   // gap != 0 by choose_f
    }
    return d;
}

// c = diag(w^j) Omega diag(f^j) p,  p padded to length n
inline cvec inner_transform(const cvec& coeffs, cplx f, int n) {
    const double phi = std::arg(f);
    cvec a(n, cplx(0.0));
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        a[j] = std::polar(1.0, phi * double(j)) * coeffs[j];
    a = fft(std::move(a), FftDirection::forward);
    const double rn = 1.0 / std::sqrt(double(n));
    for (int j = 0; j < n; ++j)
        a[j] *= rn * std::polar(1.0, 2.0 * M_PI * double(j) / double(n));
    return a;
}

// Back transform of the interpolation pipeline: p_j = n f^-j ifft(w^-j u)_j.
// Carries an extra sqrt(n) relative to the plain inverse of inner_transform,
// matching the sqrt(n) the outer diagonal absorbs on the forward side.
inline cvec inner_transform_inverse(cvec u, cplx f) {
    const int n = int(u.size());
    const double phi = std::arg(f);
    for (int j = 0; j < n; ++j)
        u[j] *= std::polar(1.0, -2.0 * M_PI * double(j) / double(n));
    u = fft(std::move(u), FftDirection::inverse);
    for (int j = 0; j < n; ++j)
        u[j] *= double(n) * std::polar(1.0, -phi * double(j));
    return u;
}

// Column knots are f w^j for some unimodular f exactly when every ratio
// t_j / t_0 matches w^j; tolerance covers rounding in the caller's data.
inline std::optional<cplx> roots_of_unity_rotation(const cvec& t) {
    const int n = int(t.size());
    if (n < 1) return std::nullopt;
    const cplx f = t[0];
    if (std::abs(std::abs(f) - 1.0) > 1e-12) return std::nullopt;
    for (int j = 1; j < n; ++j) {
        const cplx w = std::polar(1.0, 2.0 * M_PI * double(j) / double(n));
        if (std::abs(t[j] / f - w) > 1e-12) return std::nullopt;
    }
    return f;
}

} // namespace detail

struct PolyEvalResult {
    cvec values;
    bool fast = false;       // structured path taken
    double xi = 0.0;         // certified entrywise tolerance of the build
    int max_generator_length = 0;
    std::uint64_t hss_flops = 0;   // structured-product work, multiply-adds
};

// Evaluates the polynomial with the given coefficients (constant term
// first) at every point. Points may lie anywhere in the plane except the
// scaled unit roots chosen internally; a collision throws SingularEntry.
inline PolyEvalResult polyeval_fast(const cvec& coeffs, const cvec& points,
                                    const FastOptions& opts = {}) {
    if (points.empty()) throw std::invalid_argument("polyeval_fast: no points");
    require_finite(points, "polyeval_fast points");
    require_finite(coeffs, "polyeval_fast coefficients");

    PolyEvalResult out;
    std::size_t len = coeffs.size();
    while (len > 0 && coeffs[len - 1] == cplx(0.0)) --len;
    const int n = int(next_pow2(std::max<std::size_t>(len, 2)));

    if (n < kFastPathMinSize || opts.force_dense) {
        out.values.resize(points.size());
        for (std::size_t i = 0; i < points.size(); ++i)
            out.values[i] = detail::horner_at(coeffs, points[i]);
        return out;
    }

    const ChooseFResult cf = choose_f(points, n, opts.nc);
    const CVMatrix c(points, cf.f, n);
    const ExtendedHssMatrix h = build_extended_hss(
        c, detail::sector_count_from(opts, n),
        detail::target_from(opts, detail::kEvalXiDefault));

    cvec inner = detail::inner_transform(cvec(coeffs.begin(), coeffs.begin() + len),
                                         cf.f, n);
    cvec e = h.matvec(inner);
    const detail::VdmDiagonals diag = detail::vdm_diagonals(points, cf.f, n);
    out.values.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        out.values[i] = diag.outer[i] * e[i];
    out.fast = true;
    out.xi = h.xi();
    out.max_generator_length = h.max_generator_length();
    out.hss_flops = flops(h);
    return out;
}

struct PolyInterpResult {
    Polynomial poly;
    bool fast = false;
    double xi = 0.0;
    int refinements = 0;
    double residual = 0.0;   // max-norm of V p - v over max-norm of v
};

// Recovers the degree < n polynomial taking the given values at n distinct
// points. The fast path needs a power-of-two point count; other sizes run
// through a dense Vandermonde solve.
inline PolyInterpResult polyinterp_fast(const cvec& points, const cvec& values,
                                        const FastOptions& opts = {}) {
    const int n = int(points.size());
    if (n < 1) throw std::invalid_argument("polyinterp_fast: no points");
    if (values.size() != points.size())
        throw std::invalid_argument("polyinterp_fast: length mismatch");
    require_finite(points, "polyinterp_fast points");
    require_finite(values, "polyinterp_fast values");

    PolyInterpResult out;
    if (n < kFastPathMinSize || !is_pow2(std::size_t(n)) || opts.force_dense) {
        DenseMatrix v(n, n);
        for (int i = 0; i < n; ++i) {
            cplx p = 1.0;
            for (int j = 0; j < n; ++j) { v(i, j) = p; p *= points[i]; }
        }
        DenseSolveResult sol = dense_solve(v, values);
        out.poly = Polynomial{std::move(sol.x)};
        cvec check(n);
        double rnorm = 0.0, vnorm = 0.0;
        for (int i = 0; i < n; ++i) {
            rnorm = std::max(rnorm,
                             std::abs(detail::horner_at(out.poly.coeffs, points[i]) -
                                      values[i]));
            vnorm = std::max(vnorm, std::abs(values[i]));
        }
        out.residual = vnorm > 0.0 ? rnorm / vnorm : rnorm;
        return out;
    }

    const ChooseFResult cf = choose_f(points, n, opts.nc);
    const CVMatrix c(points, cf.f, n);
    const ExtendedHssMatrix h = build_extended_hss(
        c, detail::sector_count_from(opts, n),
        detail::target_from(opts, detail::kSolveXiDefault));
    const detail::VdmDiagonals diag = detail::vdm_diagonals(points, cf.f, n);

    cvec rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = diag.outer_inv_scaled[i] * values[i];
    HssSolveResult sol = hss_solve(h, rhs);
    out.poly = Polynomial{detail::inner_transform_inverse(std::move(sol.x), cf.f)};
    out.poly.normalize();
    out.fast = true;
    out.xi = h.xi();
    out.refinements = sol.refinements;

    // certify by evaluating back through the same structure
    cvec inner = detail::inner_transform(out.poly.coeffs, cf.f, n);
    cvec e = h.matvec(inner);
    double rnorm = 0.0, vnorm = 0.0;
    for (int i = 0; i < n; ++i) {
        rnorm = std::max(rnorm, std::abs(diag.outer[i] * e[i] - values[i]));
        vnorm = std::max(vnorm, std::abs(values[i]));
    }
    out.residual = vnorm > 0.0 ? rnorm / vnorm : rnorm;
    return out;
}

struct CauchyApplyResult {
    cvec y;
    bool fast = false;
    double xi = 0.0;
};

// y_i = sum_j x_j / (s_i - t_j). The structured path engages when the
// column knots t are scaled n-th roots of unity in order; otherwise the
// product is computed densely (or rejected if dense_fallback is off).
inline CauchyApplyResult cauchy_matvec(const cvec& s, const cvec& t, const cvec& x,
                                       const FastOptions& opts = {}) {
    if (s.empty() || t.empty()) throw std::invalid_argument("cauchy_matvec: empty knots");
    if (x.size() != t.size()) throw std::invalid_argument("cauchy_matvec: length mismatch");
    require_finite(s, "cauchy_matvec row knots");
    require_finite(t, "cauchy_matvec column knots");
    require_finite(x, "cauchy_matvec input");

    CauchyApplyResult out;
    const std::optional<cplx> f = detail::roots_of_unity_rotation(t);
    const int n = int(t.size());
    if (f && n >= kFastPathMinSize && !opts.force_dense) {
        const CVMatrix c(s, *f, n);
        const ExtendedHssMatrix h = build_extended_hss(
            c, detail::sector_count_from(opts, n),
            detail::target_from(opts, detail::kEvalXiDefault));
        out.y = h.matvec(x);
        out.fast = true;
        out.xi = h.xi();
        return out;
    }
    if (!f && !opts.dense_fallback)
        throw NotSeparated(
            "cauchy_matvec: column knots are not scaled roots of unity and the "
            "dense fallback is disabled");
    out.y.assign(s.size(), cplx(0.0));
    for (std::size_t i = 0; i < s.size(); ++i) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < t.size(); ++j) {
            const cplx d = s[i] - t[j];
            if (d == cplx(0.0))
                throw SingularEntry("cauchy_matvec: coinciding knots");
            acc += x[j] / d;
        }
        out.y[i] = acc;
    }
    dense_op_counter().fetch_add(std::uint64_t(s.size()) * t.size(),
                                 std::memory_order_relaxed);
    return out;
}

struct CauchySolveResult {
    cvec x;
    bool fast = false;
    double xi = 0.0;
    int refinements = 0;
    double residual = 0.0;
};

// Solves C x = b on square Cauchy matrices. Structured column knots go
// through the hierarchical solver; anything else is solved densely.
inline CauchySolveResult cauchy_solve(const cvec& s, const cvec& t, const cvec& b,
                                      const FastOptions& opts = {}) {
    if (s.size() != t.size())
        throw std::invalid_argument("cauchy_solve: matrix must be square");
    if (b.size() != s.size()) throw std::invalid_argument("cauchy_solve: length mismatch");
    if (s.empty()) throw std::invalid_argument("cauchy_solve: empty system");
    require_finite(s, "cauchy_solve row knots");
    require_finite(t, "cauchy_solve column knots");
    require_finite(b, "cauchy_solve rhs");

    CauchySolveResult out;
    const std::optional<cplx> f = detail::roots_of_unity_rotation(t);
    const int n = int(t.size());
    if (f && n >= kFastPathMinSize && !opts.force_dense) {
        const CVMatrix c(s, *f, n);
        const ExtendedHssMatrix h = build_extended_hss(
            c, detail::sector_count_from(opts, n),
            detail::target_from(opts, detail::kSolveXiDefault));
        HssSolveResult sol = hss_solve(h, b);
        out.x = std::move(sol.x);
        out.fast = true;
        out.xi = h.xi();
        out.refinements = sol.refinements;
        out.residual = sol.residual;
        return out;
    }
    if (!f && !opts.dense_fallback)
        throw NotSeparated(
            "cauchy_solve: column knots are not scaled roots of unity and the "
            "dense fallback is disabled");
    DenseMatrix c(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cplx d = s[i] - t[j];
            if (d == cplx(0.0)) throw SingularEntry("cauchy_solve: coinciding knots");
            c(i, j) = 1.0 / d;
        }
    DenseSolveResult sol = dense_solve(c, b);
    out.x = std::move(sol.x);
    double rnorm = 0.0, bnorm = 0.0;
    for (int i = 0; i < n; ++i) {
        cplx acc = 0.0;
        for (int j = 0; j < n; ++j) acc += c(i, j) * out.x[j];
        rnorm = std::max(rnorm, std::abs(acc - b[i]));
        bnorm = std::max(bnorm, std::abs(b[i]));
    }
    out.residual = bnorm > 0.0 ? rnorm / bnorm : rnorm;
    return out;
}

// y = V_s^T x for the m x n Vandermonde matrix on row knots s:
// y_j = sum_i s_i^j x_i, j < n. Runs through the transposed structured
// product when n is large enough.
inline cvec vandermonde_transpose_matvec(const cvec& s, const cvec& x, int n,
                                         const FastOptions& opts = {}) {
    if (n < 1) throw std::invalid_argument("vandermonde_transpose_matvec: n must be >= 1");
    if (s.size() != x.size())
        throw std::invalid_argument("vandermonde_transpose_matvec: length mismatch");
    if (s.empty()) throw std::invalid_argument("vandermonde_transpose_matvec: no knots");
    require_finite(s, "vandermonde_transpose_matvec knots");
    require_finite(x, "vandermonde_transpose_matvec input");

    if (n < kFastPathMinSize || !is_pow2(std::size_t(n)) || opts.force_dense) {
        cvec y(n, cplx(0.0));
        for (std::size_t i = 0; i < s.size(); ++i) {
            cplx p = x[i];
            for (int j = 0; j < n; ++j) { y[j] += p; p *= s[i]; }
        }
        return y;
    }

    const ChooseFResult cf = choose_f(s, n, opts.nc);
    const CVMatrix c(s, cf.f, n);
    const ExtendedHssMatrix h = build_extended_hss(
        c, detail::sector_count_from(opts, n),
        detail::target_from(opts, detail::kEvalXiDefault));
    const detail::VdmDiagonals diag = detail::vdm_diagonals(s, cf.f, n);

    cvec a(s.size());
    const double rn = std::sqrt(double(n));
    for (std::size_t i = 0; i < s.size(); ++i) a[i] = diag.outer[i] * x[i];
    cvec b = h.tmatvec(a);
    // y = diag(f^j) Omega diag(w^j) b, Omega applied as fft / sqrt(n)
    const double phi = std::arg(cf.f);
    for (int j = 0; j < n; ++j)
        b[j] *= std::polar(1.0, 2.0 * M_PI * double(j) / double(n));
    b = fft(std::move(b), FftDirection::forward);
    for (int j = 0; j < n; ++j)
        b[j] *= std::polar(1.0, phi * double(j)) / rn;
    return b;
}

} // namespace cvhss

#endif
