// cvhss: dense polynomial arithmetic in the coefficient basis.
//
// Coefficients are stored ascending (coeffs[j] multiplies x^j). Products and
// remainders run through the FFT; the remainder uses Newton iteration for the
// reciprocal of the reversed divisor with a fixed iteration count, so its
// numerical behavior is deliberately plain: no scaling, no stabilization.

#ifndef CVHSS_POLY_HPP
#define CVHSS_POLY_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cvhss/core.hpp"
#include "cvhss/fft.hpp"

namespace cvhss {

struct Polynomial {
    cvec coeffs;

    Polynomial() = default;
    explicit Polynomial(cvec c) : coeffs(std::move(c)) {}

    // Degree of the stored representation; -1 for the zero polynomial.
    std::ptrdiff_t degree() const { return std::ptrdiff_t(coeffs.size()) - 1; }
    bool is_zero() const {
        for (const cplx& c : coeffs)
            if (c != cplx(0.0)) return false;
        return true;
    }

    // Strips exactly-zero leading coefficients; raw storage may carry them.
    void normalize() {
        while (!coeffs.empty() && coeffs.back() == cplx(0.0)) coeffs.pop_back();
    }
};

inline Polynomial poly_mul(const Polynomial& p, const Polynomial& q) {
    if (p.coeffs.empty() || q.coeffs.empty()) return Polynomial{};
    const std::size_t out_len = p.coeffs.size() + q.coeffs.size() - 1;
    const std::size_t n = next_pow2(out_len);
    cvec a = p.coeffs, b = q.coeffs;
    a.resize(n);
    b.resize(n);
    a = fft(std::move(a), FftDirection::forward);
    b = fft(std::move(b), FftDirection::forward);
    for (std::size_t i = 0; i < n; ++i) a[i] *= b[i];
    a = fft(std::move(a), FftDirection::inverse);
    a.resize(out_len);
    return Polynomial{std::move(a)};
}

inline Polynomial poly_derivative(const Polynomial& p) {
    if (p.coeffs.size() <= 1) return Polynomial{};
    cvec d(p.coeffs.size() - 1);
    for (std::size_t j = 1; j < p.coeffs.size(); ++j)
        d[j - 1] = double(j) * p.coeffs[j];
    return Polynomial{std::move(d)};
}

namespace detail {

inline cvec reverse_coeffs(const cvec& c) { return cvec(c.rbegin(), c.rend()); }

inline cvec truncate(cvec c, std::size_t len) {
    c.resize(len);
    return c;
}

// Reciprocal of f modulo x^len by Newton doubling, f(0) != 0. Runs the full
// ceil(log2(len)) doubling schedule regardless of intermediate accuracy.
inline cvec series_reciprocal(const cvec& f, std::size_t len) {
    cvec inv{1.0 / f[0]};
    std::size_t t = 1;
    while (t < len) {
        t = std::min(t * 2, len);
        Polynomial fi{truncate(f, t)};
        Polynomial step = poly_mul(Polynomial{inv}, fi);
        step.coeffs = truncate(std::move(step.coeffs), t);
        for (cplx& z : step.coeffs) z = -z;
        step.coeffs[0] += 2.0;
        Polynomial next = poly_mul(Polynomial{inv}, step);
        inv = truncate(std::move(next.coeffs), t);
    }
    return inv;
}

} // namespace detail

struct PolyDivMod {
    Polynomial quotient;
    Polynomial remainder;
};

inline PolyDivMod poly_divmod(const Polynomial& p, const Polynomial& d) {
    Polynomial dn = d;
    dn.normalize();
    if (dn.coeffs.empty()) throw std::invalid_argument("poly_divmod: zero divisor");
    Polynomial pn = p;
    pn.normalize();
    const std::ptrdiff_t np = pn.degree(), nd = dn.degree();
    if (np < nd) return {Polynomial{}, pn};
    if (nd == 0) {
        cvec q = pn.coeffs;
        for (cplx& z : q) z /= dn.coeffs[0];
        return {Polynomial{std::move(q)}, Polynomial{}};
    }
    const std::size_t qlen = std::size_t(np - nd) + 1;
    cvec rp = detail::reverse_coeffs(pn.coeffs);
    cvec rd = detail::reverse_coeffs(dn.coeffs);
    cvec inv = detail::series_reciprocal(rd, qlen);
    Polynomial rq = poly_mul(Polynomial{detail::truncate(rp, qlen)}, Polynomial{inv});
    rq.coeffs = detail::truncate(std::move(rq.coeffs), qlen);
    cvec q = detail::reverse_coeffs(rq.coeffs);
    Polynomial qd = poly_mul(Polynomial{q}, dn);
    cvec r(std::size_t(nd), 0.0);
    for (std::size_t j = 0; j < r.size(); ++j) {
        cplx pj = (j < pn.coeffs.size()) ? pn.coeffs[j] : cplx(0.0);
        r[j] = pj - qd.coeffs[j];
    }
    return {Polynomial{std::move(q)}, Polynomial{std::move(r)}};
}

inline Polynomial poly_rem(const Polynomial& p, const Polynomial& d) {
    return poly_divmod(p, d).remainder;
}

// Balanced product tree over the linear factors (x - s_i). levels[0] holds
// the leaves in input order; an odd node is carried to the next level
// unchanged, so every level is a factorization of the full product.
struct SubproductTree {
    std::vector<std::vector<Polynomial>> levels;
    const Polynomial& root() const { return levels.back().front(); }
};

inline SubproductTree subproduct_tree(const cvec& roots) {
    if (roots.empty()) throw std::invalid_argument("subproduct_tree: no roots");
    SubproductTree tree;
    std::vector<Polynomial> cur;
    cur.reserve(roots.size());
    for (const cplx& s : roots) cur.push_back(Polynomial{{-s, 1.0}});
    tree.levels.push_back(cur);
    while (cur.size() > 1) {
        std::vector<Polynomial> up;
        up.reserve((cur.size() + 1) / 2);
        for (std::size_t t = 0; t + 1 < cur.size(); t += 2)
            up.push_back(poly_mul(cur[t], cur[t + 1]));
        if (cur.size() % 2) up.push_back(cur.back());
        tree.levels.push_back(up);
        cur = tree.levels.back();
    }
    return tree;
}

} // namespace cvhss

#endif
