// cvhss: reference evaluators. Horner is the accuracy baseline; the
// remainder-tree evaluator is the classical fast method kept deliberately
// unstabilized, since its double-precision collapse at moderate degree is
// one of the behaviors the experiments document.

#ifndef CVHSS_BASELINES_HPP
#define CVHSS_BASELINES_HPP

#include <stdexcept>
#include <vector>

#include "cvhss/core.hpp"
#include "cvhss/poly.hpp"

namespace cvhss {

inline cvec horner_eval(const Polynomial& p, const cvec& s) {
    cvec v(s.size(), cplx(0.0));
    for (std::size_t i = 0; i < s.size(); ++i) {
        cplx acc = 0.0;
        for (std::size_t j = p.coeffs.size(); j-- > 0;) acc = acc * s[i] + p.coeffs[j];
        v[i] = acc;
    }
    return v;
}

// Fast multipoint evaluation by remainder tree: reduce p modulo the
// subproduct-tree nodes down to the linear leaves. Division is FFT based
// throughout. No scaling or reordering is applied, so coefficient growth in
// the subproducts feeds straight into the remainders; large degrees
// overflow or return garbage, which is the documented behavior.
inline cvec mb_eval(const Polynomial& p, const cvec& s) {
    if (s.empty()) return {};
    const SubproductTree tree = subproduct_tree(s);
    const int depth = int(tree.levels.size());

    // remainders walk the tree top down; level L has the node polynomials,
    // rem holds p reduced modulo each node of the current level
    std::vector<Polynomial> rem{poly_rem(p, tree.root())};
    for (int lev = depth - 2; lev >= 0; --lev) {
        const std::vector<Polynomial>& nodes = tree.levels[lev];
        std::vector<Polynomial> next(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i)
            next[i] = poly_rem(rem[i / 2], nodes[i]);
        rem = std::move(next);
    }
    cvec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        v[i] = rem[i].coeffs.empty() ? cplx(0.0) : rem[i].coeffs[0];
    return v;
}

// Explicit m x n Vandermonde matrix (s_i^j).
inline DenseMatrix dense_vandermonde(const cvec& s, int n) {
    if (n < 1) throw std::invalid_argument("dense_vandermonde: n must be >= 1");
    DenseMatrix v(s.size(), std::size_t(n));
    for (std::size_t i = 0; i < s.size(); ++i) {
        cplx pw = 1.0;
        for (int j = 0; j < n; ++j) { v(i, j) = pw; pw *= s[i]; }
    }
    return v;
}

// Monic polynomial with the given roots, via the subproduct tree.
inline Polynomial coeffs_from_roots(const cvec& s) {
    if (s.empty()) return Polynomial{{cplx(1.0)}};
    return subproduct_tree(s).root();
}

} // namespace cvhss

#endif
