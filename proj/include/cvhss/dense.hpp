// cvhss: dense solve and rank-revealing factorization.

#ifndef CVHSS_DENSE_HPP
#define CVHSS_DENSE_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "cvhss/core.hpp"
#include "cvhss/detail/lapack.hpp"
#include "cvhss/errors.hpp"

namespace cvhss {

struct DenseSolveResult {
    cvec x;
    double rcond = 0.0;   // reciprocal condition estimate (1-norm family)
};

// LU with partial pivoting. Systems singular to working precision are
// rejected rather than producing an uncertified x.
inline DenseSolveResult dense_solve(const DenseMatrix& a, const cvec& b) {
    if (a.rows() != a.cols() || b.size() != a.rows())
        throw std::invalid_argument("dense_solve: shape mismatch");
    const int n = int(a.rows());
    if (n == 0) return {};
    // The column-major view of the row-major buffer is A^T; solve with 'T'.
    detail::CMat m(n, n);
    std::copy(a.data(), a.data() + std::size_t(n) * n, m.a.begin());
    detail::LuFactors f = detail::lu_factor(std::move(m));
    if (f.singular || f.rcond < 2.3e-16)
        throw SingularMatrix("dense_solve: singular to working precision");
    detail::CMat rhs(n, 1);
    std::copy(b.begin(), b.end(), rhs.a.begin());
    detail::lu_solve_inplace(f, rhs, 'T');
    return {std::move(rhs.a), f.rcond};
}

inline std::vector<double> singular_values(const DenseMatrix& a) {
    return detail::sv_values(a);
}

enum class TolMode { absolute, relative };

struct RankFactors {
    DenseMatrix f;       // m x r
    DenseMatrix g;       // n x r; A ~= f * g^T (plain transpose)
    int rank = 0;
    double discarded = 0.0;   // first singular value dropped (0 if none)
};

// Counts sigma above the tolerance and returns the matching truncated SVD
// factors. `absolute` compares sigma to tol directly; `relative` scales tol
// by sigma_max. A noise floor of eps * max(m, n) * sigma_max keeps tol = 0
// meaning "exact rank" on floating-point input.
inline RankFactors rank_factor(const DenseMatrix& a, double tol,
                               TolMode mode = TolMode::absolute) {
    if (tol < 0.0) throw std::invalid_argument("rank_factor: negative tolerance");
    RankFactors out;
    if (a.empty()) return out;
    detail::ThinSvd svd = detail::sv_thin(a);
    const double smax = svd.s.empty() ? 0.0 : svd.s.front();
    double thr = (mode == TolMode::relative) ? tol * smax : tol;
    thr = std::max(thr, 2.22e-16 * double(std::max(a.rows(), a.cols())) * smax);
    int r = 0;
    while (r < int(svd.s.size()) && svd.s[r] > thr) ++r;
    out.rank = r;
    out.discarded = (r < int(svd.s.size())) ? svd.s[r] : 0.0;
    out.f = DenseMatrix(a.rows(), r);
    out.g = DenseMatrix(a.cols(), r);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (int t = 0; t < r; ++t) out.f(i, t) = svd.u(i, t) * svd.s[t];
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (int t = 0; t < r; ++t) out.g(j, t) = svd.v(j, t);
    return out;
}

// Small helpers used by tests and the factored-kernel plumbing.
inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            cplx aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

// a * b^T with a plain (unconjugated) transpose.
inline DenseMatrix matmul_bt(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("matmul_bt: shape mismatch");
    DenseMatrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.rows(); ++j) {
            cplx acc = 0.0;
            for (std::size_t t = 0; t < a.cols(); ++t) acc += a(i, t) * b(j, t);
            c(i, j) = acc;
        }
    return c;
}

// Spectrum of f * g^T without forming the product: LQ-compress both factors
// and take the singular values of the small core L_f^T L_g.
inline std::vector<double> product_singular_values(const DenseMatrix& f,
                                                   const DenseMatrix& g) {
    if (f.cols() != g.cols())
        throw std::invalid_argument("product_singular_values: shape mismatch");
    if (f.empty() || g.empty()) return {};
    const std::size_t r = f.cols();
    if (f.rows() < r || g.rows() < r) {
        // Factors wider than tall: fall back to the dense product.
        return detail::sv_values(matmul_bt(f, g));
    }
    DenseMatrix lf = detail::thin_lq_lower(f);
    DenseMatrix lg = detail::thin_lq_lower(g);
    DenseMatrix core(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            cplx acc = 0.0;
            for (std::size_t t = i; t < r; ++t) acc += lf(t, i) * lg(t, j);
            core(i, j) = acc;
        }
    return detail::sv_values(core);
}

} // namespace cvhss

#endif
