// cvhss: thin LAPACKE wrappers (column-major at the boundary).
//
// Row-major matrices are handed to LAPACK through their column-major view,
// which is the transpose; the call sites below account for that explicitly.

#ifndef CVHSS_DETAIL_LAPACK_HPP
#define CVHSS_DETAIL_LAPACK_HPP

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <cstddef>
#include <vector>

#include "cvhss/core.hpp"

namespace cvhss::detail {

// Column-major scratch matrix used by the factor-based kernels.
struct CMat {
    int rows = 0, cols = 0;
    cvec a;
    CMat() = default;
    CMat(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c) {}
    cplx& at(int i, int j) { return a[std::size_t(j) * rows + i]; }
    const cplx& at(int i, int j) const { return a[std::size_t(j) * rows + i]; }
};

// Singular values only. Works on a scratch copy; the column-major view of a
// row-major matrix is its transpose, which has the same spectrum.
inline std::vector<double> sv_values(const DenseMatrix& m) {
    if (m.empty()) return {};
    int r = int(m.cols());           // rows of the column-major view
    int c = int(m.rows());
    cvec buf(m.data(), m.data() + m.rows() * m.cols());
    std::vector<double> s(std::min(r, c));
    int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', r, c, buf.data(), r, s.data(),
                              nullptr, 1, nullptr, 1);
    if (info != 0)
        throw std::runtime_error("zgesdd (values) failed to converge");
    return s;
}

struct ThinSvd {
    std::vector<double> s;
    DenseMatrix u;   // m x q, orthonormal columns (q = min(m, n))
    DenseMatrix v;   // n x q with A = u * diag(s) * v^T (plain transpose)
};

// Full thin SVD of a row-major matrix, phrased so that A = U S V^T with an
// unconjugated transpose; V here equals the conjugate of the usual right
// factor, which is the convention the low-rank blocks use.
inline ThinSvd sv_thin(const DenseMatrix& m) {
    int mr = int(m.rows()), mc = int(m.cols());
    int q = std::min(mr, mc);
    ThinSvd out;
    if (m.empty()) return out;
    // Column-major view is B = A^T with shape (mc, mr): B = Ub S VTb.
    cvec buf(m.data(), m.data() + m.rows() * m.cols());
    out.s.resize(q);
    cvec ub(std::size_t(mc) * q), vtb(std::size_t(q) * mr);
    int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', mc, mr, buf.data(), mc,
                              out.s.data(), ub.data(), mc, vtb.data(), q);
    if (info != 0)
        throw std::runtime_error("zgesdd (thin) failed to converge");
    // A = (VTb)^T S (Ub)^T, so U = VTb^T and V = Ub, no conjugation.
    out.u = DenseMatrix(m.rows(), q);
    for (int i = 0; i < mr; ++i)
        for (int t = 0; t < q; ++t) out.u(i, t) = vtb[std::size_t(i) * q + t];
    out.v = DenseMatrix(m.cols(), q);
    for (int j = 0; j < mc; ++j)
        for (int t = 0; t < q; ++t) out.v(j, t) = ub[std::size_t(t) * mc + j];
    return out;
}

// For a tall row-major factor A (m x r, r <= m) returns the r x r lower
// triangular L with A = Q L^T, Q having orthonormal columns. Obtained as the
// LQ factorization of the column-major view A^T.
inline DenseMatrix thin_lq_lower(const DenseMatrix& m) {
    int r = int(m.cols()), n = int(m.rows());
    cvec buf(m.data(), m.data() + m.rows() * m.cols());
    std::vector<cplx> tau(std::min(r, n));
    int info = LAPACKE_zgelqf(LAPACK_COL_MAJOR, r, n, buf.data(), r, tau.data());
    if (info != 0)
        throw std::runtime_error("zgelqf failed");
    DenseMatrix l(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j <= i && j < n; ++j) l(i, j) = buf[std::size_t(j) * r + i];
    return l;
}

struct CmSvd {
    std::vector<double> s;
    CMat u;    // m x q orthonormal columns, q = min(m, n)
    CMat vt;   // q x n
};

inline CmSvd cm_svd(CMat a) {
    CmSvd out;
    const int m = a.rows, n = a.cols, q = std::min(m, n);
    if (q == 0) return out;
    out.s.resize(q);
    out.u = CMat(m, q);
    out.vt = CMat(q, n);
    int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', m, n, a.a.data(), m,
                              out.s.data(), out.u.a.data(), m, out.vt.a.data(), q);
    if (info != 0) throw std::runtime_error("zgesdd (factors) failed to converge");
    return out;
}

// Full m x m unitary Q of the QL factorization of a tall matrix (m >= its
// columns), so Q^H a has zeros in its top m - cols rows.
inline CMat ql_full_q(CMat a) {
    const int m = a.rows, r = a.cols;
    CMat q(m, m);
    for (int i = 0; i < m; ++i) q.at(i, i) = 1.0;
    if (r == 0) return q;
    cvec tau(std::min(m, r));
    int info = LAPACKE_zgeqlf(LAPACK_COL_MAJOR, m, r, a.a.data(), m, tau.data());
    if (info != 0) throw std::runtime_error("zgeqlf failed");
    info = LAPACKE_zunmql(LAPACK_COL_MAJOR, 'L', 'N', m, m, std::min(m, r),
                          a.a.data(), m, tau.data(), q.a.data(), m);
    if (info != 0) throw std::runtime_error("zunmql failed");
    return q;
}

struct LqFull {
    CMat l;   // e x e lower triangular
    CMat q;   // m x m unitary; a = [l 0] q
};

// LQ factorization of a wide matrix (e x m, e <= m) with the row space
// completed to a full unitary.
inline LqFull lq_full_q(const CMat& a) {
    const int e = a.rows, m = a.cols;
    LqFull out;
    out.l = CMat(e, e);
    out.q = CMat(m, m);
    if (e == 0) {
        for (int i = 0; i < m; ++i) out.q.at(i, i) = 1.0;
        return out;
    }
    CMat w(a);
    cvec tau(std::min(e, m));
    int info = LAPACKE_zgelqf(LAPACK_COL_MAJOR, e, m, w.a.data(), e, tau.data());
    if (info != 0) throw std::runtime_error("zgelqf failed");
    for (int i = 0; i < e; ++i)
        for (int j = 0; j <= i; ++j) out.l.at(i, j) = w.at(i, j);
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < m; ++j) out.q.at(i, j) = w.at(i, j);
    info = LAPACKE_zunglq(LAPACK_COL_MAJOR, m, m, std::min(e, m), out.q.a.data(),
                          m, tau.data());
    if (info != 0) throw std::runtime_error("zunglq failed");
    return out;
}

// 1-norm reciprocal condition estimate of a lower triangular matrix.
inline double tri_rcond_lower(const CMat& l) {
    if (l.rows == 0) return 1.0;
    double rc = 0.0;
    int info = LAPACKE_ztrcon(LAPACK_COL_MAJOR, '1', 'L', 'N', l.rows, l.a.data(),
                              l.rows, &rc);
    if (info != 0) throw std::runtime_error("ztrcon failed");
    return rc;
}

struct LuFactors {
    CMat lu;
    std::vector<int> piv;
    double rcond = 0.0;   // 1-norm estimate of the factored (column-major) matrix
    bool singular = false;
};

inline LuFactors lu_factor(CMat a, bool want_rcond = true) {
    LuFactors f;
    int n = a.rows;
    double anorm = 0.0;
    if (want_rcond) {
        for (int j = 0; j < a.cols; ++j) {
            double colsum = 0.0;
            for (int i = 0; i < n; ++i) colsum += std::abs(a.at(i, j));
            anorm = std::max(anorm, colsum);
        }
    }
    f.piv.resize(std::min(a.rows, a.cols));
    int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, a.rows, a.cols, a.a.data(), a.rows,
                              f.piv.data());
    if (info < 0) throw std::runtime_error("zgetrf: bad argument");
    f.singular = (info > 0);
    f.lu = std::move(a);
    if (!f.singular && want_rcond && n > 0) {
        int cinfo = LAPACKE_zgecon(LAPACK_COL_MAJOR, '1', n, f.lu.a.data(), n, anorm,
                                   &f.rcond);
        if (cinfo != 0) throw std::runtime_error("zgecon failed");
    }
    return f;
}

// Solves with the factored matrix; trans follows zgetrs ('N', 'T', 'C').
inline void lu_solve_inplace(const LuFactors& f, CMat& b, char trans = 'N') {
    if (f.singular) throw std::runtime_error("lu_solve on singular factors");
    int info = LAPACKE_zgetrs(LAPACK_COL_MAJOR, trans, f.lu.rows, b.cols,
                              f.lu.a.data(), f.lu.rows,
                              const_cast<int*>(f.piv.data()), b.a.data(), b.rows);
    if (info != 0) throw std::runtime_error("zgetrs failed");
}

} // namespace cvhss::detail

#endif
