// cvhss: direct solver for square extended HSS matrices.
//
// Bottom-up ULV elimination over the angle-sorted knots. A node owns a
// contiguous run of sorted positions; its state is the pair of transforms
// (tr, tc) mapping its current rows and columns back to kernel rows and
// columns, plus the current diagonal block d = tr K tc. The coupling of the
// node's rows to all columns outside its run is compressed from the knots
// alone: the outside arc is walked from both ends of the run in chunks of
// doubling width, and each chunk far enough from the node (radius over
// distance at most 0.6) contributes a truncated geometric series around its
// center; chunks that would need more terms than they have columns stay
// exact. A rank decision on that coupling gives a unitary row mixer (QL of
// the left singular basis) that zeroes the top rows of the node outside d,
// and an LQ of those top rows then concentrates them on a lower triangular
// corner over mixed variables. Because the top rows are zero outside the
// corner, the whole transformed matrix is block lower triangular: the corner
// and the surviving system both inherit the singular value bounds of the full
// matrix, so the corner's condition number certifies, level by level, that
// the elimination is regular. Eliminated variables are substituted through
// one structured far-field update per level using the same chunk series, and
// siblings merge with cross blocks compressed the same way until a dense LU
// of the final block closes the factorization.
//
// A corner or final block that is singular to the 1e-14 floor, or a residual
// that will not settle under refinement against the matrix's own matvec,
// raises HierarchicalRegularityViolation: the sorted knots admit no regular
// hierarchical elimination in double precision.

#ifndef CVHSS_HSS_SOLVE_HPP
#define CVHSS_HSS_SOLVE_HPP

#include <cblas.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>
#include <vector>

#include "cvhss/detail/lapack.hpp"
#include "cvhss/errors.hpp"
#include "cvhss/hss.hpp"

namespace cvhss {

namespace detail {

// c = a * b, a^H * b, or a * b^H depending on mode 'N', 'H', 'R'.
inline CMat ulv_mul(char mode, const CMat& a, const CMat& b,
                    std::uint64_t& ops) {
    const int ar = mode == 'H' ? a.cols : a.rows;
    const int ak = mode == 'H' ? a.rows : a.cols;
    const int bc = mode == 'R' ? b.rows : b.cols;
    CMat c(ar, bc);
    if (ar == 0 || bc == 0 || ak == 0) return c;
    const cplx one = 1.0, zero = 0.0;
    cblas_zgemm(CblasColMajor, mode == 'H' ? CblasConjTrans : CblasNoTrans,
                mode == 'R' ? CblasConjTrans : CblasNoTrans, ar, bc, ak, &one,
                a.a.data(), a.rows, b.a.data(), b.rows, &zero, c.a.data(), ar);
    ops += 2ull * ar * bc * ak;
    return c;
}

inline CMat ulv_rows(const CMat& a, int r0, int r1) {
    CMat c(r1 - r0, a.cols);
    for (int j = 0; j < a.cols; ++j)
        for (int i = r0; i < r1; ++i) c.at(i - r0, j) = a.at(i, j);
    return c;
}

inline CMat ulv_cols(const CMat& a, int c0, int c1) {
    CMat c(a.rows, c1 - c0);
    for (int j = c0; j < c1; ++j)
        for (int i = 0; i < a.rows; ++i) c.at(i, j - c0) = a.at(i, j);
    return c;
}

// One chunk of the far-field walk. p0 is the offset in the cyclic walk that
// starts at the owning node's upper end. Exact chunks contribute one kernel
// column per knot; series chunks contribute rho moment columns around the
// center, scaled by powers of the radius so all columns carry comparable
// weight.
struct UlvChunk {
    int p0 = 0, width = 0, rho = 0;
    bool exact = false;
    cplx center{0.0, 0.0};
    double radius = 0.0;
};

struct UlvStack {
    CMat f;   // |own| x total (kernel or series columns on the own knots)
    CMat g;   // |other| x total, built only for merge cross blocks
    std::vector<UlvChunk> chunks;
};

// Certified low-rank cover of the coupling between the own knots and an
// ordered list of other knots, walked from both ends with doubling widths.
inline UlvStack ulv_coupling_stack(const cvec& own, const cvec& other,
                                   double tol, bool want_g,
                                   std::uint64_t& ops) {
    const int m = int(own.size()), no = int(other.size());
    UlvStack st;
    std::vector<cvec> fcols, gcols;
    auto add_chunk = [&](int p0, int p1) {
        cplx csum = 0.0;
        for (int p = p0; p < p1; ++p) csum += other[p];
        const cplx c = csum / double(p1 - p0);
        double rad = 0.0;
        for (int p = p0; p < p1; ++p) rad = std::max(rad, std::abs(other[p] - c));
        double dmin = std::numeric_limits<double>::infinity();
        for (const cplx& z : own) dmin = std::min(dmin, std::abs(z - c));
        if (!(dmin > 0.0)) return false;
        const double theta = rad / dmin;
        if (theta > 0.6) return false;
        UlvChunk ch;
        ch.p0 = p0;
        ch.width = p1 - p0;
        ch.center = c;
        ch.radius = rad;
        ch.rho = std::min(rho_for_tolerance(theta, dmin, tol), 96);
        ch.exact = ch.rho >= ch.width;
        if (ch.exact) {
            for (int p = p0; p < p1; ++p) {
                cvec col(m);
                for (int i = 0; i < m; ++i) col[i] = 1.0 / (own[i] - other[p]);
                fcols.push_back(std::move(col));
                if (want_g) {
                    cvec gc(no, cplx(0.0));
                    gc[p] = 1.0;
                    gcols.push_back(std::move(gc));
                }
            }
        } else {
            cvec w(m);
            for (int i = 0; i < m; ++i) w[i] = 1.0 / (own[i] - c);
            cvec pw(m, cplx(1.0));
            double rv = 1.0;
            for (int v = 0; v < ch.rho; ++v) {
                cvec col(m);
                for (int i = 0; i < m; ++i) {
                    pw[i] *= w[i];
                    col[i] = pw[i] * rv;
                }
                fcols.push_back(std::move(col));
                if (want_g) {
                    cvec gc(no, cplx(0.0));
                    const double inv = rad > 0.0 ? 1.0 / rad : 0.0;
                    for (int p = p0; p < p1; ++p) {
                        const cplx u = (other[p] - c) * inv;
                        cplx pv = 1.0;
                        for (int q = 0; q < v; ++q) pv *= u;
                        gc[p] = pv;
                    }
                    gcols.push_back(std::move(gc));
                }
                rv *= rad;
            }
        }
        ops += 4ull * m * std::max(1, ch.exact ? ch.width : ch.rho);
        st.chunks.push_back(ch);
        return true;
    };
    int lo = 0, hi = no, wl = 1, wh = 1;
    bool from_high = false;
    while (lo < hi) {
        if (!from_high) {
            int w = std::min(wl, hi - lo);
            while (w > 1 && !add_chunk(lo, lo + w)) w = (w + 1) / 2;
            if (w == 1 && !add_chunk(lo, lo + 1))
                throw SingularEntry("hss_solve: coinciding row and column knots");
            lo += w;
            wl = 2 * w;
        } else {
            int w = std::min(wh, hi - lo);
            while (w > 1 && !add_chunk(hi - w, hi)) w = (w + 1) / 2;
            if (w == 1 && !add_chunk(hi - 1, hi))
                throw SingularEntry("hss_solve: coinciding row and column knots");
            hi -= w;
            wh = 2 * w;
        }
        from_high = !from_high;
    }
    st.f = CMat(m, int(fcols.size()));
    for (std::size_t j = 0; j < fcols.size(); ++j)
        for (int i = 0; i < m; ++i) st.f.at(i, int(j)) = fcols[j][i];
    if (want_g) {
        st.g = CMat(no, int(gcols.size()));
        for (std::size_t j = 0; j < gcols.size(); ++j)
            for (int i = 0; i < no; ++i) st.g.at(i, int(j)) = gcols[j][i];
    }
    return st;
}

struct UlvNode {
    int lo = 0, hi = 0;            // sorted position range
    int child_a = -1, child_b = -1;
    int m = 0, r = 0;              // dimensions before and after elimination
    CMat tr, tc, d;                // factorization-time state, freed afterwards
    CMat qr, qc;                   // row and variable mixers, m x m
    CMat le;                       // lower triangular corner, (m - r) square
    CMat d21;                      // survivors against eliminated variables
    CMat a_out;                    // survivors against the far-field stack
    CMat tc_elim;                  // original-column span of eliminated vars
    std::vector<UlvChunk> chunks;  // far-field walk used by a_out
    double le_rcond = 1.0;
};

class HssSolverImpl {
  public:
    HssSolverImpl(std::shared_ptr<const HssData> data,
                  std::shared_ptr<std::atomic<std::uint64_t>> counter)
        : d_(std::move(data)), flops_(std::move(counter)) {
        std::uint64_t ops = 0;
        build(ops);
        count(ops);
    }

    // One right-hand side in the original row order; the solution comes back
    // in the original column order.
    cvec apply(const cvec& b) const {
        const SectorPartition& part = d_->part;
        const int n = int(b.size());
        cvec bs(n);
        for (int p = 0; p < n; ++p) bs[p] = b[part.s_order[p]];
        std::uint64_t ops = 0;
        cvec xs = solve_sorted(bs, ops);
        count(ops);
        cvec x(n);
        for (int p = 0; p < n; ++p) x[part.t_order[p]] = xs[p];
        return x;
    }

  private:
    std::shared_ptr<const HssData> d_;
    std::shared_ptr<std::atomic<std::uint64_t>> flops_;
    std::vector<UlvNode> nodes_;
    std::vector<std::vector<int>> levels_;
    int root_ = -1;
    LuFactors root_lu_;

    static constexpr int kLeaf = 128;
    static constexpr double kTol = 1e-13;
    static constexpr double kCornerFloor = 1e-14;

    void count(std::uint64_t f) const {
        flops_->fetch_add(f, std::memory_order_relaxed);
    }

    [[noreturn]] static void fail_regularity(const char* what) {
        throw HierarchicalRegularityViolation(
            std::string("hss_solve: ") + what +
            " is numerically singular; the sorted knots do not admit a "
            "regular hierarchical elimination");
    }

    void eliminate(UlvNode& nd, std::uint64_t& ops) {
        const cvec& S = d_->s_sorted;
        const cvec& T = d_->t_sorted;
        const int n = int(S.size());
        const int w = nd.hi - nd.lo, m = nd.d.rows;
        nd.m = m;

        cvec own(S.begin() + nd.lo, S.begin() + nd.hi);
        cvec tout(n - w);
        for (int p = 0; p < n - w; ++p) tout[p] = T[(nd.hi + p) % n];
        UlvStack st = ulv_coupling_stack(own, tout, kTol, false, ops);
        nd.chunks = std::move(st.chunks);

        CMat fn = ulv_mul('N', nd.tr, st.f, ops);
        CmSvd sv = cm_svd(fn);
        ops += 2ull * fn.rows * fn.cols * std::min(fn.rows, fn.cols);
        int r = 0;
        const int q = int(sv.s.size());
        while (r < q && sv.s[r] > kTol * sv.s[0]) ++r;
        nd.r = r;
        const int e = m - r;
        if (e == 0) {   // full rank: nothing to eliminate, keep the coupling
            nd.a_out = std::move(fn);
            return;
        }

        nd.qr = ql_full_q(ulv_cols(sv.u, 0, r));
        ops += 2ull * m * m * std::max(1, r);
        CMat d1 = ulv_mul('H', nd.qr, nd.d, ops);
        nd.tr = ulv_mul('H', nd.qr, nd.tr, ops);
        nd.a_out = ulv_rows(ulv_mul('H', nd.qr, fn, ops), e, m);

        LqFull lf = lq_full_q(ulv_rows(d1, 0, e));
        ops += 2ull * e * m * m;
        nd.le = std::move(lf.l);
        nd.qc = std::move(lf.q);
        nd.le_rcond = tri_rcond_lower(nd.le);
        if (nd.le_rcond < kCornerFloor) fail_regularity("an elimination corner");

        CMat du = ulv_mul('R', d1, nd.qc, ops);
        nd.d21 = ulv_cols(ulv_rows(du, e, m), 0, e);
        nd.d = ulv_cols(ulv_rows(du, e, m), e, m);
        CMat tcu = ulv_mul('R', nd.tc, nd.qc, ops);
        nd.tc_elim = ulv_cols(tcu, 0, e);
        nd.tc = ulv_cols(tcu, e, m);
        nd.tr = ulv_rows(nd.tr, e, m);
    }

    void build(std::uint64_t& ops) {
        const cvec& S = d_->s_sorted;
        const cvec& T = d_->t_sorted;
        const int n = int(S.size());
        std::vector<int> active;
        const int nl = std::max(1, (n + kLeaf - 1) / kLeaf);
        for (int q = 0; q < nl; ++q) {
            UlvNode nd;
            nd.lo = int(std::int64_t(q) * n / nl);
            nd.hi = int(std::int64_t(q + 1) * n / nl);
            const int w = nd.hi - nd.lo;
            nd.d = CMat(w, w);
            for (int j = 0; j < w; ++j)
                for (int i = 0; i < w; ++i) {
                    const cplx diff = S[nd.lo + i] - T[nd.lo + j];
                    if (diff == cplx(0.0))
                        throw SingularEntry(
                            "hss_solve: coinciding row and column knots");
                    nd.d.at(i, j) = 1.0 / diff;
                }
            ops += 2ull * w * w;
            nd.tr = CMat(w, w);
            nd.tc = CMat(w, w);
            for (int i = 0; i < w; ++i) {
                nd.tr.at(i, i) = 1.0;
                nd.tc.at(i, i) = 1.0;
            }
            active.push_back(int(nodes_.size()));
            nodes_.push_back(std::move(nd));
        }

        while (int(active.size()) > 1) {
            levels_.push_back(active);
            for (int id : active)   // odd carries were eliminated earlier
                if (nodes_[id].m == 0) eliminate(nodes_[id], ops);
            std::vector<int> next;
            for (std::size_t p = 0; p + 1 < active.size(); p += 2) {
                const UlvNode& a = nodes_[active[p]];
                const UlvNode& b = nodes_[active[p + 1]];
                UlvNode nd;
                nd.child_a = active[p];
                nd.child_b = active[p + 1];
                nd.lo = a.lo;
                nd.hi = b.hi;
                const int wa = a.hi - a.lo, wb = b.hi - b.lo;
                const int ra = a.d.rows, rb = b.d.rows;
                cvec ka(S.begin() + a.lo, S.begin() + a.hi);
                cvec kb(S.begin() + b.lo, S.begin() + b.hi);
                cvec ta(T.begin() + a.lo, T.begin() + a.hi);
                cvec tb(T.begin() + b.lo, T.begin() + b.hi);
                UlvStack sab = ulv_coupling_stack(ka, tb, kTol, true, ops);
                UlvStack sba = ulv_coupling_stack(kb, ta, kTol, true, ops);
                CMat cross_ab = ulv_mul('N', ulv_mul('N', a.tr, sab.f, ops),
                                        ulv_mul('H', conj_cells(sab.g), b.tc, ops),
                                        ops);
                CMat cross_ba = ulv_mul('N', ulv_mul('N', b.tr, sba.f, ops),
                                        ulv_mul('H', conj_cells(sba.g), a.tc, ops),
                                        ops);
                nd.d = CMat(ra + rb, ra + rb);
                for (int j = 0; j < ra; ++j)
                    for (int i = 0; i < ra; ++i) nd.d.at(i, j) = a.d.at(i, j);
                for (int j = 0; j < rb; ++j)
                    for (int i = 0; i < ra; ++i)
                        nd.d.at(i, ra + j) = cross_ab.at(i, j);
                for (int j = 0; j < ra; ++j)
                    for (int i = 0; i < rb; ++i)
                        nd.d.at(ra + i, j) = cross_ba.at(i, j);
                for (int j = 0; j < rb; ++j)
                    for (int i = 0; i < rb; ++i)
                        nd.d.at(ra + i, ra + j) = b.d.at(i, j);
                nd.tr = CMat(ra + rb, wa + wb);
                for (int j = 0; j < wa; ++j)
                    for (int i = 0; i < ra; ++i) nd.tr.at(i, j) = a.tr.at(i, j);
                for (int j = 0; j < wb; ++j)
                    for (int i = 0; i < rb; ++i)
                        nd.tr.at(ra + i, wa + j) = b.tr.at(i, j);
                nd.tc = CMat(wa + wb, ra + rb);
                for (int j = 0; j < ra; ++j)
                    for (int i = 0; i < wa; ++i) nd.tc.at(i, j) = a.tc.at(i, j);
                for (int j = 0; j < rb; ++j)
                    for (int i = 0; i < wb; ++i)
                        nd.tc.at(wa + i, ra + j) = b.tc.at(i, j);
                next.push_back(int(nodes_.size()));
                nodes_.push_back(std::move(nd));
            }
            if (active.size() % 2) next.push_back(active.back());
            active = std::move(next);
        }

        root_ = active[0];
        UlvNode& rt = nodes_[root_];
        const int rr = rt.d.rows;
        ops += 2ull * rr * rr * rr / 3;
        root_lu_ = lu_factor(std::move(rt.d));
        if (root_lu_.singular || root_lu_.rcond < kCornerFloor)
            fail_regularity("the final block");
        for (UlvNode& nd : nodes_) {   // factorization-time state
            nd.tr = CMat();
            nd.tc = CMat();
            nd.d = CMat();
        }
    }

    // Plain-transpose pairing f g^T written through the conjugate so the 'H'
    // multiply can be reused.
    static CMat conj_cells(CMat g) {
        for (cplx& v : g.a) v = std::conj(v);
        return g;
    }

    // mu = g^T W restricted to the node's far field, evaluated from the chunk
    // walk without storing g.
    cvec far_moments(const UlvNode& nd, const cvec& W, std::uint64_t& ops) const {
        const cvec& T = d_->t_sorted;
        const int n = int(T.size());
        cvec mu(nd.a_out.cols, cplx(0.0));
        int col = 0;
        for (const UlvChunk& ch : nd.chunks) {
            if (ch.exact) {
                for (int p = 0; p < ch.width; ++p)
                    mu[col + p] = W[(nd.hi + ch.p0 + p) % n];
                col += ch.width;
            } else {
                const double inv = ch.radius > 0.0 ? 1.0 / ch.radius : 0.0;
                for (int p = 0; p < ch.width; ++p) {
                    const int pos = (nd.hi + ch.p0 + p) % n;
                    const cplx z = W[pos];
                    if (z == cplx(0.0)) continue;
                    const cplx u = (T[pos] - ch.center) * inv;
                    cplx pv = 1.0;
                    for (int v = 0; v < ch.rho; ++v) {
                        mu[col + v] += pv * z;
                        pv *= u;
                    }
                }
                ops += 2ull * ch.width * ch.rho;
                col += ch.rho;
            }
        }
        return mu;
    }

    cvec solve_sorted(const cvec& b, std::uint64_t& ops) const {
        const int n = int(b.size());
        const std::size_t nn = nodes_.size();
        std::vector<cvec> u1(nn), bs(nn), xcur(nn);
        std::vector<char> seen(nn, 0);

        for (const std::vector<int>& level : levels_) {
            std::vector<int> fresh;
            for (int id : level) {
                if (seen[id]) continue;   // carried from an earlier level
                seen[id] = 1;
                fresh.push_back(id);
                const UlvNode& nd = nodes_[id];
                cvec bn;
                if (nd.child_a < 0) {
                    bn.assign(b.begin() + nd.lo, b.begin() + nd.hi);
                } else {
                    bn = bs[nd.child_a];
                    bn.insert(bn.end(), bs[nd.child_b].begin(),
                              bs[nd.child_b].end());
                }
                const int e = nd.m - nd.r;
                if (e == 0) {
                    bs[id] = std::move(bn);
                    continue;
                }
                cvec bp(nd.m, cplx(0.0));
                for (int i = 0; i < nd.m; ++i) {
                    cplx acc = 0.0;
                    for (int k = 0; k < nd.m; ++k)
                        acc += std::conj(nd.qr.at(k, i)) * bn[k];
                    bp[i] = acc;
                }
                ops += 2ull * nd.m * nd.m;
                cvec& u = u1[id];
                u.assign(e, cplx(0.0));
                for (int i = 0; i < e; ++i) {   // forward substitution
                    cplx acc = bp[i];
                    for (int k = 0; k < i; ++k) acc -= nd.le.at(i, k) * u[k];
                    u[i] = acc / nd.le.at(i, i);
                }
                ops += std::uint64_t(e) * e;
                bs[id].assign(bp.begin() + e, bp.end());
            }

            // far-field substitution of this level's eliminated variables
            cvec W(n, cplx(0.0));
            std::vector<char> contributed(nn, 0);
            bool any = false;
            for (int id : fresh) {
                const UlvNode& nd = nodes_[id];
                const int e = nd.m - nd.r;
                if (e == 0) continue;
                any = true;
                contributed[id] = 1;
                for (int i = 0; i < nd.hi - nd.lo; ++i) {
                    cplx acc = 0.0;
                    for (int j = 0; j < e; ++j)
                        acc += nd.tc_elim.at(i, j) * u1[id][j];
                    W[nd.lo + i] += acc;
                }
                ops += 2ull * (nd.hi - nd.lo) * e;
            }
            if (!any) continue;
            for (int id : level) {
                const UlvNode& nd = nodes_[id];
                cvec mu = far_moments(nd, W, ops);
                cvec upd(bs[id].size(), cplx(0.0));
                for (int i = 0; i < int(upd.size()); ++i) {
                    cplx acc = 0.0;
                    for (int j = 0; j < nd.a_out.cols; ++j)
                        acc += nd.a_out.at(i, j) * mu[j];
                    upd[i] = acc;
                }
                ops += 2ull * upd.size() * nd.a_out.cols;
                if (contributed[id]) {
                    // own eliminated block, exact through d21 (the far walk
                    // never covers the node's own run)
                    const int e = nd.m - nd.r;
                    for (int i = 0; i < int(upd.size()); ++i) {
                        cplx acc = 0.0;
                        for (int j = 0; j < e; ++j)
                            acc += nd.d21.at(i, j) * u1[id][j];
                        upd[i] += acc;
                    }
                    ops += 2ull * upd.size() * e;
                }
                for (int i = 0; i < int(upd.size()); ++i) bs[id][i] -= upd[i];
            }
        }

        // final dense block
        const UlvNode& rt = nodes_[root_];
        cvec brt;
        if (rt.child_a < 0) {
            brt.assign(b.begin() + rt.lo, b.begin() + rt.hi);
        } else {
            brt = bs[rt.child_a];
            brt.insert(brt.end(), bs[rt.child_b].begin(), bs[rt.child_b].end());
        }
        CMat y(int(brt.size()), 1);
        for (std::size_t i = 0; i < brt.size(); ++i) y.at(int(i), 0) = brt[i];
        lu_solve_inplace(root_lu_, y);
        ops += 2ull * brt.size() * brt.size();

        cvec x(n, cplx(0.0));
        if (rt.child_a < 0) {
            for (std::size_t i = 0; i < y.a.size(); ++i) x[rt.lo + int(i)] = y.a[i];
        } else {
            const UlvNode& a = nodes_[rt.child_a];
            xcur[rt.child_a].assign(y.a.begin(), y.a.begin() + a.r);
            xcur[rt.child_b].assign(y.a.begin() + a.r, y.a.end());
        }
        std::fill(seen.begin(), seen.end(), 0);
        for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
            for (int id : *it) {
                if (seen[id]) continue;   // carried nodes resolve once
                seen[id] = 1;
                const UlvNode& nd = nodes_[id];
                const cvec& u2 = xcur[id];
                const int e = nd.m - nd.r;
                cvec xc(nd.m, cplx(0.0));
                if (e == 0) {
                    xc = u2;
                } else {
                    cvec u(nd.m);
                    for (int i = 0; i < e; ++i) u[i] = u1[id][i];
                    for (int i = 0; i < nd.r; ++i) u[e + i] = u2[i];
                    for (int i = 0; i < nd.m; ++i) {
                        cplx acc = 0.0;
                        for (int k = 0; k < nd.m; ++k)
                            acc += std::conj(nd.qc.at(k, i)) * u[k];
                        xc[i] = acc;
                    }
                    ops += 2ull * nd.m * nd.m;
                }
                if (nd.child_a < 0) {
                    for (int i = 0; i < int(xc.size()); ++i) x[nd.lo + i] = xc[i];
                } else {
                    const UlvNode& a = nodes_[nd.child_a];
                    xcur[nd.child_a].assign(xc.begin(), xc.begin() + a.r);
                    xcur[nd.child_b].assign(xc.begin() + a.r, xc.end());
                }
            }
        }
        return x;
    }
};

inline std::shared_ptr<const HssSolverImpl> solver_for(const ExtendedHssMatrix& h) {
    SolverSlot& slot = h.solver_slot();
    std::lock_guard<std::mutex> lock(slot.mu);
    if (!slot.impl)
        slot.impl = std::make_shared<HssSolverImpl>(h.data(), h.flop_counter());
    return slot.impl;
}

} // namespace detail

struct HssSolveResult {
    cvec x;
    int refinements = 0;        // corrections applied after the first solve
    double residual = 0.0;      // final max-norm residual over max-norm of b
};

// Solves H x = b for a square extended HSS matrix, refining against H's own
// matvec until the relative residual drops below rtol. Throws
// HierarchicalRegularityViolation if the residual will not settle or an
// elimination block is singular.
inline HssSolveResult hss_solve(const ExtendedHssMatrix& h, const cvec& b,
                                double rtol = 1e-7, int max_refine = 4) {
    if (h.rows() != h.cols())
        throw std::invalid_argument("hss_solve: matrix must be square");
    if (int(b.size()) != h.rows())
        throw std::invalid_argument("hss_solve: length mismatch");
    require_finite(b, "hss_solve rhs");

    HssSolveResult out;
    double bnorm = 0.0;
    for (const cplx& v : b) bnorm = std::max(bnorm, std::abs(v));
    if (bnorm == 0.0) {
        out.x.assign(b.size(), cplx(0.0));
        return out;
    }

    auto solver = detail::solver_for(h);
    out.x = solver->apply(b);
    for (int it = 0;; ++it) {
        cvec ax = h.matvec(out.x);
        double rnorm = 0.0;
        cvec r(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) {
            r[i] = b[i] - ax[i];
            rnorm = std::max(rnorm, std::abs(r[i]));
        }
        out.residual = rnorm / bnorm;
        out.refinements = it;
        if (out.residual <= rtol) return out;
        if (it == max_refine)
            throw HierarchicalRegularityViolation(
                "hss_solve: residual did not reach the requested tolerance; "
                "the hierarchical elimination is not regular for these knots");
        cvec dx = solver->apply(r);
        for (std::size_t i = 0; i < b.size(); ++i) out.x[i] += dx[i];
    }
}

} // namespace cvhss

#endif
