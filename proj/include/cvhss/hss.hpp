// cvhss: extended hierarchically semiseparable form of a Cauchy matrix on
// roots-of-unity column knots.
//
// The k sectors give the leaf granularity. For every column sector, the
// three-sector neighborhood of rows (the cyclic tridiagonal band) is stored
// exactly. The remaining rows of each block column are covered once across
// the merge hierarchy: at merge level h the sectors are grouped 2^h at a
// time, and the group's locally admissible rows (inside the parent's band,
// outside its own) are approximated by the geometric-series generators
// around the group's arc center. Merging stops with eight groups so every
// band stays inside a quarter turn and the closed-form separation holds.
//
// Every admissible block carries a certified entrywise error bound; xi() is
// the max over blocks, so the implied dense matrix D obeys
// max_ij |D - C| <= xi(). Blocks whose tolerance would demand more columns
// than they have are stored exactly (bound 0) instead of inflating xi.

#ifndef CVHSS_HSS_HPP
#define CVHSS_HSS_HPP

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "cvhss/cauchy.hpp"
#include "cvhss/core.hpp"
#include "cvhss/errors.hpp"
#include "cvhss/sector.hpp"

namespace cvhss {

struct MergeTree {
    int sectors = 0;   // k, power of two >= 16
    int levels = 0;    // number of merges l; k / 2^l == 8
    int groups_at(int h) const { return sectors >> h; }
    int group_width(int h) const { return 1 << h; }
};

inline MergeTree make_merge_tree(int k) {
    MergeTree t;
    t.sectors = k;
    t.levels = 0;
    while ((k >> t.levels) > 8) ++t.levels;
    return t;
}

struct HssTarget {
    enum class Kind { fixed_rho, fixed_xi };
    Kind kind = Kind::fixed_xi;
    int rho = 0;
    double xi = 0.0;
    static HssTarget fixed_rho(int r) {
        if (r < 1) throw std::invalid_argument("HssTarget: rho must be >= 1");
        return {Kind::fixed_rho, r, 0.0};
    }
    static HssTarget fixed_xi(double x) {
        if (!(x > 0.0)) throw std::invalid_argument("HssTarget: xi must be > 0");
        return {Kind::fixed_xi, 0, x};
    }
};

// Exact tridiagonal block of one column sector: rows are the sorted-position
// lists of the three neighboring sectors, in cyclic order q-1, q, q+1.
struct LeafBand {
    int sector = 0;
    int col_begin = 0, col_end = 0;   // sorted column positions
    std::vector<int> rows;            // sorted row positions
    DenseMatrix entries;              // rows.size() x (col_end - col_begin)
};

// Locally admissible block of one group at one merge level. Factored blocks
// hold the series generators; exact blocks keep g_factor empty and store the
// entries in f_factor.
struct HssPiece {
    int level = 0, group = 0;
    int col_begin = 0, col_end = 0;
    std::vector<int> rows;
    DenseMatrix f_factor, g_factor;
    double error_bound = 0.0;
    cplx center{0.0, 0.0};
    double theta = 0.0, delta = 0.0;
    bool factored() const { return !g_factor.empty(); }
    int length() const { return int(f_factor.cols()); }
};

namespace detail {
class HssSolverImpl;
struct SolverSlot {
    std::mutex mu;
    std::shared_ptr<const HssSolverImpl> impl;
};

// Immutable structure data. Shared between copies of ExtendedHssMatrix and
// by the cached solver, so block storage stays valid for either.
struct HssData {
    SectorPartition part;
    MergeTree tree;
    std::vector<LeafBand> bands;
    std::vector<HssPiece> pieces;
    cvec s_sorted, t_sorted;
    double xi = 0.0;
    int max_len = 0;
};
} // namespace detail

class ExtendedHssMatrix {
  public:
    ExtendedHssMatrix() = default;

    int rows() const { return int(d_->s_sorted.size()); }
    int cols() const { return int(d_->t_sorted.size()); }
    double xi() const { return d_->xi; }
    // longest series expansion used by any factored block; exact blocks
    // carry no generators and do not contribute
    int max_generator_length() const { return d_->max_len; }

    const SectorPartition& partition() const { return d_->part; }
    const MergeTree& tree() const { return d_->tree; }
    const std::vector<LeafBand>& bands() const { return d_->bands; }
    const std::vector<HssPiece>& pieces() const { return d_->pieces; }
    const cvec& row_knots_sorted() const { return d_->s_sorted; }
    const cvec& col_knots_sorted() const { return d_->t_sorted; }
    std::shared_ptr<const detail::HssData> data() const { return d_; }

    std::uint64_t flops() const { return flops_->load(); }
    void reset_flops() const { flops_->store(0); }
    void add_flops(std::uint64_t f) const {
        flops_->fetch_add(f, std::memory_order_relaxed);
    }
    std::shared_ptr<std::atomic<std::uint64_t>> flop_counter() const { return flops_; }

    // y = C~ x in the original index order of rows and columns.
    cvec matvec(const cvec& x) const {
        if (int(x.size()) != cols())
            throw std::invalid_argument("hss_matvec: length mismatch");
        const SectorPartition& part = d_->part;
        const int m = rows(), n = cols();
        cvec xs(n);
        for (int p = 0; p < n; ++p) xs[p] = x[part.t_order[p]];
        cvec ys(m, cplx(0.0));
        std::uint64_t ops = 0;

        for (const LeafBand& b : d_->bands) {
            const int w = b.col_end - b.col_begin;
            for (std::size_t i = 0; i < b.rows.size(); ++i) {
                cplx acc = 0.0;
                for (int j = 0; j < w; ++j) acc += b.entries(i, j) * xs[b.col_begin + j];
                ys[b.rows[i]] += acc;
            }
            ops += b.rows.size() * std::size_t(w);
        }
        cvec tmp;
        for (const HssPiece& p : d_->pieces) {
            const int w = p.col_end - p.col_begin;
            if (p.factored()) {
                const int r = p.length();
                tmp.assign(r, cplx(0.0));
                for (int j = 0; j < w; ++j) {
                    cplx xv = xs[p.col_begin + j];
                    for (int v = 0; v < r; ++v) tmp[v] += p.g_factor(j, v) * xv;
                }
                for (std::size_t i = 0; i < p.rows.size(); ++i) {
                    cplx acc = 0.0;
                    for (int v = 0; v < r; ++v) acc += p.f_factor(i, v) * tmp[v];
                    ys[p.rows[i]] += acc;
                }
                ops += std::size_t(r) * (w + p.rows.size());
            } else {
                for (std::size_t i = 0; i < p.rows.size(); ++i) {
                    cplx acc = 0.0;
                    for (int j = 0; j < w; ++j) acc += p.f_factor(i, j) * xs[p.col_begin + j];
                    ys[p.rows[i]] += acc;
                }
                ops += p.rows.size() * std::size_t(w);
            }
        }
        add_flops(ops);
        cvec y(m);
        for (int p = 0; p < m; ++p) y[part.s_order[p]] = ys[p];
        return y;
    }

    // y = C~^T x (plain transpose), original index order on both sides.
    cvec tmatvec(const cvec& x) const {
        if (int(x.size()) != rows())
            throw std::invalid_argument("hss tmatvec: length mismatch");
        const SectorPartition& part = d_->part;
        const int m = rows(), n = cols();
        cvec xs(m);
        for (int p = 0; p < m; ++p) xs[p] = x[part.s_order[p]];
        cvec ys(n, cplx(0.0));
        std::uint64_t ops = 0;

        for (const LeafBand& b : d_->bands) {
            const int w = b.col_end - b.col_begin;
            for (std::size_t i = 0; i < b.rows.size(); ++i) {
                cplx xv = xs[b.rows[i]];
                for (int j = 0; j < w; ++j) ys[b.col_begin + j] += b.entries(i, j) * xv;
            }
            ops += b.rows.size() * std::size_t(w);
        }
        cvec tmp;
        for (const HssPiece& p : d_->pieces) {
            const int w = p.col_end - p.col_begin;
            if (p.factored()) {
                const int r = p.length();
                tmp.assign(r, cplx(0.0));
                for (std::size_t i = 0; i < p.rows.size(); ++i) {
                    cplx xv = xs[p.rows[i]];
                    for (int v = 0; v < r; ++v) tmp[v] += p.f_factor(i, v) * xv;
                }
                for (int j = 0; j < w; ++j) {
                    cplx acc = 0.0;
                    for (int v = 0; v < r; ++v) acc += p.g_factor(j, v) * tmp[v];
                    ys[p.col_begin + j] += acc;
                }
                ops += std::size_t(r) * (w + p.rows.size());
            } else {
                for (std::size_t i = 0; i < p.rows.size(); ++i) {
                    cplx xv = xs[p.rows[i]];
                    for (int j = 0; j < w; ++j) ys[p.col_begin + j] += p.f_factor(i, j) * xv;
                }
                ops += p.rows.size() * std::size_t(w);
            }
        }
        add_flops(ops);
        cvec y(n);
        for (int p = 0; p < n; ++p) y[part.t_order[p]] = ys[p];
        return y;
    }

    detail::SolverSlot& solver_slot() const { return *solver_; }

    friend ExtendedHssMatrix build_extended_hss(const CVMatrix&, int, const HssTarget&);

  private:
    std::shared_ptr<const detail::HssData> d_ = std::make_shared<detail::HssData>();
    std::shared_ptr<std::atomic<std::uint64_t>> flops_ =
        std::make_shared<std::atomic<std::uint64_t>>(0);
    std::shared_ptr<detail::SolverSlot> solver_ =
        std::make_shared<detail::SolverSlot>();
};

namespace detail {

// Sorted row positions of the cyclic sector run [a, b); wraps modulo k.
inline std::vector<int> run_rows(const SectorPartition& part, int a, int b) {
    const int k = part.k;
    std::vector<int> rows;
    auto push = [&](int qa, int qb) {   // plain run [qa, qb)
        for (int p = part.s_offsets[qa]; p < part.s_offsets[qb]; ++p) rows.push_back(p);
    };
    a = ((a % k) + k) % k;
    b = ((b % k) + k) % k;
    if (a < b) push(a, b);
    else { push(a, k); push(0, b); }   // a == b never occurs here
    return rows;
}

// Rows of the run [a1, b1) with the cyclic subrun [a2, b2) removed,
// preserving walk order within each remaining stretch.
inline std::vector<int> run_rows_minus(const SectorPartition& part, int a1, int b1,
                                       int a2, int b2) {
    const int k = part.k;
    auto norm = [&](int q) { return ((q % k) + k) % k; };
    a1 = norm(a1); b1 = norm(b1); a2 = norm(a2); b2 = norm(b2);
    auto inside = [&](int q, int a, int b) {
        return (a < b) ? (q >= a && q < b) : (q >= a || q < b);
    };
    std::vector<int> rows;
    const int len = (b1 - a1 + k) % k;
    for (int step = 0; step < len; ++step) {
        const int q = (a1 + step) % k;
        if (!inside(q, a2, b2))
            for (int p = part.s_offsets[q]; p < part.s_offsets[q + 1]; ++p)
                rows.push_back(p);
    }
    return rows;
}

} // namespace detail

inline ExtendedHssMatrix build_extended_hss(const CVMatrix& m, int k,
                                            const HssTarget& target) {
    auto data = std::make_shared<detail::HssData>();
    detail::HssData& d = *data;
    d.part = build_partition(m.knots_s(), m.f(), m.cols(), k);
    d.tree = make_merge_tree(k);

    const SectorPartition& part = d.part;
    d.s_sorted.resize(part.rows());
    for (int p = 0; p < part.rows(); ++p) d.s_sorted[p] = m.knots_s()[part.s_order[p]];
    d.t_sorted.resize(part.cols);
    for (int p = 0; p < part.cols; ++p) d.t_sorted[p] = m.knot_t(part.t_order[p]);

    auto kernel = [&](int rowpos, int colpos) {
        const cplx diff = d.s_sorted[rowpos] - d.t_sorted[colpos];
        if (diff == cplx(0.0))
            throw SingularEntry("build_extended_hss: coinciding knots");
        return 1.0 / diff;
    };

    // exact three-sector bands per column sector
    d.bands.reserve(k);
    for (int q = 0; q < k; ++q) {
        LeafBand b;
        b.sector = q;
        b.col_begin = part.t_offsets[q];
        b.col_end = part.t_offsets[q + 1];
        b.rows = detail::run_rows(part, q - 1, q + 2);
        b.entries = DenseMatrix(b.rows.size(), std::size_t(b.col_end - b.col_begin));
        for (std::size_t i = 0; i < b.rows.size(); ++i)
            for (int j = b.col_begin; j < b.col_end; ++j)
                b.entries(i, j - b.col_begin) = kernel(b.rows[i], j);
        d.bands.push_back(std::move(b));
    }

    // locally admissible blocks, leaf level up to the eight-group top
    for (int lev = 0; lev <= d.tree.levels; ++lev) {
        const int width = d.tree.group_width(lev);
        const int groups = d.tree.groups_at(lev);
        for (int g = 0; g < groups; ++g) {
            HssPiece piece;
            piece.level = lev;
            piece.group = g;
            piece.col_begin = part.t_offsets[g * width];
            piece.col_end = part.t_offsets[(g + 1) * width];
            if (lev == d.tree.levels) {
                // complement of the own band
                piece.rows = detail::run_rows(part, (g + 2) * width, (g - 1) * width);
            } else {
                const int pw = 2 * width, pg = g >> 1;
                piece.rows = detail::run_rows_minus(part, (pg - 1) * pw, (pg + 2) * pw,
                                                    (g - 1) * width, (g + 2) * width);
            }
            if (piece.rows.empty() || piece.col_end == piece.col_begin) continue;

            const double a0 = part.sector_angle(g * width);
            const double a1 = part.sector_angle((g + 1) * width);
            piece.center = std::polar(1.0, (a0 + a1) / 2.0);

            cvec s_far(piece.rows.size());
            for (std::size_t i = 0; i < s_far.size(); ++i)
                s_far[i] = d.s_sorted[piece.rows[i]];
            cvec t_arc(d.t_sorted.begin() + piece.col_begin,
                       d.t_sorted.begin() + piece.col_end);

            double tmax = 0.0;
            for (const cplx& t : t_arc) tmax = std::max(tmax, std::abs(t - piece.center));
            double smin = std::numeric_limits<double>::infinity();
            for (const cplx& s : s_far) smin = std::min(smin, std::abs(s - piece.center));
            const double theta = tmax / smin;

            int rho;
            if (target.kind == HssTarget::Kind::fixed_rho) rho = target.rho;
            else rho = rho_for_tolerance(theta, smin, target.xi);

            const int cap = int(std::min(piece.rows.size(), t_arc.size()));
            if (rho > cap) {
                // tolerance unreachable within the block's dimensions: store
                // the entries exactly instead of certifying a worse bound
                piece.theta = theta;
                piece.delta = smin;
                piece.error_bound = 0.0;
                piece.f_factor = DenseMatrix(piece.rows.size(), t_arc.size());
                for (std::size_t i = 0; i < piece.rows.size(); ++i)
                    for (int j = piece.col_begin; j < piece.col_end; ++j)
                        piece.f_factor(i, j - piece.col_begin) = kernel(piece.rows[i], j);
            } else {
                LowRankBlock blk = admissible_generators(s_far, t_arc, piece.center, rho);
                piece.theta = blk.theta;
                piece.delta = blk.delta;
                piece.error_bound = blk.error_bound;
                piece.f_factor = std::move(blk.f_factor);
                piece.g_factor = std::move(blk.g_factor);
            }
            d.xi = std::max(d.xi, piece.error_bound);
            if (piece.factored()) d.max_len = std::max(d.max_len, piece.length());
            d.pieces.push_back(std::move(piece));
        }
    }

    ExtendedHssMatrix h;
    h.d_ = std::move(data);
    return h;
}

inline cvec hss_matvec(const ExtendedHssMatrix& h, const cvec& x) { return h.matvec(x); }
inline std::uint64_t flops(const ExtendedHssMatrix& h) { return h.flops(); }

} // namespace cvhss

#endif
