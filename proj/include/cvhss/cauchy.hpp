// cvhss: Cauchy matrices on roots-of-unity column knots.
//
// C(i, j) = 1 / (s_i - t_j) with t_j = f * w^j, w = exp(2*pi*i/n), |f| = 1.
// The geometric-series expansion of the kernel around an arc center c gives
// the analytic low-rank generators for well-separated blocks:
//   1/(s - t) = sum_{v<rho} (t - c)^v / (s - c)^{v+1}  +  tail,
//   |tail| <= theta^rho / ((1 - theta) * delta),
// where theta = max|t - c| / min|s - c| < 1 and delta = min|s - c|.

#ifndef CVHSS_CAUCHY_HPP
#define CVHSS_CAUCHY_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cvhss/core.hpp"
#include "cvhss/dense.hpp"
#include "cvhss/errors.hpp"

namespace cvhss {

class CVMatrix {
  public:
    CVMatrix(cvec s, cplx f, int n) : s_(std::move(s)), f_(f), n_(n) {
        if (n_ < 1) throw std::invalid_argument("CVMatrix: need n >= 1");
        if (s_.empty()) throw std::invalid_argument("CVMatrix: empty row knots");
        require_finite(s_, "CVMatrix row knots");
        if (std::abs(std::abs(f_) - 1.0) > 1e-12)
            throw std::invalid_argument("CVMatrix: |f| must be 1");
    }

    int rows() const { return int(s_.size()); }
    int cols() const { return n_; }
    cplx f() const { return f_; }
    cplx omega() const { return std::polar(1.0, 2.0 * M_PI / double(n_)); }
    const cvec& knots_s() const { return s_; }

    cplx knot_t(int j) const {
        return f_ * std::polar(1.0, 2.0 * M_PI * double(j) / double(n_));
    }

    cplx entry(int i, int j) const {
        const cplx d = s_[i] - knot_t(j);
        if (d == cplx(0.0))
            throw SingularEntry("CVMatrix: row knot " + std::to_string(i) +
                                " coincides with column knot " + std::to_string(j));
        return 1.0 / d;
    }

    DenseMatrix to_dense() const {
        DenseMatrix a(s_.size(), std::size_t(n_));
        for (int i = 0; i < rows(); ++i)
            for (int j = 0; j < n_; ++j) a(i, j) = entry(i, j);
        return a;
    }

  private:
    cvec s_;
    cplx f_;
    int n_;
};

inline cplx cv_entry(const CVMatrix& m, int i, int j) { return m.entry(i, j); }

struct ChooseFResult {
    cplx f{1.0, 0.0};
    double min_gap = 0.0;      // achieved min_i |s_i^n - f^n|
    bool met_guarantee = false;   // min_gap >= 1/(2n)
};

namespace detail {

inline cplx ipow(cplx z, long long e) {
    cplx acc{1.0, 0.0};
    while (e > 0) {
        if (e & 1) acc *= z;
        z *= z;
        e >>= 1;
    }
    return acc;
}

} // namespace detail

// Scans candidate angles pi*(2l+1)/(n*num_candidates); every candidate has
// f^n on the unit circle away from 1, and the scan keeps the candidate
// maximizing the distance from f^n to every s_i^n. For knots in the closed
// unit disc the winner clears 1/(2n); outside that regime the best candidate
// is still returned with met_guarantee = false.
inline ChooseFResult choose_f(const cvec& s, int n, int num_candidates) {
    if (n < 1 || num_candidates < 1)
        throw std::invalid_argument("choose_f: need n >= 1 and candidates >= 1");
    require_finite(s, "choose_f knots");
    cvec spow(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) spow[i] = detail::ipow(s[i], n);

    ChooseFResult best;
    best.min_gap = -1.0;
    for (int l = 0; l < num_candidates; ++l) {
        const double ang = M_PI * double(2 * l + 1) / (double(n) * num_candidates);
        const cplx fn = std::polar(1.0, ang * double(n));
        double gap = std::numeric_limits<double>::infinity();
        for (const cplx& sp : spow) gap = std::min(gap, std::abs(sp - fn));
        if (gap > best.min_gap) {
            best.min_gap = gap;
            best.f = std::polar(1.0, ang);
        }
    }
    if (best.min_gap <= 0.0)
        throw ChooseFFailed("choose_f: every candidate collides with a knot power");
    best.met_guarantee = best.min_gap >= 1.0 / (2.0 * double(n));
    return best;
}

// Factored admissible block: approx = f_factor * g_factor^T, with a certified
// entrywise error bound. rank 0 with error_bound 0 marks an exactly stored
// block (g_factor empty, f_factor holding the entries).
struct LowRankBlock {
    DenseMatrix f_factor;   // |s_far| x rho, column v holds 1/(s - c)^{v+1}
    DenseMatrix g_factor;   // |t_arc| x rho, column v holds (t - c)^v
    double error_bound = 0.0;
    cplx center{0.0, 0.0};
    double theta = 0.0;   // measured separation ratio
    double delta = 0.0;   // measured min |s - c|
    int rank() const { return int(f_factor.cols()); }
};

inline double generator_tail_bound(double theta, double delta, int rho) {
    return std::pow(theta, rho) / ((1.0 - theta) * delta);
}

// Smallest rho with tail bound <= xi; INT_MAX when theta makes xi unreachable
// in a sane range.
inline int rho_for_tolerance(double theta, double delta, double xi) {
    if (!(theta > 0.0)) return 1;
    const double target = xi * (1.0 - theta) * delta;
    if (target >= theta) return 1;
    double r = std::log(target) / std::log(theta);
    if (!(r < 4096.0)) return std::numeric_limits<int>::max();
    return std::max(1, int(std::ceil(r)));
}

inline LowRankBlock admissible_generators(const cvec& s_far, const cvec& t_arc,
                                          cplx c, int rho) {
    if (rho < 1) throw std::invalid_argument("admissible_generators: rho >= 1");
    if (s_far.empty() || t_arc.empty())
        throw std::invalid_argument("admissible_generators: empty block");
    double tmax = 0.0;
    for (const cplx& t : t_arc) tmax = std::max(tmax, std::abs(t - c));
    double smin = std::numeric_limits<double>::infinity();
    for (const cplx& s : s_far) smin = std::min(smin, std::abs(s - c));
    const double theta = (smin > 0.0) ? tmax / smin : std::numeric_limits<double>::infinity();
    if (!(theta < 1.0))
        throw NotSeparated("admissible_generators: separation ratio " +
                           std::to_string(theta) + " >= 1");

    LowRankBlock blk;
    blk.center = c;
    blk.theta = theta;
    blk.delta = smin;
    blk.error_bound = generator_tail_bound(theta, smin, rho);
    blk.f_factor = DenseMatrix(s_far.size(), std::size_t(rho));
    for (std::size_t i = 0; i < s_far.size(); ++i) {
        const cplx w = 1.0 / (s_far[i] - c);
        cplx p = w;
        for (int v = 0; v < rho; ++v, p *= w) blk.f_factor(i, v) = p;
    }
    blk.g_factor = DenseMatrix(t_arc.size(), std::size_t(rho));
    for (std::size_t j = 0; j < t_arc.size(); ++j) {
        const cplx d = t_arc[j] - c;
        cplx p{1.0, 0.0};
        for (int v = 0; v < rho; ++v, p *= d) blk.g_factor(j, v) = p;
    }
    return blk;
}

// SVD truncation of an existing factored block at an absolute threshold.
// Never raises the rank; the certificate grows by the first discarded
// singular value (entrywise |.| <= spectral norm of the discarded part).
inline LowRankBlock recompress(const LowRankBlock& blk, double tol) {
    if (tol < 0.0) throw std::invalid_argument("recompress: negative tolerance");
    if (blk.rank() == 0) return blk;
    DenseMatrix prod = matmul_bt(blk.f_factor, blk.g_factor);
    RankFactors rf = rank_factor(prod, tol, TolMode::absolute);
    if (rf.rank >= blk.rank()) return blk;   // nothing gained
    LowRankBlock out;
    out.center = blk.center;
    out.theta = blk.theta;
    out.delta = blk.delta;
    out.error_bound = blk.error_bound + rf.discarded;
    out.f_factor = std::move(rf.f);
    out.g_factor = std::move(rf.g);
    return out;
}

} // namespace cvhss

#endif
