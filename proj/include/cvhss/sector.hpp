// cvhss: sector geometry on the unit circle.
//
// The plane is cut into k congruent sectors bounded by the rays at angles
// 2*pi*q/k. Column knots t_j = f * w^j (w = exp(2*pi*i/n), |f| = 1) fall on
// the unit circle; row knots may lie anywhere finite. Each sector's arc
// center is the midpoint of its unit-circle arc. Buckets are half-open on
// the leading ray, and knots are globally ordered by angle with the applied
// permutation recorded.

#ifndef CVHSS_SECTOR_HPP
#define CVHSS_SECTOR_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "cvhss/core.hpp"
#include "cvhss/fft.hpp"

namespace cvhss {

struct SectorPartition {
    int k = 0;                       // sector count (power of two)
    int cols = 0;                    // number of column knots t_j
    cplx f{1.0, 0.0};

    // sorted-position bookkeeping: order[pos] = original index, and sector q
    // owns the contiguous position range [offsets[q], offsets[q+1]).
    std::vector<int> s_order, t_order;
    std::vector<int> s_offsets, t_offsets;

    int rows() const { return int(s_order.size()); }
    int s_bucket_size(int q) const { return s_offsets[q + 1] - s_offsets[q]; }
    int t_bucket_size(int q) const { return t_offsets[q + 1] - t_offsets[q]; }

    double sector_angle(int q) const { return 2.0 * M_PI * double(q) / double(k); }
    double arc_width() const { return 2.0 * M_PI / double(k); }

    // Midpoint of sector q's unit-circle arc.
    cplx center(int q) const {
        return std::polar(1.0, sector_angle(q) + M_PI / double(k));
    }
};

namespace detail {

inline double angle_in_turn(const cplx& z) {
    double a = std::atan2(z.imag(), z.real());
    if (a < 0.0) a += 2.0 * M_PI;
    return a;
}

inline int bucket_of_angle(double angle, int k) {
    int q = int(std::floor(angle * double(k) / (2.0 * M_PI)));
    return std::clamp(q, 0, k - 1);
}

} // namespace detail

// Bucketing with no separation guarantee; any power-of-two k >= 2 goes. The
// t-knot buckets are computed by exact index arithmetic so that equispaced
// knots never straddle a ray through rounding.
inline SectorPartition bucket_partition(const cvec& s, cplx f, int n, int k) {
    if (k < 2 || !is_pow2(std::size_t(k)))
        throw std::invalid_argument("bucket_partition: k must be a power of two >= 2");
    if (n < 1) throw std::invalid_argument("bucket_partition: empty column knot set");
    if (s.empty()) throw std::invalid_argument("bucket_partition: empty row knot set");
    require_finite(s, "bucket_partition row knots");
    if (std::abs(std::abs(f) - 1.0) > 1e-12)
        throw std::invalid_argument("bucket_partition: |f| must be 1");

    SectorPartition part;
    part.k = k;
    part.cols = n;
    part.f = f;

    const int m = int(s.size());
    std::vector<double> sang(m);
    for (int i = 0; i < m; ++i) sang[i] = detail::angle_in_turn(s[i]);
    part.s_order.resize(m);
    std::iota(part.s_order.begin(), part.s_order.end(), 0);
    std::stable_sort(part.s_order.begin(), part.s_order.end(),
                     [&](int a, int b) { return sang[a] < sang[b]; });

    part.s_offsets.assign(k + 1, 0);
    for (int i = 0; i < m; ++i)
        ++part.s_offsets[detail::bucket_of_angle(sang[i], k) + 1];
    for (int q = 0; q < k; ++q) part.s_offsets[q + 1] += part.s_offsets[q];

    // t_j sits at angle arg(f) + 2*pi*j/n. Write j*k/n = a + b/n with integer
    // a = (j*k)/n and b = (j*k) mod n; the bucket shift from f is the only
    // floating-point part.
    const double fshift = detail::angle_in_turn(f) * double(k) / (2.0 * M_PI);
    std::vector<int> tbucket(n);
    part.t_offsets.assign(k + 1, 0);
    for (int j = 0; j < n; ++j) {
        long long jk = (long long)j * k;
        long long a = jk / n, b = jk % n;
        int q = int((a + (long long)std::floor(fshift + double(b) / double(n))) % k);
        tbucket[j] = q;
        ++part.t_offsets[q + 1];
    }
    for (int q = 0; q < k; ++q) part.t_offsets[q + 1] += part.t_offsets[q];
    std::vector<int> cursor(part.t_offsets.begin(), part.t_offsets.end() - 1);
    part.t_order.resize(n);
    for (int j = 0; j < n; ++j) part.t_order[cursor[tbucket[j]]++] = j;
    // Bucket assignment above is authoritative; order within each bucket by
    // angle (for f = 1 this is already the case and the sort is a no-op).
    const double tstep = 2.0 * M_PI / double(n);
    const double f_angle = detail::angle_in_turn(f);
    auto tang = [&](int j) {
        double a = f_angle + tstep * double(j);
        return (a >= 2.0 * M_PI) ? a - 2.0 * M_PI : a;
    };
    for (int q = 0; q < k; ++q)
        std::stable_sort(part.t_order.begin() + part.t_offsets[q],
                         part.t_order.begin() + part.t_offsets[q + 1],
                         [&](int a, int b) { return tang(a) < tang(b); });
    return part;
}

// Validated partition for the hierarchical machinery. k >= 12 keeps every
// three-sector neighborhood inside a quarter turn, which is what the
// closed-form separation parameters assume.
inline SectorPartition build_partition(const cvec& s, cplx f, int n, int k) {
    if (k < 12) throw std::invalid_argument("build_partition: k must be >= 12");
    if (!is_pow2(std::size_t(k)))
        throw std::invalid_argument("build_partition: k must be a power of two");
    if (n / k < 2) throw std::invalid_argument("build_partition: need n/k >= 2");
    return bucket_partition(s, f, n, k);
}

struct SeparationParams {
    int k = 0;
    double theta = 0.0;       // chord radius over exterior distance
    double delta_min = 0.0;   // distance from an arc center to its far zone
};

// theta = 2 sin(pi/(2k)) / sin(3 pi/k) decreases to 1/3 as k grows.
inline SeparationParams separation_params(int k) {
    if (k < 12) throw std::invalid_argument("separation_params: k must be >= 12");
    SeparationParams p;
    p.k = k;
    p.delta_min = std::sin(3.0 * M_PI / double(k));
    p.theta = 2.0 * std::sin(M_PI / (2.0 * double(k))) / p.delta_min;
    return p;
}

struct ChordAndDistance {
    double chord = 0.0;   // |center - arc endpoint|
    double distance = 0.0;   // from center to the complement of the guard sector
};

// Arc A(phi, phi') with center angle eta inside guard sector (chi, chi');
// all five angles within a quarter turn, ordered
// 0 <= chi <= phi <= eta < phi' < chi' <= pi/2 (rotate general inputs first).
inline ChordAndDistance chord_and_sector_distance(double chi, double phi, double eta,
                                                  double phi_p, double chi_p) {
    if (!(0.0 <= chi && chi <= phi && phi <= eta && eta < phi_p && phi_p < chi_p &&
          chi_p <= M_PI / 2.0 + 1e-12))
        throw std::invalid_argument("chord_and_sector_distance: angles out of range");
    ChordAndDistance out;
    out.chord = 2.0 * std::sin((eta - phi) / 2.0);
    out.distance = std::sin(std::min(eta - chi, chi_p - eta));
    return out;
}

// Radius of the disc around the arc midpoint that keeps the chord/distance
// ratio at theta: r = (2/theta) sin((phi' - phi)/4).
inline double disc_separation_radius(double phi, double phi_p, double theta) {
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("disc_separation_radius: theta must be in (0,1)");
    if (!(0.0 <= phi && phi <= phi_p && phi_p <= 2.0 * M_PI + 1e-12))
        throw std::invalid_argument("disc_separation_radius: bad arc");
    return 2.0 / theta * std::sin((phi_p - phi) / 4.0);
}

} // namespace cvhss

#endif
