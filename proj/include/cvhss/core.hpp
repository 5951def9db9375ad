// cvhss: scalar/vector/matrix building blocks and the seedable RNG.
//
// Conventions used throughout the library:
//   * complex double precision everywhere, row-major dense storage;
//   * one flop unit = one complex multiply-add;
//   * vectors holding knots or data entering a structured operation must be
//     finite; routines that deliberately produce overflow garbage (the
//     slowly-dying baselines) return plain vectors that are never validated.

#ifndef CVHSS_CORE_HPP
#define CVHSS_CORE_HPP

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvhss/errors.hpp"

namespace cvhss {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

inline void require_finite(const cvec& v, const char* what) {
    for (const cplx& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument(std::string(what) + ": non-finite entry");
}

// Row-major dense matrix. Construction fixes the shape; entries start at zero.
class DenseMatrix {
  public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }

    bool empty() const { return rows_ == 0 || cols_ == 0; }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    cvec a_;
};

// Global tally of dense matvec work, used as the quadratic contrast against
// the structured operator counters.
inline std::atomic<std::uint64_t>& dense_op_counter() {
    static std::atomic<std::uint64_t> c{0};
    return c;
}
inline void reset_dense_ops() { dense_op_counter().store(0); }
inline std::uint64_t dense_ops() { return dense_op_counter().load(); }

inline cvec dense_matvec(const DenseMatrix& a, const cvec& x) {
    if (x.size() != a.cols())
        throw std::invalid_argument("dense_matvec: shape mismatch");
    cvec y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx acc = 0.0;
        const cplx* row = a.data() + i * a.cols();
        for (std::size_t j = 0; j < a.cols(); ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
    dense_op_counter().fetch_add(std::uint64_t(a.rows()) * a.cols(),
                                 std::memory_order_relaxed);
    return y;
}

// Deterministic stream: mt19937_64 plus hand-rolled mappings. The standard
// fixes the engine's output sequence, but not the distributions', so the
// mappings below are spelled out to keep runs byte-identical across
// standard libraries.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), eng_(seed) {}

    // Independent substream addressed by (cell, trial); mixing is splitmix64.
    static RngStream derived(std::uint64_t seed, std::uint64_t cell, std::uint64_t trial = 0) {
        std::uint64_t x = seed;
        x = mix(x ^ (0x9e3779b97f4a7c15ULL + cell));
        x = mix(x ^ (0xbf58476d1ce4e5b9ULL + trial));
        return RngStream(x);
    }

    std::uint64_t seed() const { return seed_; }
    static const char* algorithm() { return "mt19937_64 + 53-bit uniform + Box-Muller"; }

    // Uniform on [0, 1).
    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] keeps the log finite.
        double u1 = 1.0 - uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double ang = 2.0 * M_PI * u2;
        spare_ = r * std::sin(ang);
        have_spare_ = true;
        return r * std::cos(ang);
    }

    // Independent real and imaginary Gaussian parts.
    cplx gaussian_cplx() {
        double re = gaussian();
        double im = gaussian();
        return {re, im};
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline double rng_uniform(RngStream& g, double a, double b) { return g.uniform(a, b); }
inline double rng_gaussian(RngStream& g) { return g.gaussian(); }

} // namespace cvhss

#endif
