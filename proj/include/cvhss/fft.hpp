// cvhss: radix-2 FFT.
//
// Sign convention: forward applies y_k = sum_j x_j w^{jk} with
// w = exp(2*pi*i/n) (positive exponent, unnormalized); inverse applies the
// conjugate transform scaled by 1/n. The unitary DFT matrix used by the
// Vandermonde factorizations is forward / sqrt(n).

#ifndef CVHSS_FFT_HPP
#define CVHSS_FFT_HPP

#include <cmath>
#include <stdexcept>

#include "cvhss/core.hpp"

namespace cvhss {

enum class FftDirection { forward, inverse };

constexpr bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

inline cvec fft(cvec x, FftDirection dir) {
    const std::size_t n = x.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft: length must be a power of two");
    if (n <= 1) return x;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }

    const double sign = (dir == FftDirection::forward) ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / double(len);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                // Direct twiddle evaluation; keeps rounding flat across stages.
                cplx w = std::polar(1.0, ang * double(k));
                cplx u = x[i + k];
                cplx v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
            }
        }
    }
    if (dir == FftDirection::inverse)
        for (cplx& z : x) z /= double(n);
    return x;
}

} // namespace cvhss

#endif
