// Periodic grid bookkeeping for pseudo-spectral work on [0, L)^3.
//
// Fourier modes are indexed storage-major as (i, j, l) with the third index
// fastest; the signed integer frequency attached to storage index i is
// i for i <= n/2 and i - n otherwise (standard FFT layout).  Physical
// wavenumbers carry the 2*pi/L factor so that a coefficient at integer
// frequency k multiplies exp(i * (2*pi/L) * k . x).

#pragma once

#include <cassert>
#include <complex>
#include <cstddef>
#include <vector>

namespace stratlab {

using complex_t = std::complex<double>;

struct Grid3 {
    std::size_t n = 0;          // points per axis
    double box_length = 0.0;    // L, same in all three directions

    std::size_t size() const { return n * n * n; }

    std::size_t index(std::size_t i, std::size_t j, std::size_t l) const {
        return (i * n + j) * n + l;
    }

    // signed integer frequency for storage index i (|k| <= n/2)
    long freq(std::size_t i) const {
        return i <= n / 2 ? static_cast<long>(i)
                          : static_cast<long>(i) - static_cast<long>(n);
    }

    // storage index holding integer frequency k
    std::size_t storage(long k) const {
        return k >= 0 ? static_cast<std::size_t>(k)
                      : static_cast<std::size_t>(k + static_cast<long>(n));
    }

    double wavenumber(long k) const {
        return 2.0 * 3.14159265358979323846 * static_cast<double>(k) / box_length;
    }

    // The n/2 frequency of an even grid has no conjugate partner; it is
    // kept identically zero so every retained mode has one.
    bool is_nyquist(std::size_t i) const { return n % 2 == 0 && i == n / 2; }

    double dx() const { return box_length / static_cast<double>(n); }
};

inline bool operator==(const Grid3& a, const Grid3& b) {
    return a.n == b.n && a.box_length == b.box_length;
}

// One scalar field, spectral or physical values, n^3 entries.
using scalar_data = std::vector<complex_t>;

inline scalar_data make_scalar(const Grid3& g) { return scalar_data(g.size()); }

}  // namespace stratlab
