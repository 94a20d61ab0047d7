// Four-component spectral state (v1, v2, v3, theta) on a Grid3.

#pragma once

#include <array>
#include <cassert>

#include "stratlab/grid.hpp"

namespace stratlab {

struct SpectralField4 {
    Grid3 grid;
    std::array<scalar_data, 4> comp;

    SpectralField4() = default;
    explicit SpectralField4(const Grid3& g) : grid(g) {
        for (auto& c : comp) c.assign(g.size(), complex_t(0.0, 0.0));
    }

    void set_zero() {
        for (auto& c : comp)
            for (auto& z : c) z = complex_t(0.0, 0.0);
    }
};

inline SpectralField4& operator+=(SpectralField4& a, const SpectralField4& b) {
    assert(a.grid == b.grid);
    for (int c = 0; c < 4; ++c)
        for (std::size_t m = 0; m < a.comp[c].size(); ++m) a.comp[c][m] += b.comp[c][m];
    return a;
}

inline SpectralField4& operator-=(SpectralField4& a, const SpectralField4& b) {
    assert(a.grid == b.grid);
    for (int c = 0; c < 4; ++c)
        for (std::size_t m = 0; m < a.comp[c].size(); ++m) a.comp[c][m] -= b.comp[c][m];
    return a;
}

inline SpectralField4& operator*=(SpectralField4& a, double s) {
    for (auto& c : a.comp)
        for (auto& z : c) z *= s;
    return a;
}

// a += s * b
inline void axpy(SpectralField4& a, double s, const SpectralField4& b) {
    assert(a.grid == b.grid);
    for (int c = 0; c < 4; ++c)
        for (std::size_t m = 0; m < a.comp[c].size(); ++m) a.comp[c][m] += s * b.comp[c][m];
}

// Zero the modes a conjugate-symmetric real field cannot represent
// (the unpaired n/2 frequency on even grids).
void zero_nyquist(SpectralField4& f);
void zero_nyquist(const Grid3& g, scalar_data& f);

// Force exact conjugate symmetry f(-k) = conj(f(k)) by averaging pairs.
void enforce_hermitian(const Grid3& g, scalar_data& f);
void enforce_hermitian(SpectralField4& f);

// Largest |f(-k) - conj(f(k))| over retained modes (diagnostic).
double hermitian_defect(const Grid3& g, const scalar_data& f);

}  // namespace stratlab
