#include "stratlab/field.hpp"

#include <cmath>

namespace stratlab {

void zero_nyquist(const Grid3& g, scalar_data& f) {
    if (g.n % 2 != 0) return;
    const std::size_t h = g.n / 2;
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) {
            f[g.index(h, i, j)] = 0.0;
            f[g.index(i, h, j)] = 0.0;
            f[g.index(i, j, h)] = 0.0;
        }
}

void zero_nyquist(SpectralField4& f) {
    for (auto& c : f.comp) zero_nyquist(f.grid, c);
}

void enforce_hermitian(const Grid3& g, scalar_data& f) {
    const std::size_t n = g.n;
    auto mirror = [n](std::size_t i) { return i == 0 ? 0 : n - i; };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l) {
                const std::size_t a = g.index(i, j, l);
                const std::size_t b = g.index(mirror(i), mirror(j), mirror(l));
                if (b < a) continue;  // handle each pair once
                const complex_t avg =
                    0.5 * (f[a] + std::conj(f[b]));
                f[a] = avg;
                f[b] = std::conj(avg);
            }
    zero_nyquist(g, f);
}

void enforce_hermitian(SpectralField4& f) {
    for (auto& c : f.comp) enforce_hermitian(f.grid, c);
}

double hermitian_defect(const Grid3& g, const scalar_data& f) {
    const std::size_t n = g.n;
    auto mirror = [n](std::size_t i) { return i == 0 ? 0 : n - i; };
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l) {
                const complex_t d =
                    f[g.index(i, j, l)] -
                    std::conj(f[g.index(mirror(i), mirror(j), mirror(l))]);
                worst = std::max(worst, std::abs(d));
            }
    return worst;
}

}  // namespace stratlab
