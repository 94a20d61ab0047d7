#include "stratlab/projectors.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stratlab {

namespace {

// solve a 3x3 complex system in place by Gaussian elimination with partial
// pivoting; small enough that a library routine would be overkill
std::array<complex_t, 3> solve3(std::array<std::array<complex_t, 3>, 3> a,
                                std::array<complex_t, 3> b) {
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        assert(std::abs(a[col][col]) > 0.0);
        for (int r = col + 1; r < 3; ++r) {
            const complex_t f = a[r][col] / a[col][col];
            for (int c = col; c < 3; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::array<complex_t, 3> x{};
    for (int r = 2; r >= 0; --r) {
        complex_t acc = b[r];
        for (int c = r + 1; c < 3; ++c) acc -= a[r][c] * x[c];
        x[r] = acc / a[r][r];
    }
    return x;
}

}  // namespace

void leray_project(SpectralField4& f) {
    const Grid3& g = f.grid;
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j)
            for (std::size_t l = 0; l < g.n; ++l) {
                const double xi[3] = {g.wavenumber(g.freq(i)), g.wavenumber(g.freq(j)),
                                      g.wavenumber(g.freq(l))};
                const double k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
                if (k2 == 0.0) continue;  // mean velocity passes through
                const std::size_t m = g.index(i, j, l);
                const complex_t dot = xi[0] * f.comp[0][m] + xi[1] * f.comp[1][m] +
                                      xi[2] * f.comp[2][m];
                for (int c = 0; c < 3; ++c) f.comp[c][m] -= xi[c] * dot / k2;
            }
}

double divergence_defect(const SpectralField4& f) {
    const Grid3& g = f.grid;
    double worst = 0.0;
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j)
            for (std::size_t l = 0; l < g.n; ++l) {
                const double xi[3] = {g.wavenumber(g.freq(i)), g.wavenumber(g.freq(j)),
                                      g.wavenumber(g.freq(l))};
                const double k = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
                const std::size_t m = g.index(i, j, l);
                const complex_t dot = xi[0] * f.comp[0][m] + xi[1] * f.comp[1][m] +
                                      xi[2] * f.comp[2][m];
                worst = std::max(worst, std::abs(dot) / std::max(1.0, k));
            }
    return worst;
}

void horizontal_vorticity(const SpectralField4& f, scalar_data& omega) {
    const Grid3& g = f.grid;
    omega.assign(g.size(), complex_t(0.0));
    const complex_t iu(0.0, 1.0);
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) {
            const double xi1 = g.wavenumber(g.freq(i));
            const double xi2 = g.wavenumber(g.freq(j));
            for (std::size_t l = 0; l < g.n; ++l) {
                const std::size_t m = g.index(i, j, l);
                omega[m] = iu * (xi1 * f.comp[1][m] - xi2 * f.comp[0][m]);
            }
        }
}

void stratified_project(SpectralField4& f) {
    const Grid3& g = f.grid;
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) {
            const double xi1 = g.wavenumber(g.freq(i));
            const double xi2 = g.wavenumber(g.freq(j));
            const double kh2 = xi1 * xi1 + xi2 * xi2;
            for (std::size_t l = 0; l < g.n; ++l) {
                const std::size_t m = g.index(i, j, l);
                if (kh2 == 0.0) {
                    // swirl direction undefined on the line; the whole mode
                    // counts as oscillating so the split stays exact
                    for (int c = 0; c < 4; ++c) f.comp[c][m] = complex_t(0.0);
                    continue;
                }
                const double kh = std::sqrt(kh2);
                const complex_t swirl =
                    (-xi2 * f.comp[0][m] + xi1 * f.comp[1][m]) / kh;
                f.comp[0][m] = -xi2 / kh * swirl;
                f.comp[1][m] = xi1 / kh * swirl;
                f.comp[2][m] = complex_t(0.0);
                f.comp[3][m] = complex_t(0.0);
            }
        }
}

StratOscSplit split_stratified_osc(const SpectralField4& f) {
    StratOscSplit out{f, f};
    stratified_project(out.stratified);
    out.oscillating -= out.stratified;
    return out;
}

WaveProjection wave_project(const SpectralField4& f, const PhysicsParams& par, int k) {
    assert(k >= 2 && k <= 4);
    const Grid3& g = f.grid;
    WaveProjection out{SpectralField4(g), 1.0};
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j)
            for (std::size_t l = 0; l < g.n; ++l) {
                const std::array<double, 3> xi = {g.wavenumber(g.freq(i)),
                                                  g.wavenumber(g.freq(j)),
                                                  g.wavenumber(g.freq(l))};
                if (xi[0] * xi[0] + xi[1] * xi[1] == 0.0) continue;  // degenerate line
                const std::size_t m = g.index(i, j, l);
                complex_t fm[4];
                double mag2 = 0.0;
                for (int c = 0; c < 4; ++c) {
                    fm[c] = f.comp[c][m];
                    mag2 += std::norm(fm[c]);
                }
                if (mag2 == 0.0) continue;
                const ModeEigensystem sys = eigen_closed_form(xi, par);
                out.max_cond = std::max(out.max_cond, sys.cond);
                if (sys.cond > 1e8)
                    throw std::runtime_error(
                        "wave_project: eigenbasis condition " + std::to_string(sys.cond) +
                        " beyond 1e8 at mode (" + std::to_string(g.freq(i)) + "," +
                        std::to_string(g.freq(j)) + "," + std::to_string(g.freq(l)) + ")");
                // expand fhat over {V2, V3, V4} in coordinates of the real
                // orthonormal frame {V2, e_w, e_theta} of the div-free +
                // buoyancy subspace; any residual along xi itself is dropped,
                // which is exactly the Leray part
                const double kn = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
                const double kh = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1]);
                const double ew[3] = {xi[0] * xi[2] / (kn * kh), xi[1] * xi[2] / (kn * kh),
                                      -kh / kn};
                std::array<std::array<complex_t, 3>, 3> basis{};
                std::array<complex_t, 3> rhs{};
                rhs[0] = sys.V2[0] * fm[0] + sys.V2[1] * fm[1];  // V2 real, horizontal
                rhs[1] = ew[0] * fm[0] + ew[1] * fm[1] + ew[2] * fm[2];
                rhs[2] = fm[3];
                basis[0] = {complex_t(1.0), complex_t(0.0), complex_t(0.0)};
                basis[1] = {complex_t(0.0), ew[0] * sys.V3[0] + ew[1] * sys.V3[1] + ew[2] * sys.V3[2],
                            ew[0] * sys.V4[0] + ew[1] * sys.V4[1] + ew[2] * sys.V4[2]};
                basis[2] = {complex_t(0.0), sys.V3[3], sys.V4[3]};
                const std::array<complex_t, 3> a = solve3(basis, rhs);
                const complex_t ak = a[k - 2];
                const vec4c& vk = (k == 2) ? sys.V2 : (k == 3) ? sys.V3 : sys.V4;
                for (int c = 0; c < 4; ++c) out.part.comp[c][m] = ak * vk[c];
            }
    return out;
}

}  // namespace stratlab
