#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <random>
#include <vector>

#include "stratlab/checkpoint.hpp"
#include "stratlab/csv.hpp"
#include "stratlab/dyadic.hpp"
#include "stratlab/field.hpp"
#include "stratlab/fit.hpp"
#include "stratlab/grid.hpp"
#include "stratlab/norms.hpp"
#include "stratlab/projectors.hpp"
#include "stratlab/quadrature.hpp"
#include "stratlab/solver.hpp"
#include "stratlab/transform.hpp"

using namespace stratlab;

namespace {

Grid3 make_grid(std::size_t n, double L) {
    Grid3 g;
    g.n = n;
    g.box_length = L;
    return g;
}

// random band-limited real field: Gaussian draws on non-Nyquist modes,
// conjugate symmetry enforced
scalar_data random_real_field(const Grid3& g, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    scalar_data f(g.size());
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j)
            for (std::size_t l = 0; l < g.n; ++l) {
                if (g.is_nyquist(i) || g.is_nyquist(j) || g.is_nyquist(l)) continue;
                f[g.index(i, j, l)] = complex_t(nd(rng), nd(rng));
            }
    enforce_hermitian(g, f);
    return f;
}

SpectralField4 random_field4(const Grid3& g, unsigned seed) {
    SpectralField4 f(g);
    for (int c = 0; c < 4; ++c) f.comp[c] = random_real_field(g, seed + 97 * c);
    return f;
}

}  // namespace

TEST_CASE("grid frequency map round-trips and flags the unpaired mode") {
    const Grid3 g = make_grid(16, 2.0 * M_PI);
    for (std::size_t i = 0; i < g.n; ++i) {
        const long k = g.freq(i);
        CHECK(k >= -8);
        CHECK(k <= 8);
        CHECK(g.storage(k) == i);
    }
    CHECK(g.freq(0) == 0);
    CHECK(g.freq(8) == 8);
    CHECK(g.freq(9) == -7);
    CHECK(g.is_nyquist(8));
    CHECK(!g.is_nyquist(7));
    const Grid3 godd = make_grid(9, 1.0);
    for (std::size_t i = 0; i < godd.n; ++i) CHECK(!godd.is_nyquist(i));
    // wavenumber carries 2 pi / L
    const Grid3 gl = make_grid(8, 4.0);
    CHECK(gl.wavenumber(3) == doctest::Approx(2.0 * M_PI * 3.0 / 4.0).epsilon(1e-15));
}

TEST_CASE("transform analyzes a plane wave to a single unit coefficient") {
    const Grid3 g = make_grid(16, 3.0);
    SpectralTransform tr(g);
    const long k1 = 3, k2 = -5, k3 = 2;
    scalar_data phys(g.size());
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j)
            for (std::size_t l = 0; l < g.n; ++l) {
                const double arg = 2.0 * M_PI *
                                   (double(k1) * double(i) + double(k2) * double(j) +
                                    double(k3) * double(l)) /
                                   double(g.n);
                phys[g.index(i, j, l)] = std::polar(1.0, arg);
            }
    scalar_data spec(g.size());
    tr.to_spectral(phys, spec);
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j)
            for (std::size_t l = 0; l < g.n; ++l) {
                const complex_t want =
                    (g.freq(i) == k1 && g.freq(j) == k2 && g.freq(l) == k3)
                        ? complex_t(1.0)
                        : complex_t(0.0);
                CHECK(std::abs(spec[g.index(i, j, l)] - want) < 1e-13);
            }
}

TEST_CASE("transform round-trip is the identity to near machine precision") {
    const Grid3 g = make_grid(16, 2.0 * M_PI);
    SpectralTransform tr(g);
    const scalar_data f = random_real_field(g, 11);
    scalar_data phys(g.size()), back(g.size());
    tr.to_physical(f, phys);
    tr.to_spectral(phys, back);
    double worst = 0.0, scale = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m) {
        worst = std::max(worst, std::abs(back[m] - f[m]));
        scale = std::max(scale, std::abs(f[m]));
    }
    CHECK(worst <= 1e-13 * scale);
}

TEST_CASE("hermitian symmetry produces a real physical field") {
    const Grid3 g = make_grid(12, 2.0 * M_PI);
    SpectralTransform tr(g);
    scalar_data f = random_real_field(g, 3);
    CHECK(hermitian_defect(g, f) <= 1e-14);
    scalar_data phys(g.size());
    tr.to_physical(f, phys);
    double max_imag = 0.0, max_abs = 0.0;
    for (const complex_t& z : phys) {
        max_imag = std::max(max_imag, std::fabs(z.imag()));
        max_abs = std::max(max_abs, std::abs(z));
    }
    CHECK(max_imag <= 1e-13 * max_abs);

    // breaking the symmetry is detected, enforcing restores it
    f[g.index(1, 2, 3)] += complex_t(0.5, 0.25);
    CHECK(hermitian_defect(g, f) > 0.1);
    enforce_hermitian(g, f);
    CHECK(hermitian_defect(g, f) <= 1e-14);
}

TEST_CASE("zero_nyquist clears exactly the unpaired planes") {
    const Grid3 g = make_grid(8, 2.0 * M_PI);
    scalar_data f(g.size(), complex_t(1.0, -2.0));
    zero_nyquist(g, f);
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j)
            for (std::size_t l = 0; l < g.n; ++l) {
                const bool ny = g.is_nyquist(i) || g.is_nyquist(j) || g.is_nyquist(l);
                const complex_t z = f[g.index(i, j, l)];
                if (ny)
                    CHECK(std::abs(z) == 0.0);
                else
                    CHECK(std::abs(z - complex_t(1.0, -2.0)) == 0.0);
            }
}

TEST_CASE("norm_l2 matches both Parseval and collocation quadrature") {
    const Grid3 g = make_grid(16, 3.5);
    SpectralTransform tr(g);
    const scalar_data f = random_real_field(g, 21);

    double sum_sq = 0.0;
    for (const complex_t& z : f) sum_sq += std::norm(z);
    const double parseval = std::sqrt(std::pow(g.box_length, 3.0) * sum_sq);
    CHECK(norm_l2(g, f) == doctest::Approx(parseval).epsilon(1e-13));

    scalar_data phys(g.size());
    tr.to_physical(f, phys);
    double grid_sq = 0.0;
    for (const complex_t& z : phys) grid_sq += std::norm(z);
    const double cell = std::pow(g.box_length, 3.0) / double(g.size());
    CHECK(norm_l2(g, f) == doctest::Approx(std::sqrt(cell * grid_sq)).epsilon(1e-12));
}

TEST_CASE("norm_lq agrees with direct collocation sums and the sup norm") {
    const Grid3 g = make_grid(12, 2.0 * M_PI);
    SpectralTransform tr(g);
    SpectralField4 f = random_field4(g, 5);

    SpectralField4 phys(g);
    tr.to_physical(f, phys);
    const double cell = std::pow(g.box_length, 3.0) / double(g.size());
    double s4 = 0.0, smax = 0.0, s2 = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m) {
        double a2 = 0.0;
        for (int c = 0; c < 4; ++c) a2 += std::norm(phys.comp[c][m]);
        s4 += a2 * a2;
        s2 += a2;
        smax = std::max(smax, a2);
    }
    CHECK(norm_lq(tr, f, 4.0) ==
          doctest::Approx(std::pow(cell * s4, 0.25)).epsilon(1e-12));
    CHECK(norm_lq(tr, f, 2.0) ==
          doctest::Approx(std::sqrt(cell * s2)).epsilon(1e-12));
    CHECK(norm_lq(tr, f, norm_inf_index) ==
          doctest::Approx(std::sqrt(smax)).epsilon(1e-12));
    // L2 via the collocation path matches Parseval via the spectral path
    CHECK(norm_lq(tr, f, 2.0) == doctest::Approx(norm_l2(f)).epsilon(1e-12));
}

TEST_CASE("norm_hdot matches a direct mode sum at two smoothness orders") {
    const Grid3 g = make_grid(12, 5.0);
    const scalar_data f = random_real_field(g, 8);
    for (double s : {0.5, 1.0}) {
        double sum = 0.0;
        for (std::size_t i = 0; i < g.n; ++i)
            for (std::size_t j = 0; j < g.n; ++j)
                for (std::size_t l = 0; l < g.n; ++l) {
                    const double x1 = g.wavenumber(g.freq(i));
                    const double x2 = g.wavenumber(g.freq(j));
                    const double x3 = g.wavenumber(g.freq(l));
                    const double k2 = x1 * x1 + x2 * x2 + x3 * x3;
                    if (k2 == 0.0) continue;
                    sum += std::pow(k2, s) * std::norm(f[g.index(i, j, l)]);
                }
        const double want = std::sqrt(std::pow(g.box_length, 3.0) * sum);
        CHECK(norm_hdot(g, f, s) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("dyadic blocks partition every nonzero mode") {
    const Grid3 g = make_grid(16, 2.0 * M_PI);
    const DyadicLadder ladder = make_ladder(g);
    CHECK(partition_defect(g, ladder) <= 1e-12);

    // block sum reconstructs the field minus its mean
    scalar_data f = random_real_field(g, 13);
    scalar_data sum(g.size(), complex_t(0.0)), block(g.size());
    for (int j : ladder.levels()) {
        dyadic_project(g, f, j, block);
        for (std::size_t m = 0; m < g.size(); ++m) sum[m] += block[m];
    }
    f[g.index(0, 0, 0)] = complex_t(0.0);  // ladder never carries the mean
    double worst = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m)
        worst = std::max(worst, std::abs(sum[m] - f[m]));
    CHECK(worst <= 1e-12);
}

TEST_CASE("Besov norm with l2 ladder indices reproduces the L2 norm") {
    const Grid3 g = make_grid(16, 2.0 * M_PI);
    SpectralTransform tr(g);
    SpectralField4 f = random_field4(g, 30);
    for (int c = 0; c < 4; ++c) f.comp[c][g.index(0, 0, 0)] = complex_t(0.0);
    const DyadicLadder ladder = make_ladder(g);
    const double b = norm_besov(tr, f, 0.0, 2.0, 2.0, ladder);
    // adjacent blocks overlap smoothly: with at most two bumps sharing a
    // mode and summing to one, sum phi^2 lies in [1/2, 1], so B^0_{2,2}
    // is sandwiched between L2/sqrt(2) and L2
    const double l2 = norm_l2(f);
    CHECK(b <= l2 * (1.0 + 1e-12));
    CHECK(b >= l2 / std::sqrt(2.0) * (1.0 - 1e-12));
}

TEST_CASE("Leray projection removes divergence and is idempotent") {
    const Grid3 g = make_grid(16, 2.0 * M_PI);
    SpectralField4 f = random_field4(g, 44);
    CHECK(divergence_defect(f) > 1e-3);  // generic data starts non-solenoidal
    leray_project(f);
    CHECK(divergence_defect(f) <= 1e-13);

    SpectralField4 again = f;
    leray_project(again);
    double worst = 0.0;
    for (int c = 0; c < 4; ++c)
        for (std::size_t m = 0; m < g.size(); ++m)
            worst = std::max(worst, std::abs(again.comp[c][m] - f.comp[c][m]));
    CHECK(worst <= 1e-13);

    // removed part is L2-orthogonal to the retained part, theta untouched
    SpectralField4 raw = random_field4(g, 45);
    SpectralField4 proj = raw;
    leray_project(proj);
    complex_t inner(0.0);
    for (int c = 0; c < 3; ++c)
        for (std::size_t m = 0; m < g.size(); ++m)
            inner += (raw.comp[c][m] - proj.comp[c][m]) * std::conj(proj.comp[c][m]);
    CHECK(std::abs(inner) <= 1e-12);
    for (std::size_t m = 0; m < g.size(); ++m)
        CHECK(std::abs(proj.comp[3][m] - raw.comp[3][m]) == 0.0);
}

TEST_CASE("adaptive quadrature reproduces closed-form integrals") {
    QuadResult r = integrate_gk([](double x) { return std::sin(x); }, 0.0, M_PI,
                                1e-14, 1e-13);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));

    r = integrate_gk([](double x) { return std::cos(40.0 * x); }, 0.0, 1.0, 1e-14,
                     1e-13);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(std::sin(40.0) / 40.0).epsilon(1e-10));

    // kinked integrand: exact split point makes the two halves smooth
    const double c = 1.0 / 3.0;
    r = integrate_gk_split([&](double x) { return std::fabs(x - c); }, 0.0, 1.0, {c},
                           1e-14, 1e-13);
    const double want = 0.5 * c * c + 0.5 * (1.0 - c) * (1.0 - c);
    CHECK(r.value == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("fixed Gauss-Legendre panels integrate an oscillatory exponential") {
    const double w = 15.0;
    const std::complex<double> val = integrate_gl8(
        [&](double x) { return std::exp(std::complex<double>(0.0, w * x)); }, 0.0,
        2.0, 24);
    const std::complex<double> want =
        (std::exp(std::complex<double>(0.0, 2.0 * w)) - 1.0) /
        std::complex<double>(0.0, w);
    CHECK(std::abs(val - want) <= 1e-12);
}

TEST_CASE("csv writer and reader round-trip quoting and full precision") {
    CsvTable t;
    t.header = {"name", "value", "note"};
    t.rows.push_back({"plain", format_g17(1.0 / 3.0), "a,b"});
    t.rows.push_back({"quote\"inside", format_g17(-2.75e-300), "line\nbreak"});
    const std::string path = "spectral_core_csv_roundtrip.csv";
    csv_write(path, t);
    const CsvTable back = csv_read(path);
    REQUIRE(back.header == t.header);
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) CHECK(back.rows[i] == t.rows[i]);
    // 17 significant digits reproduce the double bit pattern
    CHECK(std::stod(back.rows[0][1]) == 1.0 / 3.0);
    CHECK(std::stod(back.rows[1][1]) == -2.75e-300);
    std::remove(path.c_str());
}

TEST_CASE("checkpoint save/load round-trips state and metadata exactly") {
    const Grid3 g = make_grid(8, 2.0 * M_PI);
    Checkpoint c;
    c.state = random_field4(g, 77);
    c.par.nu = 0.031;
    c.par.nu_prime = 0.052;
    c.par.epsilon = 0.017;
    c.time = 1.375;
    const std::string path = "spectral_core_checkpoint.bqs1";
    save_checkpoint(path, c);
    const Checkpoint back = load_checkpoint(path);
    CHECK(back.state.grid.n == g.n);
    CHECK(back.state.grid.box_length == g.box_length);
    CHECK(back.par.nu == c.par.nu);
    CHECK(back.par.nu_prime == c.par.nu_prime);
    CHECK(back.par.epsilon == c.par.epsilon);
    CHECK(back.time == c.time);
    for (int cc = 0; cc < 4; ++cc)
        for (std::size_t m = 0; m < g.size(); ++m)
            CHECK(back.state.comp[cc][m] == c.state.comp[cc][m]);

    // truncated file is rejected
    std::ifstream in(path, std::ios::binary);
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
    in.close();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size() / 2));
    out.close();
    CHECK_THROWS(load_checkpoint(path));
    std::remove(path.c_str());
}

TEST_CASE("decay fit recovers an exact power law") {
    const std::vector<double> xs = {1.0, 2.0, 4.0, 8.0, 16.0};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(3.0 * std::pow(x, -0.7));
    const DecayFit fit = fit_decay(xs, ys);
    CHECK(fit.exponent == doctest::Approx(-0.7).epsilon(1e-12));
    CHECK(fit.prefactor == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.r_squared >= 1.0 - 1e-12);
    CHECK(fit.max_rel_residual <= 1e-12);
    CHECK(fit.n == xs.size());

    // window restriction drops the outliers outside the range
    std::vector<double> ys2 = ys;
    ys2[0] = 100.0;
    const DecayFit w = fit_decay_window(xs, ys2, 1.5, 20.0);
    CHECK(w.n == 4);
    CHECK(w.exponent == doctest::Approx(-0.7).epsilon(1e-12));
}

TEST_CASE("spacetime norms integrate recorded series as stated") {
    SpaceTimeSeries s;
    const int n = 11;
    for (int k = 0; k <= n; ++k) {
        s.times.push_back(0.1 * k);
        s.values.push_back(2.5);
    }
    // constant series: L2 in time is c sqrt(T), max norm is c
    CHECK(spacetime_norm(s, 2.0) ==
          doctest::Approx(2.5 * std::sqrt(1.1)).epsilon(1e-12));
    CHECK(spacetime_norm(s, norm_inf_index) == doctest::Approx(2.5).epsilon(1e-15));
}
