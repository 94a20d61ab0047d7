// Norms: spectral L2 / homogeneous Sobolev, grid L^q, Besov via dyadic
// blocks, and time-composed versions on recorded series.
//
// Spatial integrals carry the L^3 volume factor, so norm_l2 matches the
// continuum L2 norm of the represented trigonometric polynomial exactly
// (Parseval); L^q norms use the collocation quadrature (L/n)^3 sum.

#pragma once

#include <limits>
#include <vector>

#include "stratlab/dyadic.hpp"
#include "stratlab/field.hpp"
#include "stratlab/transform.hpp"

namespace stratlab {

double norm_l2(const SpectralField4& f);
double norm_l2(const Grid3& g, const scalar_data& f);

// homogeneous Sobolev: sum over modes of |xi|^{2s} |fhat|^2 (mean omitted)
double norm_hdot(const SpectralField4& f, double s);
double norm_hdot(const Grid3& g, const scalar_data& f, double s);

// L^q of the pointwise Euclidean magnitude; q = inf -> max over grid
double norm_lq(SpectralTransform& tr, const SpectralField4& f, double q);
double norm_lq(SpectralTransform& tr, const Grid3& g, const scalar_data& f, double q);

// homogeneous Besov B^s_{p,r}: l^r over ladder levels of 2^{js} ||block_j f||_{L^p}
double norm_besov(SpectralTransform& tr, const SpectralField4& f, double s, double p,
                  double r, const DyadicLadder& ladder);

struct NormKind {
    enum Family { L2, Hdot, Lq, Besov } family = L2;
    double s = 0.0;  // Sobolev / Besov smoothness
    double p = 2.0;  // Lebesgue index (Lq family uses p)
    double r = 2.0;  // Besov summation index
    static NormKind l2() { return {L2, 0, 2, 2}; }
    static NormKind hdot(double s_) { return {Hdot, s_, 2, 2}; }
    static NormKind lq(double q_) { return {Lq, 0, q_, 2}; }
    static NormKind besov(double s_, double p_, double r_) { return {Besov, s_, p_, r_}; }
};

double norm(SpectralTransform& tr, const SpectralField4& f, const NormKind& kind,
            const DyadicLadder& ladder);

constexpr double norm_inf_index = std::numeric_limits<double>::infinity();

// Scalar samples of a spatial norm along a run.
struct SpaceTimeSeries {
    std::vector<double> times;
    std::vector<double> values;
};

// L^rho in time by composite trapezoid on the recorded grid; rho = inf -> max
double spacetime_norm(const SpaceTimeSeries& series, double rho);

// Per-block L^p norms along a run: values[level][sample].
struct DyadicSeries {
    DyadicLadder ladder;
    std::vector<double> times;
    std::vector<std::vector<double>> values;
};

// time-integral-first composition: l^r over j of 2^{js} || block series ||_{L^rho_t}
double chemin_lerner_norm(const DyadicSeries& ds, double s, double rho, double r);

// space-norm-first composition: L^rho_t of the per-sample Besov norm
double spacetime_besov_norm(const DyadicSeries& ds, double s, double rho, double r);

}  // namespace stratlab
