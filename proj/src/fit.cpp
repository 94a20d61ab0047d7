#include "stratlab/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stratlab {

DecayFit fit_decay(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_decay: need matching arrays of >= 2 points");
    const std::size_t n = x.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::invalid_argument("fit_decay: samples must be positive");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        syy += ly * ly;
    }
    const double dn = static_cast<double>(n);
    const double vxx = sxx - sx * sx / dn;
    const double vxy = sxy - sx * sy / dn;
    const double vyy = syy - sy * sy / dn;
    if (!(vxx > 0.0))
        throw std::invalid_argument("fit_decay: abscissas must not coincide");

    DecayFit fit;
    fit.n = n;
    fit.exponent = vxy / vxx;
    fit.prefactor = std::exp((sy - fit.exponent * sx) / dn);
    fit.r_squared = vyy > 0.0 ? (vxy * vxy) / (vxx * vyy) : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double model = fit.prefactor * std::pow(x[i], fit.exponent);
        fit.max_rel_residual =
            std::max(fit.max_rel_residual, std::fabs(model - y[i]) / y[i]);
    }
    return fit;
}

DecayFit fit_decay_window(const std::vector<double>& x, const std::vector<double>& y,
                          double x_lo, double x_hi) {
    if (x.size() != y.size())
        throw std::invalid_argument("fit_decay_window: size mismatch");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] >= x_lo && x[i] <= x_hi) {
            xs.push_back(x[i]);
            ys.push_back(y[i]);
        }
    return fit_decay(xs, ys);
}

}  // namespace stratlab
