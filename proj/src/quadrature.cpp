#include "stratlab/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace stratlab {

namespace {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1] (QUADPACK dqk15 tables);
// xgk holds the positive half, odd indices are the embedded Gauss nodes
constexpr double xgk[8] = {0.9914553711208126, 0.9491079123427585,
                           0.8648644233597691, 0.7415311855993944,
                           0.5860872354676911, 0.4058451513773972,
                           0.2077849550078985, 0.0};
constexpr double wgk[8] = {0.02293532201052922, 0.06309209262997855,
                           0.1047900103222502,  0.1406532597155259,
                           0.1690047266392679,  0.1903505780647854,
                           0.2044329400752989,  0.2094821410847278};
constexpr double wg[4] = {0.1294849661688697, 0.2797053914892767,
                          0.3818300505051189, 0.4179591836734694};

struct PairEval {
    double kronrod = 0.0;
    double gauss = 0.0;
};

PairEval gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    PairEval r;
    const double fc = f(c);
    r.kronrod = wgk[7] * fc;
    r.gauss = wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double fp = f(c + hw * xgk[i]);
        const double fm = f(c - hw * xgk[i]);
        r.kronrod += wgk[i] * (fp + fm);
        if (i % 2 == 1) r.gauss += wg[i / 2] * (fp + fm);
    }
    r.kronrod *= hw;
    r.gauss *= hw;
    return r;
}

void adapt(const std::function<double(double)>& f, double a, double b,
           double abs_tol, double rel_tol, int depth, QuadResult& acc) {
    const PairEval p = gk15(f, a, b);
    acc.evals += 15;
    const double err = std::fabs(p.kronrod - p.gauss);
    if (err <= std::max(abs_tol, rel_tol * std::fabs(p.kronrod)) || depth <= 0) {
        acc.value += p.kronrod;
        acc.error += err;
        if (depth <= 0 && err > std::max(abs_tol, rel_tol * std::fabs(p.kronrod)))
            acc.converged = false;
        return;
    }
    const double c = 0.5 * (a + b);
    adapt(f, a, c, 0.5 * abs_tol, rel_tol, depth - 1, acc);
    adapt(f, c, b, 0.5 * abs_tol, rel_tol, depth - 1, acc);
}

}  // namespace

QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double rel_tol, int max_depth) {
    QuadResult acc;
    if (a == b) return acc;
    adapt(f, a, b, abs_tol, rel_tol, max_depth, acc);
    return acc;
}

QuadResult integrate_gk_split(const std::function<double(double)>& f, double a,
                              double b, const std::vector<double>& splits,
                              double abs_tol, double rel_tol, int max_depth) {
    std::vector<double> pts;
    pts.push_back(a);
    for (double s : splits)
        if (s > a && s < b) pts.push_back(s);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    QuadResult acc;
    const double piece_tol =
        abs_tol / static_cast<double>(std::max<std::size_t>(1, pts.size() - 1));
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        QuadResult part = integrate_gk(f, pts[i], pts[i + 1], piece_tol, rel_tol,
                                       max_depth);
        acc.value += part.value;
        acc.error += part.error;
        acc.evals += part.evals;
        acc.converged = acc.converged && part.converged;
    }
    return acc;
}

std::complex<double> integrate_gl8(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    int n_panels) {
    // 8-point Gauss-Legendre nodes / weights on [-1, 1]
    constexpr double xg[4] = {0.1834346424956498, 0.5255324099163290,
                              0.7966664774136267, 0.9602898564975363};
    constexpr double wg8[4] = {0.3626837833783620, 0.3137066458778873,
                               0.2223810344533745, 0.1012285362903763};
    std::complex<double> total(0.0);
    const double h = (b - a) / static_cast<double>(n_panels);
    for (int p = 0; p < n_panels; ++p) {
        const double pa = a + h * static_cast<double>(p);
        const double c = pa + 0.5 * h;
        const double hw = 0.5 * h;
        std::complex<double> s(0.0);
        for (int i = 0; i < 4; ++i)
            s += wg8[i] * (f(c + hw * xg[i]) + f(c - hw * xg[i]));
        total += hw * s;
    }
    return total;
}

}  // namespace stratlab
