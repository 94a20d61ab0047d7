#include "stratlab/transform.hpp"

#include <fftw3.h>

#include <cassert>
#include <mutex>

namespace stratlab {

namespace {
// FFTW plan creation is not thread safe; executing distinct plans is.
std::mutex plan_mutex;
}  // namespace

SpectralTransform::SpectralTransform(const Grid3& g) : grid_(g), work_(g.size()) {
    const int n = static_cast<int>(g.n);
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto* buf = reinterpret_cast<fftw_complex*>(work_.data());
    // FFTW_UNALIGNED lets the new-array execute run on caller storage.
    plan_fwd_ = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_bwd_ = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
}

SpectralTransform::~SpectralTransform() {
    std::lock_guard<std::mutex> lock(plan_mutex);
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void SpectralTransform::to_physical(const scalar_data& in, scalar_data& out) {
    assert(in.size() == grid_.size());
    if (&out != &in) {
        out.resize(in.size());
        std::copy(in.begin(), in.end(), out.begin());
    }
    auto* buf = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_), buf, buf);
}

void SpectralTransform::to_spectral(const scalar_data& in, scalar_data& out) {
    assert(in.size() == grid_.size());
    if (&out != &in) {
        out.resize(in.size());
        std::copy(in.begin(), in.end(), out.begin());
    }
    auto* buf = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), buf, buf);
    const double scale = 1.0 / static_cast<double>(grid_.size());
    for (auto& z : out) z *= scale;
}

void SpectralTransform::to_physical(const SpectralField4& in, SpectralField4& out) {
    out.grid = in.grid;
    for (int c = 0; c < 4; ++c) to_physical(in.comp[c], out.comp[c]);
}

void SpectralTransform::to_spectral(const SpectralField4& in, SpectralField4& out) {
    out.grid = in.grid;
    for (int c = 0; c < 4; ++c) to_spectral(in.comp[c], out.comp[c]);
}

}  // namespace stratlab
