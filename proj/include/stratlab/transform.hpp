// FFT wrapper (FFTW, complex-to-complex, double precision).
//
// Convention: spectral -> physical is the plain inverse DFT without
// normalization, physical -> spectral divides by n^3, so spectral
// coefficients are Fourier-series amplitudes: f(x) = sum_k fhat_k e^{i xi_k.x}.

#pragma once

#include "stratlab/field.hpp"
#include "stratlab/grid.hpp"

namespace stratlab {

class SpectralTransform {
  public:
    explicit SpectralTransform(const Grid3& g);
    ~SpectralTransform();

    SpectralTransform(const SpectralTransform&) = delete;
    SpectralTransform& operator=(const SpectralTransform&) = delete;

    const Grid3& grid() const { return grid_; }

    // out may alias in; both must hold grid.size() entries
    void to_physical(const scalar_data& in, scalar_data& out);
    void to_spectral(const scalar_data& in, scalar_data& out);

    void to_physical(const SpectralField4& in, SpectralField4& out);
    void to_spectral(const SpectralField4& in, SpectralField4& out);

  private:
    Grid3 grid_;
    void* plan_fwd_ = nullptr;   // physical -> spectral (sign -1)
    void* plan_bwd_ = nullptr;   // spectral -> physical (sign +1)
    scalar_data work_;
};

}  // namespace stratlab
