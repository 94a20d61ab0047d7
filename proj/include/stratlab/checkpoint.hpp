// Binary checkpoint: magic "BQS1", little-endian u64 grid size, f64 box
// length, nu, nu', eps, time, then 4 * n^3 complex coefficients as
// (re, im) f64 pairs, k1-major / k3-fastest, component by component.

#pragma once

#include <string>

#include "stratlab/field.hpp"
#include "stratlab/wave.hpp"

namespace stratlab {

struct Checkpoint {
    SpectralField4 state;
    PhysicsParams par;
    double time = 0.0;
};

void save_checkpoint(const std::string& path, const Checkpoint& c);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace stratlab
