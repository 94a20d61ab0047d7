// Littlewood-Paley dyadic blocks on the discrete grid.
//
// Block j keeps frequencies with |xi| ~ 2^j via the annulus bump
// phi(|xi| / 2^j).  The ladder spans every nonzero grid mode, so the
// blocks sum to the identity (minus the mean mode) up to roundoff.

#pragma once

#include <vector>

#include "stratlab/field.hpp"
#include "stratlab/grid.hpp"

namespace stratlab {

struct DyadicLadder {
    int j_min = 0;
    int j_max = 0;
    std::vector<int> levels() const {
        std::vector<int> js;
        for (int j = j_min; j <= j_max; ++j) js.push_back(j);
        return js;
    }
};

// Smallest ladder whose blocks cover all nonzero modes of g:
// phi(|xi|/2^j) vanishes for every retained |xi| once j is outside it.
DyadicLadder make_ladder(const Grid3& g);

// out = block-j part of f (multiply by phi(|xi|/2^j)); out may alias f.
void dyadic_project(const Grid3& g, const scalar_data& f, int j, scalar_data& out);
void dyadic_project(const SpectralField4& f, int j, SpectralField4& out);

// max over nonzero modes of |1 - sum_j phi(|xi|/2^j)| (diagnostic)
double partition_defect(const Grid3& g, const DyadicLadder& ladder);

}  // namespace stratlab
