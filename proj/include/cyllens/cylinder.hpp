#pragma once

#include "cyllens/grid.hpp"

#include <stdexcept>

namespace cyllens {

/// Interior cylinders are B(x,r) x (t - r^2, t); half cylinders additionally
/// clip to the half-space domain {x3 > 0} (the half clip is only meaningful
/// on half-space grids, where the grid itself realizes the clipping).
enum class ClipMode { Interior, Half };

struct ParabolicCylinder {
    SpaceTimePoint center;
    double radius = 0.0;
    ClipMode clip = ClipMode::Interior;

    double t_begin() const { return center.t - radius * radius; }
    double t_end() const { return center.t; }
};

/// Quadrature controls: subsample^3 indicator points decide partial-cell
/// weights on the ball boundary; radii below min_cells * h are rejected.
struct QuadratureConfig {
    int subsample = 4;
    int min_cells = 4;

    void validate() const {
        if (subsample < 1 || subsample > 8)
            throw std::invalid_argument("QuadratureConfig: subsample must be in [1,8]");
        if (min_cells < 4)
            throw std::invalid_argument("QuadratureConfig: min_cells must be >= 4");
    }
};

} // namespace cyllens
