#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>

namespace cyllens {

struct SpaceTimePoint {
    Eigen::Vector3d x = Eigen::Vector3d::Zero();
    double t = 0.0;
};

/// Parabolic metric d(z, z') = |x - x'| + |t - t'|^{1/2}.
inline double parabolic_distance(const SpaceTimePoint& a, const SpaceTimePoint& b) {
    return (a.x - b.x).norm() + std::sqrt(std::abs(a.t - b.t));
}

/// Uniform node-centered 4-D grid. Spatial spacing h is shared by all three
/// axes; dt is independent. half_space grids sit on {x3 >= 0} with the flat
/// boundary on the x3 = 0 plane (origin.z() must be 0).
struct GridSpec {
    Eigen::Vector3d origin = Eigen::Vector3d::Zero();
    double h = 0.0;
    int nx = 0, ny = 0, nz = 0;
    double t0 = 0.0;
    double dt = 0.0;
    int nt = 0;
    bool half_space = false;

    void validate() const;

    std::int64_t nodes_per_level() const {
        return std::int64_t(nx) * ny * nz;
    }
    std::int64_t node_count() const { return nodes_per_level() * nt; }

    // t-major, then x3 (k), x2 (j), x1 (i)
    std::int64_t node_index(int i, int j, int k, int n) const {
        return ((std::int64_t(n) * nz + k) * ny + j) * nx + i;
    }

    double x1(int i) const { return origin.x() + i * h; }
    double x2(int j) const { return origin.y() + j * h; }
    double x3(int k) const { return origin.z() + k * h; }
    Eigen::Vector3d node_pos(int i, int j, int k) const {
        return {x1(i), x2(j), x3(k)};
    }
    double time(int n) const { return t0 + n * dt; }
    double t_end() const { return time(nt - 1); }

    Eigen::Vector3d box_min() const { return origin; }
    Eigen::Vector3d box_max() const {
        return origin + Eigen::Vector3d((nx - 1) * h, (ny - 1) * h, (nz - 1) * h);
    }

    /// True when z lies on the flat boundary of a half-space grid.
    bool on_flat_boundary(const SpaceTimePoint& z, double tol = 1e-12) const {
        return half_space && std::abs(z.x.z()) <= tol;
    }
};

} // namespace cyllens
