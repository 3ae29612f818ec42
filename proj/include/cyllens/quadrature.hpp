#pragma once

#include "cyllens/cylinder.hpp"
#include "cyllens/exponents.hpp"
#include "cyllens/field.hpp"

#include <functional>
#include <vector>

namespace cyllens {

/// Scalar integrand at the center of spatial cell (i,j,k) within the time
/// slab whose lower face is grid level n (the slab spans [t_n, t_{n+1}]).
using CellFn = std::function<double(int i, int j, int k, int n)>;

/// Averages a scalar node function over the 16 corners of a space-time cell.
template <class NodeF>
auto cell_average(NodeF nf) {
    return [nf](int i, int j, int k, int n) {
        double s = 0.0;
        for (int dn = 0; dn <= 1; ++dn)
            for (int dk = 0; dk <= 1; ++dk)
                for (int dj = 0; dj <= 1; ++dj)
                    for (int di = 0; di <= 1; ++di) s += nf(i + di, j + dj, k + dk, n + dn);
        return 0.0625 * s;
    };
}

/// Composite midpoint quadrature over one region: cell values are weighted by
/// h^3 times the subsampled indicator fraction inside the ball, time slabs by
/// their overlap with the cylinder's (t - r^2, t) window, so the interval is
/// respected exactly. Cells fully inside/outside the ball skip subsampling.
class CellQuadrature {
public:
    /// Clipped cylinder region. Throws resolution_error when r < min_cells*h
    /// and std::out_of_range when the cylinder misses the grid entirely.
    CellQuadrature(const GridSpec& g, const ParabolicCylinder& cyl, const QuadratureConfig& cfg);

    /// Whole-box region over a time window.
    CellQuadrature(const GridSpec& g, double t_begin, double t_end);

    int slab_count() const { return static_cast<int>(slab_levels_.size()); }
    double slab_weight(int s) const { return slab_tau_[s]; }
    int slab_level(int s) const { return slab_levels_[s]; }
    double spatial_volume() const { return spatial_volume_; }
    double time_length() const;
    double st_volume() const { return spatial_volume_ * time_length(); }
    /// True when the region lost mass to the grid box in a direction that is
    /// not part of the clip definition itself (used to flag mixed cases).
    bool domain_clipped() const { return domain_clipped_; }

    double slab_integral(const CellFn& f, int s) const;
    double slab_mean(const CellFn& f, int s) const;
    double st_integral(const CellFn& f) const;
    double slab_lp(const CellFn& f, const Exponent& p, int s) const;
    double lpq(const CellFn& f, const PQPair& pq) const;
    /// Temporal integral of the e-th power of the slab L^p integral (no outer
    /// root): sum_s tau_s (sum |f|^p w)^e.
    double lpq_power(const CellFn& f, double p, double e) const;

    /// Spatial integral at one fixed grid level (8-corner cell averages of a
    /// node function bound to that level).
    double level_integral(const std::function<double(int, int, int)>& cell_value) const;

    const GridSpec& grid() const { return grid_; }

private:
    struct Cell {
        int i, j, k;
        double w;  // indicator fraction * h^3
    };
    void build_slabs(double tb, double te);
    void build_box_cells();

    GridSpec grid_;
    std::vector<Cell> cells_;
    std::vector<int> slab_levels_;
    std::vector<double> slab_tau_;
    double spatial_volume_ = 0.0;
    bool domain_clipped_ = false;
};

/// Mixed L^{p,q} norm of a scalar node function over a clipped cylinder.
double lpq_norm(const SpaceTimeField& field,
                const std::function<double(int, int, int, int)>& node_fn,
                const ParabolicCylinder& cyl, const PQPair& pq, const QuadratureConfig& cfg);

/// Average of a scalar node function over the clipped ball at one time slab.
double spatial_mean(const SpaceTimeField& field,
                    const std::function<double(int, int, int, int)>& node_fn,
                    const ParabolicCylinder& cyl, int slab, const QuadratureConfig& cfg);

/// Parabolic Morrey norm of the forcing: sup over the sampled centers and
/// radii of r^{2-gamma} (mean of |f|^2 over Q(z,r) clipped to the grid)^{1/2}.
/// The sup over a finite declared sample lattice approximates the true sup.
double morrey_norm(const SpaceTimeField& field, double gamma,
                   const std::vector<SpaceTimePoint>& centers, const std::vector<double>& radii,
                   const QuadratureConfig& cfg);

} // namespace cyllens
