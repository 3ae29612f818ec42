#pragma once

#include "cyllens/cylinder.hpp"
#include "cyllens/exponents.hpp"
#include "cyllens/field.hpp"

#include <Eigen/Core>

#include <vector>

namespace cyllens {

/// Interior split p = p1 + p2 + level means over a node box circumscribing
/// the ball B(x, rho). p1 solves Lap p1 = div(f - (u.grad)u) per time level
/// with zero Dirichlet data on the box faces; p2 = p - p1 with its ball mean
/// removed per level, so p2 is discretely harmonic wherever p satisfies the
/// discrete pressure Poisson relation.
struct PressureSplit {
    Eigen::Vector3i lo;  // box node range on the parent grid, inclusive
    Eigen::Vector3i hi;
    int level_begin = 0;
    int level_count = 0;
    std::vector<double> p1;           // box-local, level-major
    std::vector<double> p2;
    std::vector<double> level_means;  // ball mean of (p - p1) per level
    double poisson_residual = 0.0;    // max relative residual across levels
    double harmonic_residual = 0.0;   // max |Lap_h p2| / max |Lap_h p| over the ball interior
    double harmonic_residual_abs = 0.0;
    SpaceTimePoint center;
    double rho = 0.0;

    int bnx() const { return hi.x() - lo.x() + 1; }
    int bny() const { return hi.y() - lo.y() + 1; }
    int bnz() const { return hi.z() - lo.z() + 1; }
    /// Box-local value by parent-grid node index and level.
    double p1_at(int i, int j, int k, int n) const { return local(p1, i, j, k, n); }
    double p2_at(int i, int j, int k, int n) const { return local(p2, i, j, k, n); }
    bool contains_node(int i, int j, int k) const {
        return i >= lo.x() && i <= hi.x() && j >= lo.y() && j <= hi.y() && k >= lo.z() &&
               k <= hi.z();
    }
    bool contains_level(int n) const { return n >= level_begin && n < level_begin + level_count; }

private:
    double local(const std::vector<double>& a, int i, int j, int k, int n) const {
        const std::int64_t idx =
            ((std::int64_t(n - level_begin) * bnz() + (k - lo.z())) * bny() + (j - lo.y())) *
                bnx() +
            (i - lo.x());
        return a[static_cast<std::size_t>(idx)];
    }
};

/// Splits the pressure over the cylinder Q(z, rho); the ball must sit at
/// least two cells inside the grid.
PressureSplit decompose_interior(const SpaceTimeField& f, const SpaceTimePoint& z, double rho,
                                 const QuadratureConfig& cfg);

/// Scaled gradient norms of the two split parts over Q(z, r), r <= rho:
/// (1/r) ||grad p1||_{kappa,lambda}, the same for p2, and the companion
/// (1/r) ||grad p2||_{kappa',lambda} with 3/kappa' + 2/lambda = 2.
struct SplitD1 {
    double d1_p1 = 0.0;
    double d1_p2 = 0.0;
    double d1_p2_kappa_prime = 0.0;
};

SplitD1 d1_from_split(const SpaceTimeField& f, const PressureSplit& split,
                      const SpaceTimePoint& z, double r, const ExponentSet& exps,
                      const QuadratureConfig& cfg);

} // namespace cyllens
