#pragma once

#include "cyllens/errors.hpp"
#include "cyllens/grid.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cyllens {

/// Closed-form evaluators backing the samples of a field.
struct AnalyticField {
    std::function<Eigen::Vector3d(const Eigen::Vector3d&, double)> velocity;
    std::function<double(const Eigen::Vector3d&, double)> pressure;
    std::function<Eigen::Vector3d(const Eigen::Vector3d&, double)> forcing;
};

/// Velocity/pressure/forcing samples on a 4-D grid, immutable once built.
/// Component arrays left empty stand for identically-zero samples, so the
/// ubiquitous zero pressure/forcing cost nothing. Nodal gradients are cached
/// lazily; the cache fill is thread-safe, after which reads are lock-free.
class SpaceTimeField {
public:
    SpaceTimeField(GridSpec grid, std::string id);

    SpaceTimeField(SpaceTimeField&&) = default;
    SpaceTimeField& operator=(SpaceTimeField&&) = default;
    SpaceTimeField(const SpaceTimeField&) = delete;
    SpaceTimeField& operator=(const SpaceTimeField&) = delete;

    const GridSpec& grid() const { return grid_; }
    const std::string& id() const { return id_; }

    double u(int c, int i, int j, int k, int n) const {
        return sample(u_[c], i, j, k, n);
    }
    Eigen::Vector3d u_vec(int i, int j, int k, int n) const {
        return {u(0, i, j, k, n), u(1, i, j, k, n), u(2, i, j, k, n)};
    }
    double pressure(int i, int j, int k, int n) const {
        return sample(p_, i, j, k, n);
    }
    double forcing(int c, int i, int j, int k, int n) const {
        return sample(f_[c], i, j, k, n);
    }
    Eigen::Vector3d forcing_vec(int i, int j, int k, int n) const {
        return {forcing(0, i, j, k, n), forcing(1, i, j, k, n), forcing(2, i, j, k, n)};
    }

    /// d u_c / d x_d at a node; centered interior, one-sided second order on faces.
    double grad_u(int c, int d, int i, int j, int k, int n) const;
    double grad_p(int d, int i, int j, int k, int n) const;
    Eigen::Matrix3d grad_u_mat(int i, int j, int k, int n) const;
    Eigen::Vector3d grad_p_vec(int i, int j, int k, int n) const;
    /// (u . grad) u at a node.
    Eigen::Vector3d convection(int i, int j, int k, int n) const;

    bool has_analytic() const { return analytic_.has_value(); }
    const AnalyticField& analytic() const;

    double div_tol() const { return div_tol_; }
    double boundary_tol() const { return boundary_tol_; }
    double reported_div_constant() const { return div_constant_; }
    bool pressure_flagged_zero() const { return pressure_flagged_zero_; }

    /// Max-norm of the discrete divergence over all nodes and levels.
    double max_divergence() const;
    /// Max |u| over the x3 = 0 plane (0 on non-half-space grids).
    double max_boundary_trace() const;

    // --- construction-time mutators (generators and IO only) ---
    std::vector<double>& mutable_component(int which);  // 0-2 u, 3 p, 4-6 f
    const std::vector<double>& component(int which) const;
    void set_analytic(AnalyticField a) { analytic_ = std::move(a); }
    void set_tols(double div_tol, double boundary_tol) {
        div_tol_ = div_tol;
        boundary_tol_ = boundary_tol;
    }
    void set_div_constant(double c) { div_constant_ = c; }
    void set_pressure_flagged_zero(bool f) { pressure_flagged_zero_ = f; }
    void set_id(std::string id) { id_ = std::move(id); }
    /// False when pressure samples were produced by a solve the closure
    /// cannot reproduce (blocks rescaling through the closure).
    bool closure_backs_pressure() const { return closure_backs_pressure_; }
    void set_closure_backs_pressure(bool b) { closure_backs_pressure_ = b; }

private:
    double sample(const std::vector<double>& a, int i, int j, int k, int n) const {
        return a.empty() ? 0.0 : a[static_cast<std::size_t>(grid_.node_index(i, j, k, n))];
    }
    void ensure_grad_u() const;
    void ensure_grad_p() const;

    GridSpec grid_;
    std::string id_;
    std::array<std::vector<double>, 3> u_;
    std::vector<double> p_;
    std::array<std::vector<double>, 3> f_;
    std::optional<AnalyticField> analytic_;
    double div_tol_ = 0.0;
    double boundary_tol_ = 0.0;
    double div_constant_ = 0.0;
    bool pressure_flagged_zero_ = false;
    bool closure_backs_pressure_ = true;

    struct GradCache;
    std::shared_ptr<GradCache> grads_;  // shared so the field stays movable
};

enum class PressureMode { Zero, Poisson };

SpaceTimeField generate_zero(const GridSpec& grid);

/// Decaying shear layer u = (amp sin(a x3) e^{-a^2 t}, 0, 0), an exact
/// solution with vanishing nonlinearity, zero on the flat boundary.
SpaceTimeField generate_shear_heat(const GridSpec& grid, double amplitude, double wavenumber);

/// Degree -1 swirl u = amp (-x2, x1, 0)/|x|^2, singular at the origin,
/// divergence free, exactly invariant under u -> s u(sx, s^2 t). Interior
/// grids only; no node may coincide with the origin.
SpaceTimeField generate_homogeneous_profile(const GridSpec& grid, double amplitude);

/// Curl of a seeded random low-wavenumber vector potential. On half-space
/// grids the potential is tapered by x3^2/(1+x3^2) so u and its normal
/// derivative data vanish on the boundary. Deterministic per seed.
SpaceTimeField generate_divfree_random(const GridSpec& grid, std::uint64_t seed, int modes,
                                       PressureMode pmode = PressureMode::Zero);

/// Interior grid of n^3 nodes, spacing h, arranged so the origin falls at a
/// cell center (offset h/2 from the nearest nodes along each axis).
GridSpec make_centered_grid(int n, double h, double t0, double dt, int nt);

enum class ForcingKind { Constant, GaussianBump };

/// Zero-velocity field carrying synthetic forcing, for Morrey-norm tests.
SpaceTimeField generate_forcing_field(const GridSpec& grid, ForcingKind kind,
                                      const Eigen::Vector3d& amplitude, double width = 0.25);

/// u -> s u(sx, s^2 t), p -> s^2 p, f -> s^3 f on the pre-image grid
/// (origin/s, h/s, dt/s^2, same counts). Needs the analytic closure.
SpaceTimeField scale_field(const SpaceTimeField& field, double s);

/// Centered-difference evaluation of u_t - Lap u + (u.grad)u + grad p - f at
/// the node nearest to the given point; the stencil must fit two cells from
/// every grid face.
Eigen::Vector3d nse_residual(const SpaceTimeField& field, const SpaceTimePoint& z);

} // namespace cyllens
