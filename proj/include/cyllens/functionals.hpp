#pragma once

#include "cyllens/cylinder.hpp"
#include "cyllens/exponents.hpp"
#include "cyllens/field.hpp"
#include "cyllens/quadrature.hpp"

#include <vector>

namespace cyllens {

/// Per-radius record of the scale-invariant functionals at one center.
struct FunctionalReport {
    SpaceTimePoint center;
    double r = 0.0;
    double a = 0.0;         // sup_s (1/r) int |u|^2
    double c = 0.0;         // (1/r^2) int |u|^3
    double e = 0.0;         // (1/r) int |grad u|^2
    double g = 0.0;         // (1/r) ||u||_{p,q}
    double d_tilde = 0.0;   // (1/r) ||p - mean||_{kappa*,lambda}
    double d1_tilde = 0.0;  // (1/r) ||grad p||_{kappa,lambda}
    double d = 0.0;         // (1/r^2) int |p - mean|^{3/2}
    double d1 = 0.0;        // (1/r^{3/2}) int_t (int |grad p|^{9/8})^{4/3}
    double criterion = 0.0; // r^{-(3/p+2/q-1)} ||u||_{p,q}
    ExponentSet exponents{};
    PQPair pq = PQPair::finite(2.0, 4.0);
    ClipMode clip = ClipMode::Interior;
    bool domain_clipped = false;
};

/// Boundary centers of half-space grids analyze the half cylinder Q+,
/// everything else the full cylinder (clipped to the domain and flagged).
ClipMode infer_clip(const GridSpec& grid, const SpaceTimePoint& z);

ParabolicCylinder make_cylinder(const GridSpec& grid, const SpaceTimePoint& z, double r);

double functional_a(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                    const QuadratureConfig& cfg);
double functional_c(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                    const QuadratureConfig& cfg);
double functional_e(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                    const QuadratureConfig& cfg);
double functional_g(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                    const ExponentSet& exps, const QuadratureConfig& cfg);
double functional_d_tilde(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                          const ExponentSet& exps, const QuadratureConfig& cfg);
double functional_d1_tilde(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                           const ExponentSet& exps, const QuadratureConfig& cfg);
double functional_d(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                    const QuadratureConfig& cfg);
double functional_d1(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                     const QuadratureConfig& cfg);
double criterion_quantity(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                          const PQPair& pq, const QuadratureConfig& cfg);

/// All functionals of one cylinder in a single quadrature pass.
FunctionalReport compute_report(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                                const ExponentSet& exps, const QuadratureConfig& cfg);

/// One report per radius (radii given in descending order).
std::vector<FunctionalReport> sweep(const SpaceTimeField& f, const SpaceTimePoint& z,
                                    const std::vector<double>& radii, const ExponentSet& exps,
                                    const QuadratureConfig& cfg);

// node-function builders shared with the inequality checks
CellFn cell_speed(const SpaceTimeField& f);
CellFn cell_speed_sq(const SpaceTimeField& f);
CellFn cell_speed_cu(const SpaceTimeField& f);
CellFn cell_grad_u_sq(const SpaceTimeField& f);
CellFn cell_grad_p_mag(const SpaceTimeField& f);
CellFn cell_pressure(const SpaceTimeField& f);
CellFn cell_convection_mag(const SpaceTimeField& f);

} // namespace cyllens
