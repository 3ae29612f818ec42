#pragma once

#include "cyllens/exponents.hpp"
#include "cyllens/functionals.hpp"

#include <optional>
#include <string>

namespace cyllens {

/// One inequality evaluated as lhs / rhs with the absolute constant left out.
/// 0/0 counts as 0 and positive/0 as infinite; both always carry their flag.
struct RatioRecord {
    std::string name;
    double r = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;  // without the absolute constant
    double ratio = 0.0;
    bool zero_over_zero = false;
    bool infinite = false;
    SpaceTimePoint center;
    std::string field_id;
    std::string note;
};

RatioRecord make_ratio(std::string name, double r, double lhs, double rhs,
                       const SpaceTimePoint& center, std::string field_id);

/// C(r) against A^{1/q} E^{1-1/q} G at a boundary center. The Hoelder/Sobolev
/// exponent bookkeeping (alpha = 1/q, beta = (1-1/q)/3, delta = 1/p with
/// 2a+6b+p d = 3, a+b+d = 1, a+3b = 1) is verified to 1e-12 before computing.
RatioRecord check_basiclemma(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                             const ExponentSet& exps, const QuadratureConfig& cfg);

/// Interior variant: C against A^{1/q} E^{1-1/q} G + A^{1/2} G^2.
RatioRecord check_interior_l3(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                              const ExponentSet& exps, const QuadratureConfig& cfg);

/// Smooth space-time cutoff: a product of 1-D quintic-smoothstep ramps that
/// vanishes near t = t0 and near every grid face except the flat boundary of
/// a half-space grid, with closed-form time derivative, gradient, Laplacian.
class CutoffBump {
public:
    /// Margins are fractions of the box extent per axis. Throws
    /// std::invalid_argument when the ramps do not fit inside the domain.
    explicit CutoffBump(const GridSpec& g, double edge_margin = 0.10, double ramp = 0.20,
                        double t_on = 0.15, double t_full = 0.45);

    double value(const Eigen::Vector3d& x, double t) const;
    double dt(const Eigen::Vector3d& x, double t) const;
    Eigen::Vector3d grad(const Eigen::Vector3d& x, double t) const;
    double laplacian(const Eigen::Vector3d& x, double t) const;

private:
    struct Ramp {
        double lo0, lo1, hi1, hi0;
        bool no_lower = false;
        double value(double x) const;
        double d1(double x) const;
        double d2(double x) const;
    };
    Ramp axis_[3];
    Ramp time_;
};

/// Local energy balance tested against the cutoff: lhs is the final-time
/// kinetic term plus twice the dissipation, rhs the transported terms. For
/// exact smooth solutions rhs - lhs vanishes to discretization order.
RatioRecord check_energy_inequality(const SpaceTimeField& f, const CutoffBump& cutoff,
                                    const QuadratureConfig& cfg);

/// A(r/2) + E(r/2) against C^{2/3} + C + G D~ + r^{2(gamma+1)} m_gamma^2.
RatioRecord check_energy_consequence(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                                     const ExponentSet& exps, double gamma, double m_gamma,
                                     const QuadratureConfig& cfg);

/// ||(u.grad)u||_{kappa,lambda} against rho E^{1/lambda} A^{(3-2k)/2k}, the
/// interior variant adding rho E^{1/2} A^{(2-k)/2k} G^{(k-1)/k}.
RatioRecord check_nonlinear_term(const SpaceTimeField& f, const SpaceTimePoint& z, double rho,
                                 const ExponentSet& exps, ClipMode mode,
                                 const QuadratureConfig& cfg);

/// Measure-normalized L^4 interpolation against the (r,s), (2,inf), (6,2)
/// norms; the normalization makes the constant-field ratio exactly 1.
/// Region defaults to the whole grid box.
RatioRecord check_L4_interpolation(const SpaceTimeField& f,
                                   const std::optional<ParabolicCylinder>& region,
                                   const PQPair& rs, const QuadratureConfig& cfg);

/// Measure-normalized interpolation with the L^{l,m} exponents: through L^k
/// for l > m, through L^4 for l <= m.
RatioRecord check_sec4_interpolation(const SpaceTimeField& f,
                                     const std::optional<ParabolicCylinder>& region,
                                     const LMPair& lm, const QuadratureConfig& cfg);

struct PressureBoundData {
    double gamma = 1.0;
    double m_gamma = 0.0;
    std::optional<double> d1_rho;  // reuse a precomputed D1~(rho)
};

/// D1~(r) against the two-scale pressure bound at outer radius rho >= 4r.
RatioRecord check_pressure_bound(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                                 double rho, const ExponentSet& exps,
                                 const PressureBoundData& data, ClipMode mode,
                                 const QuadratureConfig& cfg);

} // namespace cyllens
