#include "cyllens/inequalities.hpp"

#include "cyllens/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cyllens {

RatioRecord make_ratio(std::string name, double r, double lhs, double rhs,
                       const SpaceTimePoint& center, std::string field_id) {
    RatioRecord rec;
    rec.name = std::move(name);
    rec.r = r;
    rec.lhs = lhs;
    rec.rhs = rhs;
    rec.center = center;
    rec.field_id = std::move(field_id);
    if (rhs == 0.0 && lhs == 0.0) {
        rec.ratio = 0.0;
        rec.zero_over_zero = true;
    } else if (rhs == 0.0) {
        rec.ratio = std::numeric_limits<double>::infinity();
        rec.infinite = true;
    } else {
        rec.ratio = lhs / rhs;
    }
    return rec;
}

namespace {

void require_boundary_center(const SpaceTimeField& f, const SpaceTimePoint& z, const char* who) {
    if (!f.grid().on_flat_boundary(z))
        throw std::invalid_argument(std::string(who) + ": needs a boundary center on a half-space grid");
}

void check_identity(double got, double want, const char* what) {
    if (std::abs(got - want) > kExponentTol) {
        std::ostringstream os;
        os << "exponent identity " << what << " violated by " << std::abs(got - want);
        throw std::domain_error(os.str());
    }
}

// Hoelder/Sobolev bookkeeping behind the scaled L^3 estimate.
void verify_l3_exponents(const ExponentSet& ex) {
    const double alpha = 1.0 / ex.q;
    const double beta = (1.0 - 1.0 / ex.q) / 3.0;
    const double delta = 1.0 / ex.p;
    check_identity(2.0 * alpha + 6.0 * beta + ex.p * delta, 3.0, "2a + 6b + p d = 3");
    check_identity(alpha + beta + delta, 1.0, "a + b + d = 1");
    check_identity(alpha + 3.0 * beta, 1.0, "a + 3b = 1");
}

} // namespace

RatioRecord check_basiclemma(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                             const ExponentSet& exps, const QuadratureConfig& cfg) {
    require_boundary_center(f, z, "check_basiclemma");
    exps.validate();
    verify_l3_exponents(exps);

    const FunctionalReport rep = compute_report(f, z, r, exps, cfg);
    const double rhs = std::pow(rep.a, 1.0 / exps.q) * std::pow(rep.e, 1.0 - 1.0 / exps.q) * rep.g;
    return make_ratio("basic_l3", r, rep.c, rhs, z, f.id());
}

RatioRecord check_interior_l3(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                              const ExponentSet& exps, const QuadratureConfig& cfg) {
    if (f.grid().on_flat_boundary(z))
        throw std::invalid_argument("check_interior_l3: needs an interior center");
    exps.validate();
    verify_l3_exponents(exps);

    const FunctionalReport rep = compute_report(f, z, r, exps, cfg);
    const double rhs = std::pow(rep.a, 1.0 / exps.q) * std::pow(rep.e, 1.0 - 1.0 / exps.q) * rep.g +
                       std::sqrt(rep.a) * rep.g * rep.g;
    return make_ratio("interior_l3", r, rep.c, rhs, z, f.id());
}

// --- cutoff bump ---------------------------------------------------------

namespace {
double sstep(double u) { return u * u * u * (10.0 + u * (-15.0 + 6.0 * u)); }
double sstep_d1(double u) { return u * u * (30.0 + u * (-60.0 + 30.0 * u)); }
double sstep_d2(double u) { return u * (60.0 + u * (-180.0 + 120.0 * u)); }
} // namespace

double CutoffBump::Ramp::value(double x) const {
    if (!no_lower) {
        if (x <= lo0) return 0.0;
        if (x < lo1) return sstep((x - lo0) / (lo1 - lo0));
    }
    if (x <= hi1) return 1.0;
    if (x >= hi0) return 0.0;
    return sstep((hi0 - x) / (hi0 - hi1));
}

double CutoffBump::Ramp::d1(double x) const {
    if (!no_lower && x > lo0 && x < lo1) {
        const double w = lo1 - lo0;
        return sstep_d1((x - lo0) / w) / w;
    }
    if (x > hi1 && x < hi0) {
        const double w = hi0 - hi1;
        return -sstep_d1((hi0 - x) / w) / w;
    }
    return 0.0;
}

double CutoffBump::Ramp::d2(double x) const {
    if (!no_lower && x > lo0 && x < lo1) {
        const double w = lo1 - lo0;
        return sstep_d2((x - lo0) / w) / (w * w);
    }
    if (x > hi1 && x < hi0) {
        const double w = hi0 - hi1;
        return sstep_d2((hi0 - x) / w) / (w * w);
    }
    return 0.0;
}

CutoffBump::CutoffBump(const GridSpec& g, double edge_margin, double ramp, double t_on,
                       double t_full) {
    if (!(edge_margin > 0.0) || !(ramp > 0.0) || !(t_on >= 0.0) || !(t_full > t_on))
        throw std::invalid_argument("CutoffBump: margins must be positive with t_full > t_on");
    const Eigen::Vector3d lo = g.box_min(), hi = g.box_max();
    for (int d = 0; d < 3; ++d) {
        const double L = hi[d] - lo[d];
        Ramp& rp = axis_[d];
        rp.lo0 = lo[d] + edge_margin * L;
        rp.lo1 = rp.lo0 + ramp * L;
        rp.hi0 = hi[d] - edge_margin * L;
        rp.hi1 = rp.hi0 - ramp * L;
        rp.no_lower = (d == 2 && g.half_space);
        if (rp.no_lower) {
            rp.lo0 = rp.lo1 = lo[d] - 1.0;  // plateau reaches the flat boundary
        }
        if (rp.hi1 <= (rp.no_lower ? lo[d] : rp.lo1))
            throw std::invalid_argument("CutoffBump: ramps leave no plateau on axis " +
                                        std::to_string(d));
    }
    const double T = g.t_end() - g.t0;
    time_.no_lower = false;
    time_.lo0 = g.t0 + t_on * T;
    time_.lo1 = g.t0 + t_full * T;
    time_.hi1 = g.t_end() + T;  // never ramps down in time
    time_.hi0 = g.t_end() + 2.0 * T;
    if (time_.lo1 >= g.t_end())
        throw std::invalid_argument("CutoffBump: time ramp exceeds the grid time range");
}

double CutoffBump::value(const Eigen::Vector3d& x, double t) const {
    return axis_[0].value(x.x()) * axis_[1].value(x.y()) * axis_[2].value(x.z()) * time_.value(t);
}

double CutoffBump::dt(const Eigen::Vector3d& x, double t) const {
    return axis_[0].value(x.x()) * axis_[1].value(x.y()) * axis_[2].value(x.z()) * time_.d1(t);
}

Eigen::Vector3d CutoffBump::grad(const Eigen::Vector3d& x, double t) const {
    const double b0 = axis_[0].value(x.x()), b1 = axis_[1].value(x.y()), b2 = axis_[2].value(x.z());
    const double g = time_.value(t);
    return {axis_[0].d1(x.x()) * b1 * b2 * g, b0 * axis_[1].d1(x.y()) * b2 * g,
            b0 * b1 * axis_[2].d1(x.z()) * g};
}

double CutoffBump::laplacian(const Eigen::Vector3d& x, double t) const {
    const double b0 = axis_[0].value(x.x()), b1 = axis_[1].value(x.y()), b2 = axis_[2].value(x.z());
    const double g = time_.value(t);
    return (axis_[0].d2(x.x()) * b1 * b2 + b0 * axis_[1].d2(x.y()) * b2 +
            b0 * b1 * axis_[2].d2(x.z())) *
           g;
}

RatioRecord check_energy_inequality(const SpaceTimeField& f, const CutoffBump& cutoff,
                                    const QuadratureConfig& cfg) {
    (void)cfg;
    const GridSpec& g = f.grid();
    CellQuadrature box(g, g.t0, g.t_end());

    auto phi_at = [&](int i, int j, int k, int n) {
        return cutoff.value(g.node_pos(i, j, k), g.time(n));
    };

    // 2 * dissipation + transported terms, all as node scalars
    const CellFn dissip = cell_average([&](int i, int j, int k, int n) {
        return f.grad_u_mat(i, j, k, n).squaredNorm() * phi_at(i, j, k, n);
    });
    const CellFn transported = cell_average([&](int i, int j, int k, int n) {
        const Eigen::Vector3d x = g.node_pos(i, j, k);
        const double t = g.time(n);
        const Eigen::Vector3d uv = f.u_vec(i, j, k, n);
        const double u2 = uv.squaredNorm();
        const double p = f.pressure(i, j, k, n);
        const double phi = cutoff.value(x, t);
        return u2 * (cutoff.dt(x, t) + cutoff.laplacian(x, t)) +
               (u2 + 2.0 * p) * uv.dot(cutoff.grad(x, t)) +
               2.0 * f.forcing_vec(i, j, k, n).dot(uv) * phi;
    });

    const int n_end = g.nt - 1;
    const double final_kinetic = box.level_integral([&](int i, int j, int k) {
        double s = 0.0;
        for (int dk = 0; dk <= 1; ++dk)
            for (int dj = 0; dj <= 1; ++dj)
                for (int di = 0; di <= 1; ++di) {
                    const int ii = i + di, jj = j + dj, kk = k + dk;
                    s += f.u_vec(ii, jj, kk, n_end).squaredNorm() * phi_at(ii, jj, kk, n_end);
                }
        return 0.125 * s;
    });

    const double lhs = final_kinetic + 2.0 * box.st_integral(dissip);
    const double rhs = box.st_integral(transported);
    RatioRecord rec = make_ratio("energy_inequality", 0.0, lhs, rhs, SpaceTimePoint{}, f.id());
    return rec;
}

RatioRecord check_energy_consequence(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                                     const ExponentSet& exps, double gamma, double m_gamma,
                                     const QuadratureConfig& cfg) {
    exps.validate();
    const double a_half = functional_a(f, z, r / 2.0, cfg);
    const double e_half = functional_e(f, z, r / 2.0, cfg);
    const FunctionalReport rep = compute_report(f, z, r, exps, cfg);
    const double rhs = std::pow(rep.c, 2.0 / 3.0) + rep.c + rep.g * rep.d_tilde +
                       std::pow(r, 2.0 * (gamma + 1.0)) * m_gamma * m_gamma;
    return make_ratio("energy_consequence", r, a_half + e_half, rhs, z, f.id());
}

RatioRecord check_nonlinear_term(const SpaceTimeField& f, const SpaceTimePoint& z, double rho,
                                 const ExponentSet& exps, ClipMode mode,
                                 const QuadratureConfig& cfg) {
    exps.validate();
    if (mode == ClipMode::Half) require_boundary_center(f, z, "check_nonlinear_term");
    const ParabolicCylinder cyl{z, rho, mode};
    CellQuadrature q(f.grid(), cyl, cfg);

    const double lhs = q.lpq(cell_convection_mag(f), PQPair::finite(exps.kappa, exps.lambda));
    const double a = functional_a(f, z, rho, cfg);
    const double e = functional_e(f, z, rho, cfg);
    double rhs = std::pow(e, 1.0 / exps.lambda) *
                 std::pow(a, (3.0 - 2.0 * exps.kappa) / (2.0 * exps.kappa));
    if (mode == ClipMode::Interior) {
        const double gval = functional_g(f, z, rho, exps, cfg);
        rhs += std::sqrt(e) * std::pow(a, (2.0 - exps.kappa) / (2.0 * exps.kappa)) *
               std::pow(gval, (exps.kappa - 1.0) / exps.kappa);
    }
    rhs *= rho;
    return make_ratio(mode == ClipMode::Half ? "nonlinear_boundary" : "nonlinear_interior", rho,
                      lhs, rhs, z, f.id());
}

namespace {

// measure-normalized mixed norm over a prepared region
double normalized_lpq(const CellQuadrature& q, const CellFn& fn, const PQPair& pq) {
    const double v = q.spatial_volume();
    const double T = q.time_length();
    const double norm = q.lpq(fn, pq);
    return norm / (std::pow(v, pq.p.inv()) * std::pow(T, pq.q.inv()));
}

CellQuadrature region_quadrature(const SpaceTimeField& f,
                                 const std::optional<ParabolicCylinder>& region,
                                 const QuadratureConfig& cfg) {
    if (region) return CellQuadrature(f.grid(), *region, cfg);
    return CellQuadrature(f.grid(), f.grid().t0, f.grid().t_end());
}

} // namespace

RatioRecord check_L4_interpolation(const SpaceTimeField& f,
                                   const std::optional<ParabolicCylinder>& region,
                                   const PQPair& rs, const QuadratureConfig& cfg) {
    const L4Weights w = interp_L4_exponents(rs);
    CellQuadrature q = region_quadrature(f, region, cfg);
    const CellFn speed = cell_speed(f);

    const double lhs = normalized_lpq(q, speed, PQPair::finite(4.0, 4.0));
    const double n_rs = normalized_lpq(q, speed, rs);
    const double n_2inf =
        normalized_lpq(q, speed, PQPair(Exponent::finite(2.0), Exponent::infinite()));
    const double n_62 = normalized_lpq(q, speed, PQPair::finite(6.0, 2.0));
    const double rhs =
        std::pow(n_rs, w.half) * std::pow(n_2inf, w.one_over_q) * std::pow(n_62, w.three_over_2p);

    RatioRecord rec = make_ratio("l4_interpolation", region ? region->radius : 0.0, lhs, rhs,
                                 region ? region->center : SpaceTimePoint{}, f.id());
    if (w.endpoint_warning) rec.note = "endpoint (r,s)=(3,inf) accepted outside 3<r<inf";
    if (w.pq_naming_flag && rec.note.empty())
        rec.note = "weights use the displayed p,q naming tied to (r,s)";
    return rec;
}

RatioRecord check_sec4_interpolation(const SpaceTimeField& f,
                                     const std::optional<ParabolicCylinder>& region,
                                     const LMPair& lm, const QuadratureConfig& cfg) {
    const Sec4Exponents ex = interp_sec4_exponents(lm);
    CellQuadrature q = region_quadrature(f, region, cfg);
    const CellFn speed = cell_speed(f);
    const SpaceTimePoint center = region ? region->center : SpaceTimePoint{};
    const double rr = region ? region->radius : 0.0;

    if (ex.l_greater_m) {
        const double k = *ex.k;
        const double lhs = normalized_lpq(q, speed, PQPair::finite(k, k));
        const double n_lm = normalized_lpq(q, speed, PQPair::finite(lm.l, lm.m));
        const double n_2inf =
            normalized_lpq(q, speed, PQPair(Exponent::finite(2.0), Exponent::infinite()));
        const double rhs = std::pow(n_lm, 1.0 - ex.sigma) * std::pow(n_2inf, ex.sigma);
        return make_ratio("sec4_interpolation_lk", rr, lhs, rhs, center, f.id());
    }

    RatioRecord rec;
    if (ex.alpha_degenerate) {
        rec = make_ratio("sec4_interpolation_l4", rr, 0.0, 0.0, center, f.id());
        rec.note = "alpha numerator vanishes; exponents degenerate";
        return rec;
    }
    const double lhs = normalized_lpq(q, speed, PQPair::finite(4.0, 4.0));
    const double n_lm = normalized_lpq(q, speed, PQPair::finite(lm.l, lm.m));
    const double n_2inf =
        normalized_lpq(q, speed, PQPair(Exponent::finite(2.0), Exponent::infinite()));
    const double n_62 = normalized_lpq(q, speed, PQPair::finite(6.0, 2.0));
    const double w2 = (6.0 - ex.alpha) * (1.0 - ex.sigma) / (2.0 * ex.alpha);
    const double w3 = 2.0 * (1.0 - ex.sigma) / ex.beta;
    const double rhs =
        std::pow(n_lm, ex.sigma) * std::pow(n_2inf, w2) * std::pow(n_62, w3);
    return make_ratio("sec4_interpolation_l4", rr, lhs, rhs, center, f.id());
}

RatioRecord check_pressure_bound(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                                 double rho, const ExponentSet& exps,
                                 const PressureBoundData& data, ClipMode mode,
                                 const QuadratureConfig& cfg) {
    exps.validate();
    if (!(r > 0.0) || r > rho / 4.0)
        throw std::invalid_argument("check_pressure_bound: need 0 < r <= rho/4");
    if (mode == ClipMode::Half) require_boundary_center(f, z, "check_pressure_bound");

    const double lhs = functional_d1_tilde(f, z, r, exps, cfg);
    const double a = functional_a(f, z, rho, cfg);
    const double e = functional_e(f, z, rho, cfg);
    const double d1_rho =
        data.d1_rho ? *data.d1_rho : functional_d1_tilde(f, z, rho, exps, cfg);

    double inner = std::pow(e, 1.0 / exps.lambda) *
                   std::pow(a, (3.0 - 2.0 * exps.kappa) / (2.0 * exps.kappa));
    if (mode == ClipMode::Interior) {
        const double gval = functional_g(f, z, rho, exps, cfg);
        inner += std::sqrt(e) * std::pow(a, (2.0 - exps.kappa) / (2.0 * exps.kappa)) *
                 std::pow(gval, (exps.kappa - 1.0) / exps.kappa);
    }
    inner += std::pow(rho, data.gamma + 1.0) * data.m_gamma;
    const double rhs = (rho / r) * inner + (r / rho) * (std::sqrt(e) + d1_rho);
    return make_ratio(mode == ClipMode::Half ? "pressure_bound_boundary" : "pressure_bound_interior",
                      r, lhs, rhs, z, f.id());
}

} // namespace cyllens
