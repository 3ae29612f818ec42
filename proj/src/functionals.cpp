#include "cyllens/functionals.hpp"

#include <cmath>

namespace cyllens {

ClipMode infer_clip(const GridSpec& grid, const SpaceTimePoint& z) {
    return grid.on_flat_boundary(z) ? ClipMode::Half : ClipMode::Interior;
}

ParabolicCylinder make_cylinder(const GridSpec& grid, const SpaceTimePoint& z, double r) {
    return ParabolicCylinder{z, r, infer_clip(grid, z)};
}

CellFn cell_speed(const SpaceTimeField& f) {
    return cell_average([&f](int i, int j, int k, int n) { return f.u_vec(i, j, k, n).norm(); });
}

CellFn cell_speed_sq(const SpaceTimeField& f) {
    return cell_average(
        [&f](int i, int j, int k, int n) { return f.u_vec(i, j, k, n).squaredNorm(); });
}

CellFn cell_speed_cu(const SpaceTimeField& f) {
    return cell_average([&f](int i, int j, int k, int n) {
        const double m = f.u_vec(i, j, k, n).norm();
        return m * m * m;
    });
}

CellFn cell_grad_u_sq(const SpaceTimeField& f) {
    return cell_average(
        [&f](int i, int j, int k, int n) { return f.grad_u_mat(i, j, k, n).squaredNorm(); });
}

CellFn cell_grad_p_mag(const SpaceTimeField& f) {
    return cell_average(
        [&f](int i, int j, int k, int n) { return f.grad_p_vec(i, j, k, n).norm(); });
}

CellFn cell_pressure(const SpaceTimeField& f) {
    return cell_average([&f](int i, int j, int k, int n) { return f.pressure(i, j, k, n); });
}

CellFn cell_convection_mag(const SpaceTimeField& f) {
    return cell_average(
        [&f](int i, int j, int k, int n) { return f.convection(i, j, k, n).norm(); });
}

namespace {

double a_of(const SpaceTimeField& f, const CellQuadrature& q, double r) {
    const CellFn u2 = cell_speed_sq(f);
    double sup = 0.0;
    for (int s = 0; s < q.slab_count(); ++s) sup = std::max(sup, q.slab_integral(u2, s));
    return sup / r;
}

double c_of(const SpaceTimeField& f, const CellQuadrature& q, double r) {
    return q.st_integral(cell_speed_cu(f)) / (r * r);
}

double e_of(const SpaceTimeField& f, const CellQuadrature& q, double r) {
    return q.st_integral(cell_grad_u_sq(f)) / r;
}

double g_of(const SpaceTimeField& f, const CellQuadrature& q, double r, const ExponentSet& ex) {
    return q.lpq(cell_speed(f), ex.pq()) / r;
}

// temporal L^lambda of the spatial L^pe norm of the mean-subtracted pressure
double mean_sub_lpq(const SpaceTimeField& f, const CellQuadrature& q, double pe, double lambda) {
    const CellFn p = cell_pressure(f);
    const Exponent pex = Exponent::finite(pe);
    double acc = 0.0;
    for (int s = 0; s < q.slab_count(); ++s) {
        const double mean = q.slab_mean(p, s);
        const CellFn sub = [&p, mean](int i, int j, int k, int n) { return p(i, j, k, n) - mean; };
        acc += std::pow(q.slab_lp(sub, pex, s), lambda) * q.slab_weight(s);
    }
    return std::pow(acc, 1.0 / lambda);
}

double d_tilde_of(const SpaceTimeField& f, const CellQuadrature& q, double r,
                  const ExponentSet& ex) {
    return mean_sub_lpq(f, q, ex.kappa_star, ex.lambda) / r;
}

double d1_tilde_of(const SpaceTimeField& f, const CellQuadrature& q, double r,
                   const ExponentSet& ex) {
    return q.lpq(cell_grad_p_mag(f), PQPair::finite(ex.kappa, ex.lambda)) / r;
}

double d_of(const SpaceTimeField& f, const CellQuadrature& q, double r) {
    const CellFn p = cell_pressure(f);
    double acc = 0.0;
    for (int s = 0; s < q.slab_count(); ++s) {
        const double mean = q.slab_mean(p, s);
        const double sp = q.slab_integral(
            [&p, mean](int i, int j, int k, int n) {
                return std::pow(std::abs(p(i, j, k, n) - mean), 1.5);
            },
            s);
        acc += sp * q.slab_weight(s);
    }
    return acc / (r * r);
}

double d1_of(const SpaceTimeField& f, const CellQuadrature& q, double r) {
    return q.lpq_power(cell_grad_p_mag(f), 9.0 / 8.0, 4.0 / 3.0) / std::pow(r, 1.5);
}

double criterion_of(const SpaceTimeField& f, const CellQuadrature& q, double r,
                    const PQPair& pq) {
    const double expo = criterion_exponent(pq);
    return std::pow(r, -expo) * q.lpq(cell_speed(f), pq);
}

} // namespace

double functional_a(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                    const QuadratureConfig& cfg) {
    CellQuadrature q(f.grid(), make_cylinder(f.grid(), z, r), cfg);
    return a_of(f, q, r);
}

double functional_c(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                    const QuadratureConfig& cfg) {
    CellQuadrature q(f.grid(), make_cylinder(f.grid(), z, r), cfg);
    return c_of(f, q, r);
}

double functional_e(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                    const QuadratureConfig& cfg) {
    CellQuadrature q(f.grid(), make_cylinder(f.grid(), z, r), cfg);
    return e_of(f, q, r);
}

double functional_g(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                    const ExponentSet& exps, const QuadratureConfig& cfg) {
    exps.validate();
    CellQuadrature q(f.grid(), make_cylinder(f.grid(), z, r), cfg);
    return g_of(f, q, r, exps);
}

double functional_d_tilde(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                          const ExponentSet& exps, const QuadratureConfig& cfg) {
    exps.validate();
    CellQuadrature q(f.grid(), make_cylinder(f.grid(), z, r), cfg);
    return d_tilde_of(f, q, r, exps);
}

double functional_d1_tilde(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                           const ExponentSet& exps, const QuadratureConfig& cfg) {
    exps.validate();
    CellQuadrature q(f.grid(), make_cylinder(f.grid(), z, r), cfg);
    return d1_tilde_of(f, q, r, exps);
}

double functional_d(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                    const QuadratureConfig& cfg) {
    CellQuadrature q(f.grid(), make_cylinder(f.grid(), z, r), cfg);
    return d_of(f, q, r);
}

double functional_d1(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                     const QuadratureConfig& cfg) {
    CellQuadrature q(f.grid(), make_cylinder(f.grid(), z, r), cfg);
    return d1_of(f, q, r);
}

double criterion_quantity(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                          const PQPair& pq, const QuadratureConfig& cfg) {
    CellQuadrature q(f.grid(), make_cylinder(f.grid(), z, r), cfg);
    return criterion_of(f, q, r, pq);
}

FunctionalReport compute_report(const SpaceTimeField& f, const SpaceTimePoint& z, double r,
                                const ExponentSet& exps, const QuadratureConfig& cfg) {
    exps.validate();
    const ParabolicCylinder cyl = make_cylinder(f.grid(), z, r);
    CellQuadrature q(f.grid(), cyl, cfg);

    FunctionalReport rep;
    rep.center = z;
    rep.r = r;
    rep.exponents = exps;
    rep.pq = exps.pq();
    rep.clip = cyl.clip;
    rep.domain_clipped = q.domain_clipped();
    rep.a = a_of(f, q, r);
    rep.c = c_of(f, q, r);
    rep.e = e_of(f, q, r);
    rep.g = g_of(f, q, r, exps);
    const bool have_p = !f.component(3).empty();
    if (have_p) {
        rep.d_tilde = d_tilde_of(f, q, r, exps);
        rep.d1_tilde = d1_tilde_of(f, q, r, exps);
        rep.d = d_of(f, q, r);
        rep.d1 = d1_of(f, q, r);
    }
    rep.criterion = criterion_of(f, q, r, rep.pq);
    return rep;
}

std::vector<FunctionalReport> sweep(const SpaceTimeField& f, const SpaceTimePoint& z,
                                    const std::vector<double>& radii, const ExponentSet& exps,
                                    const QuadratureConfig& cfg) {
    std::vector<FunctionalReport> out;
    out.reserve(radii.size());
    for (double r : radii) out.push_back(compute_report(f, z, r, exps, cfg));
    return out;
}

} // namespace cyllens
