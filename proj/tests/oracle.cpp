#include "oracle.hpp"

#include <algorithm>
#include <cmath>

namespace cyltest {

namespace {

// iterate Riemann cube centers covering ball-cap-box; calls g(point, weight)
template <class Fn>
void for_points(const DenseOracle& o, const Eigen::Vector3d& c, double r, Fn&& g) {
    const double w = o.dx * o.dx * o.dx;
    Eigen::Vector3d lo = (c.array() - r).max(o.box_lo.array()).matrix();
    Eigen::Vector3d hi = (c.array() + r).min(o.box_hi.array()).matrix();
    const int nx = std::max(1, int(std::ceil((hi.x() - lo.x()) / o.dx)));
    const int ny = std::max(1, int(std::ceil((hi.y() - lo.y()) / o.dx)));
    const int nz = std::max(1, int(std::ceil((hi.z() - lo.z()) / o.dx)));
    const double r2 = r * r;
    for (int k = 0; k < nz; ++k) {
        const double z = lo.z() + (k + 0.5) * o.dx;
        if (z > hi.z()) continue;
        for (int j = 0; j < ny; ++j) {
            const double y = lo.y() + (j + 0.5) * o.dx;
            if (y > hi.y()) continue;
            for (int i = 0; i < nx; ++i) {
                const double x = lo.x() + (i + 0.5) * o.dx;
                if (x > hi.x()) continue;
                const Eigen::Vector3d p(x, y, z);
                if ((p - c).squaredNorm() < r2) g(p, w);
            }
        }
    }
}

} // namespace

double DenseOracle::ball_integral(const Integrand& f, const Eigen::Vector3d& c, double r,
                                  double t) const {
    double acc = 0.0;
    for_points(*this, c, r, [&](const Eigen::Vector3d& p, double w) { acc += f(p, t) * w; });
    return acc;
}

double DenseOracle::ball_lp(const Integrand& f, const Eigen::Vector3d& c, double r, double t,
                            double p) const {
    double acc = 0.0;
    for_points(*this, c, r,
               [&](const Eigen::Vector3d& x, double w) { acc += std::pow(std::abs(f(x, t)), p) * w; });
    return std::pow(acc, 1.0 / p);
}

double DenseOracle::ball_volume(const Eigen::Vector3d& c, double r, double t) const {
    (void)t;
    double acc = 0.0;
    for_points(*this, c, r, [&](const Eigen::Vector3d&, double w) { acc += w; });
    return acc;
}

double DenseOracle::st_integral(const Integrand& f, const Eigen::Vector3d& c, double r,
                                double t_begin, double t_end) const {
    const double len = t_end - t_begin;
    const double ds = len / time_sub;
    double acc = 0.0;
    for (int s = 0; s < time_sub; ++s) {
        const double t = t_begin + (s + 0.5) * ds;
        acc += ball_integral(f, c, r, t) * ds;
    }
    return acc;
}

double DenseOracle::lpq(const Integrand& f, const Eigen::Vector3d& c, double r, double t_begin,
                        double t_end, double p, double q) const {
    const double len = t_end - t_begin;
    const double ds = len / time_sub;
    if (q <= 0.0) {
        double m = 0.0;
        for (int s = 0; s < time_sub; ++s)
            m = std::max(m, ball_lp(f, c, r, t_begin + (s + 0.5) * ds, p));
        return m;
    }
    double acc = 0.0;
    for (int s = 0; s < time_sub; ++s)
        acc += std::pow(ball_lp(f, c, r, t_begin + (s + 0.5) * ds, p), q) * ds;
    return std::pow(acc, 1.0 / q);
}

namespace {

Integrand interp_scalar(const cyllens::SpaceTimeField& f,
                        std::function<double(const cyllens::SpaceTimeField&, int, int, int, int)> at) {
    const cyllens::GridSpec g = f.grid();
    return [&f, g, at](const Eigen::Vector3d& x, double t) {
        auto clampf = [](double v, double lo, double hi) { return std::min(std::max(v, lo), hi); };
        const double fi = clampf((x.x() - g.origin.x()) / g.h, 0.0, double(g.nx - 1) - 1e-12);
        const double fj = clampf((x.y() - g.origin.y()) / g.h, 0.0, double(g.ny - 1) - 1e-12);
        const double fk = clampf((x.z() - g.origin.z()) / g.h, 0.0, double(g.nz - 1) - 1e-12);
        const double fn = clampf((t - g.t0) / g.dt, 0.0, double(g.nt - 1) - 1e-12);
        const int i = int(fi), j = int(fj), k = int(fk), n = int(fn);
        const double ai = fi - i, aj = fj - j, ak = fk - k, an = fn - n;
        double acc = 0.0;
        for (int dn = 0; dn <= 1; ++dn)
            for (int dk = 0; dk <= 1; ++dk)
                for (int dj = 0; dj <= 1; ++dj)
                    for (int di = 0; di <= 1; ++di) {
                        const double wt = (di ? ai : 1 - ai) * (dj ? aj : 1 - aj) *
                                          (dk ? ak : 1 - ak) * (dn ? an : 1 - an);
                        if (wt != 0.0) acc += wt * at(f, i + di, j + dj, k + dk, n + dn);
                    }
        return acc;
    };
}

} // namespace

Integrand interp_speed(const cyllens::SpaceTimeField& f) {
    return interp_scalar(f, [](const cyllens::SpaceTimeField& fl, int i, int j, int k, int n) {
        return fl.u_vec(i, j, k, n).norm();
    });
}

Integrand interp_pressure(const cyllens::SpaceTimeField& f) {
    return interp_scalar(f, [](const cyllens::SpaceTimeField& fl, int i, int j, int k, int n) {
        return fl.pressure(i, j, k, n);
    });
}

} // namespace cyltest
