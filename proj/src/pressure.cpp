#include "cyllens/pressure.hpp"

#include "cyllens/errors.hpp"
#include "cyllens/poisson.hpp"
#include "cyllens/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cyllens {

namespace {

// centered second-difference Laplacian of a box-local level array
double box_laplacian(const std::vector<double>& a, int bnx, int bny, int bnz, double h, int i,
                     int j, int k, std::int64_t level_off) {
    auto at = [&](int ii, int jj, int kk) {
        return a[static_cast<std::size_t>(level_off + (std::int64_t(kk) * bny + jj) * bnx + ii)];
    };
    (void)bnz;
    return (at(i + 1, j, k) + at(i - 1, j, k) + at(i, j + 1, k) + at(i, j - 1, k) +
            at(i, j, k + 1) + at(i, j, k - 1) - 6.0 * at(i, j, k)) /
           (h * h);
}

} // namespace

PressureSplit decompose_interior(const SpaceTimeField& f, const SpaceTimePoint& z, double rho,
                                 const QuadratureConfig& cfg) {
    cfg.validate();
    const GridSpec& g = f.grid();
    if (rho < cfg.min_cells * g.h)
        throw resolution_error("decompose_interior: rho under-resolved");

    const Eigen::Vector3d lo_box = g.box_min(), hi_box = g.box_max();
    for (int d = 0; d < 3; ++d) {
        if (z.x[d] - rho < lo_box[d] + 2.0 * g.h - 1e-12 ||
            z.x[d] + rho > hi_box[d] - 2.0 * g.h + 1e-12)
            throw std::out_of_range(
                "decompose_interior: ball must sit at least two cells inside the grid");
    }

    PressureSplit split;
    split.center = z;
    split.rho = rho;
    for (int d = 0; d < 3; ++d) {
        split.lo[d] = static_cast<int>(std::floor((z.x[d] - rho - g.origin[d]) / g.h));
        split.hi[d] = static_cast<int>(std::ceil((z.x[d] + rho - g.origin[d]) / g.h));
        split.lo[d] = std::max(split.lo[d] - 1, 0);
        split.hi[d] = std::min(split.hi[d] + 1, (d == 0 ? g.nx : d == 1 ? g.ny : g.nz) - 1);
    }

    const double tb = std::max(z.t - rho * rho, g.t0);
    const double te = std::min(z.t, g.t_end());
    if (!(te > tb)) throw std::out_of_range("decompose_interior: time window misses the grid");
    int n0 = std::clamp(static_cast<int>(std::floor((tb - g.t0) / g.dt)), 0, g.nt - 1);
    int n1 = std::clamp(static_cast<int>(std::ceil((te - g.t0) / g.dt)), 0, g.nt - 1);
    split.level_begin = n0;
    split.level_count = n1 - n0 + 1;

    const int bnx = split.bnx(), bny = split.bny(), bnz = split.bnz();
    const std::size_t per_level = static_cast<std::size_t>(bnx) * bny * bnz;
    split.p1.assign(per_level * static_cast<std::size_t>(split.level_count), 0.0);
    split.p2.assign(split.p1.size(), 0.0);
    split.level_means.assign(static_cast<std::size_t>(split.level_count), 0.0);

    DirichletPoissonSolver solver(bnx, bny, bnz, g.h);
    std::vector<double> rhs(per_level, 0.0);

    // ball nodes used for the mean convention and the harmonicity probe
    std::vector<std::array<int, 3>> ball_nodes;
    std::vector<std::array<int, 3>> probe_nodes;  // strictly interior to ball and box
    for (int k = split.lo.z(); k <= split.hi.z(); ++k)
        for (int j = split.lo.y(); j <= split.hi.y(); ++j)
            for (int i = split.lo.x(); i <= split.hi.x(); ++i) {
                const double dist = (g.node_pos(i, j, k) - z.x).norm();
                if (dist < rho) ball_nodes.push_back({i, j, k});
                if (dist < rho - g.h && i > split.lo.x() && i < split.hi.x() &&
                    j > split.lo.y() && j < split.hi.y() && k > split.lo.z() && k < split.hi.z())
                    probe_nodes.push_back({i, j, k});
            }
    if (ball_nodes.empty() || probe_nodes.empty())
        throw resolution_error("decompose_interior: ball carries no interior nodes");

    double worst_poisson = 0.0;
    double lap_p2_max = 0.0, lap_p_max = 0.0;
    const bool have_p = !f.component(3).empty();

    for (int lv = 0; lv < split.level_count; ++lv) {
        const int n = split.level_begin + lv;
        // rhs = div(f - (u.grad)u) from parent-grid stencils
        for (int k = 1; k < bnz - 1; ++k)
            for (int j = 1; j < bny - 1; ++j)
                for (int i = 1; i < bnx - 1; ++i) {
                    const int gi = split.lo.x() + i, gj = split.lo.y() + j, gk = split.lo.z() + k;
                    auto w = [&](int c, int ii, int jj, int kk) {
                        return f.forcing(c, ii, jj, kk, n) - f.convection(ii, jj, kk, n)[c];
                    };
                    rhs[static_cast<std::size_t>((std::int64_t(k) * bny + j) * bnx + i)] =
                        (w(0, gi + 1, gj, gk) - w(0, gi - 1, gj, gk) + w(1, gi, gj + 1, gk) -
                         w(1, gi, gj - 1, gk) + w(2, gi, gj, gk + 1) - w(2, gi, gj, gk - 1)) /
                        (2.0 * g.h);
                }
        double rel = 0.0;
        const auto p1_level = solver.solve(rhs, &rel);
        worst_poisson = std::max(worst_poisson, rel);

        const std::int64_t off = std::int64_t(lv) * std::int64_t(per_level);
        std::copy(p1_level.begin(), p1_level.end(), split.p1.begin() + off);

        // p2 = p - p1 - ball mean of (p - p1)
        double mean = 0.0;
        for (const auto& nd : ball_nodes) {
            const double diff =
                f.pressure(nd[0], nd[1], nd[2], n) -
                split.p1_at(nd[0], nd[1], nd[2], n);
            mean += diff;
        }
        mean /= double(ball_nodes.size());
        split.level_means[static_cast<std::size_t>(lv)] = mean;

        for (int k = 0; k < bnz; ++k)
            for (int j = 0; j < bny; ++j)
                for (int i = 0; i < bnx; ++i) {
                    const int gi = split.lo.x() + i, gj = split.lo.y() + j, gk = split.lo.z() + k;
                    const std::size_t idx =
                        static_cast<std::size_t>(off + (std::int64_t(k) * bny + j) * bnx + i);
                    split.p2[idx] = f.pressure(gi, gj, gk, n) - split.p1[idx] - mean;
                }

        // harmonicity of p2 over the ball interior, relative to p itself
        for (const auto& nd : probe_nodes) {
            const int i = nd[0] - split.lo.x(), j = nd[1] - split.lo.y(), k = nd[2] - split.lo.z();
            const double l2 = box_laplacian(split.p2, bnx, bny, bnz, g.h, i, j, k, off);
            lap_p2_max = std::max(lap_p2_max, std::abs(l2));
            if (have_p) {
                auto lap_p = [&] {
                    auto at = [&](int ii, int jj, int kk) {
                        return f.pressure(ii, jj, kk, n);
                    };
                    return (at(nd[0] + 1, nd[1], nd[2]) + at(nd[0] - 1, nd[1], nd[2]) +
                            at(nd[0], nd[1] + 1, nd[2]) + at(nd[0], nd[1] - 1, nd[2]) +
                            at(nd[0], nd[1], nd[2] + 1) + at(nd[0], nd[1], nd[2] - 1) -
                            6.0 * at(nd[0], nd[1], nd[2])) /
                           (g.h * g.h);
                }();
                lap_p_max = std::max(lap_p_max, std::abs(lap_p));
            }
        }
    }

    split.poisson_residual = worst_poisson;
    split.harmonic_residual_abs = lap_p2_max;
    if (lap_p_max > 0.0)
        split.harmonic_residual = lap_p2_max / lap_p_max;
    else
        split.harmonic_residual =
            lap_p2_max > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return split;
}

SplitD1 d1_from_split(const SpaceTimeField& f, const PressureSplit& split,
                      const SpaceTimePoint& z, double r, const ExponentSet& exps,
                      const QuadratureConfig& cfg) {
    exps.validate();
    if (r > split.rho + 1e-12)
        throw std::invalid_argument("d1_from_split: r must not exceed the split radius");

    const GridSpec& g = f.grid();
    ParabolicCylinder cyl{z, r, ClipMode::Interior};
    CellQuadrature q(g, cyl, cfg);

    const int bnx = split.bnx(), bny = split.bny(), bnz = split.bnz();
    auto grad_mag = [&](const std::vector<double>& a) {
        return cell_average([&, bnx, bny, bnz](int gi, int gj, int gk, int n) {
            if (!split.contains_level(n) || !split.contains_node(gi, gj, gk))
                throw std::out_of_range("d1_from_split: cylinder leaves the split box");
            const int i = gi - split.lo.x(), j = gj - split.lo.y(), k = gk - split.lo.z();
            const std::int64_t off =
                std::int64_t(n - split.level_begin) * bnx * bny * bnz;
            auto at = [&](int ii, int jj, int kk) {
                return a[static_cast<std::size_t>(off + (std::int64_t(kk) * bny + jj) * bnx + ii)];
            };
            auto d1 = [&](int axis) {
                const int c[3] = {i, j, k};
                const int nmax[3] = {bnx, bny, bnz};
                auto sh = [&](int offn) {
                    int ii = i, jj = j, kk = k;
                    (axis == 0 ? ii : axis == 1 ? jj : kk) += offn;
                    return at(ii, jj, kk);
                };
                if (c[axis] == 0) return (-3.0 * sh(0) + 4.0 * sh(1) - sh(2)) / (2.0 * g.h);
                if (c[axis] == nmax[axis] - 1)
                    return (3.0 * sh(0) - 4.0 * sh(-1) + sh(-2)) / (2.0 * g.h);
                return (sh(1) - sh(-1)) / (2.0 * g.h);
            };
            const double gx = d1(0), gy = d1(1), gz = d1(2);
            return std::sqrt(gx * gx + gy * gy + gz * gz);
        });
    };

    const double kappa_prime = 3.0 / (2.0 - 2.0 / exps.lambda);
    SplitD1 out;
    out.d1_p1 = q.lpq(grad_mag(split.p1), PQPair::finite(exps.kappa, exps.lambda)) / r;
    out.d1_p2 = q.lpq(grad_mag(split.p2), PQPair::finite(exps.kappa, exps.lambda)) / r;
    out.d1_p2_kappa_prime =
        q.lpq(grad_mag(split.p2), PQPair::finite(kappa_prime, exps.lambda)) / r;
    return out;
}

} // namespace cyllens
