#include "cyllens/quadrature.hpp"

#include "cyllens/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cyllens {

namespace {
constexpr double kGeomTol = 1e-12;
}

void CellQuadrature::build_slabs(double tb, double te) {
    const double t_lo = grid_.t0;
    const double t_hi = grid_.t_end();
    const double b = std::max(tb, t_lo);
    const double e = std::min(te, t_hi);
    if (!(e > b + kGeomTol * std::max(1.0, std::abs(e))))
        throw std::out_of_range("CellQuadrature: time window misses the grid");
    int n0 = static_cast<int>(std::floor((b - t_lo) / grid_.dt));
    n0 = std::clamp(n0, 0, grid_.nt - 2);
    for (int n = n0; n <= grid_.nt - 2; ++n) {
        const double lo = std::max(grid_.time(n), b);
        const double hi = std::min(grid_.time(n + 1), e);
        const double tau = hi - lo;
        if (tau > kGeomTol * grid_.dt) {
            slab_levels_.push_back(n);
            slab_tau_.push_back(tau);
        }
        if (grid_.time(n + 1) >= e) break;
    }
    if (slab_levels_.empty())
        throw std::out_of_range("CellQuadrature: no time slab overlaps the window");
}

void CellQuadrature::build_box_cells() {
    const double h3 = grid_.h * grid_.h * grid_.h;
    cells_.reserve(static_cast<std::size_t>(grid_.nx - 1) * (grid_.ny - 1) * (grid_.nz - 1));
    for (int k = 0; k < grid_.nz - 1; ++k)
        for (int j = 0; j < grid_.ny - 1; ++j)
            for (int i = 0; i < grid_.nx - 1; ++i) cells_.push_back({i, j, k, h3});
    spatial_volume_ = h3 * double(cells_.size());
}

CellQuadrature::CellQuadrature(const GridSpec& g, double t_begin, double t_end) : grid_(g) {
    build_slabs(t_begin, t_end);
    build_box_cells();
}

CellQuadrature::CellQuadrature(const GridSpec& g, const ParabolicCylinder& cyl,
                               const QuadratureConfig& cfg)
    : grid_(g) {
    cfg.validate();
    if (cyl.radius < cfg.min_cells * g.h) {
        std::ostringstream os;
        os << "CellQuadrature: radius " << cyl.radius << " under-resolved; need at least "
           << cfg.min_cells << " cells (" << cfg.min_cells * g.h << ") at spacing " << g.h;
        throw resolution_error(os.str());
    }
    if (cyl.clip == ClipMode::Half && !g.half_space)
        throw std::invalid_argument("CellQuadrature: half clip needs a half-space grid");

    const Eigen::Vector3d c = cyl.center.x;
    const double r = cyl.radius;
    const Eigen::Vector3d lo = g.box_min(), hi = g.box_max();

    // mixed-case flag: clipping not intrinsic to the Q+ definition
    for (int d = 0; d < 3; ++d) {
        const bool floor_exempt = cyl.clip == ClipMode::Half && d == 2;
        if (c[d] - r < lo[d] - kGeomTol && !floor_exempt) domain_clipped_ = true;
        if (c[d] + r > hi[d] + kGeomTol) domain_clipped_ = true;
    }
    if (cyl.t_begin() < g.t0 - kGeomTol && cyl.clip != ClipMode::Half) domain_clipped_ = true;
    if (cyl.t_end() > g.t_end() + kGeomTol) domain_clipped_ = true;

    build_slabs(cyl.t_begin(), cyl.t_end());

    int i0 = static_cast<int>(std::floor((c.x() - r - lo.x()) / g.h));
    int j0 = static_cast<int>(std::floor((c.y() - r - lo.y()) / g.h));
    int k0 = static_cast<int>(std::floor((c.z() - r - lo.z()) / g.h));
    int i1 = static_cast<int>(std::ceil((c.x() + r - lo.x()) / g.h));
    int j1 = static_cast<int>(std::ceil((c.y() + r - lo.y()) / g.h));
    int k1 = static_cast<int>(std::ceil((c.z() + r - lo.z()) / g.h));
    i0 = std::max(i0, 0);
    j0 = std::max(j0, 0);
    k0 = std::max(k0, 0);
    i1 = std::min(i1, g.nx - 1);
    j1 = std::min(j1, g.ny - 1);
    k1 = std::min(k1, g.nz - 1);
    if (i0 >= i1 || j0 >= j1 || k0 >= k1)
        throw std::out_of_range("CellQuadrature: cylinder does not overlap the grid box");

    const double r2 = r * r;
    const double h3 = g.h * g.h * g.h;
    const int s = cfg.subsample;
    std::vector<double> offs(static_cast<std::size_t>(s));
    for (int a = 0; a < s; ++a) offs[static_cast<std::size_t>(a)] = (a + 0.5) / s * g.h;
    const double inv_s3 = 1.0 / double(s) / double(s) / double(s);

    for (int k = k0; k < k1; ++k) {
        const double z0 = g.x3(k);
        for (int j = j0; j < j1; ++j) {
            const double y0 = g.x2(j);
            for (int i = i0; i < i1; ++i) {
                const double x0 = g.x1(i);
                // nearest/farthest corner classification
                double near2 = 0.0, far2 = 0.0;
                const double cc[3] = {c.x(), c.y(), c.z()};
                const double lo3[3] = {x0, y0, z0};
                for (int d = 0; d < 3; ++d) {
                    const double a = lo3[d], b = a + g.h;
                    double nd = 0.0;
                    if (cc[d] < a)
                        nd = a - cc[d];
                    else if (cc[d] > b)
                        nd = cc[d] - b;
                    const double fd = std::max(std::abs(cc[d] - a), std::abs(cc[d] - b));
                    near2 += nd * nd;
                    far2 += fd * fd;
                }
                if (near2 >= r2) continue;
                double w;
                if (far2 <= r2) {
                    w = h3;
                } else {
                    int cnt = 0;
                    for (double oz : offs) {
                        const double dz = z0 + oz - c.z();
                        for (double oy : offs) {
                            const double dy = y0 + oy - c.y();
                            const double rem = r2 - dz * dz - dy * dy;
                            if (rem <= 0.0) continue;
                            for (double ox : offs) {
                                const double dx = x0 + ox - c.x();
                                if (dx * dx < rem) ++cnt;
                            }
                        }
                    }
                    if (cnt == 0) continue;
                    w = h3 * cnt * inv_s3;
                }
                cells_.push_back({i, j, k, w});
                spatial_volume_ += w;
            }
        }
    }
    if (cells_.empty())
        throw std::out_of_range("CellQuadrature: clipped ball contains no grid cells");
}

double CellQuadrature::time_length() const {
    double t = 0.0;
    for (double tau : slab_tau_) t += tau;
    return t;
}

double CellQuadrature::slab_integral(const CellFn& f, int s) const {
    const int n = slab_levels_[static_cast<std::size_t>(s)];
    double acc = 0.0;
    for (const Cell& c : cells_) acc += f(c.i, c.j, c.k, n) * c.w;
    return acc;
}

double CellQuadrature::slab_mean(const CellFn& f, int s) const {
    return slab_integral(f, s) / spatial_volume_;
}

double CellQuadrature::st_integral(const CellFn& f) const {
    double acc = 0.0;
    for (int s = 0; s < slab_count(); ++s) acc += slab_tau_[static_cast<std::size_t>(s)] * slab_integral(f, s);
    return acc;
}

double CellQuadrature::slab_lp(const CellFn& f, const Exponent& p, int s) const {
    const int n = slab_levels_[static_cast<std::size_t>(s)];
    if (p.is_inf()) {
        double m = 0.0;
        for (const Cell& c : cells_) m = std::max(m, std::abs(f(c.i, c.j, c.k, n)));
        return m;
    }
    const double pe = p.value();
    double acc = 0.0;
    for (const Cell& c : cells_) acc += std::pow(std::abs(f(c.i, c.j, c.k, n)), pe) * c.w;
    return std::pow(acc, 1.0 / pe);
}

double CellQuadrature::lpq(const CellFn& f, const PQPair& pq) const {
    if (pq.q.is_inf()) {
        double m = 0.0;
        for (int s = 0; s < slab_count(); ++s) m = std::max(m, slab_lp(f, pq.p, s));
        return m;
    }
    const double qe = pq.q.value();
    double acc = 0.0;
    for (int s = 0; s < slab_count(); ++s)
        acc += std::pow(slab_lp(f, pq.p, s), qe) * slab_tau_[static_cast<std::size_t>(s)];
    return std::pow(acc, 1.0 / qe);
}

double CellQuadrature::lpq_power(const CellFn& f, double p, double e) const {
    double acc = 0.0;
    for (int s = 0; s < slab_count(); ++s) {
        const int n = slab_levels_[static_cast<std::size_t>(s)];
        double sp = 0.0;
        for (const Cell& c : cells_) sp += std::pow(std::abs(f(c.i, c.j, c.k, n)), p) * c.w;
        acc += std::pow(sp, e) * slab_tau_[static_cast<std::size_t>(s)];
    }
    return acc;
}

double CellQuadrature::level_integral(const std::function<double(int, int, int)>& cell_value) const {
    double acc = 0.0;
    for (const Cell& c : cells_) acc += cell_value(c.i, c.j, c.k) * c.w;
    return acc;
}

double lpq_norm(const SpaceTimeField& field,
                const std::function<double(int, int, int, int)>& node_fn,
                const ParabolicCylinder& cyl, const PQPair& pq, const QuadratureConfig& cfg) {
    CellQuadrature quad(field.grid(), cyl, cfg);
    return quad.lpq(cell_average(node_fn), pq);
}

double spatial_mean(const SpaceTimeField& field,
                    const std::function<double(int, int, int, int)>& node_fn,
                    const ParabolicCylinder& cyl, int slab, const QuadratureConfig& cfg) {
    CellQuadrature quad(field.grid(), cyl, cfg);
    if (slab < 0 || slab >= quad.slab_count())
        throw std::out_of_range("spatial_mean: slab index out of range");
    return quad.slab_mean(cell_average(node_fn), slab);
}

double morrey_norm(const SpaceTimeField& field, double gamma,
                   const std::vector<SpaceTimePoint>& centers, const std::vector<double>& radii,
                   const QuadratureConfig& cfg) {
    if (!(gamma > 0.0) || gamma > 2.0)
        throw std::invalid_argument("morrey_norm: gamma must lie in (0, 2]");
    if (centers.empty() || radii.empty())
        throw std::invalid_argument("morrey_norm: center and radius sample sets must be nonempty");

    auto f2 = [&field](int i, int j, int k, int n) {
        return field.forcing_vec(i, j, k, n).squaredNorm();
    };
    const CellFn cell_f2 = cell_average(f2);

    double sup = 0.0;
    for (const auto& z : centers)
        for (double r : radii) {
            ParabolicCylinder cyl{z, r, ClipMode::Interior};
            CellQuadrature quad(field.grid(), cyl, cfg);
            const double mean = quad.st_integral(cell_f2) / quad.st_volume();
            sup = std::max(sup, std::pow(r, 2.0 - gamma) * std::sqrt(mean));
        }
    return sup;
}

} // namespace cyllens
