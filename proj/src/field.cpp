#include "cyllens/field.hpp"

#include "cyllens/poisson.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cyllens {

namespace {

void validate_grid(const GridSpec& g) {
    if (g.h <= 0.0 || g.dt <= 0.0)
        throw std::invalid_argument("GridSpec: h and dt must be positive");
    if (g.nx < 4 || g.ny < 4 || g.nz < 4 || g.nt < 2)
        throw std::invalid_argument("GridSpec: need at least 4 nodes per spatial axis and 2 time levels");
    if (g.half_space && std::abs(g.origin.z()) > 1e-12 * g.h)
        throw std::invalid_argument("GridSpec: half-space grid must start on the x3 = 0 plane");
}

// Second-order nodal derivative along spatial axis d, one-sided on faces.
double axis_deriv(const GridSpec& g, const std::vector<double>& a, int d, int i, int j, int k,
                  int n) {
    if (a.empty()) return 0.0;
    const int idx[3] = {i, j, k};
    const int count[3] = {g.nx, g.ny, g.nz};
    auto at = [&](int off) {
        int ii = i, jj = j, kk = k;
        (d == 0 ? ii : d == 1 ? jj : kk) += off;
        return a[static_cast<std::size_t>(g.node_index(ii, jj, kk, n))];
    };
    const int c = idx[d], nmax = count[d];
    if (c == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * g.h);
    if (c == nmax - 1) return (3.0 * at(0) - 4.0 * at(-1) + at(-2)) / (2.0 * g.h);
    return (at(1) - at(-1)) / (2.0 * g.h);
}

double frac01(std::uint64_t bits) { return double(bits >> 11) * 0x1.0p-53; }

} // namespace

struct SpaceTimeField::GradCache {
    std::once_flag gu_once;
    std::once_flag gp_once;
    std::array<std::vector<double>, 9> gu;  // gu[3c + d] = d u_c / d x_d
    std::array<std::vector<double>, 3> gp;
};

SpaceTimeField::SpaceTimeField(GridSpec grid, std::string id)
    : grid_(grid), id_(std::move(id)), grads_(std::make_shared<GradCache>()) {
    validate_grid(grid_);
}

const AnalyticField& SpaceTimeField::analytic() const {
    if (!analytic_)
        throw unsupported_operation("field '" + id_ + "' has no analytic closure");
    return *analytic_;
}

std::vector<double>& SpaceTimeField::mutable_component(int which) {
    if (which < 0 || which > 6) throw std::out_of_range("component index");
    if (which < 3) return u_[which];
    if (which == 3) return p_;
    return f_[which - 4];
}

const std::vector<double>& SpaceTimeField::component(int which) const {
    return const_cast<SpaceTimeField*>(this)->mutable_component(which);
}

void SpaceTimeField::ensure_grad_u() const {
    std::call_once(grads_->gu_once, [this] {
        for (int c = 0; c < 3; ++c) {
            if (u_[c].empty()) continue;
            for (int d = 0; d < 3; ++d) {
                auto& out = grads_->gu[3 * c + d];
                out.resize(static_cast<std::size_t>(grid_.node_count()));
                for (int n = 0; n < grid_.nt; ++n)
                    for (int k = 0; k < grid_.nz; ++k)
                        for (int j = 0; j < grid_.ny; ++j)
                            for (int i = 0; i < grid_.nx; ++i)
                                out[static_cast<std::size_t>(grid_.node_index(i, j, k, n))] =
                                    axis_deriv(grid_, u_[c], d, i, j, k, n);
            }
        }
    });
}

void SpaceTimeField::ensure_grad_p() const {
    std::call_once(grads_->gp_once, [this] {
        if (p_.empty()) return;
        for (int d = 0; d < 3; ++d) {
            auto& out = grads_->gp[d];
            out.resize(static_cast<std::size_t>(grid_.node_count()));
            for (int n = 0; n < grid_.nt; ++n)
                for (int k = 0; k < grid_.nz; ++k)
                    for (int j = 0; j < grid_.ny; ++j)
                        for (int i = 0; i < grid_.nx; ++i)
                            out[static_cast<std::size_t>(grid_.node_index(i, j, k, n))] =
                                axis_deriv(grid_, p_, d, i, j, k, n);
        }
    });
}

double SpaceTimeField::grad_u(int c, int d, int i, int j, int k, int n) const {
    ensure_grad_u();
    const auto& a = grads_->gu[3 * c + d];
    return a.empty() ? 0.0 : a[static_cast<std::size_t>(grid_.node_index(i, j, k, n))];
}

double SpaceTimeField::grad_p(int d, int i, int j, int k, int n) const {
    ensure_grad_p();
    const auto& a = grads_->gp[d];
    return a.empty() ? 0.0 : a[static_cast<std::size_t>(grid_.node_index(i, j, k, n))];
}

Eigen::Matrix3d SpaceTimeField::grad_u_mat(int i, int j, int k, int n) const {
    Eigen::Matrix3d m;
    for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) m(c, d) = grad_u(c, d, i, j, k, n);
    return m;
}

Eigen::Vector3d SpaceTimeField::grad_p_vec(int i, int j, int k, int n) const {
    return {grad_p(0, i, j, k, n), grad_p(1, i, j, k, n), grad_p(2, i, j, k, n)};
}

Eigen::Vector3d SpaceTimeField::convection(int i, int j, int k, int n) const {
    const Eigen::Vector3d uv = u_vec(i, j, k, n);
    return grad_u_mat(i, j, k, n) * uv;
}

double SpaceTimeField::max_divergence() const {
    double m = 0.0;
    for (int n = 0; n < grid_.nt; ++n)
        for (int k = 0; k < grid_.nz; ++k)
            for (int j = 0; j < grid_.ny; ++j)
                for (int i = 0; i < grid_.nx; ++i) {
                    const double div = axis_deriv(grid_, u_[0], 0, i, j, k, n) +
                                       axis_deriv(grid_, u_[1], 1, i, j, k, n) +
                                       axis_deriv(grid_, u_[2], 2, i, j, k, n);
                    m = std::max(m, std::abs(div));
                }
    return m;
}

double SpaceTimeField::max_boundary_trace() const {
    if (!grid_.half_space) return 0.0;
    double m = 0.0;
    for (int n = 0; n < grid_.nt; ++n)
        for (int j = 0; j < grid_.ny; ++j)
            for (int i = 0; i < grid_.nx; ++i)
                m = std::max(m, u_vec(i, j, 0, n).norm());
    return m;
}

// --- generators ---------------------------------------------------------

namespace {

void fill_from_analytic(SpaceTimeField& f, const AnalyticField& a, bool u_comp[3], bool p_comp,
                        bool f_comp[3]) {
    const GridSpec& g = f.grid();
    const auto count = static_cast<std::size_t>(g.node_count());
    std::array<std::vector<double>*, 7> arr{};
    for (int c = 0; c < 3; ++c)
        if (u_comp[c]) {
            arr[c] = &f.mutable_component(c);
            arr[c]->resize(count);
        }
    if (p_comp) {
        arr[3] = &f.mutable_component(3);
        arr[3]->resize(count);
    }
    for (int c = 0; c < 3; ++c)
        if (f_comp[c]) {
            arr[4 + c] = &f.mutable_component(4 + c);
            arr[4 + c]->resize(count);
        }

    for (int n = 0; n < g.nt; ++n) {
        const double t = g.time(n);
        for (int k = 0; k < g.nz; ++k)
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) {
                    const auto idx = static_cast<std::size_t>(g.node_index(i, j, k, n));
                    const Eigen::Vector3d x = g.node_pos(i, j, k);
                    if (arr[0] || arr[1] || arr[2]) {
                        const Eigen::Vector3d uv = a.velocity(x, t);
                        for (int c = 0; c < 3; ++c)
                            if (arr[c]) (*arr[c])[idx] = uv[c];
                    }
                    if (arr[3]) (*arr[3])[idx] = a.pressure(x, t);
                    if (arr[4] || arr[5] || arr[6]) {
                        const Eigen::Vector3d fv = a.forcing(x, t);
                        for (int c = 0; c < 3; ++c)
                            if (arr[4 + c]) (*arr[4 + c])[idx] = fv[c];
                    }
                }
    }
}

AnalyticField zero_analytic() {
    AnalyticField a;
    a.velocity = [](const Eigen::Vector3d&, double) { return Eigen::Vector3d::Zero().eval(); };
    a.pressure = [](const Eigen::Vector3d&, double) { return 0.0; };
    a.forcing = [](const Eigen::Vector3d&, double) { return Eigen::Vector3d::Zero().eval(); };
    return a;
}

} // namespace

SpaceTimeField generate_zero(const GridSpec& grid) {
    SpaceTimeField f(grid, "zero");
    f.set_analytic(zero_analytic());
    f.set_tols(0.0, 0.0);
    return f;
}

SpaceTimeField generate_shear_heat(const GridSpec& grid, double amplitude, double wavenumber) {
    if (!grid.half_space)
        throw std::invalid_argument("generate_shear_heat: requires a half-space grid");
    std::ostringstream id;
    id << "shear_a" << wavenumber << "_amp" << amplitude;
    SpaceTimeField f(grid, id.str());

    const double a = wavenumber, amp = amplitude;
    AnalyticField an = zero_analytic();
    an.velocity = [a, amp](const Eigen::Vector3d& x, double t) {
        return Eigen::Vector3d(amp * std::sin(a * x.z()) * std::exp(-a * a * t), 0.0, 0.0);
    };
    bool uc[3] = {true, false, false}, fc[3] = {false, false, false};
    fill_from_analytic(f, an, uc, false, fc);
    f.set_analytic(std::move(an));
    // u1 depends on x3 only, so the discrete divergence vanishes identically
    f.set_tols(1e-12 * std::abs(amp), 1e-12 * std::abs(amp));
    return f;
}

SpaceTimeField generate_homogeneous_profile(const GridSpec& grid, double amplitude) {
    if (grid.half_space)
        throw std::invalid_argument("generate_homogeneous_profile: interior-only generator");
    // reject grids whose nodes hit the singular point at the origin
    auto nearest = [&](double o) {
        const double f = -o / grid.h;
        return std::abs(f - std::round(f)) * grid.h;
    };
    const double dx = nearest(grid.origin.x());
    const double dy = nearest(grid.origin.y());
    const double dz = nearest(grid.origin.z());
    if (std::max({dx, dy, dz}) < grid.h / 4.0)
        throw std::invalid_argument(
            "generate_homogeneous_profile: a grid node coincides with the singular point; "
            "offset the grid by h/2 per axis");

    std::ostringstream id;
    id << "homogeneous_amp" << amplitude;
    SpaceTimeField f(grid, id.str());

    const double amp = amplitude;
    AnalyticField an = zero_analytic();
    an.velocity = [amp](const Eigen::Vector3d& x, double) {
        const double r2 = x.squaredNorm();
        return Eigen::Vector3d(-amp * x.y() / r2, amp * x.x() / r2, 0.0);
    };
    bool uc[3] = {true, true, false}, fc[3] = {false, false, false};
    fill_from_analytic(f, an, uc, false, fc);
    f.set_analytic(std::move(an));

    // third derivatives grow like amp/|x|^4; the closest node is >= h/2 away
    const double rho_min = std::sqrt(dx * dx + dy * dy + dz * dz);
    const double div_tol = 30.0 * std::abs(amp) * grid.h * grid.h / std::pow(rho_min, 4);
    f.set_tols(div_tol, 0.0);
    return f;
}

namespace {

struct RandomMode {
    Eigen::Vector3d a;
    Eigen::Vector3d k;
    double omega;
    double phase_x;
    double phase_t;
};

double taper(double x3) { return x3 * x3 / (1.0 + x3 * x3); }
double taper_d(double x3) {
    const double d = 1.0 + x3 * x3;
    return 2.0 * x3 / (d * d);
}

} // namespace

SpaceTimeField generate_divfree_random(const GridSpec& grid, std::uint64_t seed, int modes,
                                       PressureMode pmode) {
    if (modes < 1) throw std::invalid_argument("generate_divfree_random: modes must be >= 1");
    std::ostringstream id;
    id << "random_seed" << seed << "_m" << modes;
    SpaceTimeField f(grid, id.str());

    // deterministic, platform-independent draws
    std::mt19937_64 rng(seed);
    auto u01 = [&rng] { return frac01(rng()); };

    const Eigen::Vector3d span = grid.box_max() - grid.box_min();
    const double L = std::max({span.x(), span.y(), span.z()});
    const double kbase = 2.0 * std::numbers::pi / L;

    auto mode_list = std::make_shared<std::vector<RandomMode>>();
    double div_const = 0.0;
    for (int m = 0; m < modes; ++m) {
        RandomMode md;
        Eigen::Vector3i iv;
        do {
            for (int d = 0; d < 3; ++d) iv[d] = int(std::floor(u01() * 5.0)) - 2;
        } while (iv == Eigen::Vector3i::Zero());
        md.k = kbase * iv.cast<double>();
        const double theta = std::acos(2.0 * u01() - 1.0);
        const double phi = 2.0 * std::numbers::pi * u01();
        md.a = (1.0 / modes) * Eigen::Vector3d(std::sin(theta) * std::cos(phi),
                                               std::sin(theta) * std::sin(phi), std::cos(theta));
        md.omega = 2.0 * u01();
        md.phase_x = 2.0 * std::numbers::pi * u01();
        md.phase_t = 2.0 * std::numbers::pi * u01();
        mode_list->push_back(md);
        div_const += 2.0 * md.a.norm() * std::pow(md.k.norm() + 3.0, 3);
    }

    const bool half = grid.half_space;
    AnalyticField an = zero_analytic();
    an.velocity = [mode_list, half](const Eigen::Vector3d& x, double t) {
        Eigen::Vector3d A = Eigen::Vector3d::Zero();
        Eigen::Matrix3d dA = Eigen::Matrix3d::Zero();  // dA(c,d) = dA_c/dx_d
        for (const auto& md : *mode_list) {
            const double px = md.k.dot(x) + md.phase_x;
            const double ct = std::cos(md.omega * t + md.phase_t);
            const double c = std::cos(px) * ct, s = std::sin(px) * ct;
            A += md.a * c;
            for (int d = 0; d < 3; ++d) dA.col(d) -= md.a * (md.k[d] * s);
        }
        Eigen::Vector3d curl(dA(2, 1) - dA(1, 2), dA(0, 2) - dA(2, 0), dA(1, 0) - dA(0, 1));
        if (!half) return curl;
        const double g = taper(x.z()), gd = taper_d(x.z());
        return (g * curl + gd * Eigen::Vector3d(-A.y(), A.x(), 0.0)).eval();
    };
    bool uc[3] = {true, true, true}, fc[3] = {false, false, false};
    fill_from_analytic(f, an, uc, false, fc);
    f.set_analytic(std::move(an));
    f.set_div_constant(div_const);
    f.set_tols(10.0 * grid.h * grid.h * div_const, half ? 1e-12 : 0.0);

    if (pmode == PressureMode::Zero) {
        f.set_pressure_flagged_zero(true);
        return f;
    }

    // pressure from the slab-local Poisson relation Lap p = div(f - (u.grad)u)
    f.set_closure_backs_pressure(false);
    auto& pa = f.mutable_component(3);
    pa.assign(static_cast<std::size_t>(grid.node_count()), 0.0);
    DirichletPoissonSolver solver(grid.nx, grid.ny, grid.nz, grid.h);
    const auto per_level = static_cast<std::size_t>(grid.nodes_per_level());
    std::vector<double> w[3];
    for (auto& c : w) c.resize(per_level);
    std::vector<double> rhs(per_level, 0.0);
    for (int n = 0; n < grid.nt; ++n) {
        for (int k = 0; k < grid.nz; ++k)
            for (int j = 0; j < grid.ny; ++j)
                for (int i = 0; i < grid.nx; ++i) {
                    const Eigen::Vector3d conv = f.convection(i, j, k, n);
                    const auto li = static_cast<std::size_t>(grid.node_index(i, j, k, 0));
                    for (int c = 0; c < 3; ++c) w[c][li] = f.forcing_vec(i, j, k, n)[c] - conv[c];
                }
        GridSpec level = grid;
        level.nt = 1;
        for (int k = 1; k < grid.nz - 1; ++k)
            for (int j = 1; j < grid.ny - 1; ++j)
                for (int i = 1; i < grid.nx - 1; ++i)
                    rhs[static_cast<std::size_t>(level.node_index(i, j, k, 0))] =
                        axis_deriv(level, w[0], 0, i, j, k, 0) +
                        axis_deriv(level, w[1], 1, i, j, k, 0) +
                        axis_deriv(level, w[2], 2, i, j, k, 0);
        const auto p_level = solver.solve(rhs);
        std::copy(p_level.begin(), p_level.end(), pa.begin() + std::ptrdiff_t(n * per_level));
    }
    return f;
}

GridSpec make_centered_grid(int n, double h, double t0, double dt, int nt) {
    if (n % 2 != 0) throw std::invalid_argument("make_centered_grid: node count must be even");
    GridSpec g;
    g.h = h;
    g.nx = g.ny = g.nz = n;
    g.origin = Eigen::Vector3d::Constant((-(n / 2) + 0.5) * h);
    g.t0 = t0;
    g.dt = dt;
    g.nt = nt;
    g.half_space = false;
    return g;
}

SpaceTimeField generate_forcing_field(const GridSpec& grid, ForcingKind kind,
                                      const Eigen::Vector3d& amplitude, double width) {
    SpaceTimeField f(grid, kind == ForcingKind::Constant ? "forcing_const" : "forcing_bump");
    AnalyticField an = zero_analytic();
    if (kind == ForcingKind::Constant) {
        const Eigen::Vector3d amp = amplitude;
        an.forcing = [amp](const Eigen::Vector3d&, double) { return amp; };
    } else {
        const Eigen::Vector3d amp = amplitude;
        const Eigen::Vector3d c = 0.5 * (grid.box_min() + grid.box_max());
        const double w2 = 2.0 * width * width;
        an.forcing = [amp, c, w2](const Eigen::Vector3d& x, double) {
            return (amp * std::exp(-(x - c).squaredNorm() / w2)).eval();
        };
    }
    bool uc[3] = {false, false, false}, fc[3] = {true, true, true};
    fill_from_analytic(f, an, uc, false, fc);
    f.set_analytic(std::move(an));
    f.set_tols(0.0, 0.0);
    return f;
}

SpaceTimeField scale_field(const SpaceTimeField& field, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("scale_field: s must be positive");
    const AnalyticField& base = field.analytic();  // throws without closure
    if (!field.component(3).empty() && !field.closure_backs_pressure())
        throw unsupported_operation(
            "scale_field: pressure samples of '" + field.id() +
            "' came from a discrete solve and cannot be resampled from the closure");

    const GridSpec& g = field.grid();
    GridSpec gs = g;
    gs.origin = g.origin / s;
    gs.h = g.h / s;
    gs.t0 = g.t0 / (s * s);
    gs.dt = g.dt / (s * s);

    AnalyticField an;
    const auto uf = base.velocity;
    const auto pf = base.pressure;
    const auto ff = base.forcing;
    an.velocity = [uf, s](const Eigen::Vector3d& x, double t) {
        return (s * uf(s * x, s * s * t)).eval();
    };
    an.pressure = [pf, s](const Eigen::Vector3d& x, double t) { return s * s * pf(s * x, s * s * t); };
    an.forcing = [ff, s](const Eigen::Vector3d& x, double t) {
        return (s * s * s * ff(s * x, s * s * t)).eval();
    };

    SpaceTimeField out(gs, field.id() + "_s" + std::to_string(s));
    bool uc[3], fc[3];
    for (int c = 0; c < 3; ++c) {
        uc[c] = !field.component(c).empty();
        fc[c] = !field.component(4 + c).empty();
    }
    const bool pc = !field.component(3).empty();
    fill_from_analytic(out, an, uc, pc, fc);
    out.set_analytic(std::move(an));
    out.set_tols(s * s * field.div_tol(), s * field.boundary_tol());
    out.set_div_constant(s * s * s * s * field.reported_div_constant());
    out.set_pressure_flagged_zero(field.pressure_flagged_zero());
    return out;
}

Eigen::Vector3d nse_residual(const SpaceTimeField& field, const SpaceTimePoint& z) {
    const GridSpec& g = field.grid();
    const int i = int(std::lround((z.x.x() - g.origin.x()) / g.h));
    const int j = int(std::lround((z.x.y() - g.origin.y()) / g.h));
    const int k = int(std::lround((z.x.z() - g.origin.z()) / g.h));
    const int n = int(std::lround((z.t - g.t0) / g.dt));
    if (i < 2 || i > g.nx - 3 || j < 2 || j > g.ny - 3 || k < 2 || k > g.nz - 3 || n < 1 ||
        n > g.nt - 2)
        throw std::out_of_range("nse_residual: stencil out of bounds (need 2 cells of margin)");

    Eigen::Vector3d res;
    for (int c = 0; c < 3; ++c) {
        const auto& a = field.component(c);
        auto at = [&](int ii, int jj, int kk, int nn) {
            return a.empty() ? 0.0 : a[static_cast<std::size_t>(g.node_index(ii, jj, kk, nn))];
        };
        const double ut = (at(i, j, k, n + 1) - at(i, j, k, n - 1)) / (2.0 * g.dt);
        const double lap = (at(i + 1, j, k, n) + at(i - 1, j, k, n) + at(i, j + 1, k, n) +
                            at(i, j - 1, k, n) + at(i, j, k + 1, n) + at(i, j, k - 1, n) -
                            6.0 * at(i, j, k, n)) /
                           (g.h * g.h);
        res[c] = ut - lap;
    }
    res += field.convection(i, j, k, n);
    res += field.grad_p_vec(i, j, k, n);
    res -= field.forcing_vec(i, j, k, n);
    return res;
}

} // namespace cyllens
