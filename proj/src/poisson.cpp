#include "cyllens/poisson.hpp"

#include "cyllens/errors.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/IterativeLinearSolvers>

#include <cmath>
#include <stdexcept>

namespace cyllens {

struct DirichletPoissonSolver::Impl {
    int nx, ny, nz;
    double h;
    Eigen::SparseMatrix<double> A;  // (6 I - adjacency)/h^2 over interior nodes, SPD
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    bool use_direct = false;

    int inx() const { return nx - 2; }
    int iny() const { return ny - 2; }
    int inz() const { return nz - 2; }
    std::int64_t unknowns() const { return std::int64_t(inx()) * iny() * inz(); }
    int uidx(int i, int j, int k) const {
        return ((k - 1) * iny() + (j - 1)) * inx() + (i - 1);
    }
    std::int64_t bidx(int i, int j, int k) const {
        return (std::int64_t(k) * ny + j) * nx + i;
    }
};

DirichletPoissonSolver::DirichletPoissonSolver(int nx, int ny, int nz, double h)
    : impl_(std::make_unique<Impl>()) {
    if (nx < 3 || ny < 3 || nz < 3)
        throw std::invalid_argument("DirichletPoissonSolver: box needs >= 3 nodes per axis");
    impl_->nx = nx;
    impl_->ny = ny;
    impl_->nz = nz;
    impl_->h = h;

    const double inv_h2 = 1.0 / (h * h);
    const auto n = impl_->unknowns();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(7 * n));
    for (int k = 1; k < nz - 1; ++k)
        for (int j = 1; j < ny - 1; ++j)
            for (int i = 1; i < nx - 1; ++i) {
                const int row = impl_->uidx(i, j, k);
                trip.emplace_back(row, row, 6.0 * inv_h2);
                auto off = [&](int ii, int jj, int kk) {
                    if (ii >= 1 && ii < nx - 1 && jj >= 1 && jj < ny - 1 && kk >= 1 && kk < nz - 1)
                        trip.emplace_back(row, impl_->uidx(ii, jj, kk), -inv_h2);
                };
                off(i - 1, j, k);
                off(i + 1, j, k);
                off(i, j - 1, k);
                off(i, j + 1, k);
                off(i, j, k - 1);
                off(i, j, k + 1);
            }
    impl_->A.resize(n, n);
    impl_->A.setFromTriplets(trip.begin(), trip.end());

    impl_->use_direct = n <= 30000;
    if (impl_->use_direct) {
        impl_->ldlt.compute(impl_->A);
        if (impl_->ldlt.info() != Eigen::Success)
            throw solver_error("DirichletPoissonSolver: LDLT factorization failed");
    }
}

DirichletPoissonSolver::~DirichletPoissonSolver() = default;
DirichletPoissonSolver::DirichletPoissonSolver(DirichletPoissonSolver&&) noexcept = default;
DirichletPoissonSolver& DirichletPoissonSolver::operator=(DirichletPoissonSolver&&) noexcept = default;

std::vector<double> DirichletPoissonSolver::solve(const std::vector<double>& rhs,
                                                  double* rel_residual) const {
    const Impl& im = *impl_;
    const auto n = im.unknowns();
    Eigen::VectorXd b(n);
    for (int k = 1; k < im.nz - 1; ++k)
        for (int j = 1; j < im.ny - 1; ++j)
            for (int i = 1; i < im.nx - 1; ++i)
                b[im.uidx(i, j, k)] = -rhs[static_cast<std::size_t>(im.bidx(i, j, k))];

    Eigen::VectorXd x;
    if (im.use_direct) {
        x = im.ldlt.solve(b);
    } else {
        Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
        cg.setTolerance(1e-13);
        cg.setMaxIterations(20000);
        cg.compute(im.A);
        x = cg.solve(b);
    }

    // Explicit residual check against the 7-point operator.
    double rhs_max = 0.0, res_max = 0.0;
    const double inv_h2 = 1.0 / (im.h * im.h);
    auto at = [&](int i, int j, int k) -> double {
        if (i < 1 || i >= im.nx - 1 || j < 1 || j >= im.ny - 1 || k < 1 || k >= im.nz - 1)
            return 0.0;
        return x[im.uidx(i, j, k)];
    };
    for (int k = 1; k < im.nz - 1; ++k)
        for (int j = 1; j < im.ny - 1; ++j)
            for (int i = 1; i < im.nx - 1; ++i) {
                const double r = rhs[static_cast<std::size_t>(im.bidx(i, j, k))];
                const double lap = (at(i - 1, j, k) + at(i + 1, j, k) + at(i, j - 1, k) +
                                    at(i, j + 1, k) + at(i, j, k - 1) + at(i, j, k + 1) -
                                    6.0 * at(i, j, k)) *
                                   inv_h2;
                rhs_max = std::max(rhs_max, std::abs(r));
                res_max = std::max(res_max, std::abs(lap - r));
            }
    const double rel = rhs_max > 0.0 ? res_max / rhs_max : 0.0;
    if (rel_residual) *rel_residual = rel;
    if (rel > target_residual)
        throw solver_error("DirichletPoissonSolver: residual " + std::to_string(rel) +
                           " exceeds target " + std::to_string(target_residual));

    std::vector<double> out(static_cast<std::size_t>(im.nx) * im.ny * im.nz, 0.0);
    for (int k = 1; k < im.nz - 1; ++k)
        for (int j = 1; j < im.ny - 1; ++j)
            for (int i = 1; i < im.nx - 1; ++i)
                out[static_cast<std::size_t>(im.bidx(i, j, k))] = x[im.uidx(i, j, k)];
    return out;
}

} // namespace cyllens
