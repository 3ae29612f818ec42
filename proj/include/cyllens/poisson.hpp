#pragma once

#include <memory>
#include <vector>

namespace cyllens {

/// 7-point Laplacian solve  Lap p = rhs  on a node box with zero Dirichlet
/// data on the box faces. Arrays are indexed (k*ny + j)*nx + i over the full
/// box; only interior entries of rhs are read, the face entries of the
/// solution are zero. The factorization is reused across repeated solves
/// (one per time level). Deterministic, single-threaded.
class DirichletPoissonSolver {
public:
    DirichletPoissonSolver(int nx, int ny, int nz, double h);
    ~DirichletPoissonSolver();

    DirichletPoissonSolver(DirichletPoissonSolver&&) noexcept;
    DirichletPoissonSolver& operator=(DirichletPoissonSolver&&) noexcept;

    /// Solves and reports max |Lap_h p - rhs| / max |rhs| over interior nodes
    /// (0 when rhs vanishes). Throws solver_error when the target residual
    /// of 1e-8 cannot be met.
    std::vector<double> solve(const std::vector<double>& rhs, double* rel_residual = nullptr) const;

    static constexpr double target_residual = 1e-8;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace cyllens
