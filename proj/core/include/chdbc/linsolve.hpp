// Linear solvers for the per-step system: restarted GMRES (production path)
// and dense LU with partial pivoting (small-scale oracle / direct path).

#ifndef CHDBC_LINSOLVE_HPP
#define CHDBC_LINSOLVE_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "chdbc/sparse.hpp"

namespace chdbc {

struct SolverConfig {
    double rel_tol = 1e-10;  // target ||b - A x|| <= rel_tol * ||b||
    int restart = 30;        // Krylov subspace size per cycle, >= 2
    int max_outer = 200;     // restart cycles before giving up
    enum class Precond { None, Jacobi };
    Precond preconditioner = Precond::Jacobi;

    void validate() const;
};

struct SolveStats {
    int iterations = 0;      // total inner (Arnoldi) iterations
    int outer_cycles = 0;
    double residual = 0.0;   // final true residual ||b - A x||
    bool converged = false;
    std::vector<double> cycle_residuals;  // residual at the end of each outer cycle
};

struct NonConvergenceError : std::runtime_error {
    NonConvergenceError(std::string msg, std::vector<double> best, double res)
        : std::runtime_error(std::move(msg)), best_iterate(std::move(best)), residual(res) {}
    std::vector<double> best_iterate;
    double residual;
};

struct BreakdownError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Restarted GMRES with optional right-Jacobi preconditioning (right, so the
// monitored residual is the true residual of the original system).
std::vector<double> gmres(const SparseMatrix& A, std::span<const double> b,
                          std::span<const double> x0, const SolverConfig& cfg,
                          SolveStats* stats = nullptr);

// Row-major dense square matrix.
struct DenseMatrix {
    int n = 0;
    std::vector<double> a;  // n*n, row-major

    DenseMatrix() = default;
    explicit DenseMatrix(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0.0) {}
    double& at(int r, int c) { return a[static_cast<size_t>(r) * n + c]; }
    double at(int r, int c) const { return a[static_cast<size_t>(r) * n + c]; }

    static DenseMatrix from_sparse(const SparseMatrix& A);
};

// LU with partial pivoting; guarded to <= 5000 unknowns.
std::vector<double> dense_solve(DenseMatrix A, std::vector<double> rhs);

// Per-run solver frontend: keeps the warm-start vector (previous step's
// solution) and a cached dense factorization when in Direct mode.
class LinearSolver {
public:
    enum class Method { Gmres, Direct };

    explicit LinearSolver(SolverConfig cfg = {}, Method method = Method::Gmres)
        : config_(cfg), method_(method) {}

    // x0 seeds the Krylov iteration (ignored by the direct path); when empty,
    // the previous solve's solution is reused.
    std::vector<double> solve(const SparseMatrix& A, std::span<const double> b,
                              std::span<const double> x0 = {});

    const SolveStats& last_stats() const { return stats_; }
    const SolverConfig& config() const { return config_; }
    Method method() const { return method_; }
    void reset_warm_start() { warm_start_.clear(); }

    // cumulative over the run
    long total_iterations = 0;
    int max_iterations = 0;
    double max_residual = 0.0;

private:
    SolverConfig config_;
    Method method_;
    std::vector<double> warm_start_;
    SolveStats stats_;
    // cached LU of A for Direct mode (factored once per matrix)
    struct DenseLU {
        int n = 0;
        std::vector<double> lu;
        std::vector<int> perm;
        const void* key = nullptr;
    } lu_;
};

}  // namespace chdbc

#endif
