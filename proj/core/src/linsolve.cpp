#include "chdbc/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chdbc {

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// LAPACK-style in-place LU with partial pivoting. Throws SingularMatrixError
// when a pivot falls below 1e-14 * max|A|.
void lu_factor(std::vector<double>& a, std::vector<int>& perm, int n) {
    double maxabs = 0.0;
    for (double v : a) maxabs = std::max(maxabs, std::abs(v));
    const double tiny = 1e-14 * maxabs;
    perm.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(a[static_cast<size_t>(k) * n + k]);
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(a[static_cast<size_t>(i) * n + k]);
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (!(best > tiny)) throw SingularMatrixError("dense_solve: singular matrix (pivot below threshold)");
        perm[k] = piv;
        if (piv != k)
            for (int j = 0; j < n; ++j)
                std::swap(a[static_cast<size_t>(k) * n + j], a[static_cast<size_t>(piv) * n + j]);
        const double inv_pivot = 1.0 / a[static_cast<size_t>(k) * n + k];
        for (int i = k + 1; i < n; ++i) {
            const double f = a[static_cast<size_t>(i) * n + k] * inv_pivot;
            a[static_cast<size_t>(i) * n + k] = f;
            if (f == 0.0) continue;
            for (int j = k + 1; j < n; ++j)
                a[static_cast<size_t>(i) * n + j] -= f * a[static_cast<size_t>(k) * n + j];
        }
    }
}

void lu_solve(const std::vector<double>& lu, const std::vector<int>& perm, int n,
              std::vector<double>& b) {
    for (int k = 0; k < n; ++k)
        if (perm[k] != k) std::swap(b[k], b[perm[k]]);
    for (int i = 1; i < n; ++i) {
        double s = b[i];
        for (int j = 0; j < i; ++j) s -= lu[static_cast<size_t>(i) * n + j] * b[j];
        b[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= lu[static_cast<size_t>(i) * n + j] * b[j];
        b[i] = s / lu[static_cast<size_t>(i) * n + i];
    }
}

}  // namespace

void SolverConfig::validate() const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("SolverConfig: rel_tol must be > 0");
    if (restart < 2) throw std::invalid_argument("SolverConfig: restart must be >= 2");
    if (max_outer < 1) throw std::invalid_argument("SolverConfig: max_outer must be >= 1");
}

std::vector<double> gmres(const SparseMatrix& A, std::span<const double> b,
                          std::span<const double> x0, const SolverConfig& cfg,
                          SolveStats* stats) {
    cfg.validate();
    const int n = A.rows();
    if (A.cols() != n || static_cast<int>(b.size()) != n || static_cast<int>(x0.size()) != n)
        throw std::invalid_argument("gmres: dimension mismatch");
    for (double v : b)
        if (!std::isfinite(v)) throw std::invalid_argument("gmres: non-finite rhs");

    SolveStats local;
    SolveStats& st = stats ? *stats : local;
    st = SolveStats{};

    const double bnorm = norm2(b);
    std::vector<double> x(x0.begin(), x0.end());
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        st.converged = true;
        return x;
    }
    const double tol = cfg.rel_tol * bnorm;

    // Right Jacobi: solve A D^{-1} y = b, x = D^{-1} y. The Arnoldi residual
    // then is the residual of the original system.
    std::vector<double> dinv(static_cast<size_t>(n), 1.0);
    if (cfg.preconditioner == SolverConfig::Precond::Jacobi) {
        const auto d = A.diagonal();
        for (int i = 0; i < n; ++i)
            if (std::abs(d[i]) > std::numeric_limits<double>::min()) dinv[i] = 1.0 / d[i];
    }

    const int m = cfg.restart;
    std::vector<std::vector<double>> V(static_cast<size_t>(m) + 1,
                                       std::vector<double>(static_cast<size_t>(n)));
    std::vector<double> H(static_cast<size_t>(m + 1) * m, 0.0);
    std::vector<double> cs(static_cast<size_t>(m)), sn(static_cast<size_t>(m)),
        g(static_cast<size_t>(m) + 1);
    std::vector<double> w(static_cast<size_t>(n)), z(static_cast<size_t>(n));

    std::vector<double> r(static_cast<size_t>(n));
    A.multiply(x, r);
    for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
    double rnorm = norm2(r);

    std::vector<double> best_x = x;
    double best_res = rnorm;

    if (rnorm <= tol) {
        st.converged = true;
        st.residual = rnorm;
        st.cycle_residuals.push_back(rnorm);
        return x;
    }

    for (int outer = 0; outer < cfg.max_outer; ++outer) {
        for (int i = 0; i < n; ++i) V[0][i] = r[i] / rnorm;
        std::fill(g.begin(), g.end(), 0.0);
        g[0] = rnorm;

        int k = 0;           // columns completed this cycle
        bool happy = false;  // exact subspace solution reached
        for (int j = 0; j < m; ++j) {
            for (int i = 0; i < n; ++i) z[i] = dinv[i] * V[j][i];
            A.multiply(z, w);
            // modified Gram-Schmidt
            for (int i = 0; i <= j; ++i) {
                const double hij = dot(w, V[i]);
                H[static_cast<size_t>(i) * m + j] = hij;
                for (int q = 0; q < n; ++q) w[q] -= hij * V[i][q];
            }
            const double hj1 = norm2(w);
            H[static_cast<size_t>(j + 1) * m + j] = hj1;
            ++st.iterations;

            // previous Givens rotations on the new column
            for (int i = 0; i < j; ++i) {
                const double t1 = cs[i] * H[static_cast<size_t>(i) * m + j] +
                                  sn[i] * H[static_cast<size_t>(i + 1) * m + j];
                const double t2 = -sn[i] * H[static_cast<size_t>(i) * m + j] +
                                  cs[i] * H[static_cast<size_t>(i + 1) * m + j];
                H[static_cast<size_t>(i) * m + j] = t1;
                H[static_cast<size_t>(i + 1) * m + j] = t2;
            }
            const double denom = std::hypot(H[static_cast<size_t>(j) * m + j], hj1);
            if (denom == 0.0) throw BreakdownError("gmres: zero column in Hessenberg update");
            cs[j] = H[static_cast<size_t>(j) * m + j] / denom;
            sn[j] = hj1 / denom;
            H[static_cast<size_t>(j) * m + j] = denom;
            g[static_cast<size_t>(j) + 1] = -sn[j] * g[j];
            g[j] = cs[j] * g[j];

            k = j + 1;
            const double est = std::abs(g[static_cast<size_t>(j) + 1]);

            if (!std::isfinite(hj1) || !std::isfinite(est))
                throw BreakdownError("gmres: non-finite Arnoldi quantities");
            if (hj1 <= 1e-14 * rnorm) {
                // Arnoldi happy breakdown: the Krylov space is invariant and
                // the least-squares solution solves the system exactly (up to
                // roundoff), so this counts as convergence.
                happy = true;
                break;
            }
            for (int i = 0; i < n; ++i) V[j + 1][i] = w[i] / hj1;
            if (est <= tol) break;
        }

        // y = R^{-1} g, x += D^{-1} V y
        std::vector<double> y(static_cast<size_t>(k));
        for (int i = k - 1; i >= 0; --i) {
            double s = g[i];
            for (int j = i + 1; j < k; ++j) s -= H[static_cast<size_t>(i) * m + j] * y[j];
            y[i] = s / H[static_cast<size_t>(i) * m + i];
        }
        for (int j = 0; j < k; ++j) {
            const double yc = y[j];
            for (int i = 0; i < n; ++i) x[i] += dinv[i] * yc * V[j][i];
        }

        A.multiply(x, r);
        for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
        rnorm = norm2(r);
        ++st.outer_cycles;
        st.cycle_residuals.push_back(rnorm);
        if (rnorm < best_res) {
            best_res = rnorm;
            best_x = x;
        }

        if (rnorm <= tol || happy) {
            st.converged = true;
            st.residual = rnorm;
            return x;
        }
    }

    st.residual = best_res;
    throw NonConvergenceError("gmres: no convergence after " + std::to_string(cfg.max_outer) +
                                  " restart cycles (residual " + std::to_string(best_res) + ")",
                              std::move(best_x), best_res);
}

DenseMatrix DenseMatrix::from_sparse(const SparseMatrix& A) {
    DenseMatrix d(A.rows());
    for (int r = 0; r < A.rows(); ++r)
        for (int k = A.row_offsets()[r]; k < A.row_offsets()[r + 1]; ++k)
            d.at(r, A.column_indices()[k]) = A.values()[k];
    return d;
}

std::vector<double> dense_solve(DenseMatrix A, std::vector<double> rhs) {
    const int n = A.n;
    if (n > 5000) throw std::invalid_argument("dense_solve: refusing systems above 5000 unknowns");
    if (static_cast<int>(rhs.size()) != n)
        throw std::invalid_argument("dense_solve: rhs size mismatch");
    std::vector<int> perm;
    lu_factor(A.a, perm, n);
    lu_solve(A.a, perm, n, rhs);
    return rhs;
}

std::vector<double> LinearSolver::solve(const SparseMatrix& A, std::span<const double> b,
                                        std::span<const double> x0) {
    if (method_ == Method::Direct) {
        const int n = A.rows();
        if (lu_.key != &A || lu_.n != n) {
            // one dense factorization per matrix, reused across steps
            if (n > 8192)
                throw std::invalid_argument("LinearSolver: direct method limited to 8192 unknowns");
            DenseMatrix d = DenseMatrix::from_sparse(A);
            lu_.lu = std::move(d.a);
            lu_factor(lu_.lu, lu_.perm, n);
            lu_.n = n;
            lu_.key = &A;
        }
        std::vector<double> x(b.begin(), b.end());
        lu_solve(lu_.lu, lu_.perm, lu_.n, x);
        const double bnorm = norm2(b);
        std::vector<double> r(static_cast<size_t>(A.rows()));
        stats_ = SolveStats{};
        for (int pass = 0; pass < 3; ++pass) {
            A.multiply(x, r);
            for (size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
            stats_.residual = norm2(r);
            if (stats_.residual <= 1e-12 * bnorm || pass == 2) break;
            // one round of iterative refinement
            lu_solve(lu_.lu, lu_.perm, lu_.n, r);
            for (size_t i = 0; i < r.size(); ++i) x[i] += r[i];
        }
        stats_.converged = true;
        max_residual = std::max(max_residual, stats_.residual);
        return x;
    }

    std::vector<double> start;
    if (x0.empty()) {
        if (static_cast<int>(warm_start_.size()) != A.cols())
            warm_start_.assign(static_cast<size_t>(A.cols()), 0.0);
        start = warm_start_;
    } else {
        start.assign(x0.begin(), x0.end());
    }
    std::vector<double> x = gmres(A, b, start, config_, &stats_);
    warm_start_ = x;
    total_iterations += stats_.iterations;
    max_iterations = std::max(max_iterations, stats_.iterations);
    max_residual = std::max(max_residual, stats_.residual);
    return x;
}

}  // namespace chdbc
