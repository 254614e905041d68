#include "chdbc/operators.hpp"

#include <stdexcept>

namespace chdbc {

namespace {

void check_bulk(const BulkField& f, const Grid& g, const char* who) {
    if (f.size() != g.nodes()) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

void check_boundary(const BoundaryField& f, const Grid& g, const char* who) {
    if (f.size() != g.boundary_nodes())
        throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

// Outward one-sided stencil contributions at boundary node (i,j):
// (3 f_G - 4 f_1 + f_2)/(2h) per inward direction, averaged at corners.
template <typename Emit>
void normal_stencil(const Grid& g, int i, int j, Emit&& emit) {
    const double h = g.h();
    int ndirs = 0;
    int dirs[2][2];
    if (i == 0) { dirs[ndirs][0] = 1; dirs[ndirs][1] = 0; ++ndirs; }
    if (i == g.nx() - 1) { dirs[ndirs][0] = -1; dirs[ndirs][1] = 0; ++ndirs; }
    if (j == 0) { dirs[ndirs][0] = 0; dirs[ndirs][1] = 1; ++ndirs; }
    if (j == g.ny() - 1) { dirs[ndirs][0] = 0; dirs[ndirs][1] = -1; ++ndirs; }
    const double w = 1.0 / ndirs;
    for (int d = 0; d < ndirs; ++d) {
        const int di = dirs[d][0], dj = dirs[d][1];
        emit(g.index(i, j), w * 3.0 / (2.0 * h));
        emit(g.index(i + di, j + dj), w * -4.0 / (2.0 * h));
        emit(g.index(i + 2 * di, j + 2 * dj), w * 1.0 / (2.0 * h));
    }
}

}  // namespace

BulkField laplacian_interior(const BulkField& f, const Grid& g) {
    check_bulk(f, g, "laplacian_interior");
    BulkField out(g, 0.0);
    const double inv_h2 = 1.0 / (g.h() * g.h());
    for (int j = 1; j < g.ny() - 1; ++j)
        for (int i = 1; i < g.nx() - 1; ++i) {
            const int p = g.index(i, j);
            out[p] = (f[g.index(i + 1, j)] + f[g.index(i - 1, j)] + f[g.index(i, j + 1)] +
                      f[g.index(i, j - 1)] - 4.0 * f[p]) *
                     inv_h2;
        }
    return out;
}

BoundaryField laplace_beltrami(const BoundaryField& f, const Grid& g) {
    check_boundary(f, g, "laplace_beltrami");
    const int nb = g.boundary_nodes();
    const double inv_h2 = 1.0 / (g.h() * g.h());
    BoundaryField out(g, 0.0);
    for (int k = 0; k < nb; ++k) {
        const int km = (k + nb - 1) % nb;
        const int kp = (k + 1) % nb;
        out[k] = (f[km] - 2.0 * f[k] + f[kp]) * inv_h2;
    }
    return out;
}

BoundaryField normal_derivative(const BulkField& f, const Grid& g) {
    check_bulk(f, g, "normal_derivative");
    BoundaryField out(g, 0.0);
    const auto& chain = g.chain();
    for (int k = 0; k < static_cast<int>(chain.size()); ++k) {
        double acc = 0.0;
        normal_stencil(g, chain[k].first, chain[k].second,
                       [&](int p, double c) { acc += c * f[p]; });
        out[k] = acc;
    }
    return out;
}

SparseMatrix laplacian_interior_matrix(const Grid& g) {
    std::vector<Triplet> t;
    const double inv_h2 = 1.0 / (g.h() * g.h());
    for (int j = 1; j < g.ny() - 1; ++j)
        for (int i = 1; i < g.nx() - 1; ++i) {
            const int p = g.index(i, j);
            t.push_back({p, p, -4.0 * inv_h2});
            t.push_back({p, g.index(i + 1, j), inv_h2});
            t.push_back({p, g.index(i - 1, j), inv_h2});
            t.push_back({p, g.index(i, j + 1), inv_h2});
            t.push_back({p, g.index(i, j - 1), inv_h2});
        }
    return SparseMatrix::from_triplets(g.nodes(), g.nodes(), std::move(t));
}

SparseMatrix laplace_beltrami_matrix(const Grid& g) {
    std::vector<Triplet> t;
    const int nb = g.boundary_nodes();
    const double inv_h2 = 1.0 / (g.h() * g.h());
    for (int k = 0; k < nb; ++k) {
        t.push_back({k, k, -2.0 * inv_h2});
        t.push_back({k, (k + nb - 1) % nb, inv_h2});
        t.push_back({k, (k + 1) % nb, inv_h2});
    }
    return SparseMatrix::from_triplets(nb, nb, std::move(t));
}

SparseMatrix normal_derivative_matrix(const Grid& g) {
    std::vector<Triplet> t;
    const auto& chain = g.chain();
    for (int k = 0; k < static_cast<int>(chain.size()); ++k)
        normal_stencil(g, chain[k].first, chain[k].second,
                       [&](int p, double c) { t.push_back({k, p, c}); });
    return SparseMatrix::from_triplets(g.boundary_nodes(), g.nodes(), std::move(t));
}

}  // namespace chdbc
