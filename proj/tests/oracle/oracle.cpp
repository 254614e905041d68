#include "oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "chdbc/potentials.hpp"

namespace chdbc::oracle {

std::vector<std::pair<int, int>> perimeter_walk(int nx, int ny) {
    // Walk the four sides explicitly, dropping the endpoint of each side so
    // every corner appears exactly once.
    std::vector<std::pair<int, int>> out;
    int i = 0, j = 0;
    for (; i < nx - 1; ++i) out.emplace_back(i, j);  // bottom, (0,0) .. (nx-2,0)
    for (; j < ny - 1; ++j) out.emplace_back(i, j);  // right
    for (; i > 0; --i) out.emplace_back(i, j);       // top
    for (; j > 0; --j) out.emplace_back(i, j);       // left
    return out;
}

namespace {

struct Layout {
    const Grid& g;
    int n;
    int nb;
    std::vector<std::pair<int, int>> chain;
    std::vector<int> chain_of;

    explicit Layout(const Grid& grid) : g(grid) {
        n = g.nx() * g.ny();
        chain = perimeter_walk(g.nx(), g.ny());
        nb = static_cast<int>(chain.size());
        chain_of.assign(static_cast<size_t>(n), -1);
        for (int k = 0; k < nb; ++k) chain_of[idx(chain[k].first, chain[k].second)] = k;
    }

    int idx(int i, int j) const { return j * g.nx() + i; }
    bool boundary(int i, int j) const {
        return i == 0 || j == 0 || i == g.nx() - 1 || j == g.ny() - 1;
    }
    double weight(int i, int j) const {
        double w = 1.0;
        if (i == 0 || i == g.nx() - 1) w *= 0.5;
        if (j == 0 || j == g.ny() - 1) w *= 0.5;
        return w;
    }
    // incident grid edges with trapezoid-transverse weights
    struct Edge {
        int q;
        double sigma;
    };
    std::vector<Edge> edges(int i, int j) const {
        std::vector<Edge> e;
        const double sh = (j == 0 || j == g.ny() - 1) ? 0.5 : 1.0;
        const double sv = (i == 0 || i == g.nx() - 1) ? 0.5 : 1.0;
        if (i > 0) e.push_back({idx(i - 1, j), sh});
        if (i < g.nx() - 1) e.push_back({idx(i + 1, j), sh});
        if (j > 0) e.push_back({idx(i, j - 1), sv});
        if (j < g.ny() - 1) e.push_back({idx(i, j + 1), sv});
        return e;
    }
};

}  // namespace

DenseMatrix dense_assemble(const Grid& grid, const ModelParams& params, double tau) {
    if (grid.nx() * grid.ny() > 144)
        throw std::invalid_argument("oracle::dense_assemble: grids above 12x12 are not supported");
    if (!(tau > 0.0)) throw std::invalid_argument("oracle::dense_assemble: tau must be > 0");
    params.validate();

    const Layout L(grid);
    const int n = L.n, nb = L.nb;
    const double h = grid.h();
    const double tau_h2 = tau / (h * h);
    const double eps_h2 = params.epsilon / (h * h);
    const double dk_h2 = params.delta * params.kappa / (h * h);
    const double eps_h = params.epsilon / h;
    const auto mode = params.coupling.mode;
    const double K = params.coupling.K;
    const int PHI = 0, MU = n, MG = 2 * n;

    DenseMatrix A(2 * n + nb);

    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            const int p = L.idx(i, j);
            if (!L.boundary(i, j)) {
                A.at(PHI + p, PHI + p) = 1.0;
                A.at(PHI + p, MU + p) = 4.0 * tau_h2;
                A.at(PHI + p, MU + L.idx(i + 1, j)) = -tau_h2;
                A.at(PHI + p, MU + L.idx(i - 1, j)) = -tau_h2;
                A.at(PHI + p, MU + L.idx(i, j + 1)) = -tau_h2;
                A.at(PHI + p, MU + L.idx(i, j - 1)) = -tau_h2;

                A.at(MU + p, MU + p) = 1.0;
                A.at(MU + p, PHI + p) = -4.0 * eps_h2 - params.s1;
                A.at(MU + p, PHI + L.idx(i + 1, j)) = eps_h2;
                A.at(MU + p, PHI + L.idx(i - 1, j)) = eps_h2;
                A.at(MU + p, PHI + L.idx(i, j + 1)) = eps_h2;
                A.at(MU + p, PHI + L.idx(i, j - 1)) = eps_h2;
                continue;
            }

            const int k = L.chain_of[p];
            const int km = (k + nb - 1) % nb;
            const int kp = (k + 1) % nb;
            const int pm = L.idx(L.chain[km].first, L.chain[km].second);
            const int pp = L.idx(L.chain[kp].first, L.chain[kp].second);
            const double w = L.weight(i, j);
            const double cell_w = h * h * w / tau;
            const auto edges = L.edges(i, j);
            double sigma_sum = 0.0;
            for (const auto& e : edges) sigma_sum += e.sigma;

            // (b)
            if (mode == Coupling::Mode::GMS) {
                A.at(MU + p, MU + p) = 1.0;
                A.at(MU + p, MG + k) = -1.0;
            } else {
                const double scale = (mode == Coupling::Mode::Finite) ? K / h : 1.0;
                A.at(MU + p, PHI + p) = scale * cell_w;
                A.at(MU + p, MU + p) = (mode == Coupling::Mode::Finite)
                                           ? scale * sigma_sum + 1.0
                                           : scale * sigma_sum;
                for (const auto& e : edges) A.at(MU + p, MU + e.q) = -scale * e.sigma;
                if (mode == Coupling::Mode::Finite) A.at(MU + p, MG + k) = -1.0;
            }

            // (c)
            if (mode == Coupling::Mode::GMS) {
                A.at(PHI + p, PHI + p) = (h * h * w + h) / tau;
                A.at(PHI + p, MU + p) = sigma_sum;
                for (const auto& e : edges) A.at(PHI + p, MU + e.q) = -e.sigma;
                A.at(PHI + p, MG + k) = 2.0 / h;
                A.at(PHI + p, MG + km) = -1.0 / h;
                A.at(PHI + p, MG + kp) = -1.0 / h;
            } else {
                A.at(PHI + p, PHI + p) = 1.0;
                if (mode == Coupling::Mode::Finite) {
                    A.at(PHI + p, MG + k) = 2.0 * tau_h2 + tau / K;
                    A.at(PHI + p, MU + p) = -(tau / K);
                } else {
                    A.at(PHI + p, MG + k) = 2.0 * tau_h2;
                }
                A.at(PHI + p, MG + km) = -tau_h2;
                A.at(PHI + p, MG + kp) = -tau_h2;
            }

            // (d)
            A.at(MG + k, MG + k) = 1.0;
            A.at(MG + k, MU + p) = h * w;
            A.at(MG + k, PHI + p) = -2.0 * dk_h2 - params.s2 - h * w * params.s1 - eps_h * sigma_sum;
            A.at(MG + k, PHI + pm) = dk_h2 + eps_h * 0.5;
            A.at(MG + k, PHI + pp) = dk_h2 + eps_h * 0.5;
            for (const auto& e : edges)
                if (e.q != pm && e.q != pp) A.at(MG + k, PHI + e.q) = eps_h * e.sigma;
        }
    }
    return A;
}

std::vector<double> dense_rhs(const Grid& grid, const ModelParams& params, double tau,
                              const BulkField& phi_n) {
    if (grid.nx() * grid.ny() > 144)
        throw std::invalid_argument("oracle::dense_rhs: grids above 12x12 are not supported");
    const Layout L(grid);
    const int n = L.n;
    const double h = grid.h();
    const auto mode = params.coupling.mode;
    const double K = params.coupling.K;

    std::vector<double> b(static_cast<size_t>(2 * n + L.nb), 0.0);
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            const int p = L.idx(i, j);
            const double phin = phi_n[p];
            if (!L.boundary(i, j)) {
                b[p] = phin;
                b[n + p] = eval_potential(params.potential, phin).d1 / params.epsilon -
                           params.s1 * phin;
                continue;
            }
            const int k = L.chain_of[p];
            const double w = L.weight(i, j);
            const double cell_w = h * h * w / tau;
            if (mode == Coupling::Mode::GMS) {
                b[n + p] = 0.0;
                b[p] = (h * h * w + h) / tau * phin;
            } else {
                const double scale = (mode == Coupling::Mode::Finite) ? K / h : 1.0;
                b[n + p] = scale * cell_w * phin;
                b[p] = phin;
            }
            b[2 * n + k] = h * w * (eval_potential(params.potential, phin).d1 / params.epsilon -
                                    params.s1 * phin) +
                           eval_potential(params.potential, phin).d1 / params.delta -
                           params.s2 * phin;
        }
    }
    return b;
}

namespace {

// value of the bilinear interpolant of f at (x, y) in grid coordinates
double bilinear(const BulkField& f, const Grid& g, double x, double y) {
    const double h = g.h();
    int ci = static_cast<int>(std::floor(x / h));
    int cj = static_cast<int>(std::floor(y / h));
    ci = std::min(std::max(ci, 0), g.nx() - 2);
    cj = std::min(std::max(cj, 0), g.ny() - 2);
    const double s = x / h - ci;
    const double t = y / h - cj;
    const double f00 = f[g.index(ci, cj)], f10 = f[g.index(ci + 1, cj)];
    const double f01 = f[g.index(ci, cj + 1)], f11 = f[g.index(ci + 1, cj + 1)];
    return (1 - s) * (1 - t) * f00 + s * (1 - t) * f10 + (1 - s) * t * f01 + s * t * f11;
}

void bilinear_gradient(const BulkField& f, const Grid& g, double x, double y, double& gx,
                       double& gy) {
    const double h = g.h();
    int ci = static_cast<int>(std::floor(x / h));
    int cj = static_cast<int>(std::floor(y / h));
    ci = std::min(std::max(ci, 0), g.nx() - 2);
    cj = std::min(std::max(cj, 0), g.ny() - 2);
    const double s = x / h - ci;
    const double t = y / h - cj;
    const double f00 = f[g.index(ci, cj)], f10 = f[g.index(ci + 1, cj)];
    const double f01 = f[g.index(ci, cj + 1)], f11 = f[g.index(ci + 1, cj + 1)];
    gx = ((1 - t) * (f10 - f00) + t * (f11 - f01)) / h;
    gy = ((1 - s) * (f01 - f00) + s * (f11 - f10)) / h;
}

}  // namespace

double refined_quadrature(const BulkField& f, const Grid& grid, int refine) {
    if (refine != 2 && refine != 4)
        throw std::invalid_argument("oracle::refined_quadrature: refine must be 2 or 4");
    if (f.size() != grid.nodes())
        throw std::invalid_argument("oracle::refined_quadrature: dimension mismatch");
    const int fx = (grid.nx() - 1) * refine + 1;
    const int fy = (grid.ny() - 1) * refine + 1;
    const double hf = grid.h() / refine;
    double s = 0.0;
    for (int j = 0; j < fy; ++j) {
        for (int i = 0; i < fx; ++i) {
            double w = 1.0;
            if (i == 0 || i == fx - 1) w *= 0.5;
            if (j == 0 || j == fy - 1) w *= 0.5;
            s += w * bilinear(f, grid, i * hf, j * hf);
        }
    }
    return s * hf * hf;
}

double refined_energy(const SimState& state, const Grid& grid, const ModelParams& params,
                      int refine) {
    if (refine != 2 && refine != 4)
        throw std::invalid_argument("oracle::refined_energy: refine must be 2 or 4");
    const int cx = (grid.nx() - 1) * refine;
    const int cy = (grid.ny() - 1) * refine;
    const double hf = grid.h() / refine;

    // midpoint rule per fine cell of the reconstructed integrand
    double bulk = 0.0;
    for (int j = 0; j < cy; ++j) {
        for (int i = 0; i < cx; ++i) {
            const double x = (i + 0.5) * hf;
            const double y = (j + 0.5) * hf;
            const double v = bilinear(state.phi, grid, x, y);
            double gx, gy;
            bilinear_gradient(state.phi, grid, x, y, gx, gy);
            bulk += eval_potential(params.potential, v).value / params.epsilon +
                    0.5 * params.epsilon * (gx * gx + gy * gy);
        }
    }
    bulk *= hf * hf;

    const int nb = state.psi.size();
    double surf = 0.0;
    for (int k = 0; k < nb; ++k) {
        const double a = state.psi[k];
        const double b = state.psi[(k + 1) % nb];
        const double slope = (b - a) / grid.h();
        for (int r = 0; r < refine; ++r) {
            const double s = (r + 0.5) / refine;
            const double v = a + (b - a) * s;
            surf += eval_potential(params.potential, v).value / params.delta +
                    0.5 * params.delta * params.kappa * slope * slope;
        }
    }
    surf *= hf;

    return bulk + surf;
}

}  // namespace chdbc::oracle
