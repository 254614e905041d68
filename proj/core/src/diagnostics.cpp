#include "chdbc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chdbc/potentials.hpp"

namespace chdbc {

double bulk_mass(const BulkField& phi, const Grid& g) {
    if (phi.size() != g.nodes()) throw std::invalid_argument("bulk_mass: dimension mismatch");
    double s = 0.0;
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i)
            s += g.trapezoid_weight(i, j) * phi[g.index(i, j)];
    return s * g.h() * g.h();
}

double surface_mass(const BoundaryField& psi, const Grid& g) {
    if (psi.size() != g.boundary_nodes())
        throw std::invalid_argument("surface_mass: dimension mismatch");
    double s = 0.0;
    for (int k = 0; k < psi.size(); ++k) s += psi[k];
    return s * g.h();
}

double bulk_l2(const BulkField& f, const Grid& g) {
    if (f.size() != g.nodes()) throw std::invalid_argument("bulk_l2: dimension mismatch");
    double s = 0.0;
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
            const double v = f[g.index(i, j)];
            s += g.trapezoid_weight(i, j) * v * v;
        }
    return std::sqrt(s * g.h() * g.h());
}

double surface_l2(const BoundaryField& f, const Grid& g) {
    if (f.size() != g.boundary_nodes())
        throw std::invalid_argument("surface_l2: dimension mismatch");
    double s = 0.0;
    for (int k = 0; k < f.size(); ++k) s += f[k] * f[k];
    return std::sqrt(s * g.h());
}

double energy(const SimState& state, const Grid& g, const ModelParams& params) {
    const int nx = g.nx(), ny = g.ny();
    const int nb = g.boundary_nodes();
    if (state.phi.size() != g.nodes() || state.psi.size() != nb)
        throw std::invalid_argument("energy: dimension mismatch");
    const double h = g.h();
    const auto& pot = params.potential;

    double bulk_pot = 0.0;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            bulk_pot += g.trapezoid_weight(i, j) * eval_potential(pot, state.phi[g.index(i, j)]).value;
    bulk_pot *= h * h / params.epsilon;

    double surf_pot = 0.0;
    for (int k = 0; k < nb; ++k) surf_pot += eval_potential(pot, state.psi[k]).value;
    surf_pot *= h / params.delta;

    // Edge-difference Dirichlet forms: sum over grid edges of
    // sigma * (difference)^2, sigma = 1/2 on boundary-line edges. This is the
    // gradient quadrature whose decrease the scheme guarantees.
    double bulk_grad = 0.0;
    for (int j = 0; j < ny; ++j) {
        const double sh = (j == 0 || j == ny - 1) ? 0.5 : 1.0;
        for (int i = 0; i + 1 < nx; ++i) {
            const double d = state.phi[g.index(i + 1, j)] - state.phi[g.index(i, j)];
            bulk_grad += sh * d * d;
        }
    }
    for (int i = 0; i < nx; ++i) {
        const double sv = (i == 0 || i == nx - 1) ? 0.5 : 1.0;
        for (int j = 0; j + 1 < ny; ++j) {
            const double d = state.phi[g.index(i, j + 1)] - state.phi[g.index(i, j)];
            bulk_grad += sv * d * d;
        }
    }

    double surf_grad = 0.0;
    for (int k = 0; k < nb; ++k) {
        const double d = state.psi[(k + 1) % nb] - state.psi[k];
        surf_grad += d * d;
    }

    return bulk_pot + 0.5 * params.epsilon * bulk_grad + surf_pot +
           0.5 * params.delta * params.kappa * surf_grad / h;
}

Extrema extrema(const SimState& state) {
    Extrema e{};
    e.min_phi = *std::min_element(state.phi.values.begin(), state.phi.values.end());
    e.max_phi = *std::max_element(state.phi.values.begin(), state.phi.values.end());
    e.min_psi = *std::min_element(state.psi.values.begin(), state.psi.values.end());
    e.max_psi = *std::max_element(state.psi.values.begin(), state.psi.values.end());
    return e;
}

DiagRecord diagnose(const SimState& state, const Grid& g, const ModelParams& params) {
    DiagRecord r;
    r.step = state.step;
    r.t = state.t;
    r.energy = energy(state, g, params);
    r.bulk_mass = bulk_mass(state.phi, g);
    r.surface_mass = surface_mass(state.psi, g);
    r.total_mass = r.bulk_mass + r.surface_mass;
    const Extrema e = extrema(state);
    r.min_phi = e.min_phi;
    r.max_phi = e.max_phi;
    r.min_psi = e.min_psi;
    r.max_psi = e.max_psi;
    return r;
}

}  // namespace chdbc
