// Discrete energy, masses and extrema recorded along a run.

#ifndef CHDBC_DIAGNOSTICS_HPP
#define CHDBC_DIAGNOSTICS_HPP

#include "chdbc/grid.hpp"
#include "chdbc/model.hpp"

namespace chdbc {

struct DiagRecord {
    long step = 0;
    double t = 0.0;
    double energy = 0.0;
    double bulk_mass = 0.0;
    double surface_mass = 0.0;
    double total_mass = 0.0;
    double min_phi = 0.0;
    double max_phi = 0.0;
    double min_psi = 0.0;
    double max_psi = 0.0;
};

// Discrete total free energy
//   (F(phi)/eps, 1)_trap + (eps/2) a(phi,phi) + (G(psi)/delta, 1)_unif
//     + (delta*kappa/2) a_G(psi,psi)
// where a is the edge-difference Dirichlet form matching the scheme's fluxes
// (this is the quantity the scheme makes non-increasing).
double energy(const SimState& state, const Grid& grid, const ModelParams& params);

// Trapezoid rule over the rectangle (corner 1/4, edge 1/2, interior 1, times h^2).
double bulk_mass(const BulkField& phi, const Grid& grid);

// Uniform rule over the periodic chain (weight h per node); equals the
// edge-wise trapezoid rule since corner nodes close two edges.
double surface_mass(const BoundaryField& psi, const Grid& grid);

struct Extrema {
    double min_phi, max_phi, min_psi, max_psi;
};
Extrema extrema(const SimState& state);

DiagRecord diagnose(const SimState& state, const Grid& grid, const ModelParams& params);

// Weighted spatial L2 norms (trapezoid in the bulk, uniform on the chain).
double bulk_l2(const BulkField& f, const Grid& grid);
double surface_l2(const BoundaryField& f, const Grid& grid);

}  // namespace chdbc

#endif
