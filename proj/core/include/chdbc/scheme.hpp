// One time step of the stabilized, linearly implicit scheme, for the three
// coupling variants (finite K, GMS, Liu-Wu).
//
// Unknown vector layout: [ phi (all nodes) | mu (all nodes) | mu_Gamma (chain) ],
// 2*nx*ny + n_b unknowns. psi is eliminated through the trace identity
// psi = phi|_Gamma, so boundary phi entries are the surface order parameter.
//
// Row map (one owning row per unknown):
//   interior phi_p : phi - tau*Lap(mu) = phi^n
//   interior mu_p  : mu + eps*Lap(phi) - s1*phi = F'(phi^n)/eps - s1*phi^n
//   boundary mu_q  : coupling row. Finite K:
//                      (K/h)*[h^2 w_q (psi-psi^n)/tau + Sum_e sigma_e (mu_q - mu_nb)]
//                        + mu_q - muG_q = 0
//                    GMS: mu_q - muG_q = 0; Liu-Wu: the flux bracket alone = 0.
//   boundary phi_q : surface dynamics. Finite K / Liu-Wu:
//                      psi - tau*LapG(muG) - (tau/K)(mu_q - muG_q) = psi^n
//                    (Robin identity K dn(mu) = muG - mu substituted; the Robin
//                    term is absent for Liu-Wu). GMS: merged flux balance
//                      (h^2 w_q + h)(psi-psi^n)/tau + Sum_e sigma_e (mu_q - mu_nb)
//                        + (2 muG_k - muG_k- - muG_k+)/h = 0.
//   muG_k          : surface chemical potential,
//                      h w_q mu_q + muG_k + delta*kappa*LapG(psi)_k
//                        - (eps/h) Sum_e sigma_e (phi_q - phi_nb)
//                        - h w_q s1 psi - s2 psi
//                      = h w_q (F'(psi^n)/eps - s1 psi^n) + G'(psi^n)/delta - s2 psi^n
//
// Sum_e runs over the grid edges at the node with weight sigma_e = 1/2 for
// edges lying on the boundary line and 1 otherwise; w_q is the trapezoid
// weight. These are the trapezoid-weighted variational (summation-by-parts)
// flux forms: they make the discrete total mass exactly conserved and the
// discrete energy exactly non-increasing under the s1/s2 condition.

#ifndef CHDBC_SCHEME_HPP
#define CHDBC_SCHEME_HPP

#include <span>
#include <string>

#include "chdbc/grid.hpp"
#include "chdbc/linsolve.hpp"
#include "chdbc/model.hpp"
#include "chdbc/sparse.hpp"

namespace chdbc {

class StepSystem {
public:
    // Assembles the matrix once; it depends only on (grid, params, tau).
    StepSystem(const Grid& grid, const ModelParams& params, double tau);

    const SparseMatrix& matrix() const { return matrix_; }
    const Grid& grid() const { return grid_; }
    const ModelParams& params() const { return params_; }
    double tau() const { return tau_; }
    int unknowns() const { return 2 * grid_.nodes() + grid_.boundary_nodes(); }

    // Right-hand side from the previous state (depends on phi^n only).
    void build_rhs(const SimState& state, std::span<double> rhs) const;
    std::vector<double> build_rhs(const SimState& state) const;

    // Stacked unknown vector [phi | mu | muG] of a state (GMRES warm starts).
    std::vector<double> pack(const SimState& state) const;

private:
    Grid grid_;
    ModelParams params_;
    double tau_;
    SparseMatrix matrix_;
};

// One step: solve the linear system and return the state at t + tau with
// psi = trace(phi). Throws on solver failure or non-finite solution values.
SimState advance(const StepSystem& system, const SimState& state, LinearSolver& solver);

struct StabilityReport {
    bool s1_ok = false;
    bool s2_ok = false;
    double min_s1 = 0.0;
    double min_s2 = 0.0;
    bool ok() const { return s1_ok && s2_ok; }
    std::string describe() const;
};

// Checks s1 >= max|F''|/(2 eps) and s2 >= max|G''|/(2 delta); advisory only.
StabilityReport stability_check(const ModelParams& params);

}  // namespace chdbc

#endif
