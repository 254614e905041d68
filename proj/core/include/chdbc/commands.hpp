// CLI command drivers (kept in the library so tests can exercise them).

#ifndef CHDBC_COMMANDS_HPP
#define CHDBC_COMMANDS_HPP

#include <string>
#include <vector>

#include "chdbc/experiments.hpp"

namespace chdbc {

// One simulation: diagnostics.csv, phi_<step>.csv / psi_<step>.csv snapshots,
// manifest.txt. Returns 0 on success.
int cmd_run(const ExperimentConfig& config);

// Relaxation-parameter convergence study: runs the K=0 (GMS) and K=infinity
// (Liu-Wu) references plus every K in the ladder, then writes eoc_to_gms.csv
// and eoc_to_liuwu.csv (columns K,err_phi,err_psi,eoc_phi,eoc_psi). Ladder
// values K <= 1 are compared against GMS (ascending), K > 1 against Liu-Wu
// (descending). dt_quad is the snapshot/time-quadrature increment.
int cmd_eoc(const ExperimentConfig& config, const std::vector<double>& k_ladder,
            double dt_quad = 1e-3);

// Temporal accuracy study: accuracy.csv with columns
// tau,err_phi,err_psi,order_phi,order_psi.
int cmd_accuracy(const ExperimentConfig& config, const std::vector<double>& taus,
                 double tau_ref);

}  // namespace chdbc

#endif
