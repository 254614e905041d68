// Initial-condition generators, the experiment driver, and the convergence
// analysis routines (relaxation-parameter EOC and temporal accuracy).

#ifndef CHDBC_EXPERIMENTS_HPP
#define CHDBC_EXPERIMENTS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chdbc/diagnostics.hpp"
#include "chdbc/grid.hpp"
#include "chdbc/linsolve.hpp"
#include "chdbc/model.hpp"

namespace chdbc {

struct InitSpec {
    enum class Kind { RandomUniform, SquareDroplet, TanhCircle };
    Kind kind = Kind::RandomUniform;

    // RandomUniform
    double lo = 0.4, hi = 0.6;
    // SquareDroplet / TanhCircle
    double center_x = 0.5, center_y = 0.5;
    double side = 0.5;             // droplet edge length
    double inside = 1.0, outside = -1.0;
    double radius = 0.5, width = 0.02;  // tanh profile

    void validate() const;
    std::string describe() const;
};

struct GridSpec {
    int nx = 0, ny = 0;
    double lx = 0.0, ly = 0.0;
    Grid make() const { return Grid(nx, ny, lx, ly); }
};

struct ExperimentConfig {
    GridSpec grid;
    ModelParams params;
    double tau = 1e-4;
    double t_end = 0.1;
    InitSpec init;
    std::uint64_t seed = 1;
    std::vector<double> snapshot_times;
    std::string output_dir = "out";
    SolverConfig solver;
    LinearSolver::Method method = LinearSolver::Method::Gmres;

    void validate() const;
    // Canonical key=value echo (config files round-trip through this).
    std::string echo() const;
};

// phi from the init spec (seeded deterministic draws for RandomUniform),
// psi = trace(phi), mu and mu_Gamma zero.
SimState make_initial(const InitSpec& init, const Grid& grid, std::uint64_t seed);

struct Snapshot {
    double t = 0.0;
    BulkField phi;
    BoundaryField psi;
};

struct SolverSummary {
    long steps = 0;
    long total_iterations = 0;
    int max_iterations = 0;
    double max_residual = 0.0;
};

struct RunResult {
    std::vector<DiagRecord> records;        // one per step, including step 0
    std::map<long, Snapshot> snapshots;     // keyed by step index
    SimState final_state;
    SolverSummary solver;
};

// Assembles once and advances round(t_end/tau) steps. Snapshots are taken at
// the step nearest each requested time. Throws on solver failure / NaN.
RunResult run(const ExperimentConfig& config);

// L2(0,T; L2) distance between two snapshot series sharing grid and schedule:
// trapezoidal-in-time composition of spatial L2 norms of the difference.
// Returns (bulk, surface).
std::pair<double, double> l2_space_time_distance(const std::map<long, Snapshot>& a,
                                                 const std::map<long, Snapshot>& b,
                                                 const Grid& grid, double dt_quad);

// Experimental order of convergence: element i is
// ln(errors[i+1]/errors[i]) / ln(ks[i+1]/ks[i]).
std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& ks);

struct AccuracyRow {
    double tau;
    double err_phi;
    double err_psi;
    double order_phi;  // NaN in the first row
    double order_psi;
};

// Runs the reference (tau_ref) once, then each coarse tau; errors are the
// spatial L2 differences at T = t_end. Reference final fields are cached in
// <output_dir>/cache keyed by a hash of the reference config.
std::vector<AccuracyRow> temporal_accuracy_study(const ExperimentConfig& base,
                                                 const std::vector<double>& taus,
                                                 double tau_ref);

}  // namespace chdbc

#endif
