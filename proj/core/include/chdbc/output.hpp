// Output files: diagnostics CSV, field snapshots, run manifests.
// All text, UTF-8, doubles printed with 17 significant digits so they
// round-trip binary exactly.

#ifndef CHDBC_OUTPUT_HPP
#define CHDBC_OUTPUT_HPP

#include <string>
#include <vector>

#include "chdbc/experiments.hpp"

namespace chdbc {

std::string format_double(double v);  // %.17g

// Header: step,t,energy,bulk_mass,surface_mass,total_mass,min_phi,max_phi,min_psi,max_psi
void write_diagnostics_csv(const std::string& path, const std::vector<DiagRecord>& records);

// nx x ny row-major, one grid row per line, comma-separated.
void write_bulk_csv(const std::string& path, const BulkField& f, const Grid& grid);
BulkField read_bulk_csv(const std::string& path, const Grid& grid);

// Single column, perimeter order.
void write_boundary_csv(const std::string& path, const BoundaryField& f, const Grid& grid);
BoundaryField read_boundary_csv(const std::string& path, const Grid& grid);

// Resolve the run output directory: if CHDBC_OUTPUT_ROOT is set and dir is
// relative, the run directory is <root>/<dir>.
std::string resolve_output_dir(const std::string& dir);

struct RunManifest {
    std::string config_echo;
    std::string version;
    std::uint64_t seed = 0;
    double wall_clock_seconds = 0.0;
    SolverSummary solver;
    std::vector<std::pair<std::string, std::string>> extra;
};

// Written once, after all other artifacts of the run; its presence marks the
// run directory as complete.
void write_manifest(const std::string& path, const RunManifest& manifest);

}  // namespace chdbc

#endif
