#include "chdbc/output.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chdbc {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_diagnostics_csv(const std::string& path, const std::vector<DiagRecord>& records) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "step,t,energy,bulk_mass,surface_mass,total_mass,min_phi,max_phi,min_psi,max_psi\n";
    for (const auto& r : records) {
        out << r.step << ',' << format_double(r.t) << ',' << format_double(r.energy) << ','
            << format_double(r.bulk_mass) << ',' << format_double(r.surface_mass) << ','
            << format_double(r.total_mass) << ',' << format_double(r.min_phi) << ','
            << format_double(r.max_phi) << ',' << format_double(r.min_psi) << ','
            << format_double(r.max_psi) << '\n';
    }
    if (!out) throw std::runtime_error("failed writing " + path);
}

void write_bulk_csv(const std::string& path, const BulkField& f, const Grid& grid) {
    if (f.size() != grid.nodes()) throw std::invalid_argument("write_bulk_csv: dimension mismatch");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            if (i) out << ',';
            out << format_double(f[grid.index(i, j)]);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("failed writing " + path);
}

BulkField read_bulk_csv(const std::string& path, const Grid& grid) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    BulkField f(grid);
    std::string line;
    for (int j = 0; j < grid.ny(); ++j) {
        if (!std::getline(in, line)) throw std::runtime_error(path + ": unexpected end of file");
        std::istringstream ls(line);
        std::string cell;
        for (int i = 0; i < grid.nx(); ++i) {
            if (!std::getline(ls, cell, ','))
                throw std::runtime_error(path + ": short row " + std::to_string(j));
            f[grid.index(i, j)] = std::strtod(cell.c_str(), nullptr);
        }
    }
    return f;
}

void write_boundary_csv(const std::string& path, const BoundaryField& f, const Grid& grid) {
    if (f.size() != grid.boundary_nodes())
        throw std::invalid_argument("write_boundary_csv: dimension mismatch");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (int k = 0; k < f.size(); ++k) out << format_double(f[k]) << '\n';
    if (!out) throw std::runtime_error("failed writing " + path);
}

BoundaryField read_boundary_csv(const std::string& path, const Grid& grid) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    BoundaryField f(grid);
    std::string line;
    for (int k = 0; k < f.size(); ++k) {
        if (!std::getline(in, line)) throw std::runtime_error(path + ": unexpected end of file");
        f[k] = std::strtod(line.c_str(), nullptr);
    }
    return f;
}

std::string resolve_output_dir(const std::string& dir) {
    const char* root = std::getenv("CHDBC_OUTPUT_ROOT");
    if (root && *root && !std::filesystem::path(dir).is_absolute())
        return (std::filesystem::path(root) / dir).string();
    return dir;
}

void write_manifest(const std::string& path, const RunManifest& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "version = " << m.version << '\n';
    out << "seed = " << m.seed << '\n';
    out << "wall_clock_seconds = " << format_double(m.wall_clock_seconds) << '\n';
    out << "solver.steps = " << m.solver.steps << '\n';
    out << "solver.total_iterations = " << m.solver.total_iterations << '\n';
    out << "solver.max_iterations = " << m.solver.max_iterations << '\n';
    out << "solver.max_residual = " << format_double(m.solver.max_residual) << '\n';
    for (const auto& [k, v] : m.extra) out << k << " = " << v << '\n';
    out << "\n# config echo\n" << m.config_echo;
    if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace chdbc
