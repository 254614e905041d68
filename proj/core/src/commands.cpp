#include "chdbc/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>

#include "chdbc/config.hpp"
#include "chdbc/output.hpp"
#include "chdbc/version.hpp"

namespace chdbc {

namespace fs = std::filesystem;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string cell(double v) { return std::isnan(v) ? std::string() : format_double(v); }

struct EocRow {
    double K;
    double err_phi;
    double err_psi;
};

void write_eoc_csv(const std::string& path, const std::vector<EocRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "K,err_phi,err_psi,eoc_phi,eoc_psi\n";
    std::vector<double> ks, ephi, epsi;
    for (const auto& r : rows) {
        ks.push_back(r.K);
        ephi.push_back(r.err_phi);
        epsi.push_back(r.err_psi);
    }
    std::vector<double> eoc_phi, eoc_psi;
    if (rows.size() >= 2) {
        eoc_phi = eoc(ephi, ks);
        eoc_psi = eoc(epsi, ks);
    }
    for (size_t i = 0; i < rows.size(); ++i) {
        out << format_double(rows[i].K) << ',' << format_double(rows[i].err_phi) << ','
            << format_double(rows[i].err_psi) << ',';
        out << (i == 0 ? std::string() : format_double(eoc_phi[i - 1])) << ','
            << (i == 0 ? std::string() : format_double(eoc_psi[i - 1])) << '\n';
    }
    if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace

int cmd_run(const ExperimentConfig& config) {
    try {
        const auto t0 = std::chrono::steady_clock::now();
        const std::string dir = resolve_output_dir(config.output_dir);
        fs::create_directories(dir);

        const Grid grid = config.grid.make();
        RunResult result = run(config);

        write_diagnostics_csv((fs::path(dir) / "diagnostics.csv").string(), result.records);
        for (const auto& [step, snap] : result.snapshots) {
            write_bulk_csv((fs::path(dir) / ("phi_" + std::to_string(step) + ".csv")).string(),
                           snap.phi, grid);
            write_boundary_csv((fs::path(dir) / ("psi_" + std::to_string(step) + ".csv")).string(),
                               snap.psi, grid);
        }

        RunManifest m;
        m.config_echo = config.echo();
        m.version = kVersion;
        m.seed = config.seed;
        m.solver = result.solver;
        m.wall_clock_seconds = seconds_since(t0);
        m.extra.emplace_back("init", config.init.describe());
        m.extra.emplace_back("snapshots", std::to_string(result.snapshots.size()));
        write_manifest((fs::path(dir) / "manifest.txt").string(), m);

        std::printf("run: %ld steps, final energy %.6g, outputs in %s\n",
                    result.solver.steps, result.records.back().energy, dir.c_str());
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "run failed: %s\n", e.what());
        return 1;
    }
}

int cmd_eoc(const ExperimentConfig& config, const std::vector<double>& k_ladder, double dt_quad) {
    try {
        const auto t0 = std::chrono::steady_clock::now();
        if (k_ladder.empty()) throw std::invalid_argument("eoc: empty K ladder");
        for (double k : k_ladder)
            if (!(k > 0.0)) throw std::invalid_argument("eoc: ladder values must be > 0");
        const double nquad = config.t_end / dt_quad;
        if (std::abs(nquad - std::round(nquad)) > 1e-9 * std::max(1.0, nquad))
            throw std::invalid_argument("eoc: dt_quad must divide t_end");

        const std::string dir = resolve_output_dir(config.output_dir);
        fs::create_directories(dir);
        const Grid grid = config.grid.make();

        ExperimentConfig base = config;
        base.snapshot_times.clear();
        for (long k = 0; k <= std::lround(nquad); ++k)
            base.snapshot_times.push_back(k * dt_quad);

        auto run_with = [&](Coupling c) {
            ExperimentConfig cc = base;
            cc.params.coupling = c;
            std::printf("eoc: running K = %s\n", c.describe().c_str());
            std::fflush(stdout);
            return run(cc);
        };

        const RunResult ref_gms = run_with(Coupling::gms());
        const RunResult ref_liuwu = run_with(Coupling::liu_wu());

        // K <= 1 rows are measured against the K=0 reference (ascending),
        // K > 1 rows against the K=infinity reference (descending).
        std::vector<double> to_gms, to_liuwu;
        for (double k : k_ladder)
            (k <= 1.0 ? to_gms : to_liuwu).push_back(k);
        std::sort(to_gms.begin(), to_gms.end());
        std::sort(to_liuwu.begin(), to_liuwu.end(), std::greater<>());

        auto make_rows = [&](const std::vector<double>& ks, const RunResult& ref) {
            std::vector<EocRow> rows;
            for (double k : ks) {
                const RunResult r = run_with(Coupling::finite(k));
                const auto [eb, es] =
                    l2_space_time_distance(r.snapshots, ref.snapshots, grid, dt_quad);
                rows.push_back({k, eb, es});
            }
            return rows;
        };

        const auto rows_gms = make_rows(to_gms, ref_gms);
        const auto rows_liuwu = make_rows(to_liuwu, ref_liuwu);
        write_eoc_csv((fs::path(dir) / "eoc_to_gms.csv").string(), rows_gms);
        write_eoc_csv((fs::path(dir) / "eoc_to_liuwu.csv").string(), rows_liuwu);

        RunManifest m;
        m.config_echo = config.echo();
        m.version = kVersion;
        m.seed = config.seed;
        m.wall_clock_seconds = seconds_since(t0);
        m.extra.emplace_back("study", "eoc");
        m.extra.emplace_back("init", config.init.describe());
        m.extra.emplace_back("dt_quad", format_double(dt_quad));
        {
            std::string l;
            for (double k : k_ladder) l += (l.empty() ? "" : ",") + format_double(k);
            m.extra.emplace_back("k_ladder", l);
        }
        write_manifest((fs::path(dir) / "manifest.txt").string(), m);
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "eoc failed: %s\n", e.what());
        return 1;
    }
}

int cmd_accuracy(const ExperimentConfig& config, const std::vector<double>& taus, double tau_ref) {
    try {
        const auto t0 = std::chrono::steady_clock::now();
        const std::string dir = resolve_output_dir(config.output_dir);
        fs::create_directories(dir);

        const auto rows = temporal_accuracy_study(config, taus, tau_ref);

        std::ofstream out(fs::path(dir) / "accuracy.csv");
        if (!out) throw std::runtime_error("cannot open accuracy.csv for writing");
        out << "tau,err_phi,err_psi,order_phi,order_psi\n";
        for (const auto& r : rows)
            out << format_double(r.tau) << ',' << format_double(r.err_phi) << ','
                << format_double(r.err_psi) << ',' << cell(r.order_phi) << ','
                << cell(r.order_psi) << '\n';
        out.close();

        RunManifest m;
        m.config_echo = config.echo();
        m.version = kVersion;
        m.seed = config.seed;
        m.wall_clock_seconds = seconds_since(t0);
        m.extra.emplace_back("study", "accuracy");
        m.extra.emplace_back("tau_ref", format_double(tau_ref));
        write_manifest((fs::path(dir) / "manifest.txt").string(), m);
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "accuracy failed: %s\n", e.what());
        return 1;
    }
}

}  // namespace chdbc
