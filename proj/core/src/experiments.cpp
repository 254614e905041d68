#include "chdbc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "chdbc/output.hpp"
#include "chdbc/scheme.hpp"

namespace chdbc {

namespace {

// 53-bit uniform draw in [lo, hi); keeps the stream identical across
// standard libraries (distribution classes are not portable).
double uniform_draw(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

void InitSpec::validate() const {
    switch (kind) {
        case Kind::RandomUniform:
            if (!(lo < hi)) throw std::invalid_argument("InitSpec: requires lo < hi");
            break;
        case Kind::SquareDroplet:
            if (!(side > 0.0)) throw std::invalid_argument("InitSpec: requires side > 0");
            break;
        case Kind::TanhCircle:
            if (!(width > 0.0)) throw std::invalid_argument("InitSpec: requires width > 0");
            if (!(radius > 0.0)) throw std::invalid_argument("InitSpec: requires radius > 0");
            break;
    }
}

std::string InitSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::RandomUniform:
            os << "random_uniform(lo=" << lo << ", hi=" << hi << ")";
            break;
        case Kind::SquareDroplet:
            os << "square_droplet(center=(" << center_x << "," << center_y << "), side=" << side
               << ", inside=" << inside << ", outside=" << outside << ")";
            break;
        case Kind::TanhCircle:
            os << "tanh_circle(center=(" << center_x << "," << center_y << "), radius=" << radius
               << ", width=" << width << ")";
            break;
    }
    return os.str();
}

void ExperimentConfig::validate() const {
    grid.make();  // throws on bad grid
    params.validate();
    init.validate();
    solver.validate();
    if (!(tau > 0.0)) throw std::invalid_argument("ExperimentConfig: tau must be > 0");
    if (!(t_end >= tau)) throw std::invalid_argument("ExperimentConfig: t_end must be >= tau");
    for (double s : snapshot_times)
        if (s < 0.0 || s > t_end + 1e-12)
            throw std::invalid_argument("ExperimentConfig: snapshot times must lie in [0, t_end]");
}

std::string ExperimentConfig::echo() const {
    std::ostringstream os;
    const auto kv = [&os](const char* k, const std::string& v) { os << k << " = " << v << "\n"; };
    kv("domain.lx", format_double(grid.lx));
    kv("domain.ly", format_double(grid.ly));
    kv("grid.nx", std::to_string(grid.nx));
    kv("grid.ny", std::to_string(grid.ny));
    kv("model.epsilon", format_double(params.epsilon));
    kv("model.delta", format_double(params.delta));
    kv("model.kappa", format_double(params.kappa));
    kv("model.coupling", params.coupling.describe());
    kv("model.s1", format_double(params.s1));
    kv("model.s2", format_double(params.s2));
    kv("potential.kind", params.potential.kind == PotentialKind::TruncatedDoubleWell
                             ? "double_well"
                             : "flory_huggins");
    if (params.potential.kind == PotentialKind::RegularizedFloryHuggins) {
        kv("potential.theta", format_double(params.potential.theta));
        kv("potential.zeta", format_double(params.potential.zeta));
    }
    kv("time.tau", format_double(tau));
    kv("time.t_end", format_double(t_end));
    switch (init.kind) {
        case InitSpec::Kind::RandomUniform:
            kv("init.kind", "random_uniform");
            kv("init.lo", format_double(init.lo));
            kv("init.hi", format_double(init.hi));
            break;
        case InitSpec::Kind::SquareDroplet:
            kv("init.kind", "square_droplet");
            kv("init.center_x", format_double(init.center_x));
            kv("init.center_y", format_double(init.center_y));
            kv("init.side", format_double(init.side));
            kv("init.inside", format_double(init.inside));
            kv("init.outside", format_double(init.outside));
            break;
        case InitSpec::Kind::TanhCircle:
            kv("init.kind", "tanh_circle");
            kv("init.center_x", format_double(init.center_x));
            kv("init.center_y", format_double(init.center_y));
            kv("init.radius", format_double(init.radius));
            kv("init.width", format_double(init.width));
            break;
    }
    kv("seed", std::to_string(seed));
    kv("output.dir", output_dir);
    kv("solver.rel_tol", format_double(solver.rel_tol));
    kv("solver.restart", std::to_string(solver.restart));
    kv("solver.preconditioner",
       solver.preconditioner == SolverConfig::Precond::Jacobi ? "jacobi" : "none");
    kv("solver.method", method == LinearSolver::Method::Gmres ? "gmres" : "direct");
    return os.str();
}

SimState make_initial(const InitSpec& init, const Grid& grid, std::uint64_t seed) {
    init.validate();
    SimState s;
    s.phi = BulkField(grid);
    s.mu = BulkField(grid, 0.0);
    s.mu_gamma = BoundaryField(grid, 0.0);

    switch (init.kind) {
        case InitSpec::Kind::RandomUniform: {
            std::mt19937_64 rng(seed);
            for (int j = 0; j < grid.ny(); ++j)
                for (int i = 0; i < grid.nx(); ++i)
                    s.phi[grid.index(i, j)] = uniform_draw(rng, init.lo, init.hi);
            break;
        }
        case InitSpec::Kind::SquareDroplet:
            for (int j = 0; j < grid.ny(); ++j)
                for (int i = 0; i < grid.nx(); ++i) {
                    const bool in = std::abs(grid.x(i) - init.center_x) <= init.side / 2.0 &&
                                    std::abs(grid.y(j) - init.center_y) <= init.side / 2.0;
                    s.phi[grid.index(i, j)] = in ? init.inside : init.outside;
                }
            break;
        case InitSpec::Kind::TanhCircle:
            for (int j = 0; j < grid.ny(); ++j)
                for (int i = 0; i < grid.nx(); ++i) {
                    const double dx = grid.x(i) - init.center_x;
                    const double dy = grid.y(j) - init.center_y;
                    const double dist = std::sqrt(dx * dx + dy * dy);
                    s.phi[grid.index(i, j)] =
                        -0.5 * std::tanh((init.radius - dist) / init.width) + 0.5;
                }
            break;
    }
    s.psi = trace(s.phi, grid);
    s.t = 0.0;
    s.step = 0;
    return s;
}

RunResult run(const ExperimentConfig& config) {
    config.validate();
    const Grid grid = config.grid.make();

    const StabilityReport stab = stability_check(config.params);
    if (!stab.ok())
        std::fprintf(stderr, "warning: %s\n", stab.describe().c_str());

    const long nsteps = std::lround(config.t_end / config.tau);

    // map requested snapshot times to nearest steps
    std::vector<long> snap_steps;
    for (double s : config.snapshot_times) {
        long k = std::lround(s / config.tau);
        k = std::clamp(k, 0L, nsteps);
        snap_steps.push_back(k);
    }
    std::sort(snap_steps.begin(), snap_steps.end());
    snap_steps.erase(std::unique(snap_steps.begin(), snap_steps.end()), snap_steps.end());

    StepSystem system(grid, config.params, config.tau);
    LinearSolver solver(config.solver, config.method);

    RunResult out;
    SimState state = make_initial(config.init, grid, config.seed);
    out.records.reserve(static_cast<size_t>(nsteps) + 1);
    out.records.push_back(diagnose(state, grid, config.params));
    auto maybe_snapshot = [&](const SimState& st) {
        if (std::binary_search(snap_steps.begin(), snap_steps.end(), st.step))
            out.snapshots[st.step] = Snapshot{st.t, st.phi, st.psi};
    };
    maybe_snapshot(state);

    for (long k = 1; k <= nsteps; ++k) {
        try {
            state = advance(system, state, solver);
        } catch (const NonConvergenceError& e) {
            throw std::runtime_error("run: solver did not converge at step " + std::to_string(k) +
                                     ": " + e.what());
        }
        out.records.push_back(diagnose(state, grid, config.params));
        maybe_snapshot(state);
    }

    out.solver.steps = nsteps;
    out.solver.total_iterations = solver.total_iterations;
    out.solver.max_iterations = solver.max_iterations;
    out.solver.max_residual = solver.max_residual;
    out.final_state = std::move(state);
    return out;
}

std::pair<double, double> l2_space_time_distance(const std::map<long, Snapshot>& a,
                                                 const std::map<long, Snapshot>& b,
                                                 const Grid& grid, double dt_quad) {
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("l2_space_time_distance: mismatched snapshot schedules");
    auto ita = a.begin();
    auto itb = b.begin();
    std::vector<double> vb, vs;
    double prev_t = 0.0;
    for (size_t idx = 0; idx < a.size(); ++idx, ++ita, ++itb) {
        if (ita->first != itb->first)
            throw std::invalid_argument("l2_space_time_distance: mismatched snapshot schedules");
        if (idx > 0 && std::abs((ita->second.t - prev_t) - dt_quad) > 1e-9 * std::max(1.0, dt_quad))
            throw std::invalid_argument("l2_space_time_distance: snapshots not spaced dt_quad apart");
        prev_t = ita->second.t;

        BulkField db = ita->second.phi;
        for (int p = 0; p < db.size(); ++p) db[p] -= itb->second.phi[p];
        BoundaryField ds = ita->second.psi;
        for (int k = 0; k < ds.size(); ++k) ds[k] -= itb->second.psi[k];
        const double nb = bulk_l2(db, grid);
        const double ns = surface_l2(ds, grid);
        vb.push_back(nb * nb);
        vs.push_back(ns * ns);
    }
    auto time_trapezoid = [dt_quad](const std::vector<double>& v) {
        double s = 0.5 * (v.front() + v.back());
        for (size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
        return std::sqrt(dt_quad * s);
    };
    return {time_trapezoid(vb), time_trapezoid(vs)};
}

std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& ks) {
    if (errors.size() != ks.size() || errors.size() < 2)
        throw std::invalid_argument("eoc: lists must have equal length >= 2");
    for (double e : errors)
        if (!(e > 0.0)) throw std::invalid_argument("eoc: errors must be positive");
    for (double k : ks)
        if (!(k > 0.0)) throw std::invalid_argument("eoc: ks must be positive");
    std::vector<double> out;
    for (size_t i = 0; i + 1 < errors.size(); ++i) {
        const double dk = std::log(ks[i + 1] / ks[i]);
        if (dk == 0.0) throw std::invalid_argument("eoc: repeated ladder value");
        out.push_back(std::log(errors[i + 1] / errors[i]) / dk);
    }
    return out;
}

std::vector<AccuracyRow> temporal_accuracy_study(const ExperimentConfig& base,
                                                 const std::vector<double>& taus,
                                                 double tau_ref) {
    if (taus.empty()) throw std::invalid_argument("temporal_accuracy_study: empty tau list");
    for (double tau : taus) {
        // tau == tau_ref is allowed and reports a zero error by construction
        if (tau_ref > tau)
            throw std::invalid_argument("temporal_accuracy_study: tau_ref must be <= all taus");
        const double ratio = base.t_end / tau;
        if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, std::abs(ratio)))
            throw std::invalid_argument("temporal_accuracy_study: every tau must divide t_end");
    }
    const Grid grid = base.grid.make();

    ExperimentConfig ref = base;
    ref.tau = tau_ref;
    ref.snapshot_times.clear();

    // The reference run dominates the study cost; cache its final fields.
    namespace fs = std::filesystem;
    const fs::path cache_dir = fs::path(resolve_output_dir(base.output_dir)) / "cache";
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a(ref.echo())));
    const fs::path phi_path = cache_dir / (std::string("ref_") + hex + "_phi.csv");
    const fs::path psi_path = cache_dir / (std::string("ref_") + hex + "_psi.csv");

    BulkField ref_phi;
    BoundaryField ref_psi;
    if (fs::exists(phi_path) && fs::exists(psi_path)) {
        ref_phi = read_bulk_csv(phi_path.string(), grid);
        ref_psi = read_boundary_csv(psi_path.string(), grid);
    } else {
        RunResult r = run(ref);
        ref_phi = r.final_state.phi;
        ref_psi = r.final_state.psi;
        fs::create_directories(cache_dir);
        write_bulk_csv(phi_path.string(), ref_phi, grid);
        write_boundary_csv(psi_path.string(), ref_psi, grid);
    }

    std::vector<AccuracyRow> rows;
    for (double tau : taus) {
        ExperimentConfig c = base;
        c.tau = tau;
        c.snapshot_times.clear();
        if (tau == tau_ref) {
            rows.push_back({tau, 0.0, 0.0, 0.0, 0.0});
            continue;
        }
        RunResult r = run(c);
        BulkField db = r.final_state.phi;
        for (int p = 0; p < db.size(); ++p) db[p] -= ref_phi[p];
        BoundaryField ds = r.final_state.psi;
        for (int k = 0; k < ds.size(); ++k) ds[k] -= ref_psi[k];
        rows.push_back({tau, bulk_l2(db, grid), surface_l2(ds, grid),
                        std::numeric_limits<double>::quiet_NaN(),
                        std::numeric_limits<double>::quiet_NaN()});
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (size_t i = 1; i < rows.size(); ++i) {
        const double dt = std::log(rows[i - 1].tau / rows[i].tau);
        const bool ok = rows[i - 1].err_phi > 0.0 && rows[i].err_phi > 0.0 && dt != 0.0;
        rows[i].order_phi = ok ? std::log(rows[i - 1].err_phi / rows[i].err_phi) / dt : nan;
        const bool oks = rows[i - 1].err_psi > 0.0 && rows[i].err_psi > 0.0 && dt != 0.0;
        rows[i].order_psi = oks ? std::log(rows[i - 1].err_psi / rows[i].err_psi) / dt : nan;
    }
    if (!rows.empty()) {
        rows[0].order_phi = nan;
        rows[0].order_psi = nan;
    }
    return rows;
}

}  // namespace chdbc
