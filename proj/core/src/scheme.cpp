#include "chdbc/scheme.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "chdbc/potentials.hpp"

namespace chdbc {

namespace {

// Incident grid edges at a node, as (neighbor index, sigma) with sigma = 1/2
// for edges along a boundary line and 1 otherwise. These weights are the
// trapezoid rule transverse to the edge; together with the trapezoid node
// weights they give the discrete integration-by-parts identity the
// conservation and energy proofs rely on.
//
// Matrix entries are emitted as one closed-form triplet per (row, col); the
// dense verification path mirrors the same scalar expressions, so the two
// assemblies agree bit for bit.
template <typename Emit>
void incident_edges(const Grid& g, int i, int j, Emit&& emit) {
    const double sh = (j == 0 || j == g.ny() - 1) ? 0.5 : 1.0;
    const double sv = (i == 0 || i == g.nx() - 1) ? 0.5 : 1.0;
    if (i > 0) emit(g.index(i - 1, j), sh);
    if (i < g.nx() - 1) emit(g.index(i + 1, j), sh);
    if (j > 0) emit(g.index(i, j - 1), sv);
    if (j < g.ny() - 1) emit(g.index(i, j + 1), sv);
}

// Exact for boundary nodes: 2.0 at edge nodes (1/2 + 1/2 + 1), 1.0 at corners.
double incident_sigma_sum(const Grid& g, int i, int j) {
    double s = 0.0;
    incident_edges(g, i, j, [&](int, double sigma) { s += sigma; });
    return s;
}

}  // namespace

StepSystem::StepSystem(const Grid& grid, const ModelParams& params, double tau)
    : grid_(grid), params_(params), tau_(tau) {
    params_.validate();
    if (!(tau > 0.0)) throw std::invalid_argument("StepSystem: tau must be > 0");

    const int nx = grid_.nx(), ny = grid_.ny();
    const int n = grid_.nodes();
    const int nb = grid_.boundary_nodes();
    const double h = grid_.h();
    const double tau_h2 = tau / (h * h);
    const double eps_h2 = params_.epsilon / (h * h);
    const double dk_h2 = params_.delta * params_.kappa / (h * h);
    const double eps_h = params_.epsilon / h;
    const auto mode = params_.coupling.mode;
    const double K = params_.coupling.K;

    const int PHI = 0, MU = n, MG = 2 * n;
    std::vector<Triplet> t;
    t.reserve(static_cast<size_t>(14) * n);

    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int p = grid_.index(i, j);
            if (!grid_.on_boundary(i, j)) {
                // phi - tau*Lap(mu) = phi^n
                t.push_back({PHI + p, PHI + p, 1.0});
                t.push_back({PHI + p, MU + p, 4.0 * tau_h2});
                t.push_back({PHI + p, MU + grid_.index(i + 1, j), -tau_h2});
                t.push_back({PHI + p, MU + grid_.index(i - 1, j), -tau_h2});
                t.push_back({PHI + p, MU + grid_.index(i, j + 1), -tau_h2});
                t.push_back({PHI + p, MU + grid_.index(i, j - 1), -tau_h2});
                // mu + eps*Lap(phi) - s1*phi = F'(phi^n)/eps - s1*phi^n
                t.push_back({MU + p, MU + p, 1.0});
                t.push_back({MU + p, PHI + p, -4.0 * eps_h2 - params_.s1});
                t.push_back({MU + p, PHI + grid_.index(i + 1, j), eps_h2});
                t.push_back({MU + p, PHI + grid_.index(i - 1, j), eps_h2});
                t.push_back({MU + p, PHI + grid_.index(i, j + 1), eps_h2});
                t.push_back({MU + p, PHI + grid_.index(i, j - 1), eps_h2});
                continue;
            }

            const int k = grid_.chain_index(p);
            const int km = (k + nb - 1) % nb;
            const int kp = (k + 1) % nb;
            const auto [im, jm] = grid_.chain_node(km);
            const auto [ip, jp] = grid_.chain_node(kp);
            const int pm = grid_.index(im, jm);
            const int pp = grid_.index(ip, jp);
            const double w = grid_.trapezoid_weight(i, j);
            const double cell_w = h * h * w / tau;  // lumped boundary-cell mass over tau

            const double sigma_sum = incident_sigma_sum(grid_, i, j);

            // (b) coupling row, owns mu_q
            if (mode == Coupling::Mode::GMS) {
                t.push_back({MU + p, MU + p, 1.0});
                t.push_back({MU + p, MG + k, -1.0});
            } else {
                const double scale = (mode == Coupling::Mode::Finite) ? K / h : 1.0;
                t.push_back({MU + p, PHI + p, scale * cell_w});
                t.push_back({MU + p, MU + p, (mode == Coupling::Mode::Finite)
                                                 ? scale * sigma_sum + 1.0
                                                 : scale * sigma_sum});
                incident_edges(grid_, i, j, [&](int q, double sigma) {
                    t.push_back({MU + p, MU + q, -scale * sigma});
                });
                if (mode == Coupling::Mode::Finite) t.push_back({MU + p, MG + k, -1.0});
            }

            // (c) surface dynamics row, owns phi_q
            if (mode == Coupling::Mode::GMS) {
                t.push_back({PHI + p, PHI + p, (h * h * w + h) / tau});
                t.push_back({PHI + p, MU + p, sigma_sum});
                incident_edges(grid_, i, j, [&](int q, double sigma) {
                    t.push_back({PHI + p, MU + q, -sigma});
                });
                t.push_back({PHI + p, MG + k, 2.0 / h});
                t.push_back({PHI + p, MG + km, -1.0 / h});
                t.push_back({PHI + p, MG + kp, -1.0 / h});
            } else {
                t.push_back({PHI + p, PHI + p, 1.0});
                if (mode == Coupling::Mode::Finite) {
                    t.push_back({PHI + p, MG + k, 2.0 * tau_h2 + tau / K});
                    t.push_back({PHI + p, MU + p, -(tau / K)});
                } else {
                    t.push_back({PHI + p, MG + k, 2.0 * tau_h2});
                }
                t.push_back({PHI + p, MG + km, -tau_h2});
                t.push_back({PHI + p, MG + kp, -tau_h2});
            }

            // (d) surface chemical potential row, owns muG_k
            t.push_back({MG + k, MG + k, 1.0});
            t.push_back({MG + k, MU + p, h * w});
            t.push_back({MG + k, PHI + p,
                         -2.0 * dk_h2 - params_.s2 - h * w * params_.s1 - eps_h * sigma_sum});
            // chain neighbors are also along-boundary grid neighbors (sigma 1/2)
            t.push_back({MG + k, PHI + pm, dk_h2 + eps_h * 0.5});
            t.push_back({MG + k, PHI + pp, dk_h2 + eps_h * 0.5});
            incident_edges(grid_, i, j, [&](int q, double sigma) {
                if (q != pm && q != pp) t.push_back({MG + k, PHI + q, eps_h * sigma});
            });
        }
    }

    matrix_ = SparseMatrix::from_triplets(2 * n + nb, 2 * n + nb, std::move(t));
    if (matrix_.has_empty_row())
        throw std::runtime_error("StepSystem: assembled matrix has an all-zero row");
}

void StepSystem::build_rhs(const SimState& state, std::span<double> rhs) const {
    const int n = grid_.nodes();
    const int nb = grid_.boundary_nodes();
    if (state.phi.size() != n)
        throw std::invalid_argument("StepSystem::build_rhs: state does not match grid");
    if (static_cast<int>(rhs.size()) != 2 * n + nb)
        throw std::invalid_argument("StepSystem::build_rhs: rhs size mismatch");

    const double h = grid_.h();
    const double tau = tau_;
    const auto mode = params_.coupling.mode;
    const double K = params_.coupling.K;
    const auto& pot = params_.potential;

    for (int j = 0; j < grid_.ny(); ++j) {
        for (int i = 0; i < grid_.nx(); ++i) {
            const int p = grid_.index(i, j);
            const double phin = state.phi[p];
            if (!grid_.on_boundary(i, j)) {
                rhs[p] = phin;
                rhs[n + p] = eval_potential(pot, phin).d1 / params_.epsilon - params_.s1 * phin;
                continue;
            }
            const int k = grid_.chain_index(p);
            const double w = grid_.trapezoid_weight(i, j);
            const double cell_w = h * h * w / tau;
            const double psin = phin;  // psi^n is the trace of phi^n

            if (mode == Coupling::Mode::GMS) {
                rhs[n + p] = 0.0;
                rhs[p] = (h * h * w + h) / tau * psin;
            } else {
                const double scale = (mode == Coupling::Mode::Finite) ? K / h : 1.0;
                rhs[n + p] = scale * cell_w * psin;
                rhs[p] = psin;
            }
            rhs[2 * n + k] = h * w * (eval_potential(pot, psin).d1 / params_.epsilon -
                                      params_.s1 * psin) +
                             eval_potential(pot, psin).d1 / params_.delta - params_.s2 * psin;
        }
    }
}

std::vector<double> StepSystem::build_rhs(const SimState& state) const {
    std::vector<double> rhs(static_cast<size_t>(unknowns()));
    build_rhs(state, rhs);
    return rhs;
}

std::vector<double> StepSystem::pack(const SimState& state) const {
    const int n = grid_.nodes();
    const int nb = grid_.boundary_nodes();
    std::vector<double> x(static_cast<size_t>(unknowns()));
    for (int p = 0; p < n; ++p) {
        x[p] = state.phi[p];
        x[n + p] = state.mu[p];
    }
    for (int k = 0; k < nb; ++k) x[2 * n + k] = state.mu_gamma[k];
    return x;
}

SimState advance(const StepSystem& system, const SimState& state, LinearSolver& solver) {
    const Grid& g = system.grid();
    const int n = g.nodes();
    const int nb = g.boundary_nodes();
    if (state.phi.size() != n || state.psi.size() != nb)
        throw std::invalid_argument("advance: state does not match grid");

    const auto rhs = system.build_rhs(state);
    // the current state vector is the previous solve's solution; it seeds the
    // Krylov iteration
    const auto x0 = system.pack(state);
    const auto x = solver.solve(system.matrix(), rhs, x0);

    SimState next;
    next.phi = BulkField(g);
    next.mu = BulkField(g);
    for (int p = 0; p < n; ++p) {
        next.phi[p] = x[p];
        next.mu[p] = x[n + p];
    }
    next.mu_gamma = BoundaryField(g);
    for (int k = 0; k < nb; ++k) next.mu_gamma[k] = x[2 * n + k];
    next.psi = trace(next.phi, g);
    next.t = state.t + system.tau();
    next.step = state.step + 1;

    for (double v : x)
        if (!std::isfinite(v))
            throw std::runtime_error("advance: non-finite value in solution at step " +
                                     std::to_string(next.step));
    return next;
}

StabilityReport stability_check(const ModelParams& params) {
    params.validate();
    StabilityReport r;
    r.min_s1 = params.min_s1();
    r.min_s2 = params.min_s2();
    r.s1_ok = params.s1 >= r.min_s1;
    r.s2_ok = params.s2 >= r.min_s2;
    return r;
}

std::string StabilityReport::describe() const {
    std::ostringstream os;
    if (ok()) {
        os << "stability condition satisfied (minimal s1 = " << min_s1
           << ", minimal s2 = " << min_s2 << ")";
    } else {
        os << "stability condition violated: requires s1 >= " << min_s1 << " and s2 >= "
           << min_s2 << "; energy decay is no longer guaranteed";
    }
    return os.str();
}

}  // namespace chdbc
