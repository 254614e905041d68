#include "chdbc/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chdbc {

Grid::Grid(int nx, int ny, double lx, double ly) : nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
    if (nx < 4 || ny < 4) throw std::invalid_argument("Grid: nx, ny must be >= 4");
    if (!(lx > 0.0) || !(ly > 0.0)) throw std::invalid_argument("Grid: lx, ly must be > 0");
    h_ = lx / (nx - 1);
    const double hy = ly / (ny - 1);
    if (std::abs(h_ - hy) > 1e-12 * std::max(h_, hy))
        throw std::invalid_argument("Grid: cells must be square (lx/(nx-1) != ly/(ny-1))");

    // Counterclockwise perimeter walk from (0,0); corners appear exactly once.
    chain_.reserve(2 * (nx - 1) + 2 * (ny - 1));
    for (int i = 0; i < nx - 1; ++i) chain_.emplace_back(i, 0);
    for (int j = 0; j < ny - 1; ++j) chain_.emplace_back(nx - 1, j);
    for (int i = nx - 1; i > 0; --i) chain_.emplace_back(i, ny - 1);
    for (int j = ny - 1; j > 0; --j) chain_.emplace_back(0, j);

    chain_of_.assign(static_cast<size_t>(nodes()), -1);
    for (int k = 0; k < static_cast<int>(chain_.size()); ++k)
        chain_of_[index(chain_[k].first, chain_[k].second)] = k;
}

BoundaryField trace(const BulkField& phi, const Grid& grid) {
    if (phi.size() != grid.nodes())
        throw std::invalid_argument("trace: field size " + std::to_string(phi.size()) +
                                    " does not match grid");
    BoundaryField out(grid);
    const auto& chain = grid.chain();
    for (int k = 0; k < static_cast<int>(chain.size()); ++k)
        out[k] = phi[grid.index(chain[k].first, chain[k].second)];
    return out;
}

BulkField scatter_trace(const BoundaryField& psi, const BulkField& phi, const Grid& grid) {
    if (phi.size() != grid.nodes() || psi.size() != grid.boundary_nodes())
        throw std::invalid_argument("scatter_trace: dimension mismatch");
    BulkField out = phi;
    const auto& chain = grid.chain();
    for (int k = 0; k < static_cast<int>(chain.size()); ++k)
        out[grid.index(chain[k].first, chain[k].second)] = psi[k];
    return out;
}

}  // namespace chdbc
