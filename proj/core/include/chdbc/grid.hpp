// Uniform tensor grid on a rectangle, with the closed boundary chain used by
// the dynamic boundary condition. Nodes are collocated: the boundary field
// lives on the boundary nodes of the bulk grid, so the trace coupling is exact.

#ifndef CHDBC_GRID_HPP
#define CHDBC_GRID_HPP

#include <utility>
#include <vector>

namespace chdbc {

class Grid {
public:
    // nx, ny count nodes per axis including boundary nodes; cells must be
    // square: lx/(nx-1) == ly/(ny-1).
    Grid(int nx, int ny, double lx, double ly);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double lx() const { return lx_; }
    double ly() const { return ly_; }
    double h() const { return h_; }

    int nodes() const { return nx_ * ny_; }
    int boundary_nodes() const { return static_cast<int>(chain_.size()); }

    int index(int i, int j) const { return j * nx_ + i; }
    double x(int i) const { return i * h_; }
    double y(int j) const { return j * h_; }

    bool on_boundary(int i, int j) const {
        return i == 0 || j == 0 || i == nx_ - 1 || j == ny_ - 1;
    }

    // Perimeter chain: counterclockwise from (0,0), each boundary node once.
    const std::vector<std::pair<int, int>>& chain() const { return chain_; }
    std::pair<int, int> chain_node(int k) const { return chain_[k]; }
    // Chain position of a bulk node index, or -1 for interior nodes.
    int chain_index(int bulk_index) const { return chain_of_[bulk_index]; }

    // Trapezoid quadrature weight of node (i,j): 1 interior, 1/2 edge, 1/4 corner.
    double trapezoid_weight(int i, int j) const {
        double w = 1.0;
        if (i == 0 || i == nx_ - 1) w *= 0.5;
        if (j == 0 || j == ny_ - 1) w *= 0.5;
        return w;
    }

    bool operator==(const Grid& o) const {
        return nx_ == o.nx_ && ny_ == o.ny_ && lx_ == o.lx_ && ly_ == o.ly_;
    }

private:
    int nx_, ny_;
    double lx_, ly_, h_;
    std::vector<std::pair<int, int>> chain_;
    std::vector<int> chain_of_;
};

// Scalar values on the nx x ny grid, row-major (index = j*nx + i).
struct BulkField {
    std::vector<double> values;

    BulkField() = default;
    explicit BulkField(const Grid& g, double fill = 0.0)
        : values(static_cast<size_t>(g.nodes()), fill) {}

    double& operator[](int p) { return values[p]; }
    double operator[](int p) const { return values[p]; }
    int size() const { return static_cast<int>(values.size()); }
};

// Scalar values on the boundary chain, perimeter order.
struct BoundaryField {
    std::vector<double> values;

    BoundaryField() = default;
    explicit BoundaryField(const Grid& g, double fill = 0.0)
        : values(static_cast<size_t>(g.boundary_nodes()), fill) {}

    double& operator[](int k) { return values[k]; }
    double operator[](int k) const { return values[k]; }
    int size() const { return static_cast<int>(values.size()); }
};

// Boundary values of phi in perimeter order.
BoundaryField trace(const BulkField& phi, const Grid& grid);

// phi with its boundary nodes overwritten by psi; interior untouched.
BulkField scatter_trace(const BoundaryField& psi, const BulkField& phi, const Grid& grid);

}  // namespace chdbc

#endif
