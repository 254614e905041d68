// Second-order finite-difference spatial operators on the grid and its
// boundary chain. All three are linear and annihilate constants.

#ifndef CHDBC_OPERATORS_HPP
#define CHDBC_OPERATORS_HPP

#include "chdbc/grid.hpp"
#include "chdbc/sparse.hpp"

namespace chdbc {

// 5-point Laplacian at interior nodes; boundary rows of the result are zero
// (boundary rows belong to the boundary-condition equations of the scheme).
BulkField laplacian_interior(const BulkField& f, const Grid& grid);

// Periodic 1D second difference along the perimeter chain, arclength spacing h.
BoundaryField laplace_beltrami(const BoundaryField& g, const Grid& grid);

// Outward normal derivative: second-order one-sided difference into the
// domain, negated; corners take the mean of the two edge-direction stencils.
BoundaryField normal_derivative(const BulkField& f, const Grid& grid);

// Sparse stencil forms of the operators above (rows over the respective
// index spaces); used by verification paths and analysis tooling.
SparseMatrix laplacian_interior_matrix(const Grid& grid);
SparseMatrix laplace_beltrami_matrix(const Grid& grid);
SparseMatrix normal_derivative_matrix(const Grid& grid);

}  // namespace chdbc

#endif
