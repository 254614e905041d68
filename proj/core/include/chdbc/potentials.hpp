// Energy potentials F (bulk) and G (surface): the truncated double-well and
// the regularized Flory-Huggins family. Both are C^2 on all of R with a
// globally bounded second derivative, which is what the stabilized scheme needs.

#ifndef CHDBC_POTENTIALS_HPP
#define CHDBC_POTENTIALS_HPP

#include "chdbc/model.hpp"

namespace chdbc {

struct PotentialEval {
    double value;
    double d1;
    double d2;
};

// Quartic well on [-1,1] continued by quadratics outside:
//   (x-1)^2 for x > 1,  (x^2-1)^2/4 for -1 <= x <= 1,  (x+1)^2 for x < -1.
PotentialEval eval_double_well(double x);

// Logarithmic mixing potential with quadratic collars of width zeta:
// middle branch x ln x + (1-x) ln(1-x) + theta x (1-x) on [zeta, 1-zeta],
// quadratic regularizations below zeta and above 1-zeta.
PotentialEval eval_flory_huggins(double x, double theta, double zeta);

PotentialEval eval_potential(const PotentialSpec& spec, double x);

// Finite upper bound on sup |F''| over R: 2 for the double-well,
// max(1/zeta + 1/(1-zeta) - 2 theta, |4 - 2 theta|) for Flory-Huggins.
double second_derivative_bound(const PotentialSpec& spec);

}  // namespace chdbc

#endif
