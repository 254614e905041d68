#include "chdbc/potentials.hpp"

#include <cmath>
#include <stdexcept>

namespace chdbc {

PotentialEval eval_double_well(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("eval_double_well: non-finite input");
    if (x > 1.0) {
        const double d = x - 1.0;
        return {d * d, 2.0 * d, 2.0};
    }
    if (x < -1.0) {
        const double d = x + 1.0;
        return {d * d, 2.0 * d, 2.0};
    }
    const double q = x * x - 1.0;
    return {0.25 * q * q, x * x * x - x, 3.0 * x * x - 1.0};
}

PotentialEval eval_flory_huggins(double x, double theta, double zeta) {
    if (!(zeta > 0.0 && zeta < 0.5))
        throw std::invalid_argument("eval_flory_huggins: zeta must lie in (0, 0.5)");
    if (!(theta > 1.0)) throw std::invalid_argument("eval_flory_huggins: theta must be > 1");
    if (!std::isfinite(x)) throw std::invalid_argument("eval_flory_huggins: non-finite input");

    const double mix = theta * x * (1.0 - x);
    const double mix1 = theta * (1.0 - 2.0 * x);
    const double mix2 = -2.0 * theta;
    if (x < zeta) {
        // ln x tail replaced by a quadratic collar
        const double v = (1.0 - x) * std::log(1.0 - x) + x * x / (2.0 * zeta) +
                         x * std::log(zeta) - zeta / 2.0 + mix;
        const double d1 = -std::log(1.0 - x) - 1.0 + x / zeta + std::log(zeta) + mix1;
        const double d2 = 1.0 / (1.0 - x) + 1.0 / zeta + mix2;
        return {v, d1, d2};
    }
    if (x > 1.0 - zeta) {
        const double v = x * std::log(x) + (1.0 - x) * (1.0 - x) / (2.0 * zeta) +
                         (1.0 - x) * std::log(zeta) - zeta / 2.0 + mix;
        const double d1 = std::log(x) + 1.0 - (1.0 - x) / zeta - std::log(zeta) + mix1;
        const double d2 = 1.0 / x + 1.0 / zeta + mix2;
        return {v, d1, d2};
    }
    const double v = x * std::log(x) + (1.0 - x) * std::log(1.0 - x) + mix;
    const double d1 = std::log(x) - std::log(1.0 - x) + mix1;
    const double d2 = 1.0 / x + 1.0 / (1.0 - x) + mix2;
    return {v, d1, d2};
}

PotentialEval eval_potential(const PotentialSpec& spec, double x) {
    switch (spec.kind) {
        case PotentialKind::TruncatedDoubleWell:
            return eval_double_well(x);
        case PotentialKind::RegularizedFloryHuggins:
            return eval_flory_huggins(x, spec.theta, spec.zeta);
    }
    throw std::invalid_argument("eval_potential: unknown kind");
}

double second_derivative_bound(const PotentialSpec& spec) {
    switch (spec.kind) {
        case PotentialKind::TruncatedDoubleWell:
            return 2.0;
        case PotentialKind::RegularizedFloryHuggins: {
            spec.validate();
            // F'' is 1/x + 1/(1-x) - 2 theta on the middle branch, monotone
            // toward the collars on the outer branches; the sup sits at the
            // breakpoints, the interior critical point is x = 1/2.
            const double at_breakpoints = 1.0 / spec.zeta + 1.0 / (1.0 - spec.zeta) - 2.0 * spec.theta;
            const double at_midpoint = std::abs(4.0 - 2.0 * spec.theta);
            return std::max(at_breakpoints, at_midpoint);
        }
    }
    throw std::invalid_argument("second_derivative_bound: unknown kind");
}

}  // namespace chdbc
