#include "chdbc/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "chdbc/potentials.hpp"

namespace chdbc {

void PotentialSpec::validate() const {
    if (kind == PotentialKind::RegularizedFloryHuggins) {
        if (!(zeta > 0.0 && zeta < 0.5))
            throw std::invalid_argument("PotentialSpec: zeta must lie in (0, 0.5)");
        if (!(theta > 1.0)) throw std::invalid_argument("PotentialSpec: theta must be > 1");
    }
}

Coupling Coupling::finite(double K) {
    if (!(K > 0.0)) throw std::invalid_argument("Coupling: finite K must be > 0");
    return {Mode::Finite, K};
}

std::string Coupling::describe() const {
    switch (mode) {
        case Mode::GMS:
            return "gms";
        case Mode::LiuWu:
            return "liuwu";
        case Mode::Finite: {
            std::ostringstream os;
            os.precision(17);
            os << K;
            return os.str();
        }
    }
    return "?";
}

void ModelParams::validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("ModelParams: epsilon must be > 0");
    if (!(delta > 0.0)) throw std::invalid_argument("ModelParams: delta must be > 0");
    if (!(kappa >= 0.0)) throw std::invalid_argument("ModelParams: kappa must be >= 0");
    if (!(s1 >= 0.0) || !(s2 >= 0.0))
        throw std::invalid_argument("ModelParams: s1, s2 must be >= 0");
    if (coupling.mode == Coupling::Mode::Finite && !(coupling.K > 0.0))
        throw std::invalid_argument("ModelParams: finite coupling requires K > 0");
    potential.validate();
}

double ModelParams::min_s1() const {
    return second_derivative_bound(potential) / (2.0 * epsilon);
}

double ModelParams::min_s2() const {
    return second_derivative_bound(potential) / (2.0 * delta);
}

bool ModelParams::satisfies_stability() const {
    return s1 >= min_s1() && s2 >= min_s2();
}

}  // namespace chdbc
