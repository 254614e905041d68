// Model parameters: interface widths, surface diffusion, the bulk/boundary
// chemical-potential coupling, stabilization constants and potential choice.

#ifndef CHDBC_MODEL_HPP
#define CHDBC_MODEL_HPP

#include <string>

#include "chdbc/grid.hpp"

namespace chdbc {

enum class PotentialKind {
    TruncatedDoubleWell,
    RegularizedFloryHuggins,
};

struct PotentialSpec {
    PotentialKind kind = PotentialKind::TruncatedDoubleWell;
    double theta = 0.0;  // Flory interaction parameter, > 1 (Flory-Huggins only)
    double zeta = 0.0;   // regularization width, 0 < zeta < 0.5 (Flory-Huggins only)

    static PotentialSpec double_well() { return {PotentialKind::TruncatedDoubleWell, 0.0, 0.0}; }
    static PotentialSpec flory_huggins(double theta, double zeta) {
        return {PotentialKind::RegularizedFloryHuggins, theta, zeta};
    }

    void validate() const;  // throws std::invalid_argument
};

// Bulk/boundary chemical-potential coupling: Robin with finite K > 0, or one
// of the limits (GMS at K=0, Liu-Wu at K=infinity).
struct Coupling {
    enum class Mode { Finite, GMS, LiuWu };

    Mode mode = Mode::Finite;
    double K = 1.0;  // meaningful for Mode::Finite only

    static Coupling finite(double K);
    static Coupling gms() { return {Mode::GMS, 0.0}; }
    static Coupling liu_wu() { return {Mode::LiuWu, 0.0}; }

    std::string describe() const;
};

struct ModelParams {
    double epsilon = 0.02;  // bulk interface width, > 0
    double delta = 0.02;    // surface interface width, > 0
    double kappa = 1.0;     // surface diffusion coefficient, >= 0
    Coupling coupling;
    double s1 = 0.0;  // bulk stabilization, >= 0
    double s2 = 0.0;  // surface stabilization, >= 0
    PotentialSpec potential;

    void validate() const;

    // Minimal admissible stabilization: max|F''|/(2 eps), max|G''|/(2 delta).
    double min_s1() const;
    double min_s2() const;
    // True iff s1 >= min_s1() and s2 >= min_s2().
    bool satisfies_stability() const;
};

// Full evolving state. psi equals trace(phi) by construction after every step.
struct SimState {
    BulkField phi;
    BulkField mu;
    BoundaryField psi;
    BoundaryField mu_gamma;
    double t = 0.0;
    long step = 0;
};

}  // namespace chdbc

#endif
