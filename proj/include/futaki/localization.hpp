#pragma once

#include "futaki/model.hpp"

#include <stdexcept>
#include <utility>

namespace futaki {

/// Raised when a component violates the nondegeneracy the formulas need.
class LocalizationError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Per-component contributions; f = I - (2/3) mu J for the mu in effect.
struct LocalInvariants {
    Jet I;
    Jet J;
    Jet f;
};

/// mu = c1.Omega / Omega^2.
Jet mu(const SurfaceClassData& surface);

/// Isolated nondegenerate zero: I = A B^2 / C, J = B^3 / C.
std::pair<Jet, Jet> point_IJ(const FixedPoint& p);

/// Nondegenerate zero curve Z of genus g:
///   I = 2 B (Omega.Z) + B^2 (2 - 2g) / A
///   J = 3 B^2 (Omega.Z) / A - B^3 (c1.Z + 2g - 2) / A^2
std::pair<Jet, Jet> curve_IJ(const FixedCurve& z);

/// First-order invariants of the degenerate zero left by a Jordan blowup.
std::pair<Jet, Jet> degenerate_IJ(const DegenerateExceptionalPoint& d);

std::pair<Jet, Jet> component_IJ(const Component& c);

LocalInvariants local_futaki(const Component& c, const Jet& mu);

/// J_M: the sum of all local J, equal to 3 * mean(theta) * Omega^2.
Jet j_total(const VectorFieldModel& model);

/// Futaki invariant of (Omega, X) as the sum of local contributions.
Jet total_futaki(const VectorFieldModel& model);

}  // namespace futaki
