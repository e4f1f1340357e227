#pragma once

#include "futaki/jet.hpp"

#include <string>
#include <variant>
#include <vector>

namespace futaki {

/// Intersection data of the Kähler class: Omega^2 and c1(M).Omega.
struct SurfaceClassData {
    Jet omega_sq;
    Jet c1_dot_omega;

    friend bool operator==(const SurfaceClassData&, const SurfaceClassData&) = default;
};

/// Semisimple linearization with eigenvalues l1, l2.
struct Diagonal {
    Scalar l1;
    Scalar l2;

    friend bool operator==(const Diagonal&, const Diagonal&) = default;
};

/// Single 2x2 Jordan block with eigenvalue l.
struct Jordan {
    Scalar l;

    friend bool operator==(const Jordan&, const Jordan&) = default;
};

using Linearization = std::variant<Diagonal, Jordan>;

Scalar trace(const Linearization& kind);
Scalar determinant(const Linearization& kind);

/// Isolated zero with its linear part and potential value B = theta_X(p).
struct FixedPoint {
    std::string id;
    Linearization kind;
    Jet B;

    [[nodiscard]] Scalar A() const { return trace(kind); }
    [[nodiscard]] Scalar C() const { return determinant(kind); }

    friend bool operator==(const FixedPoint&, const FixedPoint&) = default;
};

/// Connected one-dimensional zero component. A is the (constant) normal weight.
struct FixedCurve {
    std::string id;
    Jet A;
    Jet B;
    int genus = 0;
    Jet omega_dot;
    Jet c1_dot;

    friend bool operator==(const FixedCurve&, const FixedCurve&) = default;
};

/// Zero on the exceptional curve left by blowing up a Jordan-type point, where
/// the blown-up field is degenerate. Its local invariants are known only to
/// first order in the blowup size `omega_dot` and are computed from the
/// residue limits of the degenerate model field:
///   I = 2 B^2 / lambda + 2 B eps,   J = 3 B^2 eps / lambda + B^3 / lambda^2.
struct DegenerateExceptionalPoint {
    std::string id;
    Scalar lambda;
    Jet B;
    Jet omega_dot;

    friend bool operator==(const DegenerateExceptionalPoint&, const DegenerateExceptionalPoint&) = default;
};

using Component = std::variant<FixedPoint, FixedCurve, DegenerateExceptionalPoint>;

const std::string& component_id(const Component& c);
const Jet& component_B(const Component& c);

/// A compact Kähler surface with a holomorphic vector field, known only
/// through its class data and the localization data of the zero set.
struct VectorFieldModel {
    SurfaceClassData surface;
    std::vector<Component> components;

    [[nodiscard]] const Component* find(const std::string& id) const;

    friend bool operator==(const VectorFieldModel&, const VectorFieldModel&) = default;
};

struct Diagnostic {
    std::string component;  // empty for surface-level rules
    std::string rule;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Checks every data invariant; an empty result means the model is usable.
std::vector<Diagnostic> validate(const VectorFieldModel& model);

/// Adds the constant c to the holomorphy potential on every component.
VectorFieldModel shift_potential(const VectorFieldModel& model, const Jet& c);

}  // namespace futaki
