#pragma once

#include "futaki/model.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace futaki {

class BlowupError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Blow up the zero `target` (or a point on the zero curve `target`) with
/// exceptional class of size `epsilon`. A symbolic blowup uses
/// epsilon = jet_var(e); an exact one uses a constant jet.
struct BlowupInstruction {
    std::string target;
    Jet epsilon;
    /// Potential at the blown-up point. Required for curve targets, where it
    /// must equal the curve's B; checked against B for point targets.
    std::optional<Jet> theta;

    friend bool operator==(const BlowupInstruction&, const BlowupInstruction&) = default;
};

/// The single perturbation variable of a symbolic instruction, if it is one.
std::optional<EpsVar> symbolic_variable(const BlowupInstruction& instr);

/// Model of the blown-up surface with the lifted vector field.
///
/// Class data: Omega^2 -> Omega^2 - eps^2 and c1.Omega -> c1.Omega - eps,
/// from Omega~ = pi*Omega - eps E, c1(M~) = pi*c1 - E and E.E = -1.
///
/// Isolated point with distinct eigenvalues (l1, l2): two new zeros on E with
/// eigenvalues (l1, l2 - l1), (l2, l1 - l2) and potentials theta - l1 eps,
/// theta - l2 eps. Equal eigenvalues: E itself becomes a zero curve with
/// A = l, B = theta - l eps, Omega.E = eps and c1.E = 1 (K~ = pi*K + E).
/// Jordan block: a degenerate zero on E whose invariants are only certified to
/// first order, so exact (nonzero constant) eps is refused.
///
/// Point on a zero curve: the strict transform keeps the curve with
/// Omega.L -> Omega.L - eps and c1.L -> c1.L - 1; a new isolated zero appears
/// on E with eigenvalues (A, -A) and potential theta - A eps.
VectorFieldModel blow_up(const VectorFieldModel& model, const BlowupInstruction& instr);

/// Applies the instructions in order.
VectorFieldModel blow_up_all(VectorFieldModel model, const std::vector<BlowupInstruction>& instrs);

/// nu_p = -2 theta_p + 2 J_M / (3 Omega^2), evaluated at eps = 0.
Scalar expansion_coefficient(const VectorFieldModel& model, const Jet& theta_p);

struct ExpansionReport {
    Jet f_base;
    Jet f_blown_up;
    std::map<EpsVar, Scalar> nu;
    std::map<EpsVar, Scalar> jet_linear;
    bool agree = false;

    friend bool operator==(const ExpansionReport&, const ExpansionReport&) = default;
};

/// Blows up along all (symbolic, distinct) instructions and compares the
/// first-order coefficients of the resulting Futaki jet with nu_p.
ExpansionReport verify_expansion(const VectorFieldModel& model, const std::vector<BlowupInstruction>& instrs);

struct Obstructed {
    Scalar certificate;

    friend bool operator==(const Obstructed&, const Obstructed&) = default;
};

struct Inconclusive {
    friend bool operator==(const Inconclusive&, const Inconclusive&) = default;
};

using Verdict = std::variant<Obstructed, Inconclusive>;

/// For a base with vanishing Futaki invariant, the first-order Futaki
/// invariant along the ray eps_i = w_i t is t * sum nu_i w_i; a nonzero value
/// rules out cscK metrics in those classes for small t > 0.
Verdict obstruction_check(const VectorFieldModel& model,
                          const std::vector<BlowupInstruction>& instrs,
                          const std::map<EpsVar, Rat>& weights);

}  // namespace futaki
