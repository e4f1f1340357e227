#pragma once

#include "futaki/blowup.hpp"
#include "futaki/residue.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace futaki {

/// Which C* factor of CP^1 x CP^1 the vector field rotates.
enum class P1Field { Z, W };

/// CP^1 x CP^1 with Kähler class a[pt x CP^1] + b[CP^1 x pt] and the field
/// z d/dz (Z) or w d/dw (W). Potential normalized to vanish on {z = 0}.
///
/// Z: Omega^2 = 2ab, c1.Omega = 2a + 2b; zero curves z0 = {z=0} (A = 1, B = 0)
/// and zinf = {z=inf} (A = -1, B = -a), both with genus 0, Omega. = b, c1. = 2.
/// W swaps the roles of a and b (curves w0, winf).
VectorFieldModel p1xp1_model(const Rat& a, const Rat& b, P1Field field);

struct Scenario {
    std::string name;
    VectorFieldModel model;
    std::vector<BlowupInstruction> instrs;
    std::map<EpsVar, Scalar> expected_linear;
    /// Exact f(e1, e2) when known.
    std::optional<std::function<Rat(const Rat&, const Rat&)>> closed_form;
};

/// Blowups at (0,0) and (inf,inf).
Scenario scenario_two_points(const Rat& a, const Rat& b, P1Field field);

/// Blowups at (0,0), (inf,inf) and (0,inf).
Scenario scenario_three_points(const Rat& a, const Rat& b, P1Field field);

/// f_Z(a,b,e1,e2) = -2a(a+b-e2) - 2(2a+2b-e1-e2)/(3(2ab-e1^2-e2^2)) (e1^3-e2^3+3a e2^2-3a^2 b).
/// Throws std::domain_error when 2ab - e1^2 - e2^2 = 0.
Rat closed_form_two_point(const Rat& a, const Rat& b, const Rat& e1, const Rat& e2);

/// Replaces each symbolic epsilon by its value; unknown variables throw.
std::vector<BlowupInstruction> instantiate(const std::vector<BlowupInstruction>& instrs,
                                           const std::map<EpsVar, Rat>& values);

std::vector<std::string> builtin_scenario_names();

/// Throws std::invalid_argument for unknown names.
Scenario builtin_scenario(const std::string& name, const Rat& a = 2, const Rat& b = 3);

/// Hermitian perturbation G used as the "linear-perturbed" metric: g = I + v1 G + conj(v1) G^H.
residue::LocalMetric perturbed_metric();

std::vector<std::string> builtin_residue_names();

/// Throws std::invalid_argument for unknown names.
residue::ResidueProblem builtin_residue(const std::string& name);

}  // namespace futaki
