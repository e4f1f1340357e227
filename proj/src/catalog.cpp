#include "futaki/catalog.hpp"

#include <stdexcept>

namespace futaki {

namespace {

void require_positive(const Rat& a, const Rat& b)
{
    if (a <= 0 || b <= 0) {
        throw std::invalid_argument("class parameters a, b must be positive");
    }
}

struct CurveNames {
    std::string zero;
    std::string infinity;
};

CurveNames curve_names(P1Field field)
{
    return field == P1Field::Z ? CurveNames{"z0", "zinf"} : CurveNames{"w0", "winf"};
}

BlowupInstruction on_curve(const std::string& curve, const std::string& var, const Jet& theta)
{
    return {curve, jet_var(EpsVar(var)), theta};
}

}  // namespace

VectorFieldModel p1xp1_model(const Rat& a, const Rat& b, P1Field field)
{
    require_positive(a, b);
    // Fibre class of the rotated factor pairs with Omega to the other parameter.
    const Rat& rotated = field == P1Field::Z ? a : b;
    const Rat& fibre = field == P1Field::Z ? b : a;
    const auto names = curve_names(field);
    VectorFieldModel m;
    m.surface = {Jet(Rat(2 * a * b)), Jet(Rat(2 * a + 2 * b))};
    m.components.emplace_back(FixedCurve{names.zero, Jet(1), Jet(0), 0, Jet(fibre), Jet(2)});
    m.components.emplace_back(FixedCurve{names.infinity, Jet(-1), Jet(Rat(-rotated)), 0, Jet(fibre), Jet(2)});
    return m;
}

Scenario scenario_two_points(const Rat& a, const Rat& b, P1Field field)
{
    const Rat rotated = field == P1Field::Z ? a : b;
    const auto names = curve_names(field);
    Scenario s;
    s.name = field == P1Field::Z ? "p1xp1-two-point" : "p1xp1-two-point-w";
    s.model = p1xp1_model(a, b, field);
    s.instrs = {on_curve(names.zero, "e1", Jet(0)), on_curve(names.infinity, "e2", Jet(Rat(-rotated)))};
    s.expected_linear = {{EpsVar("e1"), Scalar(Rat(-rotated))}, {EpsVar("e2"), Scalar(rotated)}};
    if (field == P1Field::Z) {
        s.closed_form = [a, b](const Rat& e1, const Rat& e2) { return closed_form_two_point(a, b, e1, e2); };
    } else {
        s.closed_form = [a, b](const Rat& e1, const Rat& e2) { return closed_form_two_point(b, a, e1, e2); };
    }
    return s;
}

Scenario scenario_three_points(const Rat& a, const Rat& b, P1Field field)
{
    Scenario s = scenario_two_points(a, b, field);
    s.closed_form.reset();
    const auto names = curve_names(field);
    if (field == P1Field::Z) {
        // (0, inf) lies on {z = 0}.
        s.name = "p1xp1-three-point";
        s.instrs.push_back(on_curve(names.zero, "e3", Jet(0)));
        s.expected_linear[EpsVar("e3")] = Scalar(Rat(-a));
    } else {
        // (0, inf) lies on {w = inf}.
        s.name = "p1xp1-three-point-w";
        s.instrs.push_back(on_curve(names.infinity, "e3", Jet(Rat(-b))));
        s.expected_linear[EpsVar("e3")] = Scalar(b);
    }
    return s;
}

Rat closed_form_two_point(const Rat& a, const Rat& b, const Rat& e1, const Rat& e2)
{
    const Rat den = 3 * (2 * a * b - e1 * e1 - e2 * e2);
    if (den == 0) {
        throw std::domain_error("closed form undefined: 2ab - e1^2 - e2^2 = 0");
    }
    const Rat cubic = e1 * e1 * e1 - e2 * e2 * e2 + 3 * a * e2 * e2 - 3 * a * a * b;
    return Rat(-2 * a * (a + b - e2) - 2 * (2 * a + 2 * b - e1 - e2) * cubic / den);
}

std::vector<BlowupInstruction> instantiate(const std::vector<BlowupInstruction>& instrs,
                                           const std::map<EpsVar, Rat>& values)
{
    std::vector<BlowupInstruction> out;
    out.reserve(instrs.size());
    for (const auto& instr : instrs) {
        const auto var = symbolic_variable(instr);
        if (!var) {
            out.push_back(instr);
            continue;
        }
        const auto it = values.find(*var);
        if (it == values.end()) {
            throw std::invalid_argument("no value given for '" + var->name() + "'");
        }
        out.push_back({instr.target, Jet(it->second), instr.theta});
    }
    return out;
}

std::vector<std::string> builtin_scenario_names()
{
    return {"p1xp1-two-point", "p1xp1-two-point-w", "p1xp1-three-point", "p1xp1-three-point-w"};
}

Scenario builtin_scenario(const std::string& name, const Rat& a, const Rat& b)
{
    if (name == "p1xp1-two-point") {
        return scenario_two_points(a, b, P1Field::Z);
    }
    if (name == "p1xp1-two-point-w") {
        return scenario_two_points(a, b, P1Field::W);
    }
    if (name == "p1xp1-three-point") {
        return scenario_three_points(a, b, P1Field::Z);
    }
    if (name == "p1xp1-three-point-w") {
        return scenario_three_points(a, b, P1Field::W);
    }
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

residue::LocalMetric perturbed_metric()
{
    residue::LocalMetric m;
    m.g1v[0][0] = {0.2, 0.0};
    m.g1v[0][1] = {0.1, -0.05};
    m.g1v[1][0] = {0.05, 0.1};
    m.g1v[1][1] = {0.1, 0.2};
    return m;
}

std::vector<std::string> builtin_residue_names()
{
    return {"lemma-main-flat-a1",  "lemma-main-flat-a1-v", "lemma-main-perturbed-a2",
            "bott-diagonal-1-2",   "appendix-flat-a1",     "appendix-perturbed-a1"};
}

residue::ResidueProblem builtin_residue(const std::string& name)
{
    using namespace residue;
    ResidueProblem p;
    if (name == "lemma-main-flat-a1") {
        p.phi = TestFunction::constant(Scalar(1));
        p.field = Degenerate{Scalar(1)};
    } else if (name == "lemma-main-flat-a1-v") {
        p.phi.add({0, 1, 0, 0}, Scalar(1));
        p.field = Degenerate{Scalar(1)};
    } else if (name == "lemma-main-perturbed-a2") {
        p.phi = TestFunction::constant(Scalar(3));
        p.phi.add({0, 1, 0, 0}, Scalar(5));
        p.field = Degenerate{Scalar(2)};
        p.metric = perturbed_metric();
    } else if (name == "bott-diagonal-1-2") {
        p.phi = TestFunction::constant(Scalar(1));
        p.field = Nondegenerate{Scalar(1), Scalar(2)};
    } else if (name == "appendix-flat-a1") {
        p.field = Degenerate{Scalar(1)};
    } else if (name == "appendix-perturbed-a1") {
        p.field = Degenerate{Scalar(1)};
        p.metric = perturbed_metric();
    } else {
        throw std::invalid_argument("unknown residue problem '" + name + "'");
    }
    return p;
}

}  // namespace futaki
