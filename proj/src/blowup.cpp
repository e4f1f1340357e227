#include "futaki/blowup.hpp"

#include "futaki/localization.hpp"
#include "futaki/overloaded.hpp"

#include <algorithm>
#include <set>

namespace futaki {

namespace {

std::string fresh_id(const VectorFieldModel& model, const std::string& base)
{
    if (model.find(base) == nullptr) {
        return base;
    }
    for (int k = 2;; ++k) {
        std::string id = base + "." + std::to_string(k);
        if (model.find(id) == nullptr) {
            return id;
        }
    }
}

void check_epsilon(const Jet& eps)
{
    const Scalar& v = eps.value();
    if (!v.is_real() || v.re() < 0) {
        throw BlowupError("blowup size must be real and non-negative, got " + to_string(eps));
    }
}

// Replaces components[index] by `replacement` (possibly several components).
void splice(VectorFieldModel& model, std::size_t index, std::vector<Component> replacement)
{
    auto pos = model.components.erase(model.components.begin() + static_cast<std::ptrdiff_t>(index));
    model.components.insert(pos, std::make_move_iterator(replacement.begin()),
                            std::make_move_iterator(replacement.end()));
}

}  // namespace

std::optional<EpsVar> symbolic_variable(const BlowupInstruction& instr)
{
    const Jet& e = instr.epsilon;
    if (!e.value().is_zero() || e.linear().size() != 1) {
        return std::nullopt;
    }
    const auto& [v, c] = *e.linear().begin();
    if (c != Scalar(1)) {
        return std::nullopt;
    }
    return v;
}

VectorFieldModel blow_up(const VectorFieldModel& model, const BlowupInstruction& instr)
{
    const auto it = std::find_if(model.components.begin(), model.components.end(),
                                 [&](const Component& c) { return component_id(c) == instr.target; });
    if (it == model.components.end()) {
        throw BlowupError("unknown blowup target '" + instr.target + "'");
    }
    const std::size_t index = static_cast<std::size_t>(it - model.components.begin());
    const Jet& eps = instr.epsilon;
    check_epsilon(eps);

    const Jet& theta = component_B(*it);
    if (instr.theta && *instr.theta != theta) {
        throw BlowupError("theta at blown-up point (" + to_string(*instr.theta) + ") does not match potential " +
                          to_string(theta) + " of '" + instr.target + "'");
    }

    VectorFieldModel out = model;
    out.surface.omega_sq -= eps * eps;
    out.surface.c1_dot_omega -= eps;

    std::visit(
        overloaded{
            [&](const FixedPoint& p) {
                std::visit(
                    overloaded{
                        [&](const Diagonal& d) {
                            if (d.l1 == d.l2) {
                                const Jet l(d.l1);
                                FixedCurve exceptional{fresh_id(out, p.id + "/E"), l, theta - l * eps, 0, eps, Jet(1)};
                                splice(out, index, {std::move(exceptional)});
                                return;
                            }
                            Scalar first = d.l1;
                            Scalar second = d.l2;
                            if (lex_less(second, first)) {
                                std::swap(first, second);
                            }
                            FixedPoint p1{fresh_id(out, p.id + "/1"), Diagonal{first, second - first},
                                          theta - Jet(first) * eps};
                            FixedPoint q1{fresh_id(out, p.id + "/2"), Diagonal{second, first - second},
                                          theta - Jet(second) * eps};
                            splice(out, index, {std::move(p1), std::move(q1)});
                        },
                        [&](const Jordan& j) {
                            if (!eps.value().is_zero()) {
                                throw BlowupError("degenerate blowup certified to first order only");
                            }
                            DegenerateExceptionalPoint e{fresh_id(out, p.id + "/E"), j.l, theta - Jet(j.l) * eps, eps};
                            splice(out, index, {std::move(e)});
                        },
                    },
                    p.kind);
            },
            [&](const FixedCurve& z) {
                if (!instr.theta) {
                    throw BlowupError("blowup on curve '" + z.id + "' requires theta at the point");
                }
                if (!z.A.is_constant()) {
                    throw BlowupError("curve '" + z.id + "' has a perturbed normal weight");
                }
                const Scalar a0 = z.A.value();
                FixedCurve strict = z;
                strict.omega_dot -= eps;
                strict.c1_dot -= Jet(1);
                FixedPoint q{fresh_id(out, z.id + "/p"), Diagonal{a0, -a0}, theta - Jet(a0) * eps};
                splice(out, index, {std::move(strict), std::move(q)});
            },
            [&](const DegenerateExceptionalPoint& d) {
                throw BlowupError("cannot blow up degenerate zero '" + d.id + "'");
            },
        },
        *it);
    return out;
}

VectorFieldModel blow_up_all(VectorFieldModel model, const std::vector<BlowupInstruction>& instrs)
{
    for (const auto& instr : instrs) {
        model = blow_up(model, instr);
    }
    return model;
}

Scalar expansion_coefficient(const VectorFieldModel& model, const Jet& theta_p)
{
    const Scalar vol = model.surface.omega_sq.value();
    if (vol.is_zero()) {
        throw BlowupError("Omega^2 vanishes; expansion coefficient undefined");
    }
    const Scalar jm = j_total(model).value();
    return Scalar(-2) * theta_p.value() + Scalar(2) * jm / (Scalar(3) * vol);
}

namespace {

struct Chain {
    VectorFieldModel result;
    std::map<EpsVar, Scalar> nu;
};

Chain run_symbolic_chain(const VectorFieldModel& model, const std::vector<BlowupInstruction>& instrs)
{
    std::set<EpsVar> vars;
    Chain chain{model, {}};
    for (const auto& instr : instrs) {
        const auto var = symbolic_variable(instr);
        if (!var) {
            throw BlowupError("instruction for '" + instr.target + "' is not symbolic (expected epsilon = e_i)");
        }
        if (!vars.insert(*var).second) {
            throw BlowupError("perturbation variable '" + var->name() + "' used twice");
        }
        const Component* target = chain.result.find(instr.target);
        if (target == nullptr) {
            throw BlowupError("unknown blowup target '" + instr.target + "'");
        }
        chain.nu[*var] = expansion_coefficient(chain.result, component_B(*target));
        chain.result = blow_up(chain.result, instr);
    }
    return chain;
}

}  // namespace

ExpansionReport verify_expansion(const VectorFieldModel& model, const std::vector<BlowupInstruction>& instrs)
{
    Chain chain = run_symbolic_chain(model, instrs);
    ExpansionReport report;
    report.f_base = total_futaki(model);
    report.f_blown_up = total_futaki(chain.result);
    report.nu = std::move(chain.nu);
    for (const auto& [var, _] : report.nu) {
        report.jet_linear[var] = linear_coeff(report.f_blown_up, var);
    }
    report.agree = report.nu == report.jet_linear;
    return report;
}

Verdict obstruction_check(const VectorFieldModel& model,
                          const std::vector<BlowupInstruction>& instrs,
                          const std::map<EpsVar, Rat>& weights)
{
    if (!total_futaki(model).is_zero()) {
        throw BlowupError("base is not cscK; corollary inapplicable");
    }
    const Chain chain = run_symbolic_chain(model, instrs);
    Scalar sum;
    for (const auto& [var, nu] : chain.nu) {
        const auto w = weights.find(var);
        if (w == weights.end()) {
            throw BlowupError("no weight given for '" + var.name() + "'");
        }
        if (w->second <= 0) {
            throw BlowupError("weight for '" + var.name() + "' must be positive");
        }
        sum += nu * Scalar(w->second);
    }
    if (sum.is_zero()) {
        return Inconclusive{};
    }
    return Obstructed{sum};
}

}  // namespace futaki
