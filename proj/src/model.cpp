#include "futaki/model.hpp"
#include "futaki/overloaded.hpp"

#include <set>

namespace futaki {

Scalar trace(const Linearization& kind)
{
    return std::visit(overloaded{[](const Diagonal& d) { return d.l1 + d.l2; },
                                 [](const Jordan& j) { return j.l + j.l; }},
                      kind);
}

Scalar determinant(const Linearization& kind)
{
    return std::visit(overloaded{[](const Diagonal& d) { return d.l1 * d.l2; },
                                 [](const Jordan& j) { return j.l * j.l; }},
                      kind);
}

const std::string& component_id(const Component& c)
{
    return std::visit([](const auto& x) -> const std::string& { return x.id; }, c);
}

const Jet& component_B(const Component& c)
{
    return std::visit([](const auto& x) -> const Jet& { return x.B; }, c);
}

const Component* VectorFieldModel::find(const std::string& id) const
{
    for (const auto& c : components) {
        if (component_id(c) == id) {
            return &c;
        }
    }
    return nullptr;
}

std::vector<Diagnostic> validate(const VectorFieldModel& model)
{
    std::vector<Diagnostic> out;
    const Scalar& vol = model.surface.omega_sq.value();
    if (!vol.is_real() || vol.re() <= 0) {
        out.push_back({"", "non-positive Kähler class"});
    }
    if (model.components.empty()) {
        out.push_back({"", "empty zero locus"});
    }

    std::set<std::string> seen;
    for (const auto& c : model.components) {
        const std::string& id = component_id(c);
        if (id.empty()) {
            out.push_back({id, "missing component id"});
        } else if (!seen.insert(id).second) {
            out.push_back({id, "duplicate component id"});
        }
        std::visit(overloaded{
                       [&](const FixedPoint& p) {
                           if (p.C().is_zero()) {
                               out.push_back({id, "degenerate fixed point"});
                           }
                       },
                       [&](const FixedCurve& z) {
                           if (z.A.value().is_zero()) {
                               out.push_back({id, "degenerate curve"});
                           }
                           if (z.genus < 0) {
                               out.push_back({id, "negative genus"});
                           }
                       },
                       [&](const DegenerateExceptionalPoint& d) {
                           if (d.lambda.is_zero()) {
                               out.push_back({id, "degenerate fixed point"});
                           }
                       },
                   },
                   c);
    }
    return out;
}

VectorFieldModel shift_potential(const VectorFieldModel& model, const Jet& c)
{
    VectorFieldModel out = model;
    for (auto& comp : out.components) {
        std::visit([&](auto& x) { x.B += c; }, comp);
    }
    return out;
}

}  // namespace futaki
