#include "futaki/localization.hpp"

#include "futaki/overloaded.hpp"

namespace futaki {

namespace {

const Rat two_thirds{2, 3};

}  // namespace

Jet mu(const SurfaceClassData& surface) { return surface.c1_dot_omega / surface.omega_sq; }

std::pair<Jet, Jet> point_IJ(const FixedPoint& p)
{
    const Scalar C = p.C();
    if (C.is_zero()) {
        throw LocalizationError("degenerate fixed point: " + p.id);
    }
    const Jet B2 = p.B * p.B;
    const Jet c(C);
    return {Jet(p.A()) * B2 / c, B2 * p.B / c};
}

std::pair<Jet, Jet> curve_IJ(const FixedCurve& z)
{
    if (z.A.value().is_zero()) {
        throw LocalizationError("degenerate curve: " + z.id);
    }
    const Jet B2 = z.B * z.B;
    const Jet B3 = B2 * z.B;
    const Jet chi(2 - 2 * z.genus);
    Jet I = Jet(2) * z.B * z.omega_dot + B2 * chi / z.A;
    Jet J = Jet(3) * B2 * z.omega_dot / z.A - B3 * (z.c1_dot - chi) / (z.A * z.A);
    return {std::move(I), std::move(J)};
}

std::pair<Jet, Jet> degenerate_IJ(const DegenerateExceptionalPoint& d)
{
    if (d.lambda.is_zero()) {
        throw LocalizationError("degenerate fixed point: " + d.id);
    }
    const Jet l(d.lambda);
    const Jet& eps = d.omega_dot;
    const Jet B2 = d.B * d.B;
    Jet I = Jet(2) * B2 / l + Jet(2) * eps * d.B;
    Jet J = Jet(3) * B2 * eps / l + B2 * d.B / (l * l);
    return {std::move(I), std::move(J)};
}

std::pair<Jet, Jet> component_IJ(const Component& c)
{
    return std::visit(overloaded{[](const FixedPoint& p) { return point_IJ(p); },
                                 [](const FixedCurve& z) { return curve_IJ(z); },
                                 [](const DegenerateExceptionalPoint& d) { return degenerate_IJ(d); }},
                      c);
}

LocalInvariants local_futaki(const Component& c, const Jet& mu)
{
    auto [I, J] = component_IJ(c);
    Jet f = I - Jet(two_thirds) * mu * J;
    return {std::move(I), std::move(J), std::move(f)};
}

Jet j_total(const VectorFieldModel& model)
{
    Jet sum;
    for (const auto& c : model.components) {
        sum += component_IJ(c).second;
    }
    return sum;
}

Jet total_futaki(const VectorFieldModel& model)
{
    const Jet m = mu(model.surface);
    Jet sum;
    for (const auto& c : model.components) {
        sum += local_futaki(c, m).f;
    }
    return sum;
}

}  // namespace futaki
