#include "futaki/catalog.hpp"
#include "futaki/localization.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace futaki;

namespace {

const EpsVar e1("e1");
const EpsVar e2("e2");
const EpsVar e3("e3");

}  // namespace

TEST_CASE("model data")
{
    const auto z = p1xp1_model(1, 1, P1Field::Z);
    CHECK(z.surface.omega_sq == Jet(2));
    CHECK(z.surface.c1_dot_omega == Jet(4));
    const auto& z0 = std::get<FixedCurve>(*z.find("z0"));
    const auto& zi = std::get<FixedCurve>(*z.find("zinf"));
    CHECK(z0 == FixedCurve{"z0", Jet(1), Jet(0), 0, Jet(1), Jet(2)});
    CHECK(zi == FixedCurve{"zinf", Jet(-1), Jet(-1), 0, Jet(1), Jet(2)});
    const auto w = p1xp1_model(2, 5, P1Field::W);
    CHECK(std::get<FixedCurve>(*w.find("winf")).B == Jet(-5));
    CHECK(std::get<FixedCurve>(*w.find("winf")).omega_dot == Jet(2));
    CHECK_THROWS_AS(p1xp1_model(0, 1, P1Field::Z), std::invalid_argument);
    CHECK_THROWS_AS(p1xp1_model(1, -1, P1Field::W), std::invalid_argument);
}

TEST_CASE("closed form: frozen value and zeros")
{
    // Computed independently with Python fractions.
    CHECK(closed_form_two_point(1, 1, Rat(1, 10), Rat(1, 20)) == Rat(-17459, 477000));
    test::RatGen gen(2);
    for (int k = 0; k < 5; ++k) {
        CHECK(closed_form_two_point(gen.in(0, 9), gen.in(0, 9), 0, 0) == 0);
    }
    CHECK_THROWS_AS(closed_form_two_point(1, 2, 2, 0), std::domain_error);
}

TEST_CASE("closed form first derivatives at zero")
{
    const Rat a(5, 2);
    const Rat b(7, 3);
    const Rat h(1, 1000000000);
    const Rat d1 = (closed_form_two_point(a, b, h, 0) - closed_form_two_point(a, b, -h, 0)) / (2 * h);
    const Rat d2 = (closed_form_two_point(a, b, 0, h) - closed_form_two_point(a, b, 0, -h)) / (2 * h);
    CHECK(abs(d1 + a) < Rat(1, 1000000));
    CHECK(abs(d2 - a) < Rat(1, 1000000));
}

TEST_CASE("scenario expectations agree with the pipeline")
{
    for (const auto& name : builtin_scenario_names()) {
        CAPTURE(name);
        const auto s = builtin_scenario(name, Rat(3, 2), Rat(5, 7));
        const auto rep = verify_expansion(s.model, s.instrs);
        CHECK(rep.agree);
        CHECK(rep.jet_linear == s.expected_linear);
    }
    CHECK(scenario_two_points(2, 3, P1Field::W).expected_linear == std::map<EpsVar, Scalar>{{e1, -3}, {e2, 3}});
    CHECK(scenario_three_points(2, 3, P1Field::Z).expected_linear ==
          std::map<EpsVar, Scalar>{{e1, -2}, {e2, 2}, {e3, -2}});
    CHECK_FALSE(scenario_three_points(2, 3, P1Field::Z).closed_form.has_value());
    CHECK_THROWS_AS(builtin_scenario("nope"), std::invalid_argument);
}

TEST_CASE("numeric two-point pipeline equals the closed form")
{
    test::RatGen gen(99);
    for (int k = 0; k < 20; ++k) {
        const Rat a = gen.in(0, 10);
        const Rat b = gen.in(0, 10);
        const Rat cap = (a < b ? a : b) / 10;
        const Rat x = gen.in(0, cap);
        const Rat y = gen.in(0, cap);
        const auto s = scenario_two_points(a, b, P1Field::Z);
        const Jet f = total_futaki(blow_up_all(s.model, instantiate(s.instrs, {{e1, x}, {e2, y}})));
        CHECK(f == Jet((*s.closed_form)(x, y)));
        // a <-> b symmetry through the W field
        const auto w = scenario_two_points(b, a, P1Field::W);
        const Jet fw = total_futaki(blow_up_all(w.model, instantiate(w.instrs, {{e1, x}, {e2, y}})));
        CHECK(fw == Jet(closed_form_two_point(a, b, x, y)));
    }
}

TEST_CASE("three-point scenarios are obstructed for positive weights")
{
    test::RatGen gen(4);
    for (int k = 0; k < 10; ++k) {
        const std::map<EpsVar, Rat> w{{e1, gen.in(0, 5)}, {e2, gen.in(0, 5)}, {e3, gen.in(0, 5)}};
        const auto z = scenario_three_points(2, 3, P1Field::Z);
        const auto ww = scenario_three_points(2, 3, P1Field::W);
        const bool obstructed = std::holds_alternative<Obstructed>(obstruction_check(z.model, z.instrs, w)) ||
                                std::holds_alternative<Obstructed>(obstruction_check(ww.model, ww.instrs, w));
        CHECK(obstructed);
    }
}

TEST_CASE("instantiate")
{
    const auto s = scenario_two_points(1, 1, P1Field::Z);
    const auto inst = instantiate(s.instrs, {{e1, Rat(1, 7)}, {e2, Rat(1, 9)}});
    CHECK(inst[0].epsilon == Jet(Rat(1, 7)));
    CHECK(inst[1].theta == s.instrs[1].theta);
    CHECK_THROWS_AS(instantiate(s.instrs, {{e1, 1}}), std::invalid_argument);
}

TEST_CASE("builtin residue problems are well formed")
{
    for (const auto& name : builtin_residue_names()) {
        CAPTURE(name);
        CHECK_NOTHROW(residue::check_problem(builtin_residue(name)));
    }
    CHECK(perturbed_metric().problems().empty());
    CHECK_THROWS_AS(builtin_residue("nope"), std::invalid_argument);
}
