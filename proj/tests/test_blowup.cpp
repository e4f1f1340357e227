#include "futaki/blowup.hpp"
#include "futaki/catalog.hpp"
#include "futaki/localization.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace futaki;

namespace {

const EpsVar e1("e1");
const EpsVar e2("e2");

VectorFieldModel cp2(const Rat& t)
{
    VectorFieldModel m;
    m.surface = {Jet(Rat(t * t)), Jet(Rat(3 * t))};
    m.components.emplace_back(FixedPoint{"p0", Diagonal{1, 2}, Jet(0)});
    m.components.emplace_back(FixedPoint{"p1", Diagonal{-1, 1}, Jet(Rat(-t))});
    m.components.emplace_back(FixedPoint{"p2", Diagonal{-2, -1}, Jet(Rat(-2 * t))});
    return m;
}

// Synthetic model carrying one special point `p` plus filler zeros.
VectorFieldModel with_point(const Linearization& kind, const Jet& theta, const Rat& vol, const Rat& c1)
{
    VectorFieldModel m;
    m.surface = {Jet(vol), Jet(c1)};
    m.components.emplace_back(FixedPoint{"p", kind, theta});
    m.components.emplace_back(FixedPoint{"q", Diagonal{-1, 3}, Jet(2)});
    m.components.emplace_back(FixedCurve{"c", Jet(-2), Jet(-1), 1, Jet(3), Jet(1)});
    return m;
}

}  // namespace

TEST_CASE("class bookkeeping")
{
    const auto m = cp2(3);
    const auto out = blow_up(m, {"p1", jet_var(e1), std::nullopt});
    CHECK(out.surface.omega_sq == Jet(9) - Jet::var("e1") * Jet::var("e1"));
    CHECK(out.surface.c1_dot_omega == Jet(9) - Jet::var("e1"));
    const auto exact = blow_up(m, {"p1", Jet(Rat(1, 2)), std::nullopt});
    CHECK(exact.surface.omega_sq == Jet(Rat(35, 4)));
    CHECK(exact.surface.c1_dot_omega == Jet(Rat(17, 2)));
}

TEST_CASE("distinct eigenvalues give two points on E")
{
    const auto out = blow_up(cp2(1), {"p0", Jet(Rat(1, 5)), Jet(0)});
    REQUIRE(out.components.size() == 4);
    CHECK(out.find("p0") == nullptr);
    const auto* a = std::get_if<FixedPoint>(out.find("p0/1"));
    const auto* b = std::get_if<FixedPoint>(out.find("p0/2"));
    REQUIRE(a != nullptr);
    REQUIRE(b != nullptr);
    CHECK(std::get<Diagonal>(a->kind) == Diagonal{1, 1});
    CHECK(std::get<Diagonal>(b->kind) == Diagonal{2, -1});
    CHECK(a->B == Jet(Rat(-1, 5)));
    CHECK(b->B == Jet(Rat(-2, 5)));
}

TEST_CASE("equal eigenvalues turn E into a zero curve")
{
    auto m = with_point(Diagonal{3, 3}, Jet(1), 10, 4);
    const auto out = blow_up(m, {"p", jet_var(e1), std::nullopt});
    const auto* E = std::get_if<FixedCurve>(out.find("p/E"));
    REQUIRE(E != nullptr);
    CHECK(E->A == Jet(3));
    CHECK(E->B == Jet(1) - Jet(3) * Jet::var("e1"));
    CHECK(E->genus == 0);
    CHECK(E->omega_dot == Jet::var("e1"));
    CHECK(E->c1_dot == Jet(1));
}

TEST_CASE("point on a curve: strict transform plus a new point")
{
    const auto m = p1xp1_model(2, 3, P1Field::Z);
    const auto out = blow_up(m, {"zinf", jet_var(e2), Jet(-2)});
    const auto* z = std::get_if<FixedCurve>(out.find("zinf"));
    const auto* p = std::get_if<FixedPoint>(out.find("zinf/p"));
    REQUIRE(z != nullptr);
    REQUIRE(p != nullptr);
    CHECK(z->omega_dot == Jet(3) - Jet::var("e2"));
    CHECK(z->c1_dot == Jet(1));
    CHECK(std::get<Diagonal>(p->kind) == Diagonal{-1, 1});
    CHECK(p->B == Jet(-2) + Jet::var("e2"));
    // A second point on the same curve gets a fresh id.
    const auto twice = blow_up(out, {"zinf", jet_var(e1), Jet(-2)});
    CHECK(twice.find("zinf/p.2") != nullptr);
}

TEST_CASE("Jordan blowup is first-order only")
{
    auto m = with_point(Jordan{Scalar(2)}, Jet(1), 10, 4);
    const auto out = blow_up(m, {"p", jet_var(e1), std::nullopt});
    CHECK(std::holds_alternative<DegenerateExceptionalPoint>(*out.find("p/E")));
    CHECK_THROWS_WITH_AS(blow_up(m, {"p", Jet(Rat(1, 10)), std::nullopt}),
                         "degenerate blowup certified to first order only", BlowupError);
    CHECK_THROWS_AS(blow_up(out, {"p/E", jet_var(e2), std::nullopt}), BlowupError);
}

TEST_CASE("Jordan and diagonal double eigenvalue give identical first-order jets")
{
    test::RatGen gen(21);
    for (int k = 0; k < 10; ++k) {
        const Scalar l = k % 3 == 0 ? gen.scalar(1, 3) : Scalar(gen.in(-4, 4));
        if (l.is_zero()) {
            continue;
        }
        const Jet theta(gen.in(-5, 5));
        const Rat vol = gen.in(1, 20);
        const Rat c1 = gen.in(-5, 10);
        const auto fj = total_futaki(blow_up(with_point(Jordan{l}, theta, vol, c1), {"p", jet_var(e1), theta}));
        const auto fd = total_futaki(blow_up(with_point(Diagonal{l, l}, theta, vol, c1), {"p", jet_var(e1), theta}));
        CHECK(fj == fd);
    }
}

TEST_CASE("epsilon = 0 blowups leave the Futaki invariant unchanged")
{
    const auto m = cp2(2);
    CHECK(total_futaki(blow_up(m, {"p0", Jet(0), std::nullopt})) == total_futaki(m));
    CHECK(total_futaki(blow_up(m, {"p1", Jet(0), std::nullopt})) == total_futaki(m));
    const auto s = scenario_three_points(2, 3, P1Field::W);
    CHECK(total_futaki(blow_up_all(s.model, instantiate(s.instrs, {{EpsVar("e1"), 0}, {EpsVar("e2"), 0},
                                                                      {EpsVar("e3"), 0}}))) == Jet(0));
    auto d = with_point(Diagonal{2, 2}, Jet(1), 10, 4);
    CHECK(total_futaki(blow_up(d, {"p", Jet(0), std::nullopt})) == total_futaki(d));
}

TEST_CASE("expansion coefficient matches the jet on CP2")
{
    const Rat t(3, 2);
    const auto m = cp2(t);
    CHECK(expansion_coefficient(m, Jet(0)) == Scalar(Rat(-2 * t)));
    const auto rep = verify_expansion(m, {{"p0", jet_var(e1), std::nullopt}, {"p2", jet_var(e2), std::nullopt}});
    CHECK(rep.agree);
    CHECK(rep.f_base == Jet(0));
    CHECK(rep.nu.at(e1) == Scalar(Rat(-2 * t)));
}

TEST_CASE("blowup input errors")
{
    const auto m = cp2(1);
    CHECK_THROWS_AS(blow_up(m, {"nope", jet_var(e1), std::nullopt}), BlowupError);
    CHECK_THROWS_AS(blow_up(m, {"p0", Jet(-1), std::nullopt}), BlowupError);
    CHECK_THROWS_AS(blow_up(m, {"p0", Jet(Scalar(0, 1)), std::nullopt}), BlowupError);
    CHECK_THROWS_AS(blow_up(m, {"p1", jet_var(e1), Jet(5)}), BlowupError);
    const auto z = p1xp1_model(1, 1, P1Field::Z);
    CHECK_THROWS_AS(blow_up(z, {"z0", jet_var(e1), std::nullopt}), BlowupError);
    CHECK_THROWS_AS(verify_expansion(m, {{"p0", jet_var(e1), std::nullopt}, {"p1", jet_var(e1), std::nullopt}}),
                    BlowupError);
    CHECK_THROWS_AS(verify_expansion(m, {{"p0", Jet(Rat(1, 3)), std::nullopt}}), BlowupError);
}

TEST_CASE("obstruction verdicts")
{
    const auto m = cp2(1);
    const auto v = obstruction_check(m, {{"p0", jet_var(e1), std::nullopt}}, {{e1, 1}});
    CHECK(std::get<Obstructed>(v).certificate == Scalar(-2));
    // nu(p0) + nu(p2) = -2t + 2t
    CHECK(std::holds_alternative<Inconclusive>(obstruction_check(
        m, {{"p0", jet_var(e1), std::nullopt}, {"p2", jet_var(e2), std::nullopt}}, {{e1, 1}, {e2, 1}})));
    CHECK_THROWS_AS(obstruction_check(m, {{"p0", jet_var(e1), std::nullopt}}, {{e1, 0}}), BlowupError);
    CHECK_THROWS_AS(obstruction_check(m, {{"p0", jet_var(e1), std::nullopt}}, {}), BlowupError);
    const auto f1 = blow_up(m, {"p0", Jet(Rat(1, 4)), std::nullopt});
    CHECK_THROWS_WITH_AS(obstruction_check(f1, {{"p1", jet_var(e2), std::nullopt}}, {{e2, 1}}),
                         "base is not cscK; corollary inapplicable", BlowupError);
}
