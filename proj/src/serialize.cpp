#include "futaki/serialize.hpp"

#include "futaki/overloaded.hpp"

namespace futaki {

namespace {

const json& field(const json& j, const char* key)
{
    if (!j.is_object()) {
        throw SchemaError(std::string("expected an object containing '") + key + "'");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        throw SchemaError(std::string("missing key '") + key + "'");
    }
    return *it;
}

template <class T>
T get_as(const json& j, const char* key)
{
    try {
        return field(j, key).get<T>();
    } catch (const json::exception& e) {
        throw SchemaError(std::string("bad value for '") + key + "': " + e.what());
    }
}

}  // namespace

json rat_to_json(const Rat& q) { return to_string(q); }

Rat rat_from_json(const json& j)
{
    if (j.is_string()) {
        return parse_rat(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Rat(j.get<long long>());
    }
    throw SchemaError("exact numbers must be strings \"p/q\" or integers, got " + j.dump());
}

void to_json(json& j, const Scalar& s)
{
    if (s.is_real()) {
        j = rat_to_json(s.re());
    } else {
        j = json{{"re", rat_to_json(s.re())}, {"im", rat_to_json(s.im())}};
    }
}

void from_json(const json& j, Scalar& s)
{
    if (j.is_object()) {
        s = Scalar(rat_from_json(field(j, "re")), rat_from_json(field(j, "im")));
    } else {
        s = Scalar(rat_from_json(j));
    }
}

void to_json(json& j, const Jet& x)
{
    if (x.is_constant()) {
        to_json(j, x.value());
        return;
    }
    json lin = json::object();
    for (const auto& [v, c] : x.linear()) {
        lin[v.name()] = c;
    }
    j = json{{"value", x.value()}, {"linear", lin}};
}

void from_json(const json& j, Jet& x)
{
    if (j.is_object() && j.contains("value")) {
        Jet::Linear lin;
        if (j.contains("linear")) {
            for (const auto& [name, c] : j.at("linear").items()) {
                Scalar s;
                from_json(c, s);
                lin[EpsVar(name)] = s;
            }
        }
        Scalar v;
        from_json(j.at("value"), v);
        x = Jet(v, lin);
        return;
    }
    Scalar s;
    from_json(j, s);
    x = Jet(s);
}

void to_json(json& j, const Component& c)
{
    std::visit(overloaded{[&](const FixedPoint& p) {
                              json lin = std::visit(
                                  overloaded{[](const Diagonal& d) {
                                                 return json{{"type", "diagonal"}, {"l1", d.l1}, {"l2", d.l2}};
                                             },
                                             [](const Jordan& k) { return json{{"type", "jordan"}, {"l", k.l}}; }},
                                  p.kind);
                              j = json{{"kind", "point"}, {"id", p.id}, {"linearization", lin}, {"B", p.B}};
                          },
                          [&](const FixedCurve& z) {
                              j = json{{"kind", "curve"},         {"id", z.id},
                                       {"A", z.A},                {"B", z.B},
                                       {"genus", z.genus},        {"omega_dot", z.omega_dot},
                                       {"c1_dot", z.c1_dot}};
                          },
                          [&](const DegenerateExceptionalPoint& d) {
                              j = json{{"kind", "degenerate"}, {"id", d.id}, {"l", d.lambda}, {"B", d.B},
                                       {"omega_dot", d.omega_dot}};
                          }},
               c);
}

void from_json(const json& j, Component& c)
{
    const auto kind = get_as<std::string>(j, "kind");
    const auto id = j.contains("id") ? get_as<std::string>(j, "id") : std::string{};
    if (kind == "point") {
        const json& lin = field(j, "linearization");
        const auto type = get_as<std::string>(lin, "type");
        Linearization k;
        if (type == "diagonal") {
            k = Diagonal{field(lin, "l1").get<Scalar>(), field(lin, "l2").get<Scalar>()};
        } else if (type == "jordan") {
            k = Jordan{field(lin, "l").get<Scalar>()};
        } else {
            throw SchemaError("unknown linearization type '" + type + "'");
        }
        c = FixedPoint{id, k, field(j, "B").get<Jet>()};
    } else if (kind == "curve") {
        c = FixedCurve{id,
                       field(j, "A").get<Jet>(),
                       field(j, "B").get<Jet>(),
                       get_as<int>(j, "genus"),
                       field(j, "omega_dot").get<Jet>(),
                       field(j, "c1_dot").get<Jet>()};
    } else if (kind == "degenerate") {
        c = DegenerateExceptionalPoint{id, field(j, "l").get<Scalar>(), field(j, "B").get<Jet>(),
                                       field(j, "omega_dot").get<Jet>()};
    } else {
        throw SchemaError("unknown component kind '" + kind + "'");
    }
}

void to_json(json& j, const VectorFieldModel& m)
{
    j = json{{"surface", {{"omega_sq", m.surface.omega_sq}, {"c1_dot_omega", m.surface.c1_dot_omega}}},
             {"components", m.components}};
}

void from_json(const json& j, VectorFieldModel& m)
{
    const json& s = field(j, "surface");
    m.surface = {field(s, "omega_sq").get<Jet>(), field(s, "c1_dot_omega").get<Jet>()};
    const json& comps = field(j, "components");
    if (!comps.is_array()) {
        throw SchemaError("'components' must be an array");
    }
    m.components = comps.get<std::vector<Component>>();
}

void to_json(json& j, const BlowupInstruction& instr)
{
    j = json{{"target", instr.target}};
    if (const auto v = symbolic_variable(instr)) {
        j["epsilon"] = json{{"var", v->name()}};
    } else {
        j["epsilon"] = json{{"value", instr.epsilon}};
    }
    if (instr.theta) {
        j["theta"] = *instr.theta;
    }
}

void from_json(const json& j, BlowupInstruction& instr)
{
    instr.target = get_as<std::string>(j, "target");
    const json& e = field(j, "epsilon");
    if (e.is_object() && e.contains("var")) {
        instr.epsilon = jet_var(EpsVar(get_as<std::string>(e, "var")));
    } else if (e.is_object() && e.contains("value")) {
        instr.epsilon = e.at("value").get<Jet>();
    } else {
        throw SchemaError("'epsilon' must be {\"var\": name} or {\"value\": number}");
    }
    instr.theta.reset();
    if (j.contains("theta")) {
        instr.theta = j.at("theta").get<Jet>();
    }
}

json scalar_map_to_json(const std::map<EpsVar, Scalar>& m)
{
    json j = json::object();
    for (const auto& [v, s] : m) {
        j[v.name()] = s;
    }
    return j;
}

std::map<EpsVar, Scalar> scalar_map_from_json(const json& j)
{
    std::map<EpsVar, Scalar> m;
    for (const auto& [k, v] : j.items()) {
        m[EpsVar(k)] = v.get<Scalar>();
    }
    return m;
}

json rat_map_to_json(const std::map<EpsVar, Rat>& m)
{
    json j = json::object();
    for (const auto& [v, q] : m) {
        j[v.name()] = rat_to_json(q);
    }
    return j;
}

std::map<EpsVar, Rat> rat_map_from_json(const json& j)
{
    if (!j.is_object()) {
        throw SchemaError("expected an object of named rationals");
    }
    std::map<EpsVar, Rat> m;
    for (const auto& [k, v] : j.items()) {
        m[EpsVar(k)] = rat_from_json(v);
    }
    return m;
}

VectorFieldModel parse_model(const json& j)
{
    try {
        return j.get<VectorFieldModel>();
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception& e) {
        throw SchemaError(e.what());
    }
}

namespace residue {

json cplx_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j)
{
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw SchemaError("complex numbers must be a number or [re, im], got " + j.dump());
}

namespace {

json mat_to_json(const Mat2& m)
{
    json rows = json::array();
    for (const auto& row : m) {
        rows.push_back(json::array({cplx_to_json(row[0]), cplx_to_json(row[1])}));
    }
    return rows;
}

Mat2 mat_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() ||
        j[1].size() != 2) {
        throw SchemaError("metric matrices must be 2x2");
    }
    Mat2 m{};
    for (int i = 0; i < 2; ++i) {
        for (int k = 0; k < 2; ++k) {
            m[i][k] = cplx_from_json(j[i][k]);
        }
    }
    return m;
}

}  // namespace

void to_json(json& j, const ResidueProblem& p)
{
    json field_j = std::visit(
        overloaded{[](const Degenerate& d) { return json{{"type", "degenerate"}, {"a", d.a}}; },
                   [](const Nondegenerate& n) { return json{{"type", "nondegenerate"}, {"l1", n.l1}, {"l2", n.l2}}; }},
        p.field);
    json phi = json::array();
    for (const auto& [m, c] : p.phi.terms()) {
        phi.push_back(json{{"u", m.u}, {"v", m.v}, {"ubar", m.ubar}, {"vbar", m.vbar}, {"c", c}});
    }
    j = json{{"field", field_j},
             {"metric", {{"g0", mat_to_json(p.metric.g0)}, {"g1v", mat_to_json(p.metric.g1v)}}},
             {"phi", phi},
             {"radii", p.radii},
             {"quadrature",
              {{"n_angular", p.quadrature.n_angular},
               {"n_radial", p.quadrature.n_radial},
               {"mc_samples", p.quadrature.mc_samples},
               {"seed", p.quadrature.seed}}}};
}

void from_json(const json& j, ResidueProblem& p)
{
    try {
        p = ResidueProblem{};
        const json& f = field(j, "field");
        const auto type = get_as<std::string>(f, "type");
        if (type == "degenerate") {
            p.field = Degenerate{field(f, "a").get<Scalar>()};
        } else if (type == "nondegenerate") {
            p.field = Nondegenerate{field(f, "l1").get<Scalar>(), field(f, "l2").get<Scalar>()};
        } else {
            throw SchemaError("unknown field type '" + type + "'");
        }
        if (j.contains("metric")) {
            const json& m = j.at("metric");
            if (m.contains("g0")) {
                p.metric.g0 = mat_from_json(m.at("g0"));
            }
            if (m.contains("g1v")) {
                p.metric.g1v = mat_from_json(m.at("g1v"));
            }
        }
        for (const json& t : field(j, "phi")) {
            const Monomial mono{t.value("u", 0), t.value("v", 0), t.value("ubar", 0), t.value("vbar", 0)};
            p.phi.add(mono, field(t, "c").get<Scalar>());
        }
        if (j.contains("radii")) {
            p.radii = j.at("radii").get<std::vector<double>>();
        }
        if (j.contains("quadrature")) {
            const json& q = j.at("quadrature");
            p.quadrature.n_angular = q.value("n_angular", p.quadrature.n_angular);
            p.quadrature.n_radial = q.value("n_radial", p.quadrature.n_radial);
            p.quadrature.mc_samples = q.value("mc_samples", p.quadrature.mc_samples);
            p.quadrature.seed = q.value("seed", p.quadrature.seed);
        }
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception& e) {
        throw SchemaError(e.what());
    }
}

}  // namespace residue

}  // namespace futaki
