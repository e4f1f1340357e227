#include "futaki/cli.hpp"

#include "futaki/catalog.hpp"
#include "futaki/localization.hpp"
#include "futaki/overloaded.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace futaki::cli {

namespace {

using residue::cplx;

constexpr double boundary_tolerance = 1e-2;
constexpr double appendix_tolerance = 2e-2;
// Below this relative error the raw values sit at the quadrature floor and
// a convergence slope means nothing.
constexpr double exponent_floor = 1e-8;

const std::vector<std::pair<Task, std::string>> task_names{{Task::Futaki, "futaki"},
                                                           {Task::Expansion, "expansion"},
                                                           {Task::Obstruction, "obstruction"},
                                                           {Task::ResidueVerify, "residue-verify"},
                                                           {Task::ConvergenceCsv, "convergence-csv"}};

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

bool is_exact_task(Task t) { return t == Task::Futaki || t == Task::Expansion || t == Task::Obstruction; }

// Everything the exact tasks need, whatever the input kind.
struct ExactInput {
    VectorFieldModel model;
    std::vector<BlowupInstruction> instrs;
    std::map<EpsVar, Scalar> expected;
    std::optional<std::map<EpsVar, Rat>> weights;
};

ExactInput load_exact(const RunConfig& cfg)
{
    ExactInput in;
    if (cfg.kind == InputKind::Scenario) {
        Scenario s;
        try {
            s = builtin_scenario(cfg.input, cfg.a, cfg.b);
        } catch (const std::invalid_argument& e) {
            std::string names;
            for (const auto& n : builtin_scenario_names()) {
                names += " " + n;
            }
            throw InputError(std::string(e.what()) + "; known:" + names);
        }
        in.model = std::move(s.model);
        in.instrs = std::move(s.instrs);
        in.expected = std::move(s.expected_linear);
    } else {
        const json doc = read_json_file(cfg.input);
        try {
            in.model = parse_model(doc);
            if (doc.contains("instructions")) {
                in.instrs = doc.at("instructions").get<std::vector<BlowupInstruction>>();
            }
            if (doc.contains("expected_linear")) {
                in.expected = scalar_map_from_json(doc.at("expected_linear"));
            }
            if (doc.contains("weights")) {
                in.weights = rat_map_from_json(doc.at("weights"));
            }
        } catch (const std::exception& e) {
            throw InputError(std::string("schema violation: ") + e.what());
        }
    }
    if (const auto diags = validate(in.model); !diags.empty()) {
        std::vector<std::string> lines;
        for (const auto& d : diags) {
            lines.push_back(d.component.empty() ? d.rule : d.component + ": " + d.rule);
        }
        throw InputError("invalid model", lines);
    }
    if (cfg.weights) {
        in.weights = cfg.weights;
    }
    return in;
}

struct ResidueInput {
    residue::ResidueProblem problem;
    std::string quantity;
};

ResidueInput load_residue(const RunConfig& cfg)
{
    ResidueInput in;
    in.quantity = "boundary";
    const auto names = builtin_residue_names();
    json doc;
    if (cfg.residue_params) {
        doc = *cfg.residue_params;
    } else if (std::find(names.begin(), names.end(), cfg.input) != names.end()) {
        in.problem = builtin_residue(cfg.input);
        if (cfg.input.rfind("appendix", 0) == 0) {
            in.quantity = "appendix";
        }
    } else {
        doc = read_json_file(cfg.input);
    }
    if (!doc.is_null()) {
        try {
            in.problem = doc.get<residue::ResidueProblem>();
            if (doc.contains("quantity")) {
                in.quantity = doc.at("quantity").get<std::string>();
            }
        } catch (const std::exception& e) {
            throw InputError(std::string("schema violation: ") + e.what());
        }
    }
    if (cfg.quantity) {
        in.quantity = *cfg.quantity;
    }
    if (in.quantity != "boundary" && in.quantity != "appendix") {
        throw InputError("quantity must be 'boundary' or 'appendix', got '" + in.quantity + "'");
    }
    auto& q = in.problem.quadrature;
    if (cfg.seed) {
        q.seed = *cfg.seed;
    }
    if (cfg.samples) {
        q.mc_samples = *cfg.samples;
    }
    if (cfg.n_angular) {
        q.n_angular = *cfg.n_angular;
    }
    if (cfg.n_radial) {
        q.n_radial = *cfg.n_radial;
    }
    if (cfg.radii) {
        in.problem.radii = *cfg.radii;
    }
    try {
        residue::check_problem(in.problem);
        if (in.quantity == "appendix" && !std::holds_alternative<residue::Degenerate>(in.problem.field)) {
            throw std::invalid_argument("the appendix integral needs a degenerate field");
        }
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    return in;
}

ResidueResult compute_residue(const ResidueInput& in)
{
    using namespace residue;
    ResidueResult out;
    out.quantity = in.quantity;
    LimitEstimate est;
    try {
        if (in.quantity == "appendix") {
            est = appendix_volume_limit(in.problem);
            out.reference = appendix_reference(in.problem);
            out.tolerance = appendix_tolerance;
        } else if (std::holds_alternative<Degenerate>(in.problem.field)) {
            est = residue_limit(in.problem);
            out.reference = lemma_main_reference(in.problem);
            out.tolerance = boundary_tolerance;
        } else {
            est = bott_limit(in.problem);
            out.reference = bott_reference(in.problem);
            out.tolerance = boundary_tolerance;
        }
    } catch (const QuadratureError& e) {
        throw InputError(e.what());
    }
    out.raw = est.raw;
    out.extrapolated = est.value;
    out.error_estimate = est.error_estimate;
    out.residuals_monotone = est.residuals_monotone;
    out.rel_error = relative_error(est.value, out.reference);
    const bool resolvable = std::all_of(out.raw.begin(), out.raw.end(), [&](const auto& rv) {
        return relative_error(rv.second, out.reference) > exponent_floor;
    });
    if (resolvable) {
        out.exponent = convergence_exponent(out.raw, out.reference);
    }
    out.passed = out.rel_error <= out.tolerance;
    return out;
}

std::map<EpsVar, Rat> default_weights(const std::vector<BlowupInstruction>& instrs)
{
    std::map<EpsVar, Rat> w;
    for (const auto& instr : instrs) {
        if (const auto v = symbolic_variable(instr)) {
            w[*v] = 1;
        }
    }
    return w;
}

// ---------------------------------------------------------------------------
// JSON

json raw_to_json(const std::vector<std::pair<double, cplx>>& raw)
{
    json a = json::array();
    for (const auto& [r, v] : raw) {
        a.push_back(json{{"r", r}, {"value", residue::cplx_to_json(v)}});
    }
    return a;
}

json result_to_json(const TaskResult& result)
{
    return std::visit(
        overloaded{
            [](const FutakiResult& f) {
                json rows = json::array();
                for (const auto& c : f.components) {
                    rows.push_back(json{{"id", c.id}, {"I", c.I}, {"J", c.J}, {"f", c.f}});
                }
                json j{{"base", f.base}, {"components", rows}};
                if (f.blown_up) {
                    j["blown_up"] = *f.blown_up;
                }
                return j;
            },
            [](const ExpansionResult& e) {
                return json{{"f_base", e.report.f_base},
                            {"f_blown_up", e.report.f_blown_up},
                            {"nu", scalar_map_to_json(e.report.nu)},
                            {"jet_linear", scalar_map_to_json(e.report.jet_linear)},
                            {"agree", e.report.agree},
                            {"expected", scalar_map_to_json(e.expected)},
                            {"passed", e.passed}};
            },
            [](const ObstructionResult& o) {
                json j{{"weights", rat_map_to_json(o.weights)}};
                std::visit(overloaded{[&](const Obstructed& ob) {
                                          j["verdict"] = "obstructed";
                                          j["certificate"] = ob.certificate;
                                      },
                                      [&](const Inconclusive&) { j["verdict"] = "inconclusive"; }},
                           o.verdict);
                return j;
            },
            [](const ResidueResult& r) {
                json j{{"quantity", r.quantity},
                       {"raw", raw_to_json(r.raw)},
                       {"extrapolated", residue::cplx_to_json(r.extrapolated)},
                       {"error_estimate", r.error_estimate},
                       {"residuals_monotone", r.residuals_monotone},
                       {"reference", residue::cplx_to_json(r.reference)},
                       {"rel_error", r.rel_error},
                       {"tolerance", r.tolerance},
                       {"passed", r.passed}};
                if (r.exponent) {
                    j["exponent"] = *r.exponent;
                }
                return j;
            }},
        result);
}

TaskResult result_from_json(Task task, const json& j)
{
    switch (task) {
    case Task::Futaki: {
        FutakiResult f;
        f.base = j.at("base").get<Jet>();
        for (const auto& c : j.at("components")) {
            f.components.push_back(
                {c.at("id").get<std::string>(), c.at("I").get<Jet>(), c.at("J").get<Jet>(), c.at("f").get<Jet>()});
        }
        if (j.contains("blown_up")) {
            f.blown_up = j.at("blown_up").get<Jet>();
        }
        return f;
    }
    case Task::Expansion: {
        ExpansionResult e;
        e.report.f_base = j.at("f_base").get<Jet>();
        e.report.f_blown_up = j.at("f_blown_up").get<Jet>();
        e.report.nu = scalar_map_from_json(j.at("nu"));
        e.report.jet_linear = scalar_map_from_json(j.at("jet_linear"));
        e.report.agree = j.at("agree").get<bool>();
        e.expected = scalar_map_from_json(j.at("expected"));
        e.passed = j.at("passed").get<bool>();
        return e;
    }
    case Task::Obstruction: {
        ObstructionResult o;
        o.weights = rat_map_from_json(j.at("weights"));
        if (j.at("verdict").get<std::string>() == "obstructed") {
            o.verdict = Obstructed{j.at("certificate").get<Scalar>()};
        } else {
            o.verdict = Inconclusive{};
        }
        return o;
    }
    case Task::ResidueVerify:
    case Task::ConvergenceCsv: {
        ResidueResult r;
        r.quantity = j.at("quantity").get<std::string>();
        for (const auto& p : j.at("raw")) {
            r.raw.emplace_back(p.at("r").get<double>(), residue::cplx_from_json(p.at("value")));
        }
        r.extrapolated = residue::cplx_from_json(j.at("extrapolated"));
        r.error_estimate = j.at("error_estimate").get<double>();
        r.residuals_monotone = j.at("residuals_monotone").get<bool>();
        r.reference = residue::cplx_from_json(j.at("reference"));
        r.rel_error = j.at("rel_error").get<double>();
        r.tolerance = j.at("tolerance").get<double>();
        if (j.contains("exponent")) {
            r.exponent = j.at("exponent").get<double>();
        }
        r.passed = j.at("passed").get<bool>();
        return r;
    }
    }
    throw SchemaError("unknown task");
}

// ---------------------------------------------------------------------------
// Text output

std::string fmt_cplx(cplx z)
{
    std::ostringstream os;
    os << std::setprecision(10) << z.real();
    if (z.imag() != 0.0) {
        os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    }
    return os.str();
}

std::string fmt_double(double x)
{
    std::ostringstream os;
    os << std::setprecision(6) << x;
    return os.str();
}

void table_task(std::ostream& os, const TaskReport& t)
{
    os << "== " << task_name(t.task) << "\n";
    std::visit(overloaded{[&](const FutakiResult& f) {
                              for (const auto& c : f.components) {
                                  os << "  " << std::left << std::setw(12) << c.id << " I = " << c.I
                                     << "   J = " << c.J << "   f = " << c.f << "\n";
                              }
                              os << "  total        " << f.base << "\n";
                              if (f.blown_up) {
                                  os << "  blown up     " << *f.blown_up << "\n";
                              }
                          },
                          [&](const ExpansionResult& e) {
                              os << "  var   nu   jet" << (e.expected.empty() ? "" : "   expected") << "\n";
                              for (const auto& [v, nu] : e.report.nu) {
                                  os << "  " << v.name() << "   " << nu << "   " << e.report.jet_linear.at(v);
                                  if (const auto it = e.expected.find(v); it != e.expected.end()) {
                                      os << "   " << it->second;
                                  }
                                  os << "\n";
                              }
                              os << "  " << (e.passed ? "agree" : "MISMATCH") << "\n";
                          },
                          [&](const ObstructionResult& o) {
                              os << "  weights";
                              for (const auto& [v, w] : o.weights) {
                                  os << " " << v.name() << "=" << to_string(w);
                              }
                              os << "\n";
                              std::visit(overloaded{[&](const Obstructed& ob) {
                                                        os << "  obstructed, sum nu_i w_i = " << ob.certificate << "\n";
                                                    },
                                                    [&](const Inconclusive&) { os << "  inconclusive\n"; }},
                                         o.verdict);
                          },
                          [&](const ResidueResult& r) {
                              os << "  quantity " << r.quantity << "\n";
                              for (const auto& [rad, v] : r.raw) {
                                  os << "  r = " << std::left << std::setw(8) << rad << " " << fmt_cplx(v) << "\n";
                              }
                              os << "  extrapolated " << fmt_cplx(r.extrapolated) << "  (+- "
                                 << fmt_double(r.error_estimate) << ")\n";
                              os << "  reference    " << fmt_cplx(r.reference) << "\n";
                              os << "  rel error    " << fmt_double(r.rel_error) << " (tol " << r.tolerance << ")";
                              if (r.exponent) {
                                  os << "  exponent " << fmt_double(*r.exponent);
                              }
                              os << "  " << (r.passed ? "ok" : "FAIL") << "\n";
                          }},
               t.result);
}

void csv_task(std::ostream& os, const TaskReport& t)
{
    const std::string name = task_name(t.task);
    std::visit(overloaded{[&](const FutakiResult& f) {
                              for (const auto& c : f.components) {
                                  os << name << "," << c.id << ",\"" << c.f << "\"\n";
                              }
                              os << name << ",total,\"" << f.base << "\"\n";
                              if (f.blown_up) {
                                  os << name << ",blown_up,\"" << *f.blown_up << "\"\n";
                              }
                          },
                          [&](const ExpansionResult& e) {
                              for (const auto& [v, nu] : e.report.nu) {
                                  os << name << "," << v.name() << ",\"" << nu << "\",\""
                                     << e.report.jet_linear.at(v) << "\"\n";
                              }
                          },
                          [&](const ObstructionResult& o) {
                              std::visit(overloaded{[&](const Obstructed& ob) {
                                                        os << name << ",obstructed,\"" << ob.certificate << "\"\n";
                                                    },
                                                    [&](const Inconclusive&) { os << name << ",inconclusive,0\n"; }},
                                         o.verdict);
                          },
                          [&](const ResidueResult& r) {
                              os << std::setprecision(17);
                              for (const auto& [rad, v] : r.raw) {
                                  os << name << "," << rad << "," << v.real() << "," << v.imag() << ","
                                     << std::abs(v - r.reference) << "\n";
                              }
                              os << name << ",0," << r.extrapolated.real() << "," << r.extrapolated.imag() << ","
                                 << std::abs(r.extrapolated - r.reference) << "\n";
                          }},
               t.result);
}

}  // namespace

std::string task_name(Task t)
{
    for (const auto& [task, name] : task_names) {
        if (task == t) {
            return name;
        }
    }
    return "?";
}

Task parse_task(const std::string& s)
{
    for (const auto& [task, name] : task_names) {
        if (name == s) {
            return task;
        }
    }
    throw InputError("unknown task '" + s + "'");
}

Format parse_format(const std::string& s)
{
    if (s == "table") {
        return Format::Table;
    }
    if (s == "json") {
        return Format::Json;
    }
    if (s == "csv") {
        return Format::Csv;
    }
    throw InputError("unknown format '" + s + "' (table, json, csv)");
}

double relative_error(cplx value, cplx ref) { return std::abs(value - ref) / std::max(std::abs(ref), 1.0); }

Report execute(const RunConfig& cfg)
{
    std::vector<Task> tasks = cfg.tasks;
    if (tasks.empty()) {
        switch (cfg.kind) {
        case InputKind::Scenario:
            tasks = {Task::Futaki, Task::Expansion, Task::Obstruction};
            break;
        case InputKind::Model:
            tasks = {Task::Futaki};
            break;
        case InputKind::Residue:
            tasks = {Task::ResidueVerify};
            break;
        }
    }
    const bool residue_kind = cfg.kind == InputKind::Residue;
    for (Task t : tasks) {
        if (is_exact_task(t) == residue_kind) {
            throw InputError("task '" + task_name(t) + "' does not apply to this input");
        }
    }

    Report report;
    report.input = cfg.residue_params ? std::string("<flags>") : cfg.input;
    if (residue_kind) {
        const ResidueInput in = load_residue(cfg);
        const ResidueResult res = compute_residue(in);
        for (Task t : tasks) {
            report.tasks.push_back({t, res});
        }
        if (!res.passed) {
            report.exit_code = exit_verification;
            report.counterexample = json{{"problem", in.problem},
                                         {"quantity", in.quantity},
                                         {"value", residue::cplx_to_json(res.extrapolated)},
                                         {"reference", residue::cplx_to_json(res.reference)},
                                         {"rel_error", res.rel_error}};
        }
        return report;
    }

    const ExactInput in = load_exact(cfg);
    try {
        for (Task t : tasks) {
            switch (t) {
            case Task::Futaki: {
                FutakiResult f;
                const Jet m = mu(in.model.surface);
                for (const auto& c : in.model.components) {
                    auto li = local_futaki(c, m);
                    f.components.push_back({component_id(c), li.I, li.J, li.f});
                }
                f.base = total_futaki(in.model);
                if (!in.instrs.empty()) {
                    f.blown_up = total_futaki(blow_up_all(in.model, in.instrs));
                }
                report.tasks.push_back({t, f});
                break;
            }
            case Task::Expansion: {
                if (in.instrs.empty()) {
                    throw InputError("expansion needs blowup instructions");
                }
                ExpansionResult e;
                e.report = verify_expansion(in.model, in.instrs);
                e.expected = in.expected;
                e.passed = e.report.agree && (e.expected.empty() || e.expected == e.report.jet_linear);
                if (!e.passed && !report.counterexample) {
                    report.counterexample = json{{"model", in.model},
                                                 {"instructions", in.instrs},
                                                 {"nu", scalar_map_to_json(e.report.nu)},
                                                 {"jet_linear", scalar_map_to_json(e.report.jet_linear)},
                                                 {"expected", scalar_map_to_json(e.expected)}};
                    report.exit_code = exit_verification;
                }
                report.tasks.push_back({t, e});
                break;
            }
            case Task::Obstruction: {
                ObstructionResult o;
                o.weights = in.weights ? *in.weights : default_weights(in.instrs);
                o.verdict = obstruction_check(in.model, in.instrs, o.weights);
                report.tasks.push_back({t, o});
                break;
            }
            default:
                break;
            }
        }
    } catch (const InputError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    } catch (const std::domain_error& e) {
        throw InputError(e.what());
    }
    return report;
}

json report_to_json(const Report& r)
{
    json tasks = json::array();
    for (const auto& t : r.tasks) {
        json j = result_to_json(t.result);
        j["task"] = task_name(t.task);
        tasks.push_back(std::move(j));
    }
    json out{{"input", r.input}, {"tasks", tasks}, {"exit_code", r.exit_code}};
    if (r.counterexample) {
        out["counterexample"] = *r.counterexample;
    }
    return out;
}

Report report_from_json(const json& j)
{
    try {
        Report r;
        r.input = j.at("input").get<std::string>();
        r.exit_code = j.at("exit_code").get<int>();
        for (const auto& t : j.at("tasks")) {
            const Task task = parse_task(t.at("task").get<std::string>());
            r.tasks.push_back({task, result_from_json(task, t)});
        }
        if (j.contains("counterexample")) {
            r.counterexample = j.at("counterexample");
        }
        return r;
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw SchemaError(std::string("bad report: ") + e.what());
    }
}

std::string render(const Report& r, Format format)
{
    std::ostringstream os;
    switch (format) {
    case Format::Json:
        os << report_to_json(r).dump(2) << "\n";
        break;
    case Format::Table:
        os << "input: " << r.input << "\n";
        for (const auto& t : r.tasks) {
            table_task(os, t);
        }
        break;
    case Format::Csv:
        if (!r.tasks.empty() && std::holds_alternative<ResidueResult>(r.tasks.front().result)) {
            os << "task,r,re,im,abs_error\n";
        } else {
            os << "task,key,value,jet\n";
        }
        for (const auto& t : r.tasks) {
            csv_task(os, t);
        }
        break;
    }
    return os.str();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    Report report;
    try {
        report = execute(config);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        for (const auto& d : e.diagnostics()) {
            err << "  " << d << "\n";
        }
        return exit_input;
    }
    const std::string text = render(report, config.format);
    if (config.output) {
        std::ofstream file(*config.output);
        if (!file) {
            err << "error: cannot write '" << *config.output << "'\n";
            return exit_input;
        }
        file << text;
    } else {
        out << text;
    }
    if (report.counterexample) {
        err << "verification failed; counterexample:\n" << report.counterexample->dump(2) << "\n";
    }
    return report.exit_code;
}

}  // namespace futaki::cli
