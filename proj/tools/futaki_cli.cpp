// futaki: exact Futaki invariants of surface models, blowup expansions and
// numerical residue checks.
#include "futaki/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace futaki;
using namespace futaki::cli;

namespace {

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::vector<double> parse_doubles(const std::string& s)
{
    std::vector<double> out;
    for (const auto& item : split(s, ',')) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size()) {
            throw InputError("not a number: '" + item + "'");
        }
        out.push_back(x);
    }
    return out;
}

// "name=p/q,name=p/q"
std::map<EpsVar, Rat> parse_weights(const std::string& s)
{
    std::map<EpsVar, Rat> out;
    for (const auto& item : split(s, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw InputError("weights must look like e1=1,e2=2");
        }
        out[EpsVar(item.substr(0, eq))] = parse_rat(item.substr(eq + 1));
    }
    return out;
}

// "c:u,v,ubar,vbar;..." with c an exact scalar "x" or "x,y".
json parse_phi(const std::string& s)
{
    json terms = json::array();
    for (const auto& term : split(s, ';')) {
        const auto colon = term.find(':');
        const std::string coeff = term.substr(0, colon);
        std::vector<int> e{0, 0, 0, 0};
        if (colon != std::string::npos) {
            const auto parts = split(term.substr(colon + 1), ',');
            if (parts.size() != 4) {
                throw InputError("phi term exponents need four entries u,v,ubar,vbar: '" + term + "'");
            }
            for (std::size_t k = 0; k < 4; ++k) {
                e[k] = std::stoi(parts[k]);
            }
        }
        json c;
        to_json(c, parse_scalar(coeff));
        terms.push_back(json{{"c", c}, {"u", e[0]}, {"v", e[1]}, {"ubar", e[2]}, {"vbar", e[3]}});
    }
    return terms;
}

// Eight numbers: row-major 2x2 complex matrix.
json parse_matrix(const std::string& s)
{
    const auto x = parse_doubles(s);
    if (x.size() != 8) {
        throw InputError("matrices need eight numbers (re,im row-major)");
    }
    return json::array({json::array({json::array({x[0], x[1]}), json::array({x[2], x[3]})}),
                        json::array({json::array({x[4], x[5]}), json::array({x[6], x[7]})})});
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Futaki invariants by localization, blowup expansions and residue checks"};
    app.require_subcommand(1);

    std::string format = "table";
    std::string output;
    std::uint64_t seed = 0;
    std::string radii;
    std::int64_t samples = 0;
    std::string tasks;
    std::string weights;
    int n_angular = 0;
    int n_radial = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "table, json or csv")->check(CLI::IsMember({"table", "json", "csv"}));
        sub->add_option("--output", output, "write the report here instead of stdout");
        sub->add_option("--tasks", tasks, "comma-separated: futaki, expansion, obstruction, residue-verify, "
                                          "convergence-csv");
    };

    std::string model_path;
    auto* compute = app.add_subcommand("compute", "evaluate a model file");
    compute->add_option("model", model_path, "model JSON (optional keys: instructions, weights, expected_linear)")
        ->required();
    compute->add_option("--weights", weights, "obstruction weights, e.g. e1=1,e2=2");
    add_common(compute);

    std::string scenario_name;
    std::string a_text = "2";
    std::string b_text = "3";
    auto* scenario = app.add_subcommand("scenario", "run a built-in scenario");
    scenario->add_option("name", scenario_name, "p1xp1-two-point, p1xp1-two-point-w, p1xp1-three-point, "
                                                "p1xp1-three-point-w")
        ->required();
    scenario->add_option("--a", a_text, "class parameter a (exact)");
    scenario->add_option("--b", b_text, "class parameter b (exact)");
    scenario->add_option("--weights", weights, "obstruction weights, e.g. e1=1,e2=2");
    add_common(scenario);

    std::string params;
    std::string quantity;
    std::string field = "degenerate";
    std::string eig_a = "1";
    std::string l1 = "1";
    std::string l2 = "1";
    std::string phi = "1";
    std::string g0;
    std::string g1v;
    auto* residue_cmd = app.add_subcommand("residue", "numerical residue limits");
    residue_cmd->add_option("params", params, "params JSON or built-in name; omit to use the flags below");
    residue_cmd->add_option("--quantity", quantity, "boundary or appendix")
        ->check(CLI::IsMember({"boundary", "appendix"}));
    residue_cmd->add_option("--field", field, "degenerate or nondegenerate")
        ->check(CLI::IsMember({"degenerate", "nondegenerate"}));
    residue_cmd->add_option("--eigenvalue", eig_a, "a for the degenerate field; x or x,y");
    residue_cmd->add_option("--l1", l1, "first eigenvalue of the nondegenerate field");
    residue_cmd->add_option("--l2", l2, "second eigenvalue of the nondegenerate field");
    residue_cmd->add_option("--phi", phi, "terms c:u,v,ubar,vbar separated by ';' (c is x or x,y)");
    residue_cmd->add_option("--g0", g0, "constant metric part, eight numbers re,im row-major");
    residue_cmd->add_option("--g1v", g1v, "coefficient of v1 in the metric, eight numbers");
    residue_cmd->add_option("--seed", seed, "Monte Carlo seed");
    residue_cmd->add_option("--radii", radii, "comma-separated decreasing radii");
    residue_cmd->add_option("--samples", samples, "Monte Carlo samples per radius");
    residue_cmd->add_option("--n-angular", n_angular, "angular quadrature nodes");
    residue_cmd->add_option("--n-radial", n_radial, "radial quadrature nodes");
    add_common(residue_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    RunConfig cfg;
    try {
        cfg.format = parse_format(format);
        if (!output.empty()) {
            cfg.output = output;
        }
        for (const auto& t : split(tasks, ',')) {
            cfg.tasks.push_back(parse_task(t));
        }
        if (!weights.empty()) {
            cfg.weights = parse_weights(weights);
        }
        if (*compute) {
            cfg.kind = InputKind::Model;
            cfg.input = model_path;
        } else if (*scenario) {
            cfg.kind = InputKind::Scenario;
            cfg.input = scenario_name;
            cfg.a = parse_rat(a_text);
            cfg.b = parse_rat(b_text);
        } else {
            cfg.kind = InputKind::Residue;
            cfg.input = params;
            if (params.empty()) {
                json f = field == "degenerate" ? json{{"type", "degenerate"}, {"a", json{}}}
                                               : json{{"type", "nondegenerate"}};
                if (field == "degenerate") {
                    to_json(f["a"], parse_scalar(eig_a));
                } else {
                    to_json(f["l1"], parse_scalar(l1));
                    to_json(f["l2"], parse_scalar(l2));
                }
                json p{{"field", f}, {"phi", parse_phi(phi)}};
                if (!g0.empty()) {
                    p["metric"]["g0"] = parse_matrix(g0);
                }
                if (!g1v.empty()) {
                    p["metric"]["g1v"] = parse_matrix(g1v);
                }
                cfg.residue_params = p;
            }
            if (!quantity.empty()) {
                cfg.quantity = quantity;
            }
            if (residue_cmd->count("--seed") > 0) {
                cfg.seed = seed;
            }
            if (!radii.empty()) {
                cfg.radii = parse_doubles(radii);
            }
            if (samples != 0) {
                cfg.samples = samples;
            }
            if (n_angular != 0) {
                cfg.n_angular = n_angular;
            }
            if (n_radial != 0) {
                cfg.n_radial = n_radial;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    return run(cfg, std::cout, std::cerr);
}
