#pragma once

#include "futaki/blowup.hpp"
#include "futaki/residue.hpp"
#include "futaki/serialize.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace futaki::cli {

enum class Task { Futaki, Expansion, Obstruction, ResidueVerify, ConvergenceCsv };
enum class Format { Table, Json, Csv };
enum class InputKind { Model, Scenario, Residue };

std::string task_name(Task t);
Task parse_task(const std::string& s);
Format parse_format(const std::string& s);

inline constexpr int exit_ok = 0;
inline constexpr int exit_verification = 1;
inline constexpr int exit_input = 2;

/// Bad input: unreadable file, schema violation, invalid model or options.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what, std::vector<std::string> diagnostics = {})
        : std::invalid_argument(what), diagnostics_(std::move(diagnostics))
    {
    }
    [[nodiscard]] const std::vector<std::string>& diagnostics() const { return diagnostics_; }

private:
    std::vector<std::string> diagnostics_;
};

struct RunConfig {
    InputKind kind = InputKind::Scenario;
    /// Model path, scenario name, or residue params path / builtin name.
    std::string input;
    /// Residue parameters given directly (from flags); takes precedence over `input`.
    std::optional<json> residue_params;
    /// "boundary" or "appendix"; defaults from the builtin name, else "boundary".
    std::optional<std::string> quantity;
    /// Empty selects the defaults for the input kind.
    std::vector<Task> tasks;
    Format format = Format::Table;
    std::optional<std::string> output;
    std::optional<std::uint64_t> seed;
    std::optional<std::vector<double>> radii;
    std::optional<std::int64_t> samples;
    std::optional<int> n_angular;
    std::optional<int> n_radial;
    Rat a = 2;
    Rat b = 3;
    std::optional<std::map<EpsVar, Rat>> weights;
};

struct ComponentRow {
    std::string id;
    Jet I;
    Jet J;
    Jet f;

    friend bool operator==(const ComponentRow&, const ComponentRow&) = default;
};

struct FutakiResult {
    Jet base;
    std::vector<ComponentRow> components;
    std::optional<Jet> blown_up;

    friend bool operator==(const FutakiResult&, const FutakiResult&) = default;
};

struct ExpansionResult {
    ExpansionReport report;
    /// Reference coefficients, when the input supplies them.
    std::map<EpsVar, Scalar> expected;
    bool passed = false;

    friend bool operator==(const ExpansionResult&, const ExpansionResult&) = default;
};

struct ObstructionResult {
    std::map<EpsVar, Rat> weights;
    Verdict verdict;

    friend bool operator==(const ObstructionResult&, const ObstructionResult&) = default;
};

struct ResidueResult {
    std::string quantity;
    std::vector<std::pair<double, residue::cplx>> raw;
    residue::cplx extrapolated;
    double error_estimate = 0.0;
    bool residuals_monotone = true;
    residue::cplx reference;
    double rel_error = 0.0;
    double tolerance = 0.0;
    /// Log-log slope of |raw - reference|; absent when the errors are at the quadrature floor.
    std::optional<double> exponent;
    bool passed = false;

    friend bool operator==(const ResidueResult&, const ResidueResult&) = default;
};

using TaskResult = std::variant<FutakiResult, ExpansionResult, ObstructionResult, ResidueResult>;

struct TaskReport {
    Task task;
    TaskResult result;

    friend bool operator==(const TaskReport&, const TaskReport&) = default;
};

struct Report {
    std::string input;
    std::vector<TaskReport> tasks;
    /// Minimal failing case (inputs plus both sides) when a check fails.
    std::optional<json> counterexample;
    int exit_code = exit_ok;

    friend bool operator==(const Report&, const Report&) = default;
};

/// Relative error with an absolute floor: |value - ref| / max(|ref|, 1).
double relative_error(residue::cplx value, residue::cplx ref);

/// Runs every task; throws InputError on bad input.
Report execute(const RunConfig& config);

json report_to_json(const Report& r);
Report report_from_json(const json& j);
std::string render(const Report& r, Format format);

/// execute + render to config.output (or `out`); diagnostics and
/// counterexamples go to `err`. Returns the exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace futaki::cli
