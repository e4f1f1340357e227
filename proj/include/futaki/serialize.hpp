#pragma once

#include "futaki/blowup.hpp"
#include "futaki/residue.hpp"

#include <json.hpp>

#include <map>
#include <stdexcept>
#include <vector>

/// JSON encoding. Exact numbers are strings ("p/q"); complex scalars are
/// {"re": .., "im": ..}; jets are a scalar or {"value": .., "linear": {var: ..}}.
/// Floats only appear in residue data, where complex doubles are [re, im].
namespace futaki {

using json = nlohmann::json;

/// Malformed input document; the message names the offending key.
class SchemaError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

json rat_to_json(const Rat& q);
Rat rat_from_json(const json& j);

void to_json(json& j, const Scalar& s);
void from_json(const json& j, Scalar& s);
void to_json(json& j, const Jet& x);
void from_json(const json& j, Jet& x);
void to_json(json& j, const Component& c);
void from_json(const json& j, Component& c);
void to_json(json& j, const VectorFieldModel& m);
void from_json(const json& j, VectorFieldModel& m);
void to_json(json& j, const BlowupInstruction& instr);
void from_json(const json& j, BlowupInstruction& instr);

json scalar_map_to_json(const std::map<EpsVar, Scalar>& m);
std::map<EpsVar, Scalar> scalar_map_from_json(const json& j);
json rat_map_to_json(const std::map<EpsVar, Rat>& m);
std::map<EpsVar, Rat> rat_map_from_json(const json& j);

/// Parses a model document and rethrows any failure as SchemaError.
VectorFieldModel parse_model(const json& j);

namespace residue {

json cplx_to_json(const cplx& z);
cplx cplx_from_json(const json& j);

/// {"field": {"type": "degenerate", "a": ..} | {"type": "nondegenerate", "l1": .., "l2": ..},
///  "metric": {"g0": [[z, z], [z, z]], "g1v": ..}, "phi": [{"u","v","ubar","vbar","c"}],
///  "radii": [..], "quadrature": {"n_angular", "n_radial", "mc_samples", "seed"}}
void to_json(json& j, const ResidueProblem& p);
void from_json(const json& j, ResidueProblem& p);

}  // namespace residue

}  // namespace futaki
