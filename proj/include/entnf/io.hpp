#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "entnf/lu_nf.hpp"
#include "entnf/monotones.hpp"
#include "entnf/slocc.hpp"
#include "entnf/tensor.hpp"

namespace entnf::io {

using json = nlohmann::json;
using State = std::variant<MultiTensor, DensityOperator>;

/// {"dims":[N1,...], "entries":[[re,im],...]}; density operators add
/// "kind":"density" and list the full matrix row-major. Throws
/// Error("parse_error") on malformed input and DimensionError on entry-count
/// mismatches.
State parse_state(const json& j, const Tolerances& tol = {});
State parse_state_text(const std::string& text, const Tolerances& tol = {});
MultiTensor parse_tensor(const json& j);

json to_json(const MultiTensor& psi);
json to_json(const DensityOperator& rho);
json to_json(const State& s);

/// {"rows":r, "cols":c, "entries":[[re,im],...]} row-major.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);
json complex_to_json(Complex z);

json to_json(const LocalOperatorSet& ops);
json to_json(const slocc::SloccConfig& cfg);
json to_json(const slocc::NormalFormResult& r);
json to_json(const slocc::OptimalFilterReport& r);

/// Slots in "wirings" are 1-based, as copies are numbered in formulas:
/// {"id":..., "degree":d, "wirings":[[[1,2],[3,4]], ...],
///  "prefactor":{"num":4,"den":3,"root":2}, "exponent":[1,2]}
json to_json(const monotones::MonotoneSpec& spec);
monotones::MonotoneSpec spec_from_json(const json& j);
json to_json(const monotones::MonotoneValue& v);
json to_json(const monotones::InvarianceReport& r);
json to_json(const monotones::MonotonicityReport& r);

json to_json(const lu::LuNormalFormResult& r);
json to_json(const lu::Fingerprint& fp);
json to_json(const lu::EquivalenceReport& r);

/// FNV-1a 64-bit digest of `bytes`, as 16 hex digits.
std::string content_hash(const std::string& bytes);

}  // namespace entnf::io
