#pragma once

#include <string>

#include <json.hpp>

#include "weilrep/cyclic.hpp"
#include "weilrep/intbasis.hpp"
#include "weilrep/invariants.hpp"

namespace weilrep {

using Json = nlohmann::json;  // std::map-backed, so keys come out sorted

constexpr int kSchemaVersion = 1;

Json to_json(const Rational& r);
Json to_json(const CycNumber& z);
Json to_json(const Mat2& m);
Rational rational_from_json(const Json& j);
CycNumber cyc_from_json(const Json& j);

// {"orders": [...], "q_diag": ["a/b", ...], "b_off": [[i, j, "a/b"], ...]}
Json form_to_json(const DiscForm& D);
FormPtr form_from_json(const Json& j);
// Symbol in the builtin grammar, or a path to a form JSON file (also accepts a document
// with the form under "form").
FormPtr load_form(const std::string& symbol_or_path);

// Isotropic census and basic invariants.
Json form_info(const FormPtr& D);

Json to_json(const RepMatrix& R);
Json to_json(const SVec& v);
Json to_json(const BasisTag& t);
Json basis_to_json(const BasisSpec& B, bool with_coords = true);
Json to_json(const IntegralityReport& r);
Json to_json(const InvariantReport& r, bool with_basis = false);
Json to_json(const CyclicDecomposition& c);

// Wraps a payload with the schema version.
Json document(const std::string& kind, Json payload);
std::string dump(const Json& j);

}  // namespace weilrep
