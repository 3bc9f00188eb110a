#include "weilrep/io.hpp"

#include <filesystem>
#include <fstream>

namespace weilrep {

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(const CycNumber& z) {
  Json c = Json::array();
  for (const auto& x : z.canonical()) c.push_back(to_string(x));
  return Json{{"conductor", z.conductor()}, {"coeffs", c}};
}

Json to_json(const Mat2& m) { return Json{{m[0], m[1]}, {m[2], m[3]}}; }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw InputError("expected a rational given as an \"a/b\" string");
  return parse_rational(j.get<std::string>());
}

CycNumber cyc_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("conductor") || !j.contains("coeffs"))
    throw InputError("expected a cyclotomic number {\"conductor\": M, \"coeffs\": [...]}");
  const int M = j.at("conductor").get<int>();
  if (M < 1) throw InputError("conductor must be positive");
  std::vector<Rational> c;
  for (const auto& x : j.at("coeffs")) c.push_back(rational_from_json(x));
  if (static_cast<long>(c.size()) != euler_phi(M)) throw InputError("coeffs must have length phi(conductor)");
  return CycNumber::from_canonical(M, c);
}

Json form_to_json(const DiscForm& D) {
  Json q = Json::array(), b = Json::array();
  for (const auto& x : D.q_diag()) q.push_back(to_string(x));
  for (const auto& o : D.b_off_list()) b.push_back(Json{o.i, o.j, to_string(o.b)});
  return Json{{"orders", D.orders()}, {"q_diag", q}, {"b_off", b}};
}

FormPtr form_from_json(const Json& j0) {
  // Accepts a bare form, {"form": ...} as written by info, or a document envelope.
  if (j0.is_object() && j0.contains("data") && j0.contains("schema_version")) return form_from_json(j0.at("data"));
  const Json& j = j0.is_object() && j0.contains("form") ? j0.at("form") : j0;
  try {
    if (!j.is_object() || !j.contains("orders") || !j.contains("q_diag"))
      throw InputError("form JSON needs \"orders\" and \"q_diag\"");
    std::vector<long> orders = j.at("orders").get<std::vector<long>>();
    std::vector<Rational> q;
    for (const auto& x : j.at("q_diag")) q.push_back(rational_from_json(x));
    std::vector<DiscForm::Off> off;
    if (j.contains("b_off"))
      for (const auto& e : j.at("b_off")) {
        if (!e.is_array() || e.size() != 3) throw InputError("b_off entries are [i, j, \"a/b\"]");
        off.push_back({e[0].get<int>(), e[1].get<int>(), rational_from_json(e[2])});
      }
    return DiscForm::make(std::move(orders), std::move(q), std::move(off));
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed form JSON: ") + e.what());
  }
}

FormPtr load_form(const std::string& s) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (s.size() > 5 && s.substr(s.size() - 5) == ".json") {
    if (!fs::is_regular_file(s, ec)) throw InputError("form file not found: " + s);
    std::ifstream in(s);
    Json j;
    try {
      in >> j;
    } catch (const Json::exception& e) {
      throw InputError("cannot parse " + s + ": " + e.what());
    }
    return form_from_json(j);
  }
  return builtin(s);
}

Json form_info(const FormPtr& D) {
  Json j{{"order", D->size()},
         {"level", D->level()},
         {"exponent", D->exponent()},
         {"signature", D->signature()},
         {"summary", D->summary()},
         {"form", form_to_json(*D)}};
  long iso = 0;
  for (int g = 0; g < D->size(); ++g) iso += D->qexp(g) == 0;
  Json census{{"isotropic_elements", iso}};
  if (D->size() <= kDefaultMaxOrder) {
    long qi = 0, is = 0, sd = 0, sdq = 0;
    for (const auto& H : enumerate_subgroups(D, SubgroupFilter::quasi_isotropic)) {
      const bool self_dual = static_cast<long>(H.order()) * H.order() == D->size();
      ++qi;
      if (self_dual) ++sdq;
      if (classify(H) == SubgroupKind::isotropic) {
        ++is;
        if (self_dual) ++sd;
      }
    }
    census["quasi_isotropic_subgroups"] = qi;
    census["isotropic_subgroups"] = is;
    census["self_dual_isotropic_subgroups"] = sd;
    census["self_dual_quasi_isotropic_subgroups"] = sdq;
  }
  j["census"] = census;
  return j;
}

Json to_json(const RepMatrix& R) {
  Json rows = Json::array();
  for (const auto& r : R.entries) {
    Json row = Json::array();
    for (const auto& z : r) row.push_back(to_json(z));
    rows.push_back(row);
  }
  Json idx = Json::array();
  for (int g = 0; g < R.form->size(); ++g) idx.push_back(R.form->coords(g));
  return Json{{"index", idx}, {"entries", rows}};
}

Json to_json(const SVec& v) {
  Json a = Json::array();
  for (const auto& z : v.entries()) a.push_back(to_json(z));
  return a;
}

Json to_json(const BasisTag& t) {
  Json j{{"kind", t.kind}};
  if (!t.H.empty()) j["H"] = t.H;
  if (!t.J.empty()) j["J"] = t.J;
  if (!t.symbol.empty()) j["symbol"] = t.symbol;
  if (t.eta >= 0) j["eta"] = t.eta;
  if (t.lambda >= 0) j["lambda"] = t.lambda;
  if (t.l >= 0) j["l"] = t.l;
  if (t.p) j["p"] = t.p;
  if (t.sign) j["sign"] = t.sign;
  if (!t.inner.empty()) {
    Json in = Json::array();
    for (const auto& x : t.inner) in.push_back(to_json(x));
    j["inner"] = in;
  }
  return j;
}

Json basis_to_json(const BasisSpec& B, bool with_coords) {
  Json tags = Json::array();
  for (int j = 0; j < B.size(); ++j) tags.push_back(to_json(B.tag(j)));
  Json out{{"form", form_to_json(*B.form)}, {"size", B.size()}, {"node", B.node_kind()}, {"tags", tags}};
  if (with_coords) {
    Json cols = Json::array();
    for (int j = 0; j < B.size(); ++j) cols.push_back(to_json(B.column(j)));
    out["columns"] = cols;
  }
  return out;
}

Json to_json(const IntegralityReport& r) {
  Json w = Json::array();
  for (const auto& c : r.words)
    w.push_back(Json{{"word", c.word}, {"worst_denominator", c.worst_denominator.get_str()}, {"integral", c.integral}});
  return Json{{"verdict", r.verdict}, {"words", w}};
}

Json to_json(const InvariantReport& r, bool with_basis) {
  Json f = Json::array();
  for (const auto& x : r.formulas) f.push_back(Json{{"name", x.name}, {"value", x.value}});
  Json j{{"dim_kernel", r.dim_kernel},
         {"formulas", f},
         {"agreement", r.agreement},
         {"rational", r.rational},
         {"triviality", to_string(r.triviality)}};
  j["dim_frobenius"] = r.dim_frobenius ? Json(*r.dim_frobenius) : Json(nullptr);
  if (!r.formulas.empty()) j["dim_formula"] = Json{{"name", r.formulas[0].name}, {"value", r.formulas[0].value}};
  if (with_basis) {
    Json b = Json::array();
    if (r.rational) {
      for (const auto& v : r.integer_basis) {
        Json row = Json::array();
        for (const auto& x : v) row.push_back(x.get_str());
        b.push_back(row);
      }
      j["integer_basis"] = b;
    } else {
      for (const auto& v : r.basis) {
        Json row = Json::array();
        for (const auto& z : v) row.push_back(to_json(z));
        b.push_back(row);
      }
      j["basis"] = b;
    }
  }
  return j;
}

Json to_json(const CyclicDecomposition& c) {
  Json comps = Json::array();
  for (const auto& x : c.components) {
    Json psi = Json::object();
    for (size_t i = 0; i < c.primes.size(); ++i) psi[std::to_string(c.primes[i])] = x.psi[i];
    Json basis = Json::array();
    for (const auto& v : x.basis) {
      Json row = Json::array();
      for (const auto& a : v) row.push_back(a.get_str());
      basis.push_back(row);
    }
    Json cj{{"M", x.M}, {"psi", psi}, {"dim", x.basis.size()}, {"invariant", x.invariant}, {"basis", basis}};
    cj["character_norm"] = x.character_norm ? to_json(*x.character_norm) : Json(nullptr);
    comps.push_back(cj);
  }
  return Json{{"N", c.N},
              {"generator", c.generator},
              {"components", comps},
              {"orthogonal", c.orthogonal},
              {"complete", c.complete},
              {"ok", c.ok()}};
}

Json document(const std::string& kind, Json payload) {
  return Json{{"schema_version", kSchemaVersion}, {"kind", kind}, {"data", std::move(payload)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace weilrep
