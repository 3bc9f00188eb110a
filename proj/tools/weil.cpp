// weil: command-line front end for finite quadratic modules and their Weil representations.
#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>

#include "weilrep/checks.hpp"
#include "weilrep/io.hpp"

using namespace weilrep;

namespace {

struct FormArgs {
  std::string symbol, form, input;
  int max_order = kDefaultMaxOrder;
};

struct Common {
  FormArgs f;
  std::string out;
  bool pretty = false;
};

void add_form_options(CLI::App* sub, Common& c) {
  sub->add_option("--symbol", c.f.symbol, "form in the builtin symbol grammar, e.g. \"3^+1⊕U(2)\"");
  sub->add_option("--form", c.f.form, "symbol or path to a form .json file");
  sub->add_option("--input", c.f.input, "form .json file");
  sub->add_option("--max-order", c.f.max_order, "refuse forms larger than this")->check(CLI::PositiveNumber);
  sub->add_option("--out", c.out, "write the result here instead of stdout");
  sub->add_flag("--pretty", c.pretty, "human-readable table instead of JSON");
}

FormPtr resolve(const FormArgs& a) {
  int given = !a.symbol.empty() + !a.form.empty() + !a.input.empty();
  if (given != 1) throw InputError("give exactly one of --symbol, --form, --input");
  FormPtr D;
  if (!a.symbol.empty()) D = builtin(a.symbol);
  if (!a.form.empty()) D = load_form(a.form);
  if (!a.input.empty()) {
    if (a.input.size() < 5 || a.input.substr(a.input.size() - 5) != ".json")
      throw InputError("--input expects a .json file");
    D = load_form(a.input);
  }
  if (D->size() > a.max_order)
    throw InputError("|D| = " + std::to_string(D->size()) + " exceeds --max-order " + std::to_string(a.max_order));
  return D;
}

std::string symbol_of(const FormArgs& a) { return !a.symbol.empty() ? a.symbol : a.form; }

// G for U(N) and UG(...) symbols.
std::optional<std::vector<long>> hyperbolic_group(const std::string& s) {
  static const std::regex re(R"(^\s*U(G)?\(\s*(\d+(\s*,\s*\d+)*)\s*\)\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) return std::nullopt;
  if (!m[1].matched && m[2].str().find(',') != std::string::npos) return std::nullopt;
  std::vector<long> g;
  std::string body = m[2];
  std::regex re_n(R"(\d+)");
  for (auto it = std::sregex_iterator(body.begin(), body.end(), re_n); it != std::sregex_iterator(); ++it)
    g.push_back(std::stol(it->str()));
  return g;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream o(c.out);
  if (!o) throw InputError("cannot write " + c.out);
  o << text;
}

std::string pretty_info(const Json& j) {
  std::ostringstream s;
  s << "form       " << j["summary"].get<std::string>() << "\n"
    << "order      " << j["order"] << "\n"
    << "level      " << j["level"] << "\n"
    << "exponent   " << j["exponent"] << "\n"
    << "signature  " << j["signature"] << "\n";
  for (auto& [k, v] : j["census"].items()) s << std::left << std::setw(36) << k << v << "\n";
  return s.str();
}

std::string pretty_rep(const RepMatrix& R) {
  std::ostringstream s;
  for (size_t i = 0; i < R.entries.size(); ++i) {
    for (size_t j = 0; j < R.entries[i].size(); ++j) s << (j ? "  " : "") << R.entries[i][j].str();
    s << "\n";
  }
  return s.str();
}

std::string pretty_invariants(const InvariantReport& r) {
  std::ostringstream s;
  s << "kernel      " << r.dim_kernel << "\n";
  if (r.dim_frobenius) s << "frobenius   " << *r.dim_frobenius << "\n";
  for (const auto& f : r.formulas) s << std::left << std::setw(12) << f.name << f.value << "\n";
  s << "triviality  " << to_string(r.triviality) << "\n"
    << "rational    " << (r.rational ? "yes" : "no") << "\n"
    << "agreement   " << (r.agreement ? "yes" : "no") << "\n";
  return s.str();
}

std::string pretty_decomposition(const CyclicDecomposition& c) {
  std::ostringstream s;
  s << "N = " << c.N << ", G primes:";
  for (long p : c.primes) s << " " << p;
  s << "\n";
  for (const auto& x : c.components) {
    s << "M=" << std::setw(3) << x.M << "  psi=";
    for (int v : x.psi) s << (v > 0 ? '+' : '-');
    s << "  dim=" << x.basis.size() << "  invariant=" << (x.invariant ? "yes" : "no");
    if (x.character_norm) s << "  norm=" << to_string(*x.character_norm);
    s << "\n";
  }
  s << "orthogonal " << (c.orthogonal ? "yes" : "no") << ", complete " << (c.complete ? "yes" : "no") << "\n";
  return s.str();
}

std::vector<int> parse_ids(const std::string& s) {
  std::vector<int> ids;
  if (s.empty() || s == "all") {
    for (int i = 1; i <= kCriteria; ++i) ids.push_back(i);
    return ids;
  }
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int id = 0;
    try {
      id = std::stoi(tok);
    } catch (const std::exception&) {
      throw InputError("bad criterion id '" + tok + "'");
    }
    if (id < 1 || id > kCriteria) throw InputError("criterion ids run from 1 to " + std::to_string(kCriteria));
    ids.push_back(id);
  }
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weil representations of finite quadratic modules: exact construction, integral bases, invariants"};
  app.require_subcommand(1);
  app.footer(builtin_grammar());

  Common build_c, info_c, rep_c, basis_c, verify_c, inv_c, dec_c;
  std::string word, method = "all", emit_basis, criteria;
  bool basis_verify = false, verbose = false;
  int words = 50;
  long max_level = 12;

  auto* build = app.add_subcommand("build", "validate a form and write it as JSON");
  add_form_options(build, build_c);
  auto* info = app.add_subcommand("info", "order, level, signature and isotropic census");
  add_form_options(info, info_c);
  auto* rep = app.add_subcommand("rep", "matrix of rho(word) in the natural basis");
  add_form_options(rep, rep_c);
  rep->add_option("--word", word, "word in S, T, Z with integer exponents, e.g. \"S T^-2 S\"")->required();
  auto* basis = app.add_subcommand("basis", "recursive integral basis with its tag tree");
  add_form_options(basis, basis_c);
  basis->add_flag("--verify", basis_verify, "also verify integrality of the action");
  basis->add_option("--words", words, "random words used by --verify")->check(CLI::NonNegativeNumber);
  auto* verify = app.add_subcommand("verify", "build the integral basis and verify integrality");
  add_form_options(verify, verify_c);
  verify->add_option("--words", words, "random words besides T, T^-1, S, S^-1")->check(CLI::NonNegativeNumber);
  auto* inv = app.add_subcommand("invariants", "dimension of the invariant subspace, cross-checked");
  add_form_options(inv, inv_c);
  inv->add_option("--method", method, "kernel|frobenius|formula|all");
  inv->add_option("--emit-basis", emit_basis, "write the invariant basis to this JSON file");
  inv->add_option("--max-level", max_level, "level budget for the Frobenius trace")->check(CLI::PositiveNumber);
  auto* dec = app.add_subcommand("decompose", "decomposition of C[D] for cyclic D");
  add_form_options(dec, dec_c);
  auto* self = app.add_subcommand("selftest", "run the property corpus; exit 0 iff everything passes");
  self->add_option("--criteria", criteria, "comma-separated criterion ids (default all)");
  self->add_flag("--verbose", verbose, "print progress");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*build) {
      auto D = resolve(build_c.f);
      emit(build_c, build_c.pretty ? pretty_info(form_info(D)) : dump(document("form", form_to_json(*D))));
      return 0;
    }
    if (*info) {
      auto D = resolve(info_c.f);
      Json j = form_info(D);
      emit(info_c, info_c.pretty ? pretty_info(j) : dump(document("info", j)));
      return 0;
    }
    if (*rep) {
      auto D = resolve(rep_c.f);
      MpWord w = MpWord::parse(word);
      auto R = rho_word(D, w);
      Json j = to_json(R);
      j["word"] = w.str();
      emit(rep_c, rep_c.pretty ? pretty_rep(R) : dump(document("rep", j)));
      return 0;
    }
    if (*basis || *verify) {
      Common& c = *basis ? basis_c : verify_c;
      auto D = resolve(c.f);
      auto B = integral_basis(D, c.f.max_order);
      const bool run_verify = *verify || basis_verify;
      Json j = *basis ? basis_to_json(B) : Json::object();
      bool ok = true;
      if (run_verify) {
        auto r = verify_integrality(B, words);
        ok = r.verdict;
        j["integrality"] = to_json(r);
      }
      if (c.pretty) {
        std::ostringstream s;
        s << "basis of " << B.size() << " vectors, root node " << B.node_kind() << "\n";
        if (run_verify) s << "integral: " << (ok ? "yes" : "no") << "\n";
        emit(c, s.str());
      } else {
        emit(c, dump(document(*basis ? "basis" : "verify", j)));
      }
      return ok ? 0 : 1;
    }
    if (*inv) {
      auto D = resolve(inv_c.f);
      InvMethod m = parse_method(method);
      auto r = invariant_report(D, m, hyperbolic_group(symbol_of(inv_c.f)), max_level);
      if (!emit_basis.empty()) {
        std::ofstream o(emit_basis);
        if (!o) throw InputError("cannot write " + emit_basis);
        o << dump(document("invariant_basis", to_json(r, true)));
      }
      emit(inv_c, inv_c.pretty ? pretty_invariants(r) : dump(document("invariants", to_json(r))));
      return r.agreement ? 0 : 1;
    }
    if (*dec) {
      auto D = resolve(dec_c.f);
      auto c = cyclic_decomposition(D);
      emit(dec_c, dec_c.pretty ? pretty_decomposition(c) : dump(document("decomposition", to_json(c))));
      return c.ok() ? 0 : 1;
    }
    if (*self) {
      CheckOptions opt;
      if (verbose) opt.log = [](const std::string& s) { std::cerr << s << std::endl; };
      bool all = true;
      for (int id : parse_ids(criteria)) {
        auto r = run_check(id, opt);
        std::cout << format_result(r) << std::endl;
        all = all && r.pass;
      }
      return all ? 0 : 1;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConsistencyError& e) {
    std::cerr << "cross-check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
