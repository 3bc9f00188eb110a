#include "weilrep/checks.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "weilrep/corpus.hpp"
#include "weilrep/cyclic.hpp"
#include "weilrep/intbasis.hpp"
#include "weilrep/invariants.hpp"
#include "weilrep/oracles.hpp"
#include "weilrep/vandermonde.hpp"

namespace weilrep {

namespace {

struct Tally {
  long checked = 0, failed = 0;
  std::vector<std::string> first;
  void add(bool ok, const std::string& what) {
    ++checked;
    if (ok) return;
    ++failed;
    if (first.size() < 5) first.push_back(what);
  }
  // Wraps one case so that an exception counts as a failure instead of aborting the run.
  template <class F>
  void run(const std::string& what, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      add(false, what + ": " + e.what());
    }
  }
  std::string summary(const std::string& unit) const {
    std::ostringstream s;
    s << checked << " " << unit << ", " << failed << " failed";
    for (const auto& f : first) s << "; " << f;
    return s.str();
  }
};

void note(const CheckOptions& opt, const std::string& s) {
  if (opt.log) opt.log(s);
}

CycNumber power(CycNumber x, int k) {
  CycNumber r(1, x.conductor());
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

bool is_one(const CycNumber& x) { return (x - CycNumber(1, x.conductor())).is_zero(); }

// 1. rho(S)^2 = rho((ST)^3) and rho(S)^4 = (-1)^sgn, column by column.
CheckResult generator_relations(const CheckOptions&) {
  Tally t;
  const MpWord S2 = MpWord::parse("S^2"), ST3 = MpWord::parse("STSTST"), S4 = MpWord::parse("S^4");
  for (const auto& e : property_corpus()) {
    t.run(e.symbol, [&] {
      const DiscForm& D = *e.form;
      const int M = D.conductor();
      bool ok = true;
      for (int i = 0; i < D.size() && ok; ++i) {
        SVec u = SVec::unit(M, D.size(), i);
        ok = equal(apply(D, S2, u), apply(D, ST3, u));
        SVec expect = u;
        if (D.signature() % 2) expect = mono_rational(-1) * expect;
        ok = ok && equal(apply(D, S4, u), expect);
      }
      t.add(ok, e.symbol);
    });
  }
  return {1, "", t.failed == 0, t.summary("forms")};
}

// 2. sum_g e(q(g)) = e(sgn/8) sqrt|D|.
CheckResult milgram(const CheckOptions&) {
  Tally t;
  for (const auto& e : property_corpus()) {
    t.run(e.symbol, [&] {
      const DiscForm& D = *e.form;
      const int M = D.conductor();
      std::vector<Rational> raw(M);
      for (int g = 0; g < D.size(); ++g) raw[D.qexp(g)] += 1;
      CycNumber sum = CycNumber::from_raw(M, raw);
      CycNumber closed = e_of(frac(D.signature(), 8), M) * sqrt_nat(D.size(), M);
      t.add(sum == closed, e.symbol);
    });
  }
  return {2, "", t.failed == 0, t.summary("forms")};
}

// 3. a-vector action identities on designated forms, every (H, eta, lambda).
CheckResult action_formulas(const CheckOptions& opt) {
  Tally t;
  const std::vector<std::string> forms{"Z(27,2)",  "2_1^+1⊕2_1^+1", "3^-2", "4_1^+1⊕2_1^+1",
                                       "U(4)",     "9^+1⊕3^-1",     "2_II^-2⊕3^+1", "8_1^+1"};
  for (const auto& s : forms) {
    auto start = std::chrono::steady_clock::now();
    t.run(s, [&] {
      auto D = builtin(s);
      const int n = D->size();
      auto subs = enumerate_subgroups(D);
      for (const auto& H : subs) {
        const long l0 = pairing_exponent(H);
        const bool qi = classify(H) != SubgroupKind::generic;
        const long idx = orthogonal_complement(H).order() / H.order();
        const std::string hs = s + " H=" + H.str();
        for (int eta = 0; eta < n; ++eta)
          for (int lam = 0; lam < n; ++lam) {
            const std::string at = hs + " (" + std::to_string(eta) + "," + std::to_string(lam) + ")";
            t.add(s_image_identity(H, eta, lam).holds, "S image " + at);
            t.add(t_power_image_identity(H, l0, eta, lam).holds, "T^l image " + at);
            for (int sign : {1, -1}) {
              t.add(sym_s_image_identity(H, eta, lam, sign).holds, "symmetrized S image " + at);
              t.add(sym_t_power_image_identity(H, l0, eta, lam, sign).holds, "symmetrized T^l image " + at);
            }
            if (qi)
              for (long l = 1; l <= 3; ++l)
                if (gcd_l(l, idx) == 1) t.add(st_power_image_identity(H, l, eta, lam).holds, "ST^l image " + at);
          }
        if (qi)
          for (long l = 1; l <= 4; ++l)
            if (gcd_l(l, idx) == 1) {
              auto m = milgram_twisted(H, l);
              t.add(m.sum == m.closed_form, "twisted Gauss sum " + hs + " l=" + std::to_string(l));
            }
        for (const auto& K : subs) {
          if (!H.is_subgroup_of(K)) continue;
          for (int eta = 0; eta < n; ++eta)
            for (int lam = 0; lam < n; ++lam)
              for (const auto& ex : subgroup_change_identities(H, K, l0, eta, lam))
                t.add(ex.holds, ex.name + " " + hs + " K=" + K.str());
        }
      }
    });
    note(opt, "  action formulas on " + s + ": " +
                  std::to_string(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()) + " s");
  }
  return {3, "", t.failed == 0, t.summary("identities")};
}

// 4. Self-dual (quasi-)isotropic H: 200 random words per form against the matrix action.
CheckResult self_dual_actions(const CheckOptions&) {
  Tally t;
  long forms = 0;
  std::mt19937_64 rng(4);
  for (const auto& e : property_corpus()) {
    t.run(e.symbol, [&] {
      const auto& D = e.form;
      std::vector<Subgroup> sd;
      for (const auto& H : enumerate_subgroups(D, SubgroupFilter::quasi_isotropic))
        if (static_cast<long>(H.order()) * H.order() == D->size()) sd.push_back(H);
      if (sd.empty()) return;
      ++forms;
      std::uniform_int_distribution<int> pick(0, D->size() - 1);
      for (int i = 0; i < 200; ++i) {
        const Subgroup& H = sd[i % sd.size()];
        MpWord w = random_word(rng, 12);
        int eta = pick(rng), lam = pick(rng);
        auto pr = predicted_action(w, a_vector(H, eta, lam));
        t.add(pr.verified, e.symbol + " H=" + H.str() + " w=" + w.str());
      }
    });
  }
  return {4, "", t.failed == 0, std::to_string(forms) + " forms; " + t.summary("(word, vector) pairs")};
}

// 5. b-vectors: predicted scalar and index, eps^8 = 1, renormalized eps^4 = 1 when H is isotropic.
CheckResult b_vector_actions(const CheckOptions& opt) {
  Tally t;
  long fourth = 0;
  std::mt19937_64 rng(5);
  const std::vector<std::string> forms{"27^-1",       "9^+1⊕3^-1",      "3^-3",          "2_1^+1⊕2_1^+1",
                                       "4_1^+1⊕2_1^+1", "8_1^+1",         "2_II^-2⊕2_1^+1", "4_II^+2",
                                       "2_1^+1⊕2_1^+1⊕2_1^+1", "25^+1", "U(4)", "4_3^-1⊕4_1^+1",
                                       "2_1^+1⊕2_7^+1⊕2_II^-2"};
  for (const auto& s : forms) {
    auto start = std::chrono::steady_clock::now();
    t.run(s, [&] {
      auto D = builtin(s);
      const int n = D->size(), M = D->conductor();
      for (const auto& H : enumerate_subgroups(D, SubgroupFilter::quasi_isotropic)) {
        auto Hp = orthogonal_complement(H);
        const long idx = Hp.order() / H.order();
        if (idx == 1) continue;
        auto f = factorize(idx);
        if (f.size() != 1) continue;
        const long p = f[0].first;
        bool elementary = true;
        for (int x : Hp.elements()) elementary = elementary && H.contains(D->mul(p, x));
        if (!elementary) continue;
        for (const auto& J : enumerate_subgroups(D)) {
          if (J.order() != p || !J.is_subgroup_of(H) || classify(J) != SubgroupKind::isotropic) continue;
          BContext c = make_bcontext(H, J);
          auto r = [&](const Pair& x) {
            return in_Jperp(c, x.lambda) ? e_of(frac(D->signature(), 8), M) : CycNumber(1, M);
          };
          for (int eta = 0; eta < n; ++eta)
            for (int lam = 0; lam < n; ++lam) {
              if (in_Jperp(c, eta) && in_Jperp(c, lam)) continue;
              if ((eta * 7 + lam) % 5) continue;  // deterministic thinning of the index set
              auto v = b_vector(c, eta, lam);
              for (int k = 0; k < 4; ++k) {
                MpWord w = random_word(rng, 10);
                auto pr = predicted_action(w, v, &c);
                const std::string at = s + " H=" + H.str() + " J=" + J.str() + " w=" + w.str();
                t.add(pr.verified && is_one(power(pr.epsilon, 8)), at);
                if (c.isotropic) {
                  Pair tv = pr.star_index ? star_action(*D, w, {eta, lam}, c.lift.xi) : Pair{pr.image.eta, pr.image.lambda};
                  CycNumber e2 = pr.epsilon * r({eta, lam}) / r(tv);
                  ++fourth;
                  t.add(is_one(power(e2, 4)), "fourth power " + at);
                }
              }
            }
        }
      }
    });
    note(opt, "  b-vectors on " + s + ": " +
                  std::to_string(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()) + " s");
  }
  return {5, "", t.failed == 0, t.summary("checks") + " (" + std::to_string(fourth) + " renormalized)"};
}

// 6. Integral basis verified on the corpus; the natural basis must fail whenever rho(S) is not integral.
CheckResult integral_bases(const CheckOptions& opt) {
  Tally t, neg;
  for (const auto& e : property_corpus()) {
    auto start = std::chrono::steady_clock::now();
    t.run(e.symbol, [&] {
      auto B = integral_basis(e.form);
      t.add(verify_integrality(B).verdict, e.symbol);
    });
    neg.run(e.symbol, [&] {
      const DiscForm& D = *e.form;
      const int M = D.conductor();
      CycNumber s00 = e_of(frac(-D.signature(), 8), M) / sqrt_nat(D.size(), M);
      if (s00.is_integral()) return;
      neg.add(!verify_integrality(natural_basis(e.form), 0).verdict, "natural basis " + e.symbol);
    });
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (sec > 2) note(opt, "  integral basis " + e.symbol + ": " + std::to_string(sec) + " s");
  }
  return {6, "", t.failed == 0 && neg.failed == 0,
          t.summary("forms") + "; negative control: " + neg.summary("non-integral S matrices")};
}

// 7. c-coefficients integral for odd p <= 13.
CheckResult c_coefficients_integral(const CheckOptions&) {
  Tally t;
  for (long p : {3, 5, 7, 11, 13})
    for (long k = 1; k <= p - 1; ++k)
      for (Parity par : {Parity::odd, Parity::even}) {
        const std::string at =
            "p=" + std::to_string(p) + " k=" + std::to_string(k) + (par == Parity::odd ? " odd" : " even");
        t.run(at, [&] { t.add(c_coefficients(p, k, par).integral, at); });
      }
  return {7, "", t.failed == 0, t.summary("systems")};
}

// 8. Vandermonde LU, chain product and the recursion closed form for p = 5, 7.
CheckResult vandermonde(const CheckOptions&) {
  Tally t;
  for (long p : {5, 7}) {
    const int P = static_cast<int>(p);
    for (int start : {0, 1}) {
      const std::string at = "p=" + std::to_string(p) + (start ? " m>=1" : " m>=0");
      t.run(at, [&] {
        std::vector<CycNumber> xs;
        for (long m = start; m <= (p - 1) / 2; ++m) xs.push_back(CycNumber::root_of_unity(m * m, P));
        auto lu = vandermonde_lu(xs);
        t.add(cmat_equal(cmat_mul(lu.L, lu.U), lu.V), "LU " + at);
        t.add(cmat_equal(chain_product(lu), lu.L), "chain " + at);
      });
    }
    for (long k = 1; k <= p - 1; ++k) {
      const std::string at = "p=" + std::to_string(p) + " k=" + std::to_string(k);
      t.run(at, [&] {
        for (const auto& c : f_recursion_chain(p, k))
          t.add(c.holds, "recursion " + at + " m=" + std::to_string(c.m) + " h=" + std::to_string(c.h));
      });
    }
  }
  return {8, "", t.failed == 0, t.summary("identities")};
}

// 9. Invariant dimensions by kernel, Frobenius and the closed formulas.
CheckResult invariant_dimensions(const CheckOptions& opt) {
  Tally frob, hyp, fp, dnm;
  for (const auto& e : property_corpus()) {
    const auto& D = e.form;
    if (D->signature() % 2 == 0 && D->level() <= 12)
      frob.run(e.symbol, [&] {
        long k = invariant_subspace(D).dim_kernel, f = dim_frobenius(D);
        frob.add(k == f, e.symbol + " kernel " + std::to_string(k) + " frobenius " + std::to_string(f));
      });
    if (e.group)
      hyp.run(e.symbol, [&] {
        long k = invariant_subspace(D).dim_kernel, h = dim_hyperbolic(*e.group).dim;
        hyp.add(k == h, e.symbol + " kernel " + std::to_string(k) + " formula " + std::to_string(h));
        if (e.group->size() == 1) hyp.add(k == sigma0((*e.group)[0]), e.symbol + " divisor count");
      });
  }
  note(opt, "  kernel vs frobenius and hyperbolic done");
  // F_p vector spaces with |D| <= 81.
  std::vector<std::string> fpvs;
  for (long p : {3, 5, 7}) {
    long size = p;
    for (int n = 1; size <= 81; ++n, size *= p)
      for (const char* s : {"+", "-"}) fpvs.push_back(std::to_string(p) + "^" + s + std::to_string(n));
  }
  for (long p = 11; p <= 79; ++p)
    if (is_prime(p))
      for (const char* s : {"+", "-"}) fpvs.push_back(std::to_string(p) + "^" + s + "1");
  for (int n = 2; n <= 6; n += 2)
    for (const char* s : {"+", "-"}) fpvs.push_back(std::string("2_II^") + s + std::to_string(n));
  for (const auto& s : fpvs)
    fp.run(s, [&] {
      auto D = builtin(s);
      auto sh = fpvs_shape(D);
      if (!sh) {
        fp.add(false, s + " not recognized as an F_p vector space");
        return;
      }
      long k = invariant_subspace(D).dim_kernel, f = dim_fpvs(sh->p, sh->d, sh->r);
      fp.add(k == f, s + " kernel " + std::to_string(k) + " formula " + std::to_string(f));
    });
  for (long N = 1; N <= 36; ++N)
    for (long M = 1; M <= N; ++M)
      if (N % M == 0 && N * M <= 36) {
        const std::string at = "N=" + std::to_string(N) + " M=" + std::to_string(M);
        dnm.run(at, [&] { dnm.add(dim_DNM(N, M) == dim_hyperbolic({N, M}).dim, at); });
      }
  bool pass = frob.failed + hyp.failed + fp.failed + dnm.failed == 0;
  return {9, "", pass,
          "kernel=frobenius: " + frob.summary("forms") + "; U_G: " + hyp.summary("checks") + "; F_p: " +
              fp.summary("forms") + "; D_{N,M}: " + dnm.summary("pairs")};
}

// 10. The divisor basis of invariants of U(N).
CheckResult hyperbolic_cyclic_basis(const CheckOptions&) {
  Tally t;
  for (long N = 1; N <= 12; ++N) {
    const std::string at = "N=" + std::to_string(N);
    t.run(at, [&] {
      auto b = basis_U_N(N);
      t.add(static_cast<long>(b.vectors.size()) == sigma0(N) && b.invariant && b.independent && b.arrow_identity, at);
    });
  }
  return {10, "", t.failed == 0, t.summary("values of N")};
}

// 11. The explicit invariant on p^-4 and 2_II^-4.
CheckResult special_invariants(const CheckOptions&) {
  Tally t;
  for (const char* s : {"3^-4", "2_II^-4"})
    t.run(s, [&] {
      auto r = special_invariant(builtin(s));
      t.add(r.invariant && r.spans, s);
    });
  return {11, "", t.failed == 0, t.summary("forms")};
}

// 12. Every invariant basis rescales to integer vectors that are themselves invariant.
CheckResult rationality(const CheckOptions&) {
  Tally t;
  long nonzero = 0;
  for (const auto& e : property_corpus()) {
    t.run(e.symbol, [&] {
      const DiscForm& D = *e.form;
      auto r = invariant_subspace(e.form);
      bool ok = r.rational && static_cast<long>(r.integer_basis.size()) == r.dim_kernel;
      for (const auto& v : r.integer_basis) {
        SVec x(D.conductor(), D.size());
        for (int g = 0; g < D.size(); ++g) x.at(g)[0] = v[g].get_si();
        ok = ok && equal(apply(D, MpWord::T(), x), x) && equal(apply(D, MpWord::S(), x), x);
      }
      nonzero += r.dim_kernel > 0;
      t.add(ok, e.symbol);
    });
  }
  return {12, "", t.failed == 0, t.summary("forms") + " (" + std::to_string(nonzero) + " with invariants)"};
}

// 13. Cyclic decomposition.
CheckResult cyclic_decompositions(const CheckOptions&) {
  Tally t;
  long normed = 0;
  for (const auto& e : cyclic_corpus(16)) {
    t.run(e.symbol, [&] {
      auto c = cyclic_decomposition(e.form);
      const bool want = e.form->signature() % 2 == 0 && e.form->level() <= 12;
      bool normed_all = true;
      for (const auto& x : c.components) normed_all = normed_all && x.character_norm.has_value();
      if (want) ++normed;
      t.add(c.ok() && (!want || normed_all), e.symbol);
    });
  }
  return {13, "", t.failed == 0, t.summary("cyclic forms") + " (" + std::to_string(normed) + " with character norms)"};
}

}  // namespace

std::string criterion_name(int id) {
  static const char* names[] = {"",
                                "generator relations",
                                "Gauss sum",
                                "a-vector action identities",
                                "self-dual subgroup actions",
                                "b-vector actions",
                                "integral bases",
                                "c-coefficient integrality",
                                "Vandermonde factorization and recursion",
                                "invariant dimensions",
                                "divisor basis of U(N) invariants",
                                "special invariant vectors",
                                "rational invariant bases",
                                "cyclic decomposition"};
  if (id < 1 || id > kCriteria) throw std::out_of_range("criterion id");
  return names[id];
}

CheckResult run_check(int id, const CheckOptions& opt) {
  using Fn = CheckResult (*)(const CheckOptions&);
  static const Fn fns[] = {nullptr,
                           generator_relations,
                           milgram,
                           action_formulas,
                           self_dual_actions,
                           b_vector_actions,
                           integral_bases,
                           c_coefficients_integral,
                           vandermonde,
                           invariant_dimensions,
                           hyperbolic_cyclic_basis,
                           special_invariants,
                           rationality,
                           cyclic_decompositions};
  const std::string name = criterion_name(id);
  auto start = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = fns[id](opt);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("aborted: ") + e.what();
  }
  r.id = id;
  r.name = name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CheckResult> run_checks(const std::vector<int>& ids, const CheckOptions& opt) {
  std::vector<CheckResult> out;
  for (int id : ids) {
    out.push_back(run_check(id, opt));
    note(opt, format_result(out.back()));
  }
  return out;
}

std::string format_result(const CheckResult& r) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(1);
  s << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << ": " << r.detail << " (" << r.seconds << " s)";
  return s.str();
}

}  // namespace weilrep
