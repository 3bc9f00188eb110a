#include "weilrep/oracles.hpp"

namespace weilrep {

namespace {

bool check(Expansion& ex) {
  if (ex.rhs.empty()) return ex.holds = ex.lhs.is_zero();
  std::vector<std::pair<CycNumber, SVec>> terms;
  for (auto& t : ex.rhs)
    if (!t.vec.zero) terms.push_back({t.coef, t.vec.coords});
  if (terms.empty()) return ex.holds = ex.lhs.is_zero();
  ex.holds = equal(ex.lhs, combine(terms));
  return ex.holds;
}

IndexedVector with_coords(IndexedVector v, SVec c) {
  v.coords = std::move(c);
  return v;
}

}  // namespace

long pairing_exponent(const Subgroup& H) {
  const DiscForm& D = *H.form();
  const long M = D.conductor();
  long l = 1;
  for (int g : H.gens())
    for (int h : H.gens()) l = lcm_l(l, M / gcd_l(D.bexp(g, h), M));
  return l;
}

Expansion s_image_identity(const Subgroup& H, int eta, int lambda) {
  const DiscForm& D = *H.form();
  const int M = D.conductor();
  Expansion ex{"rho(S) a^H", apply(D, MpWord::S(), a_coords(H, eta, lambda)), {}, false};
  CycNumber c = e_of(frac(-D.signature(), 8) - D.b(lambda, eta), M);
  ex.rhs.push_back({c, a_vector(orthogonal_complement(H), D.neg(lambda), eta)});
  check(ex);
  return ex;
}

Expansion t_power_image_identity(const Subgroup& H, long l, int eta, int lambda) {
  const DiscForm& D = *H.form();
  const int M = D.conductor();
  int xi = xi_l_H(H, l);
  SVec lhs = a_coords(H, eta, lambda);
  apply_T(D, lhs, l);
  Expansion ex{"rho(T^l) a^H", lhs, {}, false};
  ex.rhs.push_back({e_of(Rational(l) * D.q(lambda), M), a_vector(H, D.add(D.add(eta, D.mul(l, lambda)), xi), lambda)});
  check(ex);
  return ex;
}

Expansion sym_s_image_identity(const Subgroup& H, int eta, int lambda, int sign) {
  const DiscForm& D = *H.form();
  const int M = D.conductor();
  auto v = a_vector_sym(H, eta, lambda, sign);
  Expansion ex{"rho(S) a^{H,+-}", v.zero ? v.coords : apply(D, MpWord::S(), v.coords), {}, false};
  auto w = a_vector_sym(orthogonal_complement(H), D.neg(lambda), eta, sign);
  ex.rhs.push_back({e_of(frac(-D.signature(), 8) - D.b(lambda, eta), M), w});
  check(ex);
  return ex;
}

Expansion sym_t_power_image_identity(const Subgroup& H, long l, int eta, int lambda, int sign) {
  const DiscForm& D = *H.form();
  const int M = D.conductor();
  int xi = xi_l_H(H, l);
  auto v = a_vector_sym(H, eta, lambda, sign);
  SVec lhs = v.coords;
  if (!v.zero) apply_T(D, lhs, l);
  Expansion ex{"rho(T^l) a^{H,+-}", lhs, {}, false};
  ex.rhs.push_back({e_of(Rational(l) * D.q(lambda), M),
                    a_vector_sym(H, D.add(D.add(eta, D.mul(l, lambda)), xi), lambda, sign)});
  check(ex);
  return ex;
}

std::vector<Expansion> subgroup_change_identities(const Subgroup& H, const Subgroup& K, long l, int eta, int lambda) {
  const DiscForm& D = *H.form();
  const int M = D.conductor();
  if (!H.is_subgroup_of(K)) throw InputError("subgroup_change_identities: H must lie in K");
  auto R = coset_reps(K, H);
  Mono norm = mono_inv_sqrt(static_cast<long>(R.size()));
  CycNumber inv_sqrt = mono_value(norm, M);
  std::vector<Expansion> out;

  Expansion first{"a^K as a sum of a^H", a_coords(K, eta, lambda), {}, false};
  for (int tau : R)
    first.rhs.push_back({inv_sqrt * e_of(D.b(tau, eta), M), a_vector(H, eta, D.add(lambda, tau))});
  check(first);
  out.push_back(std::move(first));

  int xi = xi_l_H(H, l);
  SVec lhs = a_coords(K, eta, lambda);
  apply_T(D, lhs, l);
  const int el = D.add(eta, D.mul(l, lambda));
  Expansion second{"rho(T^l) a^K as a sum of a^H", lhs, {}, false};
  for (int tau : R) {
    CycNumber c = inv_sqrt * e_of(Rational(l) * D.q(lambda) + D.b(tau, el) + Rational(l) * D.q(tau), M);
    second.rhs.push_back({c, a_vector(H, D.add(D.add(el, D.mul(l, tau)), xi), D.add(lambda, tau))});
  }
  check(second);
  out.push_back(second);

  if (K.is_subgroup_of(orthogonal_complement(H))) {
    Expansion third{"rho(T^l) a^K, K in H^perp", lhs, {}, false};
    for (size_t i = 0; i < R.size(); ++i) {
      int tau = R[i];
      third.rhs.push_back({second.rhs[i].coef, a_vector(H, D.add(el, xi), D.add(lambda, tau))});
    }
    check(third);
    out.push_back(std::move(third));
  }
  return out;
}

Expansion st_power_image_identity(const Subgroup& H, long l, int eta, int lambda) {
  const DiscForm& D = *H.form();
  const int M = D.conductor();
  Subgroup Hp = orthogonal_complement(H);
  int xi = xi_l_H(H, l);
  TwistedGauss g = twisted_gauss_data(H, l, xi);
  const long k = g.k;
  SVec lhs = a_coords(Hp, eta, lambda);
  apply_T(D, lhs, l);
  apply_S(D, lhs);
  Expansion ex{"rho(S T^l) a^{H^perp}", lhs, {}, false};
  Rational ph = frac(g.sgn_A0 - D.signature(), 8) +
                Rational(k * l - 1) * (Rational(l) * D.q(lambda) + D.b(lambda, D.add(eta, xi))) +
                Rational(k) * D.q(eta) + Rational(k) * D.b(eta, xi);
  int beta = D.add(D.mul(k * l - 1, lambda), D.mul(k, eta));
  int alpha = D.add(D.add(eta, D.mul(l, lambda)), xi);
  IndexedVector v = a_vector(Hp, beta, alpha);
  SVec c = v.coords;
  apply_T(D, c, -k);
  ex.rhs.push_back({e_of(ph, M), with_coords(v, c)});
  check(ex);
  return ex;
}

}  // namespace weilrep
