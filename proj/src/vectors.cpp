#include "weilrep/vectors.hpp"

#include <algorithm>

namespace weilrep {

std::string to_string(VecKind k) {
  switch (k) {
    case VecKind::A: return "A";
    case VecKind::ASym: return "ASym";
    case VecKind::B: return "B";
  }
  return "?";
}

SVec a_coords(const Subgroup& H, int eta, int lambda) {
  const DiscForm& D = *H.form();
  SVec v(D.conductor(), D.size());
  for (int g : H.elements()) v.at(D.add(lambda, g))[D.bexp(g, eta)] = 1;
  v.s = mono_inv_sqrt(H.order());
  return v;
}

IndexedVector a_vector(const Subgroup& H, int eta, int lambda) {
  IndexedVector iv;
  iv.kind = VecKind::A;
  iv.H = H;
  iv.eta = eta;
  iv.lambda = lambda;
  iv.coords = a_coords(H, eta, lambda);
  return iv;
}

IndexedVector a_vector_sym(const Subgroup& H, int eta, int lambda, int sign) {
  const DiscForm& D = *H.form();
  if (sign != 1 && sign != -1) throw InputError("a_vector_sym: sign must be +1 or -1");
  IndexedVector iv;
  iv.kind = VecKind::ASym;
  iv.H = H;
  iv.eta = eta;
  iv.lambda = lambda;
  iv.sign = sign;
  Subgroup Hp = orthogonal_complement(H);
  if (H.contains(D.mul(2, lambda)) && Hp.contains(D.mul(2, eta))) {
    // a_{-eta,-lambda} = e(-(2 lambda, eta)) a_{eta,lambda}, and that factor is +-1
    int f = D.bexp(D.mul(2, lambda), eta) == 0 ? 1 : -1;
    if (f == sign) {
      iv.coords = a_coords(H, eta, lambda);
    } else {
      iv.zero = true;
      iv.coords = SVec(D.conductor(), D.size());
      iv.coords.s.r = 0;
    }
    return iv;
  }
  SVec a = a_coords(H, eta, lambda), b = a_coords(H, D.neg(eta), D.neg(lambda));
  iv.coords = combine({{CycNumber(1), a}, {CycNumber(sign), b}});
  iv.coords.s = mono_mul(iv.coords.s, mono_inv_sqrt(2), D.conductor());
  return iv;
}

// ---------------------------------------------------------------------------

namespace {

long denom_of(long exp, long M) { return M / gcd_l(mod_l(exp, M), M); }

long odd_part(long x) {
  while (x % 2 == 0) x /= 2;
  return x;
}

}  // namespace

TwistedGauss twisted_gauss_data(const Subgroup& H, long l, int xi) {
  const FormPtr& F = H.form();
  const DiscForm& D = *F;
  if (classify(H) == SubgroupKind::generic) throw InputError("twisted Gauss sum needs a quasi-isotropic subgroup");
  Subgroup Hp = orthogonal_complement(H);
  long idx = Hp.order() / H.order();
  if (gcd_l(l, idx) != 1) throw InputError("l must be prime to |H^perp/H|");
  bool iso = classify(H) == SubgroupKind::isotropic;
  const long M = D.conductor();
  long d = denom_of(D.qexp(xi), M);
  for (int g : Hp.elements()) d = lcm_l(d, lcm_l(denom_of(D.qexp(g), M), denom_of(D.bexp(g, xi), M)));
  TwistedGauss t;
  t.l = l;
  t.xi = xi;
  FormPtr A0;
  if (iso || l % 2) {
    Subgroup H0 = maximal_isotropic_in(H);
    A0 = rescaled(*quotient_form(H0).A, l);
    if (gcd_l(l, d) != 1) throw ConsistencyError("no k with kl = 1 mod the denominators");
    t.k = inv_mod(mod_l(l, d), d);
    if (t.k == 0) t.k = d;
  } else {
    A0 = induced_form(Hp, H, l).A;
    long dd = odd_part(d);
    long k = dd == 1 ? 1 : inv_mod(mod_l(l, dd), dd);
    if (k == 0) k = dd;
    if (k % 2) k += dd;
    if (k % 2) k += dd;  // dd odd: one step always suffices
    t.k = k;
  }
  t.sgn_A0 = A0->signature();
  return t;
}

MilgramTwisted milgram_twisted(const Subgroup& H, long l) {
  const DiscForm& D = *H.form();
  const int M = D.conductor();
  int xi = xi_l_H(H, l);
  MilgramTwisted out;
  out.data = twisted_gauss_data(H, l, xi);
  Subgroup Hp = orthogonal_complement(H);
  std::vector<Rational> c(M);
  for (int s : coset_reps(Hp, H)) c[mod_l(l * D.qexp(s) - D.bexp(s, xi), M)] += 1;
  out.sum = CycNumber::from_raw(M, std::move(c)).reduced();
  long idx = Hp.order() / H.order();
  out.closed_form = (e_of(-Rational(out.data.k) * D.q(xi) + frac(out.data.sgn_A0, 8), M) * sqrt_nat(idx, M)).reduced();
  return out;
}

// ---------------------------------------------------------------------------

BContext make_bcontext(const Subgroup& H, const Subgroup& J) {
  BContext c;
  c.D = H.form();
  const DiscForm& D = *c.D;
  c.H = H;
  c.J = J;
  c.Hp = orthogonal_complement(H);
  c.H0 = maximal_isotropic_in(H);
  c.Jp = orthogonal_complement(J);
  c.isotropic = c.H0.order() == H.order();
  if (!J.is_subgroup_of(H) || !is_prime(J.order())) throw InputError("b-vectors need J <= H of prime order");
  c.p = J.order();
  long idx = c.Hp.order() / H.order();
  for (int x : c.Hp.elements())
    if (!H.contains(D.mul(c.p, x))) throw InputError("b-vectors need H^perp/H of exponent |J|");
  if (idx == 1) throw InputError("b-vectors need H^perp != H");
  c.lift = lift_complement(H);
  c.jgen = J.gens().at(0);
  c.A_reps = coset_reps(c.Hp, H);
  c.gauss.resize(c.p);
  for (long l = 1; l < c.p; ++l) c.gauss[l] = twisted_gauss_data(H, l, xi_l(c, l));
  return c;
}

bool in_Jperp(const BContext& c, int x) { return c.Jp.contains(x); }

int xi_l(const BContext& c, long l) { return mod_l(l, 2) ? c.lift.xi : 0; }

long b_index_l(const BContext& c, int eta, int lambda) {
  const DiscForm& D = *c.D;
  if (in_Jperp(c, lambda)) return -1;
  // pairing with the generator of J, in units of 1/p
  auto t = [&](int x) { return mod_l(D.bexp(c.jgen, x) / (D.conductor() / c.p), c.p); };
  return mod_l(t(eta) * inv_mod(t(lambda), c.p), c.p);
}

IndexedVector b_vector(const BContext& c, int eta, int lambda, bool self_check) {
  const DiscForm& D = *c.D;
  IndexedVector iv;
  iv.kind = VecKind::B;
  iv.H = c.H;
  iv.J = c.J;
  iv.eta = eta;
  iv.lambda = lambda;
  long l = b_index_l(c, eta, lambda);
  iv.l = l;
  if (l < 0) {
    iv.coords = a_coords(c.H, eta, lambda);
    return iv;
  }
  const int M = D.conductor();
  int xi = xi_l(c, l);
  int ex = D.sub(eta, xi);
  SVec v(M, D.size());
  for (int tau : c.A_reps) {
    long base = D.bexp(tau, ex) + l * D.qexp(tau);
    int lt = D.add(lambda, tau);
    for (int g : c.H.elements()) v.at(D.add(lt, g))[mod_l(base + D.bexp(g, eta), M)] += 1;
  }
  v.s = mono_inv_sqrt(c.Hp.order());
  iv.coords = std::move(v);
  if (self_check) {
    SVec w = a_coords(c.Hp, D.sub(D.sub(eta, D.mul(l, lambda)), xi), lambda);
    apply_T(D, w, l);
    w = mono_root(mod_l(-l * D.qexp(lambda), M)) * w;
    if (!equal(iv.coords, w)) throw ConsistencyError("b-vector differs from its T^l description");
  }
  return iv;
}

CycNumber eps_S(const BContext& c, const Pair& v) {
  const DiscForm& D = *c.D;
  const int M = D.conductor();
  bool le = in_Jperp(c, v.lambda), ee = in_Jperp(c, v.eta);
  if (le && ee) throw InputError("eps_S: both indices lie in J^perp");
  if (le || ee) return e_of(frac(-D.signature(), 8), M);
  long l = b_index_l(c, v.eta, v.lambda);
  const auto& g = c.gauss.at(l);
  return e_of(frac(g.sgn_A0 - D.signature(), 8) - Rational(g.k) * D.q(g.xi), M);
}

namespace {

int xi_Hp(const BContext& c, long t) { return t == 0 ? 0 : xi_l_H(c.Hp, t); }

}  // namespace

Pair b_step_T(const BContext& c, const Pair& v, long s) {
  const DiscForm& D = *c.D;
  if (in_Jperp(c, v.lambda)) return {D.add(D.add(v.eta, D.mul(s, v.lambda)), xi_l_H(c.H, s)), v.lambda};
  // b_v = e(-l q(lambda)) rho(T^l) a^{H^perp}_{eta - l lambda - xi_l, lambda}; write l + s = l2 + p t.
  long l = b_index_l(c, v.eta, v.lambda);
  long l2 = mod_l(l + s, c.p), t = (l + s - l2) / c.p;
  int eta = D.add(v.eta, D.mul(s, v.lambda));
  eta = D.add(D.sub(eta, xi_l(c, l)), xi_l(c, l2));
  eta = D.add(eta, xi_Hp(c, c.p * t));
  return {eta, v.lambda};
}

Pair b_step_S(const BContext& c, const Pair& v) {
  const DiscForm& D = *c.D;
  Pair out{D.neg(v.lambda), v.eta};
  if (in_Jperp(c, v.lambda) || in_Jperp(c, v.eta)) return out;
  long l = b_index_l(c, v.eta, v.lambda);
  long k = c.gauss.at(l).k;
  long l1 = b_index_l(c, out.eta, out.lambda);
  long m = k + l1;
  if (m % c.p) throw ConsistencyError("b_step_S: k + l' is not divisible by p");
  int corr = D.add(D.sub(xi_l(c, l1), D.mul(k, xi_l(c, l))), xi_Hp(c, -m));
  out.eta = D.add(out.eta, corr);
  return out;
}

Pair b_step_S_preimage(const BContext& c, const Pair& v) {
  const DiscForm& D = *c.D;
  // The correction lies in J^perp and only depends on the classes mod J^perp.
  Pair u0{v.lambda, D.neg(v.eta)};
  Pair img = b_step_S(c, u0);
  Pair u{v.lambda, D.sub(D.sub(img.eta, v.eta), v.eta)};
  if (!(b_step_S(c, u) == v)) throw ConsistencyError("b_step_S_preimage failed");
  return u;
}

// ---------------------------------------------------------------------------

SVec embed_conductor(const SVec& v, int M2) {
  if (M2 % v.M) throw std::invalid_argument("embed_conductor: conductor does not divide");
  const int f = M2 / v.M;
  SVec out(M2, v.n);
  for (int i = 0; i < v.n; ++i) {
    if (!v.entry_nonzero_raw(i)) continue;
    for (int k = 0; k < v.M; ++k) out.at(i)[k * f] = v.at(i)[k];
  }
  out.s = v.s;
  out.s.k = v.s.k * f;
  return out;
}

SVec arrow_up(const Subgroup& J, const QuotientMap& Q, const SVec& v) {
  const DiscForm& D = *J.form();
  if (classify(J) != SubgroupKind::isotropic) throw InputError("arrow_up: J must be isotropic");
  if (v.n != Q.A->size()) throw std::invalid_argument("arrow_up: vector does not live on J^perp/J");
  SVec e = embed_conductor(v, D.conductor());
  SVec out(D.conductor(), D.size());
  const int M = D.conductor();
  for (int g = 0; g < D.size(); ++g) {
    int a = Q.proj[g];
    if (a < 0 || !e.entry_nonzero_raw(a)) continue;
    std::copy(e.at(a), e.at(a) + M, out.at(g));
  }
  out.s = mono_mul(e.s, mono_inv_sqrt(J.order()), M);
  return out;
}

SVec scale(const CycNumber& c, const SVec& v) {
  if (c.is_zero() || sgn(v.s.r) == 0) {
    SVec z(v.M, v.n);
    z.s.r = 0;
    return z;
  }
  return combine({{c, v}});
}

// ---------------------------------------------------------------------------

namespace {

IndexedVector same_kind(const IndexedVector& vec, const Pair& u, const BContext* ctx) {
  switch (vec.kind) {
    case VecKind::A: return a_vector(vec.H, u.eta, u.lambda);
    case VecKind::ASym: return a_vector_sym(vec.H, u.eta, u.lambda, vec.sign);
    case VecKind::B: return b_vector(*ctx, u.eta, u.lambda, false);
  }
  return {};
}

}  // namespace

Prediction predicted_action(const MpWord& w, const IndexedVector& vec, const BContext* ctx) {
  const FormPtr& F = vec.H.form();
  const DiscForm& D = *F;
  const int M = D.conductor();
  const Pair v{vec.eta, vec.lambda};
  const Mat2 m = w.matrix();
  Prediction pr;
  if (vec.kind != VecKind::B) {
    if (classify(vec.H) == SubgroupKind::generic || orthogonal_complement(vec.H) != vec.H)
      throw InputError("no closed form: H is not self-dual quasi-isotropic; use rho_word");
    int xi = classify(vec.H) == SubgroupKind::isotropic ? 0 : xi_H(vec.H);
    Pair u = star_action(D, w, v, xi);
    pr.scalar = (chi(D, w) * e_of(q_tilde(D, w, v, xi), M)).reduced();
    pr.image = same_kind(vec, u, ctx);
  } else {
    if (!ctx) throw InputError("B-kind prediction needs its context");
    if (classify(ctx->J) != SubgroupKind::isotropic) throw InputError("no closed form: J is not isotropic");
    if (in_Jperp(*ctx, v.eta) && in_Jperp(*ctx, v.lambda))
      throw InputError("no closed form: both indices lie in J^perp; use rho_word");
    // Compose the generator formulas right to left.
    CycNumber s(1);
    Pair u = v;
    const int xi = ctx->lift.xi;
    auto stepS = [&](Pair& x) {
      s *= eps_S(*ctx, x) * e_of(-D.b(x.lambda, x.eta), M);
      x = b_step_S(*ctx, x);
    };
    const auto& L = w.letters();
    for (size_t i = L.size(); i-- > 0;) {
      switch (L[i]) {
        case Letter::T:
        case Letter::Tinv: {
          long sgn_t = L[i] == Letter::T ? 1 : -1;
          s *= e_of(Rational(sgn_t) * D.q(u.lambda), M);
          u = b_step_T(*ctx, u, sgn_t);
          break;
        }
        case Letter::S: stepS(u); break;
        case Letter::Sinv: {
          Pair x = b_step_S_preimage(*ctx, u);
          s *= (eps_S(*ctx, x) * e_of(-D.b(x.lambda, x.eta), M)).inverse();
          u = x;
          break;
        }
        case Letter::Z:
          stepS(u);
          stepS(u);
          break;
      }
    }
    pr.image = b_vector(*ctx, u.eta, u.lambda, false);
    pr.scalar = s.reduced();
    Pair target = star_action(D, w, v, xi);
    IndexedVector bt = b_vector(*ctx, target.eta, target.lambda, false);
    CycNumber rel = inner(bt.coords, pr.image.coords);
    pr.star_index = !rel.is_zero() && equal(pr.image.coords, scale(rel, bt.coords));
    pr.epsilon = (pr.scalar * (pr.star_index ? rel : CycNumber(1)) * e_of(-q_cocycle(D, m, v), M)).reduced();
  }
  SVec actual = apply(D, w, vec.coords);
  pr.verified = equal(actual, scale(pr.scalar, pr.image.coords));
  return pr;
}

}  // namespace weilrep
