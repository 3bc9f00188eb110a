#pragma once

#include <optional>
#include <vector>

#include "weilrep/weil.hpp"

namespace weilrep {

enum class VecKind { A, ASym, B };
std::string to_string(VecKind k);

struct IndexedVector {
  VecKind kind = VecKind::A;
  Subgroup H;
  std::optional<Subgroup> J;
  int eta = 0, lambda = 0;
  int sign = 1;       // ASym: the character value on -Id
  bool zero = false;  // ASym vanishing case
  long l = -1;        // B: the index l, -1 when lambda lies in J^perp
  SVec coords;
};

// (1/sqrt|H|) sum_{g in H} e((g, eta)) e_{lambda + g}
SVec a_coords(const Subgroup& H, int eta, int lambda);
IndexedVector a_vector(const Subgroup& H, int eta, int lambda);
// (a_{eta,lambda} + sign a_{-eta,-lambda}) / sqrt 2, collapsing to a_{eta,lambda} or 0
// when the two terms are proportional.
IndexedVector a_vector_sym(const Subgroup& H, int eta, int lambda, int sign);

// Data behind the rescaled Gauss sum over H^perp/H for a quasi-isotropic H.
struct TwistedGauss {
  long l = 1;
  int xi = 0;      // the twist vector used
  long k = 1;      // solution of the congruences on k
  int sgn_A0 = 0;  // signature of the rescaled form A0(l)
};
TwistedGauss twisted_gauss_data(const Subgroup& H, long l, int xi);
struct MilgramTwisted {
  CycNumber sum, closed_form;
  TwistedGauss data;
};
// Direct sum over H^perp/H of e(l q(s) - (s, xi_{l,H})) next to its closed form.
MilgramTwisted milgram_twisted(const Subgroup& H, long l);

// Everything b-vectors over (H, J) need, computed once.
struct BContext {
  FormPtr D;
  Subgroup H, Hp, H0, J, Jp;
  ComplementLift lift;
  long p = 0;
  int jgen = 0;
  std::vector<int> A_reps;           // representatives of H^perp/H
  std::vector<TwistedGauss> gauss;   // index l in [1, p)
  bool isotropic = false;
};
BContext make_bcontext(const Subgroup& H, const Subgroup& J);
bool in_Jperp(const BContext& c, int x);
long b_index_l(const BContext& c, int eta, int lambda);  // -1 if lambda in J^perp
int xi_l(const BContext& c, long l);                      // 0 for even l, xi_{H,H~} for odd l
IndexedVector b_vector(const BContext& c, int eta, int lambda, bool self_check = true);
// The root of unity eps_J(S, v) for rho(S) b_v = eps e(-(lambda, eta)) b_{-lambda, eta}.
CycNumber eps_S(const BContext& c, const Pair& v);
// Generator steps on b-indices: rho(T^s) b_v = e(s q(lambda)) b_{v'} and
// rho(S) b_v = eps_S(v) e(-(lambda, eta)) b_{v'}. The returned v' carries the exact
// first index; for p = 2 it can differ from eta + s lambda + s xi (resp. -lambda) by
// the correction coming from rho(T^p) on a^{H^perp}.
Pair b_step_T(const BContext& c, const Pair& v, long s);
Pair b_step_S(const BContext& c, const Pair& v);
// The u with b_step_S(c, u) = v.
Pair b_step_S_preimage(const BContext& c, const Pair& v);

// Arrow operator C[J^perp/J] -> C[D] through the quotient map of J.
SVec arrow_up(const Subgroup& J, const QuotientMap& Q, const SVec& v);
SVec embed_conductor(const SVec& v, int M2);
// c * v for a field element c.
SVec scale(const CycNumber& c, const SVec& v);

struct Prediction {
  CycNumber scalar;
  IndexedVector image;
  bool verified = false;
  // B-kind: whether the image is a multiple of b_{M*v} (always for odd p), and the
  // root of unity eps with rho(M) b_v = eps e(Q(M, v)) b_{M*v}, or relative to the
  // composed image when star_index is false.
  bool star_index = true;
  CycNumber epsilon;
};
// Closed-form action of the word on the vector, checked against the actual action.
// A and ASym kinds need H self-dual quasi-isotropic; B needs J isotropic and
// (eta, lambda) not both in J^perp.
Prediction predicted_action(const MpWord& w, const IndexedVector& vec, const BContext* ctx = nullptr);

}  // namespace weilrep
