#pragma once

#include <string>
#include <vector>

#include "weilrep/vectors.hpp"

namespace weilrep {

// One closed-form identity: lhs (computed through rho) against a linear
// combination of indexed vectors.
struct Term {
  CycNumber coef;
  IndexedVector vec;
};
struct Expansion {
  std::string name;
  SVec lhs;
  std::vector<Term> rhs;
  bool holds = false;
};

// rho(S) a^H_{eta,lambda} = e(-sgn/8) e(-(lambda, eta)) a^{H^perp}_{-lambda, eta}
Expansion s_image_identity(const Subgroup& H, int eta, int lambda);
// rho(T^l) a^H_{eta,lambda} = e(l q(lambda)) a^H_{eta + l lambda + xi_{l,H}, lambda}; (H, H) in (1/l)Z/Z
Expansion t_power_image_identity(const Subgroup& H, long l, int eta, int lambda);
// The same two identities for the symmetrized vectors.
Expansion sym_s_image_identity(const Subgroup& H, int eta, int lambda, int sign);
Expansion sym_t_power_image_identity(const Subgroup& H, long l, int eta, int lambda, int sign);
// a^K through a^H for H <= K, and rho(T^l) a^K through a^H; with K <= H^perp also the
// variant without l tau in the first index.
std::vector<Expansion> subgroup_change_identities(const Subgroup& H, const Subgroup& K, long l, int eta, int lambda);
// rho(S T^l) a^{H^perp}_{eta,lambda} through rho(T^-k) a^{H^perp}; H quasi-isotropic, l prime to |H^perp/H|.
Expansion st_power_image_identity(const Subgroup& H, long l, int eta, int lambda);

// Smallest l >= 1 with (H, H) in (1/l)Z/Z.
long pairing_exponent(const Subgroup& H);

}  // namespace weilrep
