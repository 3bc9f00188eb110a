#pragma once

#include <cstdint>
#include <vector>

#include "weilrep/exactnum.hpp"

namespace weilrep {

// Exact scalar r * zeta_M^k * sqrt(n), n squarefree. Closed under products,
// which is all the Weil representation ever produces on a-type vectors.
struct Mono {
  Rational r{1};
  long k = 0;
  long n = 1;
};

Mono mono_mul(const Mono& a, const Mono& b, int M);
Mono mono_inv(const Mono& a, int M);
Mono mono_conj(const Mono& a, int M);
Mono mono_root(long k);
Mono mono_rational(const Rational& r);
Mono mono_inv_sqrt(long n);  // 1/sqrt(n), n any positive integer
CycNumber mono_value(const Mono& a, int M);

// Integer polynomial helpers in Z[x]/(x^M - 1).
void reduce_int_mod_phi(int M, int64_t* a);  // length M in, canonical (zeros above phi) out
int64_t max_abs(const int64_t* a, int len);

// Vector of n entries in Q(zeta_M), stored as scale * (integer polynomials mod x^M - 1).
class SVec {
 public:
  SVec() = default;
  SVec(int M, int n);
  static SVec unit(int M, int n, int i);

  int M = 1;
  int n = 0;
  Mono s;
  std::vector<int64_t> c;

  int64_t* at(int i) { return c.data() + static_cast<size_t>(i) * M; }
  const int64_t* at(int i) const { return c.data() + static_cast<size_t>(i) * M; }
  bool entry_nonzero_raw(int i) const;
  bool is_zero() const;
  CycNumber entry(int i) const;
  std::vector<CycNumber> entries() const;
  void rotate_entry(int i, long k);
  // Reduce every entry mod Phi_M and move the common content into the scale.
  void tidy();
  int64_t max_abs() const;
};

SVec operator*(const Mono& m, SVec v);
CycNumber inner(const SVec& x, const SVec& y);  // sum conj(x_i) y_i
bool equal(const SVec& x, const SVec& y);
// Exact linear combination sum coef_t * v_t; coefficients are arbitrary field elements.
SVec combine(const std::vector<std::pair<CycNumber, SVec>>& terms);
SVec from_entries(int M, const std::vector<CycNumber>& e);

}  // namespace weilrep
