#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace weilrep {

using Rational = mpq_class;
using Integer = mpz_class;

// Raised for malformed or out-of-contract user input (CLI exit code 2).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an internal cross-check fails.
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string to_string(const Rational& r);  // always "a/b"
Rational parse_rational(const std::string& s);
Rational mod1(const Rational& r);  // representative in [0, 1)
bool is_integer(const Rational& r);
// a/b in lowest terms (mpq_class(a, b) does not canonicalize).
inline Rational frac(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

long gcd_l(long a, long b);
long lcm_l(long a, long b);
long mod_l(long a, long m);  // in [0, m)
long euler_phi(long n);
long sigma0(long n);
std::vector<std::pair<long, int>> factorize(long n);
std::vector<long> divisors(long n);
bool is_prime(long n);
int legendre(long a, long p);  // p odd prime
long inv_mod(long a, long m);  // throws if not invertible

// Coefficients of the M-th cyclotomic polynomial, ascending, monic of degree phi(M).
const std::vector<long>& cyclotomic_poly(int M);

// Element of Q(zeta_M), stored mod x^M - 1.
class CycNumber {
 public:
  CycNumber();
  static CycNumber zero(int M);
  CycNumber(const Rational& r, int M = 1);
  CycNumber(long v, int M = 1) : CycNumber(Rational(v), M) {}

  static CycNumber root_of_unity(long a, int M);
  static CycNumber from_canonical(int M, const std::vector<Rational>& c);
  static CycNumber from_raw(int M, std::vector<Rational> c);

  int conductor() const { return M_; }
  const std::vector<Rational>& raw() const { return c_; }
  std::vector<Rational> canonical() const;
  CycNumber reduced() const;  // canonical representative, same conductor
  CycNumber embed(int M2) const;
  // Smallest conductor whose field contains this element (divisor of M).
  int minimal_conductor() const;

  CycNumber conj() const;
  CycNumber inverse() const;
  bool is_zero() const;
  bool is_integral() const;
  bool is_rational() const;
  Rational rational_value() const;  // throws unless is_rational()

  CycNumber& operator+=(const CycNumber& o);
  CycNumber& operator-=(const CycNumber& o);
  CycNumber& operator*=(const CycNumber& o);
  CycNumber& operator/=(const CycNumber& o);
  CycNumber operator-() const;

  friend CycNumber operator+(CycNumber a, const CycNumber& b) { return a += b; }
  friend CycNumber operator-(CycNumber a, const CycNumber& b) { return a -= b; }
  friend CycNumber operator*(CycNumber a, const CycNumber& b) { return a *= b; }
  friend CycNumber operator/(CycNumber a, const CycNumber& b) { return a /= b; }
  friend bool operator==(const CycNumber& a, const CycNumber& b);
  friend bool operator!=(const CycNumber& a, const CycNumber& b) { return !(a == b); }

  std::string str() const;

 private:
  struct Tag {};
  CycNumber(Tag, int M);
  int M_;
  std::vector<Rational> c_;
};

// Reduce a length-M coefficient vector mod Phi_M in place; the result has length phi(M).
std::vector<Rational> reduce_mod_phi(int M, std::vector<Rational> c);

// Smallest conductor M with sqrt(n) in Q(zeta_M).
int sqrt_min_conductor(long n);
// Positive square root of n inside Q(zeta_M); throws InputError naming the minimal conductor.
CycNumber sqrt_nat(long n, int M);
// Integer coefficients (mod x^M - 1) of the algebraic integer sqrt(n), n squarefree.
std::vector<long> sqrt_squarefree_poly(long n, int M);

// e(x) for rational x, at a conductor M with denominator(x) | M.
CycNumber e_of(const Rational& x, int M);

}  // namespace weilrep
