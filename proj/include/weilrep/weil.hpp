#pragma once

#include <array>
#include <random>
#include <string>
#include <vector>

#include "weilrep/fqm.hpp"
#include "weilrep/zvec.hpp"

namespace weilrep {

// 2x2 integer matrix (a, b, c, d) = [[a, b], [c, d]].
using Mat2 = std::array<long, 4>;
Mat2 mat_mul(const Mat2& x, const Mat2& y);
Mat2 mat_mod(const Mat2& x, long N);  // entries in [0, N)
std::string to_string(const Mat2& m);

enum class Letter { T, Tinv, S, Sinv, Z };

// Word in the generators of Mp2(Z). The letters are applied right to left, so
// the word "ST" acts as rho(S) rho(T).
class MpWord {
 public:
  MpWord() = default;
  explicit MpWord(std::vector<Letter> letters) : w_(std::move(letters)) {}
  // Tokens S, T, Z with optional integer exponent, e.g. "S T^-2 S", "STTS", "T^5 S^-1".
  static MpWord parse(const std::string& s);
  static MpWord T(long k = 1);
  static MpWord S(long k = 1);
  static MpWord Z(long k = 1);

  const std::vector<Letter>& letters() const { return w_; }
  size_t size() const { return w_.size(); }
  Mat2 matrix() const;  // image in SL2(Z)
  MpWord inverse() const;
  std::string str() const;
  MpWord operator*(const MpWord& o) const;

 private:
  std::vector<Letter> w_;
};

// A word for m in SL2(Z) built by Euclidean reduction of the first column.
// With nearest = true the quotients are rounded to the nearest integer, giving
// a different word for the same matrix.
MpWord matrix_to_word(const Mat2& m, bool nearest = false);
// Uniformly random letters from {T, T^-1, S, S^-1}, length in [1, max_len].
MpWord random_word(std::mt19937_64& rng, int max_len);

// The Weil representation on exact coefficient vectors (SVec at conductor D.conductor()).
void apply_T(const DiscForm& D, SVec& v, long l = 1);
void apply_S(const DiscForm& D, SVec& v, bool inverse = false);
void apply_Z(const DiscForm& D, SVec& v);
void apply_word(const DiscForm& D, const MpWord& w, SVec& v);
SVec apply(const DiscForm& D, const MpWord& w, SVec v);

// Dense matrix of rho(w) in the natural basis, entries[row][col].
struct RepMatrix {
  FormPtr form;
  std::vector<std::vector<CycNumber>> entries;
};
RepMatrix rho_T(const FormPtr& D);
RepMatrix rho_S(const FormPtr& D);
RepMatrix rho_word(const FormPtr& D, const MpWord& w);
bool is_unitary(const RepMatrix& R);

// Left cosets of Gamma_odd = <S, T^2> (index 3): 0 -> Gamma_odd, 1 -> T Gamma_odd,
// 2 -> ST Gamma_odd. chi is the character of Gamma_odd with chi(S) = e(-sgn/8),
// extended to Mp2(Z) through the coset representatives 1, T, ST; it is tracked as
// chi(w) = e(-sgn * chi_exp / 8).
struct CosetInfo {
  int coset = 0;
  long chi_exp = 0;
};
CosetInfo gamma_odd_coset(const MpWord& w);
int coset_mod2(const Mat2& m);  // the same coset read off from m mod 2
CycNumber chi(const DiscForm& D, const MpWord& w);

// v = (eta, lambda) in D^2, acted on as a column vector.
struct Pair {
  int eta = 0, lambda = 0;
  bool operator==(const Pair& o) const { return eta == o.eta && lambda == o.lambda; }
};
Pair act(const DiscForm& D, const Mat2& m, const Pair& v);
// Q(M, v) = ac q(eta) + bd q(lambda) + bc (lambda, eta).
Rational q_cocycle(const DiscForm& D, const Mat2& m, const Pair& v);
// Twisted action and cocycle for a word, with the twist vector xi.
Pair star_action(const DiscForm& D, const MpWord& w, const Pair& v, int xi);
Rational q_tilde(const DiscForm& D, const MpWord& w, const Pair& v, int xi);

}  // namespace weilrep
