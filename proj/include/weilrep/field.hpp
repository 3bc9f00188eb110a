#pragma once

#include <vector>

#include "weilrep/exactnum.hpp"

namespace weilrep {

// Q(zeta_M) in canonical coordinates (length phi(M)); the workhorse for exact
// linear algebra. M = 1 gives plain rational linear algebra.
class Field {
 public:
  using Elt = std::vector<Rational>;

  explicit Field(int M);
  int conductor() const { return M_; }
  int degree() const { return phi_; }

  Elt zero() const { return Elt(phi_); }
  Elt one() const;
  Elt from(const CycNumber& z) const;
  CycNumber to_cyc(const Elt& a) const;
  bool is_zero(const Elt& a) const;
  bool is_one(const Elt& a) const;
  Elt mul(const Elt& a, const Elt& b) const;
  Elt inv(const Elt& a) const;
  void add_to(Elt& acc, const Elt& a) const;
  // acc -= f * a
  void submul(Elt& acc, const Elt& f, const Elt& a) const;

 private:
  int M_, phi_;
  std::vector<std::vector<long>> red_;  // x^(phi + j) mod Phi_M
};

struct FMatrix {
  int rows = 0, cols = 0;
  std::vector<Field::Elt> a;
  FMatrix() = default;
  FMatrix(const Field& F, int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, F.zero()) {}
  Field::Elt& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Field::Elt& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(const Field& F, FMatrix& A);
int rank(const Field& F, FMatrix A);
// Basis of {x : A x = 0}, one vector per free column (free entry = 1).
std::vector<std::vector<Field::Elt>> kernel(const Field& F, FMatrix A);
FMatrix inverse(const Field& F, const FMatrix& A);  // throws if singular
FMatrix multiply(const Field& F, const FMatrix& A, const FMatrix& B);

}  // namespace weilrep
