#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "weilrep/vectors.hpp"

namespace weilrep {

// Provenance of one basis column. kind is one of SelfDualA, QuasiA, BVec, Arrow,
// PrimeEven, PrimeOdd, TwoAdic, Tensor, Natural; Arrow carries the lifted column's
// tag and Tensor the tags of its factors.
struct BasisTag {
  std::string kind;
  std::string H, J, symbol;
  int eta = -1, lambda = -1;
  long l = -1, p = 0;
  int sign = 0;
  std::vector<BasisTag> inner;
};

struct BasisNode;

class BasisSpec {
 public:
  BasisSpec() = default;
  BasisSpec(FormPtr D, std::shared_ptr<const BasisNode> root) : form(std::move(D)), root(std::move(root)) {}

  FormPtr form;
  std::shared_ptr<const BasisNode> root;

  int size() const;
  // Column j in natural coordinates, at the conductor of the form.
  const SVec& column(int j) const;
  const BasisTag& tag(int j) const;
  std::vector<std::vector<CycNumber>> coords() const;  // [row][col]
  std::string node_kind() const;
  // Columns whose construction promises unit norm and mutual orthogonality.
  bool orthonormal() const;
};

// Recursive integral basis; throws InputError if |D| exceeds max_order.
BasisSpec integral_basis(const FormPtr& D, int max_order = kDefaultMaxOrder);
// Odd prime p with p^{sign 1}: rho(T^l) a^{D,+}_{0,0}, l <= (p-1)/2, and
// rho(T^l) a^{D,-}_{1,0}, l <= (p-3)/2.
BasisSpec prime_basis(long p, int sign);
BasisSpec prime_basis(const FormPtr& D);
// 2_t^{+-1}: a^D_{0,0} and rho(T) a^D_{0,0}.
BasisSpec two_adic_basis(const std::string& symbol);
BasisSpec two_adic_basis(const FormPtr& D);
BasisSpec natural_basis(const FormPtr& D);

// Coefficients of y in the basis, through the recursive left inverse.
std::vector<CycNumber> basis_coordinates(const BasisSpec& B, const SVec& y);
// True iff the left inverse maps every column to its unit vector.
bool left_inverse_check(const BasisSpec& B);

struct WordCheck {
  std::string word;
  Integer worst_denominator{1};
  bool integral = true;
};
struct IntegralityReport {
  std::vector<WordCheck> words;
  bool verdict = true;
};
// Conjugates rho(w) by B for w in {T, T^-1, S, S^-1} and random_words random words
// of length <= 10; throws ConsistencyError if B fails the left-inverse check.
IntegralityReport verify_integrality(const BasisSpec& B, int random_words = 50, uint64_t seed = 20240601);

}  // namespace weilrep
