#pragma once

#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "weilrep/exactnum.hpp"

namespace weilrep {

class DiscForm;
using FormPtr = std::shared_ptr<const DiscForm>;

// Finite abelian group prod Z/n_i with a nondegenerate Q/Z-valued quadratic form.
// Elements are integers in [0, |D|): mixed radix with the first coordinate most
// significant, so index order is lexicographic order on coordinate tuples.
class DiscForm {
 public:
  struct Off {
    int i, j;
    Rational b;
  };

  DiscForm(std::vector<long> orders, std::vector<Rational> q_diag, std::vector<Off> b_off);
  static FormPtr make(std::vector<long> orders, std::vector<Rational> q_diag, std::vector<Off> b_off);
  static FormPtr trivial();

  const std::vector<long>& orders() const { return orders_; }
  const std::vector<Rational>& q_diag() const { return q_diag_; }
  const Rational& b_off(int i, int j) const { return b_[i][j]; }
  std::vector<Off> b_off_list() const;
  int rank() const { return static_cast<int>(orders_.size()); }
  int size() const { return size_; }
  long level() const { return level_; }
  long exponent() const { return exponent_; }
  int signature() const { return sgn_; }
  int conductor() const { return M_; }
  const CycNumber& gauss_sum() const { return gauss_; }

  std::vector<long> coords(int g) const;
  int index(const std::vector<long>& x) const;
  int add(int a, int b) const;
  int sub(int a, int b) const;
  int neg(int a) const;
  int mul(long k, int a) const;
  int order_of(int a) const;
  int generator(int i) const;  // the element e_i

  Rational q(int g) const;
  Rational b(int g, int h) const;
  long qexp(int g) const { return qexp_[g]; }  // M * q(g) mod M
  long bexp(int g, int h) const;              // M * b(g, h) mod M
  // psi(g)_j = n_j * b(g, e_j); encoded as an element index. Used by the DFT form of rho(S).
  int dual_index(int g) const { return dual_[g]; }

  std::string summary() const;

 private:
  void validate_and_cache();
  long bnum(int g, int h) const;  // level * b(g, h) mod level

  std::vector<long> orders_;
  std::vector<Rational> q_diag_;
  std::vector<std::vector<Rational>> b_;
  std::vector<long> stride_;
  int size_ = 1;
  long level_ = 1, exponent_ = 1;
  int M_ = 8;
  int sgn_ = 0;
  CycNumber gauss_;
  std::vector<long> qn_;                // level * q_i
  std::vector<std::vector<long>> bn_;   // level * b_ij (diagonal: 2 q_i)
  std::vector<long> qexp_;
  std::vector<int> dual_;
  std::vector<int> coord_cache_;  // size_ * rank
};

FormPtr orthogonal_sum(const std::vector<FormPtr>& parts);
// Same group, quadratic form multiplied by l.
FormPtr rescaled(const DiscForm& D, long l);

// Builtin symbol grammar; see builtin_grammar() for the accepted syntax.
FormPtr builtin(const std::string& symbol);
std::string builtin_grammar();

enum class SubgroupKind { generic, quasi_isotropic, isotropic };
std::string to_string(SubgroupKind k);

class Subgroup {
 public:
  Subgroup() = default;  // empty placeholder, no form attached
  Subgroup(FormPtr D, const std::vector<int>& generators);
  static Subgroup from_elements(FormPtr D, std::vector<int> sorted_elements);
  static Subgroup whole(FormPtr D);
  static Subgroup zero(FormPtr D);

  const FormPtr& form() const { return D_; }
  const std::vector<int>& elements() const { return elems_; }
  const std::vector<int>& gens() const { return gens_; }
  int order() const { return static_cast<int>(elems_.size()); }
  bool contains(int g) const { return member_[g] != 0; }
  bool operator==(const Subgroup& o) const { return elems_ == o.elems_; }
  bool operator!=(const Subgroup& o) const { return !(*this == o); }
  bool operator<(const Subgroup& o) const;
  bool is_subgroup_of(const Subgroup& o) const;
  // Least element of the coset g + H.
  int coset_min(int g) const;
  std::string str() const;

 private:
  void finish();
  FormPtr D_;
  std::vector<int> elems_;
  std::vector<char> member_;
  std::vector<int> gens_;
};

Subgroup orthogonal_complement(const Subgroup& H);
Subgroup subgroup_sum(const Subgroup& A, const Subgroup& B);
Subgroup subgroup_intersection(const Subgroup& A, const Subgroup& B);
SubgroupKind classify(const Subgroup& H);
// Lexicographically least xi with l q(g) = (g, xi) on H; needs (H, H) in (1/l)Z/Z.
int xi_l_H(const Subgroup& H, long l);
int xi_H(const Subgroup& H);
Subgroup maximal_isotropic_in(const Subgroup& H);
// Least representatives of K/H (H <= K), ascending.
std::vector<int> coset_reps(const Subgroup& K, const Subgroup& H);

struct QuotientMap {
  FormPtr A;
  std::vector<int> proj;     // D index -> A index, -1 outside K
  std::vector<int> section;  // A index -> least representative in D
};
// K/H with the form l*q; requires l*q to be well defined and nondegenerate there.
QuotientMap induced_form(const Subgroup& K, const Subgroup& H, long l = 1);
// H isotropic: H^perp / H; asserts sgn A = sgn D.
QuotientMap quotient_form(const Subgroup& H);

enum class SubgroupFilter { all, quasi_isotropic, isotropic };
constexpr int kDefaultMaxOrder = 256;
std::vector<Subgroup> enumerate_subgroups(const FormPtr& D, SubgroupFilter f = SubgroupFilter::all,
                                          int max_order = kDefaultMaxOrder);

struct SylowPart {
  long p;
  FormPtr form;
  std::vector<int> embed;  // part index -> D index
};
std::vector<SylowPart> sylow_decompose(const FormPtr& D);

struct ComplementLift {
  Subgroup lift;  // H~perp
  int xi;         // xi_{H,H~}
};
ComplementLift lift_complement(const Subgroup& H);

}  // namespace weilrep
