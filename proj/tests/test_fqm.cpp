#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "weilrep/corpus.hpp"
#include "weilrep/fqm.hpp"

using namespace weilrep;

namespace {

// Signature read off the Gauss sum by brute force over all 8th roots of unity.
int brute_signature(const DiscForm& D) {
  const int M = D.conductor();
  CycNumber g = CycNumber::zero(M);
  for (int x = 0; x < D.size(); ++x) g += e_of(D.q(x), M);
  CycNumber r = sqrt_nat(D.size(), M);
  for (int s = 0; s < 8; ++s)
    if (g == e_of(frac(s, 8), M) * r) return s;
  return -1;
}

}  // namespace

TEST_CASE("construction and signature") {
  auto D = DiscForm::make({2}, {frac(1, 4)}, {});
  CHECK(D->signature() == 1);
  CHECK(brute_signature(*D) == 1);
  CHECK(DiscForm::make({3}, {frac(1, 3)}, {})->signature() == 2);
  auto U = DiscForm::make({2, 2}, {0, 0}, {{0, 1, frac(1, 2)}});
  CHECK(U->signature() == 0);
  CHECK(DiscForm::trivial()->signature() == 0);
  CHECK(DiscForm::trivial()->size() == 1);
  // degenerate and ill-defined forms are rejected
  CHECK_THROWS_AS(DiscForm::make({2}, {frac(1, 2)}, {}), InputError);
  CHECK_THROWS_AS(DiscForm::make({3}, {frac(1, 2)}, {}), InputError);
  CHECK_THROWS_AS(DiscForm::make({4}, {frac(1, 4)}, {}), InputError);
}

TEST_CASE("builtin symbols") {
  auto U6 = builtin("U(6)");
  CHECK(U6->size() == 36);
  CHECK(U6->level() == 6);
  CHECK(U6->signature() == 0);
  CHECK(U6->q(U6->index({1, 1})) == frac(1, 6));
  CHECK(builtin("3^+1 ⊕ 3^+1")->signature() == 4);
  CHECK(builtin("3^+1 (+) 3^+1")->size() == 9);
  CHECK(builtin("3^+1")->signature() == 6);
  CHECK(builtin("3^-1")->signature() == 2);
  CHECK(builtin("2_1^+1")->signature() == 1);
  CHECK(builtin("1")->size() == 1);
  auto K = builtin("2_II^-2");
  CHECK(K->size() == 4);
  CHECK(K->signature() == 4);
  for (int g = 1; g < 4; ++g) CHECK(K->q(g) != 0);
  CHECK(builtin("Z(27,2)")->q(1) == frac(1, 27));
  CHECK_THROWS_AS(builtin("7^+0"), InputError);
  CHECK_THROWS_AS(builtin("2_2^+1"), InputError);
  CHECK_THROWS_AS(builtin("foo"), InputError);
  CHECK_THROWS_AS(builtin("3^+1 ⊕"), InputError);
}

TEST_CASE("hyperbolic planes have signature 0") {
  for (const auto& g : abelian_groups(16)) {
    std::string s = "UG(";
    for (size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + std::to_string(g[i]);
    CHECK(builtin(s + ")")->signature() == 0);
  }
}

TEST_CASE("quadratic and bilinear forms on the corpus") {
  for (const auto& e : property_corpus()) {
    const DiscForm& D = *e.form;
    if (D.size() > 48) continue;
    CHECK(D.q(0) == 0);
    CHECK(brute_signature(D) == D.signature());
    for (int x = 0; x < D.size(); ++x) {
      CHECK(D.b(x, x) == mod1(2 * D.q(x)));
      for (long a : {2L, 3L, -1L}) CHECK(D.q(D.mul(a, x)) == mod1(a * a * D.q(x)));
      // nondegenerate
      if (x) {
        bool pairs = false;
        for (int y = 0; y < D.size() && !pairs; ++y) pairs = D.b(x, y) != 0;
        CHECK(pairs);
      }
    }
  }
  auto U = builtin("U(2)");
  CHECK(U->b(U->index({1, 0}), U->index({0, 1})) == frac(1, 2));
}

TEST_CASE("orthogonal complements and classification") {
  auto U = builtin("U(2)");
  Subgroup E(U, {U->index({1, 0})});
  CHECK(orthogonal_complement(E) == E);
  CHECK(orthogonal_complement(Subgroup::zero(U)) == Subgroup::whole(U));
  CHECK(classify(E) == SubgroupKind::isotropic);
  auto Z9 = builtin("Z(9,2)");
  REQUIRE(Z9->q(1) == frac(1, 9));
  Subgroup H3(Z9, {3});
  CHECK(orthogonal_complement(H3) == H3);

  auto D = builtin("2_1^+1⊕2_1^+1");
  Subgroup H(D, {D->index({1, 1})});
  CHECK(classify(H) == SubgroupKind::quasi_isotropic);
  int xi = xi_H(H);
  CHECK(orthogonal_complement(H).coset_min(xi) == orthogonal_complement(H).coset_min(D->index({1, 0})));
  CHECK(maximal_isotropic_in(H).order() == 1);
  CHECK(xi_l_H(H, 2) == 0);
}

TEST_CASE("maximal isotropic subgroup has index at most 2") {
  for (const char* s : {"2_1^+1⊕2_1^+1", "U(4)", "4_1^+1⊕2_1^+1", "2_1^+1⊕2_7^+1⊕2_II^-2", "U(6)"}) {
    auto D = builtin(s);
    for (const auto& H : enumerate_subgroups(D, SubgroupFilter::quasi_isotropic)) {
      auto H0 = maximal_isotropic_in(H);
      CHECK(H0.is_subgroup_of(H));
      CHECK((H.order() == H0.order() || H.order() == 2 * H0.order()));
      CHECK(classify(H0) == SubgroupKind::isotropic);
    }
  }
}

TEST_CASE("quotient forms") {
  auto U = builtin("U(2)");
  Subgroup E(U, {U->index({1, 0})});
  CHECK(quotient_form(E).A->size() == 1);
  auto Z27 = builtin("Z(27,2)");
  REQUIRE(Z27->q(1) == frac(1, 27));
  auto Q = quotient_form(Subgroup(Z27, {9}));
  CHECK(Q.A->size() == 3);
  CHECK(Q.A->q(Q.proj[3]) == frac(1, 3));
  CHECK(Q.A->signature() == Z27->signature());
  auto Q0 = quotient_form(Subgroup::zero(Z27));
  CHECK(Q0.A->size() == 27);
  for (int g = 0; g < 27; ++g) CHECK(Q0.A->q(Q0.proj[g]) == Z27->q(g));
}

TEST_CASE("subgroup enumeration and Sylow parts") {
  CHECK(enumerate_subgroups(builtin("7^+1")).size() == 2);
  auto subs = enumerate_subgroups(builtin("U(2)"));
  std::multiset<int> orders;
  for (const auto& H : subs) orders.insert(H.order());
  CHECK(orders == std::multiset<int>{1, 2, 2, 2, 4});
  auto parts = sylow_decompose(builtin("2_II^-2⊕3^+1"));
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].form->size() * parts[1].form->size() == 12);
  // subgroup equality is canonical
  auto D = builtin("U(2)");
  CHECK(Subgroup(D, {1, 2}) == Subgroup(D, {3, 1}));
  for (const auto& H : subs) CHECK(4 % H.order() == 0);
}

// Complements are lifted in groups of prime exponent.
TEST_CASE("lifted complements") {
  for (const char* s : {"2_1^+1⊕2_1^+1", "U(2)", "3^-2", "2_1^+1⊕2_7^+1⊕2_II^-2", "U(3)"}) {
    auto D = builtin(s);
    for (const auto& H : enumerate_subgroups(D, SubgroupFilter::quasi_isotropic)) {
      auto lc = lift_complement(H);
      // xi has order at most 2 modulo H
      CHECK(H.contains(D->mul(2, lc.xi)));
      if (classify(H) == SubgroupKind::isotropic) {
        CHECK(lc.lift == orthogonal_complement(H));
        CHECK(H.contains(lc.xi));
      }
    }
  }
}
