#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>

#include "weilrep/cyclic.hpp"
#include "weilrep/invariants.hpp"

using namespace weilrep;

namespace {

using cd = std::complex<double>;

cd num(const CycNumber& z) {
  cd s = 0;
  const int M = z.conductor();
  for (int k = 0; k < M; ++k) s += z.raw()[k].get_d() * std::polar(1.0, 2 * M_PI * k / M);
  return s;
}

// Floating-point nullity of (rho(T) - I; rho(S) - I) by Gaussian elimination with pivoting.
long numeric_nullity(const FormPtr& D) {
  const int n = D->size();
  auto T = rho_T(D).entries, S = rho_S(D).entries;
  std::vector<std::vector<cd>> A;
  for (const auto* R : {&T, &S})
    for (int i = 0; i < n; ++i) {
      std::vector<cd> row(n);
      for (int j = 0; j < n; ++j) row[j] = num((*R)[i][j]) - (i == j ? 1.0 : 0.0);
      A.push_back(row);
    }
  long rank = 0;
  for (int col = 0; col < n && rank < static_cast<long>(A.size()); ++col) {
    size_t piv = rank;
    for (size_t r = rank; r < A.size(); ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (std::abs(A[piv][col]) < 1e-8) continue;
    std::swap(A[piv], A[rank]);
    for (size_t r = 0; r < A.size(); ++r) {
      if (r == static_cast<size_t>(rank)) continue;
      cd f = A[r][col] / A[rank][col];
      for (int j = col; j < n; ++j) A[r][j] -= f * A[rank][j];
    }
    ++rank;
  }
  return n - rank;
}

// Average of trace rho(m) over every m in SL2(Z/N), each lifted and turned into a word.
long brute_frobenius(const FormPtr& D) {
  const long N = D->level();
  const int M = D->conductor();
  CycNumber sum = CycNumber::zero(M);
  long count = 0;
  for (long a = 0; a < N; ++a)
    for (long b = 0; b < N; ++b)
      for (long c = 0; c < N; ++c)
        for (long d = 0; d < N; ++d) {
          if (((a * d - b * c) % N + N) % N != 1 % N) continue;
          ++count;
          auto R = rho_word(D, matrix_to_word(lift_sl2({a, b, c, d}, N))).entries;
          for (int i = 0; i < D->size(); ++i) sum += R[i][i];
        }
  CHECK(count == sl2_order(N));
  Rational avg = sum.rational_value() / Rational(count);
  REQUIRE(avg.get_den() == 1);
  return avg.get_num().get_si();
}

}  // namespace

TEST_CASE("SL2 orders and classes") {
  CHECK(sl2_order(1) == 1);
  CHECK(sl2_order(2) == 6);
  CHECK(sl2_order(3) == 24);
  CHECK(sl2_order(4) == 48);
  CHECK(sl2_order(12) == 1152);
  for (long N : {2L, 3L, 4L, 5L, 6L, 8L, 12L}) {
    long total = 0;
    for (const auto& c : sl2_classes(N)) {
      total += c.size;
      CHECK(mat_mod(c.word.matrix(), N) == mat_mod(c.rep, N));
    }
    CHECK(total == sl2_order(N));
  }
  Mat2 m = lift_sl2({2, 3, 1, 2}, 5);
  CHECK(m[0] * m[3] - m[1] * m[2] == 1);
  CHECK(mat_mod(m, 5) == Mat2{2, 3, 1, 2});
}

TEST_CASE("kernel dimension matches a floating-point rank") {
  for (const char* s : {"U(2)", "U(3)", "U(4)", "2_II^-2", "3^-2", "3^+2", "5^+1⊕5^+1", "2_II^-2⊕2_II^-2",
                        "UG(2,2)", "3^+1", "2_1^+1⊕2_7^+1", "4_1^+1⊕4_7^+1", "U(6)"}) {
    auto D = builtin(s);
    CAPTURE(s);
    CHECK(invariant_subspace(D).dim_kernel == numeric_nullity(D));
  }
}

TEST_CASE("Frobenius dimension matches a brute-force trace average") {
  for (const char* s : {"U(2)", "U(3)", "U(4)", "2_II^-2", "3^-2", "3^+2", "2_1^+1⊕2_7^+1", "UG(2,2)"}) {
    auto D = builtin(s);
    CAPTURE(s);
    long brute = brute_frobenius(D);
    CHECK(dim_frobenius(D) == brute);
    CHECK(invariant_subspace(D).dim_kernel == brute);
  }
}

TEST_CASE("known invariant dimensions") {
  CHECK(invariant_subspace(builtin("U(2)")).dim_kernel == 2);
  CHECK(invariant_subspace(builtin("U(6)")).dim_kernel == 4);
  CHECK(invariant_subspace(builtin("UG(2,2)")).dim_kernel == 5);
  CHECK(invariant_subspace(builtin("UG(4,4)")).dim_kernel == 16);
  CHECK(invariant_subspace(builtin("3^+1")).dim_kernel == 0);
  CHECK(invariant_subspace(builtin("1")).dim_kernel == 1);
  for (long N = 1; N <= 12; ++N) CHECK(dim_hyperbolic({N}).dim == sigma0(N));
  CHECK(dim_hyperbolic({2, 2}).dim == 5);
  CHECK(dim_hyperbolic({2, 2, 2, 2}).dim == 51);
}

TEST_CASE("closed counts") {
  CHECK(psi_dedekind(1) == 1);
  CHECK(psi_dedekind(6) == 12);
  CHECK(psi_dedekind(9) == 12);
  for (long N = 1; N <= 12; ++N)
    for (long M = 1; M <= N; ++M)
      if (N % M == 0 && N * M <= 64) {
        CAPTURE(N);
        CAPTURE(M);
        CHECK(dim_DNM(N, M) == dim_hyperbolic({N, M}).dim);
      }
  CHECK(dim_DNM_prime_power(2, 2, 1) == dim_DNM(4, 2));
  CHECK(dim_DNM_prime_power(3, 2, 2) == dim_DNM(9, 9));
  CHECK(dim_DNM_M_prime(12, 2) == dim_DNM(12, 2));
  CHECK(dim_DNM_M_prime(6, 3) == dim_DNM(6, 3));
  bool ok = false;
  CHECK(dim_fpvs(2, 4, 0, &ok) == 51);
  CHECK(ok);
  auto sh = fpvs_shape(builtin("UG(2,2,2,2)"));
  REQUIRE(sh);
  CHECK(sh->p == 2);
  CHECK(sh->d == 4);
  CHECK(sh->r == 0);
  CHECK_FALSE(fpvs_shape(builtin("U(4)")));
}

TEST_CASE("orbit counts on generating pairs") {
  for (long m : {1L, 2L, 3L, 4L, 6L})
    for (long n : {m, 2 * m, 3 * m}) {
      CAPTURE(n);
      CAPTURE(m);
      CHECK(slnm_orbit_count(n, m) == euler_phi(m));
    }
}

TEST_CASE("triviality and reports") {
  CHECK(triviality_check(builtin("2_1^+1")) == Triviality::odd_signature);
  CHECK(invariant_subspace(builtin("2_1^+1")).dim_kernel == 0);
  auto r = invariant_report(builtin("U(6)"), InvMethod::all, std::vector<long>{6});
  CHECK(r.dim_kernel == 4);
  CHECK(r.agreement);
  REQUIRE(r.dim_frobenius);
  CHECK(*r.dim_frobenius == 4);
  REQUIRE_FALSE(r.formulas.empty());
  CHECK(r.formulas[0].value == 4);
  CHECK(r.rational);
  CHECK(r.integer_basis.size() == 4);
  CHECK(parse_method("kernel") == InvMethod::kernel);
  CHECK_THROWS_AS(parse_method("guess"), InputError);
}

TEST_CASE("hyperbolic cyclic basis") {
  for (long N = 1; N <= 12; ++N) {
    auto B = basis_U_N(N);
    CAPTURE(N);
    CHECK(static_cast<long>(B.vectors.size()) == sigma0(N));
    CHECK(B.invariant);
    CHECK(B.independent);
    CHECK(B.arrow_identity);
  }
}

TEST_CASE("special invariants and spanning sets") {
  for (const char* s : {"3^-4", "2_II^-4"}) {
    auto D = builtin(s);
    auto v = special_invariant(D);
    CAPTURE(s);
    CHECK(v.invariant);
    CHECK(v.spans);
  }
  for (const char* s : {"U(2)", "U(6)", "UG(2,2)", "3^-2"}) {
    auto D = builtin(s);
    auto rep = invariant_subspace(D);
    auto sc = self_dual_span(D, rep);
    CAPTURE(s);
    CHECK(sc.invariant);
    CHECK(sc.spans());
  }
}

TEST_CASE("cyclic decompositions") {
  for (const char* s : {"Z(9,2)", "Z(12,1)", "Z(8,1)", "Z(25,2)", "Z(27,2)", "Z(5,2)", "Z(16,1)"}) {
    auto c = cyclic_decomposition(builtin(s));
    CAPTURE(s);
    CHECK(c.ok());
    CHECK(c.orthogonal);
    CHECK(c.complete);
    size_t dim = 0;
    for (const auto& x : c.components) {
      dim += x.basis.size();
      CHECK(x.invariant);
    }
    CHECK(static_cast<long>(dim) == c.N);
  }
  CHECK_THROWS_AS(cyclic_decomposition(builtin("U(2)")), InputError);
}
