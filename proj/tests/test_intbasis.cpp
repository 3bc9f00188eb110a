#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "weilrep/field.hpp"
#include "weilrep/intbasis.hpp"
#include "weilrep/vandermonde.hpp"

using namespace weilrep;

namespace {

CycNumber z(long a, int M) { return CycNumber::root_of_unity(a, M); }

// B^-1 rho(w) B by dense Gaussian elimination, independent of the recursive left inverse.
std::vector<std::vector<CycNumber>> conjugated(const BasisSpec& B, const MpWord& w) {
  const int n = B.size(), M = B.form->conductor();
  Field F(M);
  FMatrix Bm(F, n, n);
  auto c = B.coords();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Bm.at(i, j) = F.from(c[i][j]);
  FMatrix Bi = inverse(F, Bm);
  auto R = rho_word(B.form, w).entries;
  FMatrix Rm(F, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Rm.at(i, j) = F.from(R[i][j]);
  FMatrix X = multiply(F, Bi, multiply(F, Rm, Bm));
  std::vector<std::vector<CycNumber>> out(n, std::vector<CycNumber>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = F.to_cyc(X.at(i, j));
  return out;
}

bool all_integral(const std::vector<std::vector<CycNumber>>& X) {
  for (const auto& row : X)
    for (const auto& x : row)
      if (!x.is_integral()) return false;
  return true;
}

}  // namespace

TEST_CASE("2x2 Vandermonde factors by hand") {
  CycNumber x1 = z(1, 5), x2 = z(4, 5);
  auto lu = vandermonde_lu({x1, x2});
  CHECK(cmat_equal(lu.V, {{CycNumber(1), x1}, {CycNumber(1), x2}}));
  CHECK(cmat_equal(lu.L, {{CycNumber(1), CycNumber(0)}, {CycNumber(1), x2 - x1}}));
  CHECK(cmat_equal(lu.U, {{CycNumber(1), x1}, {CycNumber(0), CycNumber(1)}}));
  CHECK(cmat_equal(chain_product(lu), lu.L));
}

TEST_CASE("Vandermonde LU for squares of roots of unity") {
  for (int p : {5, 7, 11}) {
    std::vector<CycNumber> xs;
    for (long m = 0; m <= (p - 1) / 2; ++m) xs.push_back(z(m * m, p));
    auto lu = vandermonde_lu(xs);
    CHECK(cmat_equal(cmat_mul(lu.L, lu.U), lu.V));
    CHECK(cmat_equal(chain_product(lu), lu.L));
    // L is lower and U is unit upper triangular
    for (size_t i = 0; i < xs.size(); ++i)
      for (size_t j = i + 1; j < xs.size(); ++j) {
        CHECK(lu.L[i][j].is_zero());
        CHECK(lu.U[j][i].is_zero());
      }
  }
}

TEST_CASE("c-coefficients for p = 3") {
  CHECK(c_coefficients(3, 1, Parity::odd).c == std::vector<CycNumber>{CycNumber(1)});
  CHECK(c_coefficients(3, 2, Parity::odd).c == std::vector<CycNumber>{CycNumber(-1)});
  for (long k : {1L, 2L}) {
    auto c = c_coefficients(3, k, Parity::even);
    REQUIRE(c.c.size() == 2);
    CHECK(c.c[0] == CycNumber(1));
    CHECK(c.c[1].is_zero());
  }
}

TEST_CASE("c-coefficients solve their systems") {
  for (long p : {5L, 7L}) {
    const int P = static_cast<int>(p);
    for (long k = 1; k < p; ++k) {
      auto odd = c_coefficients(p, k, Parity::odd);
      CHECK(odd.integral);
      for (long m = 1; m <= (p - 1) / 2; ++m) {
        CycNumber lhs = CycNumber::zero(P);
        for (long l = 0; l <= (p - 3) / 2; ++l) lhs += (z(2 * m, P) - z(-2 * m, P)) * z(l * m * m, P) * odd.c[l];
        CHECK(lhs == z(2 * k * m, P) - z(-2 * k * m, P));
      }
      auto even = c_coefficients(p, k, Parity::even);
      CHECK(even.integral);
      for (long m = 0; m <= (p - 1) / 2; ++m) {
        CycNumber lhs = CycNumber::zero(P);
        for (long l = 0; l <= (p - 1) / 2; ++l) lhs += (z(2 * m, P) + z(-2 * m, P)) * z(l * m * m, P) * even.c[l];
        CHECK(lhs == z(2 * k * m, P) + z(-2 * k * m, P));
      }
    }
  }
}

TEST_CASE("recursion start values are binomials") {
  CycNumber zeta = z(1, 7);
  CHECK(f_recursion(3, 0, 0, zeta) == CycNumber(3));
  CHECK(f_recursion(3, 0, 1, zeta) == CycNumber(4));   // binom(4, 3)
  CHECK(f_recursion(5, 0, 2, zeta) == CycNumber(21));  // binom(7, 5)
  for (const auto& e : f_recursion_chain(7, 3)) CHECK(e.holds);
}

TEST_CASE("two-adic basis of 2_1^+1") {
  auto B = two_adic_basis("2_1^+1");
  REQUIRE(B.size() == 2);
  CycNumber r = CycNumber(1, 8) / sqrt_nat(2, 8);
  CHECK(B.column(0).entry(0) == r);
  CHECK(B.column(0).entry(1) == r);
  CHECK(B.column(1).entry(0) == r);
  CHECK(B.column(1).entry(1) == z(2, 8) * r);
  // unit columns, not orthogonal to each other
  CHECK(inner(B.column(0), B.column(0)) == CycNumber(1));
  CHECK(inner(B.column(1), B.column(1)) == CycNumber(1));
  CHECK_FALSE(B.orthonormal());
  for (const char* w : {"T", "S", "T^-1", "S^-1"}) CHECK(all_integral(conjugated(B, MpWord::parse(w))));
}

TEST_CASE("prime bases") {
  for (long p : {3L, 5L, 7L})
    for (int sign : {1, -1}) {
      auto B = prime_basis(p, sign);
      CAPTURE(p);
      CAPTURE(sign);
      CHECK(B.size() == p);
      CHECK(left_inverse_check(B));
      for (const char* w : {"T", "S", "T^-1", "S^-1", "S T^2 S T^-1"})
        CHECK(all_integral(conjugated(B, MpWord::parse(w))));
    }
}

TEST_CASE("recursive bases are integral under a dense oracle") {
  for (const char* s : {"U(2)", "2_II^-2", "3^-2", "2_1^+1⊕2_1^+1", "4_1^+1", "9^+1", "U(3)", "2_II^-2⊕3^+1",
                        "8_1^+1", "4_3^-1⊕2_1^+1"}) {
    auto D = builtin(s);
    auto B = integral_basis(D);
    CAPTURE(s);
    CHECK(B.size() == D->size());
    CHECK(left_inverse_check(B));
    for (const char* w : {"T", "S", "T^-1", "S^-1"}) CHECK(all_integral(conjugated(B, MpWord::parse(w))));
    auto r = verify_integrality(B, 10);
    CHECK(r.verdict);
    CHECK(r.words.size() == 14);
    // coordinates through the left inverse agree with the column
    std::mt19937_64 rng(9);
    int j = static_cast<int>(rng() % B.size());
    auto x = basis_coordinates(B, B.column(j));
    for (int i = 0; i < B.size(); ++i) CHECK(x[i] == CycNumber(i == j ? 1 : 0));
  }
}

TEST_CASE("natural basis is not integral when S has a non-integral entry") {
  auto D = builtin("3^+1");
  auto r = verify_integrality(natural_basis(D), 0);
  CHECK_FALSE(r.verdict);
  CHECK_FALSE(all_integral(conjugated(natural_basis(D), MpWord::parse("S"))));
  CHECK(verify_integrality(natural_basis(builtin("U(2)")), 0).verdict == all_integral(conjugated(natural_basis(builtin("U(2)")), MpWord::parse("S"))));
}

TEST_CASE("oversized forms are refused") {
  CHECK_THROWS_AS(integral_basis(builtin("U(12)"), 100), InputError);
}
