#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "weilrep/exactnum.hpp"
#include "weilrep/field.hpp"
#include "weilrep/zvec.hpp"

using namespace weilrep;

namespace {

// Floating-point embedding zeta_M -> exp(2 pi i / M); used only as a sanity oracle.
std::complex<double> num(const CycNumber& z) {
  std::complex<double> s = 0;
  const int M = z.conductor();
  for (int k = 0; k < M; ++k)
    s += z.raw()[k].get_d() * std::polar(1.0, 2 * M_PI * k / M);
  return s;
}

CycNumber z(long a, int M) { return CycNumber::root_of_unity(a, M); }

CycNumber random_cyc(std::mt19937_64& rng, int M) {
  std::uniform_int_distribution<int> d(-5, 5);
  std::vector<Rational> c(M);
  for (auto& x : c) x = Rational(d(rng), 1 + (d(rng) + 5) % 3);
  for (auto& x : c) x.canonicalize();
  return CycNumber::from_raw(M, c);
}

}  // namespace

TEST_CASE("rationals are kept in lowest terms") {
  Rational r = parse_rational("6/-4");
  CHECK(to_string(r) == "-3/2");
  CHECK(to_string(Rational(5)) == "5/1");
  CHECK(to_string(mod1(frac(-1, 3))) == "2/3");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("x"), InputError);
}

TEST_CASE("number theory helpers") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(12) == 4);
  CHECK(sigma0(12) == 6);
  CHECK(divisors(12) == std::vector<long>{1, 2, 3, 4, 6, 12});
  CHECK(is_prime(31));
  CHECK_FALSE(is_prime(1));
  CHECK(legendre(2, 7) == 1);
  CHECK(legendre(3, 7) == -1);
  CHECK(inv_mod(3, 7) == 5);
  CHECK(cyclotomic_poly(12) == std::vector<long>{1, 0, -1, 0, 1});
}

TEST_CASE("roots of unity") {
  CHECK(z(0, 8) == CycNumber(1));
  CHECK(z(4, 8) == CycNumber(-1));
  CHECK(z(1, 8) * z(3, 8) == CycNumber(-1));
  CHECK(z(1, 12).conj() == z(11, 12));
}

TEST_CASE("field operations") {
  CycNumber a = z(1, 8) + z(-1, 8);
  CHECK(a * a == CycNumber(2));
  CycNumber b = CycNumber(1, 5) + z(1, 5);
  CHECK(b / b == CycNumber(1));
  // Mixed conductors embed at the lcm.
  CHECK(z(1, 3) * z(1, 4) == z(7, 12));
  CHECK((z(1, 3) + z(1, 4)).conductor() == 12);
}

TEST_CASE("canonical reduction") {
  CHECK(z(2, 4).canonical() == std::vector<Rational>{-1, 0});
  CHECK(z(2, 3).canonical() == std::vector<Rational>{-1, -1});
  CHECK(CycNumber::zero(7).canonical() == std::vector<Rational>(6, 0));
  CHECK(z(1, 5).minimal_conductor() == 5);
  CHECK((z(1, 8) + z(-1, 8)).minimal_conductor() == 8);
  CHECK((z(1, 8) * z(1, 8)).minimal_conductor() == 4);
}

TEST_CASE("integrality") {
  CHECK_FALSE(CycNumber(frac(1, 2)).is_integral());
  CHECK((CycNumber(1, 5) + z(1, 5) + z(4, 5)).is_integral());
  CHECK_FALSE((z(1, 8) / sqrt_nat(2, 8)).is_integral());
  CHECK(sqrt_nat(2, 8).is_integral());
}

TEST_CASE("square roots") {
  CHECK(sqrt_nat(4, 1) == CycNumber(2));
  CycNumber r2 = sqrt_nat(2, 8);
  CHECK(r2 == z(1, 8) + z(-1, 8));
  CHECK(r2 * r2 == CycNumber(2));
  CycNumber r3 = sqrt_nat(3, 24);
  CHECK(r3 * r3 == CycNumber(3));
  CHECK(r3 == -z(6, 24) * (CycNumber(1, 24) + CycNumber(2, 24) * z(8, 24)));
  CHECK(num(r3).real() > 0);
  CHECK(sqrt_min_conductor(3) == 12);
  CHECK(sqrt_min_conductor(5) == 5);
  CHECK_THROWS_AS(sqrt_nat(3, 8), InputError);
  for (long n : {5L, 6L, 7L, 10L, 12L, 30L}) {
    CycNumber s = sqrt_nat(n, sqrt_min_conductor(n));
    CHECK(s * s == CycNumber(n));
    CHECK(std::abs(num(s) - std::sqrt(double(n))) < 1e-9);
  }
}

TEST_CASE("field laws on random elements agree with the complex embedding") {
  std::mt19937_64 rng(11);
  for (int M : {3, 5, 8, 12, 15, 24}) {
    for (int t = 0; t < 10; ++t) {
      CycNumber a = random_cyc(rng, M), b = random_cyc(rng, M);
      CHECK(std::abs(num(a * b) - num(a) * num(b)) < 1e-6);
      CHECK(std::abs(num(a + b) - (num(a) + num(b))) < 1e-9);
      CHECK(a.reduced() == a);
      CHECK(num(a.conj() * a).imag() == doctest::Approx(0).epsilon(1e-9));
      CHECK(num(a.conj() * a).real() >= -1e-9);
      if (!a.is_zero()) {
        CHECK(a * a.inverse() == CycNumber(1));
        CHECK(std::abs(num(b / a) - num(b) / num(a)) < 1e-6);
      }
    }
  }
}

TEST_CASE("e(x) and rational recognition") {
  CHECK(e_of(frac(1, 2), 8) == CycNumber(-1));
  CHECK(e_of(frac(3, 4), 8) == z(6, 8));
  CHECK(e_of(frac(5, 4), 4) == z(1, 4));
  CHECK((z(1, 3) + z(2, 3)).is_rational());
  CHECK((z(1, 3) + z(2, 3)).rational_value() == -1);
  CHECK_THROWS(z(1, 3).rational_value());
}

TEST_CASE("exact linear algebra over Q(zeta_M)") {
  Field F(4);
  FMatrix A(F, 2, 2);
  A.at(0, 0) = F.one();
  A.at(0, 1) = F.from(z(1, 4));
  A.at(1, 0) = F.from(z(1, 4));
  A.at(1, 1) = F.from(CycNumber(-1));
  CHECK(rank(F, A) == 1);
  auto K = kernel(F, A);
  REQUIRE(K.size() == 1);
  CycNumber x0 = F.to_cyc(K[0][0]), x1 = F.to_cyc(K[0][1]);
  CHECK((x0 + z(1, 4) * x1).is_zero());
  FMatrix B(F, 2, 2);
  B.at(0, 0) = F.from(CycNumber(2));
  B.at(1, 1) = F.from(z(1, 4));
  FMatrix Bi = inverse(F, B);
  FMatrix I = multiply(F, B, Bi);
  CHECK(F.is_one(I.at(0, 0)));
  CHECK(F.is_zero(I.at(0, 1)));
  CHECK(F.is_one(I.at(1, 1)));
}

TEST_CASE("monomial scaled vectors") {
  const int M = 8;
  SVec v = SVec::unit(M, 3, 1);
  SVec w = mono_inv_sqrt(2) * v;
  CHECK(w.entry(1) == CycNumber(1, 8) / sqrt_nat(2, 8));
  CHECK(inner(w, w) == CycNumber(frac(1, 2)));
  Mono m = mono_mul(mono_root(3), mono_root(5), M);
  CHECK(mono_value(m, M) == CycNumber(1));
  CHECK(mono_value(mono_inv(mono_inv_sqrt(8), M), M) == sqrt_nat(8, M));
  SVec u = combine({{z(1, 8), v}, {CycNumber(-1), mono_root(1) * v}});
  CHECK(u.is_zero());
}
