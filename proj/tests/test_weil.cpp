#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "weilrep/oracles.hpp"
#include "weilrep/vandermonde.hpp"
#include "weilrep/vectors.hpp"
#include "weilrep/weil.hpp"

using namespace weilrep;

namespace {

const std::vector<std::string> kForms{"1",      "2_1^+1", "3^+1",   "3^-1",  "U(2)",          "2_II^-2",
                                      "4_3^-1", "8_1^+1", "5^+1⊕2_7^+1", "9^+1", "2_1^+1⊕2_1^+1", "U(3)"};

// rho(S) straight from the definition: column g is
// e(-sgn/8)/sqrt|D| sum_d e(-(g, d)) e_d.
CMatrix dense_S(const DiscForm& D) {
  const int n = D.size(), M = D.conductor();
  CycNumber c = e_of(frac(-D.signature(), 8), M) / sqrt_nat(n, M);
  CMatrix S(n, std::vector<CycNumber>(n));
  for (int g = 0; g < n; ++g)
    for (int d = 0; d < n; ++d) S[d][g] = c * e_of(-D.b(g, d), M);
  return S;
}

CMatrix dense_T(const DiscForm& D) {
  const int n = D.size(), M = D.conductor();
  CMatrix T(n, std::vector<CycNumber>(n, CycNumber::zero(M)));
  for (int g = 0; g < n; ++g) T[g][g] = e_of(D.q(g), M);
  return T;
}

CMatrix dense_of(const RepMatrix& R) { return R.entries; }

CMatrix dense_word(const DiscForm& D, const MpWord& w) {
  const int n = D.size();
  CMatrix S = dense_S(D), T = dense_T(D), R = cmat_identity(n, D.conductor());
  // both generators are unitary
  CMatrix Si = S, Ti = T;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Si[i][j] = S[j][i].conj();
      Ti[i][j] = T[j][i].conj();
    }
  for (Letter l : w.letters()) {
    switch (l) {
      case Letter::T: R = cmat_mul(R, T); break;
      case Letter::Tinv: R = cmat_mul(R, Ti); break;
      case Letter::S: R = cmat_mul(R, S); break;
      case Letter::Sinv: R = cmat_mul(R, Si); break;
      case Letter::Z: R = cmat_mul(R, cmat_mul(S, S)); break;
    }
  }
  return R;
}

bool same(const SVec& a, const SVec& b) { return equal(a, b); }

}  // namespace

TEST_CASE("word parsing and matrices") {
  MpWord w = MpWord::parse("S T^-2 S");
  CHECK(w.size() == 4);
  CHECK(w.matrix() == Mat2{-1, 0, -2, -1});
  CHECK(MpWord::parse("STTS").matrix() == Mat2{-1, 0, 2, -1});
  CHECK(MpWord::parse("S").matrix() == Mat2{0, -1, 1, 0});
  CHECK(MpWord::parse("T^5").matrix() == Mat2{1, 5, 0, 1});
  CHECK(MpWord::parse("Z").matrix() == Mat2{-1, 0, 0, -1});
  CHECK((w * w.inverse()).matrix() == Mat2{1, 0, 0, 1});
  CHECK_THROWS_AS(MpWord::parse("S X"), InputError);
  CHECK_THROWS_AS(MpWord::parse("T^"), InputError);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    Mat2 m = random_word(rng, 20).matrix();
    CHECK(m[0] * m[3] - m[1] * m[2] == 1);
    CHECK(matrix_to_word(m).matrix() == m);
    CHECK(matrix_to_word(m, true).matrix() == m);
  }
}

TEST_CASE("generators agree with the defining formulas") {
  for (const auto& s : kForms) {
    auto D = builtin(s);
    CAPTURE(s);
    CHECK(cmat_equal(dense_of(rho_S(D)), dense_S(*D)));
    CHECK(cmat_equal(dense_of(rho_T(D)), dense_T(*D)));
    CHECK(is_unitary(rho_S(D)));
  }
}

TEST_CASE("group relations") {
  for (const auto& s : kForms) {
    auto D = builtin(s);
    CAPTURE(s);
    const int n = D->size(), M = D->conductor();
    auto S2 = rho_word(D, MpWord::parse("SS")).entries;
    auto ST3 = rho_word(D, MpWord::parse("STSTST")).entries;
    CHECK(cmat_equal(S2, ST3));
    CMatrix Zm(n, std::vector<CycNumber>(n, CycNumber::zero(M)));
    for (int g = 0; g < n; ++g) Zm[D->neg(g)][g] = e_of(frac(-D->signature(), 4), M);
    CHECK(cmat_equal(S2, Zm));
    CHECK(cmat_equal(rho_word(D, MpWord::parse("Z")).entries, Zm));
    CHECK(cmat_equal(rho_word(D, MpWord::parse("SSSS")).entries,
                     dense_word(*D, MpWord::parse("SSSS"))));
  }
}

TEST_CASE("random words agree with dense products") {
  std::mt19937_64 rng(2);
  for (const auto& s : kForms) {
    auto D = builtin(s);
    for (int t = 0; t < 10; ++t) {
      MpWord w = random_word(rng, 8);
      CAPTURE(w.str());
      CHECK(cmat_equal(rho_word(D, w).entries, dense_word(*D, w)));
      // apply on unit vectors matches the matrix columns
      int g = static_cast<int>(rng() % D->size());
      SVec v = apply(*D, w, SVec::unit(D->conductor(), D->size(), g));
      auto col = rho_word(D, w).entries;
      for (int r = 0; r < D->size(); ++r) CHECK(v.entry(r) == col[r][g]);
    }
  }
}

TEST_CASE("gamma_odd cosets") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    MpWord w = random_word(rng, 12);
    CHECK(gamma_odd_coset(w).coset == coset_mod2(w.matrix()));
  }
  CHECK(coset_mod2({1, 0, 0, 1}) == 0);
  CHECK(coset_mod2({1, 1, 0, 1}) == 1);
  CHECK(coset_mod2({0, -1, 1, 1}) == 2);
}

TEST_CASE("action on pairs and its cocycle") {
  auto D = builtin("U(3)");
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    MpWord w = random_word(rng, 6);
    Mat2 m = w.matrix();
    Pair v{static_cast<int>(rng() % 9), static_cast<int>(rng() % 9)};
    Pair u = act(*D, m, v);
    CHECK(u.eta == D->add(D->mul(m[0], v.eta), D->mul(m[1], v.lambda)));
    CHECK(u.lambda == D->add(D->mul(m[2], v.eta), D->mul(m[3], v.lambda)));
    // q(c eta + d lambda) = c^2 q(eta) + d^2 q(lambda) + cd (eta, lambda); the
    // cocycle is that expansion with ac, bd, bc in place.
    Rational Q = q_cocycle(*D, m, v);
    CHECK(Q == mod1(m[0] * m[2] * D->q(v.eta) + m[1] * m[3] * D->q(v.lambda) + m[1] * m[2] * D->b(v.lambda, v.eta)));
  }
}

TEST_CASE("a-vectors against a direct sum") {
  for (const char* s : {"U(2)", "3^-2", "2_1^+1⊕2_1^+1", "9^+1"}) {
    auto D = builtin(s);
    const int M = D->conductor();
    for (const auto& H : enumerate_subgroups(D)) {
      for (int eta = 0; eta < D->size(); eta += 2)
        for (int lam = 0; lam < D->size(); lam += 3) {
          SVec a = a_coords(H, eta, lam);
          std::vector<CycNumber> e(D->size(), CycNumber::zero(M));
          for (int g : H.elements()) e[D->add(lam, g)] += e_of(D->b(g, eta), M);
          for (auto& x : e) x = x / sqrt_nat(H.order(), M);
          CHECK(same(a, from_entries(M, e)));
        }
    }
  }
}

TEST_CASE("a-vector identities on a small form") {
  auto D = builtin("U(2)");
  for (const auto& H : enumerate_subgroups(D)) {
    long l = pairing_exponent(H);
    for (int eta = 0; eta < 4; ++eta)
      for (int lam = 0; lam < 4; ++lam) {
        CHECK(s_image_identity(H, eta, lam).holds);
        CHECK(t_power_image_identity(H, l, eta, lam).holds);
      }
  }
  auto E = builtin("3^-2");
  for (const auto& H : enumerate_subgroups(E, SubgroupFilter::quasi_isotropic))
    for (long l : {1L, 2L}) CHECK(milgram_twisted(H, l).sum == milgram_twisted(H, l).closed_form);
}

TEST_CASE("self-dual subgroups predict their action") {
  std::mt19937_64 rng(6);
  auto D = builtin("U(3)");
  for (const auto& H : enumerate_subgroups(D, SubgroupFilter::quasi_isotropic)) {
    if (orthogonal_complement(H) != H) continue;
    for (int t = 0; t < 10; ++t) {
      auto v = a_vector(H, static_cast<int>(rng() % 9), static_cast<int>(rng() % 9));
      CHECK(predicted_action(random_word(rng, 8), v).verified);
    }
  }
}
