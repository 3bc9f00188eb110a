#include "weilrep/cyclic.hpp"

#include <algorithm>

#include "weilrep/field.hpp"
#include "weilrep/invariants.hpp"

namespace weilrep {

namespace {

using QVec = std::vector<Rational>;

Rational dot(const QVec& a, const QVec& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Row basis of the span of vs.
std::vector<QVec> row_basis(const std::vector<QVec>& vs, size_t n) {
  if (vs.empty()) return {};
  Field Q(1);
  FMatrix A(Q, static_cast<int>(vs.size()), static_cast<int>(n));
  for (size_t i = 0; i < vs.size(); ++i)
    for (size_t j = 0; j < n; ++j) A.at(static_cast<int>(i), static_cast<int>(j))[0] = vs[i][j];
  auto piv = rref(Q, A);
  std::vector<QVec> out;
  for (size_t r = 0; r < piv.size(); ++r) {
    QVec v(n);
    for (size_t j = 0; j < n; ++j) v[j] = A.at(static_cast<int>(r), static_cast<int>(j))[0];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Integer> to_integer(const QVec& v) {
  Integer den = 1, g = 0;
  for (const auto& x : v) den = lcm(den, Integer(x.get_den()));
  std::vector<Integer> out;
  for (const auto& x : v) {
    out.emplace_back(Rational(x * den));
    g = gcd(g, out.back());
  }
  if (g > 1)
    for (auto& y : out) y /= g;
  return out;
}

// Frobenius norm of the character of rho restricted to span(B), plus closure under T and S.
struct BlockData {
  bool invariant = true;
  std::optional<Rational> norm;
};

BlockData block_data(const FormPtr& D, const std::vector<int>& elem, const std::vector<std::vector<Integer>>& B,
                     bool want_norm) {
  const int n = D->size(), M = D->conductor();
  const int k = static_cast<int>(B.size());
  BlockData out;
  if (k == 0) return out;
  Field Q(1);
  FMatrix G(Q, k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      Integer s = 0;
      for (int x = 0; x < n; ++x) s += B[i][x] * B[j][x];
      G.at(i, j)[0] = Rational(s);
    }
  FMatrix Gi = inverse(Q, G);
  std::vector<SVec> cols;
  for (const auto& b : B) {
    SVec v(M, n);
    for (int x = 0; x < n; ++x) {
      if (!b[x].fits_slong_p()) throw ConsistencyError("cyclic_decomposition: basis entry too large");
      v.at(elem[x])[0] = b[x].get_si();
    }
    cols.push_back(std::move(v));
  }
  // Coefficients of rho(w) b_j in the basis, by orthogonal projection.
  auto project = [&](const MpWord& w, int j, bool check) {
    SVec v = apply(*D, w, cols[j]);
    auto e = v.entries();
    std::vector<CycNumber> bt(k, CycNumber::zero(M));
    for (int i = 0; i < k; ++i)
      for (int x = 0; x < n; ++x)
        if (B[i][x] != 0 && !e[elem[x]].is_zero()) bt[i] += CycNumber(Rational(B[i][x]), M) * e[elem[x]];
    std::vector<CycNumber> c(k, CycNumber::zero(M));
    for (int i = 0; i < k; ++i)
      for (int l = 0; l < k; ++l) c[i] += CycNumber(Gi.at(i, l)[0], M) * bt[l];
    if (check) {
      for (int x = 0; x < n && out.invariant; ++x) {
        CycNumber r = e[elem[x]];
        for (int i = 0; i < k; ++i)
          if (B[i][x] != 0) r -= CycNumber(Rational(B[i][x]), M) * c[i];
        if (!r.is_zero()) out.invariant = false;
      }
    }
    return c;
  };
  for (const auto& w : {MpWord::T(), MpWord::S()})
    for (int j = 0; j < k; ++j) project(w, j, true);
  if (want_norm) {
    const long N = D->level();
    CycNumber sum = CycNumber::zero(M);
    for (const auto& cc : sl2_classes(N)) {
      CycNumber tr = CycNumber::zero(M);
      for (int j = 0; j < k; ++j) tr += project(cc.word, j, false)[j];
      sum += CycNumber(Rational(cc.size), M) * tr * tr.conj();
    }
    sum = sum.reduced();
    if (!sum.is_rational()) throw ConsistencyError("cyclic_decomposition: character norm is not rational");
    out.norm = sum.rational_value() / Rational(sl2_order(N));
  }
  return out;
}

}  // namespace

bool CyclicDecomposition::ok() const {
  if (!orthogonal || !complete) return false;
  for (const auto& c : components)
    if (!c.invariant || (c.character_norm && *c.character_norm != 1)) return false;
  return true;
}

CyclicDecomposition cyclic_decomposition(const FormPtr& D, long max_level) {
  CyclicDecomposition out;
  out.form = D;
  const long N = D->size();
  out.N = N;
  int gen = -1;
  for (int g = 0; g < D->size() && gen < 0; ++g)
    if (D->order_of(g) == N) gen = g;
  if (gen < 0) throw InputError("cyclic_decomposition: the form is not cyclic");
  out.generator = gen;
  std::vector<int> elem(N);  // k -> element k * gen
  for (long k = 0; k < N; ++k) elem[k] = D->mul(k, gen);

  // Automorphisms: u_p = -1 mod p^v and 1 mod N / p^v.
  std::vector<long> units;
  for (auto [p, v] : factorize(N)) {
    long pv = 1;
    for (int i = 0; i < v; ++i) pv *= p;
    if (p == 2 && v == 1) continue;  // -1 = 1 on Z/2
    long rest = N / pv;
    long u = 0;
    for (long t = 0; t < N; ++t)
      if (mod_l(t + 1, pv) == 0 && mod_l(t - 1, rest) == 0) {
        u = t;
        break;
      }
    out.primes.push_back(p);
    units.push_back(u);
  }
  const int r = static_cast<int>(units.size());

  auto coset_indicators = [&](long m) {
    // H_m = <(N/m) gen>, H_m^perp = <m gen>; indicators of H_m-cosets inside H_m^perp.
    std::vector<QVec> vs;
    const long step = N / m;
    for (long a = 0; a < step; a += m) {
      QVec v(N, 0);
      for (long h = 0; h < m; ++h) v[mod_l(a + h * step, N)] = 1;
      vs.push_back(std::move(v));
    }
    return vs;
  };

  std::vector<long> Ms;
  for (long m : divisors(N))
    if ((N / m) % m == 0 && (N / (m * m)) % 2 == N % 2) {
      if (D->qexp(elem[(N / m) % N]) != 0) throw ConsistencyError("cyclic_decomposition: H_M is not isotropic");
      Ms.push_back(m);
    }

  const bool want_norm = D->signature() % 2 == 0 && D->level() <= max_level;
  for (long m : Ms) {
    const long A = N / (m * m);
    std::vector<QVec> higher;
    for (long L : Ms)
      if (L != m && L % m == 0)
        for (auto& v : coset_indicators(L)) higher.push_back(std::move(v));
    const auto up = coset_indicators(m);
    for (int mask = 0; mask < (1 << r); ++mask) {
      std::vector<int> psi(r);
      bool admissible = true;
      for (int i = 0; i < r; ++i) {
        psi[i] = (mask >> i & 1) ? -1 : 1;
        const long p = out.primes[i];
        if (psi[i] == -1 && (A % p != 0 || (p == 2 && A % 4 != 0))) admissible = false;
      }
      if (!admissible) continue;
      // psi-projection of the arrow image.
      std::vector<QVec> proj;
      for (const auto& v : up) {
        QVec w(N, 0);
        for (int s = 0; s < (1 << r); ++s) {
          long u = 1;
          int sign = 1;
          for (int i = 0; i < r; ++i)
            if (s >> i & 1) {
              u = u * units[i] % N;
              sign *= psi[i];
            }
          for (long k = 0; k < N; ++k)
            if (v[k] != 0) w[mod_l(u * k, N)] += sign * v[k];
        }
        proj.push_back(std::move(w));
      }
      auto V = row_basis(proj, N);
      // Orthogonal complement of the higher arrow images inside span V.
      std::vector<QVec> comp;
      if (!V.empty()) {
        Field Q(1);
        FMatrix C(Q, std::max<int>(1, static_cast<int>(higher.size())), static_cast<int>(V.size()));
        for (size_t h = 0; h < higher.size(); ++h)
          for (size_t i = 0; i < V.size(); ++i) C.at(static_cast<int>(h), static_cast<int>(i))[0] = dot(higher[h], V[i]);
        for (const auto& a : kernel(Q, C)) {
          QVec w(N, 0);
          for (size_t i = 0; i < V.size(); ++i)
            for (long k = 0; k < N; ++k) w[k] += a[i][0] * V[i][k];
          comp.push_back(std::move(w));
        }
      }
      if (comp.empty()) continue;
      CyclicComponent c;
      c.M = m;
      c.psi = psi;
      for (const auto& w : comp) c.basis.push_back(to_integer(w));
      auto bd = block_data(D, elem, c.basis, want_norm);
      c.invariant = bd.invariant;
      c.character_norm = bd.norm;
      out.components.push_back(std::move(c));
    }
  }

  long total = 0;
  out.orthogonal = true;
  for (size_t a = 0; a < out.components.size(); ++a) {
    total += static_cast<long>(out.components[a].basis.size());
    for (size_t b = a + 1; b < out.components.size(); ++b)
      for (const auto& x : out.components[a].basis)
        for (const auto& y : out.components[b].basis) {
          Integer s = 0;
          for (long k = 0; k < N; ++k) s += x[k] * y[k];
          if (s != 0) out.orthogonal = false;
        }
  }
  out.complete = total == N;
  return out;
}

}  // namespace weilrep
