#include "weilrep/zvec.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace weilrep {

namespace {

constexpr int64_t kLimit = int64_t(1) << 52;

void guard(bool ok) {
  if (!ok) throw ConsistencyError("integer cyclotomic coefficient overflow");
}

int64_t to_i64(const Integer& z) {
  guard(z.fits_slong_p());
  return z.get_si();
}

long squarefree_mul(long a, long b, long* square) {
  long g = gcd_l(a, b);
  *square = g;
  return (a / g) * (b / g);
}

}  // namespace

Mono mono_mul(const Mono& a, const Mono& b, int M) {
  long sq = 1;
  Mono out;
  out.n = squarefree_mul(a.n, b.n, &sq);
  out.r = a.r * b.r * sq;
  out.k = mod_l(a.k + b.k, M);
  return out;
}

Mono mono_inv(const Mono& a, int M) {
  if (sgn(a.r) == 0) throw std::domain_error("inverse of zero scale");
  Mono out;
  out.r = 1 / (a.r * a.n);
  out.k = mod_l(-a.k, M);
  out.n = a.n;
  return out;
}

Mono mono_conj(const Mono& a, int M) {
  Mono out = a;
  out.k = mod_l(-a.k, M);
  return out;
}

Mono mono_root(long k) {
  Mono m;
  m.k = k;
  return m;
}

Mono mono_rational(const Rational& r) {
  Mono m;
  m.r = r;
  return m;
}

Mono mono_inv_sqrt(long n) {
  long s = 1, f = 1;
  for (auto [p, e] : factorize(n)) {
    for (int i = 0; i < e / 2; ++i) s *= p;
    if (e % 2) f *= p;
  }
  Mono m;
  m.r = frac(1, s * f);
  m.n = f;
  return m;
}

CycNumber mono_value(const Mono& a, int M) {
  auto poly = sqrt_squarefree_poly(a.n, M);
  std::vector<Rational> c(M);
  for (int i = 0; i < M; ++i)
    if (poly[i]) c[mod_l(i + a.k, M)] = a.r * poly[i];
  return CycNumber::from_raw(M, std::move(c));
}

void reduce_int_mod_phi(int M, int64_t* a) {
  const auto& P = cyclotomic_poly(M);
  const int ph = static_cast<int>(P.size()) - 1;
  for (int k = M - 1; k >= ph; --k) {
    int64_t v = a[k];
    if (!v) continue;
    int sh = k - ph;
    for (int j = 0; j < ph; ++j)
      if (P[j]) {
        int64_t t;
        guard(!__builtin_mul_overflow(v, P[j], &t));
        guard(!__builtin_sub_overflow(a[sh + j], t, &a[sh + j]));
      }
    a[k] = 0;
  }
}

int64_t max_abs(const int64_t* a, int len) {
  int64_t m = 0;
  for (int i = 0; i < len; ++i) m = std::max<int64_t>(m, std::llabs(a[i]));
  return m;
}

SVec::SVec(int M_, int n_) : M(M_), n(n_), c(static_cast<size_t>(M_) * n_, 0) {}

SVec SVec::unit(int M, int n, int i) {
  SVec v(M, n);
  v.at(i)[0] = 1;
  return v;
}

bool SVec::entry_nonzero_raw(int i) const {
  const int64_t* p = at(i);
  for (int k = 0; k < M; ++k)
    if (p[k]) return true;
  return false;
}

bool SVec::is_zero() const {
  if (sgn(s.r) == 0) return true;
  std::vector<int64_t> tmp(M);
  for (int i = 0; i < n; ++i) {
    if (!entry_nonzero_raw(i)) continue;
    std::copy(at(i), at(i) + M, tmp.begin());
    reduce_int_mod_phi(M, tmp.data());
    if (weilrep::max_abs(tmp.data(), M)) return false;
  }
  return true;
}

CycNumber SVec::entry(int i) const {
  std::vector<Rational> c_(M);
  const int64_t* p = at(i);
  for (int k = 0; k < M; ++k)
    if (p[k]) c_[k] = Rational(static_cast<long>(p[k]));
  return CycNumber::from_raw(M, std::move(c_)) * mono_value(s, M);
}

std::vector<CycNumber> SVec::entries() const {
  std::vector<CycNumber> out;
  out.reserve(n);
  CycNumber sv = mono_value(s, M);
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> c_(M);
    const int64_t* p = at(i);
    bool nz = false;
    for (int k = 0; k < M; ++k)
      if (p[k]) c_[k] = Rational(static_cast<long>(p[k])), nz = true;
    out.push_back(nz ? (CycNumber::from_raw(M, std::move(c_)) * sv).reduced() : CycNumber::zero(M));
  }
  return out;
}

void SVec::rotate_entry(int i, long k) {
  k = mod_l(k, M);
  if (!k) return;
  int64_t* p = at(i);
  std::rotate(p, p + (M - k), p + M);
}

void SVec::tidy() {
  int64_t gg = 0;
  for (int i = 0; i < n; ++i) {
    if (!entry_nonzero_raw(i)) continue;
    reduce_int_mod_phi(M, at(i));
    for (int k = 0; k < M; ++k)
      if (at(i)[k]) gg = std::gcd(gg, std::llabs(at(i)[k]));
  }
  if (gg > 1) {
    for (auto& x : c) x /= gg;
    s.r *= static_cast<long>(gg);
  }
}

int64_t SVec::max_abs() const { return weilrep::max_abs(c.data(), static_cast<int>(c.size())); }

SVec operator*(const Mono& m, SVec v) {
  long k = m.k;
  Mono rest = m;
  rest.k = 0;
  v.s = mono_mul(rest, v.s, v.M);
  if (k)
    for (int i = 0; i < v.n; ++i) v.rotate_entry(i, k);
  return v;
}

CycNumber inner(const SVec& x, const SVec& y) {
  if (x.M != y.M || x.n != y.n) throw std::invalid_argument("inner: shape mismatch");
  const int M = x.M;
  std::vector<__int128> acc(M, 0);
  std::vector<int> nz;
  for (int i = 0; i < x.n; ++i) {
    const int64_t* a = x.at(i);
    const int64_t* b = y.at(i);
    nz.clear();
    for (int k = 0; k < M; ++k)
      if (a[k]) nz.push_back(k);
    if (nz.empty() || !y.entry_nonzero_raw(i)) continue;
    // conj(x^j) = x^{-j}
    for (int j : nz) {
      __int128 aj = a[j];
      int off = (M - j) % M;
      for (int k = 0; k < M; ++k)
        if (b[k]) acc[(k + off) % M] += aj * b[k];
    }
  }
  std::vector<Rational> c(M);
  for (int k = 0; k < M; ++k) {
    if (!acc[k]) continue;
    __int128 v = acc[k];
    bool neg = v < 0;
    unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
    Integer z = static_cast<unsigned long>(u >> 64);
    z <<= 64;
    z += static_cast<unsigned long>(u & ~0UL);
    if (neg) z = -z;
    c[k] = Rational(z);
  }
  Mono sc = mono_mul(mono_conj(x.s, M), y.s, M);
  return (CycNumber::from_raw(M, std::move(c)) * mono_value(sc, M)).reduced();
}

bool equal(const SVec& x, const SVec& y) {
  if (x.M != y.M || x.n != y.n) throw std::invalid_argument("equal: shape mismatch");
  const int M = x.M;
  bool xz = sgn(x.s.r) == 0, yz = sgn(y.s.r) == 0;
  if (xz || yz) return (xz || x.is_zero()) && (yz || y.is_zero());
  Mono t = mono_mul(y.s, mono_inv(x.s, M), M);
  int64_t u = to_i64(t.r.get_num()), w = to_i64(t.r.get_den());
  auto sq = sqrt_squarefree_poly(t.n, M);
  std::vector<int> sqnz;
  for (int k = 0; k < M; ++k)
    if (sq[k]) sqnz.push_back(k);
  std::vector<int64_t> tmp(M);
  for (int i = 0; i < x.n; ++i) {
    bool ax = x.entry_nonzero_raw(i), ay = y.entry_nonzero_raw(i);
    if (!ax && !ay) continue;
    std::fill(tmp.begin(), tmp.end(), 0);
    const int64_t* a = x.at(i);
    const int64_t* b = y.at(i);
    for (int k = 0; k < M; ++k)
      if (a[k]) {
        int64_t v;
        guard(!__builtin_mul_overflow(a[k], w, &v));
        tmp[k] += v;
      }
    for (int k = 0; k < M; ++k) {
      if (!b[k]) continue;
      int64_t bu;
      guard(!__builtin_mul_overflow(b[k], u, &bu));
      for (int j : sqnz) {
        int64_t v;
        guard(!__builtin_mul_overflow(bu, static_cast<int64_t>(sq[j]), &v));
        int idx = static_cast<int>(mod_l(k + j + t.k, M));
        guard(!__builtin_sub_overflow(tmp[idx], v, &tmp[idx]));
      }
    }
    reduce_int_mod_phi(M, tmp.data());
    if (weilrep::max_abs(tmp.data(), M)) return false;
  }
  return true;
}

SVec from_entries(int M, const std::vector<CycNumber>& e) {
  const int n = static_cast<int>(e.size());
  Integer den = 1;
  std::vector<std::vector<Rational>> can(n);
  for (int i = 0; i < n; ++i) {
    can[i] = e[i].embed(M).canonical();
    for (auto& q : can[i])
      if (sgn(q)) den = lcm(den, Integer(q.get_den()));
  }
  SVec v(M, n);
  v.s.r = Rational(1) / Rational(den);
  for (int i = 0; i < n; ++i)
    for (size_t k = 0; k < can[i].size(); ++k)
      if (sgn(can[i][k])) {
        Rational q = can[i][k] * den;
        v.at(i)[k] = to_i64(q.get_num());
      }
  return v;
}

SVec combine(const std::vector<std::pair<CycNumber, SVec>>& terms) {
  if (terms.empty()) throw std::invalid_argument("combine: no terms");
  const int M = terms[0].second.M, n = terms[0].second.n;
  // multiplier_t = coef_t * s_t / s_0 as a field element; clear a common denominator.
  const Mono s0 = terms[0].second.s;
  const Mono s0inv = mono_inv(s0, M);
  std::vector<std::vector<Rational>> mult;
  Integer den = 1;
  for (auto& [coef, v] : terms) {
    if (v.M != M || v.n != n) throw std::invalid_argument("combine: shape mismatch");
    if (M % coef.conductor() != 0) throw std::invalid_argument("combine: coefficient outside Q(zeta_M)");
    CycNumber m = coef.embed(M);
    m *= mono_value(mono_mul(v.s, s0inv, M), M);
    auto can = m.canonical();
    for (auto& q : can)
      if (sgn(q)) den = lcm(den, Integer(q.get_den()));
    mult.push_back(std::move(can));
  }
  SVec out(M, n);
  out.s = mono_mul(s0, mono_rational(Rational(1) / Rational(den)), M);
  std::vector<std::pair<int, int64_t>> mt;
  for (size_t t = 0; t < terms.size(); ++t) {
    mt.clear();
    for (size_t k = 0; k < mult[t].size(); ++k)
      if (sgn(mult[t][k])) mt.push_back({static_cast<int>(k), to_i64(Rational(mult[t][k] * den).get_num())});
    const SVec& v = terms[t].second;
    for (int i = 0; i < n; ++i) {
      if (!v.entry_nonzero_raw(i)) continue;
      const int64_t* a = v.at(i);
      int64_t* o = out.at(i);
      for (int k = 0; k < M; ++k) {
        if (!a[k]) continue;
        for (auto [j, m] : mt) {
          int64_t p;
          guard(!__builtin_mul_overflow(a[k], m, &p));
          int idx = (k + j) % M;
          guard(!__builtin_add_overflow(o[idx], p, &o[idx]));
        }
      }
    }
  }
  if (out.max_abs() > kLimit) out.tidy();
  return out;
}

}  // namespace weilrep
