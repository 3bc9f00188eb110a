#include "weilrep/exactnum.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace weilrep {

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) throw InputError("empty rational");
  auto slash = t.find('/');
  auto ok_int = [](const std::string& x) {
    if (x.empty()) return false;
    size_t i = (x[0] == '-' || x[0] == '+') ? 1 : 0;
    if (i == x.size()) return false;
    for (; i < x.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(x[i]))) return false;
    return true;
  };
  std::string num = t.substr(0, slash), den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!ok_int(num) || !ok_int(den)) throw InputError("malformed rational '" + s + "'");
  if (num[0] == '+') num = num.substr(1);
  if (den[0] == '+') den = den.substr(1);
  Integer d(den);
  if (d == 0) throw InputError("zero denominator in '" + s + "'");
  Rational r(Integer(num), d);
  r.canonicalize();
  return r;
}

Rational mod1(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  Rational out = r - Rational(q);
  return out;
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

long gcd_l(long a, long b) { return std::gcd(a, b); }
long lcm_l(long a, long b) { return (a == 0 || b == 0) ? 0 : std::lcm(a, b); }
long mod_l(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

std::vector<std::pair<long, int>> factorize(long n) {
  std::vector<std::pair<long, int>> f;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    f.push_back({p, e});
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

long euler_phi(long n) {
  long r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

std::vector<long> divisors(long n) {
  std::vector<long> d;
  for (long i = 1; i * i <= n; ++i)
    if (n % i == 0) {
      d.push_back(i);
      if (i * i != n) d.push_back(n / i);
    }
  std::sort(d.begin(), d.end());
  return d;
}

long sigma0(long n) { return static_cast<long>(divisors(n).size()); }

bool is_prime(long n) {
  if (n < 2) return false;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

int legendre(long a, long p) {
  a = mod_l(a, p);
  if (a == 0) return 0;
  long r = 1, b = a, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

long inv_mod(long a, long m) {
  long g = m, x = 0, x1 = 1, a1 = mod_l(a, m);
  while (a1) {
    long q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw std::domain_error("inv_mod: not invertible");
  return mod_l(x, m);
}

static int mobius(long n) {
  int m = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    m = -m;
  }
  return m;
}

const std::vector<long>& cyclotomic_poly(int M) {
  static std::mutex mu;
  static std::map<int, std::vector<long>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;
  // Phi_M = prod_{d | M} (x^d - 1)^{mu(M/d)}: multiply first, then divide exactly.
  std::vector<long> p{1};
  for (long d : divisors(M)) {
    if (mobius(M / d) != 1) continue;
    std::vector<long> q(p.size() + d, 0);
    for (size_t i = 0; i < p.size(); ++i) q[i + d] += p[i], q[i] -= p[i];
    p = q;
  }
  for (long d : divisors(M)) {
    if (mobius(M / d) != -1) continue;
    // divide by x^d - 1: synthetic division from the top
    std::vector<long> q(p.size() - d, 0);
    for (long k = static_cast<long>(p.size()) - 1; k >= d; --k) {
      long c = p[k];
      q[k - d] = c;
      p[k - d] += c;
      p[k] = 0;
    }
    p = q;
  }
  cache[M] = p;
  return cache[M];
}

std::vector<Rational> reduce_mod_phi(int M, std::vector<Rational> c) {
  const auto& P = cyclotomic_poly(M);
  const int ph = static_cast<int>(P.size()) - 1;
  c.resize(std::max<size_t>(c.size(), ph));
  for (int k = static_cast<int>(c.size()) - 1; k >= ph; --k) {
    if (sgn(c[k]) == 0) continue;
    Rational v = c[k];
    int sh = k - ph;
    for (int j = 0; j < ph; ++j)
      if (P[j]) c[sh + j] -= v * P[j];
    c[k] = 0;
  }
  c.resize(ph);
  return c;
}

CycNumber::CycNumber() : M_(1), c_(1) {}
CycNumber::CycNumber(Tag, int M) : M_(M), c_(M) {
  if (M < 1) throw InputError("conductor must be positive");
}
CycNumber::CycNumber(const Rational& r, int M) : CycNumber(Tag{}, M) { c_[0] = r; }
CycNumber CycNumber::zero(int M) { return CycNumber(Tag{}, M); }

CycNumber CycNumber::root_of_unity(long a, int M) {
  CycNumber z = zero(M);
  z.c_[mod_l(a, M)] = 1;
  return z;
}

CycNumber CycNumber::from_canonical(int M, const std::vector<Rational>& c) {
  CycNumber z = zero(M);
  for (size_t i = 0; i < c.size() && i < static_cast<size_t>(M); ++i) z.c_[i] = c[i];
  return z;
}

CycNumber CycNumber::from_raw(int M, std::vector<Rational> c) {
  CycNumber z = zero(M);
  if (c.size() != static_cast<size_t>(M)) throw std::invalid_argument("from_raw: length mismatch");
  z.c_ = std::move(c);
  return z;
}

std::vector<Rational> CycNumber::canonical() const { return reduce_mod_phi(M_, c_); }

CycNumber CycNumber::reduced() const { return from_canonical(M_, canonical()); }

CycNumber CycNumber::embed(int M2) const {
  if (M2 % M_ != 0) throw std::invalid_argument("embed: target conductor not a multiple");
  if (M2 == M_) return *this;
  CycNumber z = zero(M2);
  int f = M2 / M_;
  for (int i = 0; i < M_; ++i)
    if (sgn(c_[i])) z.c_[i * f] = c_[i];
  return z;
}

static CycNumber galois(const CycNumber& z, long a) {
  const int M = z.conductor();
  std::vector<Rational> c(M);
  for (int i = 0; i < M; ++i)
    if (sgn(z.raw()[i])) c[mod_l(static_cast<long>(i) * a, M)] += z.raw()[i];
  return CycNumber::from_raw(M, std::move(c));
}

int CycNumber::minimal_conductor() const {
  // z lies in Q(zeta_d) iff it is fixed by every Galois element a = 1 mod d.
  for (long d : divisors(M_)) {
    if (d % 4 == 2) continue;
    bool fixed = true;
    for (long a = 1 + d; a < M_ && fixed; a += d)
      if (gcd_l(a, M_) == 1 && galois(*this, a) != *this) fixed = false;
    if (fixed) return static_cast<int>(d);
  }
  return M_;
}

CycNumber CycNumber::conj() const {
  CycNumber z = zero(M_);
  for (int i = 0; i < M_; ++i) z.c_[(M_ - i) % M_] = c_[i];
  return z;
}

bool CycNumber::is_zero() const {
  for (auto& x : canonical())
    if (sgn(x)) return false;
  return true;
}

bool CycNumber::is_integral() const {
  for (auto& x : canonical())
    if (!is_integer(x)) return false;
  return true;
}

bool CycNumber::is_rational() const {
  auto c = canonical();
  for (size_t i = 1; i < c.size(); ++i)
    if (sgn(c[i])) return false;
  return true;
}

Rational CycNumber::rational_value() const {
  auto c = canonical();
  for (size_t i = 1; i < c.size(); ++i)
    if (sgn(c[i])) throw ConsistencyError("value is not rational: " + str());
  return c.empty() ? Rational(0) : c[0];
}

static void unify(CycNumber& a, CycNumber& b) {
  if (a.conductor() == b.conductor()) return;
  int L = static_cast<int>(lcm_l(a.conductor(), b.conductor()));
  a = a.embed(L);
  b = b.embed(L);
}

CycNumber& CycNumber::operator+=(const CycNumber& o) {
  CycNumber b = o;
  unify(*this, b);
  for (int i = 0; i < M_; ++i)
    if (sgn(b.c_[i])) c_[i] += b.c_[i];
  return *this;
}

CycNumber& CycNumber::operator-=(const CycNumber& o) {
  CycNumber b = o;
  unify(*this, b);
  for (int i = 0; i < M_; ++i)
    if (sgn(b.c_[i])) c_[i] -= b.c_[i];
  return *this;
}

CycNumber& CycNumber::operator*=(const CycNumber& o) {
  CycNumber b = o;
  unify(*this, b);
  std::vector<int> nz_a, nz_b;
  for (int i = 0; i < M_; ++i) {
    if (sgn(c_[i])) nz_a.push_back(i);
    if (sgn(b.c_[i])) nz_b.push_back(i);
  }
  std::vector<Rational> out(M_);
  Rational t;
  for (int i : nz_a)
    for (int j : nz_b) {
      t = c_[i] * b.c_[j];
      out[(i + j) % M_] += t;
    }
  c_ = std::move(out);
  // Keep representatives small: products of dense elements would otherwise grow.
  if (nz_a.size() > 1 && nz_b.size() > 1) *this = reduced();
  return *this;
}

CycNumber CycNumber::inverse() const {
  // Solve y * x = 1 in the canonical basis.
  const int ph = static_cast<int>(euler_phi(M_));
  std::vector<std::vector<Rational>> A(ph, std::vector<Rational>(ph + 1));
  CycNumber base = reduced();
  for (int j = 0; j < ph; ++j) {
    CycNumber col = base * root_of_unity(j, M_);
    auto cc = col.canonical();
    for (int i = 0; i < ph; ++i) A[i][j] = cc[i];
  }
  A[0][ph] = 1;
  for (int col = 0, row = 0; col < ph; ++col) {
    int piv = -1;
    for (int r = row; r < ph; ++r)
      if (sgn(A[r][col])) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("division by zero in cyclotomic field");
    std::swap(A[row], A[piv]);
    Rational inv = 1 / A[row][col];
    for (int k = col; k <= ph; ++k) A[row][k] *= inv;
    for (int r = 0; r < ph; ++r) {
      if (r == row || sgn(A[r][col]) == 0) continue;
      Rational f = A[r][col];
      for (int k = col; k <= ph; ++k) A[r][k] -= f * A[row][k];
    }
    ++row;
  }
  std::vector<Rational> x(ph);
  for (int i = 0; i < ph; ++i) x[i] = A[i][ph];
  return from_canonical(M_, x);
}

CycNumber& CycNumber::operator/=(const CycNumber& o) {
  if (o.is_zero()) throw std::domain_error("division by zero in cyclotomic field");
  if (o.is_rational()) {
    Rational r = o.rational_value();
    for (auto& x : c_)
      if (sgn(x)) x /= r;
    return *this;
  }
  return *this *= o.inverse();
}

CycNumber CycNumber::operator-() const {
  CycNumber z = *this;
  for (auto& x : z.c_) x = -x;
  return z;
}

bool operator==(const CycNumber& a, const CycNumber& b) { return (a - b).is_zero(); }

std::string CycNumber::str() const {
  std::ostringstream os;
  auto c = canonical();
  bool first = true;
  for (size_t i = 0; i < c.size(); ++i) {
    if (sgn(c[i]) == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c[i].get_str();
    if (i) os << "*z" << M_ << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

static long squarefree_part(long n, long* square_root) {
  long s = 1, f = 1;
  for (auto [p, e] : factorize(n)) {
    for (int i = 0; i < e / 2; ++i) s *= p;
    if (e % 2) f *= p;
  }
  if (square_root) *square_root = s;
  return f;
}

int sqrt_min_conductor(long n) {
  if (n <= 0) throw InputError("sqrt_nat needs a positive integer");
  long f = squarefree_part(n, nullptr);
  long m = 1;
  for (auto [p, e] : factorize(f)) {
    (void)e;
    if (p == 2)
      m = lcm_l(m, 8);
    else if (p % 4 == 1)
      m = lcm_l(m, p);
    else
      m = lcm_l(m, 4 * p);
  }
  return static_cast<int>(m);
}

std::vector<long> sqrt_squarefree_poly(long n, int M) {
  if (M % sqrt_min_conductor(n) != 0)
    throw InputError("conductor " + std::to_string(M) + " too small for sqrt(" + std::to_string(n) +
                     "); minimal valid conductor is " + std::to_string(sqrt_min_conductor(n)));
  std::vector<long> acc(M, 0);
  acc[0] = 1;
  for (auto [p, e] : factorize(n)) {
    (void)e;
    std::vector<long> f(M, 0);
    if (p == 2) {
      f[M / 8] += 1;
      f[M - M / 8] += 1;
    } else {
      // Gauss sum sum_x e(x^2/p); for p = 3 mod 4 multiply by -i.
      int step = M / static_cast<int>(p);
      for (long x = 0; x < p; ++x) f[mod_l(x * x % p * step, M)] += 1;
      if (p % 4 == 3) {
        std::vector<long> g(M, 0);
        int mi = 3 * M / 4;  // -i = zeta^{3M/4}
        for (int k = 0; k < M; ++k) g[(k + mi) % M] += f[k];
        f = g;
      }
    }
    std::vector<long> out(M, 0);
    for (int i = 0; i < M; ++i)
      if (acc[i])
        for (int j = 0; j < M; ++j)
          if (f[j]) out[(i + j) % M] += acc[i] * f[j];
    acc = out;
  }
  return acc;
}

CycNumber sqrt_nat(long n, int M) {
  long s = 0;
  long f = squarefree_part(n, &s);
  auto poly = sqrt_squarefree_poly(f, M);
  CycNumber z = CycNumber::zero(M);
  std::vector<Rational> c(M);
  for (int i = 0; i < M; ++i) c[i] = Rational(poly[i] * s);
  return CycNumber::from_raw(M, std::move(c)).reduced();
}

CycNumber e_of(const Rational& x, int M) {
  Rational y = mod1(x) * M;
  if (!is_integer(y))
    throw ConsistencyError("e(" + to_string(x) + ") not in Q(zeta_" + std::to_string(M) + ")");
  return CycNumber::root_of_unity(y.get_num().get_si(), M);
}

}  // namespace weilrep
