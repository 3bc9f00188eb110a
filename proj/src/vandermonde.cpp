#include "weilrep/vandermonde.hpp"

#include <functional>
#include <map>
#include <tuple>

#include "weilrep/field.hpp"

namespace weilrep {

namespace {

int common_conductor(const std::vector<CycNumber>& xs) {
  long M = 1;
  for (const auto& x : xs) M = lcm_l(M, x.conductor());
  return static_cast<int>(M);
}

CycNumber zpow(const CycNumber& z, long e) {
  if (e < 0) return zpow(z.inverse(), -e);
  CycNumber r(1, z.conductor()), b = z;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r.reduced();
}

Integer binom(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

void require_nonzero(const CycNumber& d, const char* what) {
  if (d.is_zero()) throw InputError(std::string(what) + ": vanishing denominator");
}

}  // namespace

CMatrix cmat_identity(int n, int M) {
  CMatrix I(n, std::vector<CycNumber>(n, CycNumber::zero(M)));
  for (int i = 0; i < n; ++i) I[i][i] = CycNumber(1, M);
  return I;
}

CMatrix cmat_mul(const CMatrix& A, const CMatrix& B) {
  const size_t n = A.size(), m = B.empty() ? 0 : B[0].size(), k = B.size();
  const int M = n && k ? A[0][0].conductor() : 1;
  CMatrix C(n, std::vector<CycNumber>(m, CycNumber::zero(M)));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (A[i][t].is_zero()) continue;
      for (size_t j = 0; j < m; ++j) C[i][j] += A[i][t] * B[t][j];
    }
  for (auto& row : C)
    for (auto& x : row) x = x.reduced();
  return C;
}

bool cmat_equal(const CMatrix& A, const CMatrix& B) {
  if (A.size() != B.size()) return false;
  for (size_t i = 0; i < A.size(); ++i) {
    if (A[i].size() != B[i].size()) return false;
    for (size_t j = 0; j < A[i].size(); ++j)
      if (A[i][j] != B[i][j]) return false;
  }
  return true;
}

VandermondeLU vandermonde_lu(const std::vector<CycNumber>& xs0) {
  const int n = static_cast<int>(xs0.size());
  const int M = common_conductor(xs0);
  std::vector<CycNumber> xs;
  for (const auto& x : xs0) xs.push_back(x.embed(M));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (xs[i] == xs[j]) throw InputError("vandermonde_lu: repeated nodes");
  VandermondeLU out;
  const CycNumber zero = CycNumber::zero(M), one(1, M);
  out.V.assign(n, std::vector<CycNumber>(n, zero));
  out.L = out.V;
  out.U = out.V;
  for (int i = 0; i < n; ++i) {
    CycNumber p = one;
    for (int j = 0; j < n; ++j) {
      out.V[i][j] = p;
      p = (p * xs[i]).reduced();
    }
  }
  // h[i][k] = h_k(x_1..x_{i+1}), built by h_k(x_1..x_i) = h_k(x_1..x_{i-1}) + x_i h_{k-1}(x_1..x_i).
  std::vector<std::vector<CycNumber>> h(n, std::vector<CycNumber>(n, zero));
  for (int i = 0; i < n; ++i) {
    h[i][0] = one;
    for (int k = 1; k < n; ++k) h[i][k] = ((i ? h[i - 1][k] : zero) + xs[i] * h[i][k - 1]).reduced();
  }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) out.U[i][j] = h[i][j - i];
  for (int i = 0; i < n; ++i) {
    CycNumber p = one;
    for (int j = 0; j <= i; ++j) {
      out.L[i][j] = p;
      p = (p * (xs[i] - xs[j])).reduced();
    }
  }
  for (int hh = 0; hh + 1 < n; ++hh) {
    CMatrix N = cmat_identity(n, M), D = cmat_identity(n, M);
    for (int i = hh + 1; i < n; ++i) {
      N[i][hh] = one;
      D[i][i] = (xs[i] - xs[hh]).reduced();
    }
    out.chain.emplace_back(std::move(N), std::move(D));
  }
  return out;
}

CMatrix chain_product(const VandermondeLU& lu) {
  const int n = static_cast<int>(lu.V.size());
  const int M = n ? lu.V[0][0].conductor() : 1;
  CMatrix P = cmat_identity(n, M);
  for (const auto& [N, D] : lu.chain) P = cmat_mul(cmat_mul(P, N), D);
  return P;
}

CCoefficients c_coefficients(long p, long k, Parity parity) {
  if (p < 3 || !is_prime(p)) throw InputError("c_coefficients: p must be an odd prime");
  if (k < 1 || k >= p) throw InputError("c_coefficients: k must lie in [1, p-1]");
  const int P = static_cast<int>(p);
  const long half = (p - 1) / 2;
  const bool odd = parity == Parity::odd;
  const long m0 = odd ? 1 : 0;
  const long nl = odd ? half : half + 1;
  const long nm = half - m0 + 1;
  const int s = odd ? -1 : 1;
  Field F(P);
  FMatrix A(F, static_cast<int>(nm), static_cast<int>(nl + 1));
  auto z = [&](long e) { return CycNumber::root_of_unity(mod_l(e, p), P); };
  for (long m = m0; m <= half; ++m) {
    const int row = static_cast<int>(m - m0);
    CycNumber lead = z(2 * m) + CycNumber(s) * z(-2 * m);
    for (long l = 0; l < nl; ++l) A.at(row, static_cast<int>(l)) = F.from(lead * z(l * m * m));
    A.at(row, static_cast<int>(nl)) = F.from(z(2 * k * m) + CycNumber(s) * z(-2 * k * m));
  }
  auto piv = rref(F, A);
  if (static_cast<long>(piv.size()) != nl || (!piv.empty() && piv.back() == nl))
    throw ConsistencyError("c_coefficients: system is not uniquely solvable");
  CCoefficients out;
  for (long l = 0; l < nl; ++l) {
    CycNumber c = F.to_cyc(A.at(static_cast<int>(l), static_cast<int>(nl)));
    out.integral = out.integral && c.is_integral();
    out.c.push_back(c);
  }
  return out;
}

CycNumber f_phi(long m, long h, const CycNumber& zeta) {
  CycNumber den = zpow(zeta, 2 * h) - zpow(zeta, -2 * h);
  require_nonzero(den, "f_phi");
  CycNumber v = (zpow(zeta, 2 * m) - zpow(zeta, -2 * m)) / den;
  for (long j = 1; j < h; ++j) {
    CycNumber d = zpow(zeta, h * h) - zpow(zeta, j * j);
    require_nonzero(d, "f_phi");
    v *= (zpow(zeta, m * m) - zpow(zeta, j * j)) / d;
  }
  return v.reduced();
}

CycNumber f_recursion(long m, long h, long r, const CycNumber& zeta) {
  if (m < 0 || h < 0 || r < 0) throw InputError("f_recursion: indices must be nonnegative");
  if (h == 0) return CycNumber(Rational(binom(m + r, 2 * r + 1)), zeta.conductor());
  return (f_recursion(m, h - 1, r, zeta) - f_phi(m, h, zeta) * f_recursion(h, h - 1, r, zeta)).reduced();
}

std::vector<ChainEntry> f_recursion_chain(long p, long k) {
  if (p < 3 || !is_prime(p)) throw InputError("f_recursion_chain: p must be an odd prime");
  const int P = static_cast<int>(p);
  const long n = (p - 1) / 2;
  const CycNumber zeta = CycNumber::root_of_unity(1, P);
  auto z = [&](long e) { return CycNumber::root_of_unity(mod_l(e, p), P); };
  std::vector<CycNumber> v(n + 1), x(n + 1);
  for (long m = 1; m <= n; ++m) {
    v[m] = ((z(2 * k * m) - z(-2 * k * m)) / (z(2 * m) - z(-2 * m))).reduced();
    x[m] = z(m * m);
  }
  const CycNumber eta = z(k) - z(-k);
  const CycNumber lead = z(2 * k) - z(-2 * k);
  std::map<std::tuple<long, long, long>, CycNumber> memo;
  std::function<CycNumber(long, long, long)> f = [&](long m, long h, long r) -> CycNumber {
    auto key = std::make_tuple(m, h, r);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    CycNumber val = h == 0 ? CycNumber(Rational(binom(m + r, 2 * r + 1)), P)
                           : (f(m, h - 1, r) - f_phi(m, h, zeta) * f(h, h - 1, r)).reduced();
    memo.emplace(key, val);
    return val;
  };
  std::vector<ChainEntry> out;
  for (long h = 1; h < n; ++h) {
    for (long i = h + 1; i <= n; ++i) v[i] = ((v[i] - v[h]) / (x[i] - x[h])).reduced();
    for (long m = h + 1; m <= n; ++m) {
      CycNumber sum = CycNumber::zero(P), e2 = CycNumber(1, P);
      for (long r = 0; r < m; ++r) {
        sum += f(m, h, r) * e2;
        e2 *= eta * eta;
      }
      CycNumber den = z(2 * m) - z(-2 * m);
      for (long j = 1; j <= h; ++j) den *= x[m] - z(j * j);
      ChainEntry e;
      e.m = m;
      e.h = h;
      e.computed = v[m];
      e.closed_form = (lead * sum / den).reduced();
      e.holds = e.computed == e.closed_form;
      out.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace weilrep
