#include "weilrep/invariants.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "weilrep/field.hpp"
#include "weilrep/vectors.hpp"

namespace weilrep {

namespace {

// z in Q(zeta_d) inside Q(zeta_M), rewritten at conductor d.
CycNumber restrict_to(const CycNumber& z, int d) {
  const int M = z.conductor();
  if (M % d) throw std::invalid_argument("restrict_to: conductor does not divide");
  const int pd = static_cast<int>(euler_phi(d));
  Field Q(1);
  auto target = z.canonical();
  const int rows = static_cast<int>(target.size());
  FMatrix A(Q, rows, pd + 1);
  for (int j = 0; j < pd; ++j) {
    auto c = CycNumber::root_of_unity(static_cast<long>(j) * (M / d), M).canonical();
    for (int i = 0; i < rows; ++i) A.at(i, j)[0] = c[i];
  }
  for (int i = 0; i < rows; ++i) A.at(i, pd)[0] = target[i];
  auto piv = rref(Q, A);
  if (!piv.empty() && piv.back() == pd) throw ConsistencyError("restrict_to: element not in the subfield");
  std::vector<Rational> c(d);
  for (size_t r = 0; r < piv.size(); ++r) c[piv[r]] = A.at(static_cast<int>(r), pd)[0];
  return CycNumber::from_raw(d, std::move(c)).reduced();
}

// Integer rescaling of a rational vector: clear denominators, remove the content.
std::vector<Integer> integer_rescale(const std::vector<Rational>& v) {
  Integer den = 1, g = 0;
  for (const auto& x : v) den = lcm(den, Integer(x.get_den()));
  std::vector<Integer> out;
  for (const auto& x : v) {
    Integer y(Rational(x * den));
    out.push_back(y);
    g = gcd(g, y);
  }
  if (g != 0) {
    // first nonzero entry positive
    for (const auto& y : out)
      if (y != 0) {
        if (y < 0) g = -g;
        break;
      }
    for (auto& y : out) y /= g;
  }
  return out;
}

int rational_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  Field Q(1);
  FMatrix A(Q, static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) A.at(static_cast<int>(i), static_cast<int>(j))[0] = rows[i][j];
  return rank(Q, A);
}

bool fixed_by_generators(const DiscForm& D, const SVec& v) {
  return equal(apply(D, MpWord::T(), v), v) && equal(apply(D, MpWord::S(), v), v);
}

SVec int_vector(const DiscForm& D, const std::vector<long>& x) {
  SVec v(D.conductor(), D.size());
  for (int i = 0; i < D.size(); ++i) v.at(i)[0] = x[i];
  return v;
}

SVec int_vector(const DiscForm& D, const std::vector<Integer>& x) {
  std::vector<long> y;
  for (const auto& a : x) {
    if (!a.fits_slong_p()) throw ConsistencyError("integer vector entry too large");
    y.push_back(a.get_si());
  }
  return int_vector(D, y);
}

}  // namespace

// ---------------------------------------------------------------------------
// SL2(Z/N)

long sl2_order(long N) {
  long r = N * N * N;
  for (auto [p, e] : factorize(N)) r = r / (p * p) * (p * p - 1);
  return r;
}

Mat2 lift_sl2(const Mat2& m0, long N) {
  if (N == 1) return {1, 0, 0, 1};
  Mat2 m = mat_mod(m0, N);
  if (mod_l(m[0] * m[3] - m[1] * m[2], N) != 1 % N) throw InputError("lift_sl2: determinant is not 1 mod N");
  long c = m[2] == 0 ? N : m[2];
  long d = m[3];
  while (gcd_l(c, d) != 1) d += N;
  // a0 d - b0 c = 1 by the extended Euclidean algorithm.
  long x0 = 1, y0 = 0, x1 = 0, y1 = 1, r0 = d, r1 = c;
  while (r1) {
    long q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  // x0 d + y0 c = 1
  long a0 = x0, b0 = -y0;
  // (a - a0, b - b0) = k (c, d) mod N; with u c + v d = 1, k = (a - a0) u + (b - b0) v.
  long u = y0, v = x0;
  long k = mod_l((m[0] - a0) % N * u % N + (m[1] - b0) % N * v % N, N);
  Mat2 out{a0 + k * c, b0 + k * d, c, d};
  if (out[0] * out[3] - out[1] * out[2] != 1 || mat_mod(out, N) != m) throw ConsistencyError("lift_sl2 failed");
  return out;
}

const std::vector<ConjClass>& sl2_classes(long N) {
  static std::mutex mu;
  static std::map<long, std::vector<ConjClass>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  auto idx = [N](const Mat2& m) { return ((m[0] * N + m[1]) * N + m[2]) * N + m[3]; };
  const Mat2 S{0, -1, 1, 0}, Si{0, 1, -1, 0}, T{1, 1, 0, 1}, Ti{1, -1, 0, 1};
  std::vector<char> seen(static_cast<size_t>(N * N * N * N), 0);
  std::vector<ConjClass> out;
  long total = 0;
  for (long a = 0; a < N; ++a)
    for (long b = 0; b < N; ++b)
      for (long c = 0; c < N; ++c)
        for (long d = 0; d < N; ++d) {
          Mat2 m{a, b, c, d};
          if (mod_l(a * d - b * c, N) != 1 % N || seen[idx(m)]) continue;
          ConjClass cc;
          cc.rep = m;
          std::deque<Mat2> q{m};
          seen[idx(m)] = 1;
          while (!q.empty()) {
            Mat2 x = q.front();
            q.pop_front();
            ++cc.size;
            for (auto [g, gi] : {std::make_pair(S, Si), std::make_pair(T, Ti)}) {
              Mat2 y = mat_mod(mat_mul(mat_mul(g, x), gi), N);
              if (!seen[idx(y)]) {
                seen[idx(y)] = 1;
                q.push_back(y);
              }
            }
          }
          cc.word = matrix_to_word(lift_sl2(m, N));
          total += cc.size;
          out.push_back(std::move(cc));
        }
  if (total != sl2_order(N)) throw ConsistencyError("sl2_classes: class sizes do not add up");
  return cache.emplace(N, std::move(out)).first->second;
}

// ---------------------------------------------------------------------------

std::string to_string(Triviality t) {
  switch (t) {
    case Triviality::odd_signature: return "odd_signature";
    case Triviality::surjectivity: return "surjectivity";
    case Triviality::inconclusive: return "inconclusive";
  }
  return "";
}

Triviality triviality_check(const FormPtr& D) {
  if (D->signature() % 2) return Triviality::odd_signature;
  const int n = D->size();
  std::vector<int> iso;
  for (int g = 0; g < n; ++g)
    if (D->qexp(g) == 0) iso.push_back(g);
  std::vector<int> perp;
  for (int x = 0; x < n; ++x)
    if (std::all_of(iso.begin(), iso.end(), [&](int y) { return D->bexp(x, y) == 0; })) perp.push_back(x);
  Subgroup P = Subgroup::from_elements(D, perp);
  std::set<int> hit;
  for (int g = 0; g < n; ++g)
    if (D->qexp(g) != 0) hit.insert(P.coset_min(g));
  return static_cast<long>(hit.size()) * P.order() == n ? Triviality::surjectivity : Triviality::inconclusive;
}

InvariantReport invariant_subspace(const FormPtr& D) {
  InvariantReport rep;
  rep.triviality = triviality_check(D);
  if (D->signature() % 2) return rep;
  const int n = D->size(), M = D->conductor();
  std::vector<int> iso;
  for (int g = 0; g < n; ++g)
    if (D->qexp(g) == 0) iso.push_back(g);
  // rho(S) = c E with E = (e(-(d, g))); solve (E - c^-1 I) x = 0 for x supported on iso.
  CycNumber cinv = (e_of(frac(D->signature(), 8), M) * sqrt_nat(n, M)).reduced();
  const int Mp = static_cast<int>(lcm_l(D->exponent(), cinv.minimal_conductor()));
  const CycNumber c2 = restrict_to(cinv, Mp);
  Field F(Mp);
  std::vector<Field::Elt> roots(Mp);
  for (int k = 0; k < Mp; ++k) roots[k] = F.from(CycNumber::root_of_unity(k, Mp));
  const Field::Elt cel = F.from(c2);
  FMatrix A(F, n, static_cast<int>(iso.size()));
  for (size_t c = 0; c < iso.size(); ++c) {
    for (int d = 0; d < n; ++d) A.at(d, static_cast<int>(c)) = roots[mod_l(-D->bexp(d, iso[c]) * Mp / M, Mp)];
    F.submul(A.at(iso[c], static_cast<int>(c)), F.one(), cel);
  }
  auto K = kernel(F, A);
  rep.dim_kernel = static_cast<long>(K.size());
  for (const auto& k : K) {
    std::vector<CycNumber> v(n, CycNumber::zero(M));
    bool rat = true;
    std::vector<Rational> q(n);
    for (size_t c = 0; c < iso.size(); ++c) {
      CycNumber z = F.to_cyc(k[c]);
      v[iso[c]] = z.embed(M).reduced();
      if (z.is_rational())
        q[iso[c]] = z.rational_value();
      else
        rat = false;
    }
    rep.basis.push_back(std::move(v));
    rep.rational = rep.rational && rat;
    if (rat) rep.integer_basis.push_back(integer_rescale(q));
  }
  if (!rep.rational) rep.integer_basis.clear();
  return rep;
}

long dim_frobenius(const FormPtr& D, long max_level) {
  if (D->signature() % 2) throw InputError("dim_frobenius: odd signature, the invariant space is zero by the triviality check");
  const long N = D->level();
  if (N > max_level)
    throw InputError("dim_frobenius: level " + std::to_string(N) + " exceeds the budget " + std::to_string(max_level));
  const int n = D->size(), M = D->conductor();
  CycNumber sum = CycNumber::zero(M);
  for (const auto& cc : sl2_classes(N)) {
    CycNumber tr = CycNumber::zero(M);
    for (int i = 0; i < n; ++i) {
      SVec v = apply(*D, cc.word, SVec::unit(M, n, i));
      if (v.entry_nonzero_raw(i)) tr += v.entry(i);
    }
    sum += CycNumber(Rational(cc.size), M) * tr;
  }
  sum = sum.reduced();
  if (!sum.is_rational()) throw ConsistencyError("dim_frobenius: trace sum is not rational");
  Rational d = sum.rational_value() / Rational(sl2_order(N));
  if (!is_integer(d) || sgn(d) < 0) throw ConsistencyError("dim_frobenius: average trace " + to_string(d) + " is not a nonnegative integer");
  return Integer(d).get_si();
}

// ---------------------------------------------------------------------------
// Closed formulas.

long psi_dedekind(long n) {
  long r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p + 1);
  return r;
}

HyperbolicDim dim_hyperbolic(const std::vector<long>& G) {
  long order = 1;
  for (long g : G) {
    if (g < 1) throw InputError("dim_hyperbolic: invariant factors must be positive");
    order *= g;
  }
  if (order > 64) throw InputError("dim_hyperbolic: |G| > 64 is beyond the enumeration budget");
  const int n = static_cast<int>(order);
  const int r = static_cast<int>(G.size());
  std::vector<std::vector<long>> co(n, std::vector<long>(r));
  for (int x = 0; x < n; ++x)
    for (int i = r, rest = x; i-- > 0;) {
      co[x][i] = rest % G[i];
      rest /= static_cast<int>(G[i]);
    }
  auto index = [&](const std::vector<long>& c) {
    long x = 0;
    for (int i = 0; i < r; ++i) x = x * G[i] + mod_l(c[i], G[i]);
    return static_cast<int>(x);
  };
  auto add = [&](int a, int b) {
    std::vector<long> c(r);
    for (int i = 0; i < r; ++i) c[i] = co[a][i] + co[b][i];
    return index(c);
  };
  auto closure = [&](uint64_t s) {
    std::vector<int> el;
    for (int x = 0; x < n; ++x)
      if (s >> x & 1) el.push_back(x);
    for (size_t i = 0; i < el.size(); ++i)
      for (size_t j = 0; j <= i; ++j) {
        int z = add(el[i], el[j]);
        if (!(s >> z & 1)) {
          s |= uint64_t(1) << z;
          el.push_back(z);
        }
      }
    return s;
  };
  std::set<uint64_t> subs{1};
  std::deque<uint64_t> q{1};
  while (!q.empty()) {
    uint64_t s = q.front();
    q.pop_front();
    for (int x = 0; x < n; ++x) {
      if (s >> x & 1) continue;
      uint64_t t = closure(s | uint64_t(1) << x);
      if (subs.insert(t).second) q.push_back(t);
    }
  }
  HyperbolicDim out;
  for (uint64_t s : subs) {
    std::vector<int> el;
    for (int x = 0; x < n; ++x)
      if (s >> x & 1) el.push_back(x);
    const long k = static_cast<long>(el.size());
    auto killed = [&](long d) {
      long c = 0;
      for (int x : el) {
        int y = 0;
        for (long t = 0; t < d; ++t) y = add(y, x);
        c += y == 0;
      }
      return c;
    };
    long e = 1;
    for (int x : el) {
      long o = 1;
      for (int y = x; y != 0; y = add(y, x)) ++o;
      e = lcm_l(e, o);
    }
    const long nn = e, mm = k / e;
    bool two_gen = nn % mm == 0;
    for (long d : divisors(nn))
      if (two_gen && killed(d) != gcd_l(d, nn) * gcd_l(d, mm)) two_gen = false;
    if (!two_gen) {
      ++out.higher_rank;
      continue;
    }
    ++out.S[{nn, mm}];
  }
  for (auto [nm, cnt] : out.S) out.dim += cnt * euler_phi(nm.second);
  if (G.size() == 2 || G.size() == 1) {
    const long N = G[0], Mg = G.size() == 2 ? G[1] : 1;
    const long Nb = std::max(N, Mg), Mb = std::min(N, Mg);
    for (long nn : divisors(Nb))
      for (long mm : divisors(nn)) {
        if (Mb % mm) continue;
        long brute = out.S.count({nn, mm}) ? out.S.at({nn, mm}) : 0;
        long a = psi_dedekind(nn / mm), b = psi_dedekind(nn / gcd_l(nn, Mb));
        long closed = a % b == 0 ? a / b : -1;
        if (closed != brute) out.closed_form_mismatches.emplace_back(nn, mm, brute, closed);
      }
  }
  return out;
}

long dim_DNM(long N, long M) {
  if (N < 1 || M < 1 || N % M) throw InputError("dim_DNM: need M | N");
  Rational total = 0;
  for (long t : divisors(M))
    for (long k : divisors(N / t)) {
      if (gcd_l(k, M / t) != 1) continue;
      for (long d : divisors(t)) total += Rational(psi_dedekind(k * d) * euler_phi(t / d)) / Rational(psi_dedekind(k));
    }
  if (!is_integer(total)) throw ConsistencyError("dim_DNM: sum is not an integer");
  return Integer(total).get_si();
}

long dim_DNM_prime_power(long p, long r, long s) {
  if (s > r || s < 0) throw InputError("dim_DNM_prime_power: need 0 <= s <= r");
  long ps = 1;
  for (long i = 0; i < s; ++i) ps *= p;
  long term2 = s == 0 ? 0 : (r - 1 - s) * s * (ps / p);
  return (r + 1 - s) * (s + 1) * ps - term2;
}

long dim_DNM_M_prime(long N, long p) {
  if (!is_prime(p) || N % p) throw InputError("dim_DNM_M_prime: need a prime p dividing N");
  long Np = 1;
  for (long x = N; x % p == 0; x /= p) Np *= p;
  return (2 * p - 1) * sigma0(N / p) + 2 * sigma0(N / Np);
}

long dim_fpvs(long p, long d, long r, bool* realizable) {
  if (!is_prime(p) || d < 0 || r < 0) throw InputError("dim_fpvs: need a prime p and d, r >= 0");
  if (realizable) *realizable = r <= 2 && !(p == 2 && r == 1);
  auto pw = [](long b, long e) {
    Integer x = 1;
    for (long i = 0; i < e; ++i) x *= b;
    return x;
  };
  Integer first = 0;
  if (d >= 1) first = pw(p, r) * (pw(p, d) - 1) * (pw(p, d - 1) - 1) / (p * p - 1);
  Integer second = (pw(p, d) - 1) / (p - 1);
  Integer v = first + second + (r == 0 ? 1 : 0);
  return v.get_si();
}

std::optional<FpvsShape> fpvs_shape(const FormPtr& D) {
  const long n = D->size();
  if (n == 1 || n > kDefaultMaxOrder) return std::nullopt;
  auto f = factorize(n);
  if (f.size() != 1) return std::nullopt;
  const long p = f[0].first;
  if (D->level() != p) return std::nullopt;  // exponent p and, for p = 2, even type
  long maxiso = 1;
  for (const auto& H : enumerate_subgroups(D, SubgroupFilter::isotropic)) maxiso = std::max<long>(maxiso, H.order());
  FpvsShape s;
  s.p = p;
  while (maxiso > 1) {
    maxiso /= p;
    ++s.d;
  }
  s.r = f[0].second - 2 * s.d;
  return s;
}

InvMethod parse_method(const std::string& s) {
  if (s == "kernel") return InvMethod::kernel;
  if (s == "frobenius") return InvMethod::frobenius;
  if (s == "formula") return InvMethod::formula;
  if (s == "all") return InvMethod::all;
  throw InputError("unknown method '" + s + "' (kernel|frobenius|formula|all)");
}

InvariantReport invariant_report(const FormPtr& D, InvMethod method, const std::optional<std::vector<long>>& G,
                                 long max_level) {
  InvariantReport rep = invariant_subspace(D);
  std::vector<long> dims{rep.dim_kernel};
  if (method == InvMethod::frobenius || method == InvMethod::all) {
    const bool applicable = D->signature() % 2 == 0 && D->level() <= max_level;
    if (applicable)
      rep.dim_frobenius = dim_frobenius(D, max_level);
    else if (method == InvMethod::frobenius)
      rep.dim_frobenius = dim_frobenius(D, max_level);  // raises the explanatory error
    if (rep.dim_frobenius) dims.push_back(*rep.dim_frobenius);
  }
  if (method == InvMethod::formula || method == InvMethod::all) {
    if (G) {
      rep.formulas.push_back({"hyperbolic", dim_hyperbolic(*G).dim});
      if (G->size() == 1) rep.formulas.push_back({"sigma0", sigma0((*G)[0])});
      if (G->size() == 2) {
        long a = std::max((*G)[0], (*G)[1]), b = std::min((*G)[0], (*G)[1]);
        if (a % b == 0) rep.formulas.push_back({"DNM", dim_DNM(a, b)});
      }
    }
    if (D->size() <= kDefaultMaxOrder)
      if (auto s = fpvs_shape(D)) rep.formulas.push_back({"Fpvs", dim_fpvs(s->p, s->d, s->r)});
    if (rep.triviality != Triviality::inconclusive) rep.formulas.push_back({"triviality", 0});
    for (const auto& f : rep.formulas) dims.push_back(f.value);
  }
  rep.agreement = std::all_of(dims.begin(), dims.end(), [&](long d) { return d == dims[0]; });
  return rep;
}

// ---------------------------------------------------------------------------

HypCycBasis basis_U_N(long N) {
  if (N < 1) throw InputError("basis_U_N: N must be positive");
  HypCycBasis out;
  out.form = builtin("U(" + std::to_string(N) + ")");
  const DiscForm& D = *out.form;
  std::vector<std::vector<Rational>> rows;
  for (long d : divisors(N)) {
    std::vector<long> x(D.size(), 0);
    for (int g = 0; g < D.size(); ++g) {
      auto c = D.coords(g);
      c.resize(2, 0);  // U(1) has no coordinates
      if (c[0] % d == 0 && c[1] % (N / d) == 0) x[g] = 1;
    }
    SVec v = int_vector(D, x);
    out.invariant = out.invariant && fixed_by_generators(D, v);
    Subgroup Hd = N == 1 ? Subgroup::zero(out.form) : Subgroup(out.form, {D.index({d % N, 0}), D.index({0, (N / d) % N})});
    SVec a = mono_inv(mono_inv_sqrt(N), D.conductor()) * a_coords(Hd, 0, 0);
    out.arrow_identity = out.arrow_identity && Hd.order() == N && equal(a, v);
    std::vector<Rational> row(x.begin(), x.end());
    rows.push_back(row);
    out.divisors.push_back(d);
    out.vectors.push_back(std::move(v));
  }
  out.independent = rational_rank(rows) == static_cast<int>(rows.size());
  return out;
}

SpecialInvariant special_invariant(const FormPtr& D) {
  auto s = fpvs_shape(D);
  if (!s || s->d != 1 || s->r != 2)
    throw InputError("special_invariant: needs p^-4 (p odd) or 2_II^-4");
  SpecialInvariant out;
  out.vector.assign(D->size(), 0);
  for (int g = 1; g < D->size(); ++g)
    if (D->qexp(g) == 0) out.vector[g] = 1;
  out.vector[0] = -(s->p - 1);
  SVec v = int_vector(*D, out.vector);
  out.invariant = fixed_by_generators(*D, v);
  InvariantReport rep = invariant_subspace(D);
  out.spans = out.invariant && rep.dim_kernel == 1;
  return out;
}

long slnm_orbit_count(long n, long m, long max_pairs) {
  if (n < 1 || m < 1 || n % m) throw InputError("slnm_orbit_count: need m | n");
  const long G = n * m;
  if (G * G > max_pairs) throw InputError("slnm_orbit_count: enumeration budget exceeded");
  auto add = [&](long x, long y) { return mod_l(x / m + y / m, n) * m + mod_l(x % m + y % m, m); };
  auto neg = [&](long x) { return mod_l(-(x / m), n) * m + mod_l(-(x % m), m); };
  auto generates = [&](long x, long y) {
    std::vector<char> seen(G, 0);
    long cnt = 0;
    long a = 0;
    for (long i = 0; i < n; ++i) {
      long b = a;
      for (long j = 0; j < n; ++j) {
        if (!seen[b]) {
          seen[b] = 1;
          ++cnt;
        }
        b = add(b, y);
      }
      a = add(a, x);
    }
    return cnt == G;
  };
  std::vector<long> parent(G * G, -1);
  std::function<long(long)> find = [&](long a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (long x = 0; x < G; ++x)
    for (long y = 0; y < G; ++y)
      if (generates(x, y)) parent[x * G + y] = x * G + y;
  for (long x = 0; x < G; ++x)
    for (long y = 0; y < G; ++y) {
      long a = x * G + y;
      if (parent[a] < 0) continue;
      // T: (x, y) -> (x + y, y); S: (x, y) -> (-y, x)
      for (long b : {add(x, y) * G + y, neg(y) * G + x}) {
        long ra = find(a), rb = find(b);
        if (ra != rb) parent[ra] = rb;
      }
    }
  long orbits = 0;
  for (long a = 0; a < G * G; ++a)
    if (parent[a] == a) ++orbits;
  return orbits;
}

SpanCheck self_dual_span(const FormPtr& D, const InvariantReport& rep) {
  SpanCheck out;
  out.dim = rep.dim_kernel;
  std::vector<std::vector<Rational>> rows;
  for (const auto& H : enumerate_subgroups(D, SubgroupFilter::isotropic)) {
    if (static_cast<long>(H.order()) * H.order() != D->size()) continue;
    ++out.subgroups;
    std::vector<long> x(D->size(), 0);
    for (int h : H.elements()) x[h] = 1;
    out.invariant = out.invariant && fixed_by_generators(*D, int_vector(*D, x));
    rows.emplace_back(x.begin(), x.end());
  }
  out.rank = rational_rank(rows);
  return out;
}

SpanCheck lower_arrow_span(const FormPtr& D, const InvariantReport& rep) {
  SpanCheck out;
  out.dim = rep.dim_kernel;
  auto s = fpvs_shape(D);
  if (!s || s->r == 0 || s->d == 0) return out;
  long target = 1;
  for (long i = 0; i + 1 < s->d; ++i) target *= s->p;
  std::vector<std::vector<Rational>> rows;
  for (const auto& H : enumerate_subgroups(D, SubgroupFilter::isotropic)) {
    if (H.order() != target) continue;
    ++out.subgroups;
    QuotientMap Q = quotient_form(H);
    InvariantReport inner = invariant_subspace(Q.A);
    if (!inner.rational) {
      out.invariant = false;
      continue;
    }
    for (const auto& w : inner.integer_basis) {
      SVec up = arrow_up(H, Q, int_vector(*Q.A, w));
      out.invariant = out.invariant && fixed_by_generators(*D, up);
      std::vector<Rational> row;
      for (const auto& z : up.entries()) {
        if (!z.is_rational()) {
          out.invariant = false;
          row.emplace_back(0);
        } else {
          row.push_back(z.rational_value());
        }
      }
      rows.push_back(std::move(row));
    }
  }
  out.rank = rational_rank(rows);
  return out;
}

}  // namespace weilrep
