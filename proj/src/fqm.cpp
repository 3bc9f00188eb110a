#include "weilrep/fqm.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

namespace weilrep {

namespace {

constexpr int kMaxElements = 1 << 16;

long denom_l(const Rational& r) { return r.get_den().get_si(); }

}  // namespace

DiscForm::DiscForm(std::vector<long> orders, std::vector<Rational> q_diag, std::vector<Off> b_off)
    : orders_(std::move(orders)), q_diag_(std::move(q_diag)) {
  const int k = static_cast<int>(orders_.size());
  if (static_cast<int>(q_diag_.size()) != k) throw InputError("q_diag length differs from orders length");
  b_.assign(k, std::vector<Rational>(k));
  for (auto& o : b_off) {
    if (o.i < 0 || o.j < 0 || o.i >= k || o.j >= k || o.i == o.j)
      throw InputError("b_off index out of range: (" + std::to_string(o.i) + "," + std::to_string(o.j) + ")");
    Rational v = mod1(o.b);
    if (sgn(b_[o.i][o.j]) && b_[o.i][o.j] != v) throw InputError("b_off given twice with different values");
    b_[o.i][o.j] = b_[o.j][o.i] = v;
  }
  validate_and_cache();
}

FormPtr DiscForm::make(std::vector<long> orders, std::vector<Rational> q_diag, std::vector<Off> b_off) {
  return std::make_shared<const DiscForm>(std::move(orders), std::move(q_diag), std::move(b_off));
}

FormPtr DiscForm::trivial() { return make({}, {}, {}); }

std::vector<DiscForm::Off> DiscForm::b_off_list() const {
  std::vector<Off> out;
  for (int i = 0; i < rank(); ++i)
    for (int j = i + 1; j < rank(); ++j)
      if (sgn(b_[i][j])) out.push_back({i, j, b_[i][j]});
  return out;
}

void DiscForm::validate_and_cache() {
  const int k = rank();
  long sz = 1;
  for (int i = 0; i < k; ++i) {
    long n = orders_[i];
    if (n < 2) throw InputError("invariant factors must be >= 2");
    sz *= n;
    if (sz > kMaxElements) throw InputError("group too large (more than 65536 elements)");
    q_diag_[i] = mod1(q_diag_[i]);
    long allowed = n % 2 ? n : 2 * n;
    if (allowed % denom_l(q_diag_[i]) != 0)
      throw InputError("q_" + std::to_string(i + 1) + " = " + to_string(q_diag_[i]) +
                       " has a denominator not dividing " + std::to_string(allowed));
    for (int j = 0; j < k; ++j)
      if (j != i && gcd_l(n, orders_[j]) % denom_l(b_[i][j]) != 0)
        throw InputError("b_" + std::to_string(i + 1) + std::to_string(j + 1) + " = " + to_string(b_[i][j]) +
                         " has a denominator not dividing gcd(n_i, n_j)");
  }
  size_ = static_cast<int>(sz);
  level_ = 1;
  exponent_ = 1;
  for (int i = 0; i < k; ++i) {
    exponent_ = lcm_l(exponent_, orders_[i]);
    level_ = lcm_l(level_, denom_l(q_diag_[i]));
    for (int j = 0; j < k; ++j)
      if (j != i) level_ = lcm_l(level_, denom_l(b_[i][j]));
  }
  M_ = static_cast<int>(lcm_l(8, level_));
  stride_.assign(k, 1);
  for (int i = k - 2; i >= 0; --i) stride_[i] = stride_[i + 1] * orders_[i + 1];
  qn_.resize(k);
  bn_.assign(k, std::vector<long>(k));
  for (int i = 0; i < k; ++i) {
    qn_[i] = Rational(q_diag_[i] * level_).get_num().get_si();
    for (int j = 0; j < k; ++j)
      bn_[i][j] = i == j ? mod_l(2 * qn_[i], level_) : Rational(b_[i][j] * level_).get_num().get_si();
  }
  coord_cache_.resize(static_cast<size_t>(size_) * k);
  for (int g = 0; g < size_; ++g) {
    long r = g;
    for (int i = 0; i < k; ++i) {
      coord_cache_[static_cast<size_t>(g) * k + i] = static_cast<int>(r / stride_[i]);
      r %= stride_[i];
    }
  }
  qexp_.resize(size_);
  const long f = M_ / level_;
  for (int g = 0; g < size_; ++g) {
    const int* x = &coord_cache_[static_cast<size_t>(g) * k];
    long acc = 0;
    for (int i = 0; i < k; ++i) {
      acc = (acc + qn_[i] * x[i] % level_ * x[i]) % level_;
      for (int j = i + 1; j < k; ++j) acc = (acc + bn_[i][j] * x[i] % level_ * x[j]) % level_;
    }
    qexp_[g] = mod_l(acc, level_) * f;
  }
  // Nondegeneracy and the dual coordinates used by rho(S).
  dual_.resize(size_);
  for (int g = 0; g < size_; ++g) {
    std::vector<long> psi(k);
    bool nz = false;
    for (int j = 0; j < k; ++j) {
      long bj = bnum(g, generator(j));
      if ((bj * orders_[j]) % level_ != 0) throw ConsistencyError("pairing denominator exceeds invariant factor");
      psi[j] = mod_l(bj * orders_[j] / level_, orders_[j]);
      if (psi[j]) nz = true;
    }
    if (g != 0 && !nz) throw InputError("degenerate bilinear form: element " + std::to_string(g) + " pairs trivially");
    dual_[g] = index(psi);
  }
  // Milgram: Gauss sum = e(s/8) sqrt|D|.
  std::vector<long> cnt(M_, 0);
  for (int g = 0; g < size_; ++g) cnt[qexp_[g]]++;
  std::vector<Rational> c(M_);
  for (int i = 0; i < M_; ++i) c[i] = Rational(cnt[i]);
  gauss_ = CycNumber::from_raw(M_, std::move(c)).reduced();
  CycNumber root = sqrt_nat(size_, M_);
  sgn_ = -1;
  for (int s = 0; s < 8 && sgn_ < 0; ++s)
    if (CycNumber::root_of_unity(s * M_ / 8, M_) * root == gauss_) sgn_ = s;
  if (sgn_ < 0) throw ConsistencyError("Milgram identity fails: Gauss sum " + gauss_.str());
}

std::vector<long> DiscForm::coords(int g) const {
  const int k = rank();
  std::vector<long> x(k);
  for (int i = 0; i < k; ++i) x[i] = coord_cache_[static_cast<size_t>(g) * k + i];
  return x;
}

int DiscForm::index(const std::vector<long>& x) const {
  long g = 0;
  for (int i = 0; i < rank(); ++i) g += mod_l(x[i], orders_[i]) * stride_[i];
  return static_cast<int>(g);
}

int DiscForm::add(int a, int b) const {
  const int k = rank();
  const int* x = &coord_cache_[static_cast<size_t>(a) * k];
  const int* y = &coord_cache_[static_cast<size_t>(b) * k];
  long g = 0;
  for (int i = 0; i < k; ++i) {
    long s = x[i] + y[i];
    if (s >= orders_[i]) s -= orders_[i];
    g += s * stride_[i];
  }
  return static_cast<int>(g);
}

int DiscForm::neg(int a) const {
  const int k = rank();
  const int* x = &coord_cache_[static_cast<size_t>(a) * k];
  long g = 0;
  for (int i = 0; i < k; ++i) g += (x[i] ? orders_[i] - x[i] : 0) * stride_[i];
  return static_cast<int>(g);
}

int DiscForm::sub(int a, int b) const { return add(a, neg(b)); }

int DiscForm::mul(long m, int a) const {
  const int k = rank();
  const int* x = &coord_cache_[static_cast<size_t>(a) * k];
  long g = 0;
  for (int i = 0; i < k; ++i) g += mod_l(mod_l(m, orders_[i]) * x[i], orders_[i]) * stride_[i];
  return static_cast<int>(g);
}

int DiscForm::order_of(int a) const {
  long o = 1;
  const int k = rank();
  for (int i = 0; i < k; ++i) {
    long xi = coord_cache_[static_cast<size_t>(a) * k + i];
    o = lcm_l(o, orders_[i] / gcd_l(orders_[i], xi));
  }
  return static_cast<int>(o);
}

int DiscForm::generator(int i) const { return static_cast<int>(stride_[i]); }

long DiscForm::bnum(int g, int h) const {
  const int k = rank();
  const int* x = &coord_cache_[static_cast<size_t>(g) * k];
  const int* y = &coord_cache_[static_cast<size_t>(h) * k];
  long acc = 0;
  for (int i = 0; i < k; ++i) {
    if (!x[i]) continue;
    for (int j = 0; j < k; ++j)
      if (y[j]) acc = (acc + bn_[i][j] * x[i] % level_ * y[j]) % level_;
  }
  return mod_l(acc, level_);
}

Rational DiscForm::q(int g) const { return frac(qexp_[g], M_); }
Rational DiscForm::b(int g, int h) const { return frac(bnum(g, h), level_); }
long DiscForm::bexp(int g, int h) const { return bnum(g, h) * (M_ / level_); }

std::string DiscForm::summary() const {
  std::ostringstream os;
  os << "orders=(";
  for (int i = 0; i < rank(); ++i) os << (i ? "," : "") << orders_[i];
  os << ") |D|=" << size_ << " level=" << level_ << " sgn=" << sgn_;
  return os.str();
}

FormPtr orthogonal_sum(const std::vector<FormPtr>& parts) {
  std::vector<long> orders;
  std::vector<Rational> qd;
  std::vector<DiscForm::Off> off;
  int base = 0;
  for (auto& P : parts) {
    for (int i = 0; i < P->rank(); ++i) {
      orders.push_back(P->orders()[i]);
      qd.push_back(P->q_diag()[i]);
    }
    for (auto o : P->b_off_list()) off.push_back({o.i + base, o.j + base, o.b});
    base += P->rank();
  }
  return DiscForm::make(orders, qd, off);
}

FormPtr rescaled(const DiscForm& D, long l) {
  std::vector<Rational> qd;
  for (auto& x : D.q_diag()) qd.push_back(x * l);
  auto off = D.b_off_list();
  for (auto& o : off) o.b *= l;
  return DiscForm::make(D.orders(), qd, off);
}

std::string to_string(SubgroupKind k) {
  switch (k) {
    case SubgroupKind::generic:
      return "generic";
    case SubgroupKind::quasi_isotropic:
      return "quasi_isotropic";
    case SubgroupKind::isotropic:
      return "isotropic";
  }
  return "?";
}

// ---------------------------------------------------------------- subgroups

namespace {

// Adds the cyclic group generated by g to the subgroup given by (list, member).
void adjoin(const DiscForm& D, std::vector<int>& list, std::vector<char>& member, int g) {
  if (member[g]) return;
  std::vector<int> base = list;
  int x = g;
  while (!member[x]) {
    for (int e : base) {
      int y = D.add(e, x);
      member[y] = 1;
      list.push_back(y);
    }
    x = D.add(x, g);
  }
}

}  // namespace

Subgroup::Subgroup(FormPtr D, const std::vector<int>& generators) : D_(std::move(D)) {
  member_.assign(D_->size(), 0);
  member_[0] = 1;
  elems_ = {0};
  for (int g : generators) {
    if (g < 0 || g >= D_->size()) throw InputError("subgroup generator out of range");
    adjoin(*D_, elems_, member_, g);
  }
  finish();
}

Subgroup Subgroup::from_elements(FormPtr D, std::vector<int> sorted_elements) {
  Subgroup H;
  H.D_ = std::move(D);
  H.elems_ = std::move(sorted_elements);
  H.member_.assign(H.D_->size(), 0);
  for (int e : H.elems_) H.member_[e] = 1;
  H.finish();
  return H;
}

Subgroup Subgroup::whole(FormPtr D) {
  std::vector<int> all(D->size());
  std::iota(all.begin(), all.end(), 0);
  return from_elements(std::move(D), std::move(all));
}

Subgroup Subgroup::zero(FormPtr D) { return from_elements(std::move(D), {0}); }

void Subgroup::finish() {
  std::sort(elems_.begin(), elems_.end());
  // Canonical generators: greedy over ascending elements.
  gens_.clear();
  std::vector<int> span{0};
  std::vector<char> in(D_->size(), 0);
  in[0] = 1;
  for (int e : elems_) {
    if (in[e]) continue;
    gens_.push_back(e);
    adjoin(*D_, span, in, e);
    if (static_cast<int>(span.size()) == order()) break;
  }
}

bool Subgroup::operator<(const Subgroup& o) const {
  if (order() != o.order()) return order() < o.order();
  return elems_ < o.elems_;
}

bool Subgroup::is_subgroup_of(const Subgroup& o) const {
  for (int e : elems_)
    if (!o.contains(e)) return false;
  return true;
}

int Subgroup::coset_min(int g) const {
  int best = g;
  for (int h : elems_) best = std::min(best, D_->add(g, h));
  return best;
}

std::string Subgroup::str() const {
  std::ostringstream os;
  os << "<";
  for (size_t i = 0; i < gens_.size(); ++i) {
    auto x = D_->coords(gens_[i]);
    os << (i ? "," : "") << "(";
    for (size_t j = 0; j < x.size(); ++j) os << (j ? " " : "") << x[j];
    os << ")";
  }
  os << ">|" << order();
  return os.str();
}

Subgroup orthogonal_complement(const Subgroup& H) {
  const auto& D = *H.form();
  std::vector<int> out;
  for (int g = 0; g < D.size(); ++g) {
    bool ok = true;
    for (int h : H.gens())
      if (D.bexp(g, h)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(g);
  }
  if (static_cast<long>(out.size()) * H.order() != D.size())
    throw ConsistencyError("|H^perp| * |H| != |D|");
  return Subgroup::from_elements(H.form(), std::move(out));
}

Subgroup subgroup_sum(const Subgroup& A, const Subgroup& B) {
  std::vector<int> g = A.gens();
  g.insert(g.end(), B.gens().begin(), B.gens().end());
  return Subgroup(A.form(), g);
}

Subgroup subgroup_intersection(const Subgroup& A, const Subgroup& B) {
  std::vector<int> out;
  for (int e : A.elements())
    if (B.contains(e)) out.push_back(e);
  return Subgroup::from_elements(A.form(), std::move(out));
}

SubgroupKind classify(const Subgroup& H) {
  const auto& D = *H.form();
  const auto& g = H.gens();
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = i; j < g.size(); ++j)
      if (D.bexp(g[i], g[j])) return SubgroupKind::generic;
  for (int x : g)
    if (D.qexp(x)) return SubgroupKind::quasi_isotropic;
  return SubgroupKind::isotropic;
}

int xi_l_H(const Subgroup& H, long l) {
  const auto& D = *H.form();
  const int M = D.conductor();
  const auto& g = H.gens();
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = i; j < g.size(); ++j)
      if (mod_l(l * D.bexp(g[i], g[j]), M))
        throw InputError("xi_l_H: pairing of generators " + std::to_string(g[i]) + " and " + std::to_string(g[j]) +
                         " is not in (1/" + std::to_string(l) + ")Z/Z");
  for (int xi = 0; xi < D.size(); ++xi) {
    bool ok = true;
    for (int x : g)
      if (mod_l(l * D.qexp(x), M) != D.bexp(x, xi)) {
        ok = false;
        break;
      }
    if (ok) return xi;
  }
  throw ConsistencyError("xi_l_H: no solution found");
}

int xi_H(const Subgroup& H) {
  if (classify(H) == SubgroupKind::generic) throw InputError("xi_H: subgroup is not quasi-isotropic");
  return xi_l_H(H, 1);
}

Subgroup maximal_isotropic_in(const Subgroup& H) {
  if (classify(H) == SubgroupKind::generic) throw InputError("maximal_isotropic_in: subgroup is not quasi-isotropic");
  const auto& D = *H.form();
  std::vector<int> out;
  for (int h : H.elements())
    if (D.qexp(h) == 0) out.push_back(h);
  Subgroup H0 = Subgroup::from_elements(H.form(), std::move(out));
  if (H.order() != H0.order() && H.order() != 2 * H0.order())
    throw ConsistencyError("maximal isotropic subgroup has index > 2");
  // H0^perp = H^perp u (xi + H^perp)
  int xi = xi_H(H);
  Subgroup Hp = orthogonal_complement(H), H0p = orthogonal_complement(H0);
  for (int x : H0p.elements())
    if (!Hp.contains(x) && !Hp.contains(D.sub(x, xi))) throw ConsistencyError("H0^perp is not H^perp u (xi + H^perp)");
  return H0;
}

std::vector<int> coset_reps(const Subgroup& K, const Subgroup& H) {
  std::vector<int> reps;
  std::vector<char> seen(K.form()->size(), 0);
  const auto& D = *K.form();
  for (int x : K.elements()) {
    if (seen[x]) continue;
    reps.push_back(x);
    for (int h : H.elements()) seen[D.add(x, h)] = 1;
  }
  return reps;
}

namespace {

// Basis (g_i, n_i) of K/H with n_1 | n_2 | ... .
std::vector<std::pair<int, long>> quotient_basis(const Subgroup& K, const Subgroup& H) {
  const auto& D = *K.form();
  const FormPtr& F = K.form();
  long index = K.order() / H.order();
  auto ord_mod = [&](int x, const std::vector<char>& member) {
    long t = 1;
    int y = x;
    while (!member[y]) {
      y = D.add(y, x);
      ++t;
    }
    return t;
  };
  std::vector<char> Hmem(D.size(), 0);
  for (int h : H.elements()) Hmem[h] = 1;
  std::vector<std::pair<long, std::vector<std::pair<int, long>>>> per_prime;
  for (auto [p, e] : factorize(index)) {
    (void)e;
    std::vector<int> P;
    for (int x : K.elements()) {
      long o = ord_mod(x, Hmem);
      while (o % p == 0) o /= p;
      if (o == 1) P.push_back(x);
    }
    std::vector<int> S = H.elements();
    std::vector<char> Smem = Hmem;
    std::vector<std::pair<int, long>> basis;
    while (S.size() < P.size()) {
      int best = -1;
      long bo = 0;
      for (int x : P) {
        if (Smem[x]) continue;
        long o = ord_mod(x, Smem);
        if (o > bo) bo = o, best = x;
      }
      int lift = -1;
      std::vector<int> Ssorted = S;
      std::sort(Ssorted.begin(), Ssorted.end());
      for (int s : Ssorted) {
        int y = D.add(best, s);
        if (ord_mod(y, Hmem) == bo) {
          lift = y;
          break;
        }
      }
      if (lift < 0) throw ConsistencyError("quotient_basis: no lift of maximal order");
      basis.push_back({lift, bo});
      adjoin(D, S, Smem, lift);
    }
    per_prime.push_back({p, basis});
  }
  size_t r = 0;
  for (auto& pp : per_prime) r = std::max(r, pp.second.size());
  std::vector<std::pair<int, long>> out;
  for (size_t i = 0; i < r; ++i) {
    int g = 0;
    long n = 1;
    for (auto& pp : per_prime)
      if (i < pp.second.size()) {
        g = D.add(g, pp.second[i].first);
        n *= pp.second[i].second;
      }
    out.push_back({g, n});
  }
  std::reverse(out.begin(), out.end());
  (void)F;
  return out;
}

}  // namespace

QuotientMap induced_form(const Subgroup& K, const Subgroup& H, long l) {
  const auto& D = *K.form();
  const int M = D.conductor();
  if (!H.is_subgroup_of(K)) throw InputError("induced_form: H is not contained in K");
  for (int h : H.gens()) {
    if (mod_l(l * D.qexp(h), M)) throw InputError("induced_form: l*q does not vanish on H");
    for (int k : K.gens())
      if (mod_l(l * D.bexp(h, k), M)) throw InputError("induced_form: l*q is not well defined on K/H");
  }
  auto basis = quotient_basis(K, H);
  std::vector<long> orders;
  std::vector<Rational> qd;
  std::vector<DiscForm::Off> off;
  for (size_t i = 0; i < basis.size(); ++i) {
    orders.push_back(basis[i].second);
    qd.push_back(mod1(D.q(basis[i].first) * l));
    for (size_t j = i + 1; j < basis.size(); ++j) {
      Rational b = mod1(D.b(basis[i].first, basis[j].first) * l);
      if (sgn(b)) off.push_back({static_cast<int>(i), static_cast<int>(j), b});
    }
  }
  QuotientMap Q;
  Q.A = DiscForm::make(orders, qd, off);
  const auto& A = *Q.A;
  std::vector<int> key_to_a(D.size(), -1);
  Q.section.assign(A.size(), -1);
  for (int a = 0; a < A.size(); ++a) {
    auto c = A.coords(a);
    int x = 0;
    for (size_t i = 0; i < c.size(); ++i) x = D.add(x, D.mul(c[i], basis[i].first));
    int key = H.coset_min(x);
    if (key_to_a[key] >= 0) throw ConsistencyError("induced_form: basis is not independent");
    key_to_a[key] = a;
    Q.section[a] = key;
  }
  Q.proj.assign(D.size(), -1);
  for (int x : K.elements()) Q.proj[x] = key_to_a[H.coset_min(x)];
  return Q;
}

QuotientMap quotient_form(const Subgroup& H) {
  if (classify(H) != SubgroupKind::isotropic) throw InputError("quotient_form: subgroup is not isotropic");
  QuotientMap Q = induced_form(orthogonal_complement(H), H, 1);
  if (Q.A->signature() != H.form()->signature()) throw ConsistencyError("quotient_form: signature changed");
  return Q;
}

std::vector<Subgroup> enumerate_subgroups(const FormPtr& D, SubgroupFilter f, int max_order) {
  if (D->size() > max_order)
    throw InputError("|D| = " + std::to_string(D->size()) + " exceeds the subgroup enumeration bound " +
                     std::to_string(max_order) + " (raise it with --max-order)");
  std::vector<Subgroup> out;
  std::set<std::vector<int>> seen;
  std::deque<Subgroup> queue;
  Subgroup z = Subgroup::zero(D);
  queue.push_back(z);
  seen.insert(z.elements());
  auto usable = [&](const Subgroup& S, int x) {
    if (f == SubgroupFilter::all) return true;
    if (D->bexp(x, x)) return false;
    if (f == SubgroupFilter::isotropic && D->qexp(x)) return false;
    for (int g : S.gens())
      if (D->bexp(g, x)) return false;
    return true;
  };
  while (!queue.empty()) {
    Subgroup S = queue.front();
    queue.pop_front();
    out.push_back(S);
    std::vector<char> done(D->size(), 0);
    for (int e : S.elements()) done[e] = 1;
    for (int x = 0; x < D->size(); ++x) {
      if (done[x]) continue;
      for (int e : S.elements()) done[D->add(x, e)] = 1;
      if (!usable(S, x)) continue;
      std::vector<int> gens = S.gens();
      gens.push_back(x);
      Subgroup T(D, gens);
      if (seen.insert(T.elements()).second) queue.push_back(T);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SylowPart> sylow_decompose(const FormPtr& D) {
  std::vector<SylowPart> parts;
  for (auto [p, e] : factorize(D->size())) {
    (void)e;
    std::vector<int> el;
    for (int x = 0; x < D->size(); ++x) {
      long o = D->order_of(x);
      while (o % p == 0) o /= p;
      if (o == 1) el.push_back(x);
    }
    Subgroup K = Subgroup::from_elements(D, el);
    QuotientMap Q = induced_form(K, Subgroup::zero(D), 1);
    parts.push_back({p, Q.A, Q.section});
  }
  return parts;
}

ComplementLift lift_complement(const Subgroup& H) {
  const FormPtr& F = H.form();
  const auto& D = *F;
  if (classify(H) == SubgroupKind::generic) throw InputError("lift_complement: subgroup is not quasi-isotropic");
  Subgroup Hp = orthogonal_complement(H);
  long idx = Hp.order() / H.order();
  long p = 0;
  if (idx > 1) {
    auto f = factorize(idx);
    if (f.size() != 1) throw InputError("lift_complement: H^perp/H is not a p-group");
    p = f[0].first;
    for (int x : Hp.elements())
      if (!H.contains(D.mul(p, x))) throw InputError("lift_complement: H^perp/H does not have prime exponent");
  }
  Subgroup H0 = maximal_isotropic_in(H);
  std::vector<int> lift_el;
  if (H0.order() == H.order()) {
    lift_el = Hp.elements();
  } else if (p % 2 == 1) {
    for (int x : Hp.elements())
      if (H0.contains(D.mul(p, x))) lift_el.push_back(x);
  } else {
    // Greedy complement of H/H0 inside H^perp/H0.
    std::vector<int> span = H0.elements();
    std::vector<char> in(D.size(), 0);
    for (int e : span) in[e] = 1;
    for (int x : Hp.elements()) {
      if (static_cast<long>(span.size()) * (H.order() / H0.order()) == Hp.order()) break;
      if (in[x]) continue;
      std::vector<int> s2 = span;
      std::vector<char> in2 = in;
      adjoin(D, s2, in2, x);
      long meet = 0;
      for (int h : H.elements()) meet += in2[h];
      if (meet == H0.order()) span = std::move(s2), in = std::move(in2);
    }
    lift_el = span;
  }
  std::sort(lift_el.begin(), lift_el.end());
  Subgroup L = Subgroup::from_elements(F, lift_el);
  if (static_cast<long>(L.order()) * (H.order() / H0.order()) != Hp.order() ||
      subgroup_intersection(L, H).order() != H0.order())
    throw ConsistencyError("lift_complement: complement construction failed");
  const int M = D.conductor();
  int xi = -1;
  for (int c = 0; c < D.size() && xi < 0; ++c) {
    bool ok = true;
    for (int g : H.gens())
      if (D.bexp(g, c) != D.qexp(g)) ok = false;
    for (int g : L.gens())
      if (ok && D.bexp(g, c)) ok = false;
    if (ok) xi = c;
  }
  if (xi < 0) throw ConsistencyError("lift_complement: no xi_{H,H~}");
  if (!H.contains(D.mul(2, xi))) throw ConsistencyError("lift_complement: 2 xi not in H");
  if (mod_l(8 * D.qexp(xi), M)) throw ConsistencyError("lift_complement: q(xi) has order not dividing 8");
  return {L, xi};
}

}  // namespace weilrep
