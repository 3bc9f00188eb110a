#include "weilrep/intbasis.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <tuple>

#include "weilrep/field.hpp"

namespace weilrep {

namespace {

constexpr int64_t kLimit = int64_t(1) << 60;

enum class NodeKind { Natural, ABasis, ArrowB, Prime, TwoAdic, Tensor };

// Nonzero coefficients of one column: (entry, exponent, coefficient) at the node conductor.
struct SparseCol {
  Mono s;
  std::vector<std::tuple<int, int, int64_t>> nz;
  int64_t l1 = 0;  // largest per-exponent coefficient sum, for overflow bounds
};

// Rows of P^-1 where the leaf columns are P diag(s); row j carries mono_inv(s_j) / d_j.
struct LeafInverse {
  int Ml = 1;  // compressed conductor of P
  std::vector<Mono> rowscale;
  std::vector<std::vector<std::vector<std::pair<int, int64_t>>>> rows;  // [j][i] sparse poly at Ml
};

}  // namespace

struct BasisNode {
  NodeKind kind = NodeKind::Natural;
  FormPtr form;
  std::vector<SVec> cols;
  std::vector<BasisTag> tags;
  std::vector<SparseCol> sparse;  // orthonormal columns (ABasis; ArrowB b-part)
  // ArrowB
  Subgroup J;
  QuotientMap Q;
  int nchild = 0;
  std::shared_ptr<const BasisNode> child;
  // Prime, TwoAdic
  std::shared_ptr<const LeafInverse> inv;
  // Tensor
  std::vector<std::shared_ptr<const BasisNode>> parts;
  std::vector<std::vector<int>> embeds;
};

namespace {

using NodePtr = std::shared_ptr<const BasisNode>;

const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Natural: return "Natural";
    case NodeKind::ABasis: return "ABasis";
    case NodeKind::ArrowB: return "ArrowB";
    case NodeKind::Prime: return "Prime";
    case NodeKind::TwoAdic: return "TwoAdic";
    case NodeKind::Tensor: return "Tensor";
  }
  return "";
}

Mono lift_mono(Mono m, int f, int Mt) {
  m.k = mod_l(m.k * f, Mt);
  return m;
}

SparseCol to_sparse(const SVec& v) {
  SparseCol sc;
  sc.s = v.s;
  for (int i = 0; i < v.n; ++i) {
    if (!v.entry_nonzero_raw(i)) continue;
    int64_t sum = 0;
    for (int k = 0; k < v.M; ++k)
      if (v.at(i)[k]) {
        sc.nz.emplace_back(i, k, v.at(i)[k]);
        sum += v.at(i)[k] < 0 ? -v.at(i)[k] : v.at(i)[k];
      }
    sc.l1 = std::max(sc.l1, sum);
  }
  return sc;
}

void build_sparse(BasisNode& N, int from) {
  N.sparse.clear();
  for (size_t j = from; j < N.cols.size(); ++j) N.sparse.push_back(to_sparse(N.cols[j]));
}

// ---------------------------------------------------------------------------
// Leaf inverses, cached by form.

int exponent_stride(const std::vector<SVec>& cols, int M) {
  long g = M;
  for (const auto& v : cols)
    for (int i = 0; i < v.n; ++i)
      for (int k = 0; k < v.M; ++k)
        if (v.at(i)[k]) g = gcd_l(g, k);
  return static_cast<int>(g);
}

std::shared_ptr<const LeafInverse> leaf_inverse(const std::string& key, const std::vector<SVec>& cols, int M) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const LeafInverse>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const int n = static_cast<int>(cols.size());
  const int G = exponent_stride(cols, M);
  auto L = std::make_shared<LeafInverse>();
  L->Ml = M / G;
  Field F(L->Ml);
  FMatrix P(F, n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      std::vector<Rational> raw(L->Ml);
      for (int k = 0; k < M; k += G) raw[k / G] = Rational(static_cast<long>(cols[j].at(i)[k]));
      P.at(i, j) = F.from(CycNumber::from_raw(L->Ml, std::move(raw)));
    }
  FMatrix Pinv = inverse(F, P);
  L->rows.resize(n);
  for (int j = 0; j < n; ++j) {
    Integer d = 1;
    for (int i = 0; i < n; ++i)
      for (const auto& c : Pinv.at(j, i)) d = lcm(d, Integer(c.get_den()));
    L->rowscale.push_back(mono_mul(mono_inv(cols[j].s, M), mono_rational(Rational(1) / Rational(d)), M));
    // The inverse lives at conductor Ml; rowscale stays at M.
    L->rows[j].resize(n);
    for (int i = 0; i < n; ++i) {
      const auto& e = Pinv.at(j, i);
      for (size_t k = 0; k < e.size(); ++k) {
        if (sgn(e[k]) == 0) continue;
        Integer v(Rational(e[k] * d));
        if (!v.fits_slong_p()) throw ConsistencyError("leaf inverse coefficient too large");
        L->rows[j][i].emplace_back(static_cast<int>(k), v.get_si());
      }
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, L);
  return L;
}

// ---------------------------------------------------------------------------
// Construction.

BasisTag tag_a(const Subgroup& H, int eta, int lambda, bool isotropic) {
  BasisTag t;
  t.kind = isotropic ? "SelfDualA" : "QuasiA";
  t.H = H.str();
  t.eta = eta;
  t.lambda = lambda;
  return t;
}

NodePtr make_natural(const FormPtr& D) {
  auto N = std::make_shared<BasisNode>();
  N->kind = NodeKind::Natural;
  N->form = D;
  for (int i = 0; i < D->size(); ++i) {
    N->cols.push_back(SVec::unit(D->conductor(), D->size(), i));
    BasisTag t;
    t.kind = "Natural";
    t.lambda = i;
    N->tags.push_back(t);
  }
  return N;
}

NodePtr make_a_basis(const FormPtr& D, const Subgroup& H) {
  auto N = std::make_shared<BasisNode>();
  N->kind = NodeKind::ABasis;
  N->form = D;
  bool iso = classify(H) == SubgroupKind::isotropic;
  Subgroup W = Subgroup::whole(D);
  for (int eta : coset_reps(W, H))
    for (int lambda : coset_reps(W, H)) {
      N->cols.push_back(a_coords(H, eta, lambda));
      N->tags.push_back(tag_a(H, eta, lambda, iso));
    }
  build_sparse(*N, 0);
  return N;
}

int prime_sign(const FormPtr& D, long p) {
  return D->signature() == builtin(std::to_string(p) + "^+1")->signature() ? 1 : -1;
}

NodePtr make_prime(const FormPtr& D) {
  const long p = D->size();
  if (p < 3 || !is_prime(p)) throw InputError("prime_basis: form must have odd prime order");
  auto N = std::make_shared<BasisNode>();
  N->kind = NodeKind::Prime;
  N->form = D;
  const int sign = prime_sign(D, p);
  Subgroup W = Subgroup::whole(D);
  const int g = D->generator(0);
  for (long l = 0; l <= (p - 1) / 2; ++l) {
    SVec v = a_vector_sym(W, 0, 0, 1).coords;
    apply_T(*D, v, l);
    N->cols.push_back(std::move(v));
    BasisTag t;
    t.kind = "PrimeEven";
    t.p = p;
    t.sign = sign;
    t.l = l;
    N->tags.push_back(t);
  }
  for (long l = 0; l <= (p - 3) / 2; ++l) {
    SVec v = a_vector_sym(W, g, 0, -1).coords;
    apply_T(*D, v, l);
    N->cols.push_back(std::move(v));
    BasisTag t;
    t.kind = "PrimeOdd";
    t.p = p;
    t.sign = sign;
    t.l = l;
    N->tags.push_back(t);
  }
  N->inv = leaf_inverse("prime:" + D->summary(), N->cols, D->conductor());
  return N;
}

std::string two_adic_symbol(const DiscForm& D) {
  Rational q = mod1(D.q(D.generator(0)));
  return q == frac(1, 4) ? "2_1^+1" : "2_7^+1";
}

NodePtr make_two_adic(const FormPtr& D) {
  if (D->size() != 2 || D->q(D->generator(0)) == frac(1, 2))
    throw InputError("two_adic_basis: only the blocks 2_t^{+-1} are supported");
  auto N = std::make_shared<BasisNode>();
  N->kind = NodeKind::TwoAdic;
  N->form = D;
  Subgroup W = Subgroup::whole(D);
  for (long l = 0; l < 2; ++l) {
    SVec v = a_coords(W, 0, 0);
    apply_T(*D, v, l);
    N->cols.push_back(std::move(v));
    BasisTag t;
    t.kind = "TwoAdic";
    t.symbol = two_adic_symbol(*D);
    t.l = l;
    N->tags.push_back(t);
  }
  N->inv = leaf_inverse("two:" + D->summary(), N->cols, D->conductor());
  return N;
}

using SparsePoly = std::vector<std::pair<int, int64_t>>;

SparsePoly sparse_entry(const SVec& v, int i, int f) {
  SparsePoly out;
  for (int k = 0; k < v.M; ++k)
    if (v.at(i)[k]) out.emplace_back(k * f, v.at(i)[k]);
  return out;
}

NodePtr make_tensor(const FormPtr& D, std::vector<NodePtr> parts, std::vector<std::vector<int>> embeds) {
  auto N = std::make_shared<BasisNode>();
  N->kind = NodeKind::Tensor;
  N->form = D;
  N->parts = std::move(parts);
  N->embeds = std::move(embeds);
  const int M = D->conductor(), n = D->size();
  const size_t r = N->parts.size();
  std::vector<int> sizes;
  int total = 1;
  for (const auto& P : N->parts) {
    sizes.push_back(P->form->size());
    total *= P->form->size();
  }
  if (total != n) throw ConsistencyError("tensor: part sizes do not multiply to |D|");
  for (int j = 0; j < n; ++j) {
    std::vector<int> jd(r);
    for (size_t k = r, rest = j; k-- > 0;) {
      jd[k] = static_cast<int>(rest % sizes[k]);
      rest /= sizes[k];
    }
    std::vector<std::pair<int, SparsePoly>> acc{{0, {{0, 1}}}};
    Mono s;
    BasisTag tag;
    tag.kind = "Tensor";
    for (size_t k = 0; k < r; ++k) {
      const BasisNode& P = *N->parts[k];
      const SVec& col = P.cols[jd[k]];
      const int f = M / P.form->conductor();
      s = mono_mul(s, lift_mono(col.s, f, M), M);
      tag.inner.push_back(P.tags[jd[k]]);
      std::vector<std::pair<int, SparsePoly>> next;
      for (int i = 0; i < col.n; ++i) {
        if (!col.entry_nonzero_raw(i)) continue;
        SparsePoly e = sparse_entry(col, i, f);
        for (const auto& [idx, poly] : acc) {
          std::map<int, int64_t> prod;
          for (auto [a, x] : poly)
            for (auto [b, y] : e) prod[(a + b) % M] += x * y;
          SparsePoly pp;
          for (auto [k2, c] : prod)
            if (c) pp.emplace_back(k2, c);
          if (!pp.empty()) next.emplace_back(D->add(idx, N->embeds[k][i]), std::move(pp));
        }
      }
      acc = std::move(next);
    }
    SVec v(M, n);
    for (const auto& [idx, poly] : acc)
      for (auto [k2, c] : poly) v.at(idx)[k2] += c;
    v.s = s;
    N->cols.push_back(std::move(v));
    N->tags.push_back(std::move(tag));
  }
  return N;
}

// Choice of H: largest |H|, then largest isotropic part, then the least subgroup.
struct Choice {
  Subgroup H, H0, Hp;
};

std::vector<Choice> ranked_candidates(const FormPtr& D, int max_order) {
  std::vector<Choice> out;
  for (auto& H : enumerate_subgroups(D, SubgroupFilter::quasi_isotropic, max_order))
    out.push_back({H, maximal_isotropic_in(H), orthogonal_complement(H)});
  std::stable_sort(out.begin(), out.end(), [](const Choice& a, const Choice& b) {
    if (a.H.order() != b.H.order()) return a.H.order() > b.H.order();
    if (a.H0.order() != b.H0.order()) return a.H0.order() > b.H0.order();
    return a.H < b.H;
  });
  return out;
}

bool has_isotropic_element(const DiscForm& D) {
  for (int g = 1; g < D.size(); ++g)
    if (D.qexp(g) == 0) return true;
  return false;
}

NodePtr build(const FormPtr& D, int max_order, std::vector<std::string>& trace);

NodePtr build_arrow(const FormPtr& D, const Choice& c, long p, int max_order, std::vector<std::string>& trace) {
  Subgroup J;
  for (const auto& K : enumerate_subgroups(D, SubgroupFilter::isotropic, max_order))
    if (K.order() == p && K.is_subgroup_of(c.H0)) {
      J = K;
      break;
    }
  BContext ctx = make_bcontext(c.H, J);
  auto N = std::make_shared<BasisNode>();
  N->kind = NodeKind::ArrowB;
  N->form = D;
  N->J = J;
  N->Q = quotient_form(J);
  trace.push_back("arrow J=" + J.str() + " H=" + c.H.str());
  N->child = build(N->Q.A, max_order, trace);
  trace.pop_back();
  for (size_t j = 0; j < N->child->cols.size(); ++j) {
    N->cols.push_back(arrow_up(J, N->Q, N->child->cols[j]));
    BasisTag t;
    t.kind = "Arrow";
    t.J = J.str();
    t.inner.push_back(N->child->tags[j]);
    N->tags.push_back(std::move(t));
  }
  N->nchild = static_cast<int>(N->cols.size());
  Subgroup W = Subgroup::whole(D);
  auto add_b = [&](int eta, int lambda) {
    IndexedVector v = b_vector(ctx, eta, lambda, true);
    N->cols.push_back(std::move(v.coords));
    BasisTag t;
    t.kind = "BVec";
    t.H = c.H.str();
    t.J = J.str();
    t.eta = eta;
    t.lambda = lambda;
    t.l = v.l;
    N->tags.push_back(std::move(t));
  };
  const auto reps_H = coset_reps(W, c.H);
  const auto reps_Hp = coset_reps(W, c.Hp);
  for (int lambda : reps_Hp) {
    if (in_Jperp(ctx, lambda)) continue;
    for (int eta : reps_H) add_b(eta, lambda);
  }
  for (int lambda : coset_reps(ctx.Jp, c.H))
    for (int eta : reps_Hp)
      if (!in_Jperp(ctx, eta)) add_b(eta, lambda);
  if (static_cast<int>(N->cols.size()) != D->size())
    throw ConsistencyError("arrow node: " + std::to_string(N->cols.size()) + " columns for |D| = " +
                           std::to_string(D->size()));
  build_sparse(*N, N->nchild);
  return N;
}

NodePtr build_prime_power(const FormPtr& D, long p, int max_order, std::vector<std::string>& trace) {
  auto cands = ranked_candidates(D, max_order);
  for (const auto& c : cands) {
    if (c.Hp == c.H) {
      trace.push_back("a-basis H=" + c.H.str());
      auto N = make_a_basis(D, c.H);
      trace.pop_back();
      return N;
    }
    if (c.H0.order() > 1) {
      try {
        return build_arrow(D, c, p, max_order, trace);
      } catch (const InputError&) {
        continue;  // H^perp/H not of exponent p; try the next candidate
      }
    }
  }
  if (D->size() == p && p > 2) return make_prime(D);
  if (D->size() == 2) return make_two_adic(D);
  if (has_isotropic_element(*D)) throw ConsistencyError("no usable quasi-isotropic subgroup for " + D->summary());
  for (int x = 1; x < D->size(); ++x) {
    if (D->order_of(x) != p || D->bexp(x, x) == 0) continue;
    Subgroup X(D, {x});
    if (X.order() == D->size()) continue;
    Subgroup Xp = orthogonal_complement(X);
    QuotientMap A = induced_form(X, Subgroup::zero(D));
    QuotientMap B = induced_form(Xp, Subgroup::zero(D));
    trace.push_back("split x=" + std::to_string(x));
    std::vector<NodePtr> parts{build(A.A, max_order, trace), build(B.A, max_order, trace)};
    trace.pop_back();
    return make_tensor(D, std::move(parts), {A.section, B.section});
  }
  throw ConsistencyError("no construction applies to " + D->summary());
}

NodePtr build(const FormPtr& D, int max_order, std::vector<std::string>& trace) {
  if (D->size() == 1) {
    auto N = std::make_shared<BasisNode>();
    N->kind = NodeKind::ABasis;
    N->form = D;
    Subgroup Z = Subgroup::zero(D);
    N->cols.push_back(a_coords(Z, 0, 0));
    N->tags.push_back(tag_a(Z, 0, 0, true));
    build_sparse(*N, 0);
    return N;
  }
  auto parts = sylow_decompose(D);
  if (parts.size() > 1) {
    std::vector<NodePtr> nodes;
    std::vector<std::vector<int>> embeds;
    for (const auto& P : parts) {
      trace.push_back("sylow p=" + std::to_string(P.p));
      nodes.push_back(build(P.form, max_order, trace));
      trace.pop_back();
      embeds.push_back(P.embed);
    }
    return make_tensor(D, std::move(nodes), std::move(embeds));
  }
  return build_prime_power(D, parts.at(0).p, max_order, trace);
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " > ") + x;
  return s;
}

// ---------------------------------------------------------------------------
// The recursive left inverse. y lives at the top conductor Mt with one scale; the
// result has one (Mono, poly) pair per column, all at Mt.

struct Coef {
  Mono m;
  std::vector<int64_t> p;
};

void guard(bool ok) {
  if (!ok) throw ConsistencyError("coefficient overflow in basis solve");
}

std::vector<Coef> solve(const BasisNode& N, SVec y);

using SparseEntries = std::vector<std::vector<std::pair<int, int64_t>>>;

SparseEntries sparse_entries(const SVec& y) {
  SparseEntries e(y.n);
  for (int i = 0; i < y.n; ++i) {
    const int64_t* yi = y.at(i);
    for (int t = 0; t < y.M; ++t)
      if (yi[t]) e[i].emplace_back(t, yi[t]);
  }
  return e;
}

Coef orth_coef(const SparseCol& c, const SVec& y, const SparseEntries& ye, int Mn) {
  const int Mt = y.M, f = Mt / Mn;
  Coef out;
  out.m = mono_mul(lift_mono(mono_conj(c.s, Mn), f, Mt), y.s, Mt);
  out.p.assign(Mt, 0);
  for (const auto& [i, e, v] : c.nz) {
    // conj(zeta^e) y_i
    const int sh = static_cast<int>((static_cast<long>(e) * f) % Mt);
    for (auto [t, yv] : ye[i]) {
      int dst = t - sh;
      if (dst < 0) dst += Mt;
      out.p[dst] += v * yv;
    }
  }
  return out;
}

void ensure_small(SVec& y, int64_t factor) {
  if (factor <= 0) return;
  if (y.max_abs() > kLimit / factor) {
    y.tidy();
    guard(y.max_abs() <= kLimit / factor);
  }
}

std::vector<Coef> solve_orth(const BasisNode& N, SVec& y) {
  std::vector<Coef> out;
  int64_t bound = 0;
  for (const auto& c : N.sparse) bound = std::max<int64_t>(bound, c.l1 * static_cast<int64_t>(c.nz.size()));
  ensure_small(y, bound);
  const SparseEntries ye = sparse_entries(y);
  for (const auto& c : N.sparse) out.push_back(orth_coef(c, y, ye, N.form->conductor()));
  return out;
}

std::vector<Coef> solve_leaf(const BasisNode& N, SVec& y) {
  const LeafInverse& L = *N.inv;
  const int Mt = y.M, n = y.n;
  const int f = Mt / N.form->conductor();
  const int fl = Mt / L.Ml;
  int64_t bound = 0;
  for (int j = 0; j < n; ++j) {
    int64_t b = 0;
    for (int i = 0; i < n; ++i)
      for (auto [k, v] : L.rows[j][i]) b += v < 0 ? -v : v;
    bound = std::max(bound, b);
  }
  // Each output coefficient sums at most Ml * bound products of size max|y|.
  ensure_small(y, bound * L.Ml);
  const SparseEntries ye = sparse_entries(y);
  std::vector<Coef> out(n);
  for (int j = 0; j < n; ++j) {
    std::vector<int64_t>& acc = out[j].p;
    acc.assign(Mt, 0);
    for (int i = 0; i < n; ++i) {
      for (auto [k, v] : L.rows[j][i]) {
        const int sh = static_cast<int>((static_cast<long>(k) * fl) % Mt);
        for (auto [t, yv] : ye[i]) {
          int dst = t + sh;
          if (dst >= Mt) dst -= Mt;
          acc[dst] += v * yv;
        }
      }
    }
    out[j].m = mono_mul(lift_mono(L.rowscale[j], f, Mt), y.s, Mt);
  }
  return out;
}

bool same_mono(const Mono& a, const Mono& b, int M) {
  return a.n == b.n && a.r == b.r && mod_l(a.k, M) == mod_l(b.k, M);
}

std::vector<Coef> solve_tensor(const BasisNode& N, const SVec& y) {
  const int Mt = y.M;
  const DiscForm& D = *N.form;
  const size_t r = N.parts.size();
  std::vector<int> sizes, stride(r, 1);
  for (const auto& P : N.parts) sizes.push_back(P->form->size());
  for (size_t k = r - 1; k-- > 0;) stride[k] = stride[k + 1] * sizes[k + 1];
  const int n = D.size();
  std::vector<Coef> W(n);
  for (int t = 0; t < n; ++t) {
    int d = 0;
    for (size_t k = 0; k < r; ++k) d = D.add(d, N.embeds[k][(t / stride[k]) % sizes[k]]);
    W[t].m = y.s;
    W[t].p.assign(y.at(d), y.at(d) + Mt);
  }
  for (size_t a = 0; a < r; ++a) {
    const int na = sizes[a];
    for (int t0 = 0; t0 < n; ++t0) {
      if ((t0 / stride[a]) % na) continue;
      SVec z(Mt, na);
      bool have = false;
      for (int i = 0; i < na; ++i) {
        Coef& c = W[t0 + i * stride[a]];
        bool nz = std::any_of(c.p.begin(), c.p.end(), [](int64_t x) { return x != 0; });
        if (!nz) continue;
        if (!have) {
          z.s = c.m;
          have = true;
        } else if (!same_mono(c.m, z.s, Mt)) {
          Mono ratio = mono_mul(c.m, mono_inv(z.s, Mt), Mt);
          if (ratio.n != 1) throw ConsistencyError("tensor solve: mixed square-root scales");
          Integer num = ratio.r.get_num(), den = ratio.r.get_den();
          guard(num.fits_slong_p() && den.fits_slong_p());
          const int64_t a1 = num.get_si(), b1 = den.get_si();
          if (b1 != 1) {
            for (int i2 = 0; i2 < i; ++i2)
              for (int k = 0; k < Mt; ++k) guard(!__builtin_mul_overflow(z.at(i2)[k], b1, &z.at(i2)[k]));
            z.s.r /= b1;
          }
          std::vector<int64_t> q(Mt);
          for (int k = 0; k < Mt; ++k) guard(!__builtin_mul_overflow(c.p[k], a1, &q[mod_l(k + ratio.k, Mt)]));
          c.p = std::move(q);
        }
        std::copy(c.p.begin(), c.p.end(), z.at(i));
      }
      if (!have) continue;
      auto sol = solve(*N.parts[a], std::move(z));
      for (int j = 0; j < na; ++j) W[t0 + j * stride[a]] = std::move(sol[j]);
    }
  }
  return W;
}

std::vector<Coef> solve(const BasisNode& N, SVec y) {
  const int Mt = y.M;
  switch (N.kind) {
    case NodeKind::Natural: {
      std::vector<Coef> out(y.n);
      for (int i = 0; i < y.n; ++i) out[i] = {y.s, std::vector<int64_t>(y.at(i), y.at(i) + Mt)};
      return out;
    }
    case NodeKind::ABasis: return solve_orth(N, y);
    case NodeKind::Prime:
    case NodeKind::TwoAdic: return solve_leaf(N, y);
    case NodeKind::Tensor: return solve_tensor(N, y);
    case NodeKind::ArrowB: {
      std::vector<Coef> b = solve_orth(N, y);
      const int na = N.Q.A->size();
      SVec z(Mt, na);
      for (int g = 0; g < y.n; ++g) {
        int a = N.Q.proj[g];
        if (a < 0 || !y.entry_nonzero_raw(g)) continue;
        for (int k = 0; k < Mt; ++k) z.at(a)[k] += y.at(g)[k];
      }
      z.s = mono_mul(y.s, mono_inv_sqrt(N.J.order()), Mt);
      std::vector<Coef> out = solve(*N.child, std::move(z));
      for (auto& c : b) out.push_back(std::move(c));
      return out;
    }
  }
  return {};
}

const std::vector<long>& sqrt_poly_cached(long n, int M) {
  static std::mutex mu;
  static std::map<std::pair<long, int>, std::vector<long>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, M);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, sqrt_squarefree_poly(n, M)).first;
  return it->second;
}

// Canonical coordinates (integers) of the poly part times zeta^k sqrt(n), as int64.
std::vector<int64_t> canonical_ints(const Coef& c, int M) {
  std::vector<int64_t> q(M, 0);
  if (c.m.n == 1) {
    for (int t = 0; t < M; ++t) q[mod_l(t + c.m.k, M)] = c.p[t];
  } else {
    const auto& sq = sqrt_poly_cached(c.m.n, M);
    for (int s = 0; s < M; ++s) {
      if (!sq[s]) continue;
      for (int t = 0; t < M; ++t) {
        if (!c.p[t]) continue;
        int64_t v;
        guard(!__builtin_mul_overflow(c.p[t], static_cast<int64_t>(sq[s]), &v));
        int64_t& dst = q[mod_l(t + s + c.m.k, M)];
        guard(!__builtin_add_overflow(dst, v, &dst));
      }
    }
  }
  reduce_int_mod_phi(M, q.data());
  return q;
}

// Denominator of the algebraic number c (1 iff integral).
Integer coef_denominator(const Coef& c, int M) {
  auto q = canonical_ints(c, M);
  int64_t g = 0;
  for (int64_t x : q) g = std::gcd(g, x < 0 ? -x : x);
  if (g == 0) return 1;
  Integer den = c.m.r.get_den();
  Integer gg = static_cast<long>(g);
  return den / gcd(den, gg);
}

CycNumber coef_value(const Coef& c, int M) {
  std::vector<Rational> raw(M);
  for (int t = 0; t < M; ++t) raw[t] = Rational(static_cast<long>(c.p[t]));
  return (mono_value(c.m, M) * CycNumber::from_raw(M, std::move(raw))).reduced();
}

bool is_zero_coef(const Coef& c, int M) {
  if (sgn(c.m.r) == 0) return true;
  std::vector<int64_t> q = c.p;
  reduce_int_mod_phi(M, q.data());
  return std::all_of(q.begin(), q.end(), [](int64_t x) { return x == 0; });
}

}  // namespace

// ---------------------------------------------------------------------------

int BasisSpec::size() const { return static_cast<int>(root->cols.size()); }
const SVec& BasisSpec::column(int j) const { return root->cols.at(j); }
const BasisTag& BasisSpec::tag(int j) const { return root->tags.at(j); }
std::string BasisSpec::node_kind() const { return kind_name(root->kind); }

std::vector<std::vector<CycNumber>> BasisSpec::coords() const {
  const int n = size();
  std::vector<std::vector<CycNumber>> out(n, std::vector<CycNumber>(n));
  for (int j = 0; j < n; ++j) {
    auto e = column(j).entries();
    for (int i = 0; i < n; ++i) out[i][j] = e[i];
  }
  return out;
}

bool BasisSpec::orthonormal() const {
  std::vector<const BasisNode*> stack{root.get()};
  while (!stack.empty()) {
    const BasisNode* N = stack.back();
    stack.pop_back();
    if (N->kind == NodeKind::Prime || N->kind == NodeKind::TwoAdic) return false;
    if (N->child) stack.push_back(N->child.get());
    for (const auto& P : N->parts) stack.push_back(P.get());
  }
  return true;
}

BasisSpec integral_basis(const FormPtr& D, int max_order) {
  if (D->size() > max_order)
    throw InputError("integral_basis: |D| = " + std::to_string(D->size()) + " exceeds the bound " +
                     std::to_string(max_order));
  std::vector<std::string> trace;
  try {
    return BasisSpec(D, build(D, max_order, trace));
  } catch (const ConsistencyError& e) {
    throw ConsistencyError(std::string(e.what()) + " [construction: " + D->summary() +
                           (trace.empty() ? "" : " > " + join(trace)) + "]");
  }
}

BasisSpec prime_basis(const FormPtr& D) { return BasisSpec(D, make_prime(D)); }

BasisSpec prime_basis(long p, int sign) {
  if (p < 3 || !is_prime(p)) throw InputError("prime_basis: p must be an odd prime");
  if (sign != 1 && sign != -1) throw InputError("prime_basis: sign must be +1 or -1");
  return prime_basis(builtin(std::to_string(p) + (sign > 0 ? "^+1" : "^-1")));
}

BasisSpec two_adic_basis(const FormPtr& D) { return BasisSpec(D, make_two_adic(D)); }

BasisSpec two_adic_basis(const std::string& symbol) {
  FormPtr D;
  try {
    D = builtin(symbol);
  } catch (const InputError&) {
    throw InputError("two_adic_basis: unsupported symbol " + symbol);
  }
  if (D->size() != 2) throw InputError("two_adic_basis: unsupported symbol " + symbol);
  return two_adic_basis(D);
}

BasisSpec natural_basis(const FormPtr& D) { return BasisSpec(D, make_natural(D)); }

std::vector<CycNumber> basis_coordinates(const BasisSpec& B, const SVec& y) {
  const int M = B.form->conductor();
  if (y.n != B.form->size() || y.M != M) throw InputError("basis_coordinates: vector does not match the form");
  auto sol = solve(*B.root, y);
  std::vector<CycNumber> out;
  for (const auto& c : sol) out.push_back(coef_value(c, M));
  return out;
}

bool left_inverse_check(const BasisSpec& B) {
  const int M = B.form->conductor();
  const CycNumber one(1, M);
  for (int j = 0; j < B.size(); ++j) {
    auto sol = solve(*B.root, B.column(j));
    for (int i = 0; i < B.size(); ++i) {
      if (i == j) {
        if (coef_value(sol[i], M) != one) return false;
      } else if (!is_zero_coef(sol[i], M)) {
        return false;
      }
    }
  }
  return true;
}

IntegralityReport verify_integrality(const BasisSpec& B, int random_words, uint64_t seed) {
  if (!left_inverse_check(B)) throw ConsistencyError("verify_integrality: basis is not invertible");
  const DiscForm& D = *B.form;
  const int M = D.conductor();
  std::vector<MpWord> words{MpWord::T(1), MpWord::T(-1), MpWord::S(1), MpWord::S(-1)};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < random_words; ++i) words.push_back(random_word(rng, 10));
  IntegralityReport rep;
  for (const auto& w : words) {
    WordCheck wc;
    wc.word = w.str();
    for (int j = 0; j < B.size(); ++j) {
      SVec y = apply(D, w, B.column(j));
      for (const auto& c : solve(*B.root, std::move(y))) {
        Integer d = coef_denominator(c, M);
        if (d > wc.worst_denominator) wc.worst_denominator = d;
      }
    }
    wc.integral = wc.worst_denominator == 1;
    rep.verdict = rep.verdict && wc.integral;
    rep.words.push_back(std::move(wc));
  }
  return rep;
}

}  // namespace weilrep
