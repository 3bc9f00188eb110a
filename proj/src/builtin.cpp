#include <regex>

#include "weilrep/fqm.hpp"

namespace weilrep {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\n"), b = s.find_last_not_of(" \t\n");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<std::string> split_sum(std::string s) {
  for (const std::string sep : {"⊕", "(+)", "oplus"}) {
    size_t pos;
    while ((pos = s.find(sep)) != std::string::npos) s.replace(pos, sep.size(), "|");
  }
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == '|') {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  return out;
}

// q = p^k for an odd prime p; returns p or 0.
long odd_prime_base(long q) {
  auto f = factorize(q);
  if (q < 3 || f.size() != 1 || f[0].first == 2) return 0;
  return f[0].first;
}

long least_nonresidue(long p) {
  for (long a = 2; a < p; ++a)
    if (legendre(a, p) == -1) return a;
  return 0;
}

FormPtr odd_block(long q, int eps, int n) {
  long p = odd_prime_base(q);
  if (!p) throw InputError("'" + std::to_string(q) + "' is not an odd prime power");
  std::vector<Rational> qd(n, frac((q + 1) / 2, q));
  if (eps < 0) qd[n - 1] = frac(mod_l((q + 1) / 2 * least_nonresidue(p), q), q);
  return DiscForm::make(std::vector<long>(n, q), qd, {});
}

int kron2(long u) { return (u % 8 == 1 || u % 8 == 7) ? 1 : -1; }

FormPtr two_adic_odd_block(long q, int t, int eps, int n) {
  if (q < 2 || (q & (q - 1))) throw InputError("2-adic block base must be a power of 2");
  // lexicographically least non-decreasing unit tuple with the right oddity and sign
  std::vector<int> u(n, 1);
  const int units[4] = {1, 3, 5, 7};
  std::vector<int> idx(n, 0);
  while (true) {
    int sum = 0, sign = 1;
    for (int i = 0; i < n; ++i) {
      sum += units[idx[i]];
      sign *= kron2(units[idx[i]]);
    }
    if (mod_l(sum, 8) == mod_l(t, 8) && sign == eps) {
      std::vector<Rational> qd;
      for (int i = 0; i < n; ++i) qd.push_back(frac(units[idx[i]], 2 * q));
      return DiscForm::make(std::vector<long>(n, q), qd, {});
    }
    int i = n - 1;
    while (i >= 0 && idx[i] == 3) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < n; ++j) idx[j] = idx[i];
  }
  throw InputError("inconsistent 2-adic symbol " + std::to_string(q) + "_" + std::to_string(t) +
                   "^" + (eps > 0 ? "+" : "-") + std::to_string(n));
}

FormPtr two_adic_even_block(long q, int eps, int n) {
  if (q < 2 || (q & (q - 1))) throw InputError("2-adic block base must be a power of 2");
  if (n % 2) throw InputError("even-type 2-adic block needs even rank");
  std::vector<long> orders(n, q);
  std::vector<Rational> qd(n);
  std::vector<DiscForm::Off> off;
  for (int i = 0; i < n; i += 2) off.push_back({i, i + 1, frac(1, q)});
  if (eps < 0) qd[n - 2] = qd[n - 1] = frac(1, q);
  return DiscForm::make(orders, qd, off);
}

FormPtr hyperbolic(const std::vector<long>& g) {
  const int k = static_cast<int>(g.size());
  std::vector<long> orders = g;
  orders.insert(orders.end(), g.begin(), g.end());
  std::vector<DiscForm::Off> off;
  for (int i = 0; i < k; ++i) off.push_back({i, k + i, frac(1, g[i])});
  std::vector<long> o2;
  std::vector<Rational> qd;
  // Drop trivial factors.
  std::vector<int> keep;
  for (int i = 0; i < 2 * k; ++i)
    if (orders[i] > 1) keep.push_back(i);
  std::vector<int> pos(2 * k, -1);
  for (size_t j = 0; j < keep.size(); ++j) pos[keep[j]] = static_cast<int>(j), o2.push_back(orders[keep[j]]);
  qd.assign(o2.size(), Rational(0));
  std::vector<DiscForm::Off> off2;
  for (auto& o : off)
    if (pos[o.i] >= 0) off2.push_back({pos[o.i], pos[o.j], o.b});
  return DiscForm::make(o2, qd, off2);
}

FormPtr cyclic(long N, long a) {
  if (N == 1) return DiscForm::trivial();
  if (gcd_l(a, N) != 1) throw InputError("Z(N,a) needs gcd(a, N) = 1");
  Rational q = N % 2 ? frac(mod_l(a * ((N + 1) / 2), N), N) : frac(mod_l(a, 2 * N), 2 * N);
  return DiscForm::make({N}, {q}, {});
}

FormPtr parse_block(const std::string& tok) {
  static const std::regex re_triv(R"(^(1|I|0)$)");
  static const std::regex re_U(R"(^U\((\d+)\)$)");
  static const std::regex re_UG(R"(^UG\(\s*(\d+(\s*,\s*\d+)*)\s*\)$)");
  static const std::regex re_Z(R"(^Z\((\d+)\s*(,\s*(-?\d+))?\)$)");
  static const std::regex re_II(R"(^(\d+)_II\^([+-])(\d+)$)");
  static const std::regex re_2t(R"(^(\d+)_(\d+)\^([+-])(\d+)$)");
  static const std::regex re_odd(R"(^(\d+)\^([+-])(\d+)$)");
  std::smatch m;
  auto num = [](const std::string& s) {
    if (s.size() > 6) throw InputError("number too large in symbol: " + s);
    return std::stol(s);
  };
  if (std::regex_match(tok, m, re_triv)) return DiscForm::trivial();
  if (std::regex_match(tok, m, re_U)) {
    long N = num(m[1]);
    if (N < 1) throw InputError("U(N) needs N >= 1");
    return N == 1 ? DiscForm::trivial() : hyperbolic({N});
  }
  if (std::regex_match(tok, m, re_UG)) {
    std::vector<long> g;
    std::string body = m[1];
    std::regex re_n(R"(\d+)");
    for (auto it = std::sregex_iterator(body.begin(), body.end(), re_n); it != std::sregex_iterator(); ++it)
      g.push_back(num(it->str()));
    for (long x : g)
      if (x < 1) throw InputError("UG factors must be >= 1");
    return hyperbolic(g);
  }
  if (std::regex_match(tok, m, re_Z)) {
    long N = num(m[1]);
    long a = m[3].matched ? std::stol(m[3]) : 1;
    if (N < 1) throw InputError("Z(N) needs N >= 1");
    return cyclic(N, a);
  }
  if (std::regex_match(tok, m, re_II)) {
    long n = num(m[3]);
    if (n < 2) throw InputError("rank must be >= 2 for even type");
    return two_adic_even_block(num(m[1]), m[2] == "+" ? 1 : -1, static_cast<int>(n));
  }
  if (std::regex_match(tok, m, re_2t)) {
    long n = num(m[4]), t = num(m[2]);
    if (n < 1 || t > 7 || (t - n) % 2) throw InputError("bad oddity or rank in '" + tok + "'");
    return two_adic_odd_block(num(m[1]), static_cast<int>(t), m[3] == "+" ? 1 : -1, static_cast<int>(n));
  }
  if (std::regex_match(tok, m, re_odd)) {
    long n = num(m[3]);
    if (n < 1) throw InputError("rank must be >= 1");
    return odd_block(num(m[1]), m[2] == "+" ? 1 : -1, static_cast<int>(n));
  }
  throw InputError("unknown symbol '" + tok + "'\n" + builtin_grammar());
}

}  // namespace

std::string builtin_grammar() {
  return "supported symbols (join with '⊕' or '(+)'):\n"
         "  q^+n, q^-n      odd prime power q, rank n (e.g. 3^+1, 27^-1, 3^-4)\n"
         "  q_t^+n, q_t^-n  2-adic odd block, q = 2^k, oddity t (e.g. 2_1^+1, 4_3^-1, 2_2^+2)\n"
         "  q_II^+n, q_II^-n  2-adic even block, q = 2^k, n even (e.g. 2_II^-2)\n"
         "  U(N)            hyperbolic plane Z/N + Z/N, q(ae+bf) = ab/N\n"
         "  UG(n1,...,nk)   generalized hyperbolic plane of G = sum Z/n_i\n"
         "  Z(N) or Z(N,a)  cyclic form, q = a x^2/(2N) (N even) or a(N+1)/2 x^2/N (N odd)\n"
         "  1               trivial form";
}

FormPtr builtin(const std::string& symbol) {
  auto toks = split_sum(symbol);
  std::vector<FormPtr> parts;
  for (auto& t : toks) {
    if (t.empty()) throw InputError("empty summand in symbol '" + symbol + "'\n" + builtin_grammar());
    parts.push_back(parse_block(t));
  }
  if (parts.size() == 1) return parts[0];
  return orthogonal_sum(parts);
}

}  // namespace weilrep
