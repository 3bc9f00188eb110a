#include "weilrep/weil.hpp"

#include <cctype>
#include <sstream>

namespace weilrep {

Mat2 mat_mul(const Mat2& x, const Mat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

Mat2 mat_mod(const Mat2& x, long N) { return {mod_l(x[0], N), mod_l(x[1], N), mod_l(x[2], N), mod_l(x[3], N)}; }

std::string to_string(const Mat2& m) {
  std::ostringstream os;
  os << "[[" << m[0] << "," << m[1] << "],[" << m[2] << "," << m[3] << "]]";
  return os.str();
}

namespace {

Mat2 letter_matrix(Letter l) {
  switch (l) {
    case Letter::T: return {1, 1, 0, 1};
    case Letter::Tinv: return {1, -1, 0, 1};
    case Letter::S: return {0, -1, 1, 0};
    case Letter::Sinv: return {0, 1, -1, 0};
    case Letter::Z: return {-1, 0, 0, -1};
  }
  return {1, 0, 0, 1};
}

}  // namespace

MpWord MpWord::T(long k) { return MpWord(std::vector<Letter>(std::labs(k), k >= 0 ? Letter::T : Letter::Tinv)); }
MpWord MpWord::S(long k) { return MpWord(std::vector<Letter>(std::labs(k), k >= 0 ? Letter::S : Letter::Sinv)); }

MpWord MpWord::Z(long k) {
  if (k >= 0) return MpWord(std::vector<Letter>(k, Letter::Z));
  return S(2 * k);
}

MpWord MpWord::parse(const std::string& s) {
  std::vector<Letter> out;
  size_t i = 0;
  while (i < s.size()) {
    char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*' || ch == '.') {
      ++i;
      continue;
    }
    if (ch == '1' || ch == 'I') {
      ++i;
      continue;
    }
    if (ch != 'S' && ch != 'T' && ch != 'Z') throw InputError(std::string("bad letter '") + ch + "' in word '" + s + "'");
    ++i;
    long e = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      size_t j = i;
      if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
      size_t k = j;
      while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
      if (k == j || k - j > 6) throw InputError("bad exponent in word '" + s + "'");
      e = std::stol(s.substr(i, k - i));
      i = k;
    }
    MpWord piece = ch == 'S' ? S(e) : ch == 'T' ? T(e) : Z(e);
    out.insert(out.end(), piece.w_.begin(), piece.w_.end());
  }
  return MpWord(std::move(out));
}

Mat2 MpWord::matrix() const {
  Mat2 m{1, 0, 0, 1};
  for (Letter l : w_) m = mat_mul(m, letter_matrix(l));
  return m;
}

MpWord MpWord::inverse() const {
  std::vector<Letter> out;
  for (auto it = w_.rbegin(); it != w_.rend(); ++it) {
    switch (*it) {
      case Letter::T: out.push_back(Letter::Tinv); break;
      case Letter::Tinv: out.push_back(Letter::T); break;
      case Letter::S: out.push_back(Letter::Sinv); break;
      case Letter::Sinv: out.push_back(Letter::S); break;
      case Letter::Z:
        out.push_back(Letter::Sinv);
        out.push_back(Letter::Sinv);
        break;
    }
  }
  return MpWord(std::move(out));
}

MpWord MpWord::operator*(const MpWord& o) const {
  std::vector<Letter> out = w_;
  out.insert(out.end(), o.w_.begin(), o.w_.end());
  return MpWord(std::move(out));
}

std::string MpWord::str() const {
  if (w_.empty()) return "1";
  std::string out;
  size_t i = 0;
  while (i < w_.size()) {
    size_t j = i;
    while (j < w_.size() && w_[j] == w_[i]) ++j;
    long n = static_cast<long>(j - i);
    const char* name = "";
    long e = n;
    switch (w_[i]) {
      case Letter::T: name = "T"; break;
      case Letter::Tinv: name = "T", e = -n; break;
      case Letter::S: name = "S"; break;
      case Letter::Sinv: name = "S", e = -n; break;
      case Letter::Z: name = "Z"; break;
    }
    if (!out.empty()) out += ' ';
    out += name;
    if (e != 1) out += "^" + std::to_string(e);
    i = j;
  }
  return out;
}

MpWord matrix_to_word(const Mat2& m0, bool nearest) {
  if (m0[0] * m0[3] - m0[1] * m0[2] != 1) throw InputError("matrix " + to_string(m0) + " is not in SL2(Z)");
  Mat2 cur = m0;
  std::vector<Letter> out;
  auto floor_div = [](long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  };
  std::vector<long> qs;
  while (cur[2] != 0) {
    long q = nearest ? floor_div(2 * cur[0] + cur[2], 2 * cur[2]) : floor_div(cur[0], cur[2]);
    // cur = T^q S cur'  with cur' = S^-1 T^-q cur
    Mat2 t{cur[0] - q * cur[2], cur[1] - q * cur[3], cur[2], cur[3]};
    cur = {t[2], t[3], -t[0], -t[1]};
    qs.push_back(q);
  }
  // cur = +-(1, b; 0, 1)
  bool negate = cur[0] < 0;
  for (long q : qs) {
    auto tq = MpWord::T(q).letters();
    out.insert(out.end(), tq.begin(), tq.end());
    out.push_back(Letter::S);
  }
  // Z T^k = (-1, -k; 0, -1)
  long b = negate ? -cur[1] : cur[1];
  if (negate) out.insert(out.begin(), Letter::Z);
  auto tb = MpWord::T(b).letters();
  out.insert(out.end(), tb.begin(), tb.end());
  MpWord w(std::move(out));
  if (w.matrix() != m0) throw ConsistencyError("matrix_to_word failed for " + to_string(m0));
  return w;
}

MpWord random_word(std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len), let(0, 3);
  const Letter L[4] = {Letter::T, Letter::Tinv, Letter::S, Letter::Sinv};
  std::vector<Letter> w(len(rng));
  for (auto& x : w) x = L[let(rng)];
  return MpWord(std::move(w));
}

// ---------------------------------------------------------------------------

void apply_T(const DiscForm& D, SVec& v, long l) {
  for (int g = 0; g < v.n; ++g)
    if (v.entry_nonzero_raw(g)) v.rotate_entry(g, l * D.qexp(g));
}

void apply_Z(const DiscForm& D, SVec& v) {
  SVec out(v.M, v.n);
  for (int g = 0; g < v.n; ++g) std::copy(v.at(g), v.at(g) + v.M, out.at(D.neg(g)));
  out.s = mono_mul(v.s, mono_root(-D.signature() * (v.M / 4)), v.M);
  v = std::move(out);
}

void apply_S(const DiscForm& D, SVec& v, bool inverse) {
  const int M = v.M, n = v.n;
  if (n != D.size() || M != D.conductor()) throw std::invalid_argument("apply_S: vector does not match the form");
  const int sign = inverse ? 1 : -1;
  std::vector<int64_t> buf(v.c.size());
  std::vector<char> nz(n);
  for (int j = 0; j < D.rank(); ++j) {
    const long nj = D.orders()[j];
    const int stride = D.generator(j);
    const long step = M / nj;
    if (v.max_abs() > (int64_t(1) << 52) / nj) {
      v.tidy();
      if (v.max_abs() > (int64_t(1) << 52) / nj) throw ConsistencyError("coefficient growth in rho(S)");
    }
    std::fill(buf.begin(), buf.end(), 0);
    for (int g = 0; g < n; ++g) nz[g] = v.entry_nonzero_raw(g);
    for (int base = 0; base < n; ++base) {
      if ((base / stride) % nj) continue;
      for (long t = 0; t < nj; ++t) {
        int src = base + static_cast<int>(t) * stride;
        if (!nz[src]) continue;
        const int64_t* in = v.at(src);
        for (long kap = 0; kap < nj; ++kap) {
          int64_t* out = buf.data() + static_cast<size_t>(base + kap * stride) * M;
          long r = mod_l(sign * step * t * kap, M);
          for (long k = 0; k < M - r; ++k) out[k + r] += in[k];
          for (long k = M - r; k < M; ++k) out[k + r - M] += in[k];
        }
      }
    }
    std::swap(v.c, buf);
  }
  for (int g = 0; g < n; ++g) {
    const int64_t* src = v.at(D.dual_index(g));
    std::copy(src, src + M, buf.begin() + static_cast<size_t>(g) * M);
  }
  std::swap(v.c, buf);
  Mono sc = mono_mul(mono_inv_sqrt(n), mono_root(sign * D.signature() * (M / 8)), M);
  v.s = mono_mul(v.s, sc, M);
  if (v.max_abs() > (int64_t(1) << 36)) v.tidy();
}

void apply_word(const DiscForm& D, const MpWord& w, SVec& v) {
  const auto& L = w.letters();
  for (size_t i = L.size(); i-- > 0;) {
    switch (L[i]) {
      case Letter::T:
      case Letter::Tinv: {
        long l = 0;
        size_t j = i;
        while (true) {
          l += L[j] == Letter::T ? 1 : -1;
          if (j == 0 || (L[j - 1] != Letter::T && L[j - 1] != Letter::Tinv)) break;
          --j;
        }
        apply_T(D, v, l);
        i = j;
        break;
      }
      case Letter::S: apply_S(D, v, false); break;
      case Letter::Sinv: apply_S(D, v, true); break;
      case Letter::Z: apply_Z(D, v); break;
    }
  }
}

SVec apply(const DiscForm& D, const MpWord& w, SVec v) {
  apply_word(D, w, v);
  return v;
}

RepMatrix rho_word(const FormPtr& D, const MpWord& w) {
  const int n = D->size(), M = D->conductor();
  RepMatrix R{D, std::vector<std::vector<CycNumber>>(n, std::vector<CycNumber>(n))};
  for (int col = 0; col < n; ++col) {
    SVec v = apply(*D, w, SVec::unit(M, n, col));
    for (int row = 0; row < n; ++row) R.entries[row][col] = v.entry(row);
  }
  return R;
}

RepMatrix rho_T(const FormPtr& D) { return rho_word(D, MpWord::T()); }
RepMatrix rho_S(const FormPtr& D) { return rho_word(D, MpWord::S()); }

bool is_unitary(const RepMatrix& R) {
  const int n = static_cast<int>(R.entries.size());
  const int M = R.form->conductor();
  std::vector<SVec> cols;
  for (int j = 0; j < n; ++j) {
    std::vector<CycNumber> e(n);
    for (int i = 0; i < n; ++i) e[i] = R.entries[i][j];
    cols.push_back(from_entries(M, e));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (inner(cols[i], cols[j]) != CycNumber(i == j ? 1 : 0)) return false;
  return true;
}

// ---------------------------------------------------------------------------

namespace {

// x R_c = R_c' N' with R = (1, T, ST); returns c' and the chi exponent of N'.
std::pair<int, int> gamma_step(Letter x, int c) {
  switch (x) {
    case Letter::T: {
      static const std::pair<int, int> t[3] = {{1, 0}, {0, 0}, {2, -1}};
      return t[c];
    }
    case Letter::Tinv: {
      static const std::pair<int, int> t[3] = {{1, 0}, {0, 0}, {2, 1}};
      return t[c];
    }
    case Letter::S: {
      static const std::pair<int, int> t[3] = {{0, 1}, {2, 0}, {1, 2}};
      return t[c];
    }
    case Letter::Sinv: {
      static const std::pair<int, int> t[3] = {{0, -1}, {2, -2}, {1, 0}};
      return t[c];
    }
    case Letter::Z: return {c, 2};
  }
  return {c, 0};
}

}  // namespace

CosetInfo gamma_odd_coset(const MpWord& w) {
  CosetInfo ci;
  const auto& L = w.letters();
  for (size_t i = L.size(); i-- > 0;) {
    auto [c, j] = gamma_step(L[i], ci.coset);
    ci.coset = c;
    ci.chi_exp += j;
  }
  if (ci.coset == 2) ci.chi_exp += 1;  // chi(ST) = chi(S)
  ci.chi_exp = mod_l(ci.chi_exp, 8);
  return ci;
}

int coset_mod2(const Mat2& m0) {
  Mat2 m = mat_mod(m0, 2);
  auto is = [&](const Mat2& x) { return m == x; };
  if (is({1, 0, 0, 1}) || is({0, 1, 1, 0})) return 0;
  if (is({1, 1, 0, 1}) || is({1, 1, 1, 0})) return 1;
  return 2;
}

CycNumber chi(const DiscForm& D, const MpWord& w) {
  const int M = D.conductor();
  auto ci = gamma_odd_coset(w);
  return CycNumber::root_of_unity(mod_l(-D.signature() * ci.chi_exp * (M / 8), M), M);
}

Pair act(const DiscForm& D, const Mat2& m, const Pair& v) {
  return {D.add(D.mul(m[0], v.eta), D.mul(m[1], v.lambda)), D.add(D.mul(m[2], v.eta), D.mul(m[3], v.lambda))};
}

Rational q_cocycle(const DiscForm& D, const Mat2& m, const Pair& v) {
  Rational r = Rational(m[0] * m[2]) * D.q(v.eta) + Rational(m[1] * m[3]) * D.q(v.lambda) +
               Rational(m[1] * m[2]) * D.b(v.lambda, v.eta);
  return mod1(r);
}

Pair star_action(const DiscForm& D, const MpWord& w, const Pair& v, int xi) {
  Mat2 m = w.matrix();
  Pair u = act(D, m, v);
  int c = gamma_odd_coset(w).coset;
  if (c == 1) u.eta = D.add(u.eta, xi);
  if (c == 2) u.lambda = D.add(u.lambda, xi);
  return u;
}

Rational q_tilde(const DiscForm& D, const MpWord& w, const Pair& v, int xi) {
  Mat2 m = w.matrix();
  Rational r = q_cocycle(D, m, v);
  if (gamma_odd_coset(w).coset == 2) r += D.b(xi, D.add(D.mul(m[0], v.eta), D.mul(m[1], v.lambda)));
  return mod1(r);
}

}  // namespace weilrep
