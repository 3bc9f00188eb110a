#include "weilrep/field.hpp"

#include <algorithm>

namespace weilrep {

Field::Field(int M) : M_(M), phi_(static_cast<int>(euler_phi(M))) {
  const auto& P = cyclotomic_poly(M);
  // x^phi = -sum_{j<phi} P_j x^j, then iterate.
  std::vector<long> cur(phi_);
  for (int j = 0; j < phi_; ++j) cur[j] = -P[j];
  for (int k = 0; k < phi_; ++k) {
    red_.push_back(cur);
    long top = cur[phi_ - 1];
    std::vector<long> nxt(phi_, 0);
    for (int j = phi_ - 1; j > 0; --j) nxt[j] = cur[j - 1];
    for (int j = 0; j < phi_; ++j) nxt[j] -= top * P[j];
    cur = nxt;
  }
}

Field::Elt Field::one() const {
  Elt e(phi_);
  e[0] = 1;
  return e;
}

Field::Elt Field::from(const CycNumber& z) const {
  if (M_ % z.conductor() != 0) throw std::invalid_argument("Field::from: element outside the field");
  return z.embed(M_).canonical();
}

CycNumber Field::to_cyc(const Elt& a) const { return CycNumber::from_canonical(M_, a); }

bool Field::is_zero(const Elt& a) const {
  for (auto& x : a)
    if (sgn(x)) return false;
  return true;
}

bool Field::is_one(const Elt& a) const {
  if (a[0] != 1) return false;
  for (int i = 1; i < phi_; ++i)
    if (sgn(a[i])) return false;
  return true;
}

Field::Elt Field::mul(const Elt& a, const Elt& b) const {
  std::vector<int> na, nb;
  for (int i = 0; i < phi_; ++i) {
    if (sgn(a[i])) na.push_back(i);
    if (sgn(b[i])) nb.push_back(i);
  }
  Elt out(phi_);
  if (na.empty() || nb.empty()) return out;
  std::vector<Rational> hi;
  Rational t;
  for (int i : na)
    for (int j : nb) {
      t = a[i] * b[j];
      int k = i + j;
      if (k < phi_) {
        out[k] += t;
      } else {
        if (hi.empty()) hi.resize(phi_);
        hi[k - phi_] += t;
      }
    }
  for (size_t k = 0; k < hi.size(); ++k) {
    if (!sgn(hi[k])) continue;
    const auto& r = red_[k];
    for (int j = 0; j < phi_; ++j)
      if (r[j]) out[j] += hi[k] * r[j];
  }
  return out;
}

Field::Elt Field::inv(const Elt& a) const {
  if (is_zero(a)) throw std::domain_error("division by zero in cyclotomic field");
  bool rational = true;
  for (int i = 1; i < phi_; ++i)
    if (sgn(a[i])) rational = false;
  if (rational) {
    Elt e(phi_);
    e[0] = 1 / a[0];
    return e;
  }
  return from(to_cyc(a).inverse());
}

void Field::add_to(Elt& acc, const Elt& a) const {
  for (int i = 0; i < phi_; ++i)
    if (sgn(a[i])) acc[i] += a[i];
}

void Field::submul(Elt& acc, const Elt& f, const Elt& a) const {
  Elt p = mul(f, a);
  for (int i = 0; i < phi_; ++i)
    if (sgn(p[i])) acc[i] -= p[i];
}

std::vector<int> rref(const Field& F, FMatrix& A) {
  std::vector<int> pivots;
  int row = 0;
  auto weight = [&](const Field::Elt& e) {
    int w = 0;
    for (auto& x : e)
      if (sgn(x)) ++w;
    return w;
  };
  for (int col = 0; col < A.cols && row < A.rows; ++col) {
    int piv = -1, best = 1 << 30;
    for (int r = row; r < A.rows; ++r) {
      if (F.is_zero(A.at(r, col))) continue;
      int w = weight(A.at(r, col));
      if (w < best) best = w, piv = r;
      if (w == 1) break;
    }
    if (piv < 0) continue;
    if (piv != row)
      for (int c = 0; c < A.cols; ++c) std::swap(A.at(row, c), A.at(piv, c));
    Field::Elt inv = F.inv(A.at(row, col));
    for (int c = col; c < A.cols; ++c)
      if (!F.is_zero(A.at(row, c))) A.at(row, c) = F.mul(A.at(row, c), inv);
    std::vector<int> nzc;
    for (int c = col; c < A.cols; ++c)
      if (!F.is_zero(A.at(row, c))) nzc.push_back(c);
    for (int r = 0; r < A.rows; ++r) {
      if (r == row || F.is_zero(A.at(r, col))) continue;
      Field::Elt f = A.at(r, col);
      for (int c : nzc) F.submul(A.at(r, c), f, A.at(row, c));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(const Field& F, FMatrix A) { return static_cast<int>(rref(F, A).size()); }

std::vector<std::vector<Field::Elt>> kernel(const Field& F, FMatrix A) {
  auto piv = rref(F, A);
  std::vector<char> is_piv(A.cols, 0);
  for (int c : piv) is_piv[c] = 1;
  std::vector<std::vector<Field::Elt>> basis;
  for (int f = 0; f < A.cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<Field::Elt> v(A.cols, F.zero());
    v[f] = F.one();
    for (size_t r = 0; r < piv.size(); ++r) {
      auto x = A.at(static_cast<int>(r), f);
      for (auto& y : x) y = -y;
      v[piv[r]] = x;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

FMatrix inverse(const Field& F, const FMatrix& A) {
  if (A.rows != A.cols) throw std::invalid_argument("inverse: matrix not square");
  const int n = A.rows;
  FMatrix W(F, n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) W.at(i, j) = A.at(i, j);
    W.at(i, n + i) = F.one();
  }
  auto piv = rref(F, W);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw std::domain_error("inverse: singular matrix");
  FMatrix R(F, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) R.at(i, j) = W.at(i, n + j);
  return R;
}

FMatrix multiply(const Field& F, const FMatrix& A, const FMatrix& B) {
  FMatrix C(F, A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      if (F.is_zero(A.at(i, k))) continue;
      for (int j = 0; j < B.cols; ++j)
        if (!F.is_zero(B.at(k, j))) F.add_to(C.at(i, j), F.mul(A.at(i, k), B.at(k, j)));
    }
  return C;
}

}  // namespace weilrep
