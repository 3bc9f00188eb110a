#pragma once

#include <vector>

#include "weilrep/exactnum.hpp"

namespace weilrep {

using CMatrix = std::vector<std::vector<CycNumber>>;  // [row][col]

CMatrix cmat_identity(int n, int M);
CMatrix cmat_mul(const CMatrix& A, const CMatrix& B);
bool cmat_equal(const CMatrix& A, const CMatrix& B);

// V_ij = x_i^(j-1) = (L U)_ij with U_ij = h_{j-i}(x_1..x_i) and L_ij = prod_{m<j}(x_i - x_m).
// chain holds (N_h, D_h) for h = 1..n-1 with L = N_1 D_1 ... N_{n-1} D_{n-1}; N_h adds
// row h to the rows below it and D_h = diag(1, .., 1, x_{h+1} - x_h, .., x_n - x_h).
struct VandermondeLU {
  CMatrix V, L, U;
  std::vector<std::pair<CMatrix, CMatrix>> chain;
};
VandermondeLU vandermonde_lu(const std::vector<CycNumber>& xs);
CMatrix chain_product(const VandermondeLU& lu);

// Solution of the odd system sum_{l <= (p-3)/2} (z^2m - z^-2m) z^(l m^2) c_l = z^2km - z^-2km,
// 1 <= m <= (p-1)/2, or the even system with plus signs, l, m in [0, (p-1)/2]; z = e(1/p).
enum class Parity { odd, even };
struct CCoefficients {
  std::vector<CycNumber> c;
  bool integral = true;
};
CCoefficients c_coefficients(long p, long k, Parity parity);

// f_{m,0}^{(r)} = binom(m + r, 2r + 1), f_{m,h} = f_{m,h-1} - phi_{m,h} f_{h,h-1} at zeta.
CycNumber f_recursion(long m, long h, long r, const CycNumber& zeta);
// phi_{m,h} = (z^2m - z^-2m)/(z^2h - z^-2h) prod_{j<h} (z^(m^2) - z^(j^2))/(z^(h^2) - z^(j^2)).
CycNumber f_phi(long m, long h, const CycNumber& zeta);

// Entry m > h of D_h^-1 N_h^-1 ... D_1^-1 N_1^-1 eps with eps_m = (z^2km - z^-2km)/(z^2m - z^-2m),
// x_m = z^(m^2), against its closed form through f_{m,h}.
struct ChainEntry {
  long m = 0, h = 0;
  CycNumber computed, closed_form;
  bool holds = false;
};
std::vector<ChainEntry> f_recursion_chain(long p, long k);

}  // namespace weilrep
