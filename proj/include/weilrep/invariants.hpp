#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "weilrep/weil.hpp"

namespace weilrep {

// Conjugacy classes of SL2(Z/N), each with a lift to SL2(Z) and a word for it.
struct ConjClass {
  Mat2 rep;
  long size = 0;
  MpWord word;
};
long sl2_order(long N);
Mat2 lift_sl2(const Mat2& m, long N);
const std::vector<ConjClass>& sl2_classes(long N);

enum class Triviality { odd_signature, surjectivity, inconclusive };
std::string to_string(Triviality t);
Triviality triviality_check(const FormPtr& D);

struct FormulaValue {
  std::string name;
  long value = 0;
};

struct InvariantReport {
  long dim_kernel = 0;
  std::optional<long> dim_frobenius;
  std::vector<FormulaValue> formulas;  // the first one is the reported closed formula
  std::vector<std::vector<CycNumber>> basis;
  bool rational = true;
  std::vector<std::vector<Integer>> integer_basis;  // filled when rational
  bool agreement = true;
  Triviality triviality = Triviality::inconclusive;
};

// Exact kernel of (rho(T) - I; rho(S) - I) over Q(zeta_M); odd signature gives dimension 0.
InvariantReport invariant_subspace(const FormPtr& D);
// Average trace of rho over SL2(Z/level); needs even signature and level <= max_level.
long dim_frobenius(const FormPtr& D, long max_level = 12);

// Subgroups of the abstract group G = sum Z/g_i by isomorphism type Z/n + Z/m (m | n).
struct HyperbolicDim {
  long dim = 0;
  std::map<std::pair<long, long>, long> S;
  long higher_rank = 0;  // subgroups needing three or more generators
  // For two factors (N, M): pairs (n, m) where the closed count psi(n/m)/psi(n/gcd(n, M))
  // disagrees with enumeration, with both values.
  std::vector<std::tuple<long, long, long, long>> closed_form_mismatches;
};
HyperbolicDim dim_hyperbolic(const std::vector<long>& G);
long psi_dedekind(long n);  // n prod_{p | n} (1 + 1/p)
long dim_DNM(long N, long M);
long dim_DNM_prime_power(long p, long r, long s);  // N = p^r, M = p^s
long dim_DNM_M_prime(long N, long p);              // M = p prime
long dim_fpvs(long p, long d, long r, bool* realizable = nullptr);

// Elementary abelian p-group data when the form qualifies (level p): |D| = p^(2d + r).
struct FpvsShape {
  long p = 0, d = 0, r = 0;
};
std::optional<FpvsShape> fpvs_shape(const FormPtr& D);

enum class InvMethod { kernel, frobenius, formula, all };
InvMethod parse_method(const std::string& s);
// Kernel plus the requested cross-checks. hyperbolic_group names G when D = U_G.
InvariantReport invariant_report(const FormPtr& D, InvMethod method,
                                 const std::optional<std::vector<long>>& hyperbolic_group = std::nullopt,
                                 long max_level = 12);

// a_d = sum_{d | a, (N/d) | b} e_{ae + bf} on U(N), one per divisor d.
struct HypCycBasis {
  FormPtr form;
  std::vector<long> divisors;
  std::vector<SVec> vectors;
  bool invariant = true, independent = true, arrow_identity = true;
};
HypCycBasis basis_U_N(long N);

// sum of e_g over nonzero isotropic g minus (p - 1) e_0 on p^-4 or 2_II^-4.
struct SpecialInvariant {
  std::vector<long> vector;  // integer coordinates
  bool invariant = false;
  bool spans = false;
};
SpecialInvariant special_invariant(const FormPtr& D);

// SL2(Z/n)-orbits on generating pairs of Z/n + Z/m.
long slnm_orbit_count(long n, long m, long max_pairs = 1 << 20);

// Rank of the indicator vectors of the self-dual isotropic subgroups next to dim_kernel.
struct SpanCheck {
  long subgroups = 0, rank = 0, dim = 0;
  bool invariant = true;
  bool spans() const { return subgroups > 0 && invariant && rank == dim; }
};
SpanCheck self_dual_span(const FormPtr& D, const InvariantReport& rep);
// For F_p-forms with r > 0: rank of the arrow images from isotropic subgroups of order
// p^(d-1); reported, not asserted.
SpanCheck lower_arrow_span(const FormPtr& D, const InvariantReport& rep);

}  // namespace weilrep
