#pragma once

#include <optional>
#include <vector>

#include "weilrep/fqm.hpp"

namespace weilrep {

// One summand of C[D] for cyclic D of order N, labelled by a divisor M (H_M isotropic)
// and a character psi of the automorphism group G = prod_p {+-1}.
struct CyclicComponent {
  long M = 1;
  std::vector<int> psi;  // value on the -1 of each prime in CyclicDecomposition::primes
  std::vector<std::vector<Integer>> basis;  // integer vectors indexed by k (element k * generator)
  bool invariant = false;                   // closed under rho(T) and rho(S)
  std::optional<Rational> character_norm;   // even signature and level <= max_level only
};

struct CyclicDecomposition {
  FormPtr form;
  long N = 1;
  int generator = 0;
  std::vector<long> primes;  // primes contributing a -1 to G
  std::vector<CyclicComponent> components;
  bool orthogonal = false;
  bool complete = false;  // dimensions add up to N
  bool ok() const;
};

// Throws InputError unless D is cyclic.
CyclicDecomposition cyclic_decomposition(const FormPtr& D, long max_level = 12);

}  // namespace weilrep
