#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weilrep/fqm.hpp"

namespace weilrep {

enum class CorpusKind { block, sum, hyperbolic, cyclic };

struct CorpusEntry {
  std::string symbol;
  FormPtr form;
  CorpusKind kind = CorpusKind::block;
  std::optional<std::vector<long>> group;  // G for U_G (hyperbolic entries)
};

// Jordan blocks of order <= 32: p^{+-1} for odd p <= 31, 2_t^{+-1}, 4_t^{+-1}, 2_II^{+-2}.
std::vector<std::string> corpus_blocks();
// Finite abelian groups of order <= max_order by invariant factors (n1 >= n2 >= ..., each dividing the last).
std::vector<std::vector<long>> abelian_groups(long max_order);
// Blocks, multisets of at least two blocks with order <= 48, U(N) for N <= 12 and U_G for |G| <= 16.
const std::vector<CorpusEntry>& property_corpus();
// Z(N, a) for N <= max_n, one entry per isomorphism class of form.
std::vector<CorpusEntry> cyclic_corpus(long max_n = 16);

}  // namespace weilrep
