#include "weilrep/corpus.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <set>

namespace weilrep {

namespace {

std::string join(const std::vector<long>& g) {
  std::string s;
  for (size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + std::to_string(g[i]);
  return s;
}

// Value distribution of q, enough to tell apart the cyclic forms of one order.
std::string q_profile(const DiscForm& D) {
  std::map<long, long> counts;
  for (int g = 0; g < D.size(); ++g) ++counts[D.qexp(g)];
  std::string s = std::to_string(D.size()) + ":";
  for (auto [k, c] : counts) s += std::to_string(k) + "x" + std::to_string(c) + ";";
  return s;
}

}  // namespace

std::vector<std::string> corpus_blocks() {
  std::vector<std::string> out;
  for (long p = 3; p <= 31; p += 2)
    if (is_prime(p)) {
      out.push_back(std::to_string(p) + "^+1");
      out.push_back(std::to_string(p) + "^-1");
    }
  for (const char* q : {"2", "4"})
    for (const char* t : {"_1^+1", "_3^-1", "_5^-1", "_7^+1"}) out.push_back(std::string(q) + t);
  out.push_back("2_II^+2");
  out.push_back("2_II^-2");
  return out;
}

std::vector<std::vector<long>> abelian_groups(long max_order) {
  std::vector<std::vector<long>> out;
  // Invariant factors n1 | n2 | ... listed largest first.
  std::function<void(std::vector<long>&, long)> rec = [&](std::vector<long>& g, long order) {
    if (!g.empty()) out.push_back(g);
    const long last = g.empty() ? 0 : g.back();
    for (long n = 2; order * n <= max_order; ++n) {
      if (last && last % n) continue;
      g.push_back(n);
      rec(g, order * n);
      g.pop_back();
    }
  };
  std::vector<long> g;
  rec(g, 1);
  return out;
}

const std::vector<CorpusEntry>& property_corpus() {
  static std::once_flag once;
  static std::vector<CorpusEntry> corpus;
  std::call_once(once, [] {
    const auto blocks = corpus_blocks();
    std::vector<long> order;
    for (const auto& b : blocks) {
      auto D = builtin(b);
      order.push_back(D->size());
      corpus.push_back({b, D, CorpusKind::block, std::nullopt});
    }
    std::vector<size_t> pick;
    std::function<void(size_t, long)> rec = [&](size_t from, long size) {
      if (pick.size() >= 2) {
        std::string s;
        for (size_t i = 0; i < pick.size(); ++i) s += (i ? "⊕" : "") + blocks[pick[i]];
        corpus.push_back({s, builtin(s), CorpusKind::sum, std::nullopt});
      }
      for (size_t i = from; i < blocks.size(); ++i)
        if (size * order[i] <= 48) {
          pick.push_back(i);
          rec(i, size * order[i]);
          pick.pop_back();
        }
    };
    rec(0, 1);
    for (long N = 1; N <= 12; ++N) {
      std::string s = "U(" + std::to_string(N) + ")";
      corpus.push_back({s, builtin(s), CorpusKind::hyperbolic, std::vector<long>{N}});
    }
    for (const auto& g : abelian_groups(16)) {
      if (g.size() == 1 && g[0] <= 12) continue;  // already present as U(N)
      std::string s = "UG(" + join(g) + ")";
      corpus.push_back({s, builtin(s), CorpusKind::hyperbolic, g});
    }
  });
  return corpus;
}

std::vector<CorpusEntry> cyclic_corpus(long max_n) {
  std::vector<CorpusEntry> out;
  for (long N = 1; N <= max_n; ++N) {
    std::set<std::string> seen;
    const long range = N % 2 ? N : 2 * N;
    for (long a = 1; a <= range; ++a) {
      if (gcd_l(a, range) != 1) continue;
      std::string s = "Z(" + std::to_string(N) + "," + std::to_string(a) + ")";
      auto D = builtin(s);
      if (!seen.insert(q_profile(*D)).second) continue;
      out.push_back({s, D, CorpusKind::cyclic, std::nullopt});
    }
  }
  return out;
}

}  // namespace weilrep
