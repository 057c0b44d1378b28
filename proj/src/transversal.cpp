#include "pcode/transversal.hpp"

#include <algorithm>
#include <vector>

#include "pcode/errors.hpp"

namespace pcode {

namespace {

struct Searcher {
  const Group& g;
  const CosetSystem cosets;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::vector<ElementId> chosen;           // per coset, -1 when unset
  std::vector<std::vector<ElementId>> candidates;  // per coset, in trial order

  Searcher(const Group& group, const Subgroup& h, std::uint64_t node_budget)
      : g(group), cosets(coset_system(group, h, CosetSide::right)), budget(node_budget) {
    int k = cosets.count();
    chosen.assign(k, -1);
    candidates.resize(k);
    // Involutions and the identity first, then the rest; ascending id within
    // each class. Fails fast on cosets whose representative must be
    // self-inverse.
    std::vector<std::vector<ElementId>> tail(k);
    for (ElementId x = 0; x < g.order(); ++x) {
      int c = cosets.coset_of[x];
      if (x == kIdentity || g.is_involution(x))
        candidates[c].push_back(x);
      else
        tail[c].push_back(x);
    }
    for (int c = 0; c < k; ++c)
      candidates[c].insert(candidates[c].end(), tail[c].begin(), tail[c].end());
  }

  /// Restricts the coset-of-H candidate list for the two search variants.
  void pin_subgroup_coset(const Subgroup& h, bool total_variant) {
    int home = cosets.coset_of[kIdentity];
    std::vector<ElementId> allowed;
    for (ElementId x : candidates[home]) {
      bool ok = total_variant ? (x != kIdentity && g.is_involution(x) && h.contains(x))
                              : (x == kIdentity);
      if (ok) allowed.push_back(x);
    }
    candidates[home] = std::move(allowed);
  }

  SearchStatus run() { return extend(0); }

  SearchStatus extend(int from) {
    int c = from;
    while (c < cosets.count() && chosen[c] >= 0) ++c;
    if (c == cosets.count()) return SearchStatus::found;

    for (ElementId t : candidates[c]) {
      if (++nodes > budget) return SearchStatus::budget_exceeded;
      ElementId ti = g.inv(t);
      int ci = cosets.coset_of[ti];
      if (ci == c) {
        if (ti != t) continue;  // the representative of a self-paired coset must be self-inverse
        chosen[c] = t;
        SearchStatus s = extend(c + 1);
        if (s != SearchStatus::none) return s;
        chosen[c] = -1;
      } else if (chosen[ci] >= 0) {
        if (chosen[ci] != ti) continue;  // inverse already pinned elsewhere
        chosen[c] = t;
        SearchStatus s = extend(c + 1);
        if (s != SearchStatus::none) return s;
        chosen[c] = -1;
      } else {
        chosen[c] = t;
        chosen[ci] = ti;  // eager inverse propagation
        SearchStatus s = extend(c + 1);
        if (s != SearchStatus::none) return s;
        chosen[c] = -1;
        chosen[ci] = -1;
      }
    }
    return SearchStatus::none;
  }

  Transversal harvest() const {
    Transversal t;
    t.elements = SubsetMask(g.order());
    for (ElementId x : chosen) t.elements.set(x);
    t.contains_identity = t.elements.test(kIdentity);
    return t;
  }
};

SearchResult search(const Group& g, const Subgroup& h, std::uint64_t budget, bool total_variant) {
  Searcher s(g, h, budget);
  s.pin_subgroup_coset(h, total_variant);
  SearchResult result;
  result.status = s.run();
  result.nodes = s.nodes;
  if (result.status == SearchStatus::found) {
    result.transversal = s.harvest();
    require(verify_transversal(g, h, *result.transversal),
            "search produced an invalid transversal");
  }
  return result;
}

}  // namespace

SearchResult find_cayley_transversal(const Group& g, const Subgroup& h,
                                     std::uint64_t node_budget) {
  return search(g, h, node_budget, false);
}

SearchResult find_total_transversal(const Group& g, const Subgroup& h,
                                    std::uint64_t node_budget) {
  return search(g, h, node_budget, true);
}

bool verify_transversal(const Group& g, const Subgroup& h, const Transversal& t) {
  if (t.elements.universe_size() != g.order()) return false;

  bool inverse_closed = true;
  t.elements.for_each([&](int x) {
    if (!t.elements.test(g.inv(x))) inverse_closed = false;
  });
  if (!inverse_closed) return false;

  CosetSystem right = coset_system(g, h, CosetSide::right);
  std::vector<int> hits(right.count(), 0);
  t.elements.for_each([&](int x) { ++hits[right.coset_of[x]]; });
  for (int c : hits)
    if (c != 1) return false;

  // Inverse-closed right transversal <=> left transversal; re-check it.
  CosetSystem left = coset_system(g, h, CosetSide::left);
  std::vector<int> lhits(left.count(), 0);
  t.elements.for_each([&](int x) { ++lhits[left.coset_of[x]]; });
  for (int c : lhits)
    require(c == 1, "inverse-closed right transversal is not a left transversal");

  return true;
}

}  // namespace pcode
