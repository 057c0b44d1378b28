#pragma once

#include <cstdint>
#include <optional>

#include "pcode/group.hpp"

namespace pcode {

/// An inverse-closed system of right-coset representatives. For the
/// perfect-code variant the representative of the coset H is the identity;
/// for the total variant it is a non-identity involution inside H.
///
/// An inverse-closed right transversal is automatically a left transversal
/// as well, so either one tiles the group: every element factors uniquely
/// as t*h (and as h*t) with t in the transversal and h in H.
struct Transversal {
  SubsetMask elements;
  bool contains_identity = false;
};

enum class SearchStatus { found, none, budget_exceeded };

struct SearchResult {
  SearchStatus status = SearchStatus::none;
  std::optional<Transversal> transversal;
  std::uint64_t nodes = 0;

  bool found() const { return status == SearchStatus::found; }
};

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

/// Backtracking search for an inverse-closed right transversal of h
/// containing the identity (a Cayley transversal). Cosets are processed in
/// ascending canonical-representative order; candidates within a coset are
/// tried involutions-and-identity first, then the rest, each ascending by
/// id. Choosing t immediately pins t^-1 as the representative of its own
/// coset, and a candidate whose inverse falls in the same coset must be
/// self-inverse. Deterministic: identical inputs give identical output.
///
/// The node budget aborts pathological searches with an explicit
/// budget_exceeded status, distinct from a definite "none".
SearchResult find_cayley_transversal(const Group& g, const Subgroup& h,
                                     std::uint64_t node_budget = kDefaultNodeBudget);

/// Same search, but the representative of the coset H must be a
/// non-identity involution lying in H. Such a transversal, taken directly
/// as a connection set S (it avoids the identity), makes H a total perfect
/// code in Cay(G, S): a set C is a total perfect code iff every vertex x
/// has exactly one neighbour in C, i.e. |S n Cx^-1| = 1 for all x, i.e. S
/// hits every right coset of C exactly once -- including C itself, whose
/// representative s0 then satisfies s0 in H, s0 != 1 and (by
/// inverse-closure and uniqueness within the coset) s0 = s0^-1.
SearchResult find_total_transversal(const Group& g, const Subgroup& h,
                                    std::uint64_t node_budget = kDefaultNodeBudget);

/// True iff t is inverse-closed and hits every right coset of h exactly
/// once. Also re-checks the left-transversal equivalence, which must hold
/// for any inverse-closed right transversal.
bool verify_transversal(const Group& g, const Subgroup& h, const Transversal& t);

}  // namespace pcode
