#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcode/subset_mask.hpp"

namespace pcode {

/// Dense element id in [0, n). Index 0 is always the identity.
using ElementId = int;

constexpr ElementId kIdentity = 0;

/// A finite group given by its multiplication table, with inverses and
/// element orders cached at construction.
///
/// Construction validates the group axioms: the table must be a Latin
/// square, row/column 0 must realize the identity law, every element needs
/// a two-sided inverse, and associativity is checked exhaustively up to
/// `full_assoc_bound` (randomized sampling above it, to guard imported
/// tables without cubic cost).
class Group {
public:
  static Group from_table(int n, std::vector<ElementId> table, int full_assoc_bound = 256);

  int order() const { return n_; }

  ElementId mul(ElementId a, ElementId b) const { return table_[a * n_ + b]; }
  ElementId inv(ElementId a) const { return inv_[a]; }
  int element_order(ElementId a) const { return ord_[a]; }

  /// a^k for any integer k (negative powers via the inverse).
  ElementId power(ElementId a, long long k) const;

  ElementId conjugate(ElementId x, ElementId a) const {  // x^-1 a x
    return mul(mul(inv(x), a), x);
  }

  bool is_involution(ElementId a) const { return a != kIdentity && mul(a, a) == kIdentity; }

  /// True when ord(a) is a power of two (the identity counts).
  bool is_two_element(ElementId a) const { return (ord_[a] & (ord_[a] - 1)) == 0; }

  /// Content hash of the canonical table text; the group's identifier in
  /// reports.
  const std::string& hash() const { return hash_; }

  const std::vector<ElementId>& raw_table() const { return table_; }

private:
  Group() = default;

  int n_ = 0;
  std::vector<ElementId> table_;
  std::vector<ElementId> inv_;
  std::vector<int> ord_;
  std::string hash_;
};

/// A subgroup of a fixed parent group, stored as an element mask.
/// `validated()` checks identity membership, closure under products and
/// inverses, and Lagrange divisibility.
struct Subgroup {
  const Group* parent = nullptr;
  SubsetMask mask;

  static Subgroup validated(const Group& g, SubsetMask mask);
  /// Closure is assumed, not checked; for masks produced by closure code.
  static Subgroup unchecked(const Group& g, SubsetMask mask) { return {&g, std::move(mask)}; }

  int size() const { return mask.count(); }
  int index() const { return parent->order() / size(); }
  bool contains(ElementId a) const { return mask.test(a); }
  bool is_whole_group() const { return size() == parent->order(); }
  bool is_trivial() const { return size() == 1; }
};

enum class CosetSide { left, right };

/// Partition of a group into the (left or right) cosets of a subgroup, with
/// canonical least-id representatives, sorted ascending. Coset 0 is the
/// subgroup itself.
struct CosetSystem {
  CosetSide side;
  std::vector<ElementId> reps;
  std::vector<int> coset_of;  // element id -> coset index

  int count() const { return static_cast<int>(reps.size()); }
};

/// The two integers Theorem-style double-coset counting needs for a given
/// x outside H: m = |H{x,x^-1}H| / |H| and ell = |H : H n xHx^-1|, plus
/// whether HxH and Hx^-1H merged into one double coset.
struct DoubleCosetInfo {
  int m = 0;
  int ell = 0;
  bool merged = false;
};

struct GroupClass {
  bool is_abelian = false;
  bool is_cyclic = false;
  bool is_metabelian = false;
  bool is_nilpotent = false;
  bool is_2group = false;
  bool is_elementary_abelian_2 = false;
  bool is_generalized_quaternion = false;
  bool has_order4_element = false;
};

/// Result of relabelling a subgroup as a standalone group: `group` is the
/// subgroup with elements renumbered 0..|H|-1 in ascending parent id order,
/// `to_parent` maps new ids back, `from_parent` maps parent ids in (or -1).
struct SubgroupGroup {
  Group group;
  std::vector<ElementId> to_parent;
  std::vector<int> from_parent;

  /// Restrict a parent-universe mask (assumed contained in the subgroup)
  /// to the subgroup's universe.
  SubsetMask restrict(const SubsetMask& parent_mask) const;
  /// Lift a subgroup-universe mask back into the parent universe.
  SubsetMask lift(const SubsetMask& sub_mask) const;
};

struct Quotient {
  Group group;
  std::vector<ElementId> projection;  // parent element -> quotient element
};

// --- operations -----------------------------------------------------------

ElementId multiply(const Group& g, ElementId a, ElementId b);
int element_order(const Group& g, ElementId a);

/// y^s for s the largest odd divisor of ord(y); the 2-part of y. Lies in
/// the same coset of any subgroup containing y^2.
ElementId odd_part_power(const Group& g, ElementId y);

Subgroup trivial_subgroup(const Group& g);
Subgroup whole_group(const Group& g);

/// Smallest subgroup containing `gens` (empty set gives the trivial group).
Subgroup subgroup_closure(const Group& g, const SubsetMask& gens);

/// Closure of an already-closed set extended by one generator; the
/// workhorse of lattice enumeration.
SubsetMask extend_closure(const Group& g, const SubsetMask& closed, ElementId gen);

/// All subgroups, each exactly once, by cyclic-join fixed point: seed with
/// the cyclic subgroups and join against them until nothing new appears.
/// Sorted by (size, mask) for deterministic output. Throws above `bound`.
std::vector<Subgroup> enumerate_subgroups(const Group& g, int bound = 128);

CosetSystem coset_system(const Group& g, const Subgroup& h, CosetSide side);

/// Requires x outside h.
DoubleCosetInfo double_coset_info(const Group& g, const Subgroup& h, ElementId x);

/// The union H{x,x^-1}H as an element mask (x outside h).
SubsetMask double_coset_union(const Group& g, const Subgroup& h, ElementId x);

Subgroup normalizer(const Group& g, const Subgroup& h);
bool is_normal(const Group& g, const Subgroup& h);

/// x^-1 h x.
Subgroup conjugate_subgroup(const Group& g, const Subgroup& h, ElementId x);

/// Subgroup generated by all commutators [a,b] = a^-1 b^-1 a b, a in A, b in B.
Subgroup commutator_subgroup(const Group& g, const Subgroup& a, const Subgroup& b);

/// Quotient by a normal subgroup, as a fresh validated group over the
/// cosets (canonical reps ascending, so the identity coset is element 0).
Quotient quotient_group(const Group& g, const Subgroup& n);

/// All subgroups whose order is the 2-part of |G| (via the lattice).
std::vector<Subgroup> sylow_2_subgroups(const Group& g, int bound = 128);

/// One Sylow 2-subgroup of h, grown by normalizer doubling; deterministic.
/// Does not need the subgroup lattice.
Subgroup sylow_2_subgroup_of(const Group& g, const Subgroup& h);

/// The set of odd-order elements, if it is closed under multiplication
/// (always for nilpotent groups); otherwise nullopt.
std::optional<Subgroup> odd_order_elements_subgroup(const Group& g);

/// Intersection of all maximal proper subgroups.
Subgroup frattini_subgroup(const Group& g, int bound = 128);

GroupClass classify(const Group& g);

SubgroupGroup subgroup_as_group(const Group& g, const Subgroup& h);

/// Largest power of two dividing n.
int two_part(int n);

}  // namespace pcode
