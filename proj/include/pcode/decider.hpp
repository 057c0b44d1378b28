#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pcode/group.hpp"
#include "pcode/transversal.hpp"

namespace pcode {

enum class Verdict { perfect_code, not_perfect_code };

enum class StepOutcome { yes, no, inapplicable, reduced };

std::string to_string(Verdict v);
std::string to_string(StepOutcome o);

struct CriterionStep {
  std::string name;
  std::string inputs;  // "g=<hash prefix> h=<mask hex>"
  StepOutcome outcome;
  std::string detail;
};

/// Outcome of deciding whether a subgroup is a perfect code. A yes carries
/// a Cayley transversal when witness confirmation is on; a no carries a
/// violating element x: a 2-element outside H with x^2 in H, |H : H n
/// xHx^-1| odd and xH free of involutions.
struct Decision {
  Verdict verdict = Verdict::not_perfect_code;
  std::optional<Transversal> transversal;
  std::optional<ElementId> violator;
  std::vector<CriterionStep> trace;
  bool oracle_budget_exceeded = false;

  bool is_perfect_code() const { return verdict == Verdict::perfect_code; }
};

struct DecideOptions {
  bool confirm_witness = true;  // back every yes with an oracle transversal
  std::uint64_t node_budget = kDefaultNodeBudget;
};

// --- stateless criteria -----------------------------------------------------

/// The double-coset criterion, always conclusive: H is a perfect code iff
/// for every left coset gH outside H, gH contains an involution or
/// |H{g,g^-1}H| / |H| is even. Iterates one coset per {gH, g^-1H} pair;
/// both conditions are constant on such pairs (cross-checked when used).
Decision criterion_basic(const Group& g, const Subgroup& h);

/// For normal H: perfect code iff every x with x^2 in H admits h in H with
/// (xh)^2 = 1. Throws when h is not normal.
Decision criterion_normal(const Group& g, const Subgroup& h);

/// Gated variant over the normalizer: applicable when H is a 2-group or
/// |H| or |G:H| is odd; then H is a perfect code iff every 2-element x of
/// N_G(H) with x^2 in H admits h in H with (xh)^2 = 1. Returns nullopt
/// when the gate fails (the reduction is not known to hold ungated).
std::optional<Decision> criterion_normalizer(const Group& g, const Subgroup& h);

/// True (conclusively yes) when |H| or |G:H| is odd; false = inapplicable,
/// never a no.
bool shortcut_odd(const Group& g, const Subgroup& h);

/// The witness contract for "not a perfect code": x is a 2-element outside
/// H, x^2 lies in H, |H : H n xHx^-1| is odd and xH has no involution.
bool valid_no_witness(const Group& g, const Subgroup& h, ElementId x);

// --- equivalence claims and transfer facts ----------------------------------

/// A verified claim that decide(g, lhs) == decide(g, rhs).
struct EquivalenceClaim {
  Subgroup lhs;
  Subgroup rhs;
};

/// For a 2-subgroup q and an odd-order k with every Sylow 2-subgroup of
/// N_G(q) inside N_G(k): qk is a subgroup and qk is a perfect code iff q
/// is. Throws if the gate fails or qk is not a subgroup.
EquivalenceClaim shortcut_QK(const Group& g, const Subgroup& q, const Subgroup& k);

/// For metabelian g and normal h: h is a perfect code iff its Sylow
/// 2-subgroup is (any one; they are conjugate). Throws when preconditions
/// fail.
EquivalenceClaim shortcut_metabelian_normal(const Group& g, const Subgroup& h);

/// Materials for the quotient-transfer implications, for a normal n <= h:
/// (a) yes(g,h) implies yes(g/n, h/n); (b) yes(g,n) and yes(g/n, h/n)
/// imply yes(g,h).
struct QuotientTransfer {
  Quotient quotient;
  SubsetMask h_image;  // H/N as a mask over quotient.group
};
QuotientTransfer quotient_transfer(const Group& g, const Subgroup& n, const Subgroup& h);

/// Generalized dihedral structure detection: an abelian index-2 subgroup
/// with every outside element an involution. Deterministic choice when
/// several bases exist.
std::optional<SubsetMask> generalized_dihedral_base(const Group& g);

/// Outcome of the 2-group dichotomy: either every cyclic subgroup generated
/// outside the Frattini subgroup is a perfect code, or a generalized
/// quaternion subgroup is exhibited that is one.
struct DichotomyReport {
  bool cyclic_horn = false;
  int generators_checked = 0;
  std::optional<ElementId> failing_generator;
  std::optional<SubsetMask> quaternion_witness;
};

// --- the dispatcher ---------------------------------------------------------

/// Decides perfect-code status, routing through the cheapest applicable
/// criterion and recording the route in the trace. Strategy order: trivial
/// cases, odd order/index, generalized-dihedral and nilpotent reductions,
/// the normal criterion, the gated normalizer criterion, the Sylow-2 lift,
/// then the always-conclusive double-coset criterion. Yes verdicts are
/// backed by an oracle transversal unless confirmation is switched off.
///
/// A Decider is a memoization session: group analyses, relabelled subgroup
/// tables and verdicts are cached across calls. Not thread-safe; use one
/// Decider per worker.
class Decider {
public:
  explicit Decider(DecideOptions opts = {}) : opts_(opts) {}

  const DecideOptions& options() const { return opts_; }

  Decision decide(const Group& g, const Subgroup& h);

  /// Theorem-specific routes, usable directly (preconditions throw).
  Decision shortcut_gen_dihedral(const Group& g, const Subgroup& base, const Subgroup& h);
  Decision shortcut_nilpotent(const Group& g, const Subgroup& h);

  /// Yes when some (equivalently every) Sylow 2-subgroup of h is a perfect
  /// code of g; nullopt otherwise (one-directional).
  std::optional<Decision> shortcut_sylow_lift(const Group& g, const Subgroup& h);

  /// Theorem route for [G,H] <= K <= H with H normal and a perfect code:
  /// yes when K has odd index in H, or when [G,H] is a perfect code of G
  /// and K one of H; nullopt when neither condition holds.
  std::optional<Decision> commutator_transfer(const Group& g, const Subgroup& h,
                                              const Subgroup& k);

  DichotomyReport two_group_dichotomy(const Group& g);

  /// Cached structural analysis.
  const GroupClass& classes(const Group& g);
  const std::optional<SubsetMask>& dihedral_base(const Group& g);
  std::shared_ptr<const SubgroupGroup> subgroup_group(const Group& g, const SubsetMask& mask);

private:
  struct GroupNotes {
    bool classified = false;
    GroupClass cls;
    bool base_checked = false;
    std::optional<SubsetMask> gd_base;
    std::unordered_map<SubsetMask, Verdict, SubsetMaskHash> verdicts;
    std::unordered_map<SubsetMask, std::shared_ptr<const SubgroupGroup>, SubsetMaskHash> subtables;
  };

  GroupNotes& notes(const Group& g) { return notes_[g.hash()]; }

  Decision decide_inner(const Group& g, const Subgroup& h, int depth);
  ElementId finalize_no_witness(const Group& g, const Subgroup& h,
                                std::optional<ElementId> raw);
  void confirm_yes(const Group& g, const Subgroup& h, Decision& d);

  DecideOptions opts_;
  std::unordered_map<std::string, GroupNotes> notes_;
};

/// One-shot convenience wrapper over a fresh Decider session.
Decision decide(const Group& g, const Subgroup& h, const DecideOptions& opts = {});

}  // namespace pcode
