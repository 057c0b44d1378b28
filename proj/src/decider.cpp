#include "pcode/decider.hpp"

#include <algorithm>

#include "pcode/errors.hpp"

namespace pcode {

namespace {

std::string inputs_tag(const Group& g, const SubsetMask& mask) {
  return "g=" + g.hash().substr(0, 8) + " h=" + mask.to_hex();
}

bool is_2subgroup(const Subgroup& h) { return two_part(h.size()) == h.size(); }

/// Least h in H with (x*h)^2 = 1, if any.
std::optional<ElementId> square_canceller(const Group& g, const Subgroup& h, ElementId x) {
  std::optional<ElementId> found;
  h.mask.for_each([&](int m) {
    if (found) return;
    ElementId y = g.mul(x, m);
    if (g.mul(y, y) == kIdentity) found = m;
  });
  return found;
}

bool left_coset_has_involution(const Group& g, const Subgroup& h, ElementId rep) {
  bool found = false;
  h.mask.for_each([&](int m) {
    if (found) return;
    ElementId z = g.mul(rep, m);
    if (z != kIdentity && g.mul(z, z) == kIdentity) found = true;
  });
  return found;
}

/// Least y in the left coset rep*H with y^2 in H; the raw material for a
/// violation witness. Exists whenever the coset merges with its inverse
/// coset (m odd).
ElementId least_square_into(const Group& g, const Subgroup& h, ElementId rep) {
  ElementId best = -1;
  h.mask.for_each([&](int m) {
    ElementId y = g.mul(rep, m);
    if (h.contains(g.mul(y, y)) && (best < 0 || y < best)) best = y;
  });
  require(best >= 0, "violating coset has no element squaring into H");
  return best;
}

Decision make_yes(CriterionStep step) {
  Decision d;
  d.verdict = Verdict::perfect_code;
  d.trace.push_back(std::move(step));
  return d;
}

Decision make_no(CriterionStep step, ElementId violator) {
  Decision d;
  d.verdict = Verdict::not_perfect_code;
  d.violator = violator;
  d.trace.push_back(std::move(step));
  return d;
}

}  // namespace

std::string to_string(Verdict v) {
  return v == Verdict::perfect_code ? "perfect_code" : "not_perfect_code";
}

bool valid_no_witness(const Group& g, const Subgroup& h, ElementId x) {
  if (x < 0 || x >= g.order() || h.contains(x)) return false;
  if (!g.is_two_element(x)) return false;
  if (!h.contains(g.mul(x, x))) return false;
  if (left_coset_has_involution(g, h, x)) return false;
  return double_coset_info(g, h, x).ell % 2 == 1;
}

std::string to_string(StepOutcome o) {
  switch (o) {
    case StepOutcome::yes: return "yes";
    case StepOutcome::no: return "no";
    case StepOutcome::inapplicable: return "inapplicable";
    case StepOutcome::reduced: return "reduced";
  }
  return "?";
}

Decision criterion_basic(const Group& g, const Subgroup& h) {
  CriterionStep step{"double_coset_criterion", inputs_tag(g, h.mask), StepOutcome::yes, ""};
  if (h.is_whole_group()) {
    step.detail = "no coset outside H";
    return make_yes(std::move(step));
  }

  CosetSystem left = coset_system(g, h, CosetSide::left);
  for (int ci = 0; ci < left.count(); ++ci) {
    ElementId u = left.reps[ci];
    if (h.contains(u)) continue;
    int partner = left.coset_of[g.inv(u)];
    if (partner < ci) continue;  // the {gH, g^-1H} pair was handled at the partner

    if (left_coset_has_involution(g, h, u)) {
      // Both conditions are constant on a merged pair; cross-check the one
      // case the conclusion depends on.
      if (partner != ci && !left_coset_has_involution(g, h, left.reps[partner]))
        require(double_coset_info(g, h, u).m % 2 == 0,
                "involution presence differs across a merged coset pair");
      continue;
    }
    DoubleCosetInfo info = double_coset_info(g, h, u);
    if (info.m % 2 == 0) continue;

    ElementId y = least_square_into(g, h, u);
    ElementId x = odd_part_power(g, y);
    step.outcome = StepOutcome::no;
    step.detail = "coset of " + std::to_string(u) + " has no involution and m=" +
                  std::to_string(info.m) + " is odd";
    return make_no(std::move(step), x);
  }
  step.detail = "every outside coset has an involution or even m";
  return make_yes(std::move(step));
}

Decision criterion_normal(const Group& g, const Subgroup& h) {
  require(is_normal(g, h), "criterion_normal requires a normal subgroup");
  CriterionStep step{"normal_square_condition", inputs_tag(g, h.mask), StepOutcome::yes, ""};
  for (ElementId x = 0; x < g.order(); ++x) {
    if (!h.contains(g.mul(x, x))) continue;
    if (h.contains(x)) continue;  // h = x^-1 cancels
    if (!square_canceller(g, h, x)) {
      step.outcome = StepOutcome::no;
      step.detail = "x=" + std::to_string(x) + " has x^2 in H but no h with (xh)^2=1";
      return make_no(std::move(step), odd_part_power(g, x));
    }
  }
  step.detail = "every x with x^2 in H admits h with (xh)^2=1";
  return make_yes(std::move(step));
}

std::optional<Decision> criterion_normalizer(const Group& g, const Subgroup& h) {
  bool gated = is_2subgroup(h) || h.size() % 2 == 1 || h.index() % 2 == 1;
  if (!gated) return std::nullopt;

  CriterionStep step{"normalizer_square_condition", inputs_tag(g, h.mask), StepOutcome::yes, ""};
  Subgroup n = normalizer(g, h);
  std::optional<ElementId> bad;
  n.mask.for_each([&](int x) {
    if (bad) return;
    if (!g.is_two_element(x)) return;  // 2-elements suffice under the gate
    if (!h.contains(g.mul(x, x)) || h.contains(x)) return;
    if (!square_canceller(g, h, x)) bad = x;
  });
  if (bad) {
    step.outcome = StepOutcome::no;
    step.detail = "2-element x=" + std::to_string(*bad) + " in N_G(H) has no canceller";
    return make_no(std::move(step), odd_part_power(g, *bad));
  }
  step.detail = "square condition holds over 2-elements of N_G(H)";
  return make_yes(std::move(step));
}

bool shortcut_odd(const Group& g, const Subgroup& h) {
  (void)g;
  return h.size() % 2 == 1 || h.index() % 2 == 1;
}

EquivalenceClaim shortcut_QK(const Group& g, const Subgroup& q, const Subgroup& k) {
  require(is_2subgroup(q), "shortcut_QK: q must be a 2-subgroup");
  require(k.size() % 2 == 1, "shortcut_QK: k must have odd order");

  Subgroup nq = normalizer(g, q);
  Subgroup nk = normalizer(g, k);
  SubgroupGroup nq_group = subgroup_as_group(g, nq);
  for (const Subgroup& p : sylow_2_subgroups(nq_group.group)) {
    SubsetMask lifted = nq_group.lift(p.mask);
    require(lifted.is_subset_of(nk.mask),
            "shortcut_QK gate fails: a Sylow 2-subgroup of N_G(Q) is not inside N_G(K)");
  }

  SubsetMask product(g.order());
  q.mask.for_each([&](int a) { k.mask.for_each([&](int b) { product.set(g.mul(a, b)); }); });
  require(product.count() == q.size() * k.size(), "shortcut_QK: |QK| != |Q||K|");
  Subgroup qk = Subgroup::validated(g, product);  // throws when QK is not a subgroup
  return {qk, q};
}

EquivalenceClaim shortcut_metabelian_normal(const Group& g, const Subgroup& h) {
  require(classify(g).is_metabelian, "shortcut_metabelian_normal requires a metabelian group");
  require(is_normal(g, h), "shortcut_metabelian_normal requires a normal subgroup");
  return {h, sylow_2_subgroup_of(g, h)};
}

QuotientTransfer quotient_transfer(const Group& g, const Subgroup& n, const Subgroup& h) {
  require(n.mask.is_subset_of(h.mask), "quotient_transfer requires N <= H");
  Quotient quot = quotient_group(g, n);  // validates normality
  SubsetMask image(quot.group.order());
  h.mask.for_each([&](int x) { image.set(quot.projection[x]); });
  return {std::move(quot), image};
}

std::optional<SubsetMask> generalized_dihedral_base(const Group& g) {
  int n = g.order();
  if (n < 2 || n % 2 != 0) return std::nullopt;

  SubsetMask non_involutions(n);
  for (ElementId a = 1; a < n; ++a)
    if (g.element_order(a) > 2) non_involutions.set(a);

  if (non_involutions.none()) {
    // Elementary abelian: drop the first basis vector, span the rest.
    SubsetMask span = SubsetMask::single(n, kIdentity);
    SubsetMask base = span;
    bool first = true;
    for (ElementId e = 1; e < n; ++e) {
      if (span.test(e)) continue;
      span = extend_closure(g, span, e);
      if (first)
        first = false;
      else
        base = extend_closure(g, base, e);
    }
    return base;
  }

  // A valid base equals the closure of the non-involutions: any involution
  // t inside the base is s^-1 * (st) for a non-involution s in it, and st
  // is again a non-involution since (st)^2 = s^2 != 1 in the abelian base.
  Subgroup core = subgroup_closure(g, non_involutions);
  if (core.size() != n / 2) return std::nullopt;

  // Outside elements are involutions by construction (every non-involution
  // is inside); only commutativity is left to check.
  std::vector<ElementId> members = core.mask.to_vector();
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (g.mul(members[i], members[j]) != g.mul(members[j], members[i]))
        return std::nullopt;
  return core.mask;
}

// --- Decider ----------------------------------------------------------------

const GroupClass& Decider::classes(const Group& g) {
  GroupNotes& gn = notes(g);
  if (!gn.classified) {
    gn.cls = classify(g);
    gn.classified = true;
  }
  return gn.cls;
}

const std::optional<SubsetMask>& Decider::dihedral_base(const Group& g) {
  GroupNotes& gn = notes(g);
  if (!gn.base_checked) {
    gn.gd_base = generalized_dihedral_base(g);
    gn.base_checked = true;
  }
  return gn.gd_base;
}

std::shared_ptr<const SubgroupGroup> Decider::subgroup_group(const Group& g,
                                                             const SubsetMask& mask) {
  GroupNotes& gn = notes(g);
  auto it = gn.subtables.find(mask);
  if (it != gn.subtables.end()) return it->second;
  auto built = std::make_shared<SubgroupGroup>(
      subgroup_as_group(g, Subgroup::unchecked(g, mask)));
  gn.subtables.emplace(mask, built);
  return built;
}

Decision Decider::decide_inner(const Group& g, const Subgroup& h, int depth) {
  require(depth < 64, "decide recursion too deep");
  GroupNotes& gn = notes(g);
  if (auto it = gn.verdicts.find(h.mask); it != gn.verdicts.end()) {
    Decision d;
    d.verdict = it->second;
    d.trace.push_back({"cached", inputs_tag(g, h.mask),
                       d.is_perfect_code() ? StepOutcome::yes : StepOutcome::no,
                       "session cache"});
    return d;
  }

  Decision d = [&] {
    std::string tag = inputs_tag(g, h.mask);

    if (h.is_whole_group())
      return make_yes({"trivial_whole_group", tag, StepOutcome::yes, "H = G"});
    if (h.is_trivial())
      return make_yes({"trivial_identity_subgroup", tag, StepOutcome::yes, "T = G works"});
    if (shortcut_odd(g, h))
      return make_yes({"odd_order_or_index", tag, StepOutcome::yes,
                       h.size() % 2 ? "|H| odd" : "|G:H| odd"});

    if (const std::optional<SubsetMask>& base = dihedral_base(g)) {
      if (!h.mask.is_subset_of(*base))
        return make_yes(
            {"generalized_dihedral", tag, StepOutcome::yes, "H is not inside the base A"});
      Decision out;
      out.trace.push_back({"generalized_dihedral", tag, StepOutcome::reduced,
                           "H inside A: decide within the base"});
      auto sub = subgroup_group(g, *base);
      Subgroup hh = Subgroup::unchecked(sub->group, sub->restrict(h.mask));
      Decision inner = decide_inner(sub->group, hh, depth + 1);
      out.verdict = inner.verdict;
      if (inner.violator) out.violator = sub->to_parent[*inner.violator];
      out.trace.insert(out.trace.end(), inner.trace.begin(), inner.trace.end());
      return out;
    }

    const GroupClass& cls = classes(g);
    if (cls.is_nilpotent && !cls.is_2group) {
      // The 2-elements form the unique Sylow 2-subgroups of G and of H.
      SubsetMask pmask(g.order());
      for (ElementId a = 0; a < g.order(); ++a)
        if (g.is_two_element(a)) pmask.set(a);
      SubsetMask qmask = pmask & h.mask;
      Decision out;
      out.trace.push_back({"nilpotent_sylow_reduction", tag, StepOutcome::reduced,
                           "decide(P, Q) for the Sylow 2-subgroups of G and H"});
      auto sub = subgroup_group(g, pmask);
      Subgroup qq = Subgroup::unchecked(sub->group, sub->restrict(qmask));
      Decision inner = decide_inner(sub->group, qq, depth + 1);
      out.verdict = inner.verdict;
      if (inner.violator) out.violator = sub->to_parent[*inner.violator];
      out.trace.insert(out.trace.end(), inner.trace.begin(), inner.trace.end());
      return out;
    }

    if (is_normal(g, h)) return criterion_normal(g, h);
    if (std::optional<Decision> gated = criterion_normalizer(g, h)) return *gated;

    if (!is_2subgroup(h)) {
      Subgroup q = sylow_2_subgroup_of(g, h);
      Decision inner = decide_inner(g, q, depth + 1);
      if (inner.is_perfect_code()) {
        Decision out = make_yes({"sylow2_lift", tag, StepOutcome::yes,
                                 "a Sylow 2-subgroup of H is a perfect code of G"});
        out.trace.insert(out.trace.end(), inner.trace.begin(), inner.trace.end());
        return out;
      }
      // One-directional: a failing Sylow-2 never concludes "no" here.
    }

    return criterion_basic(g, h);
  }();

  gn.verdicts.emplace(h.mask, d.verdict);
  return d;
}

ElementId Decider::finalize_no_witness(const Group& g, const Subgroup& h,
                                       std::optional<ElementId> raw) {
  if (raw && valid_no_witness(g, h, *raw)) return *raw;
  Decision fresh = criterion_basic(g, h);
  require(!fresh.is_perfect_code(), "no-verdict cannot be re-witnessed: criteria disagree");
  require(fresh.violator && valid_no_witness(g, h, *fresh.violator),
          "double-coset criterion produced an invalid witness");
  return *fresh.violator;
}

void Decider::confirm_yes(const Group& g, const Subgroup& h, Decision& d) {
  SearchResult r = find_cayley_transversal(g, h, opts_.node_budget);
  std::string tag = inputs_tag(g, h.mask);
  switch (r.status) {
    case SearchStatus::found:
      d.transversal = std::move(r.transversal);
      d.trace.push_back({"oracle_confirm", tag, StepOutcome::yes,
                         "transversal of " + std::to_string(d.transversal->elements.count()) +
                             " elements"});
      break;
    case SearchStatus::none:
      // Soundness breach between criteria and oracle; recorded, not hidden.
      d.trace.push_back(
          {"oracle_confirm", tag, StepOutcome::no, "oracle found no transversal"});
      break;
    case SearchStatus::budget_exceeded:
      d.oracle_budget_exceeded = true;
      d.trace.push_back({"oracle_confirm", tag, StepOutcome::inapplicable,
                         "node budget exceeded after " + std::to_string(r.nodes) + " nodes"});
      break;
  }
}

Decision Decider::decide(const Group& g, const Subgroup& h) {
  require(h.mask.universe_size() == g.order(), "subgroup does not belong to this group");
  Decision d = decide_inner(g, h, 0);
  if (d.is_perfect_code()) {
    if (opts_.confirm_witness) confirm_yes(g, h, d);
  } else {
    d.violator = finalize_no_witness(g, h, d.violator);
  }
  return d;
}

Decision Decider::shortcut_gen_dihedral(const Group& g, const Subgroup& base,
                                        const Subgroup& h) {
  require(base.size() * 2 == g.order(), "base must have index 2");
  for (ElementId x = 0; x < g.order(); ++x)
    if (!base.contains(x))
      require(g.is_involution(x), "every element outside the base must be an involution");
  std::vector<ElementId> members = base.mask.to_vector();
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      require(g.mul(members[i], members[j]) == g.mul(members[j], members[i]),
              "base must be abelian");

  std::string tag = inputs_tag(g, h.mask);
  Decision d;
  if (!h.mask.is_subset_of(base.mask)) {
    d = make_yes({"generalized_dihedral", tag, StepOutcome::yes, "H is not inside the base A"});
  } else {
    d.trace.push_back({"generalized_dihedral", tag, StepOutcome::reduced,
                       "H inside A: decide within the base"});
    auto sub = subgroup_group(g, base.mask);
    Subgroup hh = Subgroup::unchecked(sub->group, sub->restrict(h.mask));
    Decision inner = decide_inner(sub->group, hh, 1);
    d.verdict = inner.verdict;
    if (inner.violator) d.violator = sub->to_parent[*inner.violator];
    d.trace.insert(d.trace.end(), inner.trace.begin(), inner.trace.end());
  }
  if (d.is_perfect_code()) {
    if (opts_.confirm_witness) confirm_yes(g, h, d);
  } else {
    d.violator = finalize_no_witness(g, h, d.violator);
  }
  return d;
}

Decision Decider::shortcut_nilpotent(const Group& g, const Subgroup& h) {
  require(classes(g).is_nilpotent, "shortcut_nilpotent requires a nilpotent group");
  if (classes(g).is_2group) return decide(g, h);  // P = G, Q = H: nothing to reduce

  SubsetMask pmask(g.order());
  for (ElementId a = 0; a < g.order(); ++a)
    if (g.is_two_element(a)) pmask.set(a);
  SubsetMask qmask = pmask & h.mask;

  Decision d;
  d.trace.push_back({"nilpotent_sylow_reduction", inputs_tag(g, h.mask), StepOutcome::reduced,
                     "decide(P, Q) for the Sylow 2-subgroups of G and H"});
  auto sub = subgroup_group(g, pmask);
  Subgroup qq = Subgroup::unchecked(sub->group, sub->restrict(qmask));
  Decision inner = decide_inner(sub->group, qq, 1);
  d.verdict = inner.verdict;
  if (inner.violator) d.violator = sub->to_parent[*inner.violator];
  d.trace.insert(d.trace.end(), inner.trace.begin(), inner.trace.end());

  if (d.is_perfect_code()) {
    if (opts_.confirm_witness) confirm_yes(g, h, d);
  } else {
    d.violator = finalize_no_witness(g, h, d.violator);
  }
  return d;
}

std::optional<Decision> Decider::shortcut_sylow_lift(const Group& g, const Subgroup& h) {
  Subgroup q = sylow_2_subgroup_of(g, h);
  Decision inner = decide_inner(g, q, 1);
  if (!inner.is_perfect_code()) return std::nullopt;
  Decision d = make_yes({"sylow2_lift", inputs_tag(g, h.mask), StepOutcome::yes,
                         "a Sylow 2-subgroup of H is a perfect code of G"});
  d.trace.insert(d.trace.end(), inner.trace.begin(), inner.trace.end());
  if (opts_.confirm_witness) confirm_yes(g, h, d);
  return d;
}

std::optional<Decision> Decider::commutator_transfer(const Group& g, const Subgroup& h,
                                                     const Subgroup& k) {
  require(is_normal(g, h), "commutator_transfer requires H normal in G");
  Subgroup gh = commutator_subgroup(g, whole_group(g), h);
  require(gh.mask.is_subset_of(k.mask), "commutator_transfer requires [G,H] <= K");
  require(k.mask.is_subset_of(h.mask), "commutator_transfer requires K <= H");

  if (!decide_inner(g, h, 0).is_perfect_code()) return std::nullopt;

  std::string tag = inputs_tag(g, k.mask);
  int index_in_h = h.size() / k.size();
  if (index_in_h % 2 == 1) {
    Decision d = make_yes(
        {"commutator_transfer", tag, StepOutcome::yes, "K has odd index in H"});
    if (opts_.confirm_witness) confirm_yes(g, k, d);
    return d;
  }
  if (decide_inner(g, gh, 0).is_perfect_code()) {
    auto sub = subgroup_group(g, h.mask);
    Subgroup kk = Subgroup::unchecked(sub->group, sub->restrict(k.mask));
    if (decide_inner(sub->group, kk, 1).is_perfect_code()) {
      Decision d = make_yes({"commutator_transfer", tag, StepOutcome::yes,
                             "[G,H] is a perfect code of G and K one of H"});
      if (opts_.confirm_witness) confirm_yes(g, k, d);
      return d;
    }
  }
  return std::nullopt;
}

DichotomyReport Decider::two_group_dichotomy(const Group& g) {
  require(classes(g).is_2group, "two_group_dichotomy requires a 2-group");
  DichotomyReport rep;
  Subgroup phi = frattini_subgroup(g);

  for (ElementId c = 0; c < g.order(); ++c) {
    if (phi.contains(c)) continue;
    Subgroup cyc = subgroup_closure(g, SubsetMask::single(g.order(), c));
    ++rep.generators_checked;
    if (!decide_inner(g, cyc, 0).is_perfect_code()) {
      rep.failing_generator = c;
      break;
    }
  }
  if (!rep.failing_generator) {
    rep.cyclic_horn = true;
    return rep;
  }

  for (const Subgroup& s : enumerate_subgroups(g)) {
    if (s.size() < 8) continue;
    auto sub = subgroup_group(g, s.mask);
    if (!classify(sub->group).is_generalized_quaternion) continue;
    if (decide_inner(g, s, 0).is_perfect_code()) {
      rep.quaternion_witness = s.mask;
      break;
    }
  }
  require(rep.quaternion_witness.has_value(),
          "dichotomy: no generalized quaternion perfect code found for the second horn");
  return rep;
}

Decision decide(const Group& g, const Subgroup& h, const DecideOptions& opts) {
  Decider session(opts);
  return session.decide(g, h);
}

}  // namespace pcode
