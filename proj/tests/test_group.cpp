#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <set>

#include "pcode/builders.hpp"
#include "pcode/group.hpp"

using namespace pcode;

namespace {

Group make(const std::string& spec) { return build_group(GroupSpec::parse(spec)).group; }

Subgroup span(const Group& g, std::initializer_list<int> gens) {
  SubsetMask m(g.order());
  for (int x : gens) m.set(x);
  return subgroup_closure(g, m);
}

/// A4 as a table: the 12 even permutations of {0,1,2,3} in lexicographic
/// order (identity first), composed pointwise.
Group alternating4() {
  std::vector<std::array<int, 4>> perms;
  std::array<int, 4> p{0, 1, 2, 3};
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (p[i] > p[j]) ++inversions;
    if (inversions % 2 == 0) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto index_of = [&](const std::array<int, 4>& q) {
    return static_cast<int>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<int> table(12 * 12);
  for (int a = 0; a < 12; ++a)
    for (int b = 0; b < 12; ++b) {
      std::array<int, 4> comp;
      for (int i = 0; i < 4; ++i) comp[i] = perms[a][perms[b][i]];
      table[a * 12 + b] = index_of(comp);
    }
  return Group::from_table(12, std::move(table));
}

/// Independent oracle: all subgroups by closing every subset of G.
/// Exponential; only for very small groups.
std::set<std::vector<int>> brute_force_subgroups(const Group& g) {
  int n = g.order();
  std::set<std::vector<int>> found;
  for (unsigned long long bits = 0; bits < (1ULL << n); ++bits) {
    SubsetMask m(n);
    for (int i = 0; i < n; ++i)
      if (bits >> i & 1) m.set(i);
    found.insert(subgroup_closure(g, m).mask.to_vector());
  }
  return found;
}

}  // namespace

TEST_CASE("multiplication and identity") {
  Group z4 = make("c4");
  CHECK(multiply(z4, 1, 1) == 2);
  for (int a = 0; a < 4; ++a) {
    CHECK(multiply(z4, 0, a) == a);
    CHECK(multiply(z4, a, 0) == a);
  }
  CHECK_THROWS(multiply(z4, 0, 4));

  // Reflection times reflection lands in the rotation part.
  Group d4 = make("d4");
  for (int i = 4; i < 8; ++i)
    for (int j = 4; j < 8; ++j) CHECK(d4.mul(i, j) < 4);
  // b^-1 a b = a^-1 for the dihedral presentation.
  for (int a = 0; a < 4; ++a) CHECK(d4.conjugate(4, a) == d4.inv(a));
}

TEST_CASE("element orders") {
  CHECK(element_order(make("c4"), 0) == 1);
  CHECK(element_order(make("c6"), 1) == 6);
  CHECK(element_order(make("q8"), 1) == 4);  // i in the dicyclic numbering
}

TEST_CASE("odd_part_power maps to the 2-part of the element") {
  Group z12 = make("c12");
  // ord(1) = 12, largest odd divisor 3, so the result is 3 with order 4.
  CHECK(odd_part_power(z12, 1) == 3);
  CHECK(z12.element_order(3) == 4);

  Group z8 = make("c8");
  CHECK(odd_part_power(z8, 1) == 1);  // order 8: s = 1

  // Always a 2-element commuting with y inside <y>.
  for (const char* spec : {"c12", "d6", "q16", "dic(12)"}) {
    Group g = make(spec);
    for (int y = 0; y < g.order(); ++y) {
      int x = odd_part_power(g, y);
      CHECK(g.is_two_element(x));
      CHECK(g.mul(x, y) == g.mul(y, x));
      Subgroup cy = span(g, {y});
      CHECK(cy.contains(x));
    }
  }
}

TEST_CASE("subgroup closure") {
  Group d4 = make("d4");
  CHECK(subgroup_closure(d4, SubsetMask(8)).size() == 1);
  CHECK(span(d4, {1}).size() == 4);
  CHECK(span(d4, {1, 4}).size() == 8);

  Group z6 = make("c6");
  CHECK(span(z6, {2}).mask.to_vector() == std::vector<int>{0, 2, 4});
}

TEST_CASE("subgroup validation") {
  Group z4 = make("c4");
  SubsetMask ok(4);
  ok.set(0);
  ok.set(2);
  CHECK(Subgroup::validated(z4, ok).size() == 2);
  SubsetMask bad(4);
  bad.set(0);
  bad.set(1);
  CHECK_THROWS(Subgroup::validated(z4, bad));
  SubsetMask no_id(4);
  no_id.set(2);
  CHECK_THROWS(Subgroup::validated(z4, no_id));
}

TEST_CASE("subgroup enumeration: counts against brute force") {
  CHECK(enumerate_subgroups(make("c4")).size() == 3);
  CHECK(enumerate_subgroups(make("ab(2,2)")).size() == 5);

  Group q8 = make("q8");
  std::set<std::vector<int>> brute = brute_force_subgroups(q8);
  CHECK(brute.size() == 6);
  std::set<std::vector<int>> fast;
  for (const Subgroup& s : enumerate_subgroups(q8)) fast.insert(s.mask.to_vector());
  CHECK(fast == brute);

  // Same cross-check on a nonabelian group with a richer lattice.
  Group d6 = make("d6");
  CHECK(brute_force_subgroups(d6).size() == enumerate_subgroups(d6).size());
}

TEST_CASE("subgroup lattice is closed under conjugation and intersection") {
  for (const char* spec : {"d4", "q8", "dic(12)", "ab(2,4)"}) {
    Group g = make(spec);
    std::vector<Subgroup> lattice = enumerate_subgroups(g);
    std::set<std::vector<int>> masks;
    for (const Subgroup& s : lattice) masks.insert(s.mask.to_vector());
    for (const Subgroup& s : lattice) {
      for (int x = 0; x < g.order(); ++x)
        CHECK(masks.count(conjugate_subgroup(g, s, x).mask.to_vector()) == 1);
      for (const Subgroup& t : lattice)
        CHECK(masks.count((s.mask & t.mask).to_vector()) == 1);
    }
  }
}

TEST_CASE("coset systems") {
  Group z4 = make("c4");
  Subgroup whole = whole_group(z4);
  CHECK(coset_system(z4, whole, CosetSide::left).count() == 1);
  CHECK(coset_system(z4, trivial_subgroup(z4), CosetSide::left).count() == 4);

  Subgroup h = span(z4, {2});
  CosetSystem cs = coset_system(z4, h, CosetSide::left);
  CHECK(cs.reps == std::vector<int>{0, 1});
  CHECK(cs.coset_of == std::vector<int>{0, 1, 0, 1});

  // Left and right cosets differ for nonabelian groups but share reps count.
  Group d6 = make("d6");
  Subgroup refl = span(d6, {6});
  CHECK(coset_system(d6, refl, CosetSide::left).count() == 6);
  CHECK(coset_system(d6, refl, CosetSide::right).count() == 6);
}

TEST_CASE("double coset info") {
  Group z4 = make("c4");
  Subgroup h = span(z4, {2});
  DoubleCosetInfo info = double_coset_info(z4, h, 1);
  CHECK(info.m == 1);
  CHECK(info.ell == 1);
  CHECK(info.merged);
  CHECK_THROWS(double_coset_info(z4, h, 2));  // x inside H

  // Abelian, x not self-paired: HxH = xH and Hx^-1H = x^-1H are disjoint.
  Group z5 = make("c5");
  DoubleCosetInfo z5i = double_coset_info(z5, trivial_subgroup(z5), 1);
  CHECK(z5i.m == 2);
  CHECK(z5i.ell == 1);
  CHECK(!z5i.merged);

  // Elementary abelian: every x is an involution, always merged.
  Group ea = make("ab(2,2,2)");
  Subgroup k = span(ea, {1});
  for (int x = 2; x < 8; ++x) {
    DoubleCosetInfo i2 = double_coset_info(ea, k, x);
    CHECK(i2.m == 1);
    CHECK(i2.merged);
  }

  // m * |H| = |H{x,x^-1}H| by direct enumeration, across samples.
  for (const char* spec : {"d6", "q16", "dic(12)", "c12"}) {
    Group g = make(spec);
    for (const Subgroup& s : enumerate_subgroups(g)) {
      if (s.is_whole_group()) continue;
      for (int x = 0; x < g.order(); ++x) {
        if (s.contains(x)) continue;
        DoubleCosetInfo i3 = double_coset_info(g, s, x);
        CHECK(i3.m * s.size() == double_coset_union(g, s, x).count());
        CHECK(i3.m == (i3.merged ? i3.ell : 2 * i3.ell));
      }
    }
  }
}

TEST_CASE("normalizer") {
  Group d4 = make("d4");
  Subgroup rot = span(d4, {1});
  CHECK(normalizer(d4, rot).size() == 8);  // normal
  CHECK(normalizer(d4, whole_group(d4)).size() == 8);
  Subgroup b = span(d4, {4});
  CHECK(normalizer(d4, b).size() == 4);
  CHECK(b.mask.is_subset_of(normalizer(d4, b).mask));
}

TEST_CASE("conjugate subgroups") {
  Group d3 = make("d3");  // same table shape as S3
  Subgroup m1 = span(d3, {3});
  Subgroup conj = conjugate_subgroup(d3, m1, 1);
  CHECK(conj.size() == m1.size());
  CHECK(conj.mask != m1.mask);  // a reflection subgroup moves under rotation
  CHECK(conjugate_subgroup(d3, m1, 3).mask == m1.mask);  // x inside h

  Group z4 = make("c4");
  Subgroup h = span(z4, {2});
  for (int x = 0; x < 4; ++x) CHECK(conjugate_subgroup(z4, h, x).mask == h.mask);

  for (const char* spec : {"d6", "q8"}) {
    Group g = make(spec);
    for (const Subgroup& s : enumerate_subgroups(g))
      for (int x = 0; x < g.order(); ++x)
        CHECK(conjugate_subgroup(g, s, x).size() == s.size());
  }
}

TEST_CASE("commutator subgroup") {
  Group z6 = make("c6");
  CHECK(commutator_subgroup(z6, whole_group(z6), whole_group(z6)).size() == 1);

  Group d4 = make("d4");
  Subgroup derived = commutator_subgroup(d4, whole_group(d4), whole_group(d4));
  CHECK(derived.mask.to_vector() == std::vector<int>{0, 2});
  // Independent check: close the set of all commutators directly.
  SubsetMask all(8);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y)
      all.set(d4.mul(d4.mul(d4.inv(x), d4.inv(y)), d4.mul(x, y)));
  CHECK(subgroup_closure(d4, all).mask == derived.mask);

  CHECK(commutator_subgroup(d4, whole_group(d4), trivial_subgroup(d4)).size() == 1);
}

TEST_CASE("quotient group") {
  Group z4 = make("c4");
  Quotient q = quotient_group(z4, span(z4, {2}));
  CHECK(q.group.order() == 2);
  CHECK(q.projection == std::vector<int>{0, 1, 0, 1});

  Quotient iso = quotient_group(z4, trivial_subgroup(z4));
  CHECK(iso.group.order() == 4);
  CHECK(quotient_group(z4, whole_group(z4)).group.order() == 1);

  Group d3 = make("d3");
  CHECK_THROWS(quotient_group(d3, span(d3, {3})));  // reflection subgroup not normal

  // The projection is a homomorphism, exhaustively.
  for (const char* spec : {"d6", "q8", "c12"}) {
    Group g = make(spec);
    for (const Subgroup& n : enumerate_subgroups(g)) {
      if (!((normalizer(g, n)).size() == g.order())) continue;
      Quotient qq = quotient_group(g, n);
      for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
          CHECK(qq.projection[g.mul(a, b)] ==
                qq.group.mul(qq.projection[a], qq.projection[b]));
    }
  }
}

TEST_CASE("Sylow 2-subgroups") {
  Group z15 = make("c15");
  std::vector<Subgroup> odd = sylow_2_subgroups(z15);
  CHECK(odd.size() == 1);
  CHECK(odd[0].size() == 1);

  Group q8 = make("q8");
  std::vector<Subgroup> whole = sylow_2_subgroups(q8);
  CHECK(whole.size() == 1);
  CHECK(whole[0].size() == 8);

  CHECK(sylow_2_subgroups(make("d3")).size() == 3);

  // The doubling construction lands inside the lattice list.
  for (const char* spec : {"d6", "c12", "dic(12)", "d4"}) {
    Group g = make(spec);
    for (const Subgroup& h : enumerate_subgroups(g)) {
      Subgroup p = sylow_2_subgroup_of(g, h);
      CHECK(p.size() == two_part(h.size()));
      CHECK(p.mask.is_subset_of(h.mask));
      Subgroup::validated(g, p.mask);
    }
  }
}

TEST_CASE("odd order elements subgroup") {
  Group z9 = make("c9");
  CHECK(odd_order_elements_subgroup(z9)->size() == 9);

  Group z12 = make("c12");
  CHECK(odd_order_elements_subgroup(z12)->mask.to_vector() == std::vector<int>{0, 4, 8});

  Group d3 = make("d3");
  CHECK(odd_order_elements_subgroup(d3)->mask.to_vector() == std::vector<int>{0, 1, 2});

  // In A4 the product of two 3-cycles can be an involution: not closed.
  CHECK(!odd_order_elements_subgroup(alternating4()).has_value());
}

TEST_CASE("Frattini subgroup") {
  CHECK(frattini_subgroup(make("ab(2,2)")).size() == 1);
  CHECK(frattini_subgroup(make("c4")).mask.to_vector() == std::vector<int>{0, 2});
  CHECK(frattini_subgroup(make("q8")).mask.to_vector() == std::vector<int>{0, 2});
}

TEST_CASE("classification") {
  GroupClass z6 = classify(make("c6"));
  CHECK(z6.is_cyclic);
  CHECK(z6.is_abelian);
  CHECK(z6.is_nilpotent);
  CHECK(!z6.has_order4_element);
  CHECK(!z6.is_2group);

  GroupClass q8 = classify(make("q8"));
  CHECK(q8.is_generalized_quaternion);
  CHECK(q8.is_2group);
  CHECK(!q8.is_cyclic);
  CHECK(q8.has_order4_element);

  GroupClass d6 = classify(make("d6"));
  CHECK(d6.is_metabelian);
  CHECK(!d6.is_nilpotent);
  CHECK(!d6.is_abelian);

  CHECK(classify(make("ab(2,2,2)")).is_elementary_abelian_2);

  // Implication chain holds across a spread of groups.
  for (const char* spec :
       {"c1", "c7", "c12", "d3", "d8", "q8", "q16", "dic(12)", "ab(2,4)", "gd(2,4)",
        "sdp(ab(3),c4,[-1])", "sdp(ab(7),c3,[2])", "dp(c4,c3)", "dp(d4,c2)"}) {
    GroupClass c = classify(make(spec));
    if (c.is_cyclic) CHECK(c.is_abelian);
    if (c.is_abelian) {
      CHECK(c.is_metabelian);
      CHECK(c.is_nilpotent);
    }
    if (c.is_generalized_quaternion) {
      CHECK(c.is_2group);
      CHECK(!c.is_cyclic);
    }
    if (c.is_elementary_abelian_2) CHECK(!c.has_order4_element);
  }
}

TEST_CASE("subgroup_as_group relabels faithfully") {
  Group d6 = make("d6");
  Subgroup rot = span(d6, {1});
  SubgroupGroup sub = subgroup_as_group(d6, rot);
  CHECK(sub.group.order() == 6);
  CHECK(classify(sub.group).is_cyclic);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      CHECK(sub.to_parent[sub.group.mul(i, j)] ==
            d6.mul(sub.to_parent[i], sub.to_parent[j]));

  SubsetMask inner = span(d6, {2}).mask;
  CHECK(sub.lift(sub.restrict(inner)) == inner);
}

TEST_CASE("table validation errors") {
  // Identity law broken.
  CHECK_THROWS_WITH_AS(Group::from_table(2, {0, 0, 1, 1}), doctest::Contains("identity law"),
                       std::runtime_error);
  // Latin square broken.
  CHECK_THROWS_WITH_AS(Group::from_table(2, {0, 1, 1, 1}), doctest::Contains("permutation"),
                       std::runtime_error);
  // A Latin square with identity that is not associative: the smallest
  // examples live at order 5.
  std::vector<int> loop = {
      0, 1, 2, 3, 4,
      1, 0, 3, 4, 2,
      2, 4, 0, 1, 3,
      3, 2, 4, 0, 1,
      4, 3, 1, 2, 0,
  };
  CHECK_THROWS_WITH_AS(Group::from_table(5, loop), doctest::Contains("associativity"),
                       std::runtime_error);
}

TEST_CASE("two_part") {
  CHECK(two_part(1) == 1);
  CHECK(two_part(12) == 4);
  CHECK(two_part(64) == 64);
  CHECK(two_part(7) == 1);
}
