#include "pcode/group.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "pcode/errors.hpp"

namespace pcode {

namespace {

std::string table_text(int n, const std::vector<ElementId>& table) {
  std::ostringstream os;
  os << n << '\n';
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (b) os << ' ';
      os << table[a * n + b];
    }
    os << '\n';
  }
  return os.str();
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace

Group Group::from_table(int n, std::vector<ElementId> table, int full_assoc_bound) {
  require(n >= 1, "group order must be positive");
  require(static_cast<int>(table.size()) == n * n, "multiplication table has wrong size");

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      ElementId p = table[a * n + b];
      require(p >= 0 && p < n, "table entry out of range at (" + std::to_string(a) + "," +
                                   std::to_string(b) + ")");
    }

  for (int a = 0; a < n; ++a) {
    require(table[0 * n + a] == a,
            "identity law fails: 0*" + std::to_string(a) + " != " + std::to_string(a));
    require(table[a * n + 0] == a,
            "identity law fails: " + std::to_string(a) + "*0 != " + std::to_string(a));
  }

  std::vector<char> seen(static_cast<std::size_t>(std::max(n, 1)));
  for (int a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < n; ++b) {
      ElementId p = table[a * n + b];
      require(!seen[p], "row " + std::to_string(a) + " is not a permutation");
      seen[p] = 1;
    }
  }
  for (int b = 0; b < n; ++b) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int a = 0; a < n; ++a) {
      ElementId p = table[a * n + b];
      require(!seen[p], "column " + std::to_string(b) + " is not a permutation");
      seen[p] = 1;
    }
  }

  std::vector<ElementId> inv(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table[a * n + b] == kIdentity) {
        require(table[b * n + a] == kIdentity,
                "element " + std::to_string(a) + " has no two-sided inverse");
        inv[a] = b;
        break;
      }
    require(inv[a] >= 0, "element " + std::to_string(a) + " has no inverse");
  }

  auto assoc_at = [&](int a, int b, int c) {
    return table[table[a * n + b] * n + c] == table[a * n + table[b * n + c]];
  };
  if (n <= full_assoc_bound) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          require(assoc_at(a, b, c), "associativity fails at (" + std::to_string(a) + "," +
                                         std::to_string(b) + "," + std::to_string(c) + ")");
  } else {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);  // fixed seed: reproducible spot check
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int trial = 0; trial < 200000; ++trial) {
      int a = pick(rng), b = pick(rng), c = pick(rng);
      require(assoc_at(a, b, c), "associativity fails at (" + std::to_string(a) + "," +
                                     std::to_string(b) + "," + std::to_string(c) + ")");
    }
  }

  std::vector<int> ord(n, 0);
  for (int a = 0; a < n; ++a) {
    ElementId x = a;
    int k = 1;
    while (x != kIdentity) {
      x = table[x * n + a];
      ++k;
      require(k <= n, "element order exceeds group order (broken table)");
    }
    ord[a] = k;
  }

  Group g;
  g.n_ = n;
  g.table_ = std::move(table);
  g.inv_ = std::move(inv);
  g.ord_ = std::move(ord);
  g.hash_ = fnv1a64_hex(table_text(n, g.table_));
  return g;
}

ElementId Group::power(ElementId a, long long k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  ElementId result = kIdentity;
  ElementId base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

Subgroup Subgroup::validated(const Group& g, SubsetMask mask) {
  require(mask.universe_size() == g.order(), "subgroup mask universe mismatch");
  require(mask.test(kIdentity), "subgroup must contain the identity");
  std::vector<int> elems = mask.to_vector();
  for (int a : elems) {
    require(mask.test(g.inv(a)), "subgroup not closed under inverse at " + std::to_string(a));
    for (int b : elems)
      require(mask.test(g.mul(a, b)),
              "subgroup not closed under product at (" + std::to_string(a) + "," +
                  std::to_string(b) + ")");
  }
  require(g.order() % static_cast<int>(elems.size()) == 0, "subgroup order violates Lagrange");
  return {&g, std::move(mask)};
}

SubsetMask SubgroupGroup::restrict(const SubsetMask& parent_mask) const {
  SubsetMask out(group.order());
  parent_mask.for_each([&](int p) {
    require(from_parent[p] >= 0, "mask element outside subgroup in restrict()");
    out.set(from_parent[p]);
  });
  return out;
}

SubsetMask SubgroupGroup::lift(const SubsetMask& sub_mask) const {
  SubsetMask out(static_cast<int>(from_parent.size()));
  sub_mask.for_each([&](int s) { out.set(to_parent[s]); });
  return out;
}

ElementId multiply(const Group& g, ElementId a, ElementId b) {
  require(a >= 0 && a < g.order() && b >= 0 && b < g.order(), "element id out of range");
  return g.mul(a, b);
}

int element_order(const Group& g, ElementId a) {
  require(a >= 0 && a < g.order(), "element id out of range");
  return g.element_order(a);
}

ElementId odd_part_power(const Group& g, ElementId y) {
  int ord = element_order(g, y);
  int s = ord / two_part(ord);
  return g.power(y, s);
}

Subgroup trivial_subgroup(const Group& g) {
  return Subgroup::unchecked(g, SubsetMask::single(g.order(), kIdentity));
}

Subgroup whole_group(const Group& g) {
  return Subgroup::unchecked(g, SubsetMask::full(g.order()));
}

SubsetMask extend_closure(const Group& g, const SubsetMask& closed, ElementId gen) {
  if (closed.test(gen)) return closed;
  SubsetMask result = closed;
  std::vector<ElementId> queue{gen};
  result.set(gen);
  while (!queue.empty()) {
    ElementId x = queue.back();
    queue.pop_back();
    std::vector<ElementId> members = result.to_vector();
    for (ElementId y : members) {
      for (ElementId p : {g.mul(x, y), g.mul(y, x)}) {
        if (!result.test(p)) {
          result.set(p);
          queue.push_back(p);
        }
      }
    }
  }
  return result;
}

Subgroup subgroup_closure(const Group& g, const SubsetMask& gens) {
  SubsetMask result = SubsetMask::single(g.order(), kIdentity);
  gens.for_each([&](int a) { result = extend_closure(g, result, a); });
  return Subgroup::unchecked(g, result);
}

std::vector<Subgroup> enumerate_subgroups(const Group& g, int bound) {
  require(g.order() <= bound, "group order " + std::to_string(g.order()) +
                                  " exceeds subgroup enumeration bound " + std::to_string(bound));
  int n = g.order();

  // Atoms: the distinct cyclic subgroups, each with a generator.
  std::vector<std::pair<SubsetMask, ElementId>> atoms;
  std::unordered_set<SubsetMask, SubsetMaskHash> seen;
  for (ElementId a = 0; a < n; ++a) {
    SubsetMask cyc(n);
    ElementId x = kIdentity;
    do {
      cyc.set(x);
      x = g.mul(x, a);
    } while (x != kIdentity);
    if (seen.insert(cyc).second) atoms.emplace_back(cyc, a);
  }

  std::vector<SubsetMask> all(seen.begin(), seen.end());
  std::sort(all.begin(), all.end());
  std::vector<SubsetMask> frontier = all;
  while (!frontier.empty()) {
    std::vector<SubsetMask> fresh;
    for (const SubsetMask& x : frontier) {
      for (const auto& [atom, gen] : atoms) {
        if (atom.is_subset_of(x)) continue;
        SubsetMask joined = extend_closure(g, x, gen);
        if (seen.insert(joined).second) fresh.push_back(joined);
      }
    }
    all.insert(all.end(), fresh.begin(), fresh.end());
    frontier = std::move(fresh);
  }

  std::sort(all.begin(), all.end(), [](const SubsetMask& a, const SubsetMask& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a < b;
  });
  std::vector<Subgroup> out;
  out.reserve(all.size());
  for (SubsetMask& m : all) out.push_back(Subgroup::unchecked(g, std::move(m)));
  return out;
}

CosetSystem coset_system(const Group& g, const Subgroup& h, CosetSide side) {
  int n = g.order();
  CosetSystem cs;
  cs.side = side;
  cs.coset_of.assign(n, -1);
  std::vector<ElementId> members = h.mask.to_vector();
  for (ElementId x = 0; x < n; ++x) {
    if (cs.coset_of[x] >= 0) continue;
    int idx = cs.count();
    cs.reps.push_back(x);  // ascending scan makes x the least element of its coset
    for (ElementId m : members) {
      ElementId y = side == CosetSide::left ? g.mul(x, m) : g.mul(m, x);
      cs.coset_of[y] = idx;
    }
    require(cs.coset_of[x] == idx, "coset partition broken (subgroup not closed?)");
  }
  return cs;
}

SubsetMask double_coset_union(const Group& g, const Subgroup& h, ElementId x) {
  int n = g.order();
  SubsetMask out(n);
  std::vector<ElementId> members = h.mask.to_vector();
  for (ElementId z : {x, g.inv(x)}) {
    for (ElementId h1 : members) {
      ElementId y = g.mul(h1, z);
      if (out.test(y)) continue;
      for (ElementId h2 : members) out.set(g.mul(y, h2));
    }
  }
  return out;
}

DoubleCosetInfo double_coset_info(const Group& g, const Subgroup& h, ElementId x) {
  require(!h.contains(x), "double_coset_info requires x outside the subgroup");
  int hsize = h.size();

  // ell = |H : H n xHx^-1|; the intersection is {y in H : x^-1 y x in H}.
  int inter = 0;
  ElementId xi = g.inv(x);
  h.mask.for_each([&](int y) {
    if (h.contains(g.mul(g.mul(xi, y), x))) ++inter;
  });
  require(hsize % inter == 0, "intersection order violates Lagrange");

  DoubleCosetInfo info;
  info.ell = hsize / inter;
  SubsetMask both = double_coset_union(g, h, x);
  int total = both.count();
  require(total % hsize == 0, "double coset union is not a union of cosets");
  info.m = total / hsize;
  info.merged = info.m == info.ell;
  require(info.m == (info.merged ? info.ell : 2 * info.ell),
          "double coset count mismatch: m=" + std::to_string(info.m) +
              " ell=" + std::to_string(info.ell));
  return info;
}

Subgroup normalizer(const Group& g, const Subgroup& h) {
  int n = g.order();
  SubsetMask out(n);
  std::vector<ElementId> members = h.mask.to_vector();
  for (ElementId x = 0; x < n; ++x) {
    ElementId xi = g.inv(x);
    bool ok = true;
    for (ElementId m : members)
      if (!h.contains(g.mul(g.mul(x, m), xi))) {
        ok = false;
        break;
      }
    if (ok) out.set(x);
  }
  return Subgroup::unchecked(g, out);
}

bool is_normal(const Group& g, const Subgroup& h) {
  return normalizer(g, h).size() == g.order();
}

Subgroup conjugate_subgroup(const Group& g, const Subgroup& h, ElementId x) {
  SubsetMask out(g.order());
  ElementId xi = g.inv(x);
  h.mask.for_each([&](int m) { out.set(g.mul(g.mul(xi, m), x)); });
  require(out.count() == h.size(), "conjugation changed subgroup order");
  return Subgroup::unchecked(g, out);
}

Subgroup commutator_subgroup(const Group& g, const Subgroup& a, const Subgroup& b) {
  SubsetMask gens(g.order());
  a.mask.for_each([&](int x) {
    ElementId xi = g.inv(x);
    b.mask.for_each([&](int y) {
      gens.set(g.mul(g.mul(xi, g.inv(y)), g.mul(x, y)));  // [x,y] = x^-1 y^-1 x y
    });
  });
  return subgroup_closure(g, gens);
}

Quotient quotient_group(const Group& g, const Subgroup& n) {
  require(is_normal(g, n), "quotient requires a normal subgroup");
  CosetSystem cs = coset_system(g, n, CosetSide::left);
  int q = cs.count();
  std::vector<ElementId> table(q * q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) table[i * q + j] = cs.coset_of[g.mul(cs.reps[i], cs.reps[j])];
  Quotient result{Group::from_table(q, std::move(table)), cs.coset_of};
  return result;
}

std::vector<Subgroup> sylow_2_subgroups(const Group& g, int bound) {
  int target = two_part(g.order());
  std::vector<Subgroup> out;
  for (Subgroup& s : enumerate_subgroups(g, bound))
    if (s.size() == target) out.push_back(std::move(s));
  require(!out.empty(), "no Sylow 2-subgroup found (impossible)");
  // All Sylow 2-subgroups must be conjugate; cross-check the lattice.
  for (std::size_t i = 1; i < out.size(); ++i) {
    bool conj = false;
    for (ElementId x = 0; x < g.order() && !conj; ++x)
      conj = conjugate_subgroup(g, out[0], x).mask == out[i].mask;
    require(conj, "Sylow 2-subgroups are not all conjugate (broken lattice)");
  }
  return out;
}

Subgroup sylow_2_subgroup_of(const Group& g, const Subgroup& h) {
  int target = two_part(h.size());
  SubsetMask p = SubsetMask::single(g.order(), kIdentity);
  while (p.count() < target) {
    // Normalizer of P inside h.
    std::vector<ElementId> members = p.to_vector();
    ElementId chosen = -1;
    for (ElementId x = 0; x < g.order() && chosen < 0; ++x) {
      if (!h.contains(x) || p.test(x)) continue;
      if (!p.test(g.mul(x, x))) continue;
      ElementId xi = g.inv(x);
      bool normalizes = true;
      for (ElementId m : members)
        if (!p.test(g.mul(g.mul(x, m), xi))) {
          normalizes = false;
          break;
        }
      if (normalizes) chosen = x;
    }
    require(chosen >= 0, "Sylow doubling found no extension (impossible)");
    SubsetMask next = extend_closure(g, p, chosen);
    require(next.count() == 2 * p.count(), "Sylow doubling step did not double");
    p = std::move(next);
  }
  return Subgroup::unchecked(g, p);
}

std::optional<Subgroup> odd_order_elements_subgroup(const Group& g) {
  SubsetMask s(g.order());
  for (ElementId a = 0; a < g.order(); ++a)
    if (g.element_order(a) % 2 == 1) s.set(a);
  std::vector<ElementId> members = s.to_vector();
  for (ElementId a : members)
    for (ElementId b : members)
      if (!s.test(g.mul(a, b))) return std::nullopt;
  return Subgroup::unchecked(g, s);
}

Subgroup frattini_subgroup(const Group& g, int bound) {
  std::vector<Subgroup> lattice = enumerate_subgroups(g, bound);
  // Maximal proper subgroups: proper and not contained in another proper one.
  SubsetMask phi = SubsetMask::full(g.order());
  bool found_maximal = false;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    if (lattice[i].is_whole_group()) continue;
    bool maximal = true;
    for (std::size_t j = 0; j < lattice.size() && maximal; ++j) {
      if (j == i || lattice[j].is_whole_group()) continue;
      if (lattice[i].mask != lattice[j].mask && lattice[i].mask.is_subset_of(lattice[j].mask))
        maximal = false;
    }
    if (maximal) {
      phi &= lattice[i].mask;
      found_maximal = true;
    }
  }
  if (!found_maximal) return whole_group(g);  // trivial group: empty intersection
  return Subgroup::unchecked(g, phi);
}

GroupClass classify(const Group& g) {
  int n = g.order();
  GroupClass c;

  c.is_abelian = true;
  for (int a = 0; a < n && c.is_abelian; ++a)
    for (int b = a + 1; b < n; ++b)
      if (g.mul(a, b) != g.mul(b, a)) {
        c.is_abelian = false;
        break;
      }

  int involutions = 0;
  for (int a = 0; a < n; ++a) {
    int o = g.element_order(a);
    if (o == n) c.is_cyclic = true;
    if (o == 2) ++involutions;
    if (o == 4) c.has_order4_element = true;
  }

  c.is_2group = two_part(n) == n;
  c.is_elementary_abelian_2 = true;
  for (int a = 0; a < n; ++a)
    if (g.element_order(a) > 2) {
      c.is_elementary_abelian_2 = false;
      break;
    }

  // Metabelian: the derived subgroup is abelian.
  Subgroup derived = commutator_subgroup(g, whole_group(g), whole_group(g));
  c.is_metabelian = true;
  std::vector<ElementId> dm = derived.mask.to_vector();
  for (std::size_t i = 0; i < dm.size() && c.is_metabelian; ++i)
    for (std::size_t j = i + 1; j < dm.size(); ++j)
      if (g.mul(dm[i], dm[j]) != g.mul(dm[j], dm[i])) {
        c.is_metabelian = false;
        break;
      }

  // Nilpotent: every Sylow subgroup normal, i.e. for each prime p the set
  // of p-elements is closed under multiplication (it is then the unique
  // Sylow p-subgroup, and conjugation-invariant).
  c.is_nilpotent = true;
  int rest = n;
  for (int p = 2; p <= rest && c.is_nilpotent; ++p) {
    if (rest % p) continue;
    while (rest % p == 0) rest /= p;
    SubsetMask pelems(n);
    for (int a = 0; a < n; ++a) {
      int o = g.element_order(a);
      while (o % p == 0) o /= p;
      if (o == 1) pelems.set(a);
    }
    std::vector<ElementId> pm = pelems.to_vector();
    for (std::size_t i = 0; i < pm.size() && c.is_nilpotent; ++i)
      for (std::size_t j = 0; j < pm.size(); ++j)
        if (!pelems.test(g.mul(pm[i], pm[j]))) {
          c.is_nilpotent = false;
          break;
        }
  }

  c.is_generalized_quaternion = c.is_2group && !c.is_cyclic && involutions == 1;
  return c;
}

SubgroupGroup subgroup_as_group(const Group& g, const Subgroup& h) {
  std::vector<ElementId> elems = h.mask.to_vector();
  int m = static_cast<int>(elems.size());
  std::vector<int> from_parent(g.order(), -1);
  for (int i = 0; i < m; ++i) from_parent[elems[i]] = i;
  std::vector<ElementId> table(m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int p = from_parent[g.mul(elems[i], elems[j])];
      require(p >= 0, "subgroup_as_group: mask is not closed");
      table[i * m + j] = p;
    }
  SubgroupGroup sg{Group::from_table(m, std::move(table)), std::move(elems),
                   std::move(from_parent)};
  return sg;
}

int two_part(int n) {
  require(n > 0, "two_part needs a positive integer");
  return n & -n;
}

}  // namespace pcode
