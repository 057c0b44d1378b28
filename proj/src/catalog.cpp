#include "pcode/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "pcode/cayley.hpp"
#include "pcode/errors.hpp"

namespace pcode {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::int64_t ns_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count();
}

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  std::size_t e = s.find_last_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!strip(cur).empty()) out.push_back(strip(cur));
  return out;
}

const std::vector<std::string> kAllFamilies = {
    "cyclic",     "abelian",  "dihedral",       "gen_dihedral",
    "gen_quaternion", "dicyclic", "direct_product", "semidirect"};

const std::vector<std::string> kAllProperties = {"P1", "P2", "P3", "P4", "P5",
                                                 "P6", "P7", "P8", "P9", "P10"};

FamilyRange parse_family(const std::string& token) {
  FamilyRange fr;
  std::size_t open = token.find('(');
  if (open == std::string::npos) {
    fr.family = token;
  } else {
    require(token.back() == ')', "bad family range '" + token + "'");
    fr.family = strip(token.substr(0, open));
    std::string range = token.substr(open + 1, token.size() - open - 2);
    std::size_t dots = range.find("..");
    require(dots != std::string::npos, "family range must be lo..hi in '" + token + "'");
    std::string lo = strip(range.substr(0, dots));
    std::string hi = strip(range.substr(dots + 2));
    if (!lo.empty()) fr.lo = std::stoi(lo);
    if (!hi.empty()) fr.hi = std::stoi(hi);
  }
  require(std::find(kAllFamilies.begin(), kAllFamilies.end(), fr.family) != kAllFamilies.end(),
          "unknown family '" + fr.family + "'");
  return fr;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::runtime_error("bad boolean value '" + v + "'");
}

std::string family_to_string(const FamilyRange& fr) {
  if (fr.lo == 0 && fr.hi == 0) return fr.family;
  std::string s = fr.family + "(";
  if (fr.lo) s += std::to_string(fr.lo);
  s += "..";
  if (fr.hi) s += std::to_string(fr.hi);
  return s + ")";
}

std::string status_to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none: return "none";
    case SearchStatus::budget_exceeded: return "budget_exceeded";
  }
  return "?";
}

// --- family expansion -------------------------------------------------------

/// Invariant-factor chains d1 | d2 | ... | dk (k >= 2) with product <= bound,
/// in lexicographic order.
void abelian_tuples(int bound, const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> chain;
  std::function<void(int, int)> rec = [&](int last, int product) {
    for (int d = last; product * d <= bound; d += last) {
      chain.push_back(d);
      if (chain.size() >= 2) emit(chain);
      rec(d, product * d);
      chain.pop_back();
    }
  };
  for (int d1 = 2; d1 * 2 <= bound; ++d1) {
    chain.assign(1, d1);
    rec(d1, d1);
  }
}

struct FamilyBounds {
  int lo;
  int hi;
};

FamilyBounds bounds_for(const CatalogConfig& config, const std::string& family, int def_lo,
                        int def_hi) {
  FamilyBounds b{def_lo, std::min(def_hi, config.max_order)};
  for (const FamilyRange& fr : config.families)
    if (fr.family == family) {
      if (fr.lo) b.lo = fr.lo;
      if (fr.hi) b.hi = std::min(fr.hi, config.max_order);
    }
  return b;
}

bool family_selected(const CatalogConfig& config, const std::string& family) {
  if (config.families.empty()) return true;
  for (const FamilyRange& fr : config.families)
    if (fr.family == family) return true;
  return false;
}

std::vector<GroupSpec> expand_specs(const CatalogConfig& config) {
  std::vector<GroupSpec> specs;
  auto add = [&](const std::string& text) { specs.push_back(GroupSpec::parse(text)); };

  if (family_selected(config, "cyclic")) {
    FamilyBounds b = bounds_for(config, "cyclic", 1, config.max_order);
    for (int n = std::max(1, b.lo); n <= b.hi; ++n) add("c" + std::to_string(n));
  }
  if (family_selected(config, "abelian")) {
    FamilyBounds b = bounds_for(config, "abelian", 4, config.max_order);
    abelian_tuples(b.hi, [&](const std::vector<int>& chain) {
      int order = 1;
      for (int d : chain) order *= d;
      if (order < b.lo) return;
      GroupSpec s;
      s.kind = GroupSpec::Kind::abelian;
      s.params = chain;
      specs.push_back(std::move(s));
    });
  }
  if (family_selected(config, "dihedral")) {
    FamilyBounds b = bounds_for(config, "dihedral", 2, config.max_order);
    for (int n = 1; 2 * n <= b.hi; ++n)
      if (2 * n >= b.lo) add("d" + std::to_string(n));
  }
  if (family_selected(config, "gen_dihedral")) {
    FamilyBounds b = bounds_for(config, "gen_dihedral", 2, std::min(48, config.max_order));
    abelian_tuples(b.hi / 2, [&](const std::vector<int>& chain) {
      int order = 2;
      for (int d : chain) order *= d;
      if (order < b.lo || order > b.hi) return;
      GroupSpec s;
      s.kind = GroupSpec::Kind::generalized_dihedral;
      s.params = chain;
      specs.push_back(std::move(s));
    });
  }
  if (family_selected(config, "gen_quaternion")) {
    FamilyBounds b = bounds_for(config, "gen_quaternion", 8, std::min(32, config.max_order));
    for (int n = 8; n <= b.hi; n *= 2)
      if (n >= b.lo) add("q" + std::to_string(n));
  }
  if (family_selected(config, "dicyclic")) {
    FamilyBounds b = bounds_for(config, "dicyclic", 8, std::min(48, config.max_order));
    for (int n = 8; n <= b.hi; n += 4)
      if (n >= b.lo) add("dic(" + std::to_string(n) + ")");
  }
  if (family_selected(config, "direct_product")) {
    FamilyBounds b = bounds_for(config, "direct_product", 4, config.max_order);
    std::vector<std::string> atoms;
    for (int n = 2; n <= 16; ++n) atoms.push_back("c" + std::to_string(n));
    for (int n = 2; n <= 8; ++n) atoms.push_back("d" + std::to_string(n));
    atoms.push_back("q8");
    atoms.push_back("q16");
    atoms.push_back("dic(12)");
    for (std::size_t i = 0; i < atoms.size(); ++i)
      for (std::size_t j = i; j < atoms.size(); ++j) {
        GroupSpec a = GroupSpec::parse(atoms[i]);
        GroupSpec c = GroupSpec::parse(atoms[j]);
        long long order = a.order() * c.order();
        if (order < b.lo || order > b.hi) continue;
        add("dp(" + atoms[i] + "," + atoms[j] + ")");
      }
  }
  if (family_selected(config, "semidirect")) {
    FamilyBounds b = bounds_for(config, "semidirect", 1, std::min(48, config.max_order));
    for (const char* text : {"sdp(ab(3),c4,[-1])", "sdp(ab(5),c4,[2])", "sdp(ab(7),c3,[2])",
                             "sdp(ab(9),c3,[4])", "sdp(ab(5),c8,[2])", "sdp(ab(7),c6,[3])"}) {
      GroupSpec s = GroupSpec::parse(text);
      if (s.order() >= b.lo && s.order() <= b.hi) specs.push_back(std::move(s));
    }
  }
  return specs;
}

// --- per-group processing ----------------------------------------------------

struct PropAccumulator {
  std::int64_t checked = 0;
  bool pass = true;
  std::string counterexample;

  void fail(const std::string& reproducer) {
    if (pass) {
      pass = false;
      counterexample = reproducer;
    }
  }
};

struct GroupResult {
  std::vector<RowRecord> rows;
  std::unordered_map<std::string, PropAccumulator> props;
};

bool wanted(const std::vector<std::string>& props, const std::string& name) {
  return std::find(props.begin(), props.end(), name) != props.end();
}

GroupResult process_group(const BuiltGroup& bg, const CatalogConfig& config,
                          const std::vector<std::string>& props) {
  const Group& g = bg.group;
  int n = g.order();
  GroupResult res;

  DecideOptions row_opts{false, config.node_budget};  // rows get the oracle column anyway
  Decider session(row_opts);
  Decider inner(row_opts);  // property internals, shares nothing with row traces

  std::vector<Subgroup> lattice = enumerate_subgroups(g);
  std::unordered_map<SubsetMask, int, SubsetMaskHash> row_of;
  auto reproducer = [&](const SubsetMask& mask) {
    return "group=" + bg.name + " h=" + mask.to_hex();
  };

  for (const Subgroup& h : lattice) {
    RowRecord row;
    row.group_name = bg.name;
    row.group_hash = g.hash();
    row.group_order = n;
    row.subgroup_mask = h.mask.to_hex();
    row.subgroup_order = h.size();
    row.subgroup_index = h.index();

    Clock::time_point t0 = Clock::now();
    Decision dec = session.decide(g, h);
    row.elapsed_ns = ns_since(t0);
    row.verdict = dec.verdict;
    for (const CriterionStep& s : dec.trace) row.trace.push_back(s.name + ":" + to_string(s.outcome));

    SearchResult oracle = find_cayley_transversal(g, h, config.node_budget);
    SearchResult total = find_total_transversal(g, h, config.node_budget);
    row.oracle = oracle.status;
    row.total_oracle = total.status;
    row.agree = oracle.status == SearchStatus::budget_exceeded ||
                (dec.is_perfect_code() == (oracle.status == SearchStatus::found));
    row.odd_rule_converse_gap =
        dec.is_perfect_code() && h.size() % 2 == 0 && h.index() % 2 == 0;

    if (dec.is_perfect_code()) {
      if (oracle.found()) row.witness_transversal = oracle.transversal->elements.to_vector();
      if (config.confirm_witnesses) {
        bool ok = false;
        if (oracle.found()) {
          const Transversal& t = *oracle.transversal;
          ok = verify_transversal(g, h, t) &&
               is_perfect_code_in_graph(build_cayley(g, connection_set_from_transversal(t)),
                                        h.mask);
          if (total.found())
            ok = ok && is_total_perfect_code_in_graph(
                           build_cayley(g, total.transversal->elements), h.mask);
        }
        row.witness_verified = ok;
      }
    } else {
      row.violator = dec.violator;
      if (config.confirm_witnesses)
        row.witness_verified = dec.violator && valid_no_witness(g, h, *dec.violator);
    }

    row_of.emplace(h.mask, static_cast<int>(res.rows.size()));
    res.rows.push_back(std::move(row));
  }

  auto verdict_of = [&](const SubsetMask& mask) -> Verdict {
    auto it = row_of.find(mask);
    require(it != row_of.end(), "subgroup lattice lookup failed (not closed?)");
    return res.rows[it->second].verdict;
  };

  // P1: decider verdict equals oracle verdict on every conclusive row.
  if (wanted(props, "P1")) {
    PropAccumulator& p = res.props["P1"];
    for (const RowRecord& row : res.rows) {
      if (row.oracle == SearchStatus::budget_exceeded) continue;
      ++p.checked;
      if ((row.verdict == Verdict::perfect_code) != (row.oracle == SearchStatus::found))
        p.fail("group=" + row.group_name + " h=" + row.subgroup_mask + ": verdict " +
               to_string(row.verdict) + " vs oracle " + status_to_string(row.oracle));
    }
  }

  // P2: odd order or odd index forces a perfect code.
  if (wanted(props, "P2")) {
    PropAccumulator& p = res.props["P2"];
    for (const RowRecord& row : res.rows) {
      if (row.subgroup_order % 2 == 1 || row.subgroup_index % 2 == 1) {
        ++p.checked;
        if (row.verdict != Verdict::perfect_code)
          p.fail("group=" + row.group_name + " h=" + row.subgroup_mask +
                 ": odd order/index but not a perfect code");
      }
    }
  }

  // P3: conjugation invariance across the whole lattice.
  if (wanted(props, "P3")) {
    PropAccumulator& p = res.props["P3"];
    for (const Subgroup& h : lattice) {
      Verdict base = verdict_of(h.mask);
      for (ElementId x = 0; x < n; ++x) {
        Subgroup conj = conjugate_subgroup(g, h, x);
        ++p.checked;
        if (verdict_of(conj.mask) != base) {
          p.fail(reproducer(h.mask) + ": conjugate by " + std::to_string(x) + " flips verdict");
          break;
        }
      }
      if (!p.pass) break;
    }
  }

  // P4: a perfect code of G is a perfect code of every subgroup containing it.
  if (wanted(props, "P4")) {
    PropAccumulator& p = res.props["P4"];
    for (const Subgroup& k : lattice) {
      if (k.is_whole_group() || k.is_trivial()) continue;
      std::shared_ptr<const SubgroupGroup> sub;
      for (const Subgroup& h : lattice) {
        if (!h.mask.is_subset_of(k.mask)) continue;
        if (verdict_of(h.mask) != Verdict::perfect_code) continue;
        if (!sub) sub = inner.subgroup_group(g, k.mask);
        Subgroup hh = Subgroup::unchecked(sub->group, sub->restrict(h.mask));
        ++p.checked;
        if (!inner.decide(sub->group, hh).is_perfect_code()) {
          p.fail(reproducer(h.mask) + ": not a perfect code of the subgroup k=" +
                 k.mask.to_hex());
          break;
        }
      }
      if (!p.pass) break;
    }
  }

  // P5: quotient transfer, yes(G,H) => yes(G/N, H/N) for every normal N <= H.
  if (wanted(props, "P5")) {
    PropAccumulator& p = res.props["P5"];
    for (const Subgroup& nsub : lattice) {
      if (nsub.is_trivial() || !is_normal(g, nsub)) continue;
      Quotient quot = quotient_group(g, nsub);
      for (const Subgroup& h : lattice) {
        if (!nsub.mask.is_subset_of(h.mask)) continue;
        if (verdict_of(h.mask) != Verdict::perfect_code) continue;
        SubsetMask image(quot.group.order());
        h.mask.for_each([&](int x) { image.set(quot.projection[x]); });
        ++p.checked;
        if (!inner.decide(quot.group, Subgroup::unchecked(quot.group, image)).is_perfect_code()) {
          p.fail(reproducer(h.mask) + ": H/N not a perfect code of G/N for n=" +
                 nsub.mask.to_hex());
          break;
        }
      }
      if (!p.pass) break;
    }
  }

  // P6: generalized dihedral characterization.
  if (wanted(props, "P6")) {
    if (const std::optional<SubsetMask>& base = inner.dihedral_base(g)) {
      PropAccumulator& p = res.props["P6"];
      std::shared_ptr<const SubgroupGroup> sub = inner.subgroup_group(g, *base);
      for (const Subgroup& h : lattice) {
        bool expected;
        if (!h.mask.is_subset_of(*base)) {
          expected = true;
        } else {
          Subgroup hh = Subgroup::unchecked(sub->group, sub->restrict(h.mask));
          expected = inner.decide(sub->group, hh).is_perfect_code();
        }
        ++p.checked;
        if ((verdict_of(h.mask) == Verdict::perfect_code) != expected) {
          p.fail(reproducer(h.mask) + ": disagrees with the base-A characterization");
          break;
        }
      }
    }
  }

  // P7: nilpotent reduction; also cross-checks the direct double-coset route.
  if (wanted(props, "P7")) {
    if (inner.classes(g).is_nilpotent) {
      PropAccumulator& p = res.props["P7"];
      SubsetMask pmask(n);
      for (ElementId a = 0; a < n; ++a)
        if (g.is_two_element(a)) pmask.set(a);
      std::shared_ptr<const SubgroupGroup> psub;
      for (const Subgroup& h : lattice) {
        Verdict direct = verdict_of(h.mask);
        SubsetMask qmask = pmask & h.mask;
        ++p.checked;
        if (verdict_of(qmask) != direct) {
          p.fail(reproducer(h.mask) + ": verdict differs from its Sylow 2-subgroup's");
          break;
        }
        if (criterion_basic(g, h).verdict != direct) {
          p.fail(reproducer(h.mask) + ": double-coset criterion disagrees with the dispatcher");
          break;
        }
        if (pmask.count() < n) {  // reduce into the Sylow 2-subgroup and re-decide
          if (!psub) psub = inner.subgroup_group(g, pmask);
          Subgroup qq = Subgroup::unchecked(psub->group, psub->restrict(qmask));
          if (inner.decide(psub->group, qq).is_perfect_code() !=
              (direct == Verdict::perfect_code)) {
            p.fail(reproducer(h.mask) + ": Sylow reduction verdict differs");
            break;
          }
        }
      }
    }
  }

  // P8: no elements of order 4 makes every subgroup a perfect code.
  if (wanted(props, "P8")) {
    if (!inner.classes(g).has_order4_element) {
      PropAccumulator& p = res.props["P8"];
      for (const RowRecord& row : res.rows) {
        ++p.checked;
        if (row.verdict != Verdict::perfect_code)
          p.fail("group=" + row.group_name + " h=" + row.subgroup_mask +
                 ": no order-4 elements yet not a perfect code");
      }
    }
  }

  // P9: the 2-group dichotomy, certified against the rows.
  if (wanted(props, "P9")) {
    if (inner.classes(g).is_2group) {
      PropAccumulator& p = res.props["P9"];
      ++p.checked;
      DichotomyReport rep = inner.two_group_dichotomy(g);
      Subgroup phi = frattini_subgroup(g);
      if (rep.cyclic_horn) {
        if (rep.failing_generator || rep.quaternion_witness)
          p.fail("group=" + bg.name + ": both dichotomy horns reported");
        for (ElementId c = 0; c < n && p.pass; ++c) {
          if (phi.contains(c)) continue;
          SubsetMask cyc = subgroup_closure(g, SubsetMask::single(n, c)).mask;
          if (verdict_of(cyc) != Verdict::perfect_code)
            p.fail("group=" + bg.name + ": cyclic horn claimed but <" + std::to_string(c) +
                   "> is not a perfect code");
        }
      } else {
        if (!rep.failing_generator || !rep.quaternion_witness) {
          p.fail("group=" + bg.name + ": no horn certified");
        } else {
          SubsetMask cyc =
              subgroup_closure(g, SubsetMask::single(n, *rep.failing_generator)).mask;
          if (verdict_of(cyc) == Verdict::perfect_code)
            p.fail("group=" + bg.name + ": claimed failing generator actually succeeds");
          if (verdict_of(*rep.quaternion_witness) != Verdict::perfect_code)
            p.fail("group=" + bg.name + ": quaternion witness is not a perfect code");
          auto sub = inner.subgroup_group(g, *rep.quaternion_witness);
          if (!classify(sub->group).is_generalized_quaternion)
            p.fail("group=" + bg.name + ": witness subgroup is not generalized quaternion");
        }
      }
    }
  }

  // P10: total-perfect-code parity.
  if (wanted(props, "P10")) {
    PropAccumulator& p = res.props["P10"];
    for (const RowRecord& row : res.rows) {
      if (row.oracle == SearchStatus::budget_exceeded ||
          row.total_oracle == SearchStatus::budget_exceeded)
        continue;
      ++p.checked;
      bool expect_total = row.oracle == SearchStatus::found && row.subgroup_order % 2 == 0;
      if ((row.total_oracle == SearchStatus::found) != expect_total)
        p.fail("group=" + row.group_name + " h=" + row.subgroup_mask +
               ": total transversal existence violates the parity rule");
    }
  }

  return res;
}

json row_to_json(const RowRecord& r, bool include_timing) {
  json j;
  j["type"] = "row";
  j["group"] = r.group_name;
  j["hash"] = r.group_hash;
  j["n"] = r.group_order;
  j["subgroup"] = r.subgroup_mask;
  j["order"] = r.subgroup_order;
  j["index"] = r.subgroup_index;
  j["verdict"] = to_string(r.verdict);
  j["oracle"] = status_to_string(r.oracle);
  j["total"] = status_to_string(r.total_oracle);
  j["agree"] = r.agree;
  j["witness_ok"] = r.witness_verified;
  j["odd_converse_gap"] = r.odd_rule_converse_gap;
  if (!r.witness_transversal.empty()) j["witness"] = r.witness_transversal;
  if (r.violator) j["violator"] = *r.violator;
  j["trace"] = r.trace;
  if (include_timing) j["elapsed_ns"] = r.elapsed_ns;
  return j;
}

const char* property_description(const std::string& name) {
  if (name == "P1") return "decider verdict equals transversal-oracle verdict";
  if (name == "P2") return "odd order or odd index implies perfect code";
  if (name == "P3") return "verdicts are invariant under conjugation";
  if (name == "P4") return "a perfect code of G is one of every subgroup containing it";
  if (name == "P5") return "yes(G,H) implies yes(G/N,H/N) for normal N <= H";
  if (name == "P6") return "generalized dihedral characterization via the base A";
  if (name == "P7") return "nilpotent groups reduce to their Sylow 2-subgroup";
  if (name == "P8") return "no order-4 elements: every subgroup is a perfect code";
  if (name == "P9") return "2-group dichotomy certifies exactly one horn";
  if (name == "P10") return "total transversal exists iff perfect code of even order";
  return "";
}

}  // namespace

CatalogConfig CatalogConfig::parse(std::istream& is) {
  CatalogConfig config;
  std::string line;
  while (std::getline(is, line)) {
    std::string s = strip(line);
    if (s.empty() || s[0] == '#') continue;
    std::size_t eq = s.find('=');
    require(eq != std::string::npos, "config line is not key = value: '" + s + "'");
    std::string key = strip(s.substr(0, eq));
    std::string value = strip(s.substr(eq + 1));
    if (key == "max_order") {
      config.max_order = std::stoi(value);
    } else if (key == "families") {
      for (const std::string& tok : split_commas(value))
        config.families.push_back(parse_family(tok));
    } else if (key == "properties") {
      for (const std::string& tok : split_commas(value)) {
        require(std::find(kAllProperties.begin(), kAllProperties.end(), tok) !=
                    kAllProperties.end(),
                "unknown property '" + tok + "'");
        config.properties.push_back(tok);
      }
    } else if (key == "confirm_witnesses") {
      config.confirm_witnesses = parse_bool(value);
    } else if (key == "jobs") {
      config.parallelism = std::stoi(value);
    } else if (key == "budget") {
      config.node_budget = std::stoull(value);
    } else {
      throw std::runtime_error("unknown config key '" + key + "'");
    }
  }
  require(config.max_order >= 1 && config.max_order <= 128,
          "max_order must stay within the subgroup enumeration bound (128)");
  return config;
}

CatalogConfig CatalogConfig::from_file(const std::string& path) {
  std::ifstream f(path);
  require(f.good(), "cannot open config file '" + path + "'");
  return parse(f);
}

std::vector<std::string> CatalogConfig::effective_properties() const {
  return properties.empty() ? kAllProperties : properties;
}

bool CatalogReport::all_pass() const {
  if (disagreements > 0) return false;
  for (const PropertyResult& p : properties)
    if (!p.pass) return false;
  return true;
}

const PropertyResult* CatalogReport::property(const std::string& name) const {
  for (const PropertyResult& p : properties)
    if (p.name == name) return &p;
  return nullptr;
}

void CatalogReport::write(std::ostream& os, const CatalogConfig& config,
                          bool include_timing) const {
  json cfg;
  cfg["type"] = "config";
  cfg["max_order"] = config.max_order;
  std::vector<std::string> fams;
  for (const FamilyRange& fr : config.families) fams.push_back(family_to_string(fr));
  cfg["families"] = fams;
  cfg["properties"] = config.effective_properties();
  cfg["confirm_witnesses"] = config.confirm_witnesses;
  cfg["jobs"] = config.parallelism;
  cfg["budget"] = config.node_budget;
  os << cfg.dump() << '\n';

  for (const RowRecord& r : rows) os << row_to_json(r, include_timing).dump() << '\n';

  for (const PropertyResult& p : properties) {
    json j;
    j["type"] = "property";
    j["name"] = p.name;
    j["description"] = p.description;
    j["pass"] = p.pass;
    j["checked"] = p.checked;
    if (!p.counterexample.empty()) j["counterexample"] = p.counterexample;
    os << j.dump() << '\n';
  }

  json sum;
  sum["type"] = "summary";
  sum["groups"] = group_count;
  sum["rows"] = static_cast<std::int64_t>(rows.size());
  sum["disagreements"] = disagreements;
  sum["budget_rows"] = budget_rows;
  sum["all_pass"] = all_pass();
  if (include_timing) sum["elapsed_ns"] = elapsed_ns;
  os << sum.dump() << '\n';
}

std::vector<BuiltGroup> expand_catalog(const CatalogConfig& config) {
  std::vector<BuiltGroup> out;
  std::unordered_set<std::string> seen_hashes;
  for (const GroupSpec& spec : expand_specs(config)) {
    BuiltGroup bg = build_group(spec);
    if (bg.group.order() > config.max_order) continue;
    if (!seen_hashes.insert(bg.group.hash()).second) continue;  // duplicate table
    out.push_back(std::move(bg));
  }
  return out;
}

CatalogReport run_catalog(const CatalogConfig& config) {
  Clock::time_point t0 = Clock::now();
  std::vector<BuiltGroup> groups = expand_catalog(config);
  std::vector<std::string> props = config.effective_properties();

  std::vector<GroupResult> results(groups.size());
  std::atomic<std::size_t> next{0};
  int jobs = config.parallelism > 0
                 ? config.parallelism
                 : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<int>(jobs, static_cast<int>(groups.size()) > 0 ? groups.size() : 1);

  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= groups.size()) break;
      results[i] = process_group(groups[i], config, props);
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  CatalogReport report;
  report.group_count = static_cast<std::int64_t>(groups.size());
  for (GroupResult& gr : results)
    for (RowRecord& r : gr.rows) {
      if (!r.agree) ++report.disagreements;
      if (r.oracle == SearchStatus::budget_exceeded ||
          r.total_oracle == SearchStatus::budget_exceeded)
        ++report.budget_rows;
      report.rows.push_back(std::move(r));
    }

  std::sort(report.rows.begin(), report.rows.end(), [](const RowRecord& a, const RowRecord& b) {
    if (a.group_name != b.group_name) return a.group_name < b.group_name;
    if (a.subgroup_order != b.subgroup_order) return a.subgroup_order < b.subgroup_order;
    if (a.subgroup_mask.size() != b.subgroup_mask.size())
      return a.subgroup_mask.size() < b.subgroup_mask.size();
    return a.subgroup_mask < b.subgroup_mask;
  });

  for (const std::string& name : props) {
    PropertyResult pr;
    pr.name = name;
    pr.description = property_description(name);
    for (const GroupResult& gr : results) {
      auto it = gr.props.find(name);
      if (it == gr.props.end()) continue;
      pr.checked += it->second.checked;
      if (!it->second.pass && pr.pass) {
        pr.pass = false;
        pr.counterexample = it->second.counterexample;
      }
    }
    report.properties.push_back(std::move(pr));
  }

  report.elapsed_ns = ns_since(t0);
  return report;
}

}  // namespace pcode
