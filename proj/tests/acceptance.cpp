// Acceptance suite: runs the default catalog and checks each release
// criterion, printing one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "pcode/builders.hpp"
#include "pcode/catalog.hpp"
#include "pcode/cayley.hpp"
#include "pcode/decider.hpp"

using namespace pcode;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %2d. %s: %s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
              detail.c_str());
  if (!pass) ++failures;
}

bool is_cyclic_name(const std::string& name) {
  if (name.size() < 2 || name[0] != 'c') return false;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  return true;
}

std::string prop_detail(const PropertyResult* p) {
  if (!p) return "property not found";
  std::string s = std::to_string(p->checked) + " checks";
  if (!p->pass) s += ", counterexample: " + p->counterexample;
  return s;
}

/// Criterion 10: the binary [7,4] Hamming code inside Z_2^7.
void hamming_case() {
  auto t0 = std::chrono::steady_clock::now();

  Group g = build_group(GroupSpec::parse("ab(2,2,2,2,2,2,2)")).group;
  // Coordinate j of element x is bit j-1 of its id; the parity-check column
  // for coordinate j is the binary representation of j.
  auto syndrome = [](int x) {
    int s = 0;
    for (int j = 1; j <= 7; ++j)
      if (x >> (j - 1) & 1) s ^= j;
    return s;
  };
  SubsetMask code_mask(128);
  for (int x = 0; x < 128; ++x)
    if (syndrome(x) == 0) code_mask.set(x);
  Subgroup code = Subgroup::validated(g, code_mask);

  bool ok = code.size() == 16 && code.index() == 8;

  Decider dec;
  Decision d = dec.decide(g, code);
  ok = ok && d.is_perfect_code() && d.transversal.has_value();

  // The canonical coset-leader transversal: the unique minimum-weight
  // representative per coset, which is exactly {0, e1, ..., e7}.
  SubsetMask leaders(128);
  for (int s = 0; s < 8; ++s) leaders.set(s == 0 ? 0 : 1 << (s - 1));
  for (int s = 0; s < 8; ++s) {
    int light = 0;  // elements of weight <= 1 in the coset with syndrome s
    for (int x = 0; x < 128; ++x)
      if (syndrome(x) == s && __builtin_popcount(x) <= 1) ++light;
    ok = ok && light == 1;
  }
  Transversal canonical{leaders, true};
  ok = ok && verify_transversal(g, code, canonical);

  SubsetMask weight1(128);
  for (int j = 0; j < 7; ++j) weight1.set(1 << j);
  SubsetMask conn = connection_set_from_transversal(canonical);
  ok = ok && conn == weight1;
  ok = ok && is_perfect_code_in_graph(build_cayley(g, conn), code.mask);

  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ok = ok && secs < 1.0;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "order-16 index-8 code decided perfect, leader transversal = weight-1 "
                "vectors (%.3fs)",
                secs);
  report(10, "Hamming sanity case", ok, detail);
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();

  CatalogConfig config;  // defaults: all families, orders <= 64, all properties
  CatalogReport rep = run_catalog(config);
  double catalog_secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  // 1. Oracle equivalence over the whole catalog.
  {
    const PropertyResult* p1 = rep.property("P1");
    bool ok = p1 && p1->pass && rep.disagreements == 0 && rep.budget_rows == 0 &&
              rep.rows.size() >= 1000;
    char detail[200];
    std::snprintf(detail, sizeof detail,
                  "%lld groups, %zu rows, %lld disagreements, %lld budget rows (%.1fs)",
                  static_cast<long long>(rep.group_count), rep.rows.size(),
                  static_cast<long long>(rep.disagreements),
                  static_cast<long long>(rep.budget_rows), catalog_secs);
    report(1, "oracle equivalence (decider vs transversal search)", ok, detail);
  }

  // 2. Cyclic characterization: proper subgroups are codes iff odd order/index.
  {
    long long checked = 0, wrong = 0;
    for (const RowRecord& row : rep.rows) {
      if (!is_cyclic_name(row.group_name)) continue;
      if (row.subgroup_order == row.group_order) continue;
      ++checked;
      bool odd = row.subgroup_order % 2 == 1 || row.subgroup_index % 2 == 1;
      if ((row.verdict == Verdict::perfect_code) != odd) ++wrong;
    }
    report(2, "cyclic characterization (odd order or odd index)", checked > 0 && wrong == 0,
           std::to_string(checked) + " proper subgroups, " + std::to_string(wrong) +
               " exceptions");
  }

  // 3. Generalized dihedral characterization.
  {
    const PropertyResult* p = rep.property("P6");
    bool has_gd = false;
    for (const RowRecord& row : rep.rows) has_gd = has_gd || row.group_name.rfind("gd(", 0) == 0;
    report(3, "generalized dihedral characterization", p && p->pass && p->checked > 0 && has_gd,
           prop_detail(p));
  }

  // 4. Q8, Q16, Q32 admit exactly two subgroup perfect codes.
  {
    std::map<std::string, int> yes, total;
    for (const RowRecord& row : rep.rows) {
      if (row.group_name != "q8" && row.group_name != "q16" && row.group_name != "q32")
        continue;
      ++total[row.group_name];
      if (row.verdict == Verdict::perfect_code) ++yes[row.group_name];
    }
    bool ok = total.size() == 3;
    std::string detail;
    for (const char* name : {"q8", "q16", "q32"}) {
      ok = ok && yes[name] == 2;
      detail += std::string(name) + ": " + std::to_string(yes[name]) + "/" +
                std::to_string(total[name]) + " ";
    }
    report(4, "generalized quaternion groups have only trivial codes", ok, detail);
  }

  // 5. No elements of order 4: every subgroup is a perfect code.
  {
    const PropertyResult* p = rep.property("P8");
    report(5, "no-order-4 rule", p && p->pass && p->checked > 0, prop_detail(p));
  }

  // 6. Nilpotent and Sylow reductions match the direct verdict.
  {
    const PropertyResult* p = rep.property("P7");
    report(6, "nilpotent/Sylow-2 reduction equals direct verdict",
           p && p->pass && p->checked > 0, prop_detail(p));
  }

  // 7. Quotient transfer.
  {
    const PropertyResult* p = rep.property("P5");
    report(7, "quotient transfer of perfect codes", p && p->pass && p->checked > 0,
           prop_detail(p));
  }

  // 8. Round-trip graph verification of every witness.
  {
    long long yes_rows = 0, verified = 0;
    for (const RowRecord& row : rep.rows) {
      if (row.verdict != Verdict::perfect_code) continue;
      ++yes_rows;
      if (row.witness_verified) ++verified;
    }
    report(8, "witness round-trip through the Cayley graph definition",
           yes_rows > 0 && verified == yes_rows,
           std::to_string(verified) + "/" + std::to_string(yes_rows) + " witnesses verified");
  }

  // 9. Total-perfect-code parity.
  {
    const PropertyResult* p = rep.property("P10");
    report(9, "total perfect code iff even order", p && p->pass && p->checked > 0,
           prop_detail(p));
  }

  // 10. Hamming code sanity case.
  hamming_case();

  // 11. 2-group dichotomy.
  {
    const PropertyResult* p = rep.property("P9");
    report(11, "2-group dichotomy certifies one horn", p && p->pass && p->checked > 0,
           prop_detail(p));
  }

  std::printf("%s (%d criterion failures)\n", failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              failures);
  return failures == 0 ? 0 : 1;
}
