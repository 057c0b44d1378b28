#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pcode/builders.hpp"
#include "pcode/decider.hpp"

namespace pcode {

/// A family selector with an optional group-order range; lo/hi of 0 mean
/// the family default.
struct FamilyRange {
  std::string family;
  int lo = 0;
  int hi = 0;
};

struct CatalogConfig {
  std::vector<FamilyRange> families;    // empty: all built-in families
  int max_order = 64;
  std::vector<std::string> properties;  // empty: P1..P10
  bool confirm_witnesses = true;
  int parallelism = 0;                  // 0: hardware concurrency
  std::uint64_t node_budget = kDefaultNodeBudget;

  /// Text key-value format: `key = value` lines, '#' comments. Keys:
  /// max_order, families, properties, confirm_witnesses, jobs, budget.
  static CatalogConfig parse(std::istream& is);
  static CatalogConfig from_file(const std::string& path);

  std::vector<std::string> effective_properties() const;
};

/// One (group, subgroup) record: decider verdict, oracle verdict, witness
/// checks, the total-perfect-code search, and the exploratory column for
/// perfect codes not explained by the odd order/index rule.
struct RowRecord {
  std::string group_name;
  std::string group_hash;
  int group_order = 0;
  std::string subgroup_mask;
  int subgroup_order = 0;
  int subgroup_index = 0;
  Verdict verdict = Verdict::not_perfect_code;
  SearchStatus oracle = SearchStatus::none;
  SearchStatus total_oracle = SearchStatus::none;
  bool agree = false;
  bool witness_verified = false;
  bool odd_rule_converse_gap = false;
  std::vector<int> witness_transversal;
  std::optional<int> violator;
  std::vector<std::string> trace;
  std::int64_t elapsed_ns = 0;
};

struct PropertyResult {
  std::string name;
  std::string description;
  bool pass = true;
  std::int64_t checked = 0;
  std::string counterexample;  // "group=<spec> h=<mask hex>: <detail>"
};

struct CatalogReport {
  std::vector<RowRecord> rows;
  std::vector<PropertyResult> properties;
  std::int64_t group_count = 0;
  std::int64_t disagreements = 0;
  std::int64_t budget_rows = 0;
  std::int64_t elapsed_ns = 0;

  bool all_pass() const;
  const PropertyResult* property(const std::string& name) const;

  /// Line-delimited records plus a summary object; byte-identical across
  /// runs of the same config when timings are suppressed.
  void write(std::ostream& os, const CatalogConfig& config, bool include_timing = true) const;
};

/// Expands the configured families into concrete group specs, builds them,
/// and drops duplicate tables (same content hash). Deterministic order.
std::vector<BuiltGroup> expand_catalog(const CatalogConfig& config);

/// Runs decider vs. oracle over every subgroup of every catalog group and
/// checks the selected properties P1..P10 exhaustively.
CatalogReport run_catalog(const CatalogConfig& config);

}  // namespace pcode
