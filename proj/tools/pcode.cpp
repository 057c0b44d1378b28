#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pcode/builders.hpp"
#include "pcode/catalog.hpp"
#include "pcode/cayley.hpp"
#include "pcode/decider.hpp"
#include "pcode/errors.hpp"
#include "pcode/transversal.hpp"

namespace {

using namespace pcode;

/// Subgroup generators: whitespace/comma separated element ids, or the
/// symbolic names a builder exposes (a, b, x). Empty input means the
/// trivial subgroup.
Subgroup parse_subgroup(const BuiltGroup& bg, const std::string& text) {
  SubsetMask gens(bg.group.order());
  std::string token;
  std::istringstream is(text);
  std::string normalized = text;
  for (char& c : normalized)
    if (c == ',') c = ' ';
  std::istringstream stream(normalized);
  while (stream >> token) {
    ElementId id = -1;
    auto named = bg.named_elements.find(token);
    if (named != bg.named_elements.end()) {
      id = named->second;
    } else {
      try {
        std::size_t pos = 0;
        id = std::stoi(token, &pos);
        require(pos == token.size(), "bad generator token");
      } catch (const std::exception&) {
        throw std::runtime_error("unknown generator '" + token + "' (use element ids" +
                                 (bg.named_elements.empty() ? "" : " or a named generator") +
                                 ")");
      }
    }
    require(id >= 0 && id < bg.group.order(),
            "generator " + std::to_string(id) + " out of range");
    gens.set(id);
  }
  return subgroup_closure(bg.group, gens);
}

void print_decision(const BuiltGroup& bg, const Subgroup& h, const Decision& d) {
  std::cout << bg.name << "  subgroup " << h.mask.to_hex() << " (order " << h.size()
            << ", index " << h.index() << "): " << to_string(d.verdict) << "\n";
  for (const CriterionStep& s : d.trace)
    std::cout << "  " << s.name << " [" << to_string(s.outcome) << "] " << s.detail << "\n";
  if (d.transversal) {
    std::cout << "  transversal:";
    for (int x : d.transversal->elements.to_vector()) std::cout << ' ' << x;
    std::cout << "\n";
  }
  if (d.violator) std::cout << "  violating element: " << *d.violator << "\n";
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  require(file.good(), "cannot open output file '" + path + "'");
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subgroup perfect codes in Cayley graphs of finite groups"};
  app.require_subcommand(1);

  std::string spec_text, gens_text, config_path, out_path, properties;
  std::uint64_t budget = kDefaultNodeBudget;
  bool no_confirm = false;
  int max_order = 0, jobs = 0;

  auto* cmd_decide = app.add_subcommand("decide", "decide whether <gens> generate a perfect code");
  cmd_decide->add_option("group", spec_text, "group spec, e.g. c12, gd(2,4), q16")->required();
  cmd_decide->add_option("gens", gens_text, "subgroup generators, e.g. \"2\" or \"b\"");
  cmd_decide->add_flag("--no-confirm", no_confirm, "skip the oracle witness");
  cmd_decide->add_option("--budget", budget, "oracle node budget");

  auto* cmd_enum = app.add_subcommand("enumerate", "decide every subgroup of a group");
  cmd_enum->add_option("group", spec_text, "group spec")->required();
  cmd_enum->add_option("--budget", budget, "oracle node budget");

  auto* cmd_catalog = app.add_subcommand("catalog", "run the cross-validation catalog");
  cmd_catalog->add_option("config", config_path, "config file (key = value lines)");
  cmd_catalog->add_option("--max-order", max_order, "cap on group order");
  cmd_catalog->add_option("--jobs", jobs, "worker threads");
  cmd_catalog->add_option("--budget", budget, "oracle node budget");
  cmd_catalog->add_option("--properties", properties, "comma list, e.g. P1,P3");
  cmd_catalog->add_flag("--no-confirm", no_confirm, "skip witness round-trip checks");
  cmd_catalog->add_option("--out", out_path, "report file (default stdout)");

  auto* cmd_graph = app.add_subcommand("graph", "emit the witness Cayley graph edge list");
  cmd_graph->add_option("group", spec_text, "group spec")->required();
  cmd_graph->add_option("gens", gens_text, "subgroup generators");
  cmd_graph->add_option("--budget", budget, "oracle node budget");
  cmd_graph->add_option("--out", out_path, "edge list file (default stdout)");

  auto* cmd_total = app.add_subcommand("total", "search a total-perfect-code transversal");
  cmd_total->add_option("group", spec_text, "group spec")->required();
  cmd_total->add_option("gens", gens_text, "subgroup generators");
  cmd_total->add_option("--budget", budget, "oracle node budget");

  auto* cmd_table = app.add_subcommand("table", "print the multiplication table");
  cmd_table->add_option("group", spec_text, "group spec")->required();
  cmd_table->add_option("--out", out_path, "table file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*cmd_decide) {
      BuiltGroup bg = build_group(GroupSpec::parse(spec_text));
      Subgroup h = parse_subgroup(bg, gens_text);
      Decider decider({!no_confirm, budget});
      Decision d = decider.decide(bg.group, h);
      print_decision(bg, h, d);
      if (d.oracle_budget_exceeded) return 3;
      return d.is_perfect_code() ? 0 : 1;
    }

    if (*cmd_enum) {
      BuiltGroup bg = build_group(GroupSpec::parse(spec_text));
      Decider decider({false, budget});
      bool budget_hit = false;
      for (const Subgroup& h : enumerate_subgroups(bg.group)) {
        Decision d = decider.decide(bg.group, h);
        SearchResult oracle = find_cayley_transversal(bg.group, h, budget);
        if (oracle.status == SearchStatus::budget_exceeded) budget_hit = true;
        std::cout << h.mask.to_hex() << " order=" << h.size() << " index=" << h.index() << " "
                  << to_string(d.verdict)
                  << (oracle.status == SearchStatus::budget_exceeded ? " oracle=budget_exceeded"
                                                                     : "")
                  << "\n";
      }
      return budget_hit ? 3 : 0;
    }

    if (*cmd_catalog) {
      CatalogConfig config =
          config_path.empty() ? CatalogConfig{} : CatalogConfig::from_file(config_path);
      if (max_order) config.max_order = max_order;
      if (jobs) config.parallelism = jobs;
      if (budget != kDefaultNodeBudget) config.node_budget = budget;
      if (no_confirm) config.confirm_witnesses = false;
      if (!properties.empty()) {
        config.properties.clear();
        std::istringstream ps(properties);
        std::string tok;
        while (std::getline(ps, tok, ',')) config.properties.push_back(tok);
      }
      CatalogReport report = run_catalog(config);
      std::ofstream file;
      report.write(open_out(file, out_path), config);
      std::cerr << "groups=" << report.group_count << " rows=" << report.rows.size()
                << " disagreements=" << report.disagreements
                << " budget_rows=" << report.budget_rows << " all_pass=" << std::boolalpha
                << report.all_pass() << "\n";
      for (const PropertyResult& p : report.properties)
        std::cerr << "  " << p.name << " " << (p.pass ? "pass" : "FAIL") << " (" << p.checked
                  << " checks)" << (p.pass ? "" : ": " + p.counterexample) << "\n";
      if (!report.all_pass()) return 1;
      if (report.budget_rows > 0) return 3;
      return 0;
    }

    if (*cmd_graph) {
      BuiltGroup bg = build_group(GroupSpec::parse(spec_text));
      Subgroup h = parse_subgroup(bg, gens_text);
      Decider decider({true, budget});
      Decision d = decider.decide(bg.group, h);
      if (d.oracle_budget_exceeded) {
        std::cerr << "oracle budget exceeded\n";
        return 3;
      }
      if (!d.is_perfect_code() || !d.transversal) {
        std::cerr << "not a perfect code; no witness graph\n";
        return 1;
      }
      CayleyGraph graph =
          build_cayley(bg.group, connection_set_from_transversal(*d.transversal));
      std::ofstream file;
      write_edge_list(graph, open_out(file, out_path));
      return 0;
    }

    if (*cmd_total) {
      BuiltGroup bg = build_group(GroupSpec::parse(spec_text));
      Subgroup h = parse_subgroup(bg, gens_text);
      SearchResult r = find_total_transversal(bg.group, h, budget);
      if (r.status == SearchStatus::budget_exceeded) {
        std::cerr << "node budget exceeded\n";
        return 3;
      }
      if (r.status == SearchStatus::none) {
        std::cout << "no total-perfect-code transversal\n";
        return 1;
      }
      std::cout << "total transversal:";
      for (int x : r.transversal->elements.to_vector()) std::cout << ' ' << x;
      std::cout << "\n";
      return 0;
    }

    if (*cmd_table) {
      BuiltGroup bg = build_group(GroupSpec::parse(spec_text));
      std::ofstream file;
      export_table(bg.group, open_out(file, out_path));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
