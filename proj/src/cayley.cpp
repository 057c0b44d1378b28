#include "pcode/cayley.hpp"

#include <ostream>

#include "pcode/errors.hpp"

namespace pcode {

CayleyGraph build_cayley(const Group& g, const SubsetMask& s) {
  require(s.universe_size() == g.order(), "connection set universe mismatch");
  require(!s.test(kIdentity), "connection set must not contain the identity");
  s.for_each([&](int x) {
    require(s.test(g.inv(x)),
            "connection set is not inverse-closed at element " + std::to_string(x));
  });
  return {&g, s};
}

SubsetMask connection_set_from_transversal(const Transversal& t) {
  require(t.elements.test(kIdentity), "transversal does not contain the identity");
  SubsetMask s = t.elements;
  s.reset(kIdentity);
  return s;
}

bool is_perfect_code_in_graph(const CayleyGraph& graph, const SubsetMask& c) {
  const Group& g = *graph.group;
  std::vector<ElementId> code = c.to_vector();
  for (std::size_t i = 0; i < code.size(); ++i)
    for (std::size_t j = i + 1; j < code.size(); ++j)
      if (graph.adjacent(code[i], code[j])) return false;
  for (ElementId x = 0; x < g.order(); ++x) {
    if (c.test(x)) continue;
    int neighbours = 0;
    for (ElementId y : code)
      if (graph.adjacent(x, y) && ++neighbours > 1) return false;
    if (neighbours != 1) return false;
  }
  return true;
}

bool is_total_perfect_code_in_graph(const CayleyGraph& graph, const SubsetMask& c) {
  const Group& g = *graph.group;
  std::vector<ElementId> code = c.to_vector();
  for (ElementId x = 0; x < g.order(); ++x) {
    int neighbours = 0;
    for (ElementId y : code)
      if (graph.adjacent(x, y) && ++neighbours > 1) return false;
    if (neighbours != 1) return false;
  }
  return true;
}

void write_edge_list(const CayleyGraph& graph, std::ostream& os) {
  const Group& g = *graph.group;
  for (ElementId u = 0; u < g.order(); ++u)
    for (ElementId v = u + 1; v < g.order(); ++v)
      if (graph.adjacent(u, v)) os << u << ' ' << v << '\n';
}

}  // namespace pcode
