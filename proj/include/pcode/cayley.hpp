#pragma once

#include <iosfwd>

#include "pcode/group.hpp"
#include "pcode/transversal.hpp"

namespace pcode {

/// A Cayley graph over a group with an inverse-closed, identity-free
/// connection set. Adjacency is computed from the table on demand:
/// x ~ y iff y * x^-1 lies in the connection set. The empty set and the
/// full set G \ {1} are allowed (empty and complete graph).
struct CayleyGraph {
  const Group* group = nullptr;
  SubsetMask connection;

  int degree() const { return connection.count(); }
  bool adjacent(ElementId x, ElementId y) const {
    return connection.test(group->mul(y, group->inv(x)));
  }
};

/// Validates the connection set (inverse-closed, identity excluded).
CayleyGraph build_cayley(const Group& g, const SubsetMask& s);

/// T \ {1}; requires the transversal to contain the identity.
SubsetMask connection_set_from_transversal(const Transversal& t);

/// Definitional check: c is independent and every vertex outside c has
/// exactly one neighbour in c. O(n * |S|). The empty-graph convention
/// (the whole vertex set is a perfect code) falls out of the definition.
bool is_perfect_code_in_graph(const CayleyGraph& graph, const SubsetMask& c);

/// Every vertex, including those in c, has exactly one neighbour in c.
bool is_total_perfect_code_in_graph(const CayleyGraph& graph, const SubsetMask& c);

/// Edge list, one "u v" per line with u < v, vertices in element-id order.
void write_edge_list(const CayleyGraph& graph, std::ostream& os);

}  // namespace pcode
