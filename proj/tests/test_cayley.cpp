#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "pcode/builders.hpp"
#include "pcode/cayley.hpp"
#include "pcode/transversal.hpp"

using namespace pcode;

namespace {
Group make(const std::string& spec) { return build_group(GroupSpec::parse(spec)).group; }

Subgroup span(const Group& g, std::initializer_list<int> gens) {
  SubsetMask m(g.order());
  for (int x : gens) m.set(x);
  return subgroup_closure(g, m);
}
}  // namespace

TEST_CASE("building Cayley graphs") {
  Group z4 = make("c4");
  CayleyGraph empty = build_cayley(z4, SubsetMask(4));
  CHECK(empty.degree() == 0);

  SubsetMask complete = SubsetMask::full(4);
  complete.reset(0);
  CHECK(build_cayley(z4, complete).degree() == 3);

  SubsetMask cycle(4);
  cycle.set(1);
  cycle.set(3);
  CayleyGraph c4 = build_cayley(z4, cycle);
  CHECK(c4.adjacent(0, 1));
  CHECK(c4.adjacent(0, 3));
  CHECK(!c4.adjacent(0, 2));

  SubsetMask with_id(4);
  with_id.set(0);
  CHECK_THROWS(build_cayley(z4, with_id));
  SubsetMask lopsided(4);
  lopsided.set(1);  // inverse 3 missing
  CHECK_THROWS(build_cayley(z4, lopsided));
}

TEST_CASE("regularity and symmetry") {
  Group g = make("d6");
  SubsetMask s(12);
  for (int x : {1, 5, 6, 7}) s.set(x);
  CayleyGraph graph = build_cayley(g, s);
  for (int v = 0; v < 12; ++v) {
    int deg = 0;
    for (int u = 0; u < 12; ++u)
      if (u != v && graph.adjacent(v, u)) ++deg;
    CHECK(deg == graph.degree());
  }
  for (int v = 0; v < 12; ++v)
    for (int u = 0; u < 12; ++u) CHECK(graph.adjacent(u, v) == graph.adjacent(v, u));
}

TEST_CASE("connection set from a transversal") {
  Group z6 = make("c6");
  SearchResult r = find_cayley_transversal(z6, whole_group(z6));
  CHECK(connection_set_from_transversal(*r.transversal).none());

  SearchResult all = find_cayley_transversal(z6, trivial_subgroup(z6));
  SubsetMask s = connection_set_from_transversal(*all.transversal);
  CHECK(s.count() == 5);
  CHECK(!s.test(0));

  Transversal no_id;
  no_id.elements = SubsetMask(6);
  no_id.elements.set(1);
  CHECK_THROWS(connection_set_from_transversal(no_id));
}

TEST_CASE("perfect code definition checks") {
  Group z4 = make("c4");

  // Empty graph: only the full vertex set is a perfect code.
  CayleyGraph empty = build_cayley(z4, SubsetMask(4));
  CHECK(is_perfect_code_in_graph(empty, SubsetMask::full(4)));
  SubsetMask part(4);
  part.set(0);
  CHECK(!is_perfect_code_in_graph(empty, part));

  // Complete graph: any single vertex.
  SubsetMask conn = SubsetMask::full(4);
  conn.reset(0);
  CayleyGraph complete = build_cayley(z4, conn);
  CHECK(is_perfect_code_in_graph(complete, part));

  // The 4-cycle: {0,2} is independent but vertex 1 sees both.
  SubsetMask cycle(4);
  cycle.set(1);
  cycle.set(3);
  SubsetMask c02(4);
  c02.set(0);
  c02.set(2);
  CHECK(!is_perfect_code_in_graph(build_cayley(z4, cycle), c02));
}

TEST_CASE("total perfect code definition checks") {
  Group z2 = make("c2");
  SubsetMask k2(2);
  k2.set(1);
  CHECK(is_total_perfect_code_in_graph(build_cayley(z2, k2), SubsetMask::full(2)));

  Group z4 = make("c4");
  SubsetMask some(4);
  some.set(0);
  CHECK(!is_total_perfect_code_in_graph(build_cayley(z4, SubsetMask(4)), some));

  Group d4 = make("d4");
  Subgroup b = span(d4, {4});
  SearchResult r = find_total_transversal(d4, b);
  REQUIRE(r.found());
  CHECK(is_total_perfect_code_in_graph(build_cayley(d4, r.transversal->elements), b.mask));
}

TEST_CASE("transversal witnesses round-trip through the graph definition") {
  for (const char* spec : {"c9", "d6", "q8", "ab(2,4)", "dic(12)", "gd(2,4)"}) {
    Group g = make(spec);
    for (const Subgroup& h : enumerate_subgroups(g)) {
      SearchResult r = find_cayley_transversal(g, h);
      if (!r.found()) continue;
      CayleyGraph graph = build_cayley(g, connection_set_from_transversal(*r.transversal));
      CHECK(is_perfect_code_in_graph(graph, h.mask));
      SearchResult t = find_total_transversal(g, h);
      if (t.found())
        CHECK(is_total_perfect_code_in_graph(build_cayley(g, t.transversal->elements), h.mask));
    }
  }
}

TEST_CASE("conjugating a perfect code conjugates the graph") {
  Group g = make("d4");
  Subgroup h = span(g, {4});
  SearchResult r = find_cayley_transversal(g, h);
  REQUIRE(r.found());
  SubsetMask s = connection_set_from_transversal(*r.transversal);
  REQUIRE(is_perfect_code_in_graph(build_cayley(g, s), h.mask));
  for (int x = 0; x < g.order(); ++x) {
    SubsetMask cs(g.order());
    s.for_each([&](int e) { cs.set(g.conjugate(x, e)); });
    Subgroup ch = conjugate_subgroup(g, h, x);
    CHECK(is_perfect_code_in_graph(build_cayley(g, cs), ch.mask));
  }
}

TEST_CASE("edge list format") {
  Group z4 = make("c4");
  SubsetMask cycle(4);
  cycle.set(1);
  cycle.set(3);
  std::ostringstream os;
  write_edge_list(build_cayley(z4, cycle), os);
  CHECK(os.str() == "0 1\n0 3\n1 2\n2 3\n");
}
