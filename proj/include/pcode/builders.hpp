#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcode/group.hpp"

namespace pcode {

/// Constructible group families and their parameters.
///
/// Element numbering is fixed per family so witnesses are reproducible:
///  - cyclic(n): i*j = (i+j) mod n.
///  - abelian(d1,...,dk) with d1 | d2 | ... | dk: tuples (x1,...,xk) indexed
///    with the first factor fastest-varying: id = x1 + d1*(x2 + d2*(...)).
///  - dihedral(n): rotations 0..n-1, reflections n..2n-1 (n+i is a_i * b).
///  - generalized_dihedral(A): A's numbering on 0..|A|-1, then |A|+i = a_i*b.
///  - dicyclic(4m): a^i at i for i < 2m, a^i*x at 2m+i; x^2 = a^m.
///  - generalized_quaternion(2^k), k >= 3: the dicyclic numbering.
///  - direct_product(A,B): (i,j) at i*|B| + j.
///  - semidirect_product(A, Z_m, exps): (a, t^j) at idx_A(a)*m + j, where the
///    generator t acts on the i-th invariant factor by raising to exps[i].
struct GroupSpec {
  enum class Kind {
    cyclic,
    abelian,
    dihedral,
    generalized_dihedral,
    generalized_quaternion,
    dicyclic,
    direct_product,
    semidirect_product,
    from_table,
  };

  Kind kind = Kind::cyclic;
  std::vector<int> params;          // cyclic/dihedral: {n}; abelian/gd: factors; q/dic: {order}
  std::vector<GroupSpec> children;  // dp: {a,b}; sdp: {abelian, cyclic}
  std::vector<int> action;          // sdp: exponent per invariant factor
  std::string path;                 // from_table

  /// Parses the CLI mini-language: c4, ab(2,4), d6, gd(2,4), q16, dic(12),
  /// dp(c4,c3), sdp(ab(3),c4,[-1]), table(path).
  static GroupSpec parse(const std::string& text);

  /// Canonical spelling; parse(name()) round-trips.
  std::string name() const;

  /// Group order; -1 for from_table (unknown until built).
  long long order() const;
};

/// A built group plus the distinguished structure some families carry:
/// (generalized) dihedral groups return the abelian base A and the inverting
/// involution b; named_elements gives the CLI symbolic generators.
struct BuiltGroup {
  Group group;
  std::string name;
  std::optional<SubsetMask> dihedral_base;
  std::optional<ElementId> dihedral_flip;
  std::map<std::string, ElementId> named_elements;
};

BuiltGroup build_group(const GroupSpec& spec);

/// Multiplication-table text format: first line n, then n rows of n ids,
/// row a column b = a*b, identity 0. Groups are identified elsewhere by the
/// content hash of exactly this text.
std::string table_text(const Group& g);
void export_table(const Group& g, std::ostream& os);
void export_table_file(const Group& g, const std::string& path);
Group import_table(std::istream& is);
Group import_table_file(const std::string& path);

}  // namespace pcode
