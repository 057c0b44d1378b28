#include "pcode/builders.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "pcode/errors.hpp"

namespace pcode {

namespace {

// --- abelian tuple arithmetic ----------------------------------------------

struct AbelianShape {
  std::vector<int> factors;
  int order = 1;

  explicit AbelianShape(const std::vector<int>& f) : factors(f) {
    require(!f.empty(), "abelian spec needs at least one invariant factor");
    for (std::size_t i = 0; i < f.size(); ++i) {
      require(f[i] >= 2, "invariant factors must be >= 2");
      if (i > 0) require(f[i] % f[i - 1] == 0, "invariant factors must divide successively");
      order *= f[i];
    }
  }

  std::vector<int> tuple(int id) const {
    std::vector<int> t(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
      t[i] = id % factors[i];
      id /= factors[i];
    }
    return t;
  }

  int index(const std::vector<int>& t) const {
    int id = 0;
    for (std::size_t i = factors.size(); i-- > 0;) id = id * factors[i] + t[i];
    return id;
  }

  std::vector<ElementId> table() const {
    std::vector<ElementId> m(order * order);
    for (int a = 0; a < order; ++a) {
      std::vector<int> ta = tuple(a);
      for (int b = 0; b < order; ++b) {
        std::vector<int> tb = tuple(b);
        for (std::size_t i = 0; i < factors.size(); ++i) tb[i] = (tb[i] + ta[i]) % factors[i];
        m[a * order + b] = index(tb);
      }
    }
    return m;
  }

  int negate(int id) const {
    std::vector<int> t = tuple(id);
    for (std::size_t i = 0; i < factors.size(); ++i) t[i] = (factors[i] - t[i]) % factors[i];
    return index(t);
  }
};

BuiltGroup build_cyclic(int n) {
  require(n >= 1, "cyclic group order must be >= 1");
  std::vector<ElementId> table(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a * n + b] = (a + b) % n;
  BuiltGroup out{Group::from_table(n, std::move(table)), "c" + std::to_string(n), {}, {}, {}};
  if (n > 1) out.named_elements["a"] = 1;
  return out;
}

BuiltGroup build_abelian(const std::vector<int>& factors, std::string name) {
  AbelianShape shape(factors);
  BuiltGroup out{Group::from_table(shape.order, shape.table()), std::move(name), {}, {}, {}};
  return out;
}

BuiltGroup build_generalized_dihedral(const std::vector<int>& factors, std::string name) {
  if (factors.size() == 1 && factors[0] == 1) {
    // Trivial base: the group is Z2 with A = {1} and b the involution.
    BuiltGroup out{Group::from_table(2, {0, 1, 1, 0}), std::move(name),
                   SubsetMask::single(2, 0), 1, {}};
    out.named_elements["b"] = 1;
    return out;
  }
  AbelianShape shape(factors);
  int half = shape.order;
  int n = 2 * half;
  std::vector<ElementId> base = shape.table();
  auto amul = [&](int i, int j) { return base[i * half + j]; };
  std::vector<ElementId> table(n * n);
  for (int i = 0; i < half; ++i)
    for (int j = 0; j < half; ++j) {
      table[i * n + j] = amul(i, j);                                   // a_i a_j
      table[i * n + (half + j)] = half + amul(i, j);                   // a_i (a_j b)
      table[(half + i) * n + j] = half + amul(i, shape.negate(j));     // (a_i b) a_j
      table[(half + i) * n + (half + j)] = amul(i, shape.negate(j));   // (a_i b)(a_j b)
    }
  BuiltGroup out{Group::from_table(n, std::move(table)), std::move(name), SubsetMask(n), half, {}};
  for (int i = 0; i < half; ++i) out.dihedral_base->set(i);
  out.named_elements["b"] = half;
  if (half > 1) out.named_elements["a"] = 1;

  // The defining relation b^-1 a b = a^-1 must hold for every a in A.
  const Group& g = out.group;
  ElementId b = half;
  require(g.is_involution(b) || half == 1, "dihedral flip is not an involution");
  for (int a = 0; a < half; ++a)
    require(g.conjugate(b, a) == g.inv(a), "dihedral flip does not invert the base");
  return out;
}

BuiltGroup build_dicyclic(int n, std::string name) {
  require(n % 4 == 0 && n >= 8, "dicyclic order must be a multiple of 4, at least 8");
  int half = n / 2;     // order of a
  int quarter = n / 4;  // x^2 = a^quarter
  std::vector<ElementId> table(n * n);
  auto rot = [&](int k) { return ((k % half) + half) % half; };
  for (int i = 0; i < half; ++i)
    for (int j = 0; j < half; ++j) {
      table[i * n + j] = rot(i + j);                              // a^i a^j
      table[i * n + (half + j)] = half + rot(i + j);              // a^i (a^j x)
      table[(half + i) * n + j] = half + rot(i - j);              // (a^i x) a^j
      table[(half + i) * n + (half + j)] = rot(i - j + quarter);  // (a^i x)(a^j x)
    }
  BuiltGroup out{Group::from_table(n, std::move(table)), std::move(name), {}, {}, {}};
  out.named_elements["a"] = 1;
  out.named_elements["x"] = half;
  return out;
}

BuiltGroup build_generalized_quaternion(int n) {
  require(n >= 8 && (n & (n - 1)) == 0, "generalized quaternion order must be a power of 2, >= 8");
  BuiltGroup out = build_dicyclic(n, "q" + std::to_string(n));
  int involutions = 0;
  for (int a = 0; a < n; ++a)
    if (out.group.is_involution(a)) ++involutions;
  require(involutions == 1, "generalized quaternion group must have exactly one involution");
  return out;
}

BuiltGroup build_direct_product(const GroupSpec& sa, const GroupSpec& sb, std::string name) {
  BuiltGroup a = build_group(sa);
  BuiltGroup b = build_group(sb);
  int na = a.group.order(), nb = b.group.order();
  int n = na * nb;
  std::vector<ElementId> table(static_cast<std::size_t>(n) * n);
  for (int i1 = 0; i1 < na; ++i1)
    for (int j1 = 0; j1 < nb; ++j1)
      for (int i2 = 0; i2 < na; ++i2)
        for (int j2 = 0; j2 < nb; ++j2)
          table[(i1 * nb + j1) * n + (i2 * nb + j2)] =
              a.group.mul(i1, i2) * nb + b.group.mul(j1, j2);
  return {Group::from_table(n, std::move(table)), std::move(name), {}, {}, {}};
}

BuiltGroup build_semidirect(const GroupSpec& aspec, const GroupSpec& cspec,
                            const std::vector<int>& action, std::string name) {
  require(aspec.kind == GroupSpec::Kind::abelian || aspec.kind == GroupSpec::Kind::cyclic,
          "semidirect product needs an abelian normal factor");
  require(cspec.kind == GroupSpec::Kind::cyclic, "semidirect product needs a cyclic acting factor");
  std::vector<int> factors =
      aspec.kind == GroupSpec::Kind::cyclic ? std::vector<int>{aspec.params[0]} : aspec.params;
  AbelianShape shape(factors);
  int m = cspec.params[0];
  require(m >= 1, "acting cyclic factor must have positive order");
  require(action.size() == factors.size(),
          "semidirect action needs one exponent per invariant factor");

  // The generator acts by a_i -> a_i^e_i; this must be an automorphism of A
  // whose order divides m.
  std::vector<int> exps(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    int d = factors[i];
    int e = ((action[i] % d) + d) % d;
    require(std::gcd(e, d) == 1, "action exponent " + std::to_string(action[i]) +
                                     " is not invertible mod " + std::to_string(d));
    exps[i] = e;
  }
  // phi^j per factor: exps[i]^j mod d_i.
  std::vector<std::vector<int>> phi(m, std::vector<int>(factors.size(), 1));
  for (int j = 1; j < m; ++j)
    for (std::size_t i = 0; i < factors.size(); ++i)
      phi[j][i] = phi[j - 1][i] * exps[i] % factors[i];
  for (std::size_t i = 0; i < factors.size(); ++i)
    require(phi[m - 1][i] * exps[i] % factors[i] == 1 % factors[i],
            "action automorphism order does not divide the acting factor order");

  int na = shape.order;
  int n = na * m;
  std::vector<ElementId> table(static_cast<std::size_t>(n) * n);
  for (int a1 = 0; a1 < na; ++a1)
    for (int j1 = 0; j1 < m; ++j1)
      for (int a2 = 0; a2 < na; ++a2)
        for (int j2 = 0; j2 < m; ++j2) {
          std::vector<int> t1 = shape.tuple(a1);
          std::vector<int> t2 = shape.tuple(a2);
          for (std::size_t i = 0; i < factors.size(); ++i)
            t1[i] = (t1[i] + t2[i] * phi[j1][i]) % factors[i];
          table[(a1 * m + j1) * n + (a2 * m + j2)] = shape.index(t1) * m + (j1 + j2) % m;
        }
  return {Group::from_table(n, std::move(table)), std::move(name), {}, {}, {}};
}

// --- mini-language parsing --------------------------------------------------

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

/// Splits on top-level commas (parens and brackets nest).
std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!strip(cur).empty() || !out.empty()) out.push_back(strip(cur));
  return out;
}

int parse_int(const std::string& s) {
  require(!s.empty(), "expected an integer in group spec");
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("bad integer '" + s + "' in group spec");
  }
  require(pos == s.size(), "bad integer '" + s + "' in group spec");
  return v;
}

std::vector<int> parse_int_list(const std::vector<std::string>& args) {
  std::vector<int> out;
  for (const std::string& a : args) out.push_back(parse_int(a));
  return out;
}

}  // namespace

GroupSpec GroupSpec::parse(const std::string& text) {
  std::string s = strip(text);
  require(!s.empty(), "empty group spec");

  std::string head;
  std::string inner;
  std::size_t open = s.find('(');
  if (open != std::string::npos) {
    require(s.back() == ')', "unbalanced parentheses in group spec '" + s + "'");
    head = strip(s.substr(0, open));
    inner = s.substr(open + 1, s.size() - open - 2);
  } else {
    // Compact forms like c4, d6, q8, dic12.
    std::size_t digits = s.find_first_of("0123456789");
    require(digits != std::string::npos && digits > 0, "unrecognized group spec '" + s + "'");
    head = s.substr(0, digits);
    inner = s.substr(digits);
  }

  GroupSpec spec;
  if (head == "c" || head == "cyclic") {
    spec.kind = Kind::cyclic;
    spec.params = {parse_int(strip(inner))};
  } else if (head == "ab" || head == "abelian") {
    spec.kind = Kind::abelian;
    spec.params = parse_int_list(split_args(inner));
  } else if (head == "d" || head == "dihedral") {
    spec.kind = Kind::dihedral;
    spec.params = {parse_int(strip(inner))};
  } else if (head == "gd") {
    spec.kind = Kind::generalized_dihedral;
    spec.params = parse_int_list(split_args(inner));
  } else if (head == "q") {
    spec.kind = Kind::generalized_quaternion;
    spec.params = {parse_int(strip(inner))};
  } else if (head == "dic") {
    spec.kind = Kind::dicyclic;
    spec.params = {parse_int(strip(inner))};
  } else if (head == "dp") {
    std::vector<std::string> args = split_args(inner);
    require(args.size() == 2, "dp(...) takes exactly two specs");
    spec.kind = Kind::direct_product;
    spec.children = {parse(args[0]), parse(args[1])};
  } else if (head == "sdp") {
    std::vector<std::string> args = split_args(inner);
    require(args.size() == 3, "sdp(...) takes abelian spec, cyclic spec, [exponents]");
    spec.kind = Kind::semidirect_product;
    spec.children = {parse(args[0]), parse(args[1])};
    std::string exps = strip(args[2]);
    require(exps.size() >= 2 && exps.front() == '[' && exps.back() == ']',
            "sdp action must be a bracketed exponent list");
    spec.action = parse_int_list(split_args(exps.substr(1, exps.size() - 2)));
  } else if (head == "table") {
    spec.kind = Kind::from_table;
    spec.path = strip(inner);
    require(!spec.path.empty(), "table(...) needs a path");
  } else {
    throw std::runtime_error("unknown group family '" + head + "'");
  }
  return spec;
}

std::string GroupSpec::name() const {
  auto join = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(v[i]);
    }
    return s;
  };
  switch (kind) {
    case Kind::cyclic: return "c" + std::to_string(params[0]);
    case Kind::abelian: return "ab(" + join(params) + ")";
    case Kind::dihedral: return "d" + std::to_string(params[0]);
    case Kind::generalized_dihedral: return "gd(" + join(params) + ")";
    case Kind::generalized_quaternion: return "q" + std::to_string(params[0]);
    case Kind::dicyclic: return "dic(" + std::to_string(params[0]) + ")";
    case Kind::direct_product:
      return "dp(" + children[0].name() + "," + children[1].name() + ")";
    case Kind::semidirect_product:
      return "sdp(" + children[0].name() + "," + children[1].name() + ",[" + join(action) + "])";
    case Kind::from_table: return "table(" + path + ")";
  }
  return "?";
}

long long GroupSpec::order() const {
  switch (kind) {
    case Kind::cyclic:
    case Kind::dihedral: {
      long long n = params[0];
      return kind == Kind::cyclic ? n : 2 * n;
    }
    case Kind::abelian:
    case Kind::generalized_dihedral: {
      long long n = 1;
      for (int f : params) n *= f;
      return kind == Kind::abelian ? n : 2 * n;
    }
    case Kind::generalized_quaternion:
    case Kind::dicyclic: return params[0];
    case Kind::direct_product: return children[0].order() * children[1].order();
    case Kind::semidirect_product: return children[0].order() * children[1].order();
    case Kind::from_table: return -1;
  }
  return -1;
}

BuiltGroup build_group(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupSpec::Kind::cyclic: return build_cyclic(spec.params[0]);
    case GroupSpec::Kind::abelian: return build_abelian(spec.params, spec.name());
    case GroupSpec::Kind::dihedral: {
      require(spec.params[0] >= 1, "dihedral parameter must be >= 1");
      return build_generalized_dihedral({spec.params[0]}, spec.name());
    }
    case GroupSpec::Kind::generalized_dihedral:
      return build_generalized_dihedral(spec.params, spec.name());
    case GroupSpec::Kind::generalized_quaternion:
      return build_generalized_quaternion(spec.params[0]);
    case GroupSpec::Kind::dicyclic: return build_dicyclic(spec.params[0], spec.name());
    case GroupSpec::Kind::direct_product:
      return build_direct_product(spec.children[0], spec.children[1], spec.name());
    case GroupSpec::Kind::semidirect_product:
      return build_semidirect(spec.children[0], spec.children[1], spec.action, spec.name());
    case GroupSpec::Kind::from_table: {
      BuiltGroup out{import_table_file(spec.path), spec.name(), {}, {}, {}};
      return out;
    }
  }
  throw std::runtime_error("unhandled group spec kind");
}

std::string table_text(const Group& g) {
  std::ostringstream os;
  export_table(g, os);
  return os.str();
}

void export_table(const Group& g, std::ostream& os) {
  int n = g.order();
  os << n << '\n';
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (b) os << ' ';
      os << g.mul(a, b);
    }
    os << '\n';
  }
}

void export_table_file(const Group& g, const std::string& path) {
  std::ofstream f(path);
  require(f.good(), "cannot open '" + path + "' for writing");
  export_table(g, f);
  require(f.good(), "write to '" + path + "' failed");
}

Group import_table(std::istream& is) {
  int n = 0;
  require(static_cast<bool>(is >> n), "table file: missing order line");
  require(n >= 1, "table file: order must be positive");
  std::vector<ElementId> table(static_cast<std::size_t>(n) * n);
  for (std::size_t i = 0; i < table.size(); ++i)
    require(static_cast<bool>(is >> table[i]), "table file: truncated table");
  return Group::from_table(n, std::move(table));
}

Group import_table_file(const std::string& path) {
  std::ifstream f(path);
  require(f.good(), "cannot open table file '" + path + "'");
  return import_table(f);
}

}  // namespace pcode
