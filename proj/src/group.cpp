#include "bisep/group.hpp"

#include <algorithm>
#include <map>

namespace bisep {

std::size_t Group::inverse(std::size_t a) const {
  for (std::size_t b = 0; b < order(); ++b)
    if (table[a][b] == identity) return b;
  throw Error(ErrorKind::NotAGroup, "element without inverse", {a});
}

Group make_group(std::string name, std::vector<std::vector<std::size_t>> table) {
  const std::size_t n = table.size();
  if (n == 0) throw Error(ErrorKind::NotAGroup, "empty table");
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n) throw Error(ErrorKind::NotAGroup, "table is not square", {a});
    for (std::size_t b = 0; b < n; ++b)
      if (table[a][b] >= n) throw Error(ErrorKind::NotAGroup, "product out of range", {a, b});
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) throw Error(ErrorKind::NotAGroup, "not associative", {a, b, c});
  std::size_t e = n;
  for (std::size_t a = 0; a < n && e == n; ++a) {
    bool ok = true;
    for (std::size_t b = 0; b < n && ok; ++b) ok = table[a][b] == b && table[b][a] == b;
    if (ok) e = a;
  }
  if (e == n) throw Error(ErrorKind::NotAGroup, "no identity");
  Group g{std::move(name), std::move(table), e};
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t b = g.inverse(a);
    if (g.table[b][a] != e) throw Error(ErrorKind::NotAGroup, "one-sided inverse", {a});
  }
  return g;
}

Group permutation_group(std::string name, const std::vector<std::vector<std::size_t>>& generators) {
  using Perm = std::vector<std::size_t>;
  if (generators.empty()) throw Error(ErrorKind::NotAGroup, "no generators");
  const std::size_t deg = generators[0].size();
  Perm id(deg);
  for (std::size_t i = 0; i < deg; ++i) id[i] = i;
  auto compose = [&](const Perm& x, const Perm& y) {  // x then y
    Perm z(deg);
    for (std::size_t i = 0; i < deg; ++i) z[i] = y[x[i]];
    return z;
  };
  std::vector<Perm> elems{id};
  std::map<Perm, std::size_t> index{{id, 0}};
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (const auto& gen : generators) {
      Perm z = compose(elems[k], gen);
      if (!index.count(z)) {
        index[z] = elems.size();
        elems.push_back(z);
      }
    }
  std::vector<std::vector<std::size_t>> table(elems.size(), std::vector<std::size_t>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) table[a][b] = index.at(compose(elems[a], elems[b]));
  return make_group(std::move(name), std::move(table));
}

Group cyclic_group(std::size_t n) {
  if (n == 0 || n > 12) throw Error(ErrorKind::BadParams, "cyclic group order must be in 1..12");
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return make_group("C" + std::to_string(n), std::move(t));
}

Group dihedral_group(std::size_t n) {
  if (n < 2 || n > 6) throw Error(ErrorKind::BadParams, "dihedral group needs 2 <= n <= 6");
  std::vector<std::size_t> rot(n), ref(n);
  for (std::size_t i = 0; i < n; ++i) {
    rot[i] = (i + 1) % n;
    ref[i] = (n - i) % n;
  }
  return permutation_group("D" + std::to_string(n), {rot, ref});
}

Group symmetric3() { return permutation_group("S3", {{1, 2, 0}, {1, 0, 2}}); }

Group alternating_group4() { return permutation_group("A4", {{1, 2, 0, 3}, {1, 0, 3, 2}}); }

Group klein_four() { return permutation_group("V4", {{1, 0, 3, 2}, {2, 3, 0, 1}}); }

Group quaternion_group() {
  // Regular representation on {1,i,j,k,-1,-i,-j,-k} by right multiplication.
  const std::vector<std::size_t> ri{1, 4, 7, 2, 5, 0, 3, 6};
  const std::vector<std::size_t> rj{2, 3, 4, 5, 6, 7, 0, 1};
  return permutation_group("Q8", {ri, rj});
}

Group group_by_name(const std::string& name) {
  if (name == "S3") return symmetric3();
  if (name == "A4") return alternating_group4();
  if (name == "V4") return klein_four();
  if (name == "Q8") return quaternion_group();
  if (name.size() >= 2 && (name[0] == 'C' || name[0] == 'D') &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    const std::size_t n = std::stoul(name.substr(1));
    return name[0] == 'C' ? cyclic_group(n) : dihedral_group(n);
  }
  throw Error(ErrorKind::BadParams, "unknown group " + name);
}

std::vector<std::size_t> generated_subgroup(const Group& g, const std::vector<std::size_t>& gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<std::size_t> elems{g.identity};
  in[g.identity] = true;
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (auto x : gens) {
      if (x >= g.order()) throw Error(ErrorKind::BadParams, "generator out of range", {x});
      const std::size_t y = g.mul(elems[k], x);
      if (!in[y]) {
        in[y] = true;
        elems.push_back(y);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

Group subgroup(const Group& g, const std::vector<std::size_t>& elements) {
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] >= g.order() || pos.count(elements[i]))
      throw Error(ErrorKind::BadParams, "subgroup elements must be distinct group indices");
    pos[elements[i]] = i;
  }
  std::vector<std::vector<std::size_t>> t(elements.size(), std::vector<std::size_t>(elements.size()));
  for (std::size_t a = 0; a < elements.size(); ++a)
    for (std::size_t b = 0; b < elements.size(); ++b) {
      auto it = pos.find(g.mul(elements[a], elements[b]));
      if (it == pos.end()) throw Error(ErrorKind::BadParams, "subset not closed under the group law", {a, b});
      t[a][b] = it->second;
    }
  try {
    return make_group(g.name + "-sub", std::move(t));
  } catch (const Error& e) {
    throw Error(ErrorKind::BadParams, std::string("subset is not a subgroup: ") + e.what());
  }
}

Algebra group_algebra(const Field& f, const Group& g) {
  const std::size_t n = g.order();
  std::vector<StructureEntry> s;
  std::vector<std::string> names;
  for (std::size_t a = 0; a < n; ++a) {
    names.push_back("g" + std::to_string(a));
    for (std::size_t b = 0; b < n; ++b) s.push_back({a, b, g.mul(a, b), f.one()});
  }
  return Algebra::make(f, n, s, unit_vec(f, n, g.identity), names);
}

}  // namespace bisep
