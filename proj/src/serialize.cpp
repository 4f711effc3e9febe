#include "bisep/serialize.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace bisep {

namespace {

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorKind::Parse, msg); }

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::uint64_t as_uint(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) parse_error(std::string(what) + " must be a non-negative int");
  return j.get<std::uint64_t>();
}

std::uint64_t reduce_mod(std::int64_t v, std::uint64_t p) {
  const auto m = static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(((v % m) + m) % m);
}

}  // namespace

json field_to_json(const Field& f) {
  switch (f.kind()) {
    case FieldKind::Rationals: return json{{"kind", "Q"}};
    case FieldKind::Prime: return json{{"kind", "Fp"}, {"p", f.characteristic()}};
    case FieldKind::Extension:
      return json{{"kind", "Fpk"}, {"p", f.characteristic()}, {"k", f.degree()}, {"modulus", f.modulus()}};
  }
  return {};
}

Field field_from_json(const json& j) {
  const std::string kind = need(j, "kind").get<std::string>();
  if (kind == "Q") return Field::rationals();
  if (kind == "Fp") return Field::prime(as_uint(need(j, "p"), "p"));
  if (kind == "Fpk") {
    const auto p = as_uint(need(j, "p"), "p");
    const auto k = static_cast<unsigned>(as_uint(need(j, "k"), "k"));
    if (!j.contains("modulus")) return Field::extension(p, k);
    std::vector<std::uint64_t> mod;
    for (const auto& c : j.at("modulus")) mod.push_back(as_uint(c, "modulus coefficient"));
    return Field::extension(p, k, std::move(mod));
  }
  parse_error("unknown field kind \"" + kind + "\"");
}

Field field_from_name(const std::string& raw) {
  std::string s;
  for (char c : raw) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "q") return Field::rationals();
  if (s.size() < 2 || s[0] != 'f') throw Error(ErrorKind::InvalidField, "unknown field \"" + raw + "\"");
  try {
    const auto hat = s.find('^');
    const std::uint64_t p = std::stoull(s.substr(1, hat == std::string::npos ? std::string::npos : hat - 1));
    if (hat == std::string::npos) return Field::prime(p);
    return Field::extension(p, static_cast<unsigned>(std::stoul(s.substr(hat + 1))));
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidField, "unknown field \"" + raw + "\"");
  }
}

json scalar_to_json(const Field& f, const Scalar& s) {
  switch (f.kind()) {
    case FieldKind::Rationals: return s.rational().get_str();
    case FieldKind::Prime: return s.residue();
    case FieldKind::Extension: return f.coefficients(s);
  }
  return {};
}

Scalar scalar_from_json(const Field& f, const json& j) {
  if (f.kind() == FieldKind::Rationals) {
    if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
    if (!j.is_string()) parse_error("rational coefficient must be a string or int");
    mpq_class q;
    if (q.set_str(j.get<std::string>(), 10) != 0) parse_error("bad rational \"" + j.get<std::string>() + "\"");
    if (q.get_den() == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in \"" + j.get<std::string>() + "\"");
    q.canonicalize();
    return Scalar(q);
  }
  const std::uint64_t p = f.characteristic();
  if (j.is_number_integer()) return f.embed_prime(reduce_mod(j.get<std::int64_t>(), p));
  if (j.is_string()) {
    try {
      return f.embed_prime(reduce_mod(std::stoll(j.get<std::string>()), p));
    } catch (const std::logic_error&) {
      parse_error("bad coefficient \"" + j.get<std::string>() + "\"");
    }
  }
  if (j.is_array() && f.kind() == FieldKind::Extension) {
    if (j.size() > f.degree()) parse_error("too many coefficients for " + f.name());
    std::vector<std::uint64_t> c(f.degree(), 0);
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_number_integer()) parse_error("coefficient must be an int");
      c[i] = reduce_mod(j[i].get<std::int64_t>(), p);
    }
    return f.from_coefficients(c);
  }
  parse_error("bad coefficient for " + f.name());
}

json vec_to_json(const Field& f, const Vec& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(scalar_to_json(f, s));
  return out;
}

Vec vec_from_json(const Field& f, const json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) parse_error("expected a vector of length " + std::to_string(n));
  Vec v;
  for (const auto& x : j) v.push_back(scalar_from_json(f, x));
  return v;
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vec_to_json(m.field(), m.row(r)));
  return out;
}

Matrix matrix_from_json(const Field& f, const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) parse_error("expected a matrix with " + std::to_string(rows) + " rows");
  std::vector<Vec> rs;
  for (const auto& r : j) rs.push_back(vec_from_json(f, r, cols));
  return Matrix::from_rows(f, cols, rs);
}

json algebra_to_json(const Algebra& a) {
  const Field& f = a.field();
  json st = json::array();
  for (const auto& e : a.structure()) st.push_back(json::array({e.i, e.j, e.k, scalar_to_json(f, e.c)}));
  return json{{"field", field_to_json(f)},
              {"dim", a.dim()},
              {"basis_names", a.basis_names()},
              {"unit", vec_to_json(f, a.unit())},
              {"structure", st}};
}

Algebra algebra_from_json(const json& j) {
  const Field f = field_from_json(need(j, "field"));
  const std::size_t dim = as_uint(need(j, "dim"), "dim");
  if (dim == 0) parse_error("dim must be positive");
  std::vector<StructureEntry> entries;
  for (const auto& t : need(j, "structure")) {
    if (!t.is_array() || t.size() != 4) parse_error("structure entries are [i, j, k, c]");
    const std::size_t i = as_uint(t[0], "i"), jj = as_uint(t[1], "j"), k = as_uint(t[2], "k");
    if (i >= dim || jj >= dim || k >= dim) parse_error("structure index out of range");
    entries.push_back({i, jj, k, scalar_from_json(f, t[3])});
  }
  std::vector<std::string> names;
  if (j.contains("basis_names")) names = j.at("basis_names").get<std::vector<std::string>>();
  if (!names.empty() && names.size() != dim) parse_error("basis_names has the wrong length");
  return Algebra::make(f, dim, entries, vec_from_json(f, need(j, "unit"), dim), std::move(names));
}

json extension_to_json(const Extension& e) {
  json iota = json::array();
  for (std::size_t c = 0; c < e.iota().cols(); ++c) iota.push_back(vec_to_json(e.field(), e.iota().column(c)));
  return json{{"S", algebra_to_json(e.S())}, {"R", algebra_to_json(e.R())}, {"iota", iota}};
}

Extension extension_from_json(const json& j) {
  const Algebra s = algebra_from_json(need(j, "S"));
  const Algebra r = algebra_from_json(need(j, "R"));
  if (s.field() != r.field()) throw Error(ErrorKind::FieldMismatch, "S and R over different fields");
  const json& io = need(j, "iota");
  if (!io.is_array() || io.size() != s.dim()) parse_error("iota needs one column per basis element of S");
  std::vector<Vec> cols;
  for (const auto& c : io) cols.push_back(vec_from_json(r.field(), c, r.dim()));
  return Extension(s, r, Matrix::from_columns(r.field(), r.dim(), cols));
}

json bimodule_to_json(const Bimodule& m) {
  json left = json::array(), right = json::array();
  for (const auto& a : m.left()) left.push_back(matrix_to_json(a));
  for (const auto& a : m.right()) right.push_back(matrix_to_json(a));
  return json{{"T", algebra_to_json(m.T())}, {"R", algebra_to_json(m.R())}, {"dim", m.dim()},
              {"left", left}, {"right", right}};
}

Bimodule bimodule_from_json(const json& j) {
  const Algebra t = algebra_from_json(need(j, "T"));
  const Algebra r = algebra_from_json(need(j, "R"));
  if (t.field() != r.field()) throw Error(ErrorKind::FieldMismatch, "T and R over different fields");
  const std::size_t dim = as_uint(need(j, "dim"), "dim");
  auto read = [&](const char* key, std::size_t count) {
    const json& a = need(j, key);
    if (!a.is_array() || a.size() != count) parse_error(std::string(key) + " needs one matrix per basis element");
    std::vector<Matrix> out;
    for (const auto& m : a) out.push_back(matrix_from_json(t.field(), m, dim, dim));
    return out;
  };
  return Bimodule(t, r, dim, read("left", t.dim()), read("right", r.dim()));
}

Subject subject_from_json(const json& j) {
  if (j.is_object() && j.contains("iota")) return extension_from_json(j);
  if (j.is_object() && j.contains("left")) return bimodule_from_json(j);
  parse_error("input is neither an extension (needs \"iota\") nor a bimodule (needs \"left\")");
}

json subject_to_json(const Subject& s) {
  if (const auto* e = std::get_if<Extension>(&s)) return extension_to_json(*e);
  return bimodule_to_json(std::get<Bimodule>(s));
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    parse_error(path + ": " + e.what());
  }
}

}  // namespace bisep
