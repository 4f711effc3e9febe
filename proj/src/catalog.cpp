#include "bisep/catalog.hpp"

#include <set>
#include <sstream>

namespace bisep {

std::string to_string(const Expected& e) {
  if (const auto* b = std::get_if<bool>(&e)) return *b ? "true" : "false";
  return std::to_string(std::get<std::uint64_t>(e));
}

namespace {

// Indices of upper_triangular(n) in row-major order over a <= b.
std::size_t tri_index(std::size_t n, std::size_t a, std::size_t b) {
  std::size_t idx = 0;
  for (std::size_t r = 0; r < a; ++r) idx += n - r;
  return idx + (b - a);
}

}  // namespace

Extension matrix_over_triangular(const Field& f, std::size_t n) {
  const Algebra s = upper_triangular(f, n), r = matrix_algebra(f, n);
  Matrix iota(f, n * n, s.dim());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) iota(a * n + b, tri_index(n, a, b)) = f.one();
  return Extension(s, r, iota);
}

Extension triangular_over_diagonal(const Field& f, std::size_t n) {
  const Algebra s = diagonal(f, n), r = upper_triangular(f, n);
  Matrix iota(f, r.dim(), n);
  for (std::size_t a = 0; a < n; ++a) iota(tri_index(n, a, a), a) = f.one();
  return Extension(s, r, iota);
}

Extension z2z2_over_z2() {
  const Field f = Field::prime(2);
  const Algebra s = field_algebra(f), r = direct_sum(s, s);
  return Extension(s, r, Matrix::from_columns(f, 2, {r.unit()}));
}

Extension group_pair(const Field& f, const Group& g, const std::vector<std::size_t>& h) {
  const Group sub = subgroup(g, h);
  const Algebra s = group_algebra(f, sub), r = group_algebra(f, g);
  Matrix iota(f, g.order(), h.size());
  for (std::size_t i = 0; i < h.size(); ++i) iota(h[i], i) = f.one();
  return Extension(s, r, iota);
}

Bimodule morita_bimodule(const Field& f, std::size_t n) {
  const Algebra t = matrix_algebra(f, n), k = field_algebra(f);
  std::vector<Matrix> left;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Matrix e(f, n, n);
      e(a, b) = f.one();
      left.push_back(std::move(e));
    }
  return Bimodule(t, k, n, std::move(left), {Matrix::identity(f, n)});
}

Extension trivial_extension_pair(const Extension& base, const MultiplicativeBimodule& i) {
  const Field& f = base.field();
  const Algebra& s = base.S();
  MultiplicativeBimodule is{i.dim, {}, {}, i.product};
  for (std::size_t j = 0; j < s.dim(); ++j) {
    Matrix l(f, i.dim, i.dim), r(f, i.dim, i.dim);
    for (std::size_t k = 0; k < base.R().dim(); ++k) {
      const Scalar& c = base.iota()(k, j);
      if (f.is_zero(c)) continue;
      l = l + i.left[k].scaled(c);
      r = r + i.right[k].scaled(c);
    }
    is.left.push_back(std::move(l));
    is.right.push_back(std::move(r));
  }
  const Algebra t = trivial_extension(s, is), a = trivial_extension(base.R(), i);
  const std::size_t nr = base.R().dim(), ns = s.dim();
  Matrix iota(f, nr + i.dim, ns + i.dim);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < ns; ++c) iota(r, c) = base.iota()(r, c);
  for (std::size_t x = 0; x < i.dim; ++x) iota(nr + x, ns + x) = f.one();
  return Extension(t, a, iota);
}

Extension field_extension(std::uint64_t p, unsigned k) {
  const Field big = Field::extension(p, k);
  const Field f = Field::prime(p);
  Vec monic;
  for (auto c : big.modulus()) monic.push_back(f.embed_prime(c));
  const Algebra r = polynomial_quotient(f, monic);
  const Algebra s = field_algebra(f);
  return Extension(s, r, Matrix::from_columns(f, r.dim(), {r.unit()}));
}

namespace {

class Params {
 public:
  Params(const std::string& entry, const CatalogParams& p) : entry_(entry), p_(p) {}

  std::string str(const std::string& key, const std::string& def) {
    used_.insert(key);
    const auto it = p_.find(key);
    return it == p_.end() ? def : it->second;
  }
  std::size_t size(const std::string& key, std::size_t def, std::size_t lo, std::size_t hi) {
    const std::string v = str(key, std::to_string(def));
    std::size_t n = 0;
    try {
      std::size_t pos = 0;
      n = std::stoul(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
    } catch (const std::logic_error&) {
      bad(key + " must be an integer");
    }
    if (n < lo || n > hi) bad(key + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return n;
  }
  Field field(const std::string& def) {
    try {
      return field_from_name(str("field", def));
    } catch (const Error& e) {
      bad(e.what());
    }
  }
  std::vector<std::size_t> indices(const std::string& key) {
    std::vector<std::size_t> out;
    std::stringstream ss(str(key, ""));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      try {
        out.push_back(std::stoul(tok));
      } catch (const std::logic_error&) {
        bad(key + " must be a comma-separated index list");
      }
    }
    return out;
  }
  void finish() const {
    for (const auto& [k, v] : p_)
      if (!used_.count(k)) bad("unknown parameter \"" + k + "\"");
  }
  [[noreturn]] void bad(const std::string& msg) const { throw Error(ErrorKind::BadParams, entry_ + ": " + msg); }
  bool has(const std::string& key) const { return p_.count(key) > 0; }

 private:
  std::string entry_;
  const CatalogParams& p_;
  std::set<std::string> used_;
};

const std::vector<std::string> kAllExtensionProps = {
    "split",      "separable",   "fgp_left",    "fgp_right",            "frobenius",  "qf_left",
    "qf_right",   "h_separable", "centrally_projective", "biseparable", "axiom_compatible"};

Algebra named_algebra(Params& p, const Field& f) {
  const std::string name = p.str("algebra", "M2");
  auto n_of = [&](std::size_t from) {
    try {
      return static_cast<std::size_t>(std::stoul(name.substr(from)));
    } catch (const std::logic_error&) {
      p.bad("bad algebra \"" + name + "\"");
    }
  };
  if (name == "k") return field_algebra(f);
  if (name == "dual") return polynomial_quotient(f, {f.zero(), f.zero(), f.one()});
  if (name == "z2z2") return direct_sum(field_algebra(f), field_algebra(f));
  if (name.rfind("group:", 0) == 0) {
    try {
      return group_algebra(f, group_by_name(name.substr(6)));
    } catch (const Error& e) {
      p.bad(e.what());
    }
  }
  if (!name.empty()) {
    const std::size_t n = n_of(1);
    if (n < 1 || n > 4) p.bad("algebra size must lie in [1, 4]");
    if (name[0] == 'M') return matrix_algebra(f, n);
    if (name[0] == 'T') return upper_triangular(f, n);
    if (name[0] == 'D') return diagonal(f, n);
  }
  p.bad("unknown algebra \"" + name + "\" (M<n>, T<n>, D<n>, k, dual, z2z2, group:<G>)");
}

std::uint64_t index_of(const Group& g, std::size_t h) { return g.order() / h; }

CatalogObject build_entry(const std::string& name, Params& p) {
  CatalogObject o{name, "", Extension(identity_extension(field_algebra(Field::prime(2)))), {}};
  for (const auto& info : catalog_entries())
    if (info.name == name) o.anchor = info.anchor;

  if (name == "matrix_over_triangular") {
    const Field f = p.field("f2");
    o.subject = matrix_over_triangular(f, p.size("n", 2, 2, 4));
    o.expected = {{"separable", true}, {"h_separable", true}, {"fgp_left", true}, {"fgp_right", true},
                  {"frobenius", false}, {"qf_left", false}, {"qf_right", false}};
  } else if (name == "triangular_over_diagonal") {
    const Field f = p.field("f2");
    o.subject = triangular_over_diagonal(f, p.size("n", 2, 2, 4));
    o.expected = {{"split", true}, {"fgp_left", true}, {"fgp_right", true}, {"frobenius", false},
                  {"separable", false}};
  } else if (name == "z2z2_over_z2") {
    o.subject = z2z2_over_z2();
    o.expected = {{"split", true},           {"separable", true},        {"frobenius", true},
                  {"fgp_left", true},        {"fgp_right", true},        {"projection_count", std::uint64_t{2}},
                  {"frobenius_hom_count", std::uint64_t{1}}};
  } else if (name == "group_pair") {
    const Field f = p.field("f3");
    Group g = cyclic_group(2);
    try {
      g = group_by_name(p.str("G", "C2"));
    } catch (const Error& e) {
      p.bad(e.what());
    }
    std::vector<std::size_t> h;
    if (p.has("H") && p.has("Hgens")) p.bad("give H or Hgens, not both");
    if (p.has("H")) {
      h = p.indices("H");
    } else {
      const auto gens = p.indices("Hgens");
      for (auto x : gens)
        if (x >= g.order()) p.bad("generator out of range");
      h = generated_subgroup(g, gens);
    }
    for (auto x : h)
      if (x >= g.order()) p.bad("element out of range");
    try {
      o.subject = group_pair(f, g, h);
    } catch (const Error& e) {
      p.bad(e.what());
    }
    const std::uint64_t idx = index_of(g, h.size());
    const bool sep = !f.is_finite() || idx % f.characteristic() != 0;
    o.expected = {{"split", true}, {"separable", sep}, {"frobenius", true}};
  } else if (name == "morita_bimodule") {
    const Field f = p.field("f2");
    o.subject = morita_bimodule(f, p.size("n", 2, 1, 4));
    o.expected = {{"biseparable", true}, {"frobenius", true}, {"separable", true}};
  } else if (name == "trivial_ext_pair") {
    const std::string base = p.str("base", "z2z2_over_z2");
    if (base == "trivial_ext_pair" || base == "morita_bimodule") p.bad("base must be an extension entry");
    const CatalogObject b = build_catalog(base, {});
    const Extension& ext = std::get<Extension>(b.subject);
    const std::string prod = p.str("product", "zero");
    const Algebra& r = ext.R();
    MultiplicativeBimodule i{r.dim(), {}, {}, {}};
    for (std::size_t k = 0; k < r.dim(); ++k) {
      i.left.push_back(r.left_mult(k));
      i.right.push_back(r.right_mult(k));
    }
    if (prod == "regular")
      i.product = r.structure();
    else if (prod != "zero")
      p.bad("product must be zero or regular");
    o.subject = trivial_extension_pair(ext, i);
    if (const auto it = b.expected.find("separable"); it != b.expected.end()) o.expected["separable"] = it->second;
  } else if (name == "identity_ext") {
    const Field f = p.field("f2");
    o.subject = identity_extension(named_algebra(p, f));
    for (const auto& prop : kAllExtensionProps) o.expected[prop] = true;
  } else if (name == "field_extension") {
    const std::size_t pr = p.size("p", 2, 2, 97);
    if (!is_prime(pr)) p.bad("p must be prime");
    o.subject = field_extension(pr, static_cast<unsigned>(p.size("k", 2, 1, 8)));
    o.expected = {{"split", true}, {"separable", true}, {"frobenius", true}};
  } else {
    throw Error(ErrorKind::UnknownEntry, "no catalog entry \"" + name + "\"");
  }
  p.finish();
  return o;
}

}  // namespace

const std::vector<CatalogInfo>& catalog_entries() {
  static const std::vector<CatalogInfo> entries = {
      {"matrix_over_triangular", "n by n matrices over the upper triangular matrices: f.g. projective, H-separable, not QF",
       "n=2 field=f2", "M_n(k) over T_n(k)"},
      {"triangular_over_diagonal", "upper triangular matrices over the diagonal: split, projective, not Frobenius",
       "n=2 field=f2", "T_n(k) over D_n(k)"},
      {"z2z2_over_z2", "Z2 + Z2 over Z2: split, separable, Frobenius; two projections, one Frobenius homomorphism", "",
       "F2 x F2 over the diagonal copy of F2"},
      {"group_pair", "group algebras k[H] in k[G]: split and Frobenius; separable iff char does not divide the index",
       "G=C2 H=<elements> | Hgens=<generators> field=f3", "k[H] -> k[G]"},
      {"morita_bimodule", "a Morita bimodule is biseparable and Frobenius", "n=2 field=f2",
       "k^n as an (M_n(k), k)-bimodule"},
      {"trivial_ext_pair", "S + I in R + I is separable iff S in R is", "base=z2z2_over_z2 product=zero|regular",
       "trivial extension by I = R"},
      {"identity_ext", "R over itself has every property", "algebra=M2 field=f2", "identity map of an algebra"},
      {"field_extension", "finite field extensions are split, separable and Frobenius", "p=2 k=2", "F_p -> F_{p^k}"},
  };
  return entries;
}

CatalogObject build_catalog(const std::string& name, const CatalogParams& params) {
  Params p(name, params);
  return build_entry(name, p);
}

}  // namespace bisep
