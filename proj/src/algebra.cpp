#include "bisep/algebra.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace bisep {

struct Algebra::Impl {
  Field field;
  std::size_t dim = 0;
  Vec unit;
  std::vector<std::string> names;
  std::vector<std::vector<Term>> prod;  // index i*dim+j

  mutable std::once_flag lonce, ronce;
  mutable std::vector<Matrix> lcache, rcache;

  explicit Impl(Field f) : field(std::move(f)) {}
};

namespace {

// Dense e_i * e_j.
Vec dense_product(const Field& f, std::size_t n, const std::vector<Algebra::Term>& t) {
  Vec v = zero_vec(f, n);
  for (const auto& x : t) v[x.k] = f.add(v[x.k], x.c);
  return v;
}

std::string default_name(std::size_t i) { return "b" + std::to_string(i); }

}  // namespace

Algebra Algebra::make(const Field& f, std::size_t dim, const std::vector<StructureEntry>& entries, const Vec& unit,
                      std::vector<std::string> names) {
  if (dim == 0) throw Error(ErrorKind::DimensionMismatch, "algebra dimension must be positive");
  if (unit.size() != dim) throw Error(ErrorKind::DimensionMismatch, "unit length");
  if (!names.empty() && names.size() != dim) throw Error(ErrorKind::DimensionMismatch, "basis_names length");
  auto impl = std::make_shared<Impl>(f);
  impl->dim = dim;
  impl->unit = unit;
  if (names.empty())
    for (std::size_t i = 0; i < dim; ++i) names.push_back(default_name(i));
  impl->names = std::move(names);

  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Scalar> acc;
  for (const auto& e : entries) {
    if (e.i >= dim || e.j >= dim || e.k >= dim) throw Error(ErrorKind::DimensionMismatch, "structure index out of range");
    auto key = std::make_tuple(e.i, e.j, e.k);
    auto it = acc.find(key);
    if (it == acc.end())
      acc.emplace(key, e.c);
    else
      it->second = f.add(it->second, e.c);
  }
  impl->prod.assign(dim * dim, {});
  for (const auto& [key, c] : acc) {
    if (f.is_zero(c)) continue;
    const auto [i, j, k] = key;
    impl->prod[i * dim + j].push_back({k, c});
  }

  // Associativity: (e_i e_j) e_k = e_i (e_j e_k).
  const auto& P = impl->prod;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k) {
        Vec lhs = zero_vec(f, dim), rhs = zero_vec(f, dim);
        for (const auto& t : P[i * dim + j])
          for (const auto& u : P[t.k * dim + k]) lhs[u.k] = f.add(lhs[u.k], f.mul(t.c, u.c));
        for (const auto& t : P[j * dim + k])
          for (const auto& u : P[i * dim + t.k]) rhs[u.k] = f.add(rhs[u.k], f.mul(t.c, u.c));
        if (lhs != rhs) throw Error(ErrorKind::NotAssociative, "(e_i e_j) e_k != e_i (e_j e_k)", {i, j, k});
      }

  Algebra a(impl);
  for (std::size_t j = 0; j < dim; ++j) {
    const Vec ej = unit_vec(f, dim, j);
    if (a.mul(unit, ej) != ej || a.mul(ej, unit) != ej) throw Error(ErrorKind::BadUnit, "unit law fails", {j});
  }
  return a;
}

const Field& Algebra::field() const noexcept { return p_->field; }
std::size_t Algebra::dim() const noexcept { return p_->dim; }
const Vec& Algebra::unit() const noexcept { return p_->unit; }
const std::vector<std::string>& Algebra::basis_names() const noexcept { return p_->names; }

const std::vector<Algebra::Term>& Algebra::product(std::size_t i, std::size_t j) const {
  return p_->prod.at(i * p_->dim + j);
}

std::vector<StructureEntry> Algebra::structure() const {
  std::vector<StructureEntry> out;
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& t : product(i, j)) out.push_back({i, j, t.k, t.c});
  return out;
}

Vec Algebra::mul(const Vec& a, const Vec& b) const {
  const Field& f = field();
  const std::size_t n = dim();
  if (a.size() != n || b.size() != n) throw Error(ErrorKind::DimensionMismatch, "algebra element length");
  Vec out = zero_vec(f, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (f.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (f.is_zero(b[j])) continue;
      const Scalar ab = f.mul(a[i], b[j]);
      for (const auto& t : product(i, j)) out[t.k] = f.add(out[t.k], f.mul(ab, t.c));
    }
  }
  return out;
}

const Matrix& Algebra::left_mult(std::size_t i) const {
  std::call_once(p_->lonce, [this] {
    const std::size_t n = dim();
    std::vector<Matrix> ms;
    for (std::size_t a = 0; a < n; ++a) {
      Matrix m(field(), n, n);
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& t : product(a, j)) m(t.k, j) = t.c;
      ms.push_back(std::move(m));
    }
    p_->lcache = std::move(ms);
  });
  return p_->lcache.at(i);
}

const Matrix& Algebra::right_mult(std::size_t i) const {
  std::call_once(p_->ronce, [this] {
    const std::size_t n = dim();
    std::vector<Matrix> ms;
    for (std::size_t a = 0; a < n; ++a) {
      Matrix m(field(), n, n);
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& t : product(j, a)) m(t.k, j) = t.c;
      ms.push_back(std::move(m));
    }
    p_->rcache = std::move(ms);
  });
  return p_->rcache.at(i);
}

Matrix Algebra::left_mult_of(const Vec& a) const {
  Matrix m(field(), dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i)
    if (!field().is_zero(a[i])) m = m + left_mult(i).scaled(a[i]);
  return m;
}

Matrix Algebra::right_mult_of(const Vec& a) const {
  Matrix m(field(), dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i)
    if (!field().is_zero(a[i])) m = m + right_mult(i).scaled(a[i]);
  return m;
}

bool Algebra::is_commutative() const {
  const Field& f = field();
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i + 1; j < dim(); ++j)
      if (dense_product(f, dim(), product(i, j)) != dense_product(f, dim(), product(j, i))) return false;
  return true;
}

std::string Algebra::serialize_key() const {
  std::ostringstream os;
  os << field().name() << '|' << dim() << '|';
  for (const auto& e : structure()) os << e.i << ',' << e.j << ',' << e.k << ',' << field().to_string(e.c) << ';';
  os << '|';
  for (const auto& u : unit()) os << field().to_string(u) << ',';
  return os.str();
}

bool operator==(const Algebra& a, const Algebra& b) {
  if (a.p_ == b.p_) return true;
  if (a.field() != b.field() || a.dim() != b.dim() || a.unit() != b.unit()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (dense_product(a.field(), a.dim(), a.product(i, j)) != dense_product(b.field(), b.dim(), b.product(i, j)))
        return false;
  return true;
}

Ideal::Ideal(Algebra parent, Matrix basis) : parent_(std::move(parent)), basis_(std::move(basis)) {
  const Algebra& a = parent_;
  if (basis_.rows() != a.dim()) throw Error(ErrorKind::DimensionMismatch, "ideal basis length");
  RowSpace rs(a.field(), a.dim());
  for (std::size_t c = 0; c < basis_.cols(); ++c) rs.add_row(basis_.column(c));
  for (std::size_t c = 0; c < basis_.cols(); ++c) {
    const Vec x = basis_.column(c);
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (!rs.contains(a.left_mult(i).apply(x)) || !rs.contains(a.right_mult(i).apply(x)))
        throw Error(ErrorKind::NotAnIdeal, "subspace not closed under multiplication", {c, i});
    }
  }
}

// ---------------------------------------------------------------------------

Algebra field_algebra(const Field& f) { return Algebra::make(f, 1, {{0, 0, 0, f.one()}}, {f.one()}, {"1"}); }

Algebra matrix_algebra(const Field& f, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::BadParams, "matrix size must be positive");
  std::vector<StructureEntry> s;
  std::vector<std::string> names;
  Vec unit = zero_vec(f, n * n);
  for (std::size_t a = 0; a < n; ++a) {
    unit[a * n + a] = f.one();
    for (std::size_t b = 0; b < n; ++b) {
      names.push_back("e" + std::to_string(a + 1) + std::to_string(b + 1));
      for (std::size_t d = 0; d < n; ++d) s.push_back({a * n + b, b * n + d, a * n + d, f.one()});
    }
  }
  return Algebra::make(f, n * n, s, unit, names);
}

Algebra upper_triangular(const Field& f, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::BadParams, "matrix size must be positive");
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pos;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      pos[{a, b}] = idx.size();
      idx.push_back({a, b});
    }
  std::vector<StructureEntry> s;
  std::vector<std::string> names;
  Vec unit = zero_vec(f, idx.size());
  for (const auto& [a, b] : idx) {
    names.push_back("e" + std::to_string(a + 1) + std::to_string(b + 1));
    if (a == b) unit[pos[{a, b}]] = f.one();
    for (std::size_t d = b; d < n; ++d) s.push_back({pos[{a, b}], pos[{b, d}], pos[{a, d}], f.one()});
  }
  return Algebra::make(f, idx.size(), s, unit, names);
}

Algebra diagonal(const Field& f, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::BadParams, "matrix size must be positive");
  std::vector<StructureEntry> s;
  std::vector<std::string> names;
  for (std::size_t a = 0; a < n; ++a) {
    s.push_back({a, a, a, f.one()});
    names.push_back("e" + std::to_string(a + 1) + std::to_string(a + 1));
  }
  Vec unit(n, f.one());
  return Algebra::make(f, n, s, unit, names);
}

Algebra polynomial_quotient(const Field& f, const Vec& monic) {
  if (monic.size() < 2 || !f.is_one(monic.back())) throw Error(ErrorKind::BadParams, "need a monic polynomial of degree >= 1");
  const std::size_t n = monic.size() - 1;
  // x^m reduced, for m < 2n-1.
  std::vector<Vec> pw;
  for (std::size_t m = 0; m < 2 * n - 1; ++m) {
    if (m < n) {
      pw.push_back(unit_vec(f, n, m));
      continue;
    }
    // x * x^{m-1}
    const Vec& prev = pw[m - 1];
    Vec next = zero_vec(f, n);
    for (std::size_t i = 0; i + 1 < n; ++i) next[i + 1] = prev[i];
    const Scalar top = prev[n - 1];
    for (std::size_t i = 0; i < n; ++i) next[i] = f.sub(next[i], f.mul(top, monic[i]));
    pw.push_back(std::move(next));
  }
  std::vector<StructureEntry> s;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!f.is_zero(pw[i + j][k])) s.push_back({i, j, k, pw[i + j][k]});
  }
  return Algebra::make(f, n, s, unit_vec(f, n, 0), names);
}

Algebra direct_sum(const Algebra& a, const Algebra& b) {
  if (a.field() != b.field()) throw Error(ErrorKind::FieldMismatch, "direct_sum");
  const std::size_t n = a.dim();
  std::vector<StructureEntry> s;
  for (const auto& e : a.structure()) s.push_back(e);
  for (const auto& e : b.structure()) s.push_back({e.i + n, e.j + n, e.k + n, e.c});
  Vec unit = a.unit();
  unit.insert(unit.end(), b.unit().begin(), b.unit().end());
  std::vector<std::string> names;
  for (const auto& x : a.basis_names()) names.push_back("(" + x + ",0)");
  for (const auto& x : b.basis_names()) names.push_back("(0," + x + ")");
  return Algebra::make(a.field(), n + b.dim(), s, unit, names);
}

Algebra tensor_over_field(const Algebra& a, const Algebra& b) {
  if (a.field() != b.field()) throw Error(ErrorKind::FieldMismatch, "tensor_over_field");
  const Field& f = a.field();
  const std::size_t m = b.dim();
  std::vector<StructureEntry> s;
  for (const auto& x : a.structure())
    for (const auto& y : b.structure()) s.push_back({x.i * m + y.i, x.j * m + y.j, x.k * m + y.k, f.mul(x.c, y.c)});
  Vec unit = zero_vec(f, a.dim() * m);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < m; ++j) {
      unit[i * m + j] = f.mul(a.unit()[i], b.unit()[j]);
      names.push_back(a.basis_names()[i] + "*" + b.basis_names()[j]);
    }
  return Algebra::make(f, a.dim() * m, s, unit, names);
}

Algebra opposite(const Algebra& a) {
  std::vector<StructureEntry> s;
  for (const auto& e : a.structure()) s.push_back({e.j, e.i, e.k, e.c});
  return Algebra::make(a.field(), a.dim(), s, a.unit(), a.basis_names());
}

Algebra enveloping(const Algebra& s, const Algebra& r) { return tensor_over_field(s, opposite(r)); }

Algebra trivial_extension(const Algebra& r, const MultiplicativeBimodule& im) {
  const Field& f = r.field();
  const std::size_t n = r.dim(), d = im.dim;
  if (im.left.size() != n || im.right.size() != n) throw Error(ErrorKind::DimensionMismatch, "bimodule action count");
  for (std::size_t i = 0; i < n; ++i)
    if (im.left[i].rows() != d || im.left[i].cols() != d || im.right[i].rows() != d || im.right[i].cols() != d)
      throw Error(ErrorKind::DimensionMismatch, "bimodule action shape");
  std::vector<StructureEntry> s = r.structure();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        if (!f.is_zero(im.left[i](b, a))) s.push_back({i, n + a, n + b, im.left[i](b, a)});
        if (!f.is_zero(im.right[i](b, a))) s.push_back({n + a, i, n + b, im.right[i](b, a)});
      }
  for (const auto& e : im.product) {
    if (e.i >= d || e.j >= d || e.k >= d) throw Error(ErrorKind::DimensionMismatch, "ideal product index");
    s.push_back({n + e.i, n + e.j, n + e.k, e.c});
  }
  Vec unit = r.unit();
  unit.resize(n + d, f.zero());
  std::vector<std::string> names = r.basis_names();
  for (std::size_t a = 0; a < d; ++a) names.push_back("i" + std::to_string(a));
  return Algebra::make(f, n + d, s, unit, names);
}

Matrix subalgebra_span(const Algebra& a, const std::vector<Vec>& generators) {
  const Field& f = a.field();
  RowSpace rs(f, a.dim());
  rs.add_row(a.unit());
  for (const auto& g : generators) rs.add_row(g);
  std::size_t r = rs.rank();
  while (true) {
    const RowEchelon e = rs.echelon();
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
      for (std::size_t j = 0; j < e.pivots.size(); ++j) rs.add_row(a.mul(e.reduced.row(i), e.reduced.row(j)));
    const std::size_t r2 = rs.rank();
    if (r2 == r) return e.reduced.transpose();
    r = r2;
  }
}

Algebra algebra_on_subspace(const Algebra& a, const Matrix& basis) {
  const Field& f = a.field();
  Subspace sub(basis);
  const std::size_t m = basis.cols();
  std::vector<StructureEntry> s;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      auto c = sub.try_coords(a.mul(basis.column(i), basis.column(j)));
      if (!c) throw Error(ErrorKind::InvalidExtension, "subspace not closed under multiplication", {i, j});
      for (std::size_t k = 0; k < m; ++k)
        if (!f.is_zero((*c)[k])) s.push_back({i, j, k, (*c)[k]});
    }
  auto u = sub.try_coords(a.unit());
  if (!u) throw Error(ErrorKind::InvalidExtension, "subspace does not contain 1");
  return Algebra::make(f, m, s, *u);
}

Quotient quotient(const Ideal& id) {
  const Algebra& a = id.parent();
  const Field& f = a.field();
  const RowEchelon e = row_reduce(id.basis().transpose());
  const QuotientMap q = quotient_by(e, a.dim());
  const std::size_t m = q.kept.size();
  if (m == 0) throw Error(ErrorKind::NotAnIdeal, "quotient by the whole algebra");
  std::vector<StructureEntry> s;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Vec c = q.projection.apply(a.mul(q.section.column(i), q.section.column(j)));
      for (std::size_t k = 0; k < m; ++k)
        if (!f.is_zero(c[k])) s.push_back({i, j, k, c[k]});
    }
  std::vector<std::string> names;
  for (auto k : q.kept) names.push_back(a.basis_names()[k]);
  return {Algebra::make(f, m, s, q.projection.apply(a.unit()), names), q.projection};
}

Matrix centralizer(const Algebra& a, const Matrix& images) {
  RowSpace rs(a.field(), a.dim());
  for (std::size_t c = 0; c < images.cols(); ++c) {
    const Matrix d = a.left_mult_of(images.column(c)) - a.right_mult_of(images.column(c));
    for (std::size_t r = 0; r < d.rows(); ++r) rs.add_row(d.row(r));
  }
  return rs.nullspace();
}

Matrix center(const Algebra& a) { return centralizer(a, Matrix::identity(a.field(), a.dim())); }

Matrix product_span(const Algebra& a, const Matrix& x, const Matrix& y) {
  RowSpace rs(a.field(), a.dim());
  for (std::size_t i = 0; i < x.cols(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j) rs.add_row(a.mul(x.column(i), y.column(j)));
  return rs.echelon().reduced.transpose();
}

namespace {

// Largest two-sided ideal inside span(B).
Matrix largest_ideal_in(const Algebra& a, Matrix b) {
  const Field& f = a.field();
  while (b.cols() > 0) {
    const QuotientMap q = quotient_by(row_reduce(b.transpose()), a.dim());
    // x = B c is kept iff every e_i x and x e_i vanish modulo span(B).
    RowSpace rs(f, b.cols());
    for (std::size_t i = 0; i < a.dim(); ++i) {
      const Matrix l = q.projection * a.left_mult(i) * b;
      const Matrix r = q.projection * a.right_mult(i) * b;
      for (std::size_t k = 0; k < l.rows(); ++k) {
        rs.add_row(l.row(k));
        rs.add_row(r.row(k));
      }
    }
    const Matrix ker = rs.nullspace();
    if (ker.cols() == b.cols()) break;
    b = b * ker;
  }
  return b;
}

std::uint64_t mulmod(std::uint64_t x, std::uint64_t y, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % m);
}

using IntMat = std::vector<std::uint64_t>;

IntMat int_mul(const IntMat& x, const IntMat& y, std::size_t n, std::uint64_t m) {
  IntMat z(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint64_t a = x[i * n + k];
      if (!a) continue;
      for (std::size_t j = 0; j < n; ++j) z[i * n + j] = (z[i * n + j] + mulmod(a, y[k * n + j], m)) % m;
    }
  return z;
}

// g_i(a) = Tr(lift(L_a)^{p^i}) / p^i mod p.
std::uint64_t trace_power_functional(const Algebra& a, const Vec& x, std::uint64_t p, unsigned i) {
  const std::size_t n = a.dim();
  std::uint64_t pi = 1;
  for (unsigned t = 0; t < i; ++t) pi *= p;
  const std::uint64_t mod = pi * p;
  const Matrix l = a.left_mult_of(x);
  IntMat base(n * n), acc(n * n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    acc[r * n + r] = 1 % mod;
    for (std::size_t c = 0; c < n; ++c) base[r * n + c] = l(r, c).residue() % mod;
  }
  for (std::uint64_t e = pi; e; e >>= 1) {
    if (e & 1) acc = int_mul(acc, base, n, mod);
    if (e > 1) base = int_mul(base, base, n, mod);
  }
  std::uint64_t tr = 0;
  for (std::size_t r = 0; r < n; ++r) tr = (tr + acc[r * n + r]) % mod;
  if (tr % pi != 0) throw std::logic_error("trace power not divisible on the previous ideal");
  return (tr / pi) % p;
}

// Radical over F_p with p <= dim: the p-power trace refinement.
Matrix radical_small_char(const Algebra& a) {
  const Field& f = a.field();
  const std::uint64_t p = f.characteristic();
  const std::size_t n = a.dim();
  unsigned levels = 0;
  for (std::uint64_t q = p; q <= n; q *= p) ++levels;
  Matrix ideal = Matrix::identity(f, n);
  for (unsigned i = 0; i <= levels && ideal.cols() > 0; ++i) {
    // Rows: b_j; columns: basis of the current ideal. g_i is linear there.
    Matrix g(f, n, ideal.cols());
    for (std::size_t k = 0; k < ideal.cols(); ++k)
      for (std::size_t j = 0; j < n; ++j)
        g(j, k) = Scalar(trace_power_functional(a, a.mul(ideal.column(k), a.basis_vector(j)), p, i));
    const Matrix ker = nullspace(g);
    ideal = ideal * ker;
  }
  return ideal;
}

Matrix radical_trace_form(const Algebra& a) {
  const Field& f = a.field();
  const std::size_t n = a.dim();
  Vec traces(n);
  for (std::size_t k = 0; k < n; ++k) {
    Scalar t = f.zero();
    for (std::size_t d = 0; d < n; ++d) t = f.add(t, a.left_mult(k)(d, d));
    traces[k] = t;
  }
  Matrix gram(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Scalar t = f.zero();
      for (const auto& term : a.product(i, j)) t = f.add(t, f.mul(term.c, traces[term.k]));
      gram(i, j) = t;
    }
  return largest_ideal_in(a, nullspace(gram));
}

// The same algebra viewed over the prime field: basis w^j e_i at i*k+j.
Algebra restrict_to_prime(const Algebra& a) {
  const Field& f = a.field();
  const Field fp = Field::prime(f.characteristic());
  const unsigned k = f.degree();
  const std::size_t n = a.dim();
  std::vector<Scalar> w;  // w^j
  for (unsigned j = 0; j < 2 * k; ++j) {
    std::vector<std::uint64_t> c(k, 0);
    if (j < k) {
      c[j] = 1;
      w.push_back(f.from_coefficients(c));
    } else {
      w.push_back(f.mul(w[j - 1], w[1 % k]));
    }
  }
  std::vector<StructureEntry> s;
  for (std::size_t i1 = 0; i1 < n; ++i1)
    for (std::size_t i2 = 0; i2 < n; ++i2)
      for (const auto& t : a.product(i1, i2))
        for (unsigned j1 = 0; j1 < k; ++j1)
          for (unsigned j2 = 0; j2 < k; ++j2) {
            const auto c = f.coefficients(f.mul(w[j1 + j2], t.c));
            for (unsigned j = 0; j < k; ++j)
              if (c[j]) s.push_back({i1 * k + j1, i2 * k + j2, t.k * k + j, Scalar(c[j])});
          }
  Vec unit = zero_vec(fp, n * k);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = f.coefficients(a.unit()[i]);
    for (unsigned j = 0; j < k; ++j) unit[i * k + j] = Scalar(c[j]);
  }
  return Algebra::make(fp, n * k, s, unit);
}

}  // namespace

Matrix radical(const Algebra& a) {
  const Field& f = a.field();
  Matrix r(f);
  if (f.kind() == FieldKind::Extension) {
    const Algebra ap = restrict_to_prime(a);
    const Matrix rp = radical(ap);
    const unsigned k = f.degree();
    std::vector<Vec> cols;
    for (std::size_t c = 0; c < rp.cols(); ++c) {
      Vec v(a.dim());
      for (std::size_t i = 0; i < a.dim(); ++i) {
        std::vector<std::uint64_t> coef(k);
        for (unsigned j = 0; j < k; ++j) coef[j] = rp(i * k + j, c).residue();
        v[i] = f.from_coefficients(coef);
      }
      cols.push_back(std::move(v));
    }
    r = cols.empty() ? Matrix(f, a.dim(), 0) : column_basis(Matrix::from_columns(f, a.dim(), cols));
  } else if (f.kind() == FieldKind::Prime && f.characteristic() <= a.dim()) {
    r = radical_small_char(a);
  } else {
    r = radical_trace_form(a);
  }
  if (r.cols() == 0) return Matrix(f, a.dim(), 0);
  return row_reduce(r.transpose()).reduced.transpose();
}

bool is_semisimple(const Algebra& a) { return radical(a).cols() == 0; }

}  // namespace bisep
