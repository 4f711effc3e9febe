#include "bisep/module.hpp"

namespace bisep {

Extension::Extension(Algebra s, Algebra r, Matrix iota) : s_(std::move(s)), r_(std::move(r)), iota_(std::move(iota)) {
  if (s_.field() != r_.field()) throw Error(ErrorKind::FieldMismatch, "extension algebras over different fields");
  if (iota_.rows() != r_.dim() || iota_.cols() != s_.dim())
    throw Error(ErrorKind::InvalidExtension, "iota must be dim R x dim S");
  if (iota_.apply(s_.unit()) != r_.unit()) throw Error(ErrorKind::InvalidExtension, "iota(1) != 1");
  for (std::size_t i = 0; i < s_.dim(); ++i)
    for (std::size_t j = 0; j < s_.dim(); ++j) {
      const Vec lhs = iota_.apply(s_.mul(s_.basis_vector(i), s_.basis_vector(j)));
      const Vec rhs = r_.mul(iota_.column(i), iota_.column(j));
      if (lhs != rhs) throw Error(ErrorKind::InvalidExtension, "iota is not multiplicative", {i, j});
    }
}

bool Extension::proper() const { return rank(iota_) == s_.dim(); }

bool Extension::is_identity_like() const { return s_.dim() == r_.dim() && proper(); }

Extension identity_extension(const Algebra& a) { return Extension(a, a, Matrix::identity(a.field(), a.dim())); }

Extension subalgebra_extension(const Algebra& r, const Matrix& basis) {
  return Extension(algebra_on_subspace(r, basis), r, basis);
}

// ---------------------------------------------------------------------------

Bimodule::Bimodule(Algebra t, Algebra r, std::size_t dim, std::vector<Matrix> left, std::vector<Matrix> right)
    : t_(std::move(t)), r_(std::move(r)), dim_(dim), left_(std::move(left)), right_(std::move(right)) {
  if (t_.field() != r_.field()) throw Error(ErrorKind::FieldMismatch, "bimodule algebras over different fields");
  if (left_.size() != t_.dim() || right_.size() != r_.dim())
    throw Error(ErrorKind::InvalidBimodule, "one action matrix per basis element required");
  for (const auto* side : {&left_, &right_})
    for (const auto& m : *side)
      if (m.rows() != dim_ || m.cols() != dim_ || m.field() != field())
        throw Error(ErrorKind::InvalidBimodule, "action matrix shape");
  if (!left_of(t_.unit()).is_identity()) throw Error(ErrorKind::InvalidBimodule, "1_T does not act as identity");
  if (!right_of(r_.unit()).is_identity()) throw Error(ErrorKind::InvalidBimodule, "1_R does not act as identity");
  for (std::size_t i = 0; i < t_.dim(); ++i)
    for (std::size_t j = 0; j < t_.dim(); ++j)
      if (left_[i] * left_[j] != left_of(t_.mul(t_.basis_vector(i), t_.basis_vector(j))))
        throw Error(ErrorKind::InvalidBimodule, "left action is not multiplicative", {i, j});
  for (std::size_t i = 0; i < r_.dim(); ++i)
    for (std::size_t j = 0; j < r_.dim(); ++j)
      if (right_[j] * right_[i] != right_of(r_.mul(r_.basis_vector(i), r_.basis_vector(j))))
        throw Error(ErrorKind::InvalidBimodule, "right action is not multiplicative", {i, j});
  for (std::size_t i = 0; i < t_.dim(); ++i)
    for (std::size_t j = 0; j < r_.dim(); ++j)
      if (left_[i] * right_[j] != right_[j] * left_[i])
        throw Error(ErrorKind::InvalidBimodule, "actions do not commute", {i, j});
}

namespace {
Matrix combine(const Field& f, std::size_t n, const std::vector<Matrix>& ms, const Vec& c) {
  if (c.size() != ms.size()) throw Error(ErrorKind::DimensionMismatch, "coefficient count");
  Matrix out(f, n, n);
  for (std::size_t i = 0; i < ms.size(); ++i)
    if (!f.is_zero(c[i])) out = out + ms[i].scaled(c[i]);
  return out;
}
}  // namespace

Matrix Bimodule::left_of(const Vec& t) const { return combine(field(), dim_, left_, t); }
Matrix Bimodule::right_of(const Vec& r) const { return combine(field(), dim_, right_, r); }

Bimodule as_right_module(const Bimodule& m) {
  return Bimodule(field_algebra(m.field()), m.R(), m.dim(), {Matrix::identity(m.field(), m.dim())}, m.right());
}

Bimodule as_left_module(const Bimodule& m) {
  return Bimodule(m.T(), field_algebra(m.field()), m.dim(), m.left(), {Matrix::identity(m.field(), m.dim())});
}

namespace {
std::vector<Matrix> left_mults(const Algebra& a) {
  std::vector<Matrix> v;
  for (std::size_t i = 0; i < a.dim(); ++i) v.push_back(a.left_mult(i));
  return v;
}
std::vector<Matrix> right_mults(const Algebra& a) {
  std::vector<Matrix> v;
  for (std::size_t i = 0; i < a.dim(); ++i) v.push_back(a.right_mult(i));
  return v;
}
}  // namespace

Bimodule regular_bimodule(const Algebra& a) { return Bimodule(a, a, a.dim(), left_mults(a), right_mults(a)); }

Bimodule right_regular(const Algebra& a) {
  return Bimodule(field_algebra(a.field()), a, a.dim(), {Matrix::identity(a.field(), a.dim())}, right_mults(a));
}

Bimodule left_regular(const Algebra& a) {
  return Bimodule(a, field_algebra(a.field()), a.dim(), left_mults(a), {Matrix::identity(a.field(), a.dim())});
}

Bimodule natural_bimodule(const Extension& ext, Pattern p) {
  const Algebra& R = ext.R();
  const Algebra& S = ext.S();
  std::vector<Matrix> ls, rs;
  for (std::size_t j = 0; j < S.dim(); ++j) {
    ls.push_back(R.left_mult_of(ext.image_of_basis(j)));
    rs.push_back(R.right_mult_of(ext.image_of_basis(j)));
  }
  switch (p) {
    case Pattern::R_as_SRS: return Bimodule(S, S, R.dim(), ls, rs);
    case Pattern::R_as_RRS: return Bimodule(R, S, R.dim(), left_mults(R), rs);
    case Pattern::R_as_SRR: return Bimodule(S, R, R.dim(), ls, right_mults(R));
    case Pattern::R_as_RRR: return regular_bimodule(R);
    case Pattern::S_as_SSS: return regular_bimodule(S);
  }
  throw Error(ErrorKind::BadParams, "unknown pattern");
}

std::string to_string(Pattern p) {
  switch (p) {
    case Pattern::R_as_SRS: return "R_as_SRS";
    case Pattern::R_as_RRS: return "R_as_RRS";
    case Pattern::R_as_SRR: return "R_as_SRR";
    case Pattern::R_as_RRR: return "R_as_RRR";
    case Pattern::S_as_SSS: return "S_as_SSS";
  }
  return "?";
}

// ---------------------------------------------------------------------------

Matrix HomSpace::combination(const Field& f, const Vec& c) const {
  if (c.size() != basis.size()) throw Error(ErrorKind::DimensionMismatch, "hom coefficient count");
  if (basis.empty()) throw Error(ErrorKind::DimensionMismatch, "empty hom space");
  Matrix out(f, basis[0].rows(), basis[0].cols());
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!f.is_zero(c[i])) out = out + basis[i].scaled(c[i]);
  return out;
}

namespace {

void require_same_algebras(const Bimodule& m, const Bimodule& n) {
  if (!(m.T() == n.T()) || !(m.R() == n.R()))
    throw Error(ErrorKind::AlgebraMismatch, "modules over different algebras");
}

// Rows of F A - B F = 0 for F (dn x dm), A on M, B on N.
void add_intertwining_rows(RowSpace& rs, const Field& f, const Matrix& a, const Matrix& b) {
  const std::size_t dm = a.rows(), dn = b.rows();
  std::vector<std::pair<std::size_t, Scalar>> row;
  for (std::size_t r = 0; r < dn; ++r)
    for (std::size_t c = 0; c < dm; ++c) {
      row.clear();
      for (std::size_t k = 0; k < dm; ++k)
        if (!f.is_zero(a(k, c))) row.push_back({r * dm + k, a(k, c)});
      for (std::size_t k = 0; k < dn; ++k)
        if (!f.is_zero(b(r, k))) row.push_back({k * dm + c, f.neg(b(r, k))});
      if (!row.empty()) rs.add_sparse_row(row);
    }
}

}  // namespace

HomSpace hom_space(const Bimodule& m, const Bimodule& n) {
  require_same_algebras(m, n);
  const Field& f = m.field();
  const std::size_t dm = m.dim(), dn = n.dim();
  HomSpace h;
  if (dm == 0 || dn == 0) return h;
  RowSpace rs(f, dm * dn);
  for (std::size_t i = 0; i < m.left().size() && !rs.full(); ++i) {
    if (m.left()[i].is_identity() && n.left()[i].is_identity()) continue;
    add_intertwining_rows(rs, f, m.left()[i], n.left()[i]);
  }
  for (std::size_t i = 0; i < m.right().size() && !rs.full(); ++i) {
    if (m.right()[i].is_identity() && n.right()[i].is_identity()) continue;
    add_intertwining_rows(rs, f, m.right()[i], n.right()[i]);
  }
  const Matrix ker = rs.nullspace();
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    const Vec v = ker.column(c);
    h.basis.push_back(Matrix::unflatten(f, dn, dm, v));
  }
  return h;
}

bool is_homomorphism(const Bimodule& m, const Bimodule& n, const Matrix& f) {
  if (f.rows() != n.dim() || f.cols() != m.dim()) return false;
  for (std::size_t i = 0; i < m.left().size(); ++i)
    if (f * m.left()[i] != n.left()[i] * f) return false;
  for (std::size_t i = 0; i < m.right().size(); ++i)
    if (f * m.right()[i] != n.right()[i] * f) return false;
  return true;
}

namespace {

// Induced action on the quotient of an operator acting on one tensor factor.
// `left_factor` selects A (x) I versus I (x) B.
Matrix induced(const QuotientMap& q, const Matrix& op, std::size_t dm, std::size_t dn,
               bool left_factor) {
  const Field& f = op.field();
  Matrix out(f, q.kept.size(), q.kept.size());
  for (std::size_t j = 0; j < q.kept.size(); ++j) {
    const std::size_t i = q.kept[j] / dn, k = q.kept[j] % dn;
    Vec acc = zero_vec(f, q.kept.size());
    if (left_factor) {
      for (std::size_t i2 = 0; i2 < dm; ++i2)
        if (!f.is_zero(op(i2, i))) axpy(f, op(i2, i), q.projection.column(i2 * dn + k), acc);
    } else {
      for (std::size_t k2 = 0; k2 < dn; ++k2)
        if (!f.is_zero(op(k2, k))) axpy(f, op(k2, k), q.projection.column(i * dn + k2), acc);
    }
    out.set_column(j, acc);
  }
  return out;
}

}  // namespace

TensorProduct tensor_over(const Bimodule& m, const Bimodule& n) {
  if (!(m.R() == n.T())) throw Error(ErrorKind::AlgebraMismatch, "tensor: right algebra of M differs from left algebra of N");
  const Field& f = m.field();
  const std::size_t dm = m.dim(), dn = n.dim();
  RowSpace rs(f, dm * dn);
  std::vector<std::pair<std::size_t, Scalar>> row;
  for (std::size_t s = 0; s < m.R().dim(); ++s) {
    const Matrix& ms = m.right()[s];
    const Matrix& ns = n.left()[s];
    if (ms.is_identity() && ns.is_identity()) continue;
    for (std::size_t i = 0; i < dm; ++i)
      for (std::size_t k = 0; k < dn; ++k) {
        row.clear();
        for (std::size_t i2 = 0; i2 < dm; ++i2)
          if (!f.is_zero(ms(i2, i))) row.push_back({i2 * dn + k, ms(i2, i)});
        for (std::size_t k2 = 0; k2 < dn; ++k2)
          if (!f.is_zero(ns(k2, k))) row.push_back({i * dn + k2, f.neg(ns(k2, k))});
        if (!row.empty()) rs.add_sparse_row(row);
      }
  }
  const RowEchelon e = rs.echelon();
  const QuotientMap q = quotient_by(e, dm * dn);
  std::vector<Matrix> left, right;
  for (const auto& a : m.left()) left.push_back(induced(q, a, dm, dn, true));
  for (const auto& b : n.right()) right.push_back(induced(q, b, dm, dn, false));
  return TensorProduct{Bimodule(m.T(), n.R(), q.kept.size(), std::move(left), std::move(right)), q.projection,
                       q.section, e.pivots.size()};
}

// ---------------------------------------------------------------------------

Matrix Dual::ambient(const Vec& coords) const {
  return Matrix::unflatten(module.field(), rows, cols, space.element(coords));
}

Vec Dual::coords_of(const Matrix& map) const { return space.coords(map.flatten()); }

namespace {

Subspace flattened_span(const Field& f, const HomSpace& h, std::size_t rows, std::size_t cols) {
  std::vector<Vec> vs;
  for (const auto& b : h.basis) vs.push_back(b.flatten());
  return Subspace(Matrix::from_columns(f, rows * cols, vs));
}

template <class Op>
std::vector<Matrix> induced_on_dual(const Field& f, const Subspace& sp, std::size_t rows, std::size_t cols,
                                    std::size_t count, Op op) {
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < count; ++i) {
    Matrix a(f, sp.dim(), sp.dim());
    for (std::size_t b = 0; b < sp.dim(); ++b) {
      const Matrix fb = Matrix::unflatten(f, rows, cols, sp.basis().column(b));
      a.set_column(b, sp.coords(op(i, fb).flatten()));
    }
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace

Dual dual_right(const Bimodule& m) {
  const Field& f = m.field();
  const Algebra& R = m.R();
  const HomSpace h = hom_space(as_right_module(m), right_regular(R));
  Subspace sp = flattened_span(f, h, R.dim(), m.dim());
  auto left = induced_on_dual(f, sp, R.dim(), m.dim(), R.dim(),
                              [&](std::size_t i, const Matrix& F) { return R.left_mult(i) * F; });
  auto right = induced_on_dual(f, sp, R.dim(), m.dim(), m.T().dim(),
                               [&](std::size_t j, const Matrix& F) { return F * m.left()[j]; });
  return Dual{Bimodule(R, m.T(), sp.dim(), std::move(left), std::move(right)), std::move(sp), R.dim(), m.dim()};
}

Dual dual_left(const Bimodule& m) {
  const Field& f = m.field();
  const Algebra& T = m.T();
  const HomSpace h = hom_space(as_left_module(m), left_regular(T));
  Subspace sp = flattened_span(f, h, T.dim(), m.dim());
  auto left = induced_on_dual(f, sp, T.dim(), m.dim(), m.R().dim(),
                              [&](std::size_t i, const Matrix& F) { return F * m.right()[i]; });
  auto right = induced_on_dual(f, sp, T.dim(), m.dim(), T.dim(),
                               [&](std::size_t j, const Matrix& F) { return T.right_mult(j) * F; });
  return Dual{Bimodule(m.R(), T, sp.dim(), std::move(left), std::move(right)), std::move(sp), T.dim(), m.dim()};
}

Matrix double_dual_map(const Bimodule& m) {
  const Field& f = m.field();
  const Dual d1 = dual_right(m);
  const Dual d2 = dual_left(d1.module);
  Matrix out(f, d2.module.dim(), m.dim());
  for (std::size_t j = 0; j < m.dim(); ++j) {
    Matrix ev(f, d1.rows, d1.module.dim());
    for (std::size_t b = 0; b < d1.module.dim(); ++b) ev.set_column(b, d1.ambient(unit_vec(f, d1.module.dim(), b)).column(j));
    out.set_column(j, d2.coords_of(ev));
  }
  return out;
}

Matrix casimir_subspace(const Bimodule& m) {
  if (!(m.T() == m.R())) throw Error(ErrorKind::AlgebraMismatch, "Casimir elements need the same algebra on both sides");
  RowSpace rs(m.field(), m.dim());
  for (std::size_t i = 0; i < m.T().dim(); ++i) {
    const Matrix d = m.left()[i] - m.right()[i];
    for (std::size_t r = 0; r < d.rows(); ++r) rs.add_row(d.row(r));
  }
  return rs.nullspace();
}

// ---------------------------------------------------------------------------

AddResult in_add(const Bimodule& m, const Bimodule& n) {
  require_same_algebras(m, n);
  const Field& f = m.field();
  const std::size_t dm = m.dim();
  AddResult res;
  if (dm == 0) {
    res.member = true;
    res.witness = AddWitness{};
    return res;
  }
  const HomSpace h1 = hom_space(m, n);
  const HomSpace h2 = hom_space(n, m);
  if (h1.dim() == 0 || h2.dim() == 0) return res;
  std::vector<Vec> cols;
  for (const auto& g : h2.basis)
    for (const auto& fa : h1.basis) cols.push_back((g * fa).flatten());
  // Column index b*|h1| + a holds g_b f_a.
  const Matrix a = Matrix::from_columns(f, dm * dm, cols);
  res.trace_dim = rank(a);
  const auto sol = solve_linear(a, Matrix::identity(f, dm).flatten());
  if (!sol) return res;
  AddWitness w;
  for (std::size_t ai = 0; ai < h1.dim(); ++ai) {
    Vec c(h2.dim());
    for (std::size_t b = 0; b < h2.dim(); ++b) c[b] = sol->particular[b * h1.dim() + ai];
    if (is_zero(f, c)) continue;
    w.f.push_back(h1.basis[ai]);
    w.g.push_back(h2.combination(f, c));
  }
  res.member = true;
  res.witness = std::move(w);
  return res;
}

bool verify_add_witness(const Bimodule& m, const Bimodule& n, const AddWitness& w) {
  const Field& f = m.field();
  if (w.f.size() != w.g.size()) return false;
  Matrix sum(f, m.dim(), m.dim());
  for (std::size_t i = 0; i < w.f.size(); ++i) {
    if (!is_homomorphism(m, n, w.f[i]) || !is_homomorphism(n, m, w.g[i])) return false;
    sum = sum + w.g[i] * w.f[i];
  }
  return sum.is_identity();
}

Bimodule linear_dual_right(const Algebra& a) {
  std::vector<Matrix> right;
  for (std::size_t i = 0; i < a.dim(); ++i) right.push_back(a.left_mult(i).transpose());
  return Bimodule(field_algebra(a.field()), a, a.dim(), {Matrix::identity(a.field(), a.dim())}, std::move(right));
}

bool is_qf_ring(const Algebra& a) { return in_add(right_regular(a), linear_dual_right(a)).member; }

}  // namespace bisep
