#include "bisep/matrix.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace bisep {

namespace {

void require_same_field(const Field& a, const Field& b) {
  if (a != b) throw Error(ErrorKind::FieldMismatch, a.name() + " vs " + b.name());
}

}  // namespace

// ---------------------------------------------------------------------------
// Row space kernels. Incoming rows are reduced against a fully reduced
// basis; since every basis row vanishes at the other pivot columns, the
// entries of an incoming row at existing pivots never change while it is
// reduced, so one pass suffices.

struct RowSpace::Kernel {
  virtual ~Kernel() = default;
  virtual bool full() const = 0;
  virtual void add_dense(const Vec& v) = 0;
  virtual void add_sparse(const std::vector<std::pair<std::size_t, Scalar>>& e) = 0;
  virtual RowEchelon echelon() const = 0;
  virtual bool contains(const Vec& v) const = 0;
};

namespace {

std::vector<std::size_t> pivot_order(const std::vector<std::size_t>& piv) {
  std::vector<std::size_t> order(piv.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return piv[x] < piv[y]; });
  return order;
}

class Gf2Kernel final : public RowSpace::Kernel {
 public:
  Gf2Kernel(Field f, std::size_t n) : f_(std::move(f)), n_(n), words_((n + 63) / 64), v_(words_) {}

  bool full() const override { return basis_.size() == n_; }

  void add_dense(const Vec& v) override {
    if (full()) return;
    std::fill(v_.begin(), v_.end(), 0);
    for (std::size_t c = 0; c < n_; ++c)
      if (v[c].residue()) flip(c);
    insert();
  }

  void add_sparse(const std::vector<std::pair<std::size_t, Scalar>>& e) override {
    if (full()) return;
    std::fill(v_.begin(), v_.end(), 0);
    for (const auto& [c, x] : e)
      if (x.residue() & 1) flip(c);
    insert();
  }

  RowEchelon echelon() const override {
    auto order = pivot_order(piv_);
    RowEchelon out{Matrix(f_, basis_.size(), n_), {}};
    for (std::size_t i = 0; i < order.size(); ++i) {
      const auto& b = basis_[order[i]];
      for (std::size_t c = 0; c < n_; ++c)
        if ((b[c / 64] >> (c % 64)) & 1) out.reduced(i, c) = Scalar(std::uint64_t{1});
      out.pivots.push_back(piv_[order[i]]);
    }
    return out;
  }

  bool contains(const Vec& v) const override {
    std::vector<std::uint64_t> w(words_);
    for (std::size_t c = 0; c < n_; ++c)
      if (v[c].residue()) w[c / 64] ^= std::uint64_t{1} << (c % 64);
    reduce(w);
    return std::all_of(w.begin(), w.end(), [](std::uint64_t x) { return x == 0; });
  }

 private:
  void flip(std::size_t c) { v_[c / 64] ^= std::uint64_t{1} << (c % 64); }

  void reduce(std::vector<std::uint64_t>& w) const {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const std::size_t c = piv_[i];
      if ((w[c / 64] >> (c % 64)) & 1)
        for (std::size_t k = 0; k < words_; ++k) w[k] ^= basis_[i][k];
    }
  }

  void insert() {
    reduce(v_);
    std::size_t lead = n_;
    for (std::size_t w = 0; w < words_; ++w) {
      if (v_[w]) {
        lead = w * 64 + static_cast<std::size_t>(std::countr_zero(v_[w]));
        break;
      }
    }
    if (lead == n_) return;
    for (auto& b : basis_)
      if ((b[lead / 64] >> (lead % 64)) & 1)
        for (std::size_t w = 0; w < words_; ++w) b[w] ^= v_[w];
    basis_.push_back(v_);
    piv_.push_back(lead);
  }

  Field f_;
  std::size_t n_, words_;
  std::vector<std::vector<std::uint64_t>> basis_;
  std::vector<std::size_t> piv_;
  std::vector<std::uint64_t> v_;
};

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, e = p - 2;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

// Prime fields p < 2^31: residues fit so that products stay below 2^62.
class ModPKernel final : public RowSpace::Kernel {
 public:
  ModPKernel(Field f, std::size_t n) : f_(std::move(f)), p_(f_.characteristic()), n_(n), v_(n) {}

  bool full() const override { return basis_.size() == n_; }

  void add_dense(const Vec& v) override {
    if (full()) return;
    for (std::size_t c = 0; c < n_; ++c) v_[c] = v[c].residue();
    insert();
  }

  void add_sparse(const std::vector<std::pair<std::size_t, Scalar>>& e) override {
    if (full()) return;
    std::fill(v_.begin(), v_.end(), 0);
    for (const auto& [c, x] : e) v_[c] = (v_[c] + x.residue()) % p_;
    insert();
  }

  RowEchelon echelon() const override {
    auto order = pivot_order(piv_);
    RowEchelon out{Matrix(f_, basis_.size(), n_), {}};
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t c = 0; c < n_; ++c) out.reduced(i, c) = Scalar(basis_[order[i]][c]);
      out.pivots.push_back(piv_[order[i]]);
    }
    return out;
  }

  bool contains(const Vec& v) const override {
    std::vector<std::uint64_t> w(n_);
    for (std::size_t c = 0; c < n_; ++c) w[c] = v[c].residue();
    reduce(w);
    return std::all_of(w.begin(), w.end(), [](std::uint64_t x) { return x == 0; });
  }

 private:
  void reduce(std::vector<std::uint64_t>& w) const {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const std::uint64_t f = w[piv_[i]];
      if (!f) continue;
      const auto& b = basis_[i];
      for (std::size_t c = 0; c < n_; ++c)
        if (b[c]) w[c] = (w[c] + (p_ - b[c]) * f) % p_;
    }
  }

  void insert() {
    reduce(v_);
    std::size_t lead = n_;
    for (std::size_t c = 0; c < n_; ++c) {
      if (v_[c]) {
        lead = c;
        break;
      }
    }
    if (lead == n_) return;
    const std::uint64_t s = inv_mod(v_[lead], p_);
    for (std::size_t c = lead; c < n_; ++c) v_[c] = v_[c] * s % p_;
    for (auto& b : basis_) {
      const std::uint64_t f = b[lead];
      if (!f) continue;
      for (std::size_t c = 0; c < n_; ++c)
        if (v_[c]) b[c] = (b[c] + (p_ - v_[c]) * f) % p_;
    }
    basis_.push_back(v_);
    piv_.push_back(lead);
  }

  Field f_;
  std::uint64_t p_;
  std::size_t n_;
  std::vector<std::vector<std::uint64_t>> basis_;
  std::vector<std::size_t> piv_;
  std::vector<std::uint64_t> v_;
};

// Generic field arithmetic; used for F_{p^k}.
class GenericKernel final : public RowSpace::Kernel {
 public:
  GenericKernel(Field f, std::size_t n) : f_(std::move(f)), n_(n) {}

  bool full() const override { return basis_.size() == n_; }

  void add_dense(const Vec& v) override {
    if (!full()) insert(v);
  }

  void add_sparse(const std::vector<std::pair<std::size_t, Scalar>>& e) override {
    if (full()) return;
    Vec v = zero_vec(f_, n_);
    for (const auto& [c, x] : e) v[c] = f_.add(v[c], x);
    insert(std::move(v));
  }

  RowEchelon echelon() const override {
    auto order = pivot_order(piv_);
    RowEchelon out{Matrix(f_, basis_.size(), n_), {}};
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t c = 0; c < n_; ++c) out.reduced(i, c) = basis_[order[i]][c];
      out.pivots.push_back(piv_[order[i]]);
    }
    return out;
  }

  bool contains(const Vec& v) const override {
    Vec w = v;
    reduce(w);
    return is_zero(f_, w);
  }

 private:
  void reduce(Vec& v) const {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Scalar c = v[piv_[i]];
      if (!f_.is_zero(c)) axpy(f_, f_.neg(c), basis_[i], v);
    }
  }

  void insert(Vec v) {
    reduce(v);
    std::size_t lead = n_;
    for (std::size_t c = 0; c < n_; ++c) {
      if (!f_.is_zero(v[c])) {
        lead = c;
        break;
      }
    }
    if (lead == n_) return;
    v = scale(f_, f_.inv(v[lead]), v);
    for (auto& b : basis_) {
      const Scalar c = b[lead];
      if (!f_.is_zero(c)) axpy(f_, f_.neg(c), v, b);
    }
    basis_.push_back(std::move(v));
    piv_.push_back(lead);
  }

  Field f_;
  std::size_t n_;
  std::vector<Vec> basis_;
  std::vector<std::size_t> piv_;
};

RowEchelon reduce_rational(const Matrix& a);

// Over Q rows are collected and reduced fraction-free in one go.
class RationalKernel final : public RowSpace::Kernel {
 public:
  RationalKernel(Field f, std::size_t n) : f_(std::move(f)), n_(n) {}

  bool full() const override { return false; }
  void add_dense(const Vec& v) override { rows_.push_back(v); }
  void add_sparse(const std::vector<std::pair<std::size_t, Scalar>>& e) override {
    Vec v = zero_vec(f_, n_);
    for (const auto& [c, x] : e) v[c] = f_.add(v[c], x);
    rows_.push_back(std::move(v));
  }
  RowEchelon echelon() const override { return reduce_rational(Matrix::from_rows(f_, n_, rows_)); }
  bool contains(const Vec& v) const override {
    auto rows = rows_;
    const std::size_t before = reduce_rational(Matrix::from_rows(f_, n_, rows)).pivots.size();
    rows.push_back(v);
    return reduce_rational(Matrix::from_rows(f_, n_, rows)).pivots.size() == before;
  }

 private:
  Field f_;
  std::size_t n_;
  std::vector<Vec> rows_;
};

// Rows of a rational matrix scaled by the lcm of their denominators.
std::vector<mpz_class> integer_rows(const Matrix& a) {
  std::vector<mpz_class> w(a.rows() * a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < a.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(r, c).rational().get_den_mpz_t());
    for (std::size_t c = 0; c < a.cols(); ++c) {
      const mpq_class& q = a(r, c).rational();
      w[r * a.cols() + c] = q.get_num() * (l / q.get_den());
    }
  }
  return w;
}

void exact_div(mpz_class& x, const mpz_class& d) {
  if (!mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t())) throw std::logic_error("Bareiss step not exact");
  mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
}

// Fraction-free Gauss-Jordan: every update is (piv*a_ij - a_ic*a_rj)/prev,
// exact because all entries stay minors of the scaled input.
RowEchelon reduce_rational(const Matrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<mpz_class> w = integer_rows(a);
  auto at = [&](std::size_t r, std::size_t c) -> mpz_class& { return w[r * n + c]; };
  mpz_class prev = 1;
  std::size_t r = 0;
  std::vector<std::size_t> piv;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t sel = m;
    for (std::size_t i = r; i < m; ++i) {
      if (sgn(at(i, c)) != 0) {
        sel = i;
        break;
      }
    }
    if (sel == m) continue;
    if (sel != r) {
      for (std::size_t j = 0; j < n; ++j) std::swap(at(sel, j), at(r, j));
    }
    const mpz_class pv = at(r, c);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r) continue;
      const mpz_class aic = at(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        mpz_class& x = at(i, j);
        if (sgn(aic) == 0) {
          if (sgn(x) == 0) continue;
          x *= pv;
        } else {
          x = pv * x - aic * at(r, j);
        }
        exact_div(x, prev);
      }
    }
    prev = pv;
    piv.push_back(c);
    ++r;
  }
  RowEchelon out{Matrix(a.field(), r, n), piv};
  for (std::size_t i = 0; i < r; ++i) {
    const mpz_class d = at(i, piv[i]);
    for (std::size_t j = 0; j < n; ++j) {
      mpq_class q(at(i, j), d);
      q.canonicalize();
      out.reduced(i, j) = Scalar(std::move(q));
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : field_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

Matrix Matrix::from_columns(const Field& f, std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(f, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
  return m;
}

Matrix Matrix::from_rows(const Field& f, std::size_t cols, const std::vector<Vec>& rows) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorKind::DimensionMismatch, "row length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::column_vector(const Field& f, const Vec& v) { return from_columns(f, v.size(), {v}); }

Vec Matrix::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Vec Matrix::row(std::size_t r) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void Matrix::set_column(std::size_t c, const Vec& v) {
  if (v.size() != rows_) throw Error(ErrorKind::DimensionMismatch, "column length");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Vec Matrix::flatten() const { return data_; }

Matrix Matrix::unflatten(const Field& f, std::size_t rows, std::size_t cols, std::span<const Scalar> v) {
  if (v.size() != rows * cols) throw Error(ErrorKind::DimensionMismatch, "unflatten size");
  Matrix m(f, rows, cols);
  std::copy(v.begin(), v.end(), m.data_.begin());
  return m;
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "apply: vector length");
  Vec out(rows_, field_.zero());
  for (std::size_t r = 0; r < rows_; ++r) {
    Scalar acc = field_.zero();
    for (std::size_t c = 0; c < cols_; ++c) {
      const Scalar& x = (*this)(r, c);
      if (field_.is_zero(x) || field_.is_zero(v[c])) continue;
      acc = field_.add(acc, field_.mul(x, v[c]));
    }
    out[r] = std::move(acc);
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix m(*this);
  for (auto& x : m.data_) x = field_.mul(x, s);
  return m;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix m(field_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) m(i, c) = (*this)(idx[i], c);
  return m;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& idx) const {
  Matrix m(field_, rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t i = 0; i < idx.size(); ++i) m(r, i) = (*this)(r, idx[i]);
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [&](const Scalar& x) { return field_.is_zero(x); });
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      const Scalar& x = (*this)(r, c);
      if (r == c ? !field_.is_one(x) : !field_.is_zero(x)) return false;
    }
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a.field_, b.field_);
  if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shapes");
  const Field& f = a.field_;
  Matrix out(f, a.rows_, b.cols_);
  if (f.kind() == FieldKind::Prime) {
    const std::uint64_t p = f.characteristic();
    std::vector<std::uint64_t> acc(b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const std::uint64_t x = a(r, k).residue();
        if (!x) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) {
          const std::uint64_t y = b(k, c).residue();
          if (y) acc[c] = (acc[c] + x * y) % p;
        }
      }
      for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) = Scalar(acc[c]);
    }
    return out;
  }
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(r, k);
      if (f.is_zero(x)) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) {
        const Scalar& y = b(k, c);
        if (f.is_zero(y)) continue;
        out(r, c) = f.add(out(r, c), f.mul(x, y));
      }
    }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_field(a.field_, b.field_);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix sum shapes");
  Matrix out(a);
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.field_.add(a.data_[i], b.data_[i]);
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_field(a.field_, b.field_);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix difference shapes");
  Matrix out(a);
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.field_.sub(a.data_[i], b.data_[i]);
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  const Field& f = a.field();
  Matrix out(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar& x = a(i, j);
      if (f.is_zero(x)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) {
          const Scalar& y = b(k, l);
          if (!f.is_zero(y)) out(i * b.rows() + k, j * b.cols() + l) = f.mul(x, y);
        }
    }
  return out;
}

Matrix hstack(const std::vector<Matrix>& parts) {
  if (parts.empty()) throw Error(ErrorKind::DimensionMismatch, "hstack of nothing");
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != parts[0].rows()) throw Error(ErrorKind::DimensionMismatch, "hstack rows");
    cols += p.cols();
  }
  Matrix out(parts[0].field(), parts[0].rows(), cols);
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t r = 0; r < p.rows(); ++r)
      for (std::size_t c = 0; c < p.cols(); ++c) out(r, off + c) = p(r, c);
    off += p.cols();
  }
  return out;
}

Matrix vstack(const std::vector<Matrix>& parts) {
  if (parts.empty()) throw Error(ErrorKind::DimensionMismatch, "vstack of nothing");
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != parts[0].cols()) throw Error(ErrorKind::DimensionMismatch, "vstack cols");
    rows += p.rows();
  }
  Matrix out(parts[0].field(), rows, parts[0].cols());
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t r = 0; r < p.rows(); ++r)
      for (std::size_t c = 0; c < p.cols(); ++c) out(off + r, c) = p(r, c);
    off += p.rows();
  }
  return out;
}

Vec zero_vec(const Field& f, std::size_t n) { return Vec(n, f.zero()); }

Vec unit_vec(const Field& f, std::size_t n, std::size_t i) {
  Vec v(n, f.zero());
  v.at(i) = f.one();
  return v;
}

Vec add(const Field& f, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector sum");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
  return out;
}

Vec sub(const Field& f, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector difference");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.sub(a[i], b[i]);
  return out;
}

Vec scale(const Field& f, const Scalar& s, const Vec& a) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.mul(s, a[i]);
  return out;
}

void axpy(const Field& f, const Scalar& s, const Vec& x, Vec& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "axpy");
  if (f.is_zero(s)) return;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!f.is_zero(x[i])) y[i] = f.add(y[i], f.mul(s, x[i]));
  }
}

bool is_zero(const Field& f, const Vec& a) {
  return std::all_of(a.begin(), a.end(), [&](const Scalar& x) { return f.is_zero(x); });
}

Vec linear_combination(const Field& f, const std::vector<Vec>& vs, const Vec& coeffs) {
  if (vs.size() != coeffs.size()) throw Error(ErrorKind::DimensionMismatch, "linear combination");
  if (vs.empty()) return {};
  Vec out = zero_vec(f, vs[0].size());
  for (std::size_t i = 0; i < vs.size(); ++i) axpy(f, coeffs[i], vs[i], out);
  return out;
}

RowSpace::RowSpace(Field f, std::size_t cols) : field_(std::move(f)), cols_(cols) {
  switch (field_.kind()) {
    case FieldKind::Rationals: k_ = std::make_unique<RationalKernel>(field_, cols); break;
    case FieldKind::Prime:
      if (field_.characteristic() == 2)
        k_ = std::make_unique<Gf2Kernel>(field_, cols);
      else
        k_ = std::make_unique<ModPKernel>(field_, cols);
      break;
    case FieldKind::Extension: k_ = std::make_unique<GenericKernel>(field_, cols); break;
  }
}

RowSpace::~RowSpace() = default;
RowSpace::RowSpace(RowSpace&&) noexcept = default;
RowSpace& RowSpace::operator=(RowSpace&&) noexcept = default;

bool RowSpace::full() const { return k_->full(); }

void RowSpace::add_row(const Vec& v) {
  if (v.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "row length");
  k_->add_dense(v);
}

void RowSpace::add_sparse_row(const std::vector<std::pair<std::size_t, Scalar>>& entries) {
  for (const auto& e : entries)
    if (e.first >= cols_) throw Error(ErrorKind::DimensionMismatch, "sparse row column");
  k_->add_sparse(entries);
}

RowEchelon RowSpace::echelon() const { return k_->echelon(); }

bool RowSpace::contains(const Vec& v) const {
  if (v.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "row length");
  return k_->contains(v);
}

RowEchelon row_reduce(const Matrix& a) {
  if (a.field().kind() == FieldKind::Rationals) return reduce_rational(a);
  RowSpace rs(a.field(), a.cols());
  for (std::size_t r = 0; r < a.rows() && !rs.full(); ++r) rs.add_row(a.row(r));
  return rs.echelon();
}

std::size_t rank(const Matrix& a) { return row_reduce(a).pivots.size(); }

namespace {
Matrix nullspace_from(const RowEchelon& e, std::size_t n) {
  const Field& f = e.reduced.field();
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivots)
    if (c < n) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec v = zero_vec(f, n);
    v[free] = f.one();
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
      if (e.pivots[i] < n) v[e.pivots[i]] = f.neg(e.reduced(i, free));
    }
    basis.push_back(std::move(v));
  }
  return Matrix::from_columns(f, n, basis);
}
}  // namespace

Matrix nullspace(const Matrix& a) { return nullspace_from(row_reduce(a), a.cols()); }

Matrix RowSpace::nullspace() const { return nullspace_from(echelon(), cols_); }

std::optional<LinearSolution> solve_linear(const Matrix& a, const Vec& b) {
  if (b.size() != a.rows()) throw Error(ErrorKind::DimensionMismatch, "solve_linear: rhs length");
  const Field& f = a.field();
  const std::size_t n = a.cols();
  Matrix aug(f, a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  RowEchelon e = row_reduce(aug);
  if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;
  Vec x = zero_vec(f, n);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, n);
  return LinearSolution{std::move(x), nullspace_from(e, n)};
}

Scalar determinant(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  const Field& f = a.field();
  const std::size_t n = a.rows();
  if (n == 0) return f.one();
  if (f.kind() == FieldKind::Rationals) {
    std::vector<mpz_class> w = integer_rows(a);
    mpz_class denom = 1;
    for (std::size_t r = 0; r < n; ++r) {
      mpz_class l = 1;
      for (std::size_t c = 0; c < n; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(r, c).rational().get_den_mpz_t());
      denom *= l;
    }
    auto at = [&](std::size_t r, std::size_t c) -> mpz_class& { return w[r * n + c]; };
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t sel = n;
      for (std::size_t i = k; i < n; ++i)
        if (sgn(at(i, k)) != 0) {
          sel = i;
          break;
        }
      if (sel == n) return f.zero();
      if (sel != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(at(sel, j), at(k, j));
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
          mpz_class x = at(k, k) * at(i, j) - at(i, k) * at(k, j);
          exact_div(x, prev);
          at(i, j) = x;
        }
        at(i, k) = 0;
      }
      prev = at(k, k);
    }
    mpq_class d(prev * sign, denom);
    d.canonicalize();
    return Scalar(std::move(d));
  }
  // Plain elimination over finite fields.
  Matrix w(a);
  Scalar det = f.one();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t sel = n;
    for (std::size_t i = k; i < n; ++i)
      if (!f.is_zero(w(i, k))) {
        sel = i;
        break;
      }
    if (sel == n) return f.zero();
    if (sel != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(w(sel, j), w(k, j));
      det = f.neg(det);
    }
    det = f.mul(det, w(k, k));
    const Scalar pinv = f.inv(w(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (f.is_zero(w(i, k))) continue;
      const Scalar m = f.mul(w(i, k), pinv);
      for (std::size_t j = k; j < n; ++j) w(i, j) = f.sub(w(i, j), f.mul(m, w(k, j)));
    }
  }
  return det;
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = a.rows();
  const Field& f = a.field();
  Matrix aug = hstack({a, Matrix::identity(f, n)});
  RowEchelon e = row_reduce(aug);
  if (e.pivots.size() != n || (n > 0 && e.pivots.back() != n - 1)) return std::nullopt;
  Matrix inv(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

QuotientMap quotient_by(const RowEchelon& relations, std::size_t n) {
  const Field& f = relations.reduced.field();
  std::vector<bool> is_pivot(n, false);
  for (auto c : relations.pivots) is_pivot[c] = true;
  QuotientMap q{Matrix(f), Matrix(f), {}};
  std::vector<std::size_t> slot(n, 0);
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) {
      slot[c] = q.kept.size();
      q.kept.push_back(c);
    }
  q.projection = Matrix(f, q.kept.size(), n);
  q.section = Matrix(f, n, q.kept.size());
  for (std::size_t j = 0; j < q.kept.size(); ++j) {
    q.projection(j, q.kept[j]) = f.one();
    q.section(q.kept[j], j) = f.one();
  }
  for (std::size_t i = 0; i < relations.pivots.size(); ++i) {
    const std::size_t pc = relations.pivots[i];
    for (std::size_t j = 0; j < q.kept.size(); ++j) q.projection(j, pc) = f.neg(relations.reduced(i, q.kept[j]));
  }
  return q;
}

Matrix column_basis(const Matrix& a) {
  RowEchelon e = row_reduce(a.transpose());
  return e.reduced.transpose();
}

Subspace::Subspace(Matrix basis) : basis_(std::move(basis)), block_inverse_(basis_.field()) {
  RowEchelon e = row_reduce(basis_.transpose());
  if (e.pivots.size() != basis_.cols()) throw Error(ErrorKind::DimensionMismatch, "subspace basis is dependent");
  rows_ = e.pivots;
  auto inv = inverse(basis_.select_rows(rows_));
  block_inverse_ = std::move(*inv);
}

std::optional<Vec> Subspace::try_coords(const Vec& v) const {
  if (v.size() != basis_.rows()) throw Error(ErrorKind::DimensionMismatch, "subspace coords: length");
  Vec sel(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) sel[i] = v[rows_[i]];
  Vec c = block_inverse_.apply(sel);
  if (basis_.apply(c) != v) return std::nullopt;
  return c;
}

Vec Subspace::coords(const Vec& v) const {
  auto c = try_coords(v);
  if (!c) throw Error(ErrorKind::DimensionMismatch, "vector outside subspace");
  return *c;
}

}  // namespace bisep
