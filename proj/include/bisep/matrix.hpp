#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <span>
#include <vector>

#include "bisep/field.hpp"

namespace bisep {

// Dense row-major matrix over an exact field.
class Matrix {
 public:
  explicit Matrix(Field f, std::size_t rows = 0, std::size_t cols = 0);

  static Matrix identity(const Field& f, std::size_t n);
  static Matrix from_columns(const Field& f, std::size_t rows, const std::vector<Vec>& cols);
  static Matrix from_rows(const Field& f, std::size_t cols, const std::vector<Vec>& rows);
  static Matrix column_vector(const Field& f, const Vec& v);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec column(std::size_t c) const;
  Vec row(std::size_t r) const;
  void set_column(std::size_t c, const Vec& v);
  // Row-major flattening, the coordinate convention for matrices as vectors.
  Vec flatten() const;
  static Matrix unflatten(const Field& f, std::size_t rows, std::size_t cols, std::span<const Scalar> v);

  Vec apply(const Vec& v) const;
  Matrix transpose() const;
  Matrix scaled(const Scalar& s) const;
  Matrix select_rows(const std::vector<std::size_t>& idx) const;
  Matrix select_columns(const std::vector<std::size_t>& idx) const;

  bool is_zero() const;
  bool is_identity() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix hstack(const std::vector<Matrix>& parts);
Matrix vstack(const std::vector<Matrix>& parts);

// Vector helpers; all vectors live over `f`.
Vec zero_vec(const Field& f, std::size_t n);
Vec unit_vec(const Field& f, std::size_t n, std::size_t i);
Vec add(const Field& f, const Vec& a, const Vec& b);
Vec sub(const Field& f, const Vec& a, const Vec& b);
Vec scale(const Field& f, const Scalar& s, const Vec& a);
void axpy(const Field& f, const Scalar& s, const Vec& x, Vec& y);
bool is_zero(const Field& f, const Vec& a);
Vec linear_combination(const Field& f, const std::vector<Vec>& vs, const Vec& coeffs);

struct RowEchelon {
  Matrix reduced;                    // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;   // pivot column of each row
};

// Incrementally accumulated row space with a fully reduced basis. Rows can
// be fed sparse; once the rank reaches the column count further rows are
// ignored. Over Q the rows are kept and reduced fraction-free on demand.
class RowSpace {
 public:
  RowSpace(Field f, std::size_t cols);
  ~RowSpace();
  RowSpace(RowSpace&&) noexcept;
  RowSpace& operator=(RowSpace&&) noexcept;

  std::size_t cols() const noexcept { return cols_; }
  bool full() const;
  void add_row(const Vec& v);
  // Entries as (column, value); repeated columns are summed.
  void add_sparse_row(const std::vector<std::pair<std::size_t, Scalar>>& entries);

  RowEchelon echelon() const;
  std::size_t rank() const { return echelon().pivots.size(); }
  Matrix nullspace() const;  // cols x nullity
  // Whether v lies in the span of the rows added so far.
  bool contains(const Vec& v) const;

  struct Kernel;

 private:
  Field field_;
  std::size_t cols_;
  std::unique_ptr<Kernel> k_;
};

// Reduced row echelon form. Q uses fraction-free (Bareiss) Gauss-Jordan on
// integer-scaled rows; finite prime fields use machine-word residues.
RowEchelon row_reduce(const Matrix& a);

std::size_t rank(const Matrix& a);

// Basis of ker(A) as columns of a cols(A) x nullity matrix.
Matrix nullspace(const Matrix& a);

struct LinearSolution {
  Vec particular;
  Matrix nullspace;  // columns span ker(A)
};

// None iff b is outside the column space of A.
std::optional<LinearSolution> solve_linear(const Matrix& a, const Vec& b);

Scalar determinant(const Matrix& a);
std::optional<Matrix> inverse(const Matrix& a);

// Quotient of F^n by the row span of an echelon form: the nonpivot
// coordinates are the quotient basis. `projection` (q x n) reduces a vector
// modulo the relations; `section` (n x q) sends basis vectors to unit vectors.
struct QuotientMap {
  Matrix projection;
  Matrix section;
  std::vector<std::size_t> kept;  // nonpivot coordinates
};
QuotientMap quotient_by(const RowEchelon& relations, std::size_t n);

// Columns forming a basis of the column span.
Matrix column_basis(const Matrix& a);

// A subspace given by a full-column-rank basis, with exact coordinate
// extraction for vectors in its span.
class Subspace {
 public:
  explicit Subspace(Matrix basis);  // basis columns must be independent

  const Matrix& basis() const noexcept { return basis_; }
  std::size_t dim() const noexcept { return basis_.cols(); }
  std::size_t ambient() const noexcept { return basis_.rows(); }

  // Coordinates of v; std::nullopt if v is not in the span.
  std::optional<Vec> try_coords(const Vec& v) const;
  Vec coords(const Vec& v) const;  // throws if v is outside the span
  Vec element(const Vec& coords) const { return basis_.apply(coords); }

 private:
  Matrix basis_;
  std::vector<std::size_t> rows_;  // rows of basis_ forming an invertible block
  Matrix block_inverse_;
};

}  // namespace bisep
