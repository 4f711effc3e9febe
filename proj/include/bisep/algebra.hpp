#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bisep/matrix.hpp"

namespace bisep {

// One nonzero structure constant: e_i * e_j has coefficient `c` at e_k.
struct StructureEntry {
  std::size_t i, j, k;
  Scalar c;
};

// Finite-dimensional unital associative algebra over an exact field, given by
// structure constants. Immutable once validated; a cheap shared handle.
// Multiplication operators are computed on first use.
class Algebra {
 public:
  // Validates associativity (NotAssociative, witness i,j,k) and the unit
  // (BadUnit, witness j). Repeated (i,j,k) entries are summed.
  static Algebra make(const Field& f, std::size_t dim, const std::vector<StructureEntry>& entries, const Vec& unit,
                      std::vector<std::string> names = {});

  const Field& field() const noexcept;
  std::size_t dim() const noexcept;
  const Vec& unit() const noexcept;
  const std::vector<std::string>& basis_names() const noexcept;

  struct Term {
    std::size_t k;
    Scalar c;
  };
  // Sparse e_i * e_j.
  const std::vector<Term>& product(std::size_t i, std::size_t j) const;
  std::vector<StructureEntry> structure() const;

  Vec basis_vector(std::size_t i) const { return unit_vec(field(), dim(), i); }
  Vec mul(const Vec& a, const Vec& b) const;

  // L_i: x -> e_i x and R_i: x -> x e_i.
  const Matrix& left_mult(std::size_t i) const;
  const Matrix& right_mult(std::size_t i) const;
  Matrix left_mult_of(const Vec& a) const;
  Matrix right_mult_of(const Vec& a) const;

  bool is_commutative() const;
  std::string serialize_key() const;  // canonical text, for dedupe

  friend bool operator==(const Algebra& a, const Algebra& b);

 private:
  struct Impl;
  explicit Algebra(std::shared_ptr<const Impl> p) : p_(std::move(p)) {}
  std::shared_ptr<const Impl> p_;
};

// Two-sided ideal given by a basis (columns in algebra coordinates).
class Ideal {
 public:
  Ideal(Algebra parent, Matrix basis);  // NotAnIdeal when not closed

  const Algebra& parent() const noexcept { return parent_; }
  const Matrix& basis() const noexcept { return basis_; }
  std::size_t dim() const noexcept { return basis_.cols(); }

 private:
  Algebra parent_;
  Matrix basis_;
};

// Constructors for the families in use.
Algebra field_algebra(const Field& f);
Algebra matrix_algebra(const Field& f, std::size_t n);
Algebra upper_triangular(const Field& f, std::size_t n);
Algebra diagonal(const Field& f, std::size_t n);
// k[x]/(g) for monic g given low degree first; basis 1, x, ..., x^{deg-1}.
Algebra polynomial_quotient(const Field& f, const Vec& monic);
Algebra direct_sum(const Algebra& a, const Algebra& b);
// Basis e_i (x) e_j at index i*dim(b)+j.
Algebra tensor_over_field(const Algebra& a, const Algebra& b);
Algebra opposite(const Algebra& a);
// S (x) R^op, whose left modules are the S-R-bimodules.
Algebra enveloping(const Algebra& s, const Algebra& r);

// An R-bimodule I with an internal product compatible with the actions.
// `left[i]`, `right[i]` act by the basis element e_i of R; `product` gives
// structure constants of I * I -> I.
struct MultiplicativeBimodule {
  std::size_t dim = 0;
  std::vector<Matrix> left;
  std::vector<Matrix> right;
  std::vector<StructureEntry> product;
};

// R (+) I with (r,x)(r',x') = (rr', rx' + xr' + xx'); basis: R's then I's.
Algebra trivial_extension(const Algebra& r, const MultiplicativeBimodule& i);

// Span closure of `generators` together with 1, as columns.
Matrix subalgebra_span(const Algebra& a, const std::vector<Vec>& generators);
// Algebra on a subspace closed under products and containing 1.
Algebra algebra_on_subspace(const Algebra& a, const Matrix& basis);

struct Quotient {
  Algebra algebra;
  Matrix projection;  // dim(A/I) x dim(A)
};
Quotient quotient(const Ideal& i);

Matrix center(const Algebra& a);
// {x : x s = s x for every column s of `images`}.
Matrix centralizer(const Algebra& a, const Matrix& images);

Matrix radical(const Algebra& a);
bool is_semisimple(const Algebra& a);

// Products I*J of two subspaces, as a spanning basis (columns).
Matrix product_span(const Algebra& a, const Matrix& x, const Matrix& y);

}  // namespace bisep
