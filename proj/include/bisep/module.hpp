#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bisep/algebra.hpp"

namespace bisep {

// Ring extension iota: S -> R; column j of `iota` is iota(s_j) in R.
class Extension {
 public:
  // Validates unit and multiplicativity (InvalidExtension).
  Extension(Algebra s, Algebra r, Matrix iota);

  const Algebra& S() const noexcept { return s_; }
  const Algebra& R() const noexcept { return r_; }
  const Matrix& iota() const noexcept { return iota_; }
  const Field& field() const noexcept { return r_.field(); }
  bool proper() const;
  // dim S == dim R and iota bijective.
  bool is_identity_like() const;
  Vec image(const Vec& s) const { return iota_.apply(s); }
  Vec image_of_basis(std::size_t j) const { return iota_.column(j); }

 private:
  Algebra s_, r_;
  Matrix iota_;
};

Extension identity_extension(const Algebra& a);
// Inclusion of the subalgebra spanned by the columns of `basis`.
Extension subalgebra_extension(const Algebra& r, const Matrix& basis);

// (T,R)-bimodule: left[i] is the action of the i-th basis element of T,
// right[j] the action m -> m r_j of the j-th basis element of R.
// One-sided modules use the one-dimensional field algebra on the other side.
class Bimodule {
 public:
  // Validates homomorphism laws, units and commuting actions (InvalidBimodule).
  Bimodule(Algebra t, Algebra r, std::size_t dim, std::vector<Matrix> left, std::vector<Matrix> right);

  const Algebra& T() const noexcept { return t_; }
  const Algebra& R() const noexcept { return r_; }
  const Field& field() const noexcept { return t_.field(); }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Matrix>& left() const noexcept { return left_; }
  const std::vector<Matrix>& right() const noexcept { return right_; }
  Matrix left_of(const Vec& t) const;
  Matrix right_of(const Vec& r) const;

 private:
  Algebra t_, r_;
  std::size_t dim_;
  std::vector<Matrix> left_, right_;
};

// Forget one side: M as a right R-module (k,R) or a left T-module (T,k).
Bimodule as_right_module(const Bimodule& m);
Bimodule as_left_module(const Bimodule& m);
// A as an (A,A)-bimodule.
Bimodule regular_bimodule(const Algebra& a);
Bimodule right_regular(const Algebra& a);  // A_A
Bimodule left_regular(const Algebra& a);   // _A A

enum class Pattern { R_as_SRS, R_as_RRS, R_as_SRR, R_as_RRR, S_as_SSS };
Bimodule natural_bimodule(const Extension& ext, Pattern p);
std::string to_string(Pattern p);

// Basis of Hom_{T-R}(M, N); each map is a dim N x dim M matrix.
struct HomSpace {
  std::vector<Matrix> basis;
  std::size_t dim() const { return basis.size(); }
  Matrix combination(const Field& f, const Vec& c) const;
};
HomSpace hom_space(const Bimodule& m, const Bimodule& n);
bool is_homomorphism(const Bimodule& m, const Bimodule& n, const Matrix& f);

// M (x)_S N for an (A,S)-bimodule M and an (S,B)-bimodule N.
struct TensorProduct {
  Bimodule module;     // the (A,B)-bimodule quotient
  Matrix projection;   // dim x (dim M * dim N); pure tensor m_i (x) n_j at i*dim N + j
  Matrix section;      // (dim M * dim N) x dim
  std::size_t relation_rank = 0;
};
TensorProduct tensor_over(const Bimodule& m, const Bimodule& n);

// A dual of M realised as a subspace of matrices. Element coordinates refer
// to `space`; `ambient(c)` is the map as a matrix.
struct Dual {
  Bimodule module;
  Subspace space;          // flattened maps, row-major
  std::size_t rows = 0;    // dim of the target algebra
  std::size_t cols = 0;    // dim M
  Matrix ambient(const Vec& coords) const;
  Vec coords_of(const Matrix& map) const;
};
// M* = Hom(M_R, R_R) as an (R,T)-bimodule: (r f t)(m) = r f(t m).
Dual dual_right(const Bimodule& m);
// *M = Hom(_T M, _T T) as an (R,T)-bimodule: (r f t)(m) = f(m r) t.
Dual dual_left(const Bimodule& m);

// Evaluation M -> *(M*), m -> (f -> f(m)); matrix in the coordinates of *(M*).
Matrix double_dual_map(const Bimodule& m);

// {x : L_s x = R_s x for all basis s} of an (S,S)-bimodule.
Matrix casimir_subspace(const Bimodule& m);

// M in add(N): id_M = sum g_i f_i with f_i: M -> N and g_i: N -> M.
struct AddWitness {
  std::vector<Matrix> f;
  std::vector<Matrix> g;
};
struct AddResult {
  bool member = false;
  std::optional<AddWitness> witness;
  std::size_t trace_dim = 0;  // dim of span{g f} inside End(M)
};
AddResult in_add(const Bimodule& m, const Bimodule& n);
bool verify_add_witness(const Bimodule& m, const Bimodule& n, const AddWitness& w);

// A_A in add(D(A)_A), D(A) the linear dual.
bool is_qf_ring(const Algebra& a);
Bimodule linear_dual_right(const Algebra& a);

}  // namespace bisep
