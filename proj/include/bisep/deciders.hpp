#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bisep/invertible.hpp"
#include "bisep/module.hpp"

namespace bisep {

enum class CertificateKind { None, LinearInfeasible, NoInvertibleElement, Budget, NotProper, Precondition };
std::string to_string(CertificateKind c);

struct Outcome {
  Verdict verdict = Verdict::False;
  CertificateKind certificate = CertificateKind::None;
  std::string reason;
  bool holds() const { return verdict == Verdict::True; }
};

// Elements of M (x)_S N are carried as vectors over the pure tensors
// m_i (x) n_j (index i*dim N + j); any representative of the class will do.

// ----- extensions -----------------------------------------------------------

struct SeparableResult : Outcome {
  std::optional<Vec> element;  // in R (x) R
};
SeparableResult is_separable_ext(const Extension& ext);
bool verify_separability_element(const Extension& ext, const Vec& element);

struct SplitResult : Outcome {
  std::optional<Matrix> projection;  // dim S x dim R
};
SplitResult is_split_ext(const Extension& ext);
bool verify_split_projection(const Extension& ext, const Matrix& e);

struct ProjectionCount {
  Verdict verdict = Verdict::True;  // Unknown when only the dimension is known
  std::uint64_t count = 0;
  std::size_t affine_dim = 0;
  bool feasible = false;
  std::vector<Matrix> projections;  // when enumerated
};
ProjectionCount count_split_projections(const Extension& ext, std::uint64_t budget);

enum class Side { Left, Right };
std::string to_string(Side s);

// Right: sum_i x_i iota(f_i(r)) = r. Left: sum_i iota(f_i(r)) x_i = r.
struct FgpResult : Outcome {
  std::vector<Vec> xs;
  std::vector<Matrix> fs;  // dim S x dim R
};
FgpResult is_fgp(const Extension& ext, Side side);
bool verify_dual_basis(const Extension& ext, Side side, const std::vector<Vec>& xs, const std::vector<Matrix>& fs);

// sum_i E(r x_i) y_i = r = sum_i x_i E(y_i r).
struct FrobeniusSystem {
  Matrix e;  // dim S x dim R
  std::vector<Vec> xs, ys;
};
struct FrobeniusResult : Outcome {
  std::optional<FrobeniusSystem> system;
  std::string method;
};
FrobeniusResult is_frobenius_ext(const Extension& ext, std::uint64_t budget);
bool verify_frobenius_system(const Extension& ext, const FrobeniusSystem& s);

struct FrobeniusHomCount {
  Verdict verdict = Verdict::True;
  std::uint64_t count = 0;
  std::vector<Matrix> homs;
  std::string reason;
};
FrobeniusHomCount count_frobenius_homs(const Extension& ext, std::uint64_t budget);

struct BiseparableResult : Outcome {
  SplitResult split;
  SeparableResult separable;
  FgpResult fgp_left, fgp_right;
};
BiseparableResult is_biseparable_ext(const Extension& ext);

struct AddOutcome : Outcome {
  std::optional<AddWitness> witness;
};
// Left: R* in add(R) as S-R-bimodules. Right: *R in add(R) as R-S-bimodules.
// Both require two-sided fgp.
AddOutcome is_qf_ext(const Extension& ext, Side side);
// R (x)_S R in add(R) as R-R-bimodules.
AddOutcome is_h_separable(const Extension& ext);
// R in add(S) as S-S-bimodules.
AddOutcome is_centrally_projective(const Extension& ext);

// A split projection E and a Casimir element e = sum x_i (x) y_i with
// sum E(x_i) y_i = 1 = sum x_i E(y_i).
struct AxiomResult : Outcome {
  std::optional<Matrix> projection;
  std::optional<Vec> element;
};
AxiomResult axiom_compatibility_search(const Extension& ext, std::uint64_t budget);

// beta-twisted Frobenius: R isomorphic to R* with S acting on the left
// through beta. NotAutomorphism when beta is not an algebra automorphism.
FrobeniusResult twisted_frobenius_check(const Extension& ext, const Matrix& beta, std::uint64_t budget);
bool is_automorphism(const Algebra& s, const Matrix& beta);
// All automorphisms of a finite-field algebra; BudgetExceeded past budget.
std::vector<Matrix> enumerate_automorphisms(const Algebra& s, std::uint64_t budget);
// A unit u of R with u iota(s) = iota(beta(s)) u for all s.
struct InnerResult : Outcome {
  std::optional<Vec> unit;
};
InnerResult is_extended_inner(const Extension& ext, const Matrix& beta, std::uint64_t budget);

// ----- bimodules ------------------------------------------------------------

// e in (M (x)_R *M)^T with mu(e) = 1_T.
struct BimoduleSeparableResult : Outcome {
  std::optional<Vec> element;  // in M (x) *M, *M in its dual coordinates
};
BimoduleSeparableResult is_separable_bimodule(const Bimodule& m);
bool verify_bimodule_separability(const Bimodule& m, const Vec& element);

struct FrobeniusBimoduleResult : Outcome {
  std::optional<Matrix> iso;  // *M -> M* in dual coordinates
  std::string method;
};
FrobeniusBimoduleResult is_frobenius_bimodule(const Bimodule& m, std::uint64_t budget);

bool is_fgp_right_module(const Bimodule& m);
bool is_fgp_left_module(const Bimodule& m);

// Alternative separability criteria. `applicable` is false when the fgp
// hypothesis a criterion needs fails; the verdict is then False.
struct CriterionResult : Outcome {
  bool applicable = true;
  std::optional<Matrix> map;  // the hom that witnesses the criterion
};
// M_R fgp with dual basis (p_k, h_k): some phi in Hom_{R-T}(M*, *M) has
// sum_k phi(h_k)(p_k) = 1_T.
CriterionResult separable_via_dual_pairing(const Bimodule& m);
// M_R fgp: some T-T-map End(M_R) -> T sends the identity to 1_T.
CriterionResult separable_via_right_endomorphisms(const Bimodule& m);
// Casimir element of M* (x)_T M evaluating to 1_R.
CriterionResult dual_separable_via_casimir(const Bimodule& m);
// _T M fgp with dual basis (n_j, g_j): some phi in Hom_{R-T}(*M, M*) has
// sum_j phi(g_j)(n_j) = 1_R.
CriterionResult dual_separable_via_pairing(const Bimodule& m);
// _T M fgp: some R-R-map End(_T M) -> R sends the identity to 1_R.
CriterionResult dual_separable_via_left_endomorphisms(const Bimodule& m);

// e in (M (x)_R *M)^T and nu in Hom_{R-R}(End(_T M), R) with
//   sum_i m_i nu(gamma(f_i (x) m)) = m  and  sum_i nu(gamma(f (x) m_i)) f_i = f,
// gamma(f (x) m) = (x -> f(x) m).
struct FrobeniusPairResult : Outcome {
  bool applicable = true;
  std::optional<Vec> element;  // as for BimoduleSeparableResult
  std::optional<Vec> nu;       // coordinates in the V_1 basis
  std::optional<Matrix> nu_map;  // dim R x dim End(_T M)
};
FrobeniusPairResult frobenius_pair_data(const Bimodule& m, std::uint64_t budget);

// Given a Frobenius pair, a T-R-endomorphism alpha of M with
// sum_i f_i(alpha(m_i)) = 1_T.
struct FrobeniusPairCriterion : Outcome {
  bool applicable = true;
  std::optional<Matrix> alpha;
};
FrobeniusPairCriterion separable_via_frobenius_pair(const Bimodule& m, const FrobeniusPairResult& pair);

// End(M_R) as a T-T-bimodule or End(_T M) as an R-R-bimodule, with the
// subspace of matrices it lives in.
struct EndBimodule {
  Bimodule module;
  Subspace space;  // flattened dim M x dim M matrices
};
EndBimodule end_of_right_module(const Bimodule& m);
EndBimodule end_of_left_module(const Bimodule& m);

}  // namespace bisep
