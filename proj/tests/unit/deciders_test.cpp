#include <doctest.h>

#include "bisep/acceptance.hpp"
#include "bisep/catalog.hpp"
#include "bisep/deciders.hpp"
#include "bisep/group.hpp"
#include "bisep/search.hpp"

using namespace bisep;

namespace {

const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);

// All S-S projections E: R -> S with E iota = id, by listing every matrix.
std::vector<Matrix> brute_projections(const Extension& e) {
  const Field& f = e.field();
  const Algebra &r = e.R(), &s = e.S();
  const std::size_t m = s.dim(), n = r.dim();
  std::vector<Matrix> out;
  enumerate_coefficients(f, m * n, [&](const Vec& c) {
    const Matrix E = Matrix::unflatten(f, m, n, c);
    for (std::size_t j = 0; j < m; ++j) {
      if (E.apply(e.image_of_basis(j)) != s.basis_vector(j)) return false;
      for (std::size_t i = 0; i < n; ++i) {
        if (E.apply(r.mul(e.image_of_basis(j), r.basis_vector(i))) != s.mul(s.basis_vector(j), E.apply(r.basis_vector(i))))
          return false;
        if (E.apply(r.mul(r.basis_vector(i), e.image_of_basis(j))) != s.mul(E.apply(r.basis_vector(i)), s.basis_vector(j)))
          return false;
      }
    }
    out.push_back(E);
    return false;
  });
  return out;
}

// Relations r iota(s) (x) r' - r (x) iota(s) r' of R (x)_S R in R (x) R.
RowSpace balanced(const Extension& e) {
  const Field& f = e.field();
  const Algebra& r = e.R();
  const std::size_t n = r.dim();
  RowSpace rel(f, n * n);
  auto pure = [&](const Vec& a, const Vec& b) {
    Vec t(n * n, f.zero());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) t[i * n + k] = f.mul(a[i], b[k]);
    return t;
  };
  for (std::size_t j = 0; j < e.S().dim(); ++j)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        rel.add_row(sub(f, pure(r.mul(r.basis_vector(a), e.image_of_basis(j)), r.basis_vector(b)),
                        pure(r.basis_vector(a), r.mul(e.image_of_basis(j), r.basis_vector(b)))));
  return rel;
}

// Is the extension split and separable, with a projection E and a Casimir
// element sum x_i (x) y_i such that sum E(x_i) y_i = 1 = sum x_i E(y_i)?
// Every pair is tried.
bool brute_axiom(const Extension& e) {
  const Field& f = e.field();
  const Algebra& r = e.R();
  const std::size_t n = r.dim();
  const RowSpace rel = balanced(e);
  const auto projections = brute_projections(e);
  bool found = false, separable = false;
  enumerate_coefficients(f, n * n, [&](const Vec& w) {
    for (std::size_t x = 0; x < n; ++x) {
      Vec d(n * n, f.zero());
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
          if (f.is_zero(w[i * n + k])) continue;
          const Vec xi = r.mul(r.basis_vector(x), r.basis_vector(i)), kx = r.mul(r.basis_vector(k), r.basis_vector(x));
          for (std::size_t a = 0; a < n; ++a) {
            d[a * n + k] = f.add(d[a * n + k], f.mul(w[i * n + k], xi[a]));
            d[i * n + a] = f.sub(d[i * n + a], f.mul(w[i * n + k], kx[a]));
          }
        }
      if (!rel.contains(d)) return false;
    }
    Vec mu(n, f.zero());
    for (std::size_t idx = 0; idx < n * n; ++idx)
      axpy(f, w[idx], r.mul(r.basis_vector(idx / n), r.basis_vector(idx % n)), mu);
    if (mu == r.unit()) separable = true;
    for (const auto& E : projections) {
      Vec left(n, f.zero()), right(n, f.zero());
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
          if (f.is_zero(w[i * n + k])) continue;
          const Vec ei = e.image(E.apply(r.basis_vector(i))), ek = e.image(E.apply(r.basis_vector(k)));
          axpy(f, w[i * n + k], r.mul(ei, r.basis_vector(k)), left);
          axpy(f, w[i * n + k], r.mul(r.basis_vector(i), ek), right);
        }
      if (left == r.unit() && right == r.unit()) found = true;
    }
    return false;
  });
  return found && separable && !projections.empty();
}

std::vector<Extension> sample_extensions() {
  std::vector<Extension> out{z2z2_over_z2(),
                             matrix_over_triangular(F2, 2),
                             triangular_over_diagonal(F2, 2),
                             group_pair(F3, cyclic_group(2), {0}),
                             group_pair(F2, cyclic_group(2), {0}),
                             field_extension(2, 2),
                             identity_extension(upper_triangular(F2, 2))};
  SearchConfig sc;
  sc.max_dim_r = sc.max_dim_s = 3;
  const auto cands = search_candidates(sc);
  for (std::size_t i = 0; i < cands.size(); i += 7) out.push_back(cands[i].ext);
  return out;
}

}  // namespace

TEST_CASE("F3[C2] over F3 has separability element 2(1(x)1 + g(x)g)") {
  const Extension e = group_pair(F3, cyclic_group(2), {0});
  Vec w(4, F3.zero());
  w[0] = F3.from_int(2);
  w[3] = F3.from_int(2);
  CHECK(verify_separability_element(e, w));
  w[3] = F3.zero();
  CHECK_FALSE(verify_separability_element(e, w));
  const SeparableResult r = is_separable_ext(e);
  REQUIRE(r.holds());
  CHECK(verify_separability_element(e, *r.element));
}

TEST_CASE("F2[C2] over F2 is split and Frobenius but not separable") {
  const Extension e = group_pair(F2, cyclic_group(2), {0});
  const SeparableResult s = is_separable_ext(e);
  CHECK(s.verdict == Verdict::False);
  CHECK(s.certificate == CertificateKind::LinearInfeasible);
  const SplitResult sp = is_split_ext(e);
  REQUIRE(sp.holds());
  CHECK(verify_split_projection(e, *sp.projection));
  const FrobeniusResult fr = is_frobenius_ext(e, kDefaultBudget);
  REQUIRE(fr.holds());
  CHECK(verify_frobenius_system(e, *fr.system));
}

TEST_CASE("split projection counts match enumeration of all maps") {
  for (const auto& e : sample_extensions()) {
    const auto brute = brute_projections(e);
    const ProjectionCount pc = count_split_projections(e, kDefaultBudget);
    CHECK(pc.count == brute.size());
    CHECK(is_split_ext(e).holds() == !brute.empty());
  }
  // the group algebra F2[C2] has both E(a + bg) = a and E(a + bg) = a + b
  CHECK(count_split_projections(group_pair(F2, cyclic_group(2), {0}), kDefaultBudget).count == 2);
}

TEST_CASE("witnesses returned by the deciders verify") {
  for (const auto& e : sample_extensions()) {
    if (const auto s = is_separable_ext(e); s.holds()) CHECK(verify_separability_element(e, *s.element));
    if (const auto s = is_split_ext(e); s.holds()) CHECK(verify_split_projection(e, *s.projection));
    for (Side side : {Side::Left, Side::Right})
      if (const auto s = is_fgp(e, side); s.holds()) CHECK(verify_dual_basis(e, side, s.xs, s.fs));
    if (const auto s = is_frobenius_ext(e, kDefaultBudget); s.holds()) CHECK(verify_frobenius_system(e, *s.system));
    for (auto* dec : {&is_h_separable, &is_centrally_projective}) {
      const AddOutcome a = (*dec)(e);
      CHECK(a.verdict != Verdict::Unknown);
    }
  }
}

TEST_CASE("H-separability") {
  CHECK(is_h_separable(matrix_over_triangular(F2, 2)).holds());
  CHECK_FALSE(is_h_separable(z2z2_over_z2()).holds());
  CHECK(is_h_separable(identity_extension(matrix_algebra(F3, 2))).holds());
}

TEST_CASE("twisting by the identity is plain Frobenius") {
  for (const auto& e : sample_extensions()) {
    const Matrix id = Matrix::identity(e.field(), e.S().dim());
    CHECK(twisted_frobenius_check(e, id, kDefaultBudget).verdict == is_frobenius_ext(e, kDefaultBudget).verdict);
  }
}

TEST_CASE("automorphisms of T2(F2) by enumeration") {
  const Algebra t = upper_triangular(F2, 2);
  std::size_t brute = 0;
  enumerate_coefficients(F2, 9, [&](const Vec& c) {
    const Matrix b = Matrix::unflatten(F2, 3, 3, c);
    if (!inverse(b) || b.apply(t.unit()) != t.unit()) return false;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (b.apply(t.mul(t.basis_vector(i), t.basis_vector(j))) != t.mul(b.column(i), b.column(j))) return false;
    ++brute;
    return false;
  });
  const auto autos = enumerate_automorphisms(t, kDefaultBudget);
  CHECK(autos.size() == brute);
  for (const auto& b : autos) CHECK(is_automorphism(t, b));
  CHECK_FALSE(is_automorphism(t, Matrix(F2, 3, 3)));
}

TEST_CASE("extended inner automorphisms") {
  const Algebra m2 = matrix_algebra(F2, 2);
  const Extension id = identity_extension(m2);
  // conjugation by u = 1 + E_01, its own inverse over F2
  Vec u = m2.unit();
  u[1] = F2.one();
  Matrix beta(F2, 4, 4);
  for (std::size_t j = 0; j < 4; ++j) beta.set_column(j, m2.mul(m2.mul(u, m2.basis_vector(j)), u));
  REQUIRE(is_automorphism(m2, beta));
  const InnerResult r = is_extended_inner(id, beta, kDefaultBudget);
  REQUIRE(r.holds());
  CHECK(m2.mul(*r.unit, m2.basis_vector(2)) == m2.mul(beta.apply(m2.basis_vector(2)), *r.unit));

  // the Frobenius map of F4 is not inner in a commutative ring
  const Extension f4 = identity_extension(field_extension(2, 2).R());
  const Algebra& a = f4.R();
  Matrix frob(F2, 2, 2);
  for (std::size_t j = 0; j < 2; ++j) frob.set_column(j, a.mul(a.basis_vector(j), a.basis_vector(j)));
  REQUIRE(is_automorphism(a, frob));
  CHECK(is_frobenius_ext(f4, kDefaultBudget).holds());
  CHECK(is_extended_inner(f4, frob, kDefaultBudget).verdict == Verdict::False);
}

TEST_CASE("axiom compatibility agrees with trying every projection and Casimir element") {
  CHECK(axiom_compatibility_search(group_pair(F3, cyclic_group(2), {0}), kDefaultBudget).holds());
  CHECK_FALSE(axiom_compatibility_search(z2z2_over_z2(), kDefaultBudget).holds());
  for (const auto& e : sample_extensions()) {
    if (e.R().dim() > 3) continue;
    CHECK(axiom_compatibility_search(e, kDefaultBudget).holds() == brute_axiom(e));
  }
}

TEST_CASE("Frobenius homomorphisms of Z2+Z2 over Z2") {
  const Extension e = z2z2_over_z2();
  const FrobeniusHomCount c = count_frobenius_homs(e, kDefaultBudget);
  CHECK(c.count == 1);
  REQUIRE(c.homs.size() == 1);
  for (const auto& p : brute_projections(e)) CHECK_FALSE(p == c.homs[0]);
}

TEST_CASE("bimodule deciders on the Morita bimodule") {
  const Bimodule m = morita_bimodule(F3, 2);
  const BimoduleSeparableResult s = is_separable_bimodule(m);
  REQUIRE(s.holds());
  CHECK(verify_bimodule_separability(m, *s.element));
  CHECK(is_frobenius_bimodule(m, kDefaultBudget).holds());
  CHECK(is_fgp_left_module(m));
  CHECK(is_fgp_right_module(m));
  const FrobeniusPairResult pair = frobenius_pair_data(m, kDefaultBudget);
  REQUIRE(pair.holds());
  CHECK(separable_via_frobenius_pair(m, pair).holds());
}

TEST_CASE("natural bimodules encode separable and split") {
  for (const auto& e : sample_extensions()) {
    CHECK(is_separable_bimodule(natural_bimodule(e, Pattern::R_as_RRS)).verdict == is_separable_ext(e).verdict);
    CHECK(is_separable_bimodule(natural_bimodule(e, Pattern::R_as_SRR)).verdict == is_split_ext(e).verdict);
  }
}

TEST_CASE("split and separable deciders against enumeration for dim R <= 2") {
  const OracleStats s = run_extension_oracle(2, kDefaultBudget);
  CHECK(s.extensions > 0);
  CHECK(s.discrepancies.empty());
}

TEST_CASE("a finite split separable extension that is not projective, hence not Frobenius") {
  // S = k[x]/x^2 -> R = k x S, s -> (s mod x, s)
  const Algebra dual = polynomial_quotient(F2, {F2.zero(), F2.zero(), F2.one()});
  const Algebra r = direct_sum(field_algebra(F2), dual);
  const Extension e(dual, r, Matrix::from_rows(F2, 2, {{F2.one(), F2.zero()}, {F2.one(), F2.zero()}, {F2.zero(), F2.one()}}));
  CHECK(is_split_ext(e).holds());
  CHECK(is_separable_ext(e).holds());
  CHECK_FALSE(is_fgp(e, Side::Right).holds());
  CHECK_FALSE(is_fgp(e, Side::Left).holds());
  CHECK(is_frobenius_ext(e, kDefaultBudget).verdict == Verdict::False);
}
