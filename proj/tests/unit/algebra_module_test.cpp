#include <doctest.h>

#include "bisep/acceptance.hpp"
#include "bisep/catalog.hpp"
#include "bisep/group.hpp"
#include "bisep/search.hpp"

using namespace bisep;

namespace {

const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);

Algebra dual_numbers(const Field& f) { return polynomial_quotient(f, {f.zero(), f.zero(), f.one()}); }

bool nilpotent(const Algebra& a, const Vec& x) {
  Vec p = x;
  for (std::size_t k = 0; k <= a.dim(); ++k) p = a.mul(p, x);
  return is_zero(a.field(), p);
}

// J(A) = {x : xy nilpotent for every y}, by listing all elements.
std::vector<Vec> brute_radical(const Algebra& a) {
  std::vector<Vec> all, out;
  enumerate_coefficients(a.field(), a.dim(), [&](const Vec& v) {
    all.push_back(v);
    return false;
  });
  for (const auto& x : all) {
    bool in = true;
    for (const auto& y : all)
      if (!nilpotent(a, a.mul(x, y))) {
        in = false;
        break;
      }
    if (in) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("a non-associative table is rejected with its witness") {
  // e0 = 1, e1*e1 = e2, e2*e1 = e1 (so (e1 e1) e1 = e1 but e1 (e1 e1) = e1 e2 = 0)
  try {
    Algebra::make(F2, 3, {{0, 0, 0, F2.one()}, {0, 1, 1, F2.one()}, {1, 0, 1, F2.one()}, {0, 2, 2, F2.one()},
                          {2, 0, 2, F2.one()}, {1, 1, 2, F2.one()}, {2, 1, 1, F2.one()}},
                  {F2.one(), F2.zero(), F2.zero()});
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAssociative);
    CHECK(e.witness().size() == 3);
  }
}

TEST_CASE("a wrong unit is rejected") {
  CHECK_THROWS_AS(Algebra::make(F2, 1, {{0, 0, 0, F2.one()}}, {F2.zero()}), Error);
}

TEST_CASE("centers") {
  CHECK(center(matrix_algebra(F3, 2)).cols() == 1);
  CHECK(center(upper_triangular(F2, 2)).cols() == 1);
  // one central element per conjugacy class
  CHECK(center(group_algebra(Field::rationals(), symmetric3())).cols() == 3);
  CHECK(center(group_algebra(F2, dihedral_group(4))).cols() == 5);
}

TEST_CASE("opposite is an involution") {
  for (const auto& a : {upper_triangular(F2, 3), matrix_algebra(F3, 2), group_algebra(F2, symmetric3())})
    CHECK(opposite(opposite(a)) == a);
  CHECK_FALSE(opposite(upper_triangular(F2, 2)) == upper_triangular(F2, 2));
}

TEST_CASE("radical of small examples") {
  CHECK(radical(upper_triangular(F2, 2)).cols() == 1);
  CHECK(radical(upper_triangular(Field::rationals(), 3)).cols() == 3);
  CHECK(radical(matrix_algebra(F2, 2)).cols() == 0);
  CHECK(radical(dual_numbers(Field::rationals())).cols() == 1);
  CHECK(is_semisimple(group_algebra(F3, cyclic_group(2))));
  CHECK_FALSE(is_semisimple(group_algebra(F2, cyclic_group(2))));
  CHECK(radical(group_algebra(F3, symmetric3())).cols() == 4);
  CHECK(radical(group_algebra(F2, symmetric3())).cols() == 1);
}

TEST_CASE("radical agrees with the nilpotent-product definition") {
  std::vector<std::pair<std::string, Algebra>> algebras = builtin_search_algebras(F2, 4);
  for (auto& a : builtin_search_algebras(F3, 3)) algebras.push_back(a);
  const Field f4 = Field::extension(2, 2);
  algebras.push_back({"F4[x]/x^2", dual_numbers(f4)});
  algebras.push_back({"T2(F4)", upper_triangular(f4, 2)});
  for (const auto& [name, a] : algebras) {
    CAPTURE(name);
    const Matrix rad = radical(a);
    const auto brute = brute_radical(a);
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < rad.cols(); ++i) size *= a.field().order();
    CHECK(brute.size() == size);
    RowSpace span(a.field(), a.dim());
    for (std::size_t c = 0; c < rad.cols(); ++c) span.add_row(rad.column(c));
    for (const auto& x : brute) CHECK(span.contains(x));
  }
}

TEST_CASE("tensor products over a field and trivial extensions") {
  const Algebra t = tensor_over_field(upper_triangular(F2, 2), dual_numbers(F2));
  CHECK(t.dim() == 6);
  CHECK(radical(t).cols() == 4);
  MultiplicativeBimodule zero{1, {}, {}, {}};
  const Algebra d = diagonal(F2, 2);
  for (std::size_t k = 0; k < d.dim(); ++k) {
    // the first idempotent acts as 1 on both sides, the second as 0
    zero.left.push_back(Matrix::identity(F2, 1).scaled(k == 0 ? F2.one() : F2.zero()));
    zero.right.push_back(Matrix::identity(F2, 1).scaled(k == 0 ? F2.one() : F2.zero()));
  }
  const Algebra tr = trivial_extension(d, zero);
  CHECK(tr.dim() == 3);
  CHECK(radical(tr).cols() == 1);
}

TEST_CASE("groups") {
  CHECK(group_by_name("D4").order() == 8);
  CHECK(group_by_name("Q8").order() == 8);
  CHECK(group_by_name("A4").order() == 12);
  CHECK_THROWS_AS(group_by_name("C13"), Error);
  const Group s3 = symmetric3();
  CHECK(generated_subgroup(s3, {1}).size() == 3);
  CHECK(generated_subgroup(s3, {1, 2}).size() == 6);
  CHECK_THROWS_AS(subgroup(s3, {0, 2, 3}), Error);
}

TEST_CASE("S-S homomorphisms R -> S for Z2+Z2 over Z2") {
  const Extension e = z2z2_over_z2();
  const HomSpace h = hom_space(natural_bimodule(e, Pattern::R_as_SRS), natural_bimodule(e, Pattern::S_as_SSS));
  CHECK(h.dim() == 2);
}

TEST_CASE("tensor products over S") {
  const Extension z = z2z2_over_z2();
  CHECK(tensor_over(natural_bimodule(z, Pattern::R_as_RRS), natural_bimodule(z, Pattern::R_as_SRR)).module.dim() == 4);
  // T2 -> M2 is a ring epimorphism, so M2 (x)_T2 M2 = M2
  const Extension m = matrix_over_triangular(F2, 2);
  CHECK(tensor_over(natural_bimodule(m, Pattern::R_as_RRS), natural_bimodule(m, Pattern::R_as_SRR)).module.dim() == 4);
  // R e_1 (x) e_1 R + R e_2 (x) e_2 R has dim 1*2 + 2*1
  const Extension d = triangular_over_diagonal(Field::rationals(), 2);
  CHECK(tensor_over(natural_bimodule(d, Pattern::R_as_RRS), natural_bimodule(d, Pattern::R_as_SRR)).module.dim() == 4);
}

TEST_CASE("duals of the regular modules") {
  const Extension m = matrix_over_triangular(F2, 2);
  const Dual rstar = dual_right(natural_bimodule(m, Pattern::R_as_SRR));
  CHECK(rstar.module.dim() == 4);
  const Dual starr = dual_left(natural_bimodule(m, Pattern::R_as_RRS));
  CHECK(starr.module.dim() == 4);
  // the evaluation map into the double dual is an isomorphism for fgp modules
  CHECK(rank(double_dual_map(natural_bimodule(m, Pattern::R_as_SRR))) == 4);
}

TEST_CASE("membership in add(N)") {
  const Algebra t2 = upper_triangular(F2, 2);
  const AddResult self = in_add(right_regular(t2), right_regular(t2));
  CHECK(self.member);
  REQUIRE(self.witness);
  CHECK(verify_add_witness(right_regular(t2), right_regular(t2), *self.witness));
  CHECK_FALSE(in_add(right_regular(t2), linear_dual_right(t2)).member);
  CHECK(in_add(right_regular(matrix_algebra(F2, 2)), linear_dual_right(matrix_algebra(F2, 2))).member);
  // Morita: the simple left M2-module k^2 and the regular module generate each other
  const Bimodule simple = as_left_module(morita_bimodule(F2, 2));
  const Bimodule reg = left_regular(matrix_algebra(F2, 2));
  CHECK(in_add(reg, simple).member);
  CHECK(in_add(simple, reg).member);
  // End(T2_T2) = T2
  const Algebra tq = upper_triangular(Field::rationals(), 2);
  const AddResult r = in_add(right_regular(tq), right_regular(tq));
  CHECK(r.member);
  CHECK(r.trace_dim == 3);
}

TEST_CASE("QF rings") {
  CHECK(is_qf_ring(matrix_algebra(F2, 2)));
  CHECK_FALSE(is_qf_ring(upper_triangular(Field::rationals(), 2)));
  CHECK(is_qf_ring(group_algebra(F2, cyclic_group(2))));
  CHECK(is_qf_ring(dual_numbers(F3)));
  CHECK(is_qf_ring(group_algebra(F2, symmetric3())));
}

TEST_CASE("exhaustive F2 oracle for add on small modules") {
  const OracleStats s = run_add_oracle(2, 2);
  CHECK(s.add_checks > 0);
  CHECK(s.discrepancies.empty());
}
