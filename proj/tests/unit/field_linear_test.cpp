#include <doctest.h>

#include <random>

#include "bisep/matrix.hpp"

using namespace bisep;

namespace {

Scalar q(long n, long d = 1) {
  mpq_class v(n, d);
  v.canonicalize();
  return Scalar(v);
}

// Schoolbook Gauss-Jordan on mpq_class, no fraction-free tricks; rows of the
// reduced echelon form with zero rows dropped.
std::vector<std::vector<mpq_class>> naive_rref(std::vector<std::vector<mpq_class>> a) {
  const std::size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const mpq_class lead = a[r][c];
    for (auto& x : a[r]) x /= lead;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const mpq_class m = a[i][c];
      for (std::size_t k = 0; k < cols; ++k) a[i][k] -= m * a[r][k];
    }
    ++r;
  }
  a.resize(r);
  return a;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  const Field f = Field::prime(7);
  CHECK(f.mul(f.from_int(3), f.from_int(5)) == f.one());
  CHECK(f.inv(f.from_int(3)) == f.from_int(5));
  CHECK(f.from_int(-1) == f.from_int(6));
  CHECK(f.sub(f.from_int(2), f.from_int(5)) == f.from_int(4));
  CHECK_THROWS_AS(f.inv(f.zero()), Error);
  CHECK_THROWS_AS(Field::prime(6), Error);
}

TEST_CASE("rational arithmetic stays exact") {
  const Field f = Field::rationals();
  CHECK(f.add(q(1, 2), q(1, 3)) == q(5, 6));
  CHECK(f.div(q(3, 4), q(9, 8)) == q(2, 3));
  CHECK(f.to_string(f.mul(q(-3), q(1, 2))) == "-3/2");
  try {
    f.div(q(1), q(0));
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionByZero);
  }
}

TEST_CASE("F4 multiplication follows x^2 = x + 1") {
  const Field f = Field::extension(2, 2);
  CHECK(f.order() == 4);
  CHECK(f.modulus() == std::vector<std::uint64_t>{1, 1, 1});
  const Scalar x = f.from_coefficients({0, 1});
  CHECK(f.mul(x, x) == f.from_coefficients({1, 1}));
  CHECK(f.mul(x, f.inv(x)) == f.one());
}

TEST_CASE("every nonzero element of F9 and F8 satisfies a^(q-1) = 1") {
  for (const Field& f : {Field::extension(3, 2), Field::extension(2, 3)}) {
    for (std::uint64_t i = 1; i < f.order(); ++i) {
      const Scalar a = f.element(i);
      Scalar p = f.one();
      for (std::uint64_t k = 0; k + 1 < f.order(); ++k) p = f.mul(p, a);
      CHECK(p == f.one());
      CHECK(f.mul(a, f.inv(a)) == f.one());
    }
  }
}

TEST_CASE("field element wrapper") {
  const Field f = Field::prime(5);
  const FieldElement a(f, f.from_int(2)), b(f, f.from_int(4));
  CHECK((a * b).value() == f.from_int(3));
  CHECK((a / b * b) == a);
  CHECK((-a).value() == f.from_int(3));
}

TEST_CASE("solve_linear over Q") {
  const Field f = Field::rationals();
  const Matrix a = Matrix::from_rows(f, 2, {{q(1), q(2)}, {q(3), q(4)}});
  const auto s = solve_linear(a, {q(5), q(6)});
  REQUIRE(s);
  CHECK(s->particular == Vec{q(-4), q(9, 2)});
  CHECK(s->nullspace.cols() == 0);

  const Matrix sing = Matrix::from_rows(f, 2, {{q(1), q(2)}, {q(2), q(4)}});
  CHECK_FALSE(solve_linear(sing, {q(1), q(1)}));
  const auto t = solve_linear(sing, {q(1), q(2)});
  REQUIRE(t);
  CHECK(t->nullspace.cols() == 1);
  CHECK(is_zero(f, sing.apply(t->nullspace.column(0))));
}

TEST_CASE("solve_linear over F2 returns the full solution set") {
  const Field f = Field::prime(2);
  const Matrix a = Matrix::from_rows(f, 3, {{f.one(), f.one(), f.zero()}});
  const auto s = solve_linear(a, {f.one()});
  REQUIRE(s);
  CHECK(a.apply(s->particular) == Vec{f.one()});
  CHECK(s->nullspace.cols() == 2);
}

TEST_CASE("row reduction agrees with a naive rational elimination") {
  const Field f = Field::rationals();
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rank_target = 1 + rng() % 6;
    // product of 6 x r and r x 6 integer matrices, so rank <= r
    std::vector<std::vector<mpq_class>> l(6, std::vector<mpq_class>(rank_target)),
        r(rank_target, std::vector<mpq_class>(6));
    for (auto& row : l)
      for (auto& x : row) x = static_cast<long>(rng() % 11) - 5;
    for (auto& row : r)
      for (auto& x : row) x = mpq_class(static_cast<long>(rng() % 9) - 4, 1 + rng() % 3);
    std::vector<std::vector<mpq_class>> a(6, std::vector<mpq_class>(6, 0));
    Matrix m(f, 6, 6);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) {
        for (std::size_t k = 0; k < rank_target; ++k) a[i][j] += l[i][k] * r[k][j];
        a[i][j].canonicalize();
        m(i, j) = Scalar(a[i][j]);
      }
    const auto want = naive_rref(a);
    const RowEchelon got = row_reduce(m);
    REQUIRE(got.reduced.rows() == want.size());
    CHECK(rank(m) == want.size());
    for (std::size_t i = 0; i < want.size(); ++i)
      for (std::size_t j = 0; j < 6; ++j) CHECK(got.reduced(i, j).rational() == want[i][j]);
    const Matrix n = nullspace(m);
    CHECK(n.cols() == 6 - want.size());
    CHECK((m * n).is_zero());
  }
}

TEST_CASE("determinant matches the Leibniz expansion over F5") {
  const Field f = Field::prime(5);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix m(f, 4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = f.from_int(static_cast<std::int64_t>(rng() % 5));
    std::array<std::size_t, 4> perm{0, 1, 2, 3};
    Scalar det = f.zero();
    do {
      int inversions = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) inversions += perm[i] > perm[j];
      Scalar term = inversions % 2 ? f.neg(f.one()) : f.one();
      for (std::size_t i = 0; i < 4; ++i) term = f.mul(term, m(i, perm[i]));
      det = f.add(det, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(determinant(m) == det);
    CHECK(inverse(m).has_value() == !f.is_zero(det));
  }
}

TEST_CASE("row space membership and subspace coordinates") {
  const Field f = Field::prime(3);
  RowSpace rs(f, 3);
  rs.add_row({f.one(), f.from_int(2), f.zero()});
  rs.add_row({f.zero(), f.one(), f.one()});
  CHECK(rs.rank() == 2);
  CHECK(rs.contains({f.one(), f.zero(), f.one()}));
  CHECK_FALSE(rs.contains({f.zero(), f.zero(), f.one()}));

  const Subspace s(Matrix::from_columns(f, 3, {{f.one(), f.from_int(2), f.zero()}, {f.zero(), f.one(), f.one()}}));
  const Vec v = s.element({f.from_int(2), f.one()});
  CHECK(s.coords(v) == Vec{f.from_int(2), f.one()});
  CHECK_FALSE(s.try_coords({f.zero(), f.zero(), f.one()}));
}
