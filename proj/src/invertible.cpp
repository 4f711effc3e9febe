#include "bisep/invertible.hpp"

#include <cstdlib>

namespace bisep {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

std::uint64_t default_budget() {
  if (const char* s = std::getenv("BISEP_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return v;
  }
  return kDefaultBudget;
}

std::uint64_t bounded_pow(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < b; ++i) {
    if (a != 0 && r > cap / a) return cap + 1;
    r *= a;
    if (r > cap) return cap + 1;
  }
  return r;
}

namespace {

Matrix combination(const Field& f, const std::vector<Matrix>& basis, const Vec& c) {
  Matrix m(f, basis[0].rows(), basis[0].cols());
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!f.is_zero(c[i])) m = m + basis[i].scaled(c[i]);
  return m;
}

// Grid {g(0), ..., g(n)}^d in counter order.
template <class Elem>
bool grid_search(const Field& f, const std::vector<Matrix>& basis, std::size_t n, Elem elem, Vec& found,
                 std::uint64_t& states) {
  const std::size_t d = basis.size();
  std::vector<std::size_t> digit(d, 0);
  Vec c(d, elem(0));
  while (true) {
    ++states;
    if (!f.is_zero(determinant(combination(f, basis, c)))) {
      found = c;
      return true;
    }
    std::size_t i = 0;
    while (i < d) {
      if (++digit[i] <= n) {
        c[i] = elem(digit[i]);
        break;
      }
      digit[i] = 0;
      c[i] = elem(0);
      ++i;
    }
    if (i == d) return false;
  }
}

}  // namespace

InvertibleSearch find_invertible(const Field& f, const std::vector<Matrix>& basis, std::uint64_t budget) {
  InvertibleSearch res;
  if (basis.empty()) {
    res.verdict = Verdict::False;
    res.method = "empty";
    return res;
  }
  const std::size_t n = basis[0].rows();
  for (const auto& b : basis)
    if (b.rows() != n || b.cols() != n) throw Error(ErrorKind::DimensionMismatch, "invertible search needs square maps");
  const std::size_t d = basis.size();
  if (n == 0) {
    res.verdict = Verdict::True;
    res.coeffs = zero_vec(f, d);
    res.method = "empty";
    return res;
  }

  if (f.is_finite() && bounded_pow(f.order(), d, budget) <= budget) {
    res.method = "exhaustive";
    bool hit = false;
    res.states = enumerate_coefficients(f, d, [&](const Vec& c) {
      if (f.is_zero(determinant(combination(f, basis, c)))) return false;
      res.coeffs = c;
      hit = true;
      return true;
    });
    res.verdict = hit ? Verdict::True : Verdict::False;
    return res;
  }

  const std::uint64_t grid = bounded_pow(n + 1, d, budget);
  if (grid > budget) {
    res.reason = "grid of " + std::to_string(n + 1) + "^" + std::to_string(d) + " points exceeds budget " +
                 std::to_string(budget);
    res.method = "budget";
    return res;
  }

  if (!f.is_finite() || f.order() > n) {
    res.method = "grid";
    auto elem = [&](std::size_t i) { return f.is_finite() ? f.element(i) : f.from_int(static_cast<std::int64_t>(i)); };
    const bool hit = grid_search(f, basis, n, elem, res.coeffs, res.states);
    res.verdict = hit ? Verdict::True : Verdict::False;
    return res;
  }

  if (f.kind() != FieldKind::Prime) {
    res.method = "budget";
    res.reason = "small extension field beyond exhaustive budget";
    return res;
  }

  // Prime field with p <= n: certify det != 0 over a larger field first.
  const std::uint64_t p = f.characteristic();
  unsigned k = 2;
  std::uint64_t pk = p * p;
  while (pk <= n && k < 8) {
    ++k;
    pk *= p;
  }
  if (pk <= n) {
    res.method = "budget";
    res.reason = "no extension of degree <= 8 exceeds the matrix size";
    return res;
  }
  const Field big = Field::extension(p, k);
  std::vector<Matrix> lifted;
  for (const auto& b : basis) {
    Matrix m(big, n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = big.embed_prime(b(r, c).residue());
    lifted.push_back(std::move(m));
  }
  Vec ignored;
  if (!grid_search(big, lifted, n, [&](std::size_t i) { return big.element(i); }, ignored, res.states)) {
    res.verdict = Verdict::False;
    res.method = "extension-grid";
    return res;
  }
  // det is not identically zero; look for an F_p point within what is left.
  const std::uint64_t left = budget > res.states ? budget - res.states : 0;
  std::uint64_t tried = 0;
  bool hit = false;
  enumerate_coefficients(f, d, [&](const Vec& c) {
    if (++tried > left) return true;
    if (f.is_zero(determinant(combination(f, basis, c)))) return false;
    res.coeffs = c;
    hit = true;
    return true;
  });
  res.states += tried;
  if (hit) {
    res.verdict = Verdict::True;
    res.method = "extension-grid+search";
  } else {
    res.method = "budget";
    res.reason = "determinant not identically zero but no invertible point over the prime field within budget " +
                 std::to_string(budget);
  }
  return res;
}

}  // namespace bisep
