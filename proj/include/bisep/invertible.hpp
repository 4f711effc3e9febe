#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bisep/matrix.hpp"

namespace bisep {

enum class Verdict { True, False, Unknown };
std::string to_string(Verdict v);

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;
// BISEP_BUDGET from the environment, else kDefaultBudget.
std::uint64_t default_budget();

// Checked a^b, saturating at `cap + 1` when it would exceed `cap`.
std::uint64_t bounded_pow(std::uint64_t a, std::uint64_t b, std::uint64_t cap);

// Does some linear combination of the square matrices `basis` have nonzero
// determinant? Strategy by field:
//   finite, q^d <= budget      exhaustive, counter order (coefficient of
//                              basis i is digit i, least significant first)
//   q > n, (n+1)^d <= budget   grid {0..n}^d: a nonzero polynomial of degree
//                              <= n cannot vanish on it
//   prime q <= n               the same grid inside F_{q^k} with q^k > n; all
//                              zero there means det is identically zero.
//                              Otherwise F_q points are tried within budget.
//   Q                          grid {0..n}^d within budget
// Anything else is Unknown with the reason recorded.
struct InvertibleSearch {
  Verdict verdict = Verdict::Unknown;
  Vec coeffs;          // when True
  std::string method;  // "exhaustive", "grid", "extension-grid", ...
  std::string reason;  // when Unknown
  std::uint64_t states = 0;
};
InvertibleSearch find_invertible(const Field& f, const std::vector<Matrix>& basis, std::uint64_t budget);

// Calls `visit` with every coefficient vector of F_q^d in counter order until
// it returns true. Returns the number of vectors visited.
template <class Visit>
std::uint64_t enumerate_coefficients(const Field& f, std::size_t d, Visit&& visit) {
  std::vector<std::uint64_t> digit(d, 0);
  Vec c(d, f.zero());
  std::uint64_t count = 0;
  while (true) {
    ++count;
    if (visit(c)) return count;
    std::size_t i = 0;
    while (i < d) {
      if (++digit[i] < f.order()) {
        c[i] = f.element(digit[i]);
        break;
      }
      digit[i] = 0;
      c[i] = f.zero();
      ++i;
    }
    if (i == d) return count;
  }
}

}  // namespace bisep
