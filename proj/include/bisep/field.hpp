#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "bisep/error.hpp"

namespace bisep {

enum class FieldKind { Rationals, Prime, Extension };

// A field element without its field. Finite-field elements are stored as a
// packed residue: for F_p the canonical representative in [0, p), for F_{p^k}
// the integer sum_i c_i p^i of the reduced polynomial's coefficients. The
// packing doubles as the canonical enumeration order of the field.
class Scalar {
 public:
  Scalar() : rep_(std::uint64_t{0}) {}
  explicit Scalar(std::uint64_t residue) : rep_(residue) {}
  explicit Scalar(mpq_class q) : rep_(std::move(q)) {}

  bool is_rational() const noexcept { return std::holds_alternative<mpq_class>(rep_); }
  std::uint64_t residue() const { return std::get<std::uint64_t>(rep_); }
  const mpq_class& rational() const { return std::get<mpq_class>(rep_); }

  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  std::variant<std::uint64_t, mpq_class> rep_;
};

using Vec = std::vector<Scalar>;

// Exact field: Q, F_p (p < 2^31, prime) or F_{p^k} = F_p[x]/(modulus) with
// k <= 8 and p^k < 2^62. Cheap to copy; the description is shared.
class Field {
 public:
  static Field rationals();
  static Field prime(std::uint64_t p);
  // `modulus` holds the monic modulus low-degree-first, length k + 1.
  static Field extension(std::uint64_t p, unsigned k, std::vector<std::uint64_t> modulus);
  // Uses the lowest monic irreducible of degree k in packed order.
  static Field extension(std::uint64_t p, unsigned k);

  FieldKind kind() const noexcept { return desc_->kind; }
  bool is_finite() const noexcept { return desc_->kind != FieldKind::Rationals; }
  std::uint64_t characteristic() const noexcept { return desc_->p; }
  unsigned degree() const noexcept { return desc_->k; }
  // Number of elements; 0 for Q.
  std::uint64_t order() const noexcept { return desc_->q; }
  const std::vector<std::uint64_t>& modulus() const noexcept { return desc_->modulus; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(std::int64_t v) const;
  // Finite fields only: the element with packed index `i` (< order()).
  Scalar element(std::uint64_t i) const;
  // Prime-subfield element embedded in this field (finite fields).
  Scalar embed_prime(std::uint64_t residue) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const;
  bool is_zero(const Scalar& a) const;
  bool is_one(const Scalar& a) const;
  bool equal(const Scalar& a, const Scalar& b) const { return a == b; }

  // Coefficients of an F_{p^k} element, low degree first (length k).
  std::vector<std::uint64_t> coefficients(const Scalar& a) const;
  Scalar from_coefficients(const std::vector<std::uint64_t>& c) const;

  std::string to_string(const Scalar& a) const;
  std::string name() const;

  friend bool operator==(const Field& a, const Field& b);
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

 private:
  struct Desc {
    FieldKind kind = FieldKind::Rationals;
    std::uint64_t p = 0;
    unsigned k = 1;
    std::uint64_t q = 0;
    std::vector<std::uint64_t> modulus;
  };
  explicit Field(std::shared_ptr<const Desc> d) : desc_(std::move(d)) {}

  Scalar ext_mul(const Scalar& a, const Scalar& b) const;

  std::shared_ptr<const Desc> desc_;
};

// An element bound to its field, for callers that want operator syntax and
// mismatch checking at the scalar level.
class FieldElement {
 public:
  FieldElement(Field f, Scalar v) : field_(std::move(f)), value_(std::move(v)) {}

  const Field& field() const noexcept { return field_; }
  const Scalar& value() const noexcept { return value_; }

  FieldElement inv() const;
  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend bool operator==(const FieldElement& a, const FieldElement& b);

  std::string to_string() const { return field_.to_string(value_); }

 private:
  Field field_;
  Scalar value_;
};

bool is_prime(std::uint64_t n);

// Polynomials over F_p, low degree first, trailing zeros trimmed.
using PolyFp = std::vector<std::uint64_t>;

bool is_irreducible(const PolyFp& monic, std::uint64_t p);

}  // namespace bisep
