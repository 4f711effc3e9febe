#include "bisep/field.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace bisep {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

void trim(PolyFp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyFp poly_mod(PolyFp a, const PolyFp& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lead_inv = powmod(f.back(), p - 2, p);
  while (a.size() > df) {
    const std::uint64_t c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod(c, f[i], p)) % p;
    }
    trim(a);
  }
  return a;
}

PolyFp poly_mulmod(const PolyFp& a, const PolyFp& b, const PolyFp& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PolyFp r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  return poly_mod(std::move(r), f, p);
}

PolyFp poly_powmod(PolyFp base, std::uint64_t e, const PolyFp& f, std::uint64_t p) {
  PolyFp r{1};
  base = poly_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

PolyFp poly_gcd(PolyFp a, PolyFp b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyFp r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.rep_.index() != b.rep_.index()) return false;
  if (a.is_rational()) return a.rational() == b.rational();
  return a.residue() == b.residue();
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// Ben-Or: a monic f of degree k is irreducible iff gcd(x^{p^i} - x, f) = 1
// for every 1 <= i <= k/2.
bool is_irreducible(const PolyFp& monic, std::uint64_t p) {
  PolyFp f = monic;
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t k = f.size() - 1;
  if (k == 1) return true;
  if (f[0] == 0) return false;
  PolyFp h{0, 1};
  for (std::size_t i = 1; i <= k / 2; ++i) {
    h = poly_powmod(h, p, f, p);
    PolyFp g = h;
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = (g[1] + p - 1) % p;
    if (poly_gcd(f, g, p).size() > 1) return false;
  }
  return true;
}

Field Field::rationals() {
  auto d = std::make_shared<Desc>();
  d->kind = FieldKind::Rationals;
  return Field(std::move(d));
}

Field Field::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31) || !is_prime(p)) {
    throw Error(ErrorKind::InvalidField, "p = " + std::to_string(p) + " is not a prime below 2^31");
  }
  auto d = std::make_shared<Desc>();
  d->kind = FieldKind::Prime;
  d->p = p;
  d->k = 1;
  d->q = p;
  return Field(std::move(d));
}

Field Field::extension(std::uint64_t p, unsigned k, std::vector<std::uint64_t> modulus) {
  if (p >= (std::uint64_t{1} << 31) || !is_prime(p)) {
    throw Error(ErrorKind::InvalidField, "p = " + std::to_string(p) + " is not a prime below 2^31");
  }
  if (k < 1 || k > 8) throw Error(ErrorKind::InvalidField, "extension degree must be in [1, 8]");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (q > (std::uint64_t{1} << 62) / p) throw Error(ErrorKind::InvalidField, "p^k must be below 2^62");
    q *= p;
  }
  if (modulus.size() != k + 1 || modulus.back() != 1) {
    throw Error(ErrorKind::InvalidField, "modulus must be monic of degree k");
  }
  for (auto c : modulus) {
    if (c >= p) throw Error(ErrorKind::InvalidField, "modulus coefficient out of range");
  }
  if (!is_irreducible(modulus, p)) throw Error(ErrorKind::InvalidField, "modulus is reducible over F_p");
  if (k == 1) return prime(p);
  auto d = std::make_shared<Desc>();
  d->kind = FieldKind::Extension;
  d->p = p;
  d->k = k;
  d->q = q;
  d->modulus = std::move(modulus);
  return Field(std::move(d));
}

Field Field::extension(std::uint64_t p, unsigned k) {
  if (k == 1) return prime(p);
  if (!is_prime(p)) throw Error(ErrorKind::InvalidField, "p is not prime");
  std::uint64_t tail = 1;
  for (unsigned i = 0; i < k; ++i) tail *= p;
  for (std::uint64_t code = 0; code < tail; ++code) {
    std::vector<std::uint64_t> m(k + 1, 0);
    std::uint64_t c = code;
    for (unsigned i = 0; i < k; ++i) {
      m[i] = c % p;
      c /= p;
    }
    m[k] = 1;
    if (is_irreducible(m, p)) return extension(p, k, std::move(m));
  }
  throw Error(ErrorKind::InvalidField, "no irreducible polynomial found");
}

Scalar Field::zero() const {
  if (kind() == FieldKind::Rationals) return Scalar(mpq_class(0));
  return Scalar(std::uint64_t{0});
}

Scalar Field::one() const {
  if (kind() == FieldKind::Rationals) return Scalar(mpq_class(1));
  return Scalar(std::uint64_t{1});
}

Scalar Field::from_int(std::int64_t v) const {
  if (kind() == FieldKind::Rationals) return Scalar(mpq_class(static_cast<long>(v)));
  const auto p = static_cast<std::int64_t>(desc_->p);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return Scalar(static_cast<std::uint64_t>(r));
}

Scalar Field::element(std::uint64_t i) const {
  if (!is_finite() || i >= order()) throw Error(ErrorKind::BadParams, "element index out of range");
  return Scalar(i);
}

Scalar Field::embed_prime(std::uint64_t residue) const {
  if (!is_finite()) return Scalar(mpq_class(static_cast<unsigned long>(residue)));
  return Scalar(residue % desc_->p);
}

std::vector<std::uint64_t> Field::coefficients(const Scalar& a) const {
  std::vector<std::uint64_t> c(desc_->k, 0);
  std::uint64_t v = a.residue();
  for (unsigned i = 0; i < desc_->k; ++i) {
    c[i] = v % desc_->p;
    v /= desc_->p;
  }
  return c;
}

Scalar Field::from_coefficients(const std::vector<std::uint64_t>& c) const {
  std::uint64_t v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * desc_->p + (c[i] % desc_->p);
  return Scalar(v);
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  switch (kind()) {
    case FieldKind::Rationals: return Scalar(mpq_class(a.rational() + b.rational()));
    case FieldKind::Prime: return Scalar((a.residue() + b.residue()) % desc_->p);
    case FieldKind::Extension: {
      const std::uint64_t p = desc_->p;
      std::uint64_t x = a.residue(), y = b.residue(), r = 0, scale = 1;
      for (unsigned i = 0; i < desc_->k; ++i) {
        r += ((x % p + y % p) % p) * scale;
        x /= p;
        y /= p;
        scale *= p;
      }
      return Scalar(r);
    }
  }
  return {};
}

Scalar Field::neg(const Scalar& a) const {
  switch (kind()) {
    case FieldKind::Rationals: return Scalar(mpq_class(-a.rational()));
    case FieldKind::Prime: return Scalar((desc_->p - a.residue()) % desc_->p);
    case FieldKind::Extension: {
      const std::uint64_t p = desc_->p;
      std::uint64_t x = a.residue(), r = 0, scale = 1;
      for (unsigned i = 0; i < desc_->k; ++i) {
        r += ((p - x % p) % p) * scale;
        x /= p;
        scale *= p;
      }
      return Scalar(r);
    }
  }
  return {};
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  if (kind() == FieldKind::Rationals) return Scalar(mpq_class(a.rational() - b.rational()));
  if (kind() == FieldKind::Prime) return Scalar((a.residue() + desc_->p - b.residue()) % desc_->p);
  return add(a, neg(b));
}

Scalar Field::ext_mul(const Scalar& a, const Scalar& b) const {
  const std::uint64_t p = desc_->p;
  const unsigned k = desc_->k;
  std::array<std::uint64_t, 8> x{}, y{};
  std::array<std::uint64_t, 16> r{};
  std::uint64_t u = a.residue(), v = b.residue();
  for (unsigned i = 0; i < k; ++i) {
    x[i] = u % p;
    u /= p;
    y[i] = v % p;
    v /= p;
  }
  for (unsigned i = 0; i < k; ++i) {
    if (x[i] == 0) continue;
    for (unsigned j = 0; j < k; ++j) r[i + j] = (r[i + j] + mulmod(x[i], y[j], p)) % p;
  }
  const auto& m = desc_->modulus;
  for (unsigned d = 2 * k - 2; d >= k; --d) {
    const std::uint64_t c = r[d];
    if (c == 0) continue;
    r[d] = 0;
    for (unsigned i = 0; i < k; ++i) r[d - k + i] = (r[d - k + i] + p - mulmod(c, m[i], p)) % p;
  }
  std::uint64_t out = 0;
  for (unsigned i = k; i-- > 0;) out = out * p + r[i];
  return Scalar(out);
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  switch (kind()) {
    case FieldKind::Rationals: return Scalar(mpq_class(a.rational() * b.rational()));
    case FieldKind::Prime: return Scalar(mulmod(a.residue(), b.residue(), desc_->p));
    case FieldKind::Extension: return ext_mul(a, b);
  }
  return {};
}

Scalar Field::inv(const Scalar& a) const {
  if (is_zero(a)) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  switch (kind()) {
    case FieldKind::Rationals: return Scalar(mpq_class(1 / a.rational()));
    case FieldKind::Prime: return Scalar(powmod(a.residue(), desc_->p - 2, desc_->p));
    case FieldKind::Extension: {
      // a^(q-2)
      std::uint64_t e = desc_->q - 2;
      Scalar base = a, r = one();
      while (e) {
        if (e & 1) r = ext_mul(r, base);
        base = ext_mul(base, base);
        e >>= 1;
      }
      return r;
    }
  }
  return {};
}

Scalar Field::div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

bool Field::is_zero(const Scalar& a) const {
  if (kind() == FieldKind::Rationals) return sgn(a.rational()) == 0;
  return a.residue() == 0;
}

bool Field::is_one(const Scalar& a) const {
  if (kind() == FieldKind::Rationals) return a.rational() == 1;
  return a.residue() == 1;
}

std::string Field::to_string(const Scalar& a) const {
  switch (kind()) {
    case FieldKind::Rationals: return a.rational().get_str();
    case FieldKind::Prime: return std::to_string(a.residue());
    case FieldKind::Extension: {
      auto c = coefficients(a);
      std::string s = "[";
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(c[i]);
      }
      return s + "]";
    }
  }
  return {};
}

std::string Field::name() const {
  switch (kind()) {
    case FieldKind::Rationals: return "Q";
    case FieldKind::Prime: return "F" + std::to_string(desc_->p);
    case FieldKind::Extension: return "F" + std::to_string(desc_->p) + "^" + std::to_string(desc_->k);
  }
  return {};
}

bool operator==(const Field& a, const Field& b) {
  if (a.desc_ == b.desc_) return true;
  return a.desc_->kind == b.desc_->kind && a.desc_->p == b.desc_->p && a.desc_->k == b.desc_->k &&
         a.desc_->modulus == b.desc_->modulus;
}

namespace {
const Field& common(const FieldElement& a, const FieldElement& b) {
  if (a.field() != b.field()) {
    throw Error(ErrorKind::FieldMismatch, a.field().name() + " vs " + b.field().name());
  }
  return a.field();
}
}  // namespace

FieldElement FieldElement::inv() const { return {field_, field_.inv(value_)}; }
FieldElement FieldElement::operator-() const { return {field_, field_.neg(value_)}; }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  const auto& f = common(a, b);
  return {f, f.add(a.value_, b.value_)};
}
FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  const auto& f = common(a, b);
  return {f, f.sub(a.value_, b.value_)};
}
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  const auto& f = common(a, b);
  return {f, f.mul(a.value_, b.value_)};
}
FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  const auto& f = common(a, b);
  return {f, f.div(a.value_, b.value_)};
}
bool operator==(const FieldElement& a, const FieldElement& b) {
  common(a, b);
  return a.value_ == b.value_;
}

}  // namespace bisep
