#include "sidonkit/core.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <unordered_set>

namespace sidonkit {

namespace {

using i128 = __int128;

constexpr std::int64_t kI64Max = std::numeric_limits<std::int64_t>::max();
constexpr std::int64_t kI64Min = std::numeric_limits<std::int64_t>::min();

std::int64_t checked_narrow(i128 v) {
  if (v > kI64Max || v < kI64Min) {
    throw Error(Errc::kOverflowBudgetExceeded, "composition exceeds signed 64-bit range");
  }
  return static_cast<std::int64_t>(v);
}

std::int64_t mod_norm(i128 v, std::int64_t m) {
  i128 r = v % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod_u(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kUnsupportedMode: return "UnsupportedMode";
    case Errc::kDivisionByZero: return "DivisionByZero";
    case Errc::kOverflowBudgetExceeded: return "OverflowBudgetExceeded";
    case Errc::kAmbientMismatch: return "AmbientMismatch";
    case Errc::kMalformedInput: return "MalformedInput";
    case Errc::kNonCanonicalElement: return "NonCanonicalElement";
    case Errc::kDuplicateElement: return "DuplicateElement";
    case Errc::kCapExceeded: return "CapExceeded";
    case Errc::kVerificationFailed: return "VerificationFailed";
    case Errc::kBadShift: return "BadShift";
    case Errc::kBadOrder: return "BadOrder";
    case Errc::kEmptyCore: return "EmptyCore";
    case Errc::kPreconditionFailed: return "PreconditionFailed";
    case Errc::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), detail_(what) {}

std::string_view mode_name(CompositionMode mode) {
  switch (mode) {
    case CompositionMode::kDifference: return "difference";
    case CompositionMode::kSum: return "sum";
    case CompositionMode::kProduct: return "product";
    case CompositionMode::kRatio: return "ratio";
  }
  return "?";
}

CompositionMode parse_mode(std::string_view text) {
  if (text == "difference" || text == "diff") return CompositionMode::kDifference;
  if (text == "sum") return CompositionMode::kSum;
  if (text == "product" || text == "prod") return CompositionMode::kProduct;
  if (text == "ratio") return CompositionMode::kRatio;
  throw Error(Errc::kInvalidArgument, "unknown composition mode '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Primes and modular arithmetic

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  auto u = static_cast<std::uint64_t>(n);
  std::uint64_t d = u - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for all 64-bit integers.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL,
                          37ULL}) {
    std::uint64_t x = pow_mod_u(a, d, u);
    if (x == 1 || x == u - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, u);
      if (x == u - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  return static_cast<std::int64_t>(pow_mod_u(static_cast<std::uint64_t>(mod_norm(base, mod)),
                                             static_cast<std::uint64_t>(exp),
                                             static_cast<std::uint64_t>(mod)));
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t mod) {
  i128 old_r = mod_norm(a, mod), r = mod;
  i128 old_s = 1, s = 0;
  while (r != 0) {
    i128 q = old_r / r;
    i128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw Error(Errc::kDivisionByZero, "element is not invertible");
  return mod_norm(old_s, mod);
}

// ---------------------------------------------------------------------------
// AmbientSpec

AmbientSpec AmbientSpec::integers() { return {AmbientKind::kIntegers, 0}; }

AmbientSpec AmbientSpec::integers_mod(std::int64_t n) {
  if (n < 2) throw Error(Errc::kInvalidArgument, "modulus N must be at least 2");
  return {AmbientKind::kIntegersModN, n};
}

AmbientSpec AmbientSpec::prime_field(std::int64_t p) {
  if (!is_prime(p)) throw Error(Errc::kInvalidArgument, std::to_string(p) + " is not prime");
  return {AmbientKind::kPrimeField, p};
}

AmbientSpec AmbientSpec::prime_square_plane(std::int64_t p) {
  if (!is_prime(p)) throw Error(Errc::kInvalidArgument, std::to_string(p) + " is not prime");
  if (p > 3037000499LL) throw Error(Errc::kOverflowBudgetExceeded, "plane order exceeds 64 bits");
  return {AmbientKind::kPrimeSquarePlane, p};
}

bool AmbientSpec::supports(CompositionMode mode) const noexcept {
  switch (mode) {
    case CompositionMode::kDifference:
    case CompositionMode::kSum:
      return true;
    case CompositionMode::kProduct:
    case CompositionMode::kRatio:
      return kind_ == AmbientKind::kIntegers || kind_ == AmbientKind::kPrimeField;
  }
  return false;
}

std::int64_t AmbientSpec::order() const {
  switch (kind_) {
    case AmbientKind::kIntegers:
      throw Error(Errc::kInvalidArgument, "the integers have no finite order");
    case AmbientKind::kIntegersModN:
    case AmbientKind::kPrimeField:
      return modulus_;
    case AmbientKind::kPrimeSquarePlane:
      return modulus_ * modulus_;
  }
  return 0;
}

bool AmbientSpec::torsion_free_2() const noexcept {
  if (kind_ == AmbientKind::kIntegers) return true;
  return modulus_ % 2 == 1;
}

std::string AmbientSpec::name() const {
  switch (kind_) {
    case AmbientKind::kIntegers: return "integers";
    case AmbientKind::kIntegersModN: return "integers-mod-N(" + std::to_string(modulus_) + ")";
    case AmbientKind::kPrimeField: return "prime-field(" + std::to_string(modulus_) + ")";
    case AmbientKind::kPrimeSquarePlane:
      return "prime-square-plane(" + std::to_string(modulus_) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Elements

Fraction Fraction::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(Errc::kDivisionByZero, "zero denominator");
  if (num == kI64Min || den == kI64Min) {
    throw Error(Errc::kOverflowBudgetExceeded, "fraction component out of range");
  }
  std::int64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return {num, den};
}

std::string to_string(const Element& e, const AmbientSpec& ambient) {
  if (ambient.is_plane()) return "(" + std::to_string(e.x) + "," + std::to_string(e.y) + ")";
  return std::to_string(e.x);
}

bool is_canonical(const AmbientSpec& ambient, const Element& e) {
  const std::int64_t m = ambient.modulus();
  switch (ambient.kind()) {
    case AmbientKind::kIntegers: return e.y == 0;
    case AmbientKind::kIntegersModN:
    case AmbientKind::kPrimeField: return e.y == 0 && e.x >= 0 && e.x < m;
    case AmbientKind::kPrimeSquarePlane: return e.x >= 0 && e.x < m && e.y >= 0 && e.y < m;
  }
  return false;
}

Element canonicalize(const AmbientSpec& ambient, const Element& e) {
  const std::int64_t m = ambient.modulus();
  switch (ambient.kind()) {
    case AmbientKind::kIntegers: return {e.x, 0};
    case AmbientKind::kIntegersModN:
    case AmbientKind::kPrimeField: return {mod_norm(e.x, m), 0};
    case AmbientKind::kPrimeSquarePlane: return {mod_norm(e.x, m), mod_norm(e.y, m)};
  }
  return e;
}

Element additive_identity(const AmbientSpec&) { return {0, 0}; }

Element negate(const AmbientSpec& ambient, const Element& e) {
  if (ambient.kind() == AmbientKind::kIntegers) return {checked_narrow(-static_cast<i128>(e.x)), 0};
  return canonicalize(ambient, {-e.x, -e.y});
}

Element compose(const AmbientSpec& ambient, CompositionMode mode, const Element& x,
                const Element& y) {
  if (!ambient.supports(mode)) {
    throw Error(Errc::kUnsupportedMode,
                std::string(mode_name(mode)) + " is not defined on " + ambient.name());
  }
  const std::int64_t m = ambient.modulus();
  const i128 a = x.x, b = y.x;
  switch (ambient.kind()) {
    case AmbientKind::kIntegers:
      switch (mode) {
        case CompositionMode::kDifference: return {checked_narrow(a - b)};
        case CompositionMode::kSum: return {checked_narrow(a + b)};
        case CompositionMode::kProduct: return {checked_narrow(a * b)};
        case CompositionMode::kRatio: {
          if (y.x == 0) throw Error(Errc::kDivisionByZero, "ratio by zero");
          Fraction f = Fraction::make(x.x, y.x);
          return {f.num, f.den};
        }
      }
      break;
    case AmbientKind::kIntegersModN:
    case AmbientKind::kPrimeField:
      switch (mode) {
        case CompositionMode::kDifference: return {mod_norm(a - b, m)};
        case CompositionMode::kSum: return {mod_norm(a + b, m)};
        case CompositionMode::kProduct: return {mod_norm(a * b, m)};
        case CompositionMode::kRatio: {
          if (y.x == 0) throw Error(Errc::kDivisionByZero, "ratio by zero");
          return {mod_norm(a * mod_inverse(y.x, m), m)};
        }
      }
      break;
    case AmbientKind::kPrimeSquarePlane:
      if (mode == CompositionMode::kDifference) {
        return {mod_norm(a - b, m), mod_norm(static_cast<i128>(x.y) - y.y, m)};
      }
      return {mod_norm(a + b, m), mod_norm(static_cast<i128>(x.y) + y.y, m)};
  }
  throw Error(Errc::kUnsupportedMode, "unreachable composition");
}

// ---------------------------------------------------------------------------
// GroundSet

GroundSet::GroundSet(AmbientSpec ambient, std::vector<Element> elements, DuplicatePolicy policy,
                     std::optional<std::string> label)
    : ambient_(ambient), elements_(std::move(elements)), label_(std::move(label)) {
  for (const Element& e : elements_) {
    if (!is_canonical(ambient_, e)) {
      throw Error(Errc::kNonCanonicalElement,
                  to_string(e, ambient_) + " is not canonical in " + ambient_.name());
    }
  }
  std::sort(elements_.begin(), elements_.end());
  auto dup = std::adjacent_find(elements_.begin(), elements_.end());
  if (dup != elements_.end()) {
    if (policy == DuplicatePolicy::kReject) {
      throw Error(Errc::kDuplicateElement, "duplicate element " + to_string(*dup, ambient_));
    }
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  }
}

GroundSet GroundSet::integers(std::vector<std::int64_t> values) {
  std::vector<Element> e(values.begin(), values.end());
  return GroundSet(AmbientSpec::integers(), std::move(e));
}

GroundSet GroundSet::interval(std::int64_t lo, std::int64_t hi) {
  std::vector<Element> e;
  for (std::int64_t v = lo; v <= hi; ++v) e.emplace_back(v);
  return GroundSet(AmbientSpec::integers(), std::move(e));
}

bool GroundSet::contains(const Element& e) const {
  return std::binary_search(elements_.begin(), elements_.end(), e);
}

GroundSet GroundSet::with_elements(std::vector<Element> elements) const {
  return GroundSet(ambient_, std::move(elements));
}

bool GroundSet::is_subset_of(const GroundSet& other) const {
  return ambient_ == other.ambient_ &&
         std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                       elements_.end());
}

void require_same_ambient(const GroundSet& a, const GroundSet& b) {
  if (!(a.ambient() == b.ambient())) {
    throw Error(Errc::kAmbientMismatch, a.ambient().name() + " vs " + b.ambient().name());
  }
}

GroundSet set_compose(const GroundSet& a, const GroundSet& b, CompositionMode mode,
                      bool skip_non_invertible) {
  require_same_ambient(a, b);
  const AmbientSpec& amb = a.ambient();
  if (!amb.supports(mode)) {
    throw Error(Errc::kUnsupportedMode,
                std::string(mode_name(mode)) + " is not defined on " + amb.name());
  }
  if (mode == CompositionMode::kRatio && amb.kind() == AmbientKind::kIntegers) {
    throw Error(Errc::kUnsupportedMode,
                "integer ratio sets are fractions; use a ratio histogram instead");
  }
  std::vector<Element> out;
  out.reserve(a.size() * b.size());
  for (const Element& x : a.elements()) {
    for (const Element& y : b.elements()) {
      if (mode == CompositionMode::kRatio && y.x == 0) {
        if (skip_non_invertible) continue;
        throw Error(Errc::kDivisionByZero, "ratio by zero in set composition");
      }
      out.push_back(compose(amb, mode, x, y));
    }
  }
  return GroundSet(amb, std::move(out));
}

GroundSet affine_image(const GroundSet& a, std::int64_t scale, const Element& shift) {
  const AmbientSpec& amb = a.ambient();
  if (!is_canonical(amb, shift)) {
    throw Error(Errc::kNonCanonicalElement, "shift is not canonical in " + amb.name());
  }
  if (amb.kind() == AmbientKind::kIntegers) {
    if (scale == 0) throw Error(Errc::kInvalidArgument, "scale must be nonzero");
  } else if (mod_norm(scale, amb.modulus()) == 0) {
    throw Error(Errc::kInvalidArgument, "scale must be nonzero in the ambient");
  }
  std::vector<Element> out;
  out.reserve(a.size());
  for (const Element& e : a.elements()) {
    if (amb.kind() == AmbientKind::kIntegers) {
      out.emplace_back(checked_narrow(static_cast<i128>(scale) * e.x + shift.x));
    } else {
      const std::int64_t m = amb.modulus();
      Element s{mod_norm(static_cast<i128>(scale) * e.x, m),
                amb.is_plane() ? mod_norm(static_cast<i128>(scale) * e.y, m) : 0};
      out.push_back(compose(amb, CompositionMode::kSum, s, shift));
    }
  }
  return GroundSet(amb, std::move(out));
}

GroundSet translate(const GroundSet& a, const Element& shift) {
  std::vector<Element> out;
  out.reserve(a.size());
  for (const Element& e : a.elements()) {
    out.push_back(compose(a.ambient(), CompositionMode::kSum, e, shift));
  }
  return GroundSet(a.ambient(), std::move(out));
}

GroundSet set_intersection(const GroundSet& a, const GroundSet& b) {
  require_same_ambient(a, b);
  std::vector<Element> out;
  std::set_intersection(a.vector().begin(), a.vector().end(), b.vector().begin(),
                        b.vector().end(), std::back_inserter(out));
  return GroundSet(a.ambient(), std::move(out));
}

GroundSet set_union(const GroundSet& a, const GroundSet& b) {
  require_same_ambient(a, b);
  std::vector<Element> out;
  std::set_union(a.vector().begin(), a.vector().end(), b.vector().begin(), b.vector().end(),
                 std::back_inserter(out));
  return GroundSet(a.ambient(), std::move(out));
}

std::size_t intersection_size(const GroundSet& a, std::span<const Element> shifts) {
  std::size_t count = 0;
  for (const Element& e : a.elements()) {
    bool in_all = true;
    for (const Element& s : shifts) {
      // e ∈ A + s  ⇔  e − s ∈ A
      if (!a.contains(compose(a.ambient(), CompositionMode::kDifference, e, s))) {
        in_all = false;
        break;
      }
    }
    if (in_all) ++count;
  }
  return count;
}

}  // namespace sidonkit
