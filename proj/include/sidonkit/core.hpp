#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sidonkit {

enum class Errc {
  kUnsupportedMode,
  kDivisionByZero,
  kOverflowBudgetExceeded,
  kAmbientMismatch,
  kMalformedInput,
  kNonCanonicalElement,
  kDuplicateElement,
  kCapExceeded,
  kVerificationFailed,
  kBadShift,
  kBadOrder,
  kEmptyCore,
  kPreconditionFailed,
  kInvalidArgument,
};

std::string_view errc_name(Errc code);

// Every library failure is reported through this type; `code()` selects the
// CLI exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }
  // message without the code prefix
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

enum class AmbientKind { kIntegers, kIntegersModN, kPrimeField, kPrimeSquarePlane };

enum class CompositionMode { kDifference, kSum, kProduct, kRatio };

std::string_view mode_name(CompositionMode mode);
CompositionMode parse_mode(std::string_view text);

// Ambient abelian group (or ring, for product/ratio). `modulus` is N for
// integers-mod-N and p for the prime kinds; unused for the integers.
class AmbientSpec {
 public:
  static AmbientSpec integers();
  static AmbientSpec integers_mod(std::int64_t n);
  static AmbientSpec prime_field(std::int64_t p);
  static AmbientSpec prime_square_plane(std::int64_t p);

  AmbientKind kind() const noexcept { return kind_; }
  std::int64_t modulus() const noexcept { return modulus_; }
  bool is_plane() const noexcept { return kind_ == AmbientKind::kPrimeSquarePlane; }
  bool is_finite() const noexcept { return kind_ != AmbientKind::kIntegers; }
  bool supports(CompositionMode mode) const noexcept;
  // Group order for finite ambients (p^2 for the plane).
  std::int64_t order() const;
  // True iff the group has no element of order two.
  bool torsion_free_2() const noexcept;

  std::string name() const;

  friend bool operator==(const AmbientSpec&, const AmbientSpec&) = default;

 private:
  AmbientSpec(AmbientKind kind, std::int64_t modulus) : kind_(kind), modulus_(modulus) {}
  AmbientKind kind_ = AmbientKind::kIntegers;
  std::int64_t modulus_ = 0;
};

// A group element. Scalar kinds use `x` only and keep `y == 0`; the plane
// uses both coordinates. Ordering is lexicographic.
struct Element {
  std::int64_t x = 0;
  std::int64_t y = 0;

  constexpr Element() = default;
  constexpr Element(std::int64_t v) : x(v) {}  // NOLINT: scalars convert implicitly
  constexpr Element(std::int64_t a, std::int64_t b) : x(a), y(b) {}

  friend constexpr auto operator<=>(const Element&, const Element&) = default;
};

// Reduced fraction with positive denominator; the value type of integer
// ratio histograms.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction make(std::int64_t num, std::int64_t den);
  friend constexpr auto operator<=>(const Fraction&, const Fraction&) = default;
};

std::string to_string(const Element& e, const AmbientSpec& ambient);

bool is_canonical(const AmbientSpec& ambient, const Element& e);
Element canonicalize(const AmbientSpec& ambient, const Element& e);

// Group identity of the additive structure and of the multiplicative one.
Element additive_identity(const AmbientSpec& ambient);
Element negate(const AmbientSpec& ambient, const Element& e);

bool is_prime(std::int64_t n);
std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod);
std::int64_t mod_inverse(std::int64_t a, std::int64_t mod);

// x - y, x + y, x * y or x / y in the ambient. For ratio over the integers
// the result is a reduced fraction packed as (num, den) into an Element.
Element compose(const AmbientSpec& ambient, CompositionMode mode, const Element& x,
                const Element& y);

enum class DuplicatePolicy { kReject, kDedupe };

class GroundSet {
 public:
  GroundSet() = default;
  // Validates canonicity; sorts; duplicates follow `policy`.
  GroundSet(AmbientSpec ambient, std::vector<Element> elements,
            DuplicatePolicy policy = DuplicatePolicy::kDedupe,
            std::optional<std::string> label = std::nullopt);

  static GroundSet integers(std::vector<std::int64_t> values);
  static GroundSet interval(std::int64_t lo, std::int64_t hi);

  const AmbientSpec& ambient() const noexcept { return ambient_; }
  std::span<const Element> elements() const noexcept { return elements_; }
  const std::vector<Element>& vector() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  const Element& operator[](std::size_t i) const { return elements_[i]; }
  bool contains(const Element& e) const;
  const std::optional<std::string>& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  GroundSet with_elements(std::vector<Element> elements) const;
  bool is_subset_of(const GroundSet& other) const;

  friend bool operator==(const GroundSet& a, const GroundSet& b) {
    return a.ambient_ == b.ambient_ && a.elements_ == b.elements_;
  }

 private:
  AmbientSpec ambient_ = AmbientSpec::integers();
  std::vector<Element> elements_;
  std::optional<std::string> label_;
};

void require_same_ambient(const GroundSet& a, const GroundSet& b);

GroundSet set_compose(const GroundSet& a, const GroundSet& b, CompositionMode mode,
                      bool skip_non_invertible = false);

// {scale * a + shift}. The plane scales both coordinates by the scalar.
GroundSet affine_image(const GroundSet& a, std::int64_t scale, const Element& shift);

GroundSet translate(const GroundSet& a, const Element& shift);
GroundSet set_intersection(const GroundSet& a, const GroundSet& b);
GroundSet set_union(const GroundSet& a, const GroundSet& b);

// |A ∩ (A + s_1) ∩ ... ∩ (A + s_m)|.
std::size_t intersection_size(const GroundSet& a, std::span<const Element> shifts);

}  // namespace sidonkit
