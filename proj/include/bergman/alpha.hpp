#pragma once

#include "bergman/error.hpp"
#include "bergman/scalar.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace bergman {

/// The weight parameter of A²_α. Carries the double value and, when the
/// parameter came from a literal, its exact rational value as well.
class Alpha {
 public:
  /// A float-only parameter (no exact form available).
  explicit Alpha(double value) : value_(value), text_(format_double(value)) {}

  static Alpha rational(long numerator, long denominator);

  /// Parses `p/q` or a decimal literal (`0.5`, `-0.25`, `1e-2`). Both have an
  /// exact value; only the fraction syntax asks for exact mode by default.
  static Alpha parse(std::string_view text);

  double value() const { return value_; }
  const std::optional<Rational>& exact() const { return exact_; }
  bool is_fraction_literal() const { return fraction_literal_; }
  const std::string& text() const { return text_; }
  ScalarMode preferred_mode() const {
    return fraction_literal_ ? ScalarMode::ExactRational : ScalarMode::Float64;
  }

  /// Value in the requested real type. Throws ModeMismatch for a float-only
  /// parameter requested as a rational.
  template <typename Real>
  Real as() const {
    if constexpr (std::is_same_v<Real, Rational>) {
      if (!exact_) throw Error(ErrorCode::ModeMismatch, "alpha " + text_ + " has no exact rational form");
      return *exact_;
    } else {
      return static_cast<Real>(value_);
    }
  }

  /// α > −1, the admissible range.
  void validate() const;

  bool operator==(const Alpha& other) const;
  bool operator<(const Alpha& other) const;

 private:
  Alpha() = default;
  static std::string format_double(double v);

  double value_ = 0.0;
  std::optional<Rational> exact_;
  bool fraction_literal_ = false;
  std::string text_;
};

}  // namespace bergman
