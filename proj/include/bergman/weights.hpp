#pragma once

#include "bergman/alpha.hpp"
#include "bergman/error.hpp"
#include "bergman/scalar.hpp"

#include <optional>

namespace bergman {

/// Parameters of one truncated problem: weight α, shift multiplicity N and
/// truncation dimension D.
struct WeightParams {
  Alpha alpha{0.0};
  int N = 1;
  Index D = 2;

  /// α > −1, N ≥ 1, D ≥ N + 1.
  void validate() const {
    alpha.validate();
    if (N < 1) throw Error(ErrorCode::InvalidParams, "N must be positive");
    if (D < N + 1) throw Error(ErrorCode::InvalidParams, "D must be at least N + 1");
  }
};

/// A single-coefficient perturbation C_{N,α,n} += delta, used to check that
/// the verification suite is not vacuous.
struct CoeffPerturbation {
  Index n = 0;
  double delta = 0.0;
};

namespace detail {

inline void require_alpha(const Alpha& alpha) { alpha.validate(); }

// (n+1)/(n+2+α), the one-step ratio ω_{n+1}/ω_n.
template <typename Real>
Real step_ratio(const Alpha& alpha, Index n) {
  if constexpr (std::is_same_v<Real, Rational>) {
    return Rational(n + 1) / (Rational(n + 2) + alpha.as<Rational>());
  } else {
    const long double a = alpha.value();
    return static_cast<Real>(static_cast<long double>(n + 1) / (static_cast<long double>(n + 2) + a));
  }
}

/// ω_0 … ω_{count−1} by the multiplicative recurrence. The float path
/// accumulates in extended precision and rounds once per entry.
template <typename Real>
Vec<Real> weight_values(const Alpha& alpha, Index count) {
  require_alpha(alpha);
  Vec<Real> w(count);
  if (count == 0) return w;
  if constexpr (std::is_same_v<Real, Rational>) {
    const Rational a = alpha.as<Rational>();
    w(0) = 1;
    for (Index n = 0; n + 1 < count; ++n) w(n + 1) = w(n) * Rational(n + 1) / (Rational(n + 2) + a);
  } else {
    const long double a = alpha.value();
    long double acc = 1.0L;
    w(0) = 1.0;
    for (Index n = 0; n + 1 < count; ++n) {
      acc *= static_cast<long double>(n + 1) / (static_cast<long double>(n + 2) + a);
      w(n + 1) = static_cast<Real>(acc);
    }
  }
  return w;
}

}  // namespace detail

/// The weights ω_n = n!Γ(2+α)/Γ(n+2+α) of A²_α at one truncation level.
template <typename Real>
class WeightSequence {
 public:
  explicit WeightSequence(const WeightParams& params)
      : params_((params.validate(), params)), values_(detail::weight_values<Real>(params.alpha, params.D)) {}

  const WeightParams& params() const { return params_; }
  const Vec<Real>& values() const { return values_; }
  const Real& operator[](Index n) const { return values_(n); }
  Index size() const { return values_.size(); }
  static constexpr ScalarMode mode() {
    return std::is_same_v<Real, Rational> ? ScalarMode::ExactRational : ScalarMode::Float64;
  }

 private:
  WeightParams params_;
  Vec<Real> values_;
};

template <typename Real>
WeightSequence<Real> weight_sequence(const WeightParams& params) {
  return WeightSequence<Real>(params);
}

/// C_{N,α,n} = ∏_{i=1}^{N} (n+i)/(n+i+1+α), which equals ω_{n+N}/ω_n.
template <typename Real>
Real shift_coeff(int N, const Alpha& alpha, Index n) {
  detail::require_alpha(alpha);
  if (N < 1 || n < 0) throw Error(ErrorCode::InvalidParams, "shift_coeff needs N >= 1 and n >= 0");
  if constexpr (std::is_same_v<Real, Rational>) {
    Rational c(1);
    for (int i = 0; i < N; ++i) c *= detail::step_ratio<Rational>(alpha, n + i);
    return c;
  } else {
    long double c = 1.0L;
    for (int i = 0; i < N; ++i) c *= detail::step_ratio<long double>(alpha, n + i);
    return static_cast<Real>(c);
  }
}

/// C^{(m)}_{N,α,n} = ∏_{j<m} 1/C_{N,α,n+jN} = ω_n/ω_{n+mN}: the factor that
/// the m-fold power of A applies to the degree-n coefficient.
template <typename Real>
Real iterated_coeff(int N, const Alpha& alpha, Index n, int m) {
  if (m < 1) throw Error(ErrorCode::InvalidParams, "iterated_coeff needs m >= 1");
  Real c(1);
  for (int j = 0; j < m; ++j) c /= shift_coeff<Real>(N, alpha, n + static_cast<Index>(j) * N);
  return c;
}

/// (3+α)^{−N}, the lower bound for ‖S f‖²/‖f‖².
template <typename Real>
Real lower_bound(int N, const Alpha& alpha) {
  detail::require_alpha(alpha);
  if (N < 1) throw Error(ErrorCode::InvalidParams, "lower_bound needs N >= 1");
  const Real base = Real(3) + alpha.as<Real>();
  Real r(1);
  for (int i = 0; i < N; ++i) r /= base;
  return r;
}

/// C_{N,α,0} … C_{N,α,count−1}, optionally with one entry perturbed.
template <typename Real>
Vec<Real> coeff_table(int N, const Alpha& alpha, Index count,
                      const std::optional<CoeffPerturbation>& perturbation = std::nullopt) {
  Vec<Real> c(count);
  for (Index n = 0; n < count; ++n) c(n) = shift_coeff<Real>(N, alpha, n);
  if (perturbation && perturbation->n >= 0 && perturbation->n < count) c(perturbation->n) += Real(perturbation->delta);
  return c;
}

}  // namespace bergman
