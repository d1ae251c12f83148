#pragma once

#include "bergman/weights.hpp"

#include <memory>
#include <optional>
#include <random>

namespace bergman {

/// A finite-dimensional coordinate space with a diagonal positive metric.
///
/// The usual instance is the truncated Bergman space V_D = span{z⁰,…,z^{D−1}}
/// with metric diag(ω_0,…,ω_{D−1}); coordinates are raw monomial
/// coefficients. Coordinate spaces of subspaces (metric = squared norms of an
/// orthogonal basis) use the same type, which lets every linear map carry its
/// metrics on both sides.
template <BergmanScalar Scalar>
class TruncatedSpace {
 public:
  using Real = RealOf<Scalar>;

  explicit TruncatedSpace(const WeightSequence<Real>& weights)
      : metric_(std::make_shared<const Vec<Real>>(weights.values())), alpha_(weights.params().alpha) {}

  /// V_dim for the weight parameter α.
  static TruncatedSpace monomial(const Alpha& alpha, Index dim) {
    return TruncatedSpace(std::make_shared<const Vec<Real>>(detail::weight_values<Real>(alpha, dim)), alpha);
  }

  /// A coordinate space with an explicit positive diagonal metric.
  static TruncatedSpace coordinate(Vec<Real> metric) {
    return TruncatedSpace(std::make_shared<const Vec<Real>>(std::move(metric)), std::nullopt);
  }

  Index dim() const { return metric_->size(); }
  const Vec<Real>& metric() const { return *metric_; }
  const Real& weight(Index n) const { return (*metric_)(n); }
  const std::optional<Alpha>& alpha() const { return alpha_; }
  bool is_monomial() const { return alpha_.has_value(); }

  /// The same weighted monomial space at another truncation level.
  TruncatedSpace resized(Index dim) const {
    if (!alpha_) throw Error(ErrorCode::DimensionMismatch, "only monomial spaces can be resized");
    if (dim == this->dim()) return *this;
    if (dim < this->dim())
      return TruncatedSpace(std::make_shared<const Vec<Real>>(metric_->head(dim)), alpha_);
    return monomial(*alpha_, dim);
  }

  Vec<Scalar> zero() const { return Vec<Scalar>::Zero(dim()); }
  Vec<Scalar> unit(Index n) const { return Vec<Scalar>::Unit(dim(), n); }

  bool operator==(const TruncatedSpace& other) const {
    if (metric_ == other.metric_) return true;
    if (dim() != other.dim()) return false;
    for (Index i = 0; i < dim(); ++i)
      if ((*metric_)(i) != other.metric()(i)) return false;
    return true;
  }

 private:
  TruncatedSpace(std::shared_ptr<const Vec<Real>> metric, std::optional<Alpha> alpha)
      : metric_(std::move(metric)), alpha_(std::move(alpha)) {}

  std::shared_ptr<const Vec<Real>> metric_;
  std::optional<Alpha> alpha_;
};

/// A coefficient vector a_0 … a_{D−1} bound to its ambient space.
template <BergmanScalar Scalar>
class CoefficientVector {
 public:
  CoefficientVector(TruncatedSpace<Scalar> space, Vec<Scalar> coeffs)
      : space_(std::move(space)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != space_.dim())
      throw Error(ErrorCode::DimensionMismatch, "coefficient count does not match ambient dimension");
  }

  static CoefficientVector monomial(const TruncatedSpace<Scalar>& space, Index n) {
    return CoefficientVector(space, space.unit(n));
  }

  const TruncatedSpace<Scalar>& space() const { return space_; }
  const Vec<Scalar>& coeffs() const { return coeffs_; }
  Index size() const { return coeffs_.size(); }

 private:
  TruncatedSpace<Scalar> space_;
  Vec<Scalar> coeffs_;
};

/// Σ ω_n a_n conj(b_n) on raw coefficient expressions.
template <BergmanScalar Scalar, typename DerivedA, typename DerivedB>
Scalar inner(const TruncatedSpace<Scalar>& space, const Eigen::MatrixBase<DerivedA>& a,
             const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != space.dim() || b.size() != space.dim())
    throw Error(ErrorCode::DimensionMismatch, "vector length does not match ambient dimension");
  Scalar s(0);
  for (Index n = 0; n < space.dim(); ++n) {
    if constexpr (is_exact_v<Scalar>) {
      if (!is_zero(a(n)) && !is_zero(b(n))) s += space.weight(n) * a(n) * b(n);
    }
    else
      s += space.weight(n) * a(n) * std::conj(b(n));
  }
  return s;
}

template <BergmanScalar Scalar>
Scalar inner(const CoefficientVector<Scalar>& f, const CoefficientVector<Scalar>& g) {
  if (!(f.space() == g.space())) throw Error(ErrorCode::AmbientMismatch, "inner product across different spaces");
  return inner(f.space(), f.coeffs(), g.coeffs());
}

/// ‖v‖² in the metric, exact in rational mode.
template <BergmanScalar Scalar, typename Derived>
RealOf<Scalar> squared_norm(const TruncatedSpace<Scalar>& space, const Eigen::MatrixBase<Derived>& v) {
  RealOf<Scalar> s(0);
  for (Index n = 0; n < space.dim(); ++n) {
    if constexpr (is_exact_v<Scalar>) {
      if (!is_zero(v(n))) s += space.weight(n) * v(n) * v(n);
    }
    else
      s += space.weight(n) * std::norm(v(n));
  }
  return s;
}

template <BergmanScalar Scalar>
RealOf<Scalar> squared_norm(const CoefficientVector<Scalar>& f) {
  return squared_norm(f.space(), f.coeffs());
}

template <BergmanScalar Scalar, typename Derived>
double norm(const TruncatedSpace<Scalar>& space, const Eigen::MatrixBase<Derived>& v) {
  return std::sqrt(to_double(squared_norm(space, v)));
}

template <BergmanScalar Scalar>
double norm(const CoefficientVector<Scalar>& f) {
  return norm(f.space(), f.coeffs());
}

/// Deterministic pseudo-random coefficients.
///
/// Float mode: real and imaginary parts independently uniform on [−1, 1].
/// Exact mode: p/q with p uniform on [−9, 9] and q uniform on [1, 9].
template <BergmanScalar Scalar>
Vec<Scalar> random_coeffs(Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Vec<Scalar> v(dim);
  if constexpr (is_exact_v<Scalar>) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
    for (Index i = 0; i < dim; ++i) {
      const int p = num(rng);
      v(i) = Rational(p, den(rng));
    }
  } else {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (Index i = 0; i < dim; ++i) {
      const double re = u(rng);
      v(i) = Complex(re, u(rng));
    }
  }
  return v;
}

template <BergmanScalar Scalar>
CoefficientVector<Scalar> random_vector(const TruncatedSpace<Scalar>& space, std::uint64_t seed) {
  return CoefficientVector<Scalar>(space, random_coeffs<Scalar>(space.dim(), seed));
}

/// Mixes a base seed with a sample index (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace bergman
