#pragma once

#include "bergman/subspace.hpp"

namespace bergman {

/// Condition-number ceiling for inverting a non-diagonal T*T.
inline constexpr double kGramConditionLimit = 1e12;

/// A linear map between two coordinate spaces, stored as the matrix of its
/// action on coordinates. Domain and codomain carry their metrics, so the
/// adjoint is always the metric adjoint.
template <BergmanScalar Scalar>
class LinearMap {
 public:
  LinearMap(TruncatedSpace<Scalar> domain, TruncatedSpace<Scalar> codomain, Mat<Scalar> matrix)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != codomain_.dim() || matrix_.cols() != domain_.dim())
      throw Error(ErrorCode::DimensionMismatch, "matrix shape does not match domain/codomain");
  }

  const TruncatedSpace<Scalar>& domain() const { return domain_; }
  const TruncatedSpace<Scalar>& codomain() const { return codomain_; }
  const Mat<Scalar>& matrix() const { return matrix_; }

  template <typename Derived>
  Vec<Scalar> operator()(const Eigen::MatrixBase<Derived>& v) const {
    if (v.size() != domain_.dim()) throw Error(ErrorCode::DimensionMismatch, "vector does not fit map domain");
    return matrix_ * v;
  }

 private:
  TruncatedSpace<Scalar> domain_;
  TruncatedSpace<Scalar> codomain_;
  Mat<Scalar> matrix_;
};

template <BergmanScalar Scalar>
LinearMap<Scalar> identity(const TruncatedSpace<Scalar>& space) {
  return LinearMap<Scalar>(space, space, Mat<Scalar>::Identity(space.dim(), space.dim()));
}

/// M_{z^N}: V_d → V_{d+N}, z^n ↦ z^{n+N}. No truncation loss.
template <BergmanScalar Scalar>
LinearMap<Scalar> shift(const TruncatedSpace<Scalar>& domain, const TruncatedSpace<Scalar>& codomain, int N) {
  if (N < 1 || codomain.dim() != domain.dim() + N || !(codomain.resized(domain.dim()) == domain))
    throw Error(ErrorCode::DimensionMismatch, "shift needs codomain = V_{d+N} over the same weights");
  Mat<Scalar> m = Mat<Scalar>::Zero(codomain.dim(), domain.dim());
  for (Index n = 0; n < domain.dim(); ++n) m(n + N, n) = Scalar(1);
  return LinearMap<Scalar>(domain, codomain, std::move(m));
}

/// The explicit adjoint formula b_{N+n} ↦ C_{N,α,n} b_{N+n} at degree n,
/// taking the coefficients C from `coeffs` (length ≥ codomain dim).
template <BergmanScalar Scalar>
LinearMap<Scalar> shift_adjoint_from(const TruncatedSpace<Scalar>& domain, const TruncatedSpace<Scalar>& codomain,
                                     int N, const Vec<RealOf<Scalar>>& coeffs) {
  if (N < 1 || domain.dim() != codomain.dim() + N || !(domain.resized(codomain.dim()) == codomain))
    throw Error(ErrorCode::DimensionMismatch, "shift_adjoint needs domain = V_{d+N} over the same weights");
  Mat<Scalar> m = Mat<Scalar>::Zero(codomain.dim(), domain.dim());
  for (Index n = 0; n < codomain.dim(); ++n) m(n, n + N) = Scalar(coeffs(n));
  return LinearMap<Scalar>(domain, codomain, std::move(m));
}

/// M*_{z^N}: V_{d+N} → V_d by the explicit coefficient formula.
template <BergmanScalar Scalar>
LinearMap<Scalar> shift_adjoint(const TruncatedSpace<Scalar>& domain, const TruncatedSpace<Scalar>& codomain, int N) {
  if (!domain.alpha()) throw Error(ErrorCode::DimensionMismatch, "shift_adjoint needs a monomial space");
  return shift_adjoint_from(domain, codomain, N,
                            coeff_table<RealOf<Scalar>>(N, *domain.alpha(), std::max<Index>(codomain.dim(), 0)));
}

/// m* = G_domain⁻¹ mᴴ G_codomain, so that ⟨m v, w⟩ = ⟨v, m* w⟩.
template <BergmanScalar Scalar>
LinearMap<Scalar> adjoint(const LinearMap<Scalar>& m) {
  Mat<Scalar> a = m.matrix().adjoint();
  const auto& gin = m.domain().metric();
  const auto& gout = m.codomain().metric();
  for (Index j = 0; j < a.cols(); ++j) a.col(j) *= Scalar(gout(j));
  for (Index i = 0; i < a.rows(); ++i) a.row(i) /= Scalar(gin(i));
  return LinearMap<Scalar>(m.codomain(), m.domain(), std::move(a));
}

/// f ∘ g (g applied first).
template <BergmanScalar Scalar>
LinearMap<Scalar> compose(const LinearMap<Scalar>& f, const LinearMap<Scalar>& g) {
  if (!(g.codomain() == f.domain())) throw Error(ErrorCode::DimensionMismatch, "compose: spaces do not chain");
  return LinearMap<Scalar>(g.domain(), f.codomain(), product(f.matrix(), g.matrix()));
}

template <BergmanScalar Scalar>
CoefficientVector<Scalar> apply(const LinearMap<Scalar>& m, const CoefficientVector<Scalar>& v) {
  if (!(v.space() == m.domain())) throw Error(ErrorCode::DimensionMismatch, "apply: vector outside map domain");
  return CoefficientVector<Scalar>(m.codomain(), product(m.matrix(), v.coeffs()));
}

template <BergmanScalar Scalar>
LinearMap<Scalar> subtract(const LinearMap<Scalar>& f, const LinearMap<Scalar>& g) {
  if (!(f.domain() == g.domain()) || !(f.codomain() == g.codomain()))
    throw Error(ErrorCode::DimensionMismatch, "subtract: maps act between different spaces");
  return LinearMap<Scalar>(f.domain(), f.codomain(), f.matrix() - g.matrix());
}

template <BergmanScalar Scalar>
LinearMap<Scalar> add(const LinearMap<Scalar>& f, const LinearMap<Scalar>& g) {
  if (!(f.domain() == g.domain()) || !(f.codomain() == g.codomain()))
    throw Error(ErrorCode::DimensionMismatch, "add: maps act between different spaces");
  return LinearMap<Scalar>(f.domain(), f.codomain(), f.matrix() + g.matrix());
}

/// f∘f∘…∘f (m factors); m = 0 gives the identity.
template <BergmanScalar Scalar>
LinearMap<Scalar> power(const LinearMap<Scalar>& f, int m) {
  LinearMap<Scalar> out = identity(f.domain());
  for (int i = 0; i < m; ++i) out = compose(f, out);
  return out;
}

/// The matrix of m in metric-orthonormal coordinates, W_out^{1/2} M W_in^{−1/2}.
inline Mat<Complex> metric_scaled(const LinearMap<Complex>& m) {
  return m.codomain().metric().cwiseSqrt().asDiagonal() * m.matrix() *
         m.domain().metric().cwiseSqrt().cwiseInverse().asDiagonal();
}

inline Mat<Complex> metric_scaled(const LinearMap<Rational>& m) {
  auto conv = [](const Rational& q) { return to_double(q); };
  const Vec<double> gin = m.domain().metric().unaryExpr(conv);
  const Vec<double> gout = m.codomain().metric().unaryExpr(conv);
  return gout.cwiseSqrt().asDiagonal() * to_complex(m.matrix()) * gin.cwiseSqrt().cwiseInverse().asDiagonal();
}

/// Singular values of m with respect to the metrics, descending.
template <BergmanScalar Scalar>
Vec<double> metric_singular_values(const LinearMap<Scalar>& m) {
  const Mat<Complex> x = metric_scaled(m);
  if (x.size() == 0) return Vec<double>(0);
  Eigen::BDCSVD<Mat<Complex>> svd(x);
  return svd.singularValues();
}

/// Operator norm of m between the weighted spaces.
template <BergmanScalar Scalar>
double operator_norm(const LinearMap<Scalar>& m) {
  const Vec<double> s = metric_singular_values(m);
  return s.size() == 0 ? 0.0 : s(0);
}

/// Residual of an identity expressed as a map that should vanish: exactly 0
/// for the zero map, otherwise the metric operator norm.
template <BergmanScalar Scalar>
double residual_norm(const LinearMap<Scalar>& m) {
  if (all_zero(m.matrix())) return 0.0;
  return operator_norm(m);
}

/// Smallest metric singular value, i.e. inf ‖m v‖/‖v‖ (0 if rank deficient).
template <BergmanScalar Scalar>
double smallest_singular_value(const LinearMap<Scalar>& m) {
  const Vec<double> s = metric_singular_values(m);
  if (m.domain().dim() == 0) return std::numeric_limits<double>::infinity();
  if (s.size() < m.domain().dim()) return 0.0;
  return s(s.size() - 1);
}

/// S restricted to H: the domain is H, the codomain is H's counterpart in
/// S's codomain truncation, and `map` acts on basis coordinates.
template <BergmanScalar Scalar>
struct Restriction {
  Subspace<Scalar> domain;
  Subspace<Scalar> codomain;
  LinearMap<Scalar> map;
  double residual = 0.0;

  /// Applies the restriction to an ambient vector of H.
  template <typename Derived>
  Vec<Scalar> apply_ambient(const Eigen::MatrixBase<Derived>& v) const {
    return product(codomain.basis(), product(map.matrix(), domain.coordinates(v)));
  }
};

namespace detail {

/// max_i ‖(I − P_target) m b_i‖/‖b_i‖ over the basis of `source`.
template <BergmanScalar Scalar>
double invariance_residual(const Mat<Scalar>& matrix, const Subspace<Scalar>& source, const Subspace<Scalar>& target) {
  double worst = 0.0;
  for (Index j = 0; j < source.dim(); ++j) {
    const Vec<Scalar> image = product(matrix, Vec<Scalar>(source.basis().col(j)));
    const Vec<Scalar> miss = image - target.project(image);
    if (all_zero(miss)) continue;
    const double r = std::sqrt(to_double(squared_norm(target.ambient(), miss)) / to_double(source.sqnorms()(j)));
    worst = std::max(worst, r);
  }
  return worst;
}

/// The counterpart of H inside `space`, when `space` is a level of H's
/// monomial space or H's own ambient.
template <BergmanScalar Scalar>
Subspace<Scalar> counterpart(const Subspace<Scalar>& H, const TruncatedSpace<Scalar>& space) {
  if (space == H.ambient()) return H;
  if (!H.ambient().is_monomial() || !space.is_monomial())
    throw Error(ErrorCode::DimensionMismatch, "subspace does not live in the map's spaces");
  Subspace<Scalar> moved = extend(H, space.dim());
  if (!(moved.ambient() == space)) throw Error(ErrorCode::DimensionMismatch, "weight sequences differ");
  return moved;
}

}  // namespace detail

/// T = S|_H in the metric coordinates of H and of H's extension. Throws
/// NotInvariant when S H leaves that extension by more than `tol`.
template <BergmanScalar Scalar>
Restriction<Scalar> restrict(const LinearMap<Scalar>& S, const Subspace<Scalar>& H, double tol = 1e-10) {
  if (!(H.ambient() == S.domain())) throw Error(ErrorCode::DimensionMismatch, "H must live in the map's domain");
  Subspace<Scalar> target = detail::counterpart(H, S.codomain());
  const double residual = detail::invariance_residual(S.matrix(), H, target);
  if (residual > tol) throw Error(ErrorCode::NotInvariant, "S H leaves H (residual " + std::to_string(residual) + ")");
  Mat<Scalar> t = product(target.coordinates_map(), product(S.matrix(), H.basis()));
  LinearMap<Scalar> map(H.coordinate_space(), target.coordinate_space(), std::move(t));
  return Restriction<Scalar>{H, std::move(target), std::move(map), residual};
}

namespace detail {

template <BergmanScalar Scalar>
bool is_diagonal(const Mat<Scalar>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (i != j && !is_zero(m(i, j))) return false;
  return true;
}

}  // namespace detail

/// (T*T)⁻¹. Diagonal Gram maps (every shift restriction to a residue
/// subspace) are inverted entrywise; otherwise a Hermitian positive-definite
/// solve guarded by kGramConditionLimit (float) or an exact LU (rational).
template <BergmanScalar Scalar>
LinearMap<Scalar> gram_inverse(const LinearMap<Scalar>& T) {
  const LinearMap<Scalar> gram = compose(adjoint(T), T);
  const Index n = gram.domain().dim();
  const Mat<Scalar>& g = gram.matrix();
  Mat<Scalar> inv = Mat<Scalar>::Zero(n, n);
  if (detail::is_diagonal(g)) {
    double hi = 0.0, lo = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n; ++i) {
      const double d = magnitude(g(i, i));
      hi = std::max(hi, d);
      lo = std::min(lo, d);
      if (is_zero(g(i, i))) throw Error(ErrorCode::SingularGram, "T*T has a zero diagonal entry");
      inv(i, i) = Scalar(1) / g(i, i);
    }
    if constexpr (!is_exact_v<Scalar>)
      if (n > 0 && hi > kGramConditionLimit * lo) throw Error(ErrorCode::SingularGram, "T*T is ill-conditioned");
  } else if constexpr (is_exact_v<Scalar>) {
    Eigen::FullPivLU<Mat<Scalar>> lu(g);
    if (!lu.isInvertible()) throw Error(ErrorCode::SingularGram, "T*T is singular");
    inv = lu.inverse();
  } else {
    // G_dom·T*T = Mᴴ G_out M is Hermitian positive definite.
    const Mat<Complex> h = gram.domain().metric().asDiagonal() * g;
    Eigen::SelfAdjointEigenSolver<Mat<Complex>> eig(h, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff(), hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || hi > kGramConditionLimit * lo) throw Error(ErrorCode::SingularGram, "T*T is ill-conditioned");
    const Eigen::LLT<Mat<Complex>> llt(h);
    inv = llt.solve(Mat<Complex>(gram.domain().metric().template cast<Complex>().asDiagonal()));
  }
  return LinearMap<Scalar>(gram.domain(), gram.domain(), std::move(inv));
}

/// A = T(T*T)⁻¹.
template <BergmanScalar Scalar>
LinearMap<Scalar> build_A(const LinearMap<Scalar>& T) {
  return compose(T, gram_inverse(T));
}

/// A* by its closed form (T*T)⁻¹T*.
template <BergmanScalar Scalar>
LinearMap<Scalar> build_A_adjoint(const LinearMap<Scalar>& T) {
  return compose(gram_inverse(T), adjoint(T));
}

}  // namespace bergman
