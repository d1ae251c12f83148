#pragma once

#include "bergman/space.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace bergman {

/// Relative residual below which a vector is treated as dependent during
/// float orthogonalization.
inline constexpr double kRankTol = 1e-10;

/// Residue set Λ ⊆ {0,…,modulus−1} labelling span{z^{k+jN} : k ∈ Λ}.
struct ResidueTag {
  int modulus = 1;
  std::vector<int> residues;

  bool contains_degree(Index n) const {
    return std::binary_search(residues.begin(), residues.end(), static_cast<int>(n % modulus));
  }
  bool operator==(const ResidueTag&) const = default;
};

namespace detail {

template <BergmanScalar Scalar>
struct Orthogonalized {
  Mat<Scalar> basis;
  Vec<RealOf<Scalar>> sqnorms;
};

/// Modified Gram–Schmidt in the metric of `space`, with one
/// re-orthogonalization pass in float mode. Candidates are orthogonalized
/// against `fixed` (an orthogonal family with squared norms `fixed_sq`) and
/// against previously accepted candidates; only the new vectors are returned.
/// Float output is normalized; exact output keeps squared norms.
template <BergmanScalar Scalar>
Orthogonalized<Scalar> orthogonalize(const TruncatedSpace<Scalar>& space, const Mat<Scalar>& candidates,
                                     const Mat<Scalar>& fixed, const Vec<RealOf<Scalar>>& fixed_sq,
                                     double rank_tol = kRankTol) {
  using Real = RealOf<Scalar>;
  const Index dim = space.dim();
  std::vector<Vec<Scalar>> kept;
  std::vector<Real> kept_sq;
  auto remove = [&](Vec<Scalar>& v, const auto& u, const Real& u_sq) {
    const Scalar c = inner(space, v, u);
    if (is_zero(c)) return;
    const Scalar f = c / Scalar(u_sq);
    for (Index n = 0; n < dim; ++n)
      if (!is_zero(u(n))) v(n) -= f * u(n);
  };
  auto sweep = [&](Vec<Scalar>& v) {
    for (Index j = 0; j < fixed.cols(); ++j) remove(v, fixed.col(j), fixed_sq(j));
    for (std::size_t j = 0; j < kept.size(); ++j) remove(v, kept[j], kept_sq[j]);
  };
  for (Index c = 0; c < candidates.cols(); ++c) {
    Vec<Scalar> v = candidates.col(c);
    const Real original = squared_norm(space, v);
    if (is_zero(original)) continue;
    sweep(v);
    if constexpr (is_exact_v<Scalar>) {
      const Real sq = squared_norm(space, v);
      if (is_zero(sq)) continue;
      kept.push_back(std::move(v));
      kept_sq.push_back(sq);
    } else {
      sweep(v);
      const double sq = squared_norm(space, v);
      if (!(std::sqrt(sq) > rank_tol * std::sqrt(original))) continue;
      v /= std::sqrt(sq);
      kept.push_back(std::move(v));
      kept_sq.push_back(1.0);
    }
  }
  Orthogonalized<Scalar> out{Mat<Scalar>(dim, static_cast<Index>(kept.size())),
                             Vec<Real>(static_cast<Index>(kept.size()))};
  for (std::size_t j = 0; j < kept.size(); ++j) {
    out.basis.col(static_cast<Index>(j)) = kept[j];
    out.sqnorms(static_cast<Index>(j)) = kept_sq[j];
  }
  return out;
}

/// Basis of {x : M x = 0}, orthogonal in `in_metric`. Float mode keeps the
/// right singular vectors of the metric-scaled matrix with σ ≤ tol, i.e. the
/// x with ‖Mx‖ ≤ tol‖x‖; exact mode uses an exact LU kernel.
template <BergmanScalar Scalar>
Orthogonalized<Scalar> null_space(const Mat<Scalar>& M, const TruncatedSpace<Scalar>& in,
                                  const TruncatedSpace<Scalar>& out, double tol) {
  using Real = RealOf<Scalar>;
  const Index n = M.cols();
  if constexpr (is_exact_v<Scalar>) {
    Mat<Scalar> kernel;
    if (M.rows() == 0 || all_zero(M)) {
      kernel = Mat<Scalar>::Identity(n, n);
    } else {
      Eigen::FullPivLU<Mat<Scalar>> lu(M);
      if (lu.dimensionOfKernel() == 0) return {Mat<Scalar>(n, 0), Vec<Real>(0)};
      kernel = lu.kernel();
    }
    return orthogonalize(in, kernel, Mat<Scalar>(n, 0), Vec<Real>(0));
  } else {
    Vec<double> s_in = in.metric().cwiseSqrt();
    if (n == 0) return {Mat<Scalar>(0, 0), Vec<Real>(0)};
    Mat<Complex> X = out.metric().cwiseSqrt().asDiagonal() * M * s_in.cwiseInverse().asDiagonal();
    Mat<Complex> V;
    Vec<double> sigma;
    if (X.rows() == 0) {
      V = Mat<Complex>::Identity(n, n);
      sigma.resize(0);
    } else {
      Eigen::JacobiSVD<Mat<Complex>> svd(X, Eigen::ComputeFullV);
      V = svd.matrixV();
      sigma = svd.singularValues();
    }
    std::vector<Index> cols;
    for (Index j = 0; j < n; ++j)
      if (j >= sigma.size() || sigma(j) <= tol) cols.push_back(j);
    Mat<Scalar> basis(n, static_cast<Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
      basis.col(static_cast<Index>(j)) = s_in.cwiseInverse().asDiagonal() * V.col(cols[j]);
    return {basis, Vec<Real>::Ones(static_cast<Index>(cols.size()))};
  }
}

}  // namespace detail

/// A subspace of a TruncatedSpace, held as a metric-orthogonal basis
/// (orthonormal in float mode; exact mode keeps unnormalized vectors and
/// their squared norms since normalization leaves the rationals).
template <BergmanScalar Scalar>
class Subspace {
 public:
  using Real = RealOf<Scalar>;

  /// Adopts an already orthogonal basis.
  Subspace(TruncatedSpace<Scalar> ambient, Mat<Scalar> basis, Vec<Real> sqnorms,
           std::optional<ResidueTag> tag = std::nullopt)
      : ambient_(std::move(ambient)), basis_(std::move(basis)), sqnorms_(std::move(sqnorms)), tag_(std::move(tag)) {
    if (basis_.rows() != ambient_.dim() || sqnorms_.size() != basis_.cols())
      throw Error(ErrorCode::DimensionMismatch, "subspace basis does not fit its ambient space");
  }

  static Subspace zero(const TruncatedSpace<Scalar>& ambient) {
    return Subspace(ambient, Mat<Scalar>(ambient.dim(), 0), Vec<Real>(0));
  }

  /// Orthogonalized span of the columns of `vectors`.
  static Subspace span(const TruncatedSpace<Scalar>& ambient, const Mat<Scalar>& vectors,
                       double rank_tol = kRankTol) {
    auto o = detail::orthogonalize(ambient, vectors, Mat<Scalar>(ambient.dim(), 0), Vec<Real>(0), rank_tol);
    return Subspace(ambient, std::move(o.basis), std::move(o.sqnorms));
  }

  const TruncatedSpace<Scalar>& ambient() const { return ambient_; }
  const Mat<Scalar>& basis() const { return basis_; }
  const Vec<Real>& sqnorms() const { return sqnorms_; }
  const std::optional<ResidueTag>& tag() const { return tag_; }
  Index dim() const { return basis_.cols(); }
  bool empty() const { return dim() == 0; }

  /// The coordinate space of this basis: metric diag(‖b_i‖²).
  TruncatedSpace<Scalar> coordinate_space() const { return TruncatedSpace<Scalar>::coordinate(sqnorms_); }

  /// Ambient vector ↦ coefficients of its orthogonal projection in the basis.
  Mat<Scalar> coordinates_map() const {
    Mat<Scalar> c = basis_.adjoint() * ambient_.metric().template cast<Scalar>().asDiagonal();
    for (Index i = 0; i < dim(); ++i) c.row(i) /= Scalar(sqnorms_(i));
    return c;
  }

  template <typename Derived>
  Vec<Scalar> coordinates(const Eigen::MatrixBase<Derived>& v) const {
    return product(coordinates_map(), Vec<Scalar>(v));
  }

  /// Orthogonal projection of an ambient vector. Residue-tagged subspaces
  /// project by masking coefficients, which is exact in either mode.
  template <typename Derived>
  Vec<Scalar> project(const Eigen::MatrixBase<Derived>& v) const {
    if (tag_) {
      Vec<Scalar> out = v;
      for (Index n = 0; n < out.size(); ++n)
        if (!tag_->contains_degree(n)) out(n) = Scalar(0);
      return out;
    }
    return product(basis_, coordinates(v));
  }

  /// P_H as an ambient matrix.
  Mat<Scalar> projector() const {
    if (tag_) {
      Mat<Scalar> p = Mat<Scalar>::Zero(ambient_.dim(), ambient_.dim());
      for (Index n = 0; n < ambient_.dim(); ++n)
        if (tag_->contains_degree(n)) p(n, n) = Scalar(1);
      return p;
    }
    return product(basis_, coordinates_map());
  }

  /// max |⟨b_i, b_j⟩ − δ_ij ‖b_i‖²|.
  double orthogonality_residual() const {
    const Mat<Scalar> g = basis_.adjoint() * ambient_.metric().template cast<Scalar>().asDiagonal() * basis_;
    double worst = 0.0;
    for (Index j = 0; j < dim(); ++j)
      for (Index i = 0; i < dim(); ++i)
        worst = std::max(worst, magnitude(i == j ? Scalar(g(i, j) - Scalar(sqnorms_(i))) : Scalar(g(i, j))));
    return worst;
  }

  /// Largest coefficient index with a nonzero entry over the basis (−1 for
  /// the zero subspace). Float entries below rel_tol·max are ignored.
  Index max_degree(double rel_tol = 1e-14) const {
    const double scale = max_abs(basis_);
    for (Index n = ambient_.dim() - 1; n >= 0; --n)
      for (Index j = 0; j < dim(); ++j) {
        if constexpr (is_exact_v<Scalar>) {
          if (!is_zero(basis_(n, j))) return n;
        } else if (magnitude(basis_(n, j)) > rel_tol * scale) {
          return n;
        }
      }
    return -1;
  }

 private:
  TruncatedSpace<Scalar> ambient_;
  Mat<Scalar> basis_;
  Vec<Real> sqnorms_;
  std::optional<ResidueTag> tag_;
};

/// span{z^{k+jN} : k ∈ Λ, k+jN < D}. Monomials are already orthogonal, so the
/// basis is normalized monomials (float) or bare monomials (exact).
template <BergmanScalar Scalar>
Subspace<Scalar> residue_subspace(const TruncatedSpace<Scalar>& space, int N, std::vector<int> residues) {
  if (N < 1) throw Error(ErrorCode::InvalidParams, "residue modulus must be positive");
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
  for (int k : residues)
    if (k < 0 || k >= N) throw Error(ErrorCode::BadResidue, "residue " + std::to_string(k) + " outside [0, N)");
  ResidueTag tag{N, residues};
  std::vector<Index> degrees;
  for (Index n = 0; n < space.dim(); ++n)
    if (tag.contains_degree(n)) degrees.push_back(n);
  const auto k = static_cast<Index>(degrees.size());
  Mat<Scalar> basis = Mat<Scalar>::Zero(space.dim(), k);
  Vec<RealOf<Scalar>> sq(k);
  for (Index j = 0; j < k; ++j) {
    const Index n = degrees[static_cast<std::size_t>(j)];
    if constexpr (is_exact_v<Scalar>) {
      basis(n, j) = 1;
      sq(j) = space.weight(n);
    } else {
      basis(n, j) = 1.0 / std::sqrt(space.weight(n));
      sq(j) = 1.0;
    }
  }
  return Subspace<Scalar>(space, std::move(basis), std::move(sq), std::move(tag));
}

/// The full space V_D (as the residue subspace with N = 1).
template <BergmanScalar Scalar>
Subspace<Scalar> full_subspace(const TruncatedSpace<Scalar>& space) {
  return residue_subspace(space, 1, {0});
}

/// The counterpart of H at another truncation level of the same monomial
/// space: residue-tagged subspaces are rebuilt at the new level; untagged ones
/// are zero-padded upward or intersected with V_dim downward.
template <BergmanScalar Scalar>
Subspace<Scalar> extend(const Subspace<Scalar>& H, Index dim) {
  if (dim == H.ambient().dim()) return H;
  const TruncatedSpace<Scalar> target = H.ambient().resized(dim);
  if (H.tag()) return residue_subspace(target, H.tag()->modulus, H.tag()->residues);
  const Index old_dim = H.ambient().dim();
  if (dim > old_dim) {
    Mat<Scalar> basis = Mat<Scalar>::Zero(dim, H.dim());
    basis.topRows(old_dim) = H.basis();
    return Subspace<Scalar>(target, std::move(basis), H.sqnorms());
  }
  // H ∩ V_dim: combinations of the basis whose coefficients vanish at degrees ≥ dim.
  const Mat<Scalar> high = H.basis().bottomRows(old_dim - dim);
  const TruncatedSpace<Scalar> coords = H.coordinate_space();
  const TruncatedSpace<Scalar> tail = TruncatedSpace<Scalar>::coordinate(H.ambient().metric().tail(old_dim - dim));
  const auto ker = detail::null_space(high, coords, tail, kRankTol);
  const Mat<Scalar> vectors = (H.basis() * ker.basis).topRows(dim);
  return Subspace<Scalar>::span(target, vectors);
}

/// H ∩ V_bound, kept in H's ambient space (untagged).
template <BergmanScalar Scalar>
Subspace<Scalar> lower_part(const Subspace<Scalar>& H, Index bound) {
  const Index D = H.ambient().dim();
  if (bound >= D) return H;
  if (bound <= 0) return Subspace<Scalar>::zero(H.ambient());
  const Subspace<Scalar> low = extend(H, bound);
  Mat<Scalar> basis = Mat<Scalar>::Zero(D, low.dim());
  basis.topRows(bound) = low.basis();
  return Subspace<Scalar>(H.ambient(), std::move(basis), low.sqnorms());
}

/// Converts an exact subspace to float mode (normalizing the basis).
inline Subspace<Complex> to_float(const Subspace<Rational>& H) {
  const auto space = TruncatedSpace<Complex>::coordinate(H.ambient().metric().unaryExpr([](const Rational& q) {
    return to_double(q);
  }));
  Mat<Complex> basis = to_complex(H.basis());
  for (Index j = 0; j < basis.cols(); ++j) basis.col(j) /= std::sqrt(to_double(H.sqnorms()(j)));
  return Subspace<Complex>(space, std::move(basis), Vec<double>::Ones(H.dim()), H.tag());
}

inline const Subspace<Complex>& to_float(const Subspace<Complex>& H) { return H; }

}  // namespace bergman
