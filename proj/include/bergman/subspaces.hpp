#pragma once

#include "bergman/operators.hpp"

#include <cstdint>

namespace bergman {

struct InvarianceResult {
  bool invariant = false;
  double residual = 0.0;
};

/// Whether m H ⊆ H', with H and H' the counterparts of H in m's domain and
/// codomain (H itself for a square map on H's ambient).
template <BergmanScalar Scalar>
InvarianceResult is_invariant(const LinearMap<Scalar>& m, const Subspace<Scalar>& H, double tol) {
  const Subspace<Scalar> source = detail::counterpart(H, m.domain());
  const Subspace<Scalar> target = detail::counterpart(H, m.codomain());
  const double r = detail::invariance_residual(m.matrix(), source, target);
  return {r <= tol, r};
}

struct ReducingResult {
  bool reducing = false;
  double residual_map = 0.0;
  double residual_adjoint = 0.0;
  double residual() const { return std::max(residual_map, residual_adjoint); }
};

/// H is reducing for S iff it is invariant under S and under S*.
template <BergmanScalar Scalar>
ReducingResult is_reducing(const LinearMap<Scalar>& S, const Subspace<Scalar>& H, double tol) {
  const auto forward = is_invariant(S, H, tol);
  const auto backward = is_invariant(adjoint(S), H, tol);
  return {forward.invariant && backward.invariant, forward.residual, backward.residual};
}

/// E = H ⊖ T H, where T is a restriction whose codomain is H.
template <BergmanScalar Scalar>
Subspace<Scalar> wandering(const Subspace<Scalar>& H, const Restriction<Scalar>& T) {
  if (!(T.codomain.ambient() == H.ambient()) || T.codomain.dim() != H.dim())
    throw Error(ErrorCode::DimensionMismatch, "wandering: T must map into H");
  const Mat<Scalar> range_vectors = product(T.codomain.basis(), T.map.matrix());
  const TruncatedSpace<Scalar>& space = H.ambient();
  const auto range = detail::orthogonalize(space, range_vectors, Mat<Scalar>(space.dim(), 0), Vec<RealOf<Scalar>>(0));
  auto e = detail::orthogonalize(space, H.basis(), range.basis, range.sqnorms);
  return Subspace<Scalar>(space, std::move(e.basis), std::move(e.sqnorms));
}

/// T H as a subspace of H's ambient (T maps into H).
template <BergmanScalar Scalar>
Subspace<Scalar> image(const Restriction<Scalar>& T) {
  return Subspace<Scalar>::span(T.codomain.ambient(), product(T.codomain.basis(), T.map.matrix()));
}

/// Largest depth d with max degree(E) + d·N < dim(H's ambient).
template <BergmanScalar Scalar>
int max_closure_depth(const Subspace<Scalar>& E, int N) {
  const Index top = E.max_degree();
  if (top < 0) return 0;
  return static_cast<int>((E.ambient().dim() - 1 - top) / N);
}

/// span{T^j e : e ∈ E, 0 ≤ j ≤ depth} inside H's ambient V_D. T is S|_H from
/// V_D into V_{D+N}; images never leave V_D because depth is bounded by the
/// degree of E (DepthOverflow otherwise).
template <BergmanScalar Scalar>
Subspace<Scalar> invariant_closure(const Subspace<Scalar>& E, const Restriction<Scalar>& T, const Subspace<Scalar>& H,
                                   int depth) {
  if (depth < 0) throw Error(ErrorCode::InvalidParams, "depth must be nonnegative");
  const TruncatedSpace<Scalar>& space = H.ambient();
  if (!(E.ambient() == space) || !(T.domain.ambient() == space))
    throw Error(ErrorCode::AmbientMismatch, "E, T and H must share the ambient space");
  const int N = static_cast<int>(T.codomain.ambient().dim() - space.dim());
  const Index top = E.max_degree();
  if (top >= 0 && top + static_cast<Index>(depth) * N >= space.dim())
    throw Error(ErrorCode::DepthOverflow, "degree " + std::to_string(top) + " + " + std::to_string(depth) + "*" +
                                              std::to_string(N) + " exceeds dimension " + std::to_string(space.dim()));
  const Index D = space.dim();
  Mat<Scalar> vectors(D, E.dim() * (depth + 1));
  for (Index j = 0; j < E.dim(); ++j) {
    Vec<Scalar> v = E.basis().col(j);
    for (int k = 0; k <= depth; ++k) {
      vectors.col(j * (depth + 1) + k) = v;
      if (k == depth) break;
      const Vec<Scalar> w = T.apply_ambient(v);
      v = w.head(D);
    }
  }
  return Subspace<Scalar>::span(space, vectors);
}

/// Metric-orthogonal basis of {v : ‖m v‖ ≤ tol‖v‖} (exact null space in
/// rational mode), as a subspace of m's domain.
template <BergmanScalar Scalar>
Subspace<Scalar> kernel(const LinearMap<Scalar>& m, double tol = kRankTol) {
  auto k = detail::null_space(m.matrix(), m.domain(), m.codomain(), tol);
  return Subspace<Scalar>(m.domain(), std::move(k.basis), std::move(k.sqnorms));
}

/// Exact equality of two subspaces (equal projectors).
template <BergmanScalar Scalar>
bool same_subspace(const Subspace<Scalar>& U, const Subspace<Scalar>& V) {
  if (!(U.ambient() == V.ambient())) throw Error(ErrorCode::AmbientMismatch, "subspaces live in different spaces");
  if (U.dim() != V.dim()) return false;
  return all_zero(Mat<Scalar>(U.projector() - V.projector()));
}

/// ‖P_U − P_V‖ in the weighted metric: the sine of the largest principal
/// angle, 0 iff U = V. Exact subspaces that coincide report exactly 0.
template <BergmanScalar Scalar>
double subspace_distance(const Subspace<Scalar>& U, const Subspace<Scalar>& V) {
  if (!(U.ambient() == V.ambient())) throw Error(ErrorCode::AmbientMismatch, "subspaces live in different spaces");
  if constexpr (is_exact_v<Scalar>) {
    if (same_subspace(U, V)) return 0.0;
    return subspace_distance(to_float(U), to_float(V));
  } else {
    const Vec<double> s = U.ambient().metric().cwiseSqrt();
    const Mat<Complex> qu = s.asDiagonal() * U.basis();
    const Mat<Complex> qv = s.asDiagonal() * V.basis();
    const Mat<Complex> diff = qu * qu.adjoint() - qv * qv.adjoint();
    if (diff.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Mat<Complex>> eig(diff, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().cwiseAbs().maxCoeff();
  }
}

struct CensusReport {
  int residue_total = 0;
  int residue_passed = 0;
  double residue_max_residual = 0.0;
  int random_total = 0;
  int random_failed = 0;
  double random_min_residual = std::numeric_limits<double>::infinity();

  bool ok() const { return residue_passed == residue_total && random_failed == random_total; }
};

/// Every residue subspace H_Λ (Λ ⊆ {0,…,N−1}, including ∅ and the full set)
/// must be reducing for S with zero residual; `trials` random 2-dimensional
/// subspaces must fail with residual above `tol`.
template <BergmanScalar Scalar>
CensusReport reducing_census(const LinearMap<Scalar>& S, int N, int trials, std::uint64_t seed, double tol) {
  CensusReport report;
  const TruncatedSpace<Scalar>& space = S.domain();
  for (unsigned mask = 0; mask < (1u << N); ++mask) {
    std::vector<int> residues;
    for (int k = 0; k < N; ++k)
      if (mask & (1u << k)) residues.push_back(k);
    const auto r = is_reducing(S, residue_subspace(space, N, residues), 0.0);
    ++report.residue_total;
    if (r.reducing) ++report.residue_passed;
    report.residue_max_residual = std::max(report.residue_max_residual, r.residual());
  }
  for (int t = 0; t < trials; ++t) {
    Mat<Scalar> vectors(space.dim(), 2);
    vectors.col(0) = random_coeffs<Scalar>(space.dim(), derive_seed(seed, 2 * t));
    vectors.col(1) = random_coeffs<Scalar>(space.dim(), derive_seed(seed, 2 * t + 1));
    const auto r = is_reducing(S, Subspace<Scalar>::span(space, vectors), tol);
    ++report.random_total;
    if (!r.reducing) ++report.random_failed;
    report.random_min_residual = std::min(report.random_min_residual, r.residual());
  }
  return report;
}

}  // namespace bergman
