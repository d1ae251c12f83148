#include "doctest.h"

#include "bergman/subspaces.hpp"
#include "bergman/verify.hpp"

using namespace bergman;

namespace {

template <typename Scalar>
Subspace<Scalar> monomial_span(const TruncatedSpace<Scalar>& V, const std::vector<Index>& degrees) {
  Mat<Scalar> m = Mat<Scalar>::Zero(V.dim(), static_cast<Index>(degrees.size()));
  for (std::size_t j = 0; j < degrees.size(); ++j) m(degrees[j], static_cast<Index>(j)) = Scalar(1);
  return Subspace<Scalar>::span(V, m);
}

}  // namespace

TEST_CASE("residue subspaces") {
  const auto V = TruncatedSpace<Rational>::monomial(Alpha::parse("0"), 10);
  const auto H = residue_subspace(V, 3, {2, 0});
  CHECK(H.dim() == 7);  // degrees 0 2 3 5 6 8 9
  CHECK(H.max_degree() == 9);
  CHECK(residue_subspace(V, 3, {}).dim() == 0);
  CHECK(residue_subspace(V, 3, {}).max_degree() == -1);
  CHECK(full_subspace(V).dim() == 10);
  CHECK_THROWS_AS(residue_subspace(V, 3, {3}), Error);
  CHECK_THROWS_AS(residue_subspace(V, 3, {-1}), Error);
  CHECK(same_subspace(H, monomial_span(V, {0, 2, 3, 5, 6, 8, 9})));

  const Vec<Rational> f = random_coeffs<Rational>(10, 3);
  const Vec<Rational> pf = H.project(f);
  for (Index n = 0; n < 10; ++n) CHECK(pf(n) == (n % 3 == 1 ? Rational(0) : f(n)));
}

TEST_CASE("spans are orthogonal in the metric") {
  const auto Vf = TruncatedSpace<Complex>::monomial(Alpha(1.0), 12);
  Mat<Complex> m(12, 4);
  for (Index j = 0; j < 4; ++j) m.col(j) = random_coeffs<Complex>(12, 100 + j);
  const auto U = Subspace<Complex>::span(Vf, m);
  CHECK(U.dim() == 4);
  CHECK(U.orthogonality_residual() < 1e-14);
  const Mat<Complex> P = U.projector();
  CHECK(max_abs(Mat<Complex>(P * P - P)) < 1e-13);
  for (Index j = 0; j < 4; ++j) CHECK(max_abs(Vec<Complex>(U.project(m.col(j)) - m.col(j))) < 1e-13);

  const auto Ve = TruncatedSpace<Rational>::monomial(Alpha::parse("1/2"), 8);
  Mat<Rational> q(8, 3);
  for (Index j = 0; j < 3; ++j) q.col(j) = random_coeffs<Rational>(8, 200 + j);
  q.col(2) = q.col(0) + q.col(1);
  const auto W = Subspace<Rational>::span(Ve, q);
  CHECK(W.dim() == 2);
  CHECK(W.orthogonality_residual() == 0.0);
  CHECK(all_zero(Vec<Rational>(W.project(q.col(2)) - q.col(2))));
}

TEST_CASE("subspace distance is the sine of the principal angle") {
  const auto V = TruncatedSpace<Complex>::monomial(Alpha(0.0), 4);
  CHECK(subspace_distance(monomial_span(V, {0}), monomial_span(V, {1})) == doctest::Approx(1.0));
  CHECK(subspace_distance(monomial_span(V, {0, 1}), full_subspace(V)) == doctest::Approx(1.0));
  CHECK(subspace_distance(full_subspace(V), full_subspace(V)) == doctest::Approx(0.0));

  Mat<Complex> u = Mat<Complex>::Zero(4, 1), v = Mat<Complex>::Zero(4, 1);
  u(0, 0) = 1.0;
  v(0, 0) = 1.0;
  v(1, 0) = 1.0;
  // ‖1‖² = 1, ‖1 + z‖² = 1 + 1/2, so cos θ = 1/√(3/2).
  const double cos_theta = 1.0 / std::sqrt(1.5);
  CHECK(subspace_distance(Subspace<Complex>::span(V, u), Subspace<Complex>::span(V, v)) ==
        doctest::Approx(std::sqrt(1.0 - cos_theta * cos_theta)).epsilon(1e-12));

  const auto Ve = TruncatedSpace<Rational>::monomial(Alpha::parse("0"), 4);
  CHECK(subspace_distance(residue_subspace(Ve, 2, {0}), monomial_span(Ve, {0, 2})) == 0.0);
  CHECK(subspace_distance(residue_subspace(Ve, 2, {0}), monomial_span(Ve, {1, 3})) == doctest::Approx(1.0));
  CHECK_THROWS_AS(subspace_distance(full_subspace(Ve), full_subspace(Ve.resized(3))), Error);
}

TEST_CASE("reducing subspaces of the shift") {
  for (int N : {2, 3}) {
    const auto V = TruncatedSpace<Rational>::monomial(Alpha::parse("1/2"), 12);
    const auto S = shift(V, V.resized(12 + N), N);
    for (const auto& lambda : std::vector<std::vector<int>>{{}, {0}, {N - 1}, {0, N - 1}}) {
      const auto r = is_reducing(S, residue_subspace(V, N, lambda), 0.0);
      CHECK(r.reducing);
      CHECK(r.residual() == 0.0);
    }
    // z^0 + z^1 generates an invariant subspace that S* does not preserve.
    Mat<Rational> m = Mat<Rational>::Zero(12, 1);
    m(0, 0) = 1;
    m(1, 0) = 1;
    CHECK_FALSE(is_reducing(S, Subspace<Rational>::span(V, m), 1e-6).reducing);
  }
  const auto V = TruncatedSpace<Complex>::monomial(Alpha(0.0), 16);
  const auto report = reducing_census(shift(V, V.resized(18), 2), 2, 20, 9, 1e-6);
  CHECK(report.residue_total == 4);
  CHECK(report.residue_passed == 4);
  CHECK(report.residue_max_residual == 0.0);
  CHECK(report.random_failed == 20);
  CHECK(report.ok());
}

TEST_CASE("wandering subspace of a residue subspace is spanned by its low monomials") {
  for (int N : {1, 2, 3}) {
    const Index D = 15;
    const auto V = TruncatedSpace<Rational>::monomial(Alpha::parse("1"), D);
    const auto S = shift(V.resized(D - N), V, N);
    for (const auto& lambda : nonempty_residue_sets(N)) {
      const auto H = residue_subspace(V, N, lambda);
      const auto T = restrict(S, residue_subspace(V.resized(D - N), N, lambda), 0.0);
      const auto E = wandering(H, T);
      std::vector<Index> low(lambda.begin(), lambda.end());
      CHECK(same_subspace(E, monomial_span(V, low)));
      CHECK(E.dim() == static_cast<Index>(lambda.size()));
      const auto range = image(T);
      CHECK(range.dim() + E.dim() == H.dim());
    }
  }
}

TEST_CASE("invariant closure rebuilds the residue subspace") {
  const Index D = 14;
  const int N = 3;
  const auto V = TruncatedSpace<Complex>::monomial(Alpha(0.5), D);
  const auto H = residue_subspace(V, N, {1});
  const auto T = restrict(shift(V, V.resized(D + N), N), H);
  const auto E = monomial_span(V, {1});
  CHECK(max_closure_depth(E, N) == 4);
  const auto closure = invariant_closure(E, T, H, 4);
  CHECK(closure.dim() == 5);
  CHECK(subspace_distance(closure, H) < 1e-12);
  CHECK(subspace_distance(invariant_closure(E, T, H, 2), lower_part(H, 8)) < 1e-12);
  try {
    invariant_closure(E, T, H, 5);
    FAIL("expected DepthOverflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DepthOverflow);
  }
}

TEST_CASE("kernel of the shift adjoint") {
  const auto V = TruncatedSpace<Rational>::monomial(Alpha::parse("0"), 9);
  const auto W = V.resized(12);
  const auto K = kernel(shift_adjoint(W, V, 3));
  CHECK(same_subspace(K, monomial_span(W, {0, 1, 2})));
  const auto Vf = TruncatedSpace<Complex>::monomial(Alpha(0.0), 9);
  const auto Kf = kernel(shift_adjoint(Vf.resized(12), Vf, 3));
  CHECK(subspace_distance(Kf, monomial_span(Vf.resized(12), {0, 1, 2})) < 1e-12);
}

TEST_CASE("extension between truncation levels") {
  const auto V = TruncatedSpace<Rational>::monomial(Alpha::parse("0"), 8);
  Mat<Rational> m = Mat<Rational>::Zero(8, 2);
  m(0, 0) = 1;
  m(5, 0) = 1;
  m(5, 1) = 1;
  m(2, 1) = 3;
  const auto U = Subspace<Rational>::span(V, m);
  // (1 + z⁵) − (3z² + z⁵) is the only direction that survives in V_4.
  const auto cut = extend(U, 4);
  CHECK(cut.dim() == 1);
  Mat<Rational> survivor = Mat<Rational>::Zero(4, 1);
  survivor(0, 0) = 1;
  survivor(2, 0) = -3;
  CHECK(same_subspace(cut, Subspace<Rational>::span(V.resized(4), survivor)));
  CHECK(extend(U, 12).dim() == 2);
  CHECK(extend(U, 12).max_degree() == 5);

  Mat<Rational> n = Mat<Rational>::Zero(8, 2);
  n(0, 0) = 1;
  n(5, 1) = 1;
  const auto low = extend(Subspace<Rational>::span(V, n), 4);
  CHECK(same_subspace(low, monomial_span(V.resized(4), {0})));
  CHECK(lower_part(residue_subspace(V, 2, {0}), 5).dim() == 3);
  CHECK(extend(residue_subspace(V, 2, {0}), 11).dim() == 6);
}
