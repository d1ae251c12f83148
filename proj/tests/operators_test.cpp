#include "doctest.h"

#include "bergman/operators.hpp"

#include <boost/math/special_functions/gamma.hpp>

using namespace bergman;

namespace {

double gamma_weight(Index n, double alpha) {
  return boost::math::tgamma_delta_ratio(static_cast<double>(n) + 1.0, 1.0 + alpha) * boost::math::tgamma(2.0 + alpha);
}

template <typename Scalar>
struct Pair {
  TruncatedSpace<Scalar> V, W;
  LinearMap<Scalar> S;
  Pair(const Alpha& a, Index d, int N)
      : V(TruncatedSpace<Scalar>::monomial(a, d)), W(V.resized(d + N)), S(shift(V, W, N)) {}
};

}  // namespace

TEST_CASE("shift matrix") {
  const Pair<Rational> p(Alpha::parse("0"), 5, 2);
  CHECK(p.S.matrix().rows() == 7);
  CHECK(p.S.matrix().cols() == 5);
  for (Index i = 0; i < 7; ++i)
    for (Index j = 0; j < 5; ++j) CHECK(p.S.matrix()(i, j) == (i == j + 2 ? 1 : 0));
  CHECK_THROWS_AS(shift(p.V, p.V.resized(6), 2), Error);
  CHECK_THROWS_AS(shift(p.V, TruncatedSpace<Rational>::monomial(Alpha::parse("1"), 7), 2), Error);
}

TEST_CASE("norm of a shifted vector against gamma-quotient coefficients") {
  for (double a : {-0.5, 0.0, 2.5})
    for (int N : {1, 3}) {
      const Pair<Complex> p(Alpha(a), 40, N);
      const Vec<Complex> f = random_coeffs<Complex>(40, 11);
      double rhs = 0.0;
      for (Index n = 0; n < 40; ++n) rhs += gamma_weight(n + N, a) * std::norm(f(n));
      CHECK(squared_norm(p.W, p.S(f)) == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("adjoint satisfies the defining relation") {
  const Pair<Complex> p(Alpha(0.5), 20, 2);
  const auto explicit_adj = shift_adjoint(p.W, p.V, 2);
  const auto metric_adj = adjoint(p.S);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Vec<Complex> v = random_coeffs<Complex>(20, 2 * s), w = random_coeffs<Complex>(22, 2 * s + 1);
    const Complex lhs = inner(p.W, p.S(v), w);
    CHECK(std::abs(lhs - inner(p.V, v, explicit_adj(w))) < 1e-14);
    CHECK(std::abs(lhs - inner(p.V, v, metric_adj(w))) < 1e-14);
  }
  CHECK(max_abs(Mat<Complex>(adjoint(metric_adj).matrix() - p.S.matrix())) < 1e-15);
}

TEST_CASE("explicit adjoint on a monomial, exact") {
  // N = 1, α = 0: M*_z z = C_{1,0,0} · 1 = 1/2.
  const Pair<Rational> p(Alpha::parse("0"), 4, 1);
  const auto adj = shift_adjoint(p.W, p.V, 1);
  const Vec<Rational> image = adj(p.W.unit(1));
  CHECK(image(0) == Rational(1, 2));
  for (Index i = 1; i < 4; ++i) CHECK(image(i) == 0);
  const Mat<Rational> diff = adj.matrix() - adjoint(p.S).matrix();
  CHECK(all_zero(diff));
}

TEST_CASE("A sends 1 to 2z when N = 1, alpha = 0") {
  const Pair<Rational> p(Alpha::parse("0"), 6, 1);
  const auto A = build_A(p.S);
  const Vec<Rational> a1 = A(p.V.unit(0));
  CHECK(a1(1) == 2);
  CHECK(a1.sum() == 2);
  CHECK(squared_norm(p.W, a1) == 2);
}

TEST_CASE("A*T is the identity and TA* a projection, exact") {
  const Pair<Rational> p(Alpha::parse("1/2"), 10, 3);
  const auto As = build_A_adjoint(p.S);
  CHECK(all_zero(subtract(compose(As, p.S), identity(p.V)).matrix()));
  const auto P = compose(p.S, As);
  CHECK(all_zero(subtract(compose(P, P), P).matrix()));
  CHECK(all_zero(subtract(P, adjoint(P)).matrix()));
  CHECK(all_zero(subtract(adjoint(build_A(p.S)), As).matrix()));
  CHECK_THROWS_AS(compose(p.S, p.S), Error);
}

TEST_CASE("singular values of the shift are the square roots of the coefficients") {
  for (int N : {1, 2}) {
    const Pair<Complex> p(Alpha(1.0), 30, N);
    const Vec<double> s = metric_singular_values(p.S);
    CHECK(s(0) == doctest::Approx(std::sqrt(gamma_weight(29 + N, 1.0) / gamma_weight(29, 1.0))).epsilon(1e-12));
    CHECK(smallest_singular_value(p.S) ==
          doctest::Approx(std::sqrt(gamma_weight(N, 1.0))).epsilon(1e-12));
    CHECK(operator_norm(p.S) < 1.0);
    CHECK(smallest_singular_value(p.S) > std::sqrt(lower_bound<double>(N, Alpha(1.0))));
  }
}

TEST_CASE("residual norm and power") {
  const Pair<Rational> p(Alpha::parse("0"), 4, 1);
  CHECK(residual_norm(subtract(p.S, p.S)) == 0.0);
  CHECK(residual_norm(p.S) > 0.0);
  const auto I = identity(p.V);
  CHECK(power(I, 0).matrix() == I.matrix());
  const Pair<Complex> q(Alpha(0.0), 4, 1);
  const LinearMap<Complex> twice(q.V, q.V, Mat<Complex>::Identity(4, 4) * 2.0);
  CHECK(power(twice, 3).matrix()(2, 2) == Complex(8.0));
}

TEST_CASE("gram inverse of a non-diagonal restriction") {
  const auto V = TruncatedSpace<Rational>::monomial(Alpha::parse("1/2"), 8);
  const auto W = V.resized(9);
  Mat<Rational> m = Mat<Rational>::Zero(9, 2);
  m(1, 0) = 1;
  m(2, 0) = Rational(1, 3);
  m(2, 1) = 2;
  m(5, 1) = -1;
  const LinearMap<Rational> T(TruncatedSpace<Rational>::coordinate(Vec<Rational>::Ones(2)), W, m);
  const auto g = compose(adjoint(T), T);
  CHECK_FALSE(detail::is_diagonal(g.matrix()));
  CHECK(all_zero(subtract(compose(gram_inverse(T), g), identity(g.domain())).matrix()));

  const LinearMap<Complex> Tf(TruncatedSpace<Complex>::coordinate(Vec<double>::Ones(2)),
                              TruncatedSpace<Complex>::monomial(Alpha(0.5), 9), to_complex(m));
  const auto gf = compose(adjoint(Tf), Tf);
  CHECK(max_abs(Mat<Complex>(compose(gram_inverse(Tf), gf).matrix() - Mat<Complex>::Identity(2, 2))) < 1e-13);

  Mat<Rational> singular = Mat<Rational>::Zero(9, 2);
  singular(3, 0) = 1;
  singular(3, 1) = 2;
  const LinearMap<Rational> Ts(TruncatedSpace<Rational>::coordinate(Vec<Rational>::Ones(2)), W, singular);
  CHECK_THROWS_AS(gram_inverse(Ts), Error);
  const LinearMap<Rational> Tz(TruncatedSpace<Rational>::coordinate(Vec<Rational>::Ones(2)), W, Mat<Rational>::Zero(9, 2));
  CHECK_THROWS_AS(gram_inverse(Tz), Error);
}

TEST_CASE("restriction to invariant and non-invariant subspaces") {
  const Pair<Rational> p(Alpha::parse("0"), 8, 2);
  const auto H = residue_subspace(p.V, 2, {1});
  const auto T = restrict(p.S, H, 0.0);
  CHECK(T.residual == 0.0);
  CHECK(T.codomain.dim() == 5);
  CHECK(T.map.matrix().rows() == 5);
  CHECK(T.map.matrix().cols() == 4);
  const Vec<Rational> z3 = p.V.unit(3);
  const Vec<Rational> image = T.apply_ambient(z3);
  CHECK(image == p.W.unit(5));

  Mat<Rational> v = Mat<Rational>::Zero(8, 1);
  v(0, 0) = 1;
  v(1, 0) = 1;
  const auto bad = Subspace<Rational>::span(p.V, v);
  try {
    restrict(p.S, bad, 1e-10);
    FAIL("expected NotInvariant");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInvariant);
  }
}
