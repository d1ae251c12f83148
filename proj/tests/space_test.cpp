#include "doctest.h"

#include "bergman/space.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

using namespace bergman;

namespace {

// ‖f‖² = (α+1)/π ∫_𝔻 |f(z)|² (1−|z|²)^α dA, by quadrature over the disk.
// With u = √(1−r²) the radial factor becomes u^{2α+1} du, smooth for α ≥ −1/2.
double disk_norm_squared(const Vec<Complex>& a, double alpha) {
  const int angles = 4 * static_cast<int>(a.size()) + 8;
  auto radial = [&](double u) {
    const double r = std::sqrt(1.0 - u * u);
    double s = 0.0;
    for (int k = 0; k < angles; ++k) {
      const Complex z = std::polar(r, 2.0 * std::numbers::pi * k / angles);
      Complex f = 0.0, p = 1.0;
      for (Index n = 0; n < a.size(); ++n, p *= z) f += a(n) * p;
      s += std::norm(f);
    }
    s *= 2.0 * std::numbers::pi / angles;
    return s * std::pow(u, 2.0 * alpha + 1.0);
  };
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(radial, 0.0, 1.0, 10, 1e-14);
  return (alpha + 1.0) / std::numbers::pi * integral;
}

}  // namespace

TEST_CASE("monomial norms are the weights") {
  const auto V = TruncatedSpace<Rational>::monomial(Alpha::parse("1/2"), 10);
  for (Index n = 0; n < 10; ++n) CHECK(squared_norm(CoefficientVector<Rational>::monomial(V, n)) == V.weight(n));
  CHECK(V.weight(0) == 1);
}

TEST_CASE("norm agrees with the area integral") {
  for (double alpha : {-0.5, 0.0, 1.0, 2.5}) {
    const auto V = TruncatedSpace<Complex>::monomial(Alpha(alpha), 8);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto f = random_vector(V, seed);
      CAPTURE(alpha);
      CHECK(squared_norm(f) == doctest::Approx(disk_norm_squared(f.coeffs(), alpha)).epsilon(1e-9));
    }
  }
}

TEST_CASE("inner product is sesquilinear and Hermitian") {
  const auto V = TruncatedSpace<Complex>::monomial(Alpha(0.5), 12);
  const Vec<Complex> a = random_coeffs<Complex>(12, 5), b = random_coeffs<Complex>(12, 6);
  const Complex c(0.3, -1.7);
  CHECK(std::abs(inner(V, a, b) - std::conj(inner(V, b, a))) < 1e-15);
  CHECK(std::abs(inner(V, Vec<Complex>(c * a), b) - c * inner(V, a, b)) < 1e-14);
  CHECK(std::abs(inner(V, a, Vec<Complex>(c * b)) - std::conj(c) * inner(V, a, b)) < 1e-14);
  CHECK(inner(V, a, a).real() == doctest::Approx(squared_norm(V, a)));
  CHECK(norm(V, a) == doctest::Approx(std::sqrt(squared_norm(V, a))));
}

TEST_CASE("space identity and mismatches") {
  const auto V = TruncatedSpace<Complex>::monomial(Alpha(0.0), 6);
  const auto W = TruncatedSpace<Complex>::monomial(Alpha(1.0), 6);
  CHECK(V == TruncatedSpace<Complex>::monomial(Alpha(0.0), 6));
  CHECK_FALSE(V == W);
  CHECK(V.resized(4) == TruncatedSpace<Complex>::monomial(Alpha(0.0), 4));
  CHECK(V.resized(9).weight(8) == doctest::Approx(1.0 / 9));
  CHECK_THROWS_AS(inner(CoefficientVector<Complex>::monomial(V, 0), CoefficientVector<Complex>::monomial(W, 0)), Error);
  CHECK_THROWS_AS(CoefficientVector<Complex>(V, Vec<Complex>::Zero(5)), Error);
  CHECK_THROWS_AS(inner(V, Vec<Complex>::Zero(5), Vec<Complex>::Zero(6)), Error);
  const auto C = TruncatedSpace<Complex>::coordinate(Vec<double>::Ones(3));
  CHECK_FALSE(C.is_monomial());
  CHECK_THROWS_AS(C.resized(4), Error);
}

TEST_CASE("random coefficients are reproducible") {
  CHECK(random_coeffs<Complex>(16, 42) == random_coeffs<Complex>(16, 42));
  CHECK_FALSE(random_coeffs<Complex>(16, 42) == random_coeffs<Complex>(16, 43));
  CHECK(random_coeffs<Rational>(16, 42) == random_coeffs<Rational>(16, 42));
  for (const auto& q : random_coeffs<Rational>(200, 7)) {
    CHECK(abs(q) <= 9);
    CHECK(denominator(q) <= 9);
  }
  for (const auto& z : random_coeffs<Complex>(200, 7)) {
    CHECK(std::abs(z.real()) <= 1.0);
    CHECK(std::abs(z.imag()) <= 1.0);
  }
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
}
