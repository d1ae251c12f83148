#include "doctest.h"

#include "bergman/weights.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

using namespace bergman;

namespace {

// Γ-quotient form of the weights, computed without the recurrence.
double gamma_weight(Index n, double alpha) {
  return boost::math::tgamma_delta_ratio(static_cast<double>(n) + 1.0, 1.0 + alpha) * boost::math::tgamma(2.0 + alpha);
}

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("alpha literals") {
  const Alpha half = Alpha::parse("1/2");
  CHECK(half.is_fraction_literal());
  CHECK(half.preferred_mode() == ScalarMode::ExactRational);
  CHECK(*half.exact() == Rational(1, 2));
  CHECK(half.value() == 0.5);

  const Alpha dec = Alpha::parse("0.25");
  CHECK_FALSE(dec.is_fraction_literal());
  CHECK(dec.preferred_mode() == ScalarMode::Float64);
  CHECK(*dec.exact() == Rational(1, 4));

  CHECK(*Alpha::parse("-3/4").exact() == Rational(-3, 4));
  CHECK(*Alpha::parse("2/4").exact() == Rational(1, 2));
  CHECK(*Alpha::parse("1e-2").exact() == Rational(1, 100));
  CHECK(*Alpha::parse("0.08").exact() == Rational(2, 25));
  CHECK(*Alpha::parse("012/010").exact() == Rational(6, 5));
  CHECK(*Alpha::parse("+007.50").exact() == Rational(15, 2));
  CHECK(*Alpha::parse("-0.5").exact() == Rational(-1, 2));
  CHECK(Alpha::parse("2.5").text() == "2.5");
  CHECK(Alpha::rational(1, 2) == half);

  for (const char* bad : {"", "abc", "1/0", "1/", "/2", "0.5x", "1//2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Alpha::parse(bad), Error);
  }
}

TEST_CASE("alpha range and mode") {
  CHECK_THROWS_AS(Alpha(-1.0).validate(), Error);
  CHECK_THROWS_AS(Alpha::parse("-3/2").validate(), Error);
  CHECK_NOTHROW(Alpha(-0.999).validate());
  try {
    Alpha(0.3).as<Rational>();
    FAIL("expected ModeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ModeMismatch);
  }
  try {
    Alpha(-1.5).validate();
    FAIL("expected InvalidAlpha");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidAlpha);
  }
}

TEST_CASE("weight params") {
  CHECK_THROWS_AS((WeightParams{Alpha(0.0), 0, 8}.validate()), Error);
  CHECK_THROWS_AS((WeightParams{Alpha(0.0), 2, 2}.validate()), Error);
  CHECK_NOTHROW((WeightParams{Alpha(0.0), 2, 3}.validate()));
  CHECK_THROWS_AS(weight_sequence<double>(WeightParams{Alpha(-2.0), 1, 8}), Error);
}

TEST_CASE("weights in closed form, exact") {
  // α = 0: ω_n = 1/(n+1).  α = 1: ω_n = 2/((n+1)(n+2)).
  const auto w0 = weight_sequence<Rational>(WeightParams{Alpha::parse("0"), 1, 40});
  const auto w1 = weight_sequence<Rational>(WeightParams{Alpha::parse("1"), 1, 40});
  for (Index n = 0; n < 40; ++n) {
    CHECK(w0[n] == Rational(1, n + 1));
    CHECK(w1[n] == Rational(2, (n + 1) * (n + 2)));
  }
  const auto wh = weight_sequence<Rational>(WeightParams{Alpha::parse("1/2"), 1, 3});
  CHECK(wh[0] == 1);
  CHECK(wh[1] == Rational(2, 5));
  CHECK(wh[2] == Rational(8, 35));
}

TEST_CASE("weights against the gamma quotient") {
  for (double a : {-0.9, -0.5, 0.0, 0.5, 1.0, 2.5, 10.0}) {
    const auto w = weight_sequence<double>(WeightParams{Alpha(a), 1, 2000});
    double worst = 0.0;
    for (Index n = 0; n < w.size(); ++n) worst = std::max(worst, rel_err(w[n], gamma_weight(n, a)));
    CAPTURE(a);
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("shift coefficients") {
  for (Index n = 0; n < 30; ++n) {
    CHECK(shift_coeff<Rational>(1, Alpha::parse("0"), n) == Rational(n + 1, n + 2));
    CHECK(shift_coeff<Rational>(2, Alpha::parse("0"), n) == Rational(n + 1, n + 3));
  }
  CHECK(shift_coeff<Rational>(2, Alpha::parse("0"), 0) == Rational(1, 3));
  CHECK(shift_coeff<double>(2, Alpha(0.0), 1) == doctest::Approx(0.5).epsilon(1e-15));

  for (double a : {-0.5, 0.0, 1.0, 2.5})
    for (int N : {1, 2, 3, 4})
      for (Index n : {0, 1, 7, 100, 5000}) {
        const double oracle = gamma_weight(n + N, a) / gamma_weight(n, a);
        CAPTURE(a);
        CAPTURE(N);
        CAPTURE(n);
        CHECK(rel_err(shift_coeff<double>(N, Alpha(a), n), oracle) < 1e-12);
      }

  CHECK_THROWS_AS(shift_coeff<double>(0, Alpha(0.0), 0), Error);
  CHECK_THROWS_AS(shift_coeff<double>(1, Alpha(0.0), -1), Error);
}

TEST_CASE("coefficient bounds are strict") {
  for (const char* a : {"0", "1/2", "1", "-1/2", "5/2"})
    for (int N : {1, 2, 3}) {
      const Alpha alpha = Alpha::parse(a);
      const Rational lb = lower_bound<Rational>(N, alpha);
      for (Index n = 0; n < 64; ++n) {
        const Rational c = shift_coeff<Rational>(N, alpha, n);
        CHECK(c < 1);
        CHECK(c > lb);
      }
    }
  CHECK(lower_bound<Rational>(2, Alpha::parse("0")) == Rational(1, 9));
  CHECK(lower_bound<Rational>(1, Alpha::parse("1/2")) == Rational(2, 7));
  CHECK(lower_bound<double>(3, Alpha(1.0)) == doctest::Approx(1.0 / 64));
}

TEST_CASE("iterated coefficients") {
  const Alpha a = Alpha::parse("1/2");
  for (int N : {1, 2, 3})
    for (int m = 1; m <= 4; ++m)
      for (Index n = 0; n < 20; ++n) {
        const auto w = detail::weight_values<Rational>(a, n + m * N + 1);
        CHECK(iterated_coeff<Rational>(N, a, n, m) == w(n) / w(n + m * N));
        CHECK(iterated_coeff<Rational>(N, a, n, m) > 1);
      }
  for (double alpha : {-0.5, 2.5}) {
    const double oracle = gamma_weight(10, alpha) / gamma_weight(10 + 3 * 2, alpha);
    CHECK(rel_err(iterated_coeff<double>(2, Alpha(alpha), 10, 3), oracle) < 1e-12);
  }
  CHECK_THROWS_AS(iterated_coeff<double>(1, Alpha(0.0), 0, 0), Error);
}

TEST_CASE("coefficient table perturbation") {
  const auto clean = coeff_table<double>(2, Alpha(0.0), 10);
  const auto dirty = coeff_table<double>(2, Alpha(0.0), 10, CoeffPerturbation{4, 1e-6});
  for (Index n = 0; n < 10; ++n) CHECK(dirty(n) - clean(n) == doctest::Approx(n == 4 ? 1e-6 : 0.0));
  const auto outside = coeff_table<double>(2, Alpha(0.0), 10, CoeffPerturbation{40, 1e-6});
  CHECK(outside == clean);
}
