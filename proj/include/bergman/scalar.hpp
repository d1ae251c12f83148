#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>

namespace bergman {

using Rational = boost::multiprecision::mpq_rational;
using Complex = std::complex<double>;
using Index = Eigen::Index;

enum class ScalarMode { Float64, ExactRational };

template <typename Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  using Real = double;
  static constexpr ScalarMode mode = ScalarMode::Float64;
  static constexpr bool exact = false;
};

// Exact mode works over the rationals; all operator matrices in play are real,
// so complex rationals are never needed.
template <>
struct ScalarTraits<Rational> {
  using Real = Rational;
  static constexpr ScalarMode mode = ScalarMode::ExactRational;
  static constexpr bool exact = true;
};

template <typename Scalar>
concept BergmanScalar = requires { typename ScalarTraits<Scalar>::Real; };

template <typename Scalar>
using RealOf = typename ScalarTraits<Scalar>::Real;

template <typename Scalar>
inline constexpr bool is_exact_v = ScalarTraits<Scalar>::exact;

template <typename T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

inline double to_double(double x) { return x; }
inline double to_double(long double x) { return static_cast<double>(x); }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline double magnitude(const Complex& z) { return std::abs(z); }
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Rational& q) { return to_double(abs(q)); }

inline bool is_zero(const Complex& z) { return z == Complex(0.0, 0.0); }
inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Rational& q) { return q == 0; }

inline const char* mode_name(ScalarMode m) {
  return m == ScalarMode::Float64 ? "float" : "exact";
}

/// Largest entry magnitude; 0 for empty matrices.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  double best = 0.0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) best = std::max(best, magnitude(m(i, j)));
  return best;
}

template <typename Derived>
bool all_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) return false;
  return true;
}

/// Converts an exact matrix to the floating mode; identity on complex input.
template <typename Derived>
Mat<Complex> to_complex(const Eigen::MatrixBase<Derived>& m) {
  Mat<Complex> out(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) {
      if constexpr (std::is_same_v<typename Derived::Scalar, Complex>)
        out(i, j) = m(i, j);
      else
        out(i, j) = Complex(to_double(m(i, j)), 0.0);
    }
  return out;
}

/// Matrix product. Rational operands are mostly structurally sparse here, so
/// zero entries of the left factor are skipped.
template <typename T>
Mat<T> product(const Mat<T>& a, const Mat<T>& b) {
  if constexpr (std::is_same_v<T, Rational>) {
    Mat<T> out = Mat<T>::Zero(a.rows(), b.cols());
    for (Index k = 0; k < a.cols(); ++k)
      for (Index i = 0; i < a.rows(); ++i) {
        if (is_zero(a(i, k))) continue;
        for (Index j = 0; j < b.cols(); ++j)
          if (!is_zero(b(k, j))) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  } else {
    return a * b;
  }
}

template <typename T>
Vec<T> product(const Mat<T>& a, const Vec<T>& v) {
  if constexpr (std::is_same_v<T, Rational>) {
    Vec<T> out = Vec<T>::Zero(a.rows());
    for (Index k = 0; k < a.cols(); ++k) {
      if (is_zero(v(k))) continue;
      for (Index i = 0; i < a.rows(); ++i)
        if (!is_zero(a(i, k))) out(i) += a(i, k) * v(k);
    }
    return out;
  } else {
    return a * v;
  }
}

}  // namespace bergman
