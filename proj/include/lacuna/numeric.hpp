#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <ostream>
#include <string>

namespace lacuna {

using Rational = mpq_class;
using Complex = std::complex<double>;

inline constexpr double kMachineEps = 2.220446049250313e-16;

std::string to_string(const Rational& q);
double to_double(const Rational& q);

/// Element of Q(i). All arithmetic is exact.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long n) : re_(n), im_(0) {}  // NOLINT(implicit)
  GaussianRational(Rational re, Rational im = 0)
      : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  GaussianRational conj() const { return {re_, -im_}; }
  /// |z|^2, exact.
  Rational norm() const { return re_ * re_ + im_ * im_; }
  Complex to_complex() const { return {to_double(re_), to_double(im_)}; }

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

 private:
  Rational re_{0};
  Rational im_{0};
};

std::string to_string(const GaussianRational& z);
std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

/// Best rational approximation of x with denominator <= max_den, accepted only
/// when it lies within tol of x.
std::optional<Rational> rationalize(double x, double tol, long max_den = 1000000000L);
std::optional<GaussianRational> rationalize(Complex z, double tol, long max_den = 1000000000L);

}  // namespace lacuna
