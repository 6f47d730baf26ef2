#pragma once

#include <span>
#include <vector>

#include "lacuna/poly.hpp"

namespace lacuna {

/// (alpha_0..alpha_d, beta_1..beta_d) and its trigonometric polynomial
///   tau(e^{it}) = 2 [alpha_0 + sum_k (alpha_k cos kt - beta_k sin kt)],
/// i.e. tau = sum_{|k|<=d} gamma_k z^k with gamma_0 = 2 alpha_0 and
/// gamma_k = alpha_k + i beta_k.
struct CoefVector {
  int d = 0;
  std::vector<double> alpha;
  std::vector<double> beta;

  CoefVector() : alpha(1, 0.0) {}
  explicit CoefVector(int d_) : d(d_), alpha(d_ + 1, 0.0), beta(d_, 0.0) {}

  /// Flat layout (alpha_0..alpha_d, beta_1..beta_d); the length must be odd.
  static CoefVector from_flat(std::span<const double> v);
  std::vector<double> flat() const;
  int size() const { return 2 * d + 1; }

  /// gamma_k for -d <= k <= d.
  Complex gamma(int k) const;
  double tau(double t) const;
  /// order-th derivative of tau(e^{it}) with respect to t.
  double tau_derivative(double t, int order) const;
};

/// Q(z) = z^d tau(z): a polynomial of degree <= 2d with coefficient
/// gamma_{k-d} at z^k.
FloatPoly symbol_poly(const CoefVector& v);

/// Exact analogue for a rational flat vector.
ExactPoly symbol_poly(std::span<const Rational> flat);

std::vector<double> to_double(std::span<const Rational> v);

}  // namespace lacuna
