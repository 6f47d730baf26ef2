#include "lacuna/coef_vector.hpp"

#include <cmath>

namespace lacuna {

CoefVector CoefVector::from_flat(std::span<const double> v) {
  if (v.size() % 2 == 0) throw Error(Errc::invalid_argument, "coefficient vector length must be odd");
  CoefVector out(static_cast<int>(v.size() / 2));
  for (int k = 0; k <= out.d; ++k) out.alpha[k] = v[k];
  for (int k = 1; k <= out.d; ++k) out.beta[k - 1] = v[out.d + k];
  return out;
}

std::vector<double> CoefVector::flat() const {
  std::vector<double> out(alpha);
  out.insert(out.end(), beta.begin(), beta.end());
  return out;
}

Complex CoefVector::gamma(int k) const {
  if (k == 0) return {2.0 * alpha[0], 0.0};
  const int a = std::abs(k);
  if (a > d) return {0.0, 0.0};
  const Complex g(alpha[a], beta[a - 1]);
  return k > 0 ? g : std::conj(g);
}

double CoefVector::tau(double t) const {
  double s = alpha[0];
  for (int k = 1; k <= d; ++k) s += alpha[k] * std::cos(k * t) - beta[k - 1] * std::sin(k * t);
  return 2.0 * s;
}

double CoefVector::tau_derivative(double t, int order) const {
  if (order == 0) return tau(t);
  // d^o/dt^o of 2 Re(gamma_k e^{ikt}) = 2 Re(gamma_k (ik)^o e^{ikt}).
  double s = 0.0;
  for (int k = 1; k <= d; ++k) {
    const Complex g(alpha[k], beta[k - 1]);
    s += 2.0 * std::real(g * std::pow(Complex(0.0, k), order) * std::polar(1.0, k * t));
  }
  return s;
}

FloatPoly symbol_poly(const CoefVector& v) {
  std::vector<Complex> c(static_cast<std::size_t>(2 * v.d + 1));
  for (int k = -v.d; k <= v.d; ++k) c[k + v.d] = v.gamma(k);
  return FloatPoly(std::move(c));
}

ExactPoly symbol_poly(std::span<const Rational> flat) {
  if (flat.size() % 2 == 0) throw Error(Errc::invalid_argument, "coefficient vector length must be odd");
  const int d = static_cast<int>(flat.size() / 2);
  std::vector<GaussianRational> c(static_cast<std::size_t>(2 * d + 1));
  c[d] = GaussianRational(2 * flat[0]);
  for (int k = 1; k <= d; ++k) {
    c[d + k] = GaussianRational(flat[k], flat[d + k]);
    c[d - k] = GaussianRational(flat[k], -flat[d + k]);
  }
  return ExactPoly(std::move(c));
}

std::vector<double> to_double(std::span<const Rational> v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(to_double(q));
  return out;
}

}  // namespace lacuna
