#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lacuna/error.hpp"
#include "lacuna/numeric.hpp"

namespace lacuna {

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
  static constexpr bool exact = true;
  static bool is_zero(const GaussianRational& c) { return c.is_zero(); }
  static GaussianRational conj(const GaussianRational& c) { return c.conj(); }
  static Complex to_complex(const GaussianRational& c) { return c.to_complex(); }
  static GaussianRational from_int(long n) { return GaussianRational(n); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static bool is_zero(const Complex& c) { return c == Complex(0.0, 0.0); }
  static Complex conj(const Complex& c) { return std::conj(c); }
  static Complex to_complex(const Complex& c) { return c; }
  static Complex from_int(long n) { return Complex(static_cast<double>(n), 0.0); }
};

/// Dense polynomial in one complex variable, coefficients in ascending order.
/// The coefficient vector never has a trailing zero; the zero polynomial has
/// an empty vector and degree -1.
template <class T>
class Poly {
 public:
  using Scalar = T;
  using Traits = ScalarTraits<T>;

  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<T> coeffs) : coeffs_(coeffs) { trim(); }

  static Poly constant(T c) { return Poly(std::vector<T>{std::move(c)}); }
  static Poly monomial(T c, int k) {
    std::vector<T> v(static_cast<std::size_t>(k) + 1, T{});
    v.back() = std::move(c);
    return Poly(std::move(v));
  }
  /// z - root
  static Poly linear_root(const T& root) { return Poly({-root, Traits::from_int(1)}); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<T>& coeffs() const { return coeffs_; }
  /// Coefficient of z^k, zero outside the stored range.
  T coeff(int k) const {
    if (k < 0 || k > degree()) return T{};
    return coeffs_[static_cast<std::size_t>(k)];
  }
  const T& leading() const { return coeffs_.back(); }

  Complex operator()(Complex z) const {
    Complex acc(0.0, 0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + Traits::to_complex(*it);
    return acc;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && Traits::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

using ExactPoly = Poly<GaussianRational>;
using FloatPoly = Poly<Complex>;

template <class T>
Poly<T> operator+(const Poly<T>& a, const Poly<T>& b) {
  std::vector<T> out(static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1));
  for (int k = 0; k <= a.degree(); ++k) out[k] += a.coeffs()[k];
  for (int k = 0; k <= b.degree(); ++k) out[k] += b.coeffs()[k];
  return Poly<T>(std::move(out));
}

template <class T>
Poly<T> operator-(const Poly<T>& a) {
  std::vector<T> out = a.coeffs();
  for (auto& c : out) c = -c;
  return Poly<T>(std::move(out));
}

template <class T>
Poly<T> operator-(const Poly<T>& a, const Poly<T>& b) {
  return a + (-b);
}

template <class T>
Poly<T> operator*(const Poly<T>& a, const Poly<T>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<T> out(static_cast<std::size_t>(a.degree() + b.degree() + 1));
  for (int i = 0; i <= a.degree(); ++i) {
    if (ScalarTraits<T>::is_zero(a.coeffs()[i])) continue;
    for (int j = 0; j <= b.degree(); ++j) out[i + j] += a.coeffs()[i] * b.coeffs()[j];
  }
  return Poly<T>(std::move(out));
}

template <class T>
Poly<T> mul(const Poly<T>& a, const Poly<T>& b) {
  return a * b;
}

template <class T>
Poly<T> scale(const Poly<T>& a, const T& c) {
  std::vector<T> out = a.coeffs();
  for (auto& x : out) x *= c;
  return Poly<T>(std::move(out));
}

template <class T>
Poly<T> pow(const Poly<T>& a, int e) {
  Poly<T> out = Poly<T>::constant(ScalarTraits<T>::from_int(1));
  for (int i = 0; i < e; ++i) out = out * a;
  return out;
}

template <class T>
Poly<T> derivative(const Poly<T>& a) {
  if (a.degree() <= 0) return {};
  std::vector<T> out(static_cast<std::size_t>(a.degree()));
  for (int k = 1; k <= a.degree(); ++k) out[k - 1] = a.coeffs()[k] * ScalarTraits<T>::from_int(k);
  return Poly<T>(std::move(out));
}

/// Quotient and remainder of plain long division.
template <class T>
std::pair<Poly<T>, Poly<T>> divmod(const Poly<T>& p, const Poly<T>& d) {
  if (d.is_zero()) throw Error(Errc::invalid_argument, "polynomial division by zero");
  if (p.degree() < d.degree()) return {Poly<T>{}, p};
  std::vector<T> rem = p.coeffs();
  std::vector<T> quot(static_cast<std::size_t>(p.degree() - d.degree() + 1));
  const T lead = d.leading();
  for (int k = p.degree() - d.degree(); k >= 0; --k) {
    const T c = rem[k + d.degree()] / lead;
    quot[k] = c;
    for (int j = 0; j <= d.degree(); ++j) rem[k + j] -= c * d.coeffs()[j];
    rem[k + d.degree()] = T{};
  }
  rem.resize(static_cast<std::size_t>(std::max(d.degree(), 0)));
  return {Poly<T>(std::move(quot)), Poly<T>(std::move(rem))};
}

template <class T>
double coeff_norm(const Poly<T>& p) {
  double s = 0.0;
  for (const auto& c : p.coeffs()) s = std::max(s, std::abs(ScalarTraits<T>::to_complex(c)));
  return s;
}

/// Exact division. In exact mode the remainder must vanish identically; in
/// float mode its max-norm must not exceed tol * max|p|.
template <class T>
Poly<T> divide_exact(const Poly<T>& p, const Poly<T>& d, double tol = 1e-9) {
  auto [q, r] = divmod(p, d);
  if constexpr (ScalarTraits<T>::exact) {
    if (!r.is_zero()) throw Error(Errc::not_divisible, "nonzero remainder in exact division");
  } else {
    if (coeff_norm(r) > tol * std::max(coeff_norm(p), 1e-300))
      throw Error(Errc::not_divisible,
                  "remainder " + std::to_string(coeff_norm(r)) + " exceeds tolerance in division");
  }
  return q;
}

/// p*(z) = z^N conj(p(1/conj z)); coefficient k is conj(c_{N-k}).
template <class T>
Poly<T> conjugate_reciprocal(const Poly<T>& p, int N) {
  if (p.degree() > N)
    throw Error(Errc::invalid_argument, "conjugate_reciprocal: deg p = " + std::to_string(p.degree()) +
                                            " exceeds N = " + std::to_string(N));
  std::vector<T> out(static_cast<std::size_t>(N) + 1);
  for (int k = 0; k <= N; ++k) out[k] = ScalarTraits<T>::conj(p.coeff(N - k));
  return Poly<T>(std::move(out));
}

/// Number of trailing zero coefficients at z^0 (multiplicity of the root 0).
template <class T>
int low_order(const Poly<T>& p) {
  int k = 0;
  while (k <= p.degree() && ScalarTraits<T>::is_zero(p.coeffs()[k])) ++k;
  return k;
}

/// p / z^k for k = low_order(p).
template <class T>
Poly<T> strip_low_order(const Poly<T>& p) {
  const int k = low_order(p);
  return Poly<T>(std::vector<T>(p.coeffs().begin() + k, p.coeffs().end()));
}

template <class T>
Poly<T> make_monic(const Poly<T>& p) {
  if (p.is_zero()) return p;
  return scale(p, ScalarTraits<T>::from_int(1) / p.leading());
}

FloatPoly to_float(const ExactPoly& p);

/// Monic gcd over Q(i). gcd(p, 0) = p / lead(p).
ExactPoly gcd_exact(const ExactPoly& p, const ExactPoly& q);

/// Yun's algorithm: returns monic square-free factors f_1, f_2, ... with
/// monic(p) = prod f_i^i (p assumed to have p(0) != 0 or not; zero roots
/// are handled like any other root).
std::vector<ExactPoly> square_free_decomposition(const ExactPoly& p);

/// Forbidden-frequency pattern: Lambda = {0..N} minus {k_1 < ... < k_M}.
class LacunaryPattern {
 public:
  LacunaryPattern(int N, std::vector<int> forbidden);
  /// Builds the pattern from Lambda itself; 0 and max(Lambda) must be present.
  static LacunaryPattern from_lambda(const std::set<int>& lambda);

  int N() const { return N_; }
  int M() const { return static_cast<int>(forbidden_.size()); }
  const std::vector<int>& forbidden() const { return forbidden_; }
  bool contains(int k) const;
  std::vector<int> lambda() const;

 private:
  int N_;
  std::vector<int> forbidden_;
};

/// True iff every coefficient outside Lambda is zero. In float mode a
/// coefficient counts as zero when |c| <= tol_rel * max|c|.
template <class T>
bool spectrum_in(const Poly<T>& p, const LacunaryPattern& lambda, double tol_rel = 1e-10) {
  const double cut = ScalarTraits<T>::exact ? 0.0 : tol_rel * coeff_norm(p);
  for (int k = 0; k <= p.degree(); ++k) {
    if (lambda.contains(k)) continue;
    if constexpr (ScalarTraits<T>::exact) {
      if (!p.coeffs()[k].is_zero()) return false;
    } else {
      if (std::abs(p.coeffs()[k]) > cut) return false;
    }
  }
  return true;
}

enum class Mode { exact, floating };

std::string_view mode_name(Mode m);

/// A polynomial together with its numeric backend.
class ComplexPoly {
 public:
  ComplexPoly() : poly_(ExactPoly{}) {}
  ComplexPoly(ExactPoly p) : poly_(std::move(p)) {}  // NOLINT(implicit)
  ComplexPoly(FloatPoly p) : poly_(std::move(p)) {}  // NOLINT(implicit)

  Mode mode() const { return std::holds_alternative<ExactPoly>(poly_) ? Mode::exact : Mode::floating; }
  bool is_exact() const { return mode() == Mode::exact; }
  const ExactPoly& exact() const;
  const FloatPoly& floating() const;
  FloatPoly to_float() const;

  int degree() const;
  bool is_zero() const { return degree() < 0; }
  Complex operator()(Complex z) const;
  std::vector<Complex> coeffs_complex() const;

  template <class F>
  decltype(auto) visit(F&& f) const {
    return std::visit(std::forward<F>(f), poly_);
  }

 private:
  std::variant<ExactPoly, FloatPoly> poly_;
};

ComplexPoly conjugate_reciprocal(const ComplexPoly& p, int N);
bool spectrum_in(const ComplexPoly& p, const LacunaryPattern& lambda, double tol_rel = 1e-10);
/// c * p; an exact scalar keeps exact mode, a float scalar forces float mode.
ComplexPoly scale(const ComplexPoly& p, const GaussianRational& c);
ComplexPoly scale(const ComplexPoly& p, Complex c);
ComplexPoly mul(const ComplexPoly& a, const ComplexPoly& b);
ComplexPoly divide_exact(const ComplexPoly& p, const ComplexPoly& d, double tol = 1e-9);
ComplexPoly gcd_exact(const ComplexPoly& p, const ComplexPoly& q);

std::string to_string(const ExactPoly& p);
std::string to_string(const FloatPoly& p);
std::string to_string(const ComplexPoly& p);

}  // namespace lacuna
