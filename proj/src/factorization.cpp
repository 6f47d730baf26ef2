#include "lacuna/factorization.hpp"

#include <cmath>

namespace lacuna {
namespace {

constexpr double kFloatDivideTol = 1e-7;
constexpr double kRationalizeTol = 1e-11;

Complex coefficient(const ComplexPoly& F, int k) {
  if (k < 0 || k > F.degree()) return {0.0, 0.0};
  return F.coeffs_complex()[k];
}

void check_hermitian(const ComplexPoly& F, int h, double tol) {
  if (F.degree() > 2 * h || F.is_zero())
    throw Error(Errc::not_hermitian_symmetric,
                "degree " + std::to_string(F.degree()) + " is incompatible with symmetry about " + std::to_string(h));
  if (F.is_exact()) {
    const ExactPoly& E = F.exact();
    for (int l = 0; l <= h; ++l)
      if (E.coeff(h + l) != E.coeff(h - l).conj())
        throw Error(Errc::not_hermitian_symmetric, "coefficients " + std::to_string(h + l) + " and " +
                                                       std::to_string(h - l) + " are not conjugate");
    return;
  }
  const double cut = tol * coeff_norm(F.floating());
  for (int l = 0; l <= h; ++l)
    if (std::abs(coefficient(F, h + l) - std::conj(coefficient(F, h - l))) > cut)
      throw Error(Errc::not_hermitian_symmetric, "coefficients " + std::to_string(h + l) + " and " +
                                                     std::to_string(h - l) + " are not conjugate within tolerance");
}

bool is_exactly_hermitian(const ExactPoly& F, int h) {
  if (F.degree() > 2 * h || F.is_zero()) return false;
  for (int l = 0; l <= h; ++l)
    if (F.coeff(h + l) != F.coeff(h - l).conj()) return false;
  return sgn(F.coeff(h).re()) > 0;
}

FloatPoly reflected_pair_power(Complex a, int k) {
  // (z - a)^k (1 - conj(a) z)^k; for a = 0 this is z^k.
  const FloatPoly f({-a, Complex(1.0, 0.0)});
  const FloatPoly g({Complex(1.0, 0.0), -std::conj(a)});
  return pow(f * g, k);
}

std::vector<Complex> roots_in(const ExactPoly& f) {
  if (f.degree() <= 0) return {};
  return polynomial_roots(to_float(f));
}

CanonicalData canonical_exact(const ExactPoly& p, int N, double norm_scale, double eps_circle) {
  CanonicalData out;
  out.N = N;
  const ExactPoly pstar = conjugate_reciprocal(p, N);
  const ExactPoly phi = gcd_exact(p, pstar);
  const int k0 = low_order(phi);
  ExactPoly G_monic = ExactPoly::monomial(GaussianRational(1), k0);
  if (k0 > 0) out.disk_zeros.push_back(ZeroCluster{Complex(0.0, 0.0), k0, Region::disk, 0.0, 0.0});
  const auto factors = square_free_decomposition(strip_low_order(phi));
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const int mult = static_cast<int>(i) + 1;
    if (factors[i].degree() <= 0) continue;
    const ExactPoly off_circle = divide_exact(factors[i], exact_circle_part(factors[i], eps_circle));
    G_monic = G_monic * pow(off_circle, mult);
    const FloatPoly fl = to_float(off_circle);
    for (const Complex& a : roots_in(off_circle))
      if (classify_region(a, eps_circle) == Region::disk)
        out.disk_zeros.push_back(ZeroCluster{a, mult, Region::disk, backward_error(fl, a), 0.0});
  }
  std::sort(out.disk_zeros.begin(), out.disk_zeros.end(),
            [](const ZeroCluster& a, const ZeroCluster& b) { return zero_order_less(a.location, b.location); });
  for (const auto& c : out.disk_zeros) out.m += c.multiplicity;
  out.s = N - 2 * out.m;

  // G = prod (-conj a_j)^{m_j} * G_monic.
  Complex kappa(1.0, 0.0);
  FloatPoly G_true = FloatPoly::constant(Complex(1.0, 0.0));
  for (const auto& c : out.disk_zeros) {
    if (c.location != Complex(0.0, 0.0)) kappa *= std::pow(-std::conj(c.location), c.multiplicity);
    G_true = G_true * reflected_pair_power(c.location, c.multiplicity);
  }
  ExactPoly G;
  bool exact_kappa = false;
  if (auto q = rationalize(kappa, kRationalizeTol * std::max(1.0, std::abs(kappa)))) {
    G = scale(G_monic, *q);
    exact_kappa = is_exactly_hermitian(G, out.m);
  }
  double g_scale = 1.0;
  if (!exact_kappa) {
    // Irrational normalizing constant: store the positive multiple
    // conj(coef_m) * G_monic and remember the ratio numerically.
    G = scale(G_monic, G_monic.coeff(out.m).conj());
    if (!is_exactly_hermitian(G, out.m))
      throw Error(Errc::not_hermitian_symmetric, "common-zero factor G is not Hermitian symmetric");
    const Complex ratio = to_float(G)(Complex(1.0, 0.0)) / G_true(Complex(1.0, 0.0));
    g_scale = ratio.real();
    out.g_rescaled = true;
  }
  out.G = G;
  out.R = divide_exact(p, G);
  out.r_scale = norm_scale * g_scale;
  return out;
}

CanonicalData canonical_float(const FloatPoly& p, int N, double norm_scale, double eps_circle) {
  CanonicalData out;
  out.N = N;
  const FloatPoly pstar = conjugate_reciprocal(p, N);
  const auto common = common_disk_zeros(p, pstar, eps_circle);
  out.disk_zeros = common.clusters;
  out.m = common.m;
  out.s = N - 2 * out.m;
  FloatPoly G = FloatPoly::constant(Complex(1.0, 0.0));
  for (const auto& c : out.disk_zeros) G = G * reflected_pair_power(c.location, c.multiplicity);
  out.G = G;
  out.R = divide_exact(p, G, kFloatDivideTol);
  out.r_scale = norm_scale;
  return out;
}

}  // namespace

ExactPoly exact_circle_part(const ExactPoly& f, double eps_circle) {
  const auto roots = roots_in(f);
  std::vector<Complex> on_circle;
  for (const Complex& z : roots)
    if (classify_region(z, eps_circle) == Region::circle) on_circle.push_back(z / std::abs(z));
  if (on_circle.empty()) return ExactPoly::constant(GaussianRational(1));
  if (on_circle.size() == roots.size()) return make_monic(f);
  FloatPoly approx = FloatPoly::constant(Complex(1.0, 0.0));
  for (const Complex& z : on_circle) approx = approx * FloatPoly::linear_root(z);
  std::vector<GaussianRational> coeffs;
  for (const Complex& c : approx.coeffs()) {
    auto q = rationalize(c, kRationalizeTol * std::max(1.0, std::abs(c)));
    if (!q) throw Error(Errc::exact_split_failed, "circle factor has no nearby Gaussian-rational coefficients");
    coeffs.push_back(*q);
  }
  ExactPoly candidate(std::move(coeffs));
  if (candidate.degree() != static_cast<int>(on_circle.size()) || !divmod(f, candidate).second.is_zero())
    throw Error(Errc::exact_split_failed, "circle zeros do not split off over Q(i)");
  return candidate;
}

Complex CanonicalData::C(int k) const {
  return coefficient(R, k) * r_scale;
}

Complex TildeData::C(int k) const {
  return coefficient(R_tilde, k) * r_scale;
}

bool TildeData::has_multiple_circle_zeros() const {
  for (const auto& z : circle_zeros)
    if (z.lambda > 1) return true;
  return false;
}

CanonicalData canonical_factorization(const ComplexPoly& p, int N, double norm_scale, double eps_circle) {
  if (p.is_zero()) throw Error(Errc::invalid_argument, "canonical factorization of the zero polynomial");
  if (p.degree() > N) throw Error(Errc::invalid_argument, "deg p exceeds N");
  CanonicalData out = p.is_exact() ? canonical_exact(p.exact(), N, norm_scale, eps_circle)
                                   : canonical_float(p.floating(), N, norm_scale, eps_circle);
  if (out.R.degree() > out.s) throw Error(Errc::invariant_violation, "deg R exceeds s");
  return out;
}

TildeData tilde_factorization(const ComplexPoly& p, int N, const CanonicalData& canonical, double eps_circle) {
  TildeData out;
  if (p.is_exact()) {
    const auto factors = square_free_decomposition(strip_low_order(p.exact()));
    ExactPoly G0 = ExactPoly::constant(GaussianRational(1));
    GaussianRational kappa0(1);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const int lambda = static_cast<int>(i) + 1;
      if (factors[i].degree() <= 0) continue;
      const ExactPoly circle = exact_circle_part(factors[i], eps_circle);
      const int mu = lambda / 2;
      for (const Complex& z : roots_in(circle)) out.circle_zeros.push_back(CircleZero{z / std::abs(z), lambda, mu});
      if (mu == 0 || circle.degree() <= 0) continue;
      G0 = G0 * pow(circle, 2 * mu);
      // prod over roots of (-conj zeta) = conj(circle(0)) for monic circle.
      for (int k = 0; k < mu; ++k) kappa0 *= circle.coeff(0).conj();
    }
    out.G0 = scale(G0, kappa0);
  } else {
    FloatPoly G0 = FloatPoly::constant(Complex(1.0, 0.0));
    for (const auto& c : find_zeros(p, eps_circle)) {
      if (c.region != Region::circle) continue;
      const Complex zeta = c.location / std::abs(c.location);
      const int mu = c.multiplicity / 2;
      out.circle_zeros.push_back(CircleZero{zeta, c.multiplicity, mu});
      if (mu > 0) G0 = G0 * reflected_pair_power(zeta, mu);
    }
    out.G0 = G0;
  }
  std::sort(out.circle_zeros.begin(), out.circle_zeros.end(),
            [](const CircleZero& a, const CircleZero& b) { return zero_order_less(a.zeta, b.zeta); });
  for (const auto& z : out.circle_zeros) out.mu += z.mu;
  out.m_tilde = canonical.m + out.mu;
  out.s_tilde = N - 2 * out.m_tilde;
  check_hermitian(out.G0, out.mu, 1e-9);
  out.G_tilde = mul(canonical.G, out.G0);
  out.R_tilde = divide_exact(p, out.G_tilde, kFloatDivideTol);
  out.r_scale = canonical.r_scale;
  if (out.R_tilde.degree() > out.s_tilde) throw Error(Errc::invariant_violation, "deg R~ exceeds s~");
  return out;
}

CoefVector real_symbol_on_circle(const ComplexPoly& F, int half_degree, double tol) {
  check_hermitian(F, half_degree, tol);
  CoefVector v(half_degree);
  v.alpha[0] = coefficient(F, half_degree).real() / 2.0;
  for (int l = 1; l <= half_degree; ++l) {
    const Complex c = coefficient(F, half_degree + l);
    v.alpha[l] = c.real();
    v.beta[l - 1] = c.imag();
  }
  return v;
}

std::vector<Rational> real_symbol_on_circle_exact(const ExactPoly& F, int half_degree) {
  check_hermitian(F, half_degree, 0.0);
  std::vector<Rational> v(static_cast<std::size_t>(2 * half_degree + 1));
  v[0] = F.coeff(half_degree).re() / 2;
  for (int l = 1; l <= half_degree; ++l) {
    v[l] = F.coeff(half_degree + l).re();
    v[half_degree + l] = F.coeff(half_degree + l).im();
  }
  return v;
}

}  // namespace lacuna
