#include <cmath>
#include <numbers>

#include "lacuna/classifier.hpp"

namespace lacuna {
namespace {

bool parallel_exact(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

bool parallel_float(const std::vector<double>& a, const std::vector<double>& b) {
  double aa = 0, bb = 0, ab = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    aa += a[i] * a[i];
    bb += b[i] * b[i];
    ab += a[i] * b[i];
  }
  if (aa == 0.0 || bb == 0.0) return true;
  const double sin2 = std::max(0.0, 1.0 - ab * ab / (aa * bb));
  return std::sqrt(sin2) <= 1e-6;
}

ComplexPoly cofactor_product(const ComplexPoly& Q, const ComplexPoly& R) { return mul(Q, R); }

double max_abs_on_grid(const ComplexPoly& num, const ComplexPoly& den, int grid) {
  double m = 0.0;
  for (int i = 0; i < grid; ++i) {
    const Complex z = std::polar(1.0, (i + 0.5) * 2.0 * std::numbers::pi / grid);
    m = std::max(m, std::abs(num(z) / den(z)));
  }
  return m;
}

}  // namespace

std::string_view witness_kind_name(WitnessKind k) {
  return k == WitnessKind::non_extreme ? "non_extreme" : "non_exposed";
}

WitnessChecks validate_witness(Witness& w, const ComplexPoly& denominator, const LacunaryPattern& lambda) {
  // h = Q / G is judged through Q conj(G), whose phase is the phase of h. This
  // stays accurate where G nearly vanishes on the circle; the additive floor
  // absorbs rounding in the two evaluations.
  const double floor = kWitnessRoundingFloor * coeff_norm(w.Q.to_float()) * coeff_norm(denominator.to_float());
  std::vector<Complex> qv, gv;
  double gmax = 0.0;
  for (int i = 0; i < kWitnessGrid; ++i) {
    const Complex z = std::polar(1.0, (i + 0.5) * 2.0 * std::numbers::pi / kWitnessGrid);
    qv.push_back(w.Q(z));
    gv.push_back(denominator(z));
    gmax = std::max(gmax, std::abs(gv.back()));
  }
  w.h_samples.clear();
  w.max_imag = 0.0;
  w.min_real = INFINITY;
  w.max_real = -INFINITY;
  bool admissible = gmax > 0.0 && std::isfinite(floor);
  double spread_scale = 0.0;
  for (int i = 0; i < kWitnessGrid; ++i) {
    const Complex h = qv[i] / gv[i];
    w.h_samples.push_back(h);
    const Complex prod = qv[i] * std::conj(gv[i]);
    const double allow = kWitnessTol * std::abs(qv[i]) * std::abs(gv[i]) + floor;
    if (std::abs(prod.imag()) > allow) admissible = false;
    if (w.kind == WitnessKind::non_exposed && prod.real() < -allow) admissible = false;
    w.max_imag = std::max(w.max_imag, std::abs(h.imag()));
    // The spread of h is read where G is well away from zero.
    if (std::abs(gv[i]) < 1e-3 * gmax) continue;
    w.min_real = std::min(w.min_real, h.real());
    w.max_real = std::max(w.max_real, h.real());
    spread_scale = std::max(spread_scale, std::abs(h));
  }
  w.checks.h_admissible = admissible;
  w.checks.h_nonconstant = (w.max_real - w.min_real) > kWitnessTol * std::max(1.0, spread_scale);
  w.checks.q_in_lambda = spectrum_in(w.q, lambda);
  return w.checks;
}

Witness make_non_extreme_witness(const KernelBasis& kernel, const CanonicalData& canonical,
                                 const LacunaryPattern& lambda) {
  if (kernel.dim <= 1)
    throw Error(Errc::precondition_failed, "kernel has dimension " + std::to_string(kernel.dim) + "; p is extreme");
  Witness w;
  w.kind = WitnessKind::non_extreme;
  const int m = canonical.m;
  if (kernel.exact && canonical.G.is_exact()) {
    const auto g = real_symbol_on_circle_exact(canonical.G.exact(), m);
    for (const auto& v : *kernel.exact) {
      if (parallel_exact(v, g)) continue;
      w.exact_vector = v;
      w.coef_vector = CoefVector::from_flat(to_double(v));
      w.Q = symbol_poly(v);
      break;
    }
  } else {
    const auto g = real_symbol_on_circle(canonical.G, m).flat();
    for (const auto& v : kernel.vectors) {
      if (parallel_float(v, g)) continue;
      w.coef_vector = CoefVector::from_flat(v);
      w.Q = symbol_poly(w.coef_vector);
      break;
    }
  }
  if (w.Q.is_zero()) throw Error(Errc::witness_validation_failed, "every kernel vector is parallel to the symbol of G");
  w.q = cofactor_product(w.Q, canonical.R);
  validate_witness(w, canonical.G, lambda);
  if (!w.checks.all()) throw Error(Errc::witness_validation_failed, "non-extreme witness failed validation");
  return w;
}

Witness make_non_exposed_witness(const std::vector<CoefVector>& plus_basis, const TildeData& tilde,
                                 const LacunaryPattern& lambda) {
  const auto seed = real_symbol_on_circle(tilde.G_tilde, tilde.m_tilde).flat();
  const CoefVector* chosen = nullptr;
  for (const auto& v : plus_basis)
    if (v.size() == static_cast<int>(seed.size()) && !parallel_float(v.flat(), seed)) {
      chosen = &v;
      break;
    }
  if (!chosen) throw Error(Errc::precondition_failed, "no plus-vector independent of the symbol of G~; p is exposed");

  Witness w;
  w.kind = WitnessKind::non_exposed;
  w.coef_vector = *chosen;
  // Prefer an exact witness when the vector is (numerically) rational.
  if (tilde.G_tilde.is_exact() && tilde.R_tilde.is_exact()) {
    std::vector<Rational> exact;
    const std::vector<double> flat = chosen->flat();
    double big = 0.0;
    for (double x : flat) big = std::max(big, std::abs(x));
    for (double x : flat) {
      auto q = rationalize(x / big, 1e-12, 1000000L);
      if (!q) break;
      exact.push_back(*q);
    }
    if (big > 0.0 && exact.size() == flat.size()) {
      Witness trial = w;
      trial.exact_vector = exact;
      trial.coef_vector = CoefVector::from_flat(to_double(exact));
      trial.Q = symbol_poly(exact);
      trial.q = cofactor_product(trial.Q, tilde.R_tilde);
      if (validate_witness(trial, tilde.G_tilde, lambda).all()) return trial;
    }
  }
  w.Q = symbol_poly(w.coef_vector);
  w.q = cofactor_product(w.Q, tilde.R_tilde);
  validate_witness(w, tilde.G_tilde, lambda);
  if (!w.checks.all()) throw Error(Errc::witness_validation_failed, "non-exposed witness failed validation");
  return w;
}

Witness make_non_exposed_from_non_extreme(const Witness& non_extreme, const CanonicalData& canonical,
                                          const TildeData& tilde, const LacunaryPattern& lambda) {
  // h' = 1 + eps h with eps a power of two below 1 / (2 max|h|), so h' >= 1/2.
  const double hmax = max_abs_on_grid(non_extreme.Q, canonical.G, 4 * kWitnessGrid);
  const int e = static_cast<int>(std::ceil(std::log2(std::max(2.0 * hmax, 1e-300))));
  Witness w;
  w.kind = WitnessKind::non_exposed;
  const ComplexPoly G0Q = mul(tilde.G0, non_extreme.Q);
  if (G0Q.is_exact() && tilde.G_tilde.is_exact()) {
    Rational eps(1);
    if (e >= 0) eps /= Rational(mpz_class(1) << static_cast<unsigned>(e));
    else eps *= Rational(mpz_class(1) << static_cast<unsigned>(-e));
    w.Q = tilde.G_tilde.exact() + scale(G0Q.exact(), GaussianRational(eps));
    w.exact_vector = real_symbol_on_circle_exact(w.Q.exact(), tilde.m_tilde);
    w.coef_vector = CoefVector::from_flat(to_double(*w.exact_vector));
  } else {
    const double eps = std::ldexp(1.0, -e);
    w.Q = tilde.G_tilde.to_float() + scale(G0Q.to_float(), Complex(eps, 0.0));
    w.coef_vector = real_symbol_on_circle(w.Q, tilde.m_tilde, 1e-8);
  }
  // Q' R~ = p + eps Q R.
  w.q = mul(w.Q, tilde.R_tilde);
  validate_witness(w, tilde.G_tilde, lambda);
  if (!w.checks.all()) throw Error(Errc::witness_validation_failed, "derived non-exposed witness failed validation");
  return w;
}

}  // namespace lacuna
