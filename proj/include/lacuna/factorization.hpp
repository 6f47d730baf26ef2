#pragma once

#include <vector>

#include "lacuna/circle.hpp"
#include "lacuna/coef_vector.hpp"

namespace lacuna {

/// p = G R where G collects the common disk zeros a_j of p and p* together
/// with their reflections: G = prod (z - a_j)^{m_j} (1 - conj(a_j) z)^{m_j}.
///
/// In exact mode G and R are stored exactly; the normalized cofactor is
/// r_scale * R (r_scale folds in 1/||p||_1 and, if G had to be stored as a
/// positive multiple of itself, that multiple).
struct CanonicalData {
  int N = 0;
  int m = 0;
  int s = 0;
  std::vector<ZeroCluster> disk_zeros;  // multiplicity = m_j
  ComplexPoly G;
  ComplexPoly R;
  double r_scale = 1.0;
  /// Set when G is stored as a positive multiple of the product above.
  bool g_rescaled = false;

  /// Fourier coefficient C_k of the normalized R (zero outside [0, s]).
  Complex C(int k) const;
};

struct CircleZero {
  Complex zeta;
  int lambda = 0;
  int mu = 0;
};

/// p = G~ R~ with G~ = G G0 and G0 = prod (z - zeta_j)^{mu_j} (1 - conj(zeta_j) z)^{mu_j}.
struct TildeData {
  std::vector<CircleZero> circle_zeros;
  int mu = 0;
  int m_tilde = 0;
  int s_tilde = 0;
  ComplexPoly G0;
  ComplexPoly G_tilde;
  ComplexPoly R_tilde;
  double r_scale = 1.0;

  Complex C(int k) const;
  bool has_multiple_circle_zeros() const;
};

/// Monic circle part of a monic square-free exact polynomial, obtained by
/// rounding the numerically assembled factor to Q(i) and verifying the
/// division exactly. Throws Errc::exact_split_failed when that fails.
ExactPoly exact_circle_part(const ExactPoly& f, double eps_circle);

/// norm_scale is the factor that normalizes p (1 for an already normalized
/// float polynomial).
CanonicalData canonical_factorization(const ComplexPoly& p, int N, double norm_scale = 1.0,
                                      double eps_circle = kDefaultEpsCircle);

TildeData tilde_factorization(const ComplexPoly& p, int N, const CanonicalData& canonical,
                              double eps_circle = kDefaultEpsCircle);

/// (alpha, beta) of tau = z^{-h} F on the circle; F must be Hermitian
/// symmetric about h.
CoefVector real_symbol_on_circle(const ComplexPoly& F, int half_degree, double tol = 1e-9);
std::vector<Rational> real_symbol_on_circle_exact(const ExactPoly& F, int half_degree);

}  // namespace lacuna
