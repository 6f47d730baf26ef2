#pragma once

#include <vector>

#include "lacuna/poly.hpp"

namespace lacuna {

inline constexpr double kDefaultEpsCircle = 1e-8;

enum class Region { disk, circle, exterior };

std::string_view region_name(Region r);
Region classify_region(Complex z, double eps_circle);

struct ZeroCluster {
  Complex location;
  int multiplicity = 0;
  Region region = Region::disk;
  /// Relative backward error of p at the centroid (0 for certified exact roots).
  double residual = 0.0;
  /// Spread of the raw eigenvalues merged into this cluster.
  double radius = 0.0;
};

struct NormResult {
  double value = 0.0;
  double abs_error_bound = 0.0;
  int panels = 0;
};

/// Roots of a nonzero float polynomial: companion-matrix eigenvalues polished
/// by a few Newton steps. Exact zero roots are returned as exact zeros.
std::vector<Complex> polynomial_roots(const FloatPoly& p);

/// Relative backward error |p(z)| / sum |c_k| |z|^k.
double backward_error(const FloatPoly& p, Complex z);

/// (1/2pi) * integral over the circle of |p|, adaptive composite Gauss-Legendre.
NormResult l1_norm(const ComplexPoly& p, double tol = 1e-12, int max_panels = 20000);

/// The normalized polynomial is scale * poly. In float mode poly is already
/// rescaled (and symbolic is false); in exact mode poly is returned unchanged
/// so every structural computation stays rational.
struct Normalized {
  ComplexPoly poly;
  double scale = 1.0;
  bool symbolic = false;
  NormResult norm;
};

Normalized normalize(const ComplexPoly& p, double tol = 1e-12);

/// All deg p zeros grouped into multiplicity clusters, sorted by argument
/// then modulus. Exact inputs are split by square-free decomposition first so
/// multiplicities are certified.
std::vector<ZeroCluster> find_zeros(const ComplexPoly& p, double eps_circle = kDefaultEpsCircle);

struct CommonDiskZeros {
  /// multiplicity holds m_j = min(mult(a_j, p), mult(a_j, p*)).
  std::vector<ZeroCluster> clusters;
  int m = 0;
};

CommonDiskZeros common_disk_zeros(const ComplexPoly& p, const ComplexPoly& pstar,
                                  double eps_circle = kDefaultEpsCircle);

/// Sort key shared by every report: argument in (-pi, pi], then modulus.
bool zero_order_less(Complex a, Complex b);

}  // namespace lacuna
