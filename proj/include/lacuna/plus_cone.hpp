#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lacuna/coef_vector.hpp"

namespace lacuna {

inline constexpr double kDefaultPlusTol = 1e-8;

/// Either a PSD Gram matrix Q with gamma_k = sum_j Q(j+k, j) (plus) or a
/// point t* where tau is below -tol (not plus).
struct PlusCertificate {
  bool plus = false;
  /// tau touches zero (within tolerance) somewhere on the circle.
  bool boundary = false;
  Eigen::MatrixXcd gram;
  double min_eigenvalue = 0.0;
  double reproduction_error = 0.0;
  double t_star = 0.0;
  double value = 0.0;
};

PlusCertificate is_plus(const CoefVector& v, double tol = kDefaultPlusTol);

/// gamma_k = sum_j Q(j+k, j), k = 0..n-1.
std::vector<Complex> gram_gamma(const Eigen::MatrixXcd& Q);

/// Recomputes the certificate from scratch: Gram reproduction and spectrum,
/// or the sign of tau at t*.
bool verify_certificate(const CoefVector& v, const PlusCertificate& cert, double tol = kDefaultPlusTol);

struct CircleMin {
  double t = 0.0;
  double value = 0.0;
};

/// Global minimum of tau over the circle: dense grid, then Brent and Newton
/// refinement of every discrete local minimum.
CircleMin min_on_circle(const CoefVector& v);

/// All refined local minima of tau, ascending by value.
std::vector<CircleMin> local_minima_on_circle(const CoefVector& v);

struct SliceOptions {
  int max_iterations = 20000;
  int plateau_window = 500;
  double plateau_floor = 1e-7;
  int check_every = 25;
  double tol = kDefaultPlusTol;
};

/// Searches for a plus-vector x in span(V_basis) with <x, w> = target by
/// alternating projections between the PSD cone of Gram matrices and the
/// affine preimage of the slice. Every returned vector is certified by
/// is_plus. An optional anchor (a plus-vector of V orthogonal to w) is used to
/// push near-feasible iterates into the cone.
std::optional<CoefVector> find_plus_in_slice(const std::vector<std::vector<double>>& V_basis,
                                             const std::vector<double>& w, double target,
                                             const SliceOptions& options = {},
                                             const std::optional<CoefVector>& anchor = std::nullopt);

struct FacialZero {
  double t = 0.0;
  int order = 0;
};

struct PlusDimension {
  int dim_plus = 0;
  std::vector<CoefVector> vectors;
  /// Circle zeros of the accumulated vector used in the facial check.
  std::vector<FacialZero> zeros;
  int facial_dim = 0;
  int probes = 0;
  std::vector<std::string> log;
};

/// dim_+ of span(V_basis): greedy span growth over complement directions,
/// then the facial check against the zero set of the accumulated
/// plus-vector. Throws Errc::facial_mismatch when the two disagree.
PlusDimension plus_dimension(const std::vector<std::vector<double>>& V_basis,
                             const std::optional<CoefVector>& seed = std::nullopt,
                             const SliceOptions& options = {});

/// Orthonormal basis (columns) of span(vs) in R^n.
Eigen::MatrixXd orthonormal_basis(const std::vector<std::vector<double>>& vs, int n, double rel_tol = 1e-10);

}  // namespace lacuna
