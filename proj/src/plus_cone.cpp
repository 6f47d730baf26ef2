#include "lacuna/plus_cone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <boost/math/tools/minima.hpp>

#include "lacuna/circle.hpp"

namespace lacuna {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kReproductionTol = 1e-8;
constexpr double kNearCircleBand = 1e-6;
constexpr double kPairDistance = 1e-3;
constexpr double kFacialBand = 5e-3;
constexpr double kFacialNullTol = 1e-6;
constexpr double kFacialFitTol = 1e-3;

double gamma_scale(const CoefVector& v) {
  double s = 0.0;
  for (int k = 0; k <= v.d; ++k) s = std::max(s, std::abs(v.gamma(k)));
  return s;
}

int effective_degree(const CoefVector& v, double scale) {
  int dd = v.d;
  while (dd > 0 && std::abs(v.gamma(dd)) <= 1e-14 * scale) --dd;
  return dd;
}

// z^{d'} tau(z) for the effective degree d'.
FloatPoly symbol_of_degree(const CoefVector& v, int dd) {
  std::vector<Complex> c(static_cast<std::size_t>(2 * dd + 1));
  for (int k = -dd; k <= dd; ++k) c[k + dd] = v.gamma(k);
  return FloatPoly(std::move(c));
}

double min_eigenvalue(const Eigen::MatrixXcd& Q) {
  if (Q.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Q, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double reproduction_error(const CoefVector& v, const Eigen::MatrixXcd& Q) {
  const auto g = gram_gamma(Q);
  double err = 0.0;
  for (int k = 0; k <= v.d; ++k) err = std::max(err, std::abs(v.gamma(k) - g[k]));
  return err;
}

struct Factored {
  Eigen::MatrixXcd gram;
  bool touches = false;
};

// Gram matrix of tau + shift from a Fejer-Riesz factor |h|^2, corrected so it
// reproduces the coefficients exactly. Fails when the roots of z^d tau do not
// pair up across the circle.
std::optional<Factored> fejer_riesz_gram(const CoefVector& v, double shift) {
  CoefVector u = v;
  u.alpha[0] += shift / 2.0;
  const int n = u.d + 1;
  Factored out;
  out.gram = Eigen::MatrixXcd::Zero(n, n);
  const double scale = gamma_scale(u);
  if (scale == 0.0) return out;
  const int dd = effective_degree(u, scale);
  const double g0 = u.gamma(0).real();
  if (g0 <= 0.0) return std::nullopt;
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n);
  if (dd == 0) {
    c(0) = std::sqrt(g0);
  } else {
    std::vector<Complex> pick;
    std::vector<Complex> near;
    for (const Complex& r : polynomial_roots(symbol_of_degree(u, dd))) {
      const double mod = std::abs(r);
      if (mod > 1.0 + kNearCircleBand) pick.push_back(r);
      else if (mod >= 1.0 - kNearCircleBand) near.push_back(r);
    }
    std::sort(near.begin(), near.end(), [](Complex a, Complex b) { return std::arg(a) < std::arg(b); });
    if (near.size() % 2 != 0) return std::nullopt;
    for (std::size_t i = 0; i < near.size(); i += 2) {
      if (std::abs(near[i] - near[i + 1]) > kPairDistance) return std::nullopt;
      const Complex mid = 0.5 * (near[i] + near[i + 1]);
      pick.push_back(mid / std::abs(mid));
      out.touches = true;
    }
    if (static_cast<int>(pick.size()) != dd) return std::nullopt;
    FloatPoly h = FloatPoly::constant(Complex(1.0, 0.0));
    for (const Complex& r : pick) h = h * FloatPoly::linear_root(r);
    for (int k = 0; k <= dd; ++k) c(k) = h.coeff(k);
    c *= std::sqrt(g0) / c.norm();
  }
  Eigen::MatrixXcd Q = c * c.adjoint();
  // Spread the remaining coefficient error evenly along each diagonal.
  const auto g = gram_gamma(Q);
  for (int k = 0; k < n; ++k) {
    const Complex r = (u.gamma(k) - g[k]) / static_cast<double>(n - k);
    for (int j = 0; j + k < n; ++j) {
      if (k == 0) {
        Q(j, j) += r.real();
      } else {
        Q(j + k, j) += r;
        Q(j, j + k) += std::conj(r);
      }
    }
  }
  out.gram = 0.5 * (Q + Q.adjoint());
  return out;
}

double brent_refine(const CoefVector& v, double a, double b) {
  auto f = [&v](double t) { return v.tau(t); };
  const auto r = boost::math::tools::brent_find_minima(f, a, b, 40);
  double t = r.first;
  // Newton on tau' to finish.
  for (int i = 0; i < 4; ++i) {
    const double d2 = v.tau_derivative(t, 2);
    if (!(d2 > 0.0)) break;
    const double next = t - v.tau_derivative(t, 1) / d2;
    if (!(v.tau(next) <= v.tau(t)) || std::abs(next - t) > (b - a)) break;
    t = next;
  }
  return t;
}

double wrap(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0 ? t + kTwoPi : t;
}

// Real parametrization of Hermitian n x n matrices that is isometric for the
// Frobenius norm: diagonal entries, then sqrt2 Re and sqrt2 Im of Q(i, j), i > j.
Eigen::MatrixXcd unvec(const Eigen::VectorXd& q, int n) {
  Eigen::MatrixXcd Q(n, n);
  int p = n;
  for (int i = 0; i < n; ++i) Q(i, i) = q(i);
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j, p += 2) {
      Q(i, j) = Complex(q(p), q(p + 1)) / std::numbers::sqrt2;
      Q(j, i) = std::conj(Q(i, j));
    }
  return Q;
}

Eigen::VectorXd vec(const Eigen::MatrixXcd& Q) {
  const int n = static_cast<int>(Q.rows());
  Eigen::VectorXd q(n * n);
  int p = n;
  for (int i = 0; i < n; ++i) q(i) = Q(i, i).real();
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j, p += 2) {
      q(p) = std::numbers::sqrt2 * Q(i, j).real();
      q(p + 1) = std::numbers::sqrt2 * Q(i, j).imag();
    }
  return q;
}

// Linear map from the parameter vector to the flat (alpha, beta) vector.
Eigen::MatrixXd gram_map(int d) {
  const int n = d + 1;
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(2 * d + 1, n * n);
  int p = n;
  for (int i = 0; i < n; ++i) L(0, i) = 0.5;
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j, p += 2) {
      const int k = i - j;
      L(k, p) = 1.0 / std::numbers::sqrt2;
      L(d + k, p + 1) = 1.0 / std::numbers::sqrt2;
    }
  return L;
}

Eigen::MatrixXcd psd_project(const Eigen::MatrixXcd& Q) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Q);
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXd complement_basis(const Eigen::MatrixXd& U, int n) {
  if (U.cols() == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(U, Eigen::ComputeFullU);
  const int k = static_cast<int>(U.cols());
  return svd.matrixU().rightCols(n - k);
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

CoefVector coef_of(const Eigen::VectorXd& x) {
  const auto s = to_std(x);
  return CoefVector::from_flat(s);
}

// tau of each column of B evaluated at t, differentiated `order` times.
Eigen::RowVectorXd evaluation_row(const Eigen::MatrixXd& B, double t, int order) {
  Eigen::RowVectorXd row(B.cols());
  for (int c = 0; c < B.cols(); ++c) row(c) = coef_of(B.col(c)).tau_derivative(t, order);
  return row;
}

class SliceSolver {
 public:
  SliceSolver(const Eigen::MatrixXd& U, const Eigen::VectorXd& w, double target, const SliceOptions& opt,
              const std::optional<CoefVector>& anchor)
      : n_(static_cast<int>(U.rows())), d_((n_ - 1) / 2), opt_(opt), anchor_(anchor) {
    const Eigen::VectorXd a = U.transpose() * w;
    const Eigen::MatrixXd Uperp = complement_basis(U, n_);
    Eigen::MatrixXd rows(Uperp.cols() + 1, n_);
    rows.topRows(Uperp.cols()) = Uperp.transpose();
    rows.bottomRows(1) = w.transpose();
    L_ = gram_map(d_);
    C_ = rows * L_;
    b_ = Eigen::VectorXd::Zero(rows.rows());
    b_(rows.rows() - 1) = target;
    pinv_ = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(C_).pseudoInverse();
    // Directions of V orthogonal to w, used by the boundary repair.
    if (U.cols() > 1) {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU);
      B_ = U * svd.matrixU().rightCols(U.cols() - 1);
    }
    w_ = w;
  }

  std::optional<CoefVector> run(int& iterations, bool& stalled) {
    Eigen::VectorXd q = pinv_ * b_;
    double window_start = INFINITY;
    stalled = false;
    for (int it = 1; it <= opt_.max_iterations; ++it) {
      const Eigen::VectorXd qp = vec(psd_project(unvec(q, d_ + 1)));
      const Eigen::VectorXd qa = qp - pinv_ * (C_ * qp - b_);
      const double res = (qa - qp).norm();
      q = qa;
      iterations = it;
      if (it % opt_.check_every == 0 || res < 1e-13) {
        if (auto hit = certify(L_ * q)) return hit;
      }
      if (it % opt_.plateau_window == 0) {
        if (res > opt_.plateau_floor && res > 0.99 * window_start) return std::nullopt;
        window_start = res;
      }
    }
    stalled = true;
    return std::nullopt;
  }

 private:
  std::optional<CoefVector> certify(const Eigen::VectorXd& x) {
    std::vector<Eigen::VectorXd> candidates{x};
    if (auto r = repair(x)) candidates.push_back(*r);
    const std::size_t base = candidates.size();
    for (std::size_t i = 0; i < base; ++i)
      if (auto s = anchor_shift(candidates[i])) candidates.push_back(*s);
    for (const auto& c : candidates) {
      CoefVector v = coef_of(c);
      if (is_plus(v, opt_.tol).plus) return v;
    }
    return std::nullopt;
  }

  // Pins the near-zero minima of tau_x to exact double zeros with a
  // least-norm correction inside V and orthogonal to w.
  std::optional<Eigen::VectorXd> repair(const Eigen::VectorXd& x) const {
    if (B_.cols() == 0) return std::nullopt;
    const CoefVector v = coef_of(x);
    const auto minima = local_minima_on_circle(v);
    if (minima.empty() || minima.front().value >= 0.0) return std::nullopt;
    const double depth = -minima.front().value;
    if (depth > 0.05 * std::max(1.0, gamma_scale(v))) return std::nullopt;
    std::vector<double> pins;
    for (const auto& m : minima)
      if (m.value <= 5.0 * depth) pins.push_back(m.t);
    Eigen::MatrixXd A(2 * pins.size(), B_.cols());
    Eigen::VectorXd rhs(2 * pins.size());
    for (std::size_t i = 0; i < pins.size(); ++i) {
      A.row(2 * i) = evaluation_row(B_, pins[i], 0);
      A.row(2 * i + 1) = evaluation_row(B_, pins[i], 1);
      rhs(2 * i) = -v.tau(pins[i]);
      rhs(2 * i + 1) = -v.tau_derivative(pins[i], 1);
    }
    const Eigen::VectorXd y = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(A).solve(rhs);
    if ((A * y - rhs).norm() > 1e-9 * std::max(1.0, rhs.norm())) return std::nullopt;
    return Eigen::VectorXd(x + B_ * y);
  }

  std::optional<Eigen::VectorXd> anchor_shift(const Eigen::VectorXd& x) const {
    if (!anchor_) return std::nullopt;
    const Eigen::VectorXd a = to_eigen(anchor_->flat());
    if (a.size() != x.size() || std::abs(a.dot(w_)) > 1e-10 * std::max(1.0, a.norm())) return std::nullopt;
    const CoefVector v = coef_of(x);
    const int grid = std::max(8 * d_ + 64, 64 * (d_ + 1));
    double c = 0.0;
    for (int i = 0; i < grid; ++i) {
      const double t = kTwoPi * i / grid;
      const double tx = v.tau(t);
      if (tx >= 0.0) continue;
      const double ta = anchor_->tau(t);
      if (ta <= 1e-12) return std::nullopt;
      c = std::max(c, -tx / ta);
    }
    if (c == 0.0) return std::nullopt;
    return Eigen::VectorXd(x + 2.0 * c * a);
  }

  int n_;
  int d_;
  SliceOptions opt_;
  std::optional<CoefVector> anchor_;
  Eigen::MatrixXd L_, C_, pinv_, B_;
  Eigen::VectorXd b_, w_;
};

std::vector<FacialZero> circle_zeros_of(const CoefVector& v) {
  std::vector<FacialZero> out;
  const double scale = gamma_scale(v);
  if (scale == 0.0) return out;
  const int dd = effective_degree(v, scale);
  if (dd == 0) return out;
  std::vector<double> angles;
  for (const Complex& r : polynomial_roots(symbol_of_degree(v, dd)))
    if (std::abs(std::abs(r) - 1.0) <= kFacialBand) angles.push_back(wrap(std::arg(r)));
  std::sort(angles.begin(), angles.end());
  // Group by angular proximity, allowing a group to wrap past 2pi.
  std::vector<std::vector<double>> groups;
  for (double a : angles) {
    if (!groups.empty() && a - groups.back().back() <= kFacialBand) groups.back().push_back(a);
    else groups.push_back({a});
  }
  if (groups.size() > 1 && groups.front().front() + kTwoPi - groups.back().back() <= kFacialBand) {
    for (double a : groups.front()) groups.back().push_back(a + kTwoPi);
    groups.erase(groups.begin());
  }
  for (const auto& g : groups) {
    double t = 0.0;
    for (double a : g) t += a;
    t /= static_cast<double>(g.size());
    t = wrap(brent_refine(v, t - 2 * kFacialBand, t + 2 * kFacialBand));
    if (v.tau(t) > 1e-7 * scale) continue;  // a near-zero minimum, not a zero
    int order = static_cast<int>(g.size());
    if (order % 2) ++order;
    out.push_back(FacialZero{t, order});
  }
  return out;
}

}  // namespace

std::vector<Complex> gram_gamma(const Eigen::MatrixXcd& Q) {
  const int n = static_cast<int>(Q.rows());
  std::vector<Complex> g(static_cast<std::size_t>(n), Complex(0.0, 0.0));
  for (int k = 0; k < n; ++k)
    for (int j = 0; j + k < n; ++j) g[k] += Q(j + k, j);
  return g;
}

std::vector<CircleMin> local_minima_on_circle(const CoefVector& v) {
  const int grid = std::max(8 * v.d + 64, 64 * (v.d + 1));
  const double h = kTwoPi / grid;
  std::vector<double> vals(grid);
  for (int i = 0; i < grid; ++i) vals[i] = v.tau(h * i);
  std::vector<int> idx;
  for (int i = 0; i < grid; ++i)
    if (vals[i] <= vals[(i + grid - 1) % grid] && vals[i] < vals[(i + 1) % grid]) idx.push_back(i);
  if (idx.empty()) idx.push_back(static_cast<int>(std::min_element(vals.begin(), vals.end()) - vals.begin()));
  std::sort(idx.begin(), idx.end(), [&vals](int a, int b) { return vals[a] < vals[b]; });
  if (idx.size() > static_cast<std::size_t>(2 * v.d + 4)) idx.resize(static_cast<std::size_t>(2 * v.d + 4));
  std::vector<CircleMin> out;
  for (int i : idx) {
    const double t = wrap(brent_refine(v, h * (i - 1), h * (i + 1)));
    const double val = v.tau(t);
    out.push_back(val <= vals[i] ? CircleMin{t, val} : CircleMin{h * i, vals[i]});
  }
  std::sort(out.begin(), out.end(), [](const CircleMin& a, const CircleMin& b) { return a.value < b.value; });
  return out;
}

CircleMin min_on_circle(const CoefVector& v) { return local_minima_on_circle(v).front(); }

PlusCertificate is_plus(const CoefVector& v, double tol) {
  PlusCertificate cert;
  const int n = v.d + 1;
  const double scale = gamma_scale(v);
  if (scale == 0.0) {
    cert.plus = true;
    cert.boundary = true;
    cert.gram = Eigen::MatrixXcd::Zero(n, n);
    return cert;
  }
  const double repro_tol = kReproductionTol * std::max(1.0, scale);
  auto accept = [&](const Eigen::MatrixXcd& Q, bool touches) {
    const double lo = min_eigenvalue(Q);
    const double err = reproduction_error(v, Q);
    if (lo < -tol || err > repro_tol) return false;
    cert.plus = true;
    cert.boundary = touches || lo < tol;
    cert.gram = Q;
    cert.min_eigenvalue = lo;
    cert.reproduction_error = err;
    return true;
  };

  if (auto f = fejer_riesz_gram(v, 0.0))
    if (accept(f->gram, f->touches)) return cert;

  const CircleMin m = min_on_circle(v);
  cert.t_star = m.t;
  cert.value = m.value;
  if (m.value < -tol) return cert;

  // Inside the tolerance band: certify tau + s, which is strictly positive,
  // then remove the constant s as a multiple of the identity.
  const double s = std::max(0.0, -m.value) + tol;
  if (auto f = fejer_riesz_gram(v, s)) {
    Eigen::MatrixXcd Q = f->gram - (s / n) * Eigen::MatrixXcd::Identity(n, n);
    if (accept(Q, true)) return cert;
  }
  // The band verdict stands even without a certificate.
  cert.plus = true;
  cert.boundary = true;
  cert.reproduction_error = INFINITY;
  return cert;
}

bool verify_certificate(const CoefVector& v, const PlusCertificate& cert, double tol) {
  if (!cert.plus) return v.tau(cert.t_star) < -tol;
  if (cert.gram.rows() != v.d + 1) return false;
  return min_eigenvalue(cert.gram) >= -tol &&
         reproduction_error(v, cert.gram) <= kReproductionTol * std::max(1.0, gamma_scale(v));
}

Eigen::MatrixXd orthonormal_basis(const std::vector<std::vector<double>>& vs, int n, double rel_tol) {
  if (vs.empty()) return Eigen::MatrixXd(n, 0);
  Eigen::MatrixXd A(n, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j) {
    if (static_cast<int>(vs[j].size()) != n) throw Error(Errc::invalid_argument, "basis vectors have inconsistent length");
    A.col(static_cast<Eigen::Index>(j)) = to_eigen(vs[j]);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int r = 0;
  while (r < s.size() && s(r) > rel_tol * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

std::optional<CoefVector> find_plus_in_slice(const std::vector<std::vector<double>>& V_basis,
                                             const std::vector<double>& w, double target,
                                             const SliceOptions& options, const std::optional<CoefVector>& anchor) {
  if (V_basis.empty()) return std::nullopt;
  const int n = static_cast<int>(V_basis.front().size());
  if (n % 2 == 0) throw Error(Errc::invalid_argument, "coefficient vectors have odd length 2d+1");
  if (static_cast<int>(w.size()) != n) throw Error(Errc::invalid_argument, "slice normal has the wrong length");
  const Eigen::MatrixXd U = orthonormal_basis(V_basis, n);
  const Eigen::VectorXd we = to_eigen(w);
  if ((U.transpose() * we).norm() <= 1e-12 * std::max(1.0, we.norm())) return std::nullopt;
  SliceSolver solver(U, we, target, options, anchor);
  int iterations = 0;
  bool stalled = false;
  auto hit = solver.run(iterations, stalled);
  if (stalled)
    throw Error(Errc::solver_stalled, "plus-vector search reached " + std::to_string(iterations) + " iterations");
  return hit;
}

PlusDimension plus_dimension(const std::vector<std::vector<double>>& V_basis, const std::optional<CoefVector>& seed,
                             const SliceOptions& options) {
  PlusDimension out;
  if (V_basis.empty()) {
    out.log.push_back("empty subspace");
    return out;
  }
  const int n = static_cast<int>(V_basis.front().size());
  const Eigen::MatrixXd U = orthonormal_basis(V_basis, n);
  const int k = static_cast<int>(U.cols());
  std::vector<std::vector<double>> basis;
  for (int j = 0; j < k; ++j) basis.push_back(to_std(U.col(j)));

  Eigen::VectorXd xhat = Eigen::VectorXd::Zero(n);
  std::vector<Eigen::VectorXd> found;
  auto add = [&](const CoefVector& v, const std::string& how) {
    Eigen::VectorXd x = to_eigen(v.flat());
    x /= x.norm();
    found.push_back(x);
    xhat += x;
    out.vectors.push_back(coef_of(x));
    out.log.push_back("phase 1: " + how);
  };
  if (seed) {
    const Eigen::VectorXd s = to_eigen(seed->flat());
    const double off = (s - U * (U.transpose() * s)).norm();
    if (s.norm() > 0.0 && off <= 1e-8 * s.norm() && is_plus(*seed, options.tol).plus) add(*seed, "seed accepted");
    else out.log.push_back("phase 1: seed rejected");
  }

  // Phase 1: grow the span of found plus-vectors along complement directions.
  bool grew = true;
  while (grew && static_cast<int>(found.size()) < k) {
    grew = false;
    Eigen::MatrixXd S(n, static_cast<Eigen::Index>(found.size()));
    for (std::size_t j = 0; j < found.size(); ++j) S.col(static_cast<Eigen::Index>(j)) = found[j];
    // Orthonormal basis of V minus span(found), in coordinates of U.
    Eigen::MatrixXd W;
    if (found.empty()) {
      W = U;
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(U.transpose() * S, Eigen::ComputeFullU);
      int r = 0;
      while (r < svd.singularValues().size() && svd.singularValues()(r) > 1e-10) ++r;
      W = U * svd.matrixU().rightCols(k - r);
    }
    const std::optional<CoefVector> anchor =
        found.empty() ? std::nullopt : std::optional<CoefVector>(coef_of(xhat));
    for (int c = 0; c < W.cols() && !grew; ++c) {
      for (double target : {1.0, -1.0}) {
        ++out.probes;
        const auto hit = find_plus_in_slice(basis, to_std(W.col(c)), target, options, anchor);
        std::ostringstream msg;
        msg << "direction " << c << (target > 0 ? " (+)" : " (-)");
        if (!hit) {
          out.log.push_back("phase 1: " + msg.str() + " infeasible");
          continue;
        }
        add(*hit, msg.str() + " found a plus-vector");
        grew = true;
        break;
      }
    }
  }
  out.dim_plus = static_cast<int>(found.size());
  if (found.empty()) {
    out.log.push_back("phase 2: cone is {0}");
    return out;
  }

  // Phase 2: facial check against the zeros of tau of the accumulated vector.
  const CoefVector xv = coef_of(xhat);
  out.zeros = circle_zeros_of(xv);
  std::vector<Eigen::RowVectorXd> rows;
  const int d = xv.d;
  for (const auto& z : out.zeros)
    for (int j = 0; j < z.order; ++j) rows.push_back(evaluation_row(U, z.t, j) / std::pow(std::max(1, d), j));
  Eigen::MatrixXd Wf;
  if (rows.empty()) {
    Wf = U;
  } else {
    Eigen::MatrixXd A(static_cast<Eigen::Index>(rows.size()), k);
    for (std::size_t i = 0; i < rows.size(); ++i) A.row(static_cast<Eigen::Index>(i)) = rows[i];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    int r = 0;
    while (r < s.size() && s(r) > kFacialNullTol * std::max(1.0, s(0))) ++r;
    Wf = U * svd.matrixV().rightCols(k - r);
  }
  out.facial_dim = static_cast<int>(Wf.cols());
  std::ostringstream msg;
  msg << "phase 2: " << out.zeros.size() << " circle zero(s), facial dimension " << out.facial_dim;
  out.log.push_back(msg.str());
  double misfit = 0.0;
  for (const auto& f : found) misfit = std::max(misfit, (f - Wf * (Wf.transpose() * f)).norm());
  if (out.facial_dim != out.dim_plus || misfit > kFacialFitTol) {
    std::ostringstream err;
    err << "plus-vector span has dimension " << out.dim_plus << " but the facial subspace has dimension "
        << out.facial_dim << " (misfit " << misfit << ")";
    throw Error(Errc::facial_mismatch, err.str());
  }
  return out;
}

}  // namespace lacuna
