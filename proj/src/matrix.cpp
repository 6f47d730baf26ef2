#include "lacuna/matrix.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace lacuna {
namespace {

BlockMatrix assemble_from(const ComplexPoly& R, double r_scale, int d, MatrixKind kind, const LacunaryPattern& lambda) {
  BlockMatrix out;
  out.kind = kind;
  out.d = d;
  out.M = lambda.M();
  out.scale = R.is_exact() ? r_scale : 1.0;
  const auto c = R.coeffs_complex();
  for (const auto& x : c) out.data_scale = std::max(out.data_scale, std::abs(x) * r_scale);

  if (R.is_exact()) {
    const ExactPoly& E = R.exact();
    std::function<Rational(int)> A = [&E](int k) { return E.coeff(k).re(); };
    std::function<Rational(int)> B = [&E](int k) { return E.coeff(k).im(); };
    out.exact = stack_blocks(build_plus_minus_entries(A, B, lambda.forbidden(), d), d);
    out.entries.resize(out.rows(), out.cols());
    for (int i = 0; i < out.rows(); ++i)
      for (int j = 0; j < out.cols(); ++j) out.entries(i, j) = to_double((*out.exact)[i][j]) * r_scale;
  } else {
    auto coef = [&c, r_scale](int k) {
      return (k < 0 || k >= static_cast<int>(c.size())) ? Complex(0.0, 0.0) : c[k] * r_scale;
    };
    std::function<double(int)> A = [&coef](int k) { return coef(k).real(); };
    std::function<double(int)> B = [&coef](int k) { return coef(k).imag(); };
    const auto g = stack_blocks(build_plus_minus_entries(A, B, lambda.forbidden(), d), d);
    out.entries.resize(out.rows(), out.cols());
    for (int i = 0; i < out.rows(); ++i)
      for (int j = 0; j < out.cols(); ++j) out.entries(i, j) = g[i][j];
  }
  return out;
}

double kernel_residual(const Eigen::MatrixXd& m, const std::vector<std::vector<double>>& vs) {
  double worst = 0.0;
  for (const auto& v : vs) {
    const Eigen::VectorXd r = m * Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    worst = std::max(worst, r.size() ? r.cwiseAbs().maxCoeff() : 0.0);
  }
  return worst;
}

}  // namespace

BlockMatrix assemble(const CanonicalData& canonical, const LacunaryPattern& lambda) {
  return assemble_from(canonical.R, canonical.r_scale, canonical.m, MatrixKind::plain, lambda);
}

BlockMatrix assemble(const TildeData& tilde, const LacunaryPattern& lambda) {
  return assemble_from(tilde.R_tilde, tilde.r_scale, tilde.m_tilde, MatrixKind::tilde, lambda);
}

std::vector<int> rref(Grid<Rational>& a) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (sgn(a[i][c]) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[r], a[piv]);
    const Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      const Rational f = a[i][c];
      for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

Grid<Rational> exact_kernel(const Grid<Rational>& a, int cols, int* rank) {
  Grid<Rational> work = a;
  const auto pivots = rref(work);
  if (rank) *rank = static_cast<int>(pivots.size());
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int c : pivots) is_pivot[c] = true;
  Grid<Rational> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(static_cast<std::size_t>(cols), Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -work[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

KernelBasis rank_and_kernel(const BlockMatrix& mtx, double min_gap) {
  KernelBasis out;
  const int n = mtx.cols();
  if (mtx.exact) {
    out.exact = exact_kernel(*mtx.exact, n, &out.rank);
    for (const auto& v : *out.exact) out.vectors.push_back(to_double(v));
  } else if (mtx.rows() == 0) {
    for (int i = 0; i < n; ++i) {
      std::vector<double> e(static_cast<std::size_t>(n), 0.0);
      e[i] = 1.0;
      out.vectors.push_back(std::move(e));
    }
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(mtx.entries, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double sigma_max = sigma.size() ? sigma(0) : 0.0;
    const double thr = std::ldexp(std::max(sigma_max, mtx.data_scale), -26);
    int r = 0;
    while (r < sigma.size() && sigma(r) > thr) ++r;
    out.rank = r;
    const double kept = r > 0 ? sigma(r - 1) : thr;
    const double dropped = r < sigma.size() ? sigma(r) : thr;
    out.gap_ratio = dropped > 0.0 ? kept / dropped : INFINITY;
    if (*out.gap_ratio < min_gap)
      throw Error(Errc::rank_indeterminate, "singular-value gap ratio " + std::to_string(*out.gap_ratio) +
                                                " below " + std::to_string(min_gap) + " at rank " + std::to_string(r));
    const Eigen::MatrixXd& V = svd.matrixV();
    for (int j = r; j < n; ++j) {
      std::vector<double> v(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) v[i] = V(i, j);
      out.vectors.push_back(std::move(v));
    }
  }
  out.dim = n - out.rank;
  out.residual = kernel_residual(mtx.entries, out.vectors);
  return out;
}

}  // namespace lacuna
