#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lacuna/factorization.hpp"

namespace lacuna {

template <class T>
using Grid = std::vector<std::vector<T>>;

template <class T>
struct PlusMinusBlocks {
  Grid<T> A_plus;   // M x (d+1), l = 0..d
  Grid<T> B_plus;
  Grid<T> A_minus;  // M x d, l = 1..d
  Grid<T> B_minus;
};

/// A+_{j,l} = A(k_j + l - d) + A(k_j - l - d),  A-_{j,l} = A(k_j + l - d) - A(k_j - l - d),
/// and likewise for B. The maps must return zero outside their support.
template <class T>
PlusMinusBlocks<T> build_plus_minus_entries(const std::function<T(int)>& A, const std::function<T(int)>& B,
                                            const std::vector<int>& forbidden, int d) {
  PlusMinusBlocks<T> out;
  for (int kj : forbidden) {
    std::vector<T> ap, bp, am, bm;
    for (int l = 0; l <= d; ++l) {
      ap.push_back(A(kj + l - d) + A(kj - l - d));
      bp.push_back(B(kj + l - d) + B(kj - l - d));
      if (l == 0) continue;
      am.push_back(A(kj + l - d) - A(kj - l - d));
      bm.push_back(B(kj + l - d) - B(kj - l - d));
    }
    out.A_plus.push_back(std::move(ap));
    out.B_plus.push_back(std::move(bp));
    out.A_minus.push_back(std::move(am));
    out.B_minus.push_back(std::move(bm));
  }
  return out;
}

/// [[A+  B-], [B+  -A-]] as a dense 2M x (2d+1) grid.
template <class T>
Grid<T> stack_blocks(const PlusMinusBlocks<T>& b, int d) {
  const std::size_t M = b.A_plus.size();
  Grid<T> out(2 * M, std::vector<T>(static_cast<std::size_t>(2 * d + 1)));
  for (std::size_t j = 0; j < M; ++j) {
    for (int l = 0; l <= d; ++l) {
      out[j][l] = b.A_plus[j][l];
      out[M + j][l] = b.B_plus[j][l];
    }
    for (int l = 1; l <= d; ++l) {
      out[j][d + l] = b.B_minus[j][l - 1];
      out[M + j][d + l] = -b.A_minus[j][l - 1];
    }
  }
  return out;
}

enum class MatrixKind { plain, tilde };

struct BlockMatrix {
  MatrixKind kind = MatrixKind::plain;
  int d = 0;
  int M = 0;
  /// Entries for the normalized polynomial: scale * exact when exact is set.
  Eigen::MatrixXd entries;
  std::optional<Grid<Rational>> exact;
  double scale = 1.0;
  /// max |C_k|, the magnitude of the data the entries are built from.
  double data_scale = 0.0;

  int rows() const { return 2 * M; }
  int cols() const { return 2 * d + 1; }
};

BlockMatrix assemble(const CanonicalData& canonical, const LacunaryPattern& lambda);
BlockMatrix assemble(const TildeData& tilde, const LacunaryPattern& lambda);

struct KernelBasis {
  std::vector<std::vector<double>> vectors;
  /// Reduced-echelon rational basis in exact mode.
  std::optional<Grid<Rational>> exact;
  int rank = 0;
  int dim = 0;
  /// Ratio of the singular values straddling the threshold (float mode).
  std::optional<double> gap_ratio;
  double residual = 0.0;
};

inline constexpr double kDefaultRankGap = 10.0;

/// Exact mode: rational row reduction. Float mode: SVD with threshold
/// 2^-26 * max(sigma_max, data_scale); a gap ratio below min_gap raises
/// Errc::rank_indeterminate.
KernelBasis rank_and_kernel(const BlockMatrix& mtx, double min_gap = kDefaultRankGap);

/// Reduced row echelon form over Q; returns the pivot columns.
std::vector<int> rref(Grid<Rational>& a);
Grid<Rational> exact_kernel(const Grid<Rational>& a, int cols, int* rank = nullptr);

}  // namespace lacuna
