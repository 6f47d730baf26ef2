#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lacuna/factorization.hpp"
#include "lacuna/matrix.hpp"
#include "lacuna/plus_cone.hpp"

namespace lacuna {

enum class ModeChoice { automatic, exact, floating };

std::string_view mode_choice_name(ModeChoice m);

struct ClassifyOptions {
  ModeChoice mode = ModeChoice::automatic;
  double eps_circle = kDefaultEpsCircle;
  double rank_gap = kDefaultRankGap;
  double tol_plus = kDefaultPlusTol;
  double norm_tol = 1e-12;
  /// Run the full criteria alongside every shortcut and compare.
  bool audit = false;
  SliceOptions slice;
};

/// Which argument settled a verdict. The names describe the criterion:
///   full_space_zeros     M = 0, decided from the zero structure alone
///   few_gaps             M < m forces non-extremality
///   tilde_full_rank      rank of the tilde matrix equals 2 m~
///   simple_circle_zeros  no multiple circle zeros, so exposed iff extreme
///   implied              not extreme, hence not exposed
enum class FastPath { none, full_space_zeros, few_gaps, tilde_full_rank, simple_circle_zeros, implied };

std::string_view fast_path_name(FastPath f);

enum class WitnessKind { non_extreme, non_exposed };

std::string_view witness_kind_name(WitnessKind k);

struct WitnessChecks {
  bool q_in_lambda = false;
  /// h real (non-extreme) or h real and nonnegative (non-exposed).
  bool h_admissible = false;
  bool h_nonconstant = false;
  bool all() const { return q_in_lambda && h_admissible && h_nonconstant; }
};

/// Multiplier h with p h in P(Lambda): h = Q / G (real, nonconstant) or
/// h = Q~ / G~ (nonnegative, nonconstant).
struct Witness {
  WitnessKind kind = WitnessKind::non_extreme;
  CoefVector coef_vector;
  std::optional<std::vector<Rational>> exact_vector;
  ComplexPoly Q;
  /// q = Q R with the stored cofactor; the spectrum is scale invariant.
  ComplexPoly q;
  /// Samples of h at t_i = (i + 1/2) 2 pi / grid.
  std::vector<Complex> h_samples;
  WitnessChecks checks;
  double max_imag = 0.0;
  double min_real = 0.0;
  double max_real = 0.0;
};

inline constexpr int kWitnessGrid = 2048;
inline constexpr double kWitnessTol = 1e-8;
/// Rounding allowance for Q conj(G), relative to the product of coefficient norms.
inline constexpr double kWitnessRoundingFloor = 1e-12;

struct ClassificationReport {
  ComplexPoly input;
  LacunaryPattern lambda{1, {}};
  Mode mode = Mode::exact;
  NormResult norm;
  double scale = 1.0;
  CanonicalData canonical;
  TildeData tilde;
  std::optional<BlockMatrix> matrix;
  std::optional<KernelBasis> kernel;
  std::optional<BlockMatrix> matrix_tilde;
  std::optional<KernelBasis> kernel_tilde;
  std::optional<int> dim_plus;
  std::vector<CoefVector> plus_vectors;
  std::vector<std::string> plus_log;
  std::optional<bool> is_extreme;
  std::optional<bool> is_exposed;
  FastPath extreme_path = FastPath::none;
  FastPath exposed_path = FastPath::none;
  std::vector<Witness> witnesses;
  std::vector<std::string> diagnostics;

  bool decided() const { return is_extreme.has_value() && is_exposed.has_value(); }
};

/// Classifies p / ||p||_1 as an extreme and/or exposed point of the unit
/// ball of P(Lambda). Throws Errc::spectrum_violation when p is not in
/// P(Lambda); borderline numerics leave a verdict empty ("undecided").
ClassificationReport classify(const ComplexPoly& p, const LacunaryPattern& lambda, const ClassifyOptions& options = {});

struct FullSpaceVerdict {
  bool extreme = false;
  bool exposed = false;
};

/// M = 0: extreme iff p and p* share no disk zeros; exposed iff in addition
/// every circle zero of p is simple.
FullSpaceVerdict classify_full_space(const ComplexPoly& p, int N, double eps_circle = kDefaultEpsCircle);

struct ShortcutVerdicts {
  std::optional<bool> extreme;
  std::optional<bool> exposed;
  FastPath extreme_path = FastPath::none;
  FastPath exposed_path = FastPath::none;
};

/// M < m gives non-extreme (and non-exposed); rank M~ = 2 m~ gives exposed.
ShortcutVerdicts corollary_shortcuts(const CanonicalData& canonical, const TildeData& tilde, int M,
                                     std::optional<int> rank_tilde);

/// Plus basis e_0, e_0 + e_k / 2 of the whole space R^{2d+1}.
std::vector<CoefVector> full_space_plus_basis(int d);

Witness make_non_extreme_witness(const KernelBasis& kernel, const CanonicalData& canonical,
                                 const LacunaryPattern& lambda);
Witness make_non_exposed_witness(const std::vector<CoefVector>& plus_basis, const TildeData& tilde,
                                 const LacunaryPattern& lambda);
/// Non-exposed witness for a non-extreme p: h' = 1 + eps h from a real
/// nonconstant multiplier h = Q / G.
Witness make_non_exposed_from_non_extreme(const Witness& non_extreme, const CanonicalData& canonical,
                                          const TildeData& tilde, const LacunaryPattern& lambda);

/// Recomputes the three checks on the witness grid. h is real (nonnegative)
/// when |Im Q conj(G)| (resp. -Re) stays below tol |Q| |G| plus a rounding floor.
WitnessChecks validate_witness(Witness& w, const ComplexPoly& denominator, const LacunaryPattern& lambda);

}  // namespace lacuna
