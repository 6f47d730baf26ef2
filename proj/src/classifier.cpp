#include "lacuna/classifier.hpp"

#include <cmath>

namespace lacuna {
namespace {

constexpr double kMembershipTol = 1e-8;

/// Checks M v = 0 (exactly when both sides are rational).
bool in_kernel(const BlockMatrix& mtx, const std::vector<double>& v, const std::vector<Rational>* exact_v) {
  if (mtx.rows() == 0) return true;
  if (mtx.exact && exact_v) {
    for (const auto& row : *mtx.exact) {
      Rational acc = 0;
      for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * (*exact_v)[j];
      if (sgn(acc) != 0) return false;
    }
    return true;
  }
  const Eigen::Map<const Eigen::VectorXd> x(v.data(), static_cast<Eigen::Index>(v.size()));
  const double residual = (mtx.entries * x).cwiseAbs().maxCoeff();
  const double size = std::max(mtx.entries.cwiseAbs().maxCoeff(), mtx.data_scale) * x.lpNorm<1>();
  return residual <= kMembershipTol * std::max(size, 1e-300);
}

void check_symbol_in_kernel(const BlockMatrix& mtx, const ComplexPoly& F, int half_degree, const char* what) {
  std::vector<Rational> exact;
  const bool have_exact = F.is_exact() && mtx.exact;
  if (have_exact) exact = real_symbol_on_circle_exact(F.exact(), half_degree);
  const auto v = have_exact ? to_double(exact) : real_symbol_on_circle(F, half_degree, 1e-8).flat();
  if (!in_kernel(mtx, v, have_exact ? &exact : nullptr))
    throw Error(Errc::invariant_violation, std::string("symbol of ") + what + " is not in the kernel");
}

void note(ClassificationReport& r, const Error& e, const std::string& context) {
  r.diagnostics.push_back(std::string(errc_name(e.code())) + ": " + context + ": " + e.what());
}

ComplexPoly as_float(const ComplexPoly& p) { return ComplexPoly(p.to_float()); }

/// Reorders a plus basis for reporting: the seed, then kernel basis vectors
/// (either sign) that are themselves plus, then the solver's vectors, keeping
/// only those that enlarge the span.
std::vector<CoefVector> preferred_plus_basis(const KernelBasis& kernel, const CoefVector& seed,
                                             const std::vector<CoefVector>& found, double tol) {
  const int n = seed.size();
  std::vector<CoefVector> out;
  std::vector<std::vector<double>> flat;
  auto take = [&](const CoefVector& v) {
    flat.push_back(v.flat());
    if (orthonormal_basis(flat, n, 1e-8).cols() == static_cast<Eigen::Index>(flat.size())) {
      out.push_back(v);
    } else {
      flat.pop_back();
    }
  };
  if (is_plus(seed, tol).plus) take(seed);
  for (const auto& k : kernel.vectors) {
    for (double sign : {1.0, -1.0}) {
      std::vector<double> v = k;
      for (double& x : v) x *= sign;
      const CoefVector c = CoefVector::from_flat(v);
      if (is_plus(c, tol).plus) {
        take(c);
        break;
      }
    }
  }
  for (const auto& v : found) take(v);
  return out;
}

void run(const ComplexPoly& p, const LacunaryPattern& lambda, const ClassifyOptions& opt, ClassificationReport& r) {
  const int N = lambda.N();
  const int M = lambda.M();
  r.mode = p.mode();
  const Normalized nz = normalize(p, opt.norm_tol);
  r.norm = nz.norm;
  r.scale = nz.scale;
  const double norm_scale = nz.symbolic ? nz.scale : 1.0;
  r.canonical = canonical_factorization(nz.poly, N, norm_scale, opt.eps_circle);
  r.tilde = tilde_factorization(nz.poly, N, r.canonical, opt.eps_circle);
  const CanonicalData& can = r.canonical;
  const TildeData& til = r.tilde;

  // Extreme.
  r.matrix = assemble(can, lambda);
  try {
    r.kernel = rank_and_kernel(*r.matrix, opt.rank_gap);
  } catch (const Error& e) {
    if (e.code() != Errc::rank_indeterminate) throw;
    note(r, e, "matrix rank");
  }
  check_symbol_in_kernel(*r.matrix, can.G, can.m, "G");
  if (M == 0) {
    r.is_extreme = can.m == 0;
    r.extreme_path = FastPath::full_space_zeros;
  } else if (M < can.m) {
    r.is_extreme = false;
    r.extreme_path = FastPath::few_gaps;
  } else if (r.kernel) {
    r.is_extreme = r.kernel->rank == 2 * can.m;
  }
  if (r.kernel && r.is_extreme && (r.kernel->rank == 2 * can.m) != *r.is_extreme)
    throw Error(Errc::invariant_violation, "rank criterion disagrees with " + std::string(fast_path_name(r.extreme_path)));

  // Exposed.
  r.matrix_tilde = assemble(til, lambda);
  try {
    r.kernel_tilde = rank_and_kernel(*r.matrix_tilde, opt.rank_gap);
  } catch (const Error& e) {
    if (e.code() != Errc::rank_indeterminate) throw;
    note(r, e, "tilde matrix rank");
  }
  check_symbol_in_kernel(*r.matrix_tilde, til.G_tilde, til.m_tilde, "G~");

  std::optional<bool> shortcut;
  FastPath shortcut_path = FastPath::none;
  if (r.is_extreme == false) {
    shortcut = false;
    shortcut_path = FastPath::implied;
  } else if (r.is_extreme == true) {
    if (M == 0) {
      shortcut = !til.has_multiple_circle_zeros();
      shortcut_path = FastPath::full_space_zeros;
    } else if (!til.has_multiple_circle_zeros()) {
      shortcut = true;
      shortcut_path = FastPath::simple_circle_zeros;
    } else if (r.kernel_tilde && r.kernel_tilde->rank == 2 * til.m_tilde) {
      shortcut = true;
      shortcut_path = FastPath::tilde_full_rank;
    }
  }

  const bool want_dim = r.is_extreme.has_value() && (r.is_extreme == true || opt.audit);
  if (want_dim && M == 0) {
    r.dim_plus = 2 * til.m_tilde + 1;
    r.plus_vectors = full_space_plus_basis(til.m_tilde);
  } else if (want_dim && r.kernel_tilde) {
    SliceOptions so = opt.slice;
    so.tol = opt.tol_plus;
    try {
      const CoefVector seed = real_symbol_on_circle(til.G_tilde, til.m_tilde, 1e-8);
      PlusDimension pd = plus_dimension(r.kernel_tilde->vectors, seed, so);
      r.dim_plus = pd.dim_plus;
      r.plus_vectors = preferred_plus_basis(*r.kernel_tilde, seed, pd.vectors, opt.tol_plus);
      if (static_cast<int>(r.plus_vectors.size()) != pd.dim_plus)
        throw Error(Errc::invariant_violation, "reordered plus basis has the wrong size");
      r.plus_log = std::move(pd.log);
    } catch (const Error& e) {
      if (e.code() != Errc::solver_stalled && e.code() != Errc::facial_mismatch) throw;
      note(r, e, "plus dimension");
    }
  }

  if (r.dim_plus && r.is_extreme == true) {
    const bool by_dim = *r.dim_plus == 1;
    if (shortcut && *shortcut != by_dim)
      throw Error(Errc::invariant_violation, "dim_+ = " + std::to_string(*r.dim_plus) + " disagrees with " +
                                                 std::string(fast_path_name(shortcut_path)));
  }
  if (r.dim_plus && r.is_extreme == false && *r.dim_plus == 1)
    throw Error(Errc::invariant_violation, "non-extreme p with dim_+ = 1");

  if (shortcut) {
    r.is_exposed = shortcut;
    r.exposed_path = shortcut_path;
  } else if (r.dim_plus && r.is_extreme == true) {
    r.is_exposed = *r.dim_plus == 1;
  }

  // Witnesses.
  if (r.is_extreme == false) {
    if (r.kernel) {
      Witness ne = make_non_extreme_witness(*r.kernel, can, lambda);
      Witness nx = make_non_exposed_from_non_extreme(ne, can, til, lambda);
      r.witnesses.push_back(std::move(ne));
      r.witnesses.push_back(std::move(nx));
    } else {
      r.diagnostics.push_back("no witness: kernel unavailable");
    }
  } else if (r.is_extreme == true && r.is_exposed == false) {
    if (r.plus_vectors.empty())
      r.diagnostics.push_back("no witness: plus basis unavailable");
    else
      r.witnesses.push_back(make_non_exposed_witness(r.plus_vectors, til, lambda));
  }
}

}  // namespace

std::string_view mode_choice_name(ModeChoice m) {
  switch (m) {
    case ModeChoice::automatic: return "auto";
    case ModeChoice::exact: return "exact";
    case ModeChoice::floating: return "float";
  }
  return "?";
}

std::string_view fast_path_name(FastPath f) {
  switch (f) {
    case FastPath::none: return "none";
    case FastPath::full_space_zeros: return "full_space_zeros";
    case FastPath::few_gaps: return "few_gaps";
    case FastPath::tilde_full_rank: return "tilde_full_rank";
    case FastPath::simple_circle_zeros: return "simple_circle_zeros";
    case FastPath::implied: return "implied";
  }
  return "?";
}

ClassificationReport classify(const ComplexPoly& p, const LacunaryPattern& lambda, const ClassifyOptions& options) {
  if (p.is_zero()) throw Error(Errc::invalid_argument, "the zero polynomial has no normalization");
  if (!spectrum_in(p, lambda)) throw Error(Errc::spectrum_violation, "p has a coefficient outside Lambda");
  if (options.mode == ModeChoice::exact && !p.is_exact())
    throw Error(Errc::unsupported_mode, "exact mode needs rational coefficients");

  ClassificationReport r;
  r.input = p;
  r.lambda = lambda;
  const ComplexPoly work = options.mode == ModeChoice::floating ? as_float(p) : p;
  try {
    run(work, lambda, options, r);
  } catch (const Error& e) {
    if (e.code() != Errc::exact_split_failed || options.mode != ModeChoice::automatic || !work.is_exact()) throw;
    std::vector<std::string> kept{std::string(errc_name(e.code())) + ": falling back to float mode: " + e.what()};
    r = ClassificationReport{};
    r.input = p;
    r.lambda = lambda;
    r.diagnostics = std::move(kept);
    run(as_float(p), lambda, options, r);
  }
  return r;
}

FullSpaceVerdict classify_full_space(const ComplexPoly& p, int N, double eps_circle) {
  auto verdict = [&](const ComplexPoly& q) {
    const CanonicalData can = canonical_factorization(q, N, 1.0, eps_circle);
    const TildeData til = tilde_factorization(q, N, can, eps_circle);
    FullSpaceVerdict v;
    v.extreme = can.m == 0;
    v.exposed = v.extreme && !til.has_multiple_circle_zeros();
    return v;
  };
  try {
    return verdict(p);
  } catch (const Error& e) {
    if (e.code() != Errc::exact_split_failed) throw;
    return verdict(as_float(p));
  }
}

ShortcutVerdicts corollary_shortcuts(const CanonicalData& canonical, const TildeData& tilde, int M,
                                     std::optional<int> rank_tilde) {
  ShortcutVerdicts s;
  if (M < canonical.m) {
    s.extreme = false;
    s.exposed = false;
    s.extreme_path = FastPath::few_gaps;
    s.exposed_path = FastPath::implied;
  } else if (rank_tilde && *rank_tilde == 2 * tilde.m_tilde) {
    s.exposed = true;
    s.extreme = true;
    s.extreme_path = FastPath::implied;
    s.exposed_path = FastPath::tilde_full_rank;
  }
  return s;
}

std::vector<CoefVector> full_space_plus_basis(int d) {
  std::vector<CoefVector> out;
  CoefVector e0(d);
  e0.alpha[0] = 1.0;
  out.push_back(e0);
  for (int k = 1; k <= d; ++k) {
    CoefVector v = e0;
    v.alpha[k] = 0.5;
    out.push_back(v);
  }
  for (int k = 1; k <= d; ++k) {
    CoefVector v = e0;
    v.beta[k - 1] = 0.5;
    out.push_back(v);
  }
  return out;
}

}  // namespace lacuna
