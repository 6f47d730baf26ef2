#include "lacuna/report.hpp"

#include <cstdio>
#include <sstream>

namespace lacuna {
namespace {

ordered_json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

ordered_json complex_json(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json vector_json(const std::vector<double>& v) {
  ordered_json out = ordered_json::array();
  for (double x : v) out.push_back(x);
  return out;
}

ordered_json rational_vector_json(const std::vector<Rational>& v) {
  ordered_json out = ordered_json::array();
  for (const auto& x : v) out.push_back(rational_json(x));
  return out;
}

ordered_json zero_json(const ZeroCluster& z) {
  return {{"location", complex_json(z.location)},
          {"multiplicity", z.multiplicity},
          {"region", std::string(region_name(z.region))},
          {"residual", z.residual}};
}

ordered_json matrix_json(const BlockMatrix& m, const std::optional<KernelBasis>& k) {
  ordered_json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["d"] = m.d;
  out["scale"] = m.scale;
  if (m.exact) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : *m.exact) rows.push_back(rational_vector_json(row));
    out["entries_exact"] = std::move(rows);
  }
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.entries(i, j));
    rows.push_back(std::move(row));
  }
  out["entries"] = std::move(rows);
  if (k) {
    out["rank"] = k->rank;
    out["kernel_dim"] = k->dim;
    if (k->gap_ratio) out["gap_ratio"] = *k->gap_ratio;
    out["kernel_residual"] = k->residual;
    ordered_json basis = ordered_json::array();
    if (k->exact)
      for (const auto& v : *k->exact) basis.push_back(rational_vector_json(v));
    else
      for (const auto& v : k->vectors) basis.push_back(vector_json(v));
    out["kernel"] = std::move(basis);
  } else {
    out["rank"] = nullptr;
  }
  return out;
}

ordered_json witness_json(const Witness& w) {
  ordered_json out;
  out["kind"] = std::string(witness_kind_name(w.kind));
  out["coef_vector"] = vector_json(w.coef_vector.flat());
  if (w.exact_vector) out["coef_vector_exact"] = rational_vector_json(*w.exact_vector);
  out[w.kind == WitnessKind::non_extreme ? "Q" : "Q_tilde"] = poly_json(w.Q);
  out["q"] = poly_json(w.q);
  out["checks"] = {{"q_in_lambda", w.checks.q_in_lambda},
                   {w.kind == WitnessKind::non_extreme ? "h_real" : "h_nonneg", w.checks.h_admissible},
                   {"h_nonconstant", w.checks.h_nonconstant}};
  out["h_range"] = {{"min_real", w.min_real}, {"max_real", w.max_real}, {"max_imag", w.max_imag}};
  ordered_json samples = ordered_json::array();
  for (std::size_t i = 0; i < w.h_samples.size(); i += kReportSampleStride) samples.push_back(complex_json(w.h_samples[i]));
  out["h_samples"] = {{"grid", kWitnessGrid}, {"stride", kReportSampleStride}, {"values", std::move(samples)}};
  return out;
}

ordered_json optional_bool(const std::optional<bool>& b) { return b ? ordered_json(*b) : ordered_json(nullptr); }

std::string verdict(const std::optional<bool>& b) { return b ? (*b ? "yes" : "no") : "undecided"; }

void matrix_text(std::ostream& os, const char* name, const BlockMatrix& m, const std::optional<KernelBasis>& k) {
  os << name << " (" << m.rows() << " x " << m.cols() << ")";
  if (k) os << ", rank " << k->rank << ", kernel dim " << k->dim;
  if (k && k->gap_ratio) os << ", gap ratio " << num(*k->gap_ratio);
  os << "\n";
  if (m.rows() == 0) return;
  if (m.exact) {
    const FactoredMatrix f = factor_content(*m.exact);
    os << "  = " << num(m.scale * to_double(f.content)) << " * [";
    for (std::size_t i = 0; i < f.integers.size(); ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < f.integers[i].size(); ++j) os << (j ? ", " : "") << f.integers[i][j].get_str();
      os << "]";
    }
    os << "]\n";
    if (sgn(f.content) != 0) os << "    (stored factor " << to_string(f.content) << ", normalization " << num(m.scale) << ")\n";
  } else {
    const double c = m.entries.cwiseAbs().maxCoeff();
    const double div = c > 0 ? c : 1.0;
    os << "  = " << num(c) << " * [";
    for (int i = 0; i < m.rows(); ++i) {
      os << (i ? ", [" : "[");
      for (int j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << num(m.entries(i, j) / div);
      os << "]";
    }
    os << "]\n";
  }
}

}  // namespace

ordered_json rational_json(const Rational& q) {
  if (q.get_den() == 1) return integer_json(q.get_num());
  return to_string(q);
}

ordered_json poly_json(const ComplexPoly& p) {
  ordered_json out;
  ordered_json coeffs = ordered_json::array();
  if (p.is_exact()) {
    for (const auto& c : p.exact().coeffs())
      coeffs.push_back({integer_json(c.re().get_num()), integer_json(c.re().get_den()), integer_json(c.im().get_num()),
                        integer_json(c.im().get_den())});
    out["coeffs"] = std::move(coeffs);
  } else {
    for (const auto& c : p.floating().coeffs()) coeffs.push_back(complex_json(c));
    out["coeffs_f"] = std::move(coeffs);
  }
  out["text"] = to_string(p);
  return out;
}

FactoredMatrix factor_content(const Grid<Rational>& g) {
  FactoredMatrix out;
  mpz_class num_gcd = 0, den_lcm = 1;
  int first_sign = 0;
  for (const auto& row : g)
    for (const auto& x : row) {
      if (sgn(x) == 0) continue;
      if (first_sign == 0) first_sign = sgn(x);
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.get_num().get_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
    }
  out.content = first_sign == 0 ? Rational(0) : Rational(num_gcd, den_lcm) * first_sign;
  out.content.canonicalize();
  for (const auto& row : g) {
    std::vector<mpz_class> r;
    for (const auto& x : row) {
      if (sgn(out.content) == 0) {
        r.emplace_back(0);
        continue;
      }
      const Rational q = x / out.content;
      r.push_back(q.get_num());
    }
    out.integers.push_back(std::move(r));
  }
  return out;
}

ordered_json report_json(const ClassificationReport& r) {
  ordered_json out;
  out["schema"] = kReportSchema;
  ordered_json lambda = ordered_json::array();
  for (int k : r.lambda.lambda()) lambda.push_back(k);
  out["input"] = {{"p", poly_json(r.input)},
                  {"N", r.lambda.N()},
                  {"M", r.lambda.M()},
                  {"forbidden", r.lambda.forbidden()},
                  {"lambda", std::move(lambda)}};
  out["mode"] = std::string(mode_name(r.mode));
  out["norm"] = {{"value", r.norm.value}, {"abs_error_bound", r.norm.abs_error_bound}, {"panels", r.norm.panels}};
  out["scale"] = r.scale;

  ordered_json disk = ordered_json::array();
  for (const auto& z : r.canonical.disk_zeros) disk.push_back(zero_json(z));
  out["canonical"] = {{"m", r.canonical.m},
                      {"s", r.canonical.s},
                      {"disk_zeros", std::move(disk)},
                      {"G", poly_json(r.canonical.G)},
                      {"R", poly_json(r.canonical.R)},
                      {"r_scale", r.canonical.r_scale},
                      {"g_rescaled", r.canonical.g_rescaled}};
  ordered_json circle = ordered_json::array();
  for (const auto& z : r.tilde.circle_zeros)
    circle.push_back({{"location", complex_json(z.zeta)}, {"lambda", z.lambda}, {"mu", z.mu}});
  out["tilde"] = {{"m_tilde", r.tilde.m_tilde},
                  {"s_tilde", r.tilde.s_tilde},
                  {"mu", r.tilde.mu},
                  {"circle_zeros", std::move(circle)},
                  {"G0", poly_json(r.tilde.G0)},
                  {"G_tilde", poly_json(r.tilde.G_tilde)},
                  {"R_tilde", poly_json(r.tilde.R_tilde)},
                  {"r_scale", r.tilde.r_scale}};
  out["matrix"] = r.matrix ? matrix_json(*r.matrix, r.kernel) : ordered_json(nullptr);
  out["matrix_tilde"] = r.matrix_tilde ? matrix_json(*r.matrix_tilde, r.kernel_tilde) : ordered_json(nullptr);
  out["dim_plus"] = r.dim_plus ? ordered_json(*r.dim_plus) : ordered_json(nullptr);
  ordered_json plus = ordered_json::array();
  for (const auto& v : r.plus_vectors) plus.push_back(vector_json(v.flat()));
  out["plus_vectors"] = std::move(plus);
  out["is_extreme"] = optional_bool(r.is_extreme);
  out["is_exposed"] = optional_bool(r.is_exposed);
  out["extreme_path"] = std::string(fast_path_name(r.extreme_path));
  out["exposed_path"] = std::string(fast_path_name(r.exposed_path));
  out["decided"] = r.decided();
  ordered_json wit = ordered_json::array();
  for (const auto& w : r.witnesses) wit.push_back(witness_json(w));
  out["witnesses"] = std::move(wit);
  out["diagnostics"] = r.diagnostics;
  return out;
}

std::string report_text(const ClassificationReport& r) {
  std::ostringstream os;
  os << "p          = " << to_string(r.input) << "\n";
  os << "Lambda     = {0..." << r.lambda.N() << "}";
  if (r.lambda.M() > 0) {
    os << " minus {";
    for (std::size_t i = 0; i < r.lambda.forbidden().size(); ++i) os << (i ? "," : "") << r.lambda.forbidden()[i];
    os << "}";
  }
  os << "  (N = " << r.lambda.N() << ", M = " << r.lambda.M() << ")\n";
  os << "mode       = " << mode_name(r.mode) << "\n";
  os << "||p||_1    = " << num(r.norm.value) << "  (+/- " << num(r.norm.abs_error_bound) << ", " << r.norm.panels
     << " panels)\n";
  os << "G          = " << to_string(r.canonical.G) << "   (m = " << r.canonical.m << ")\n";
  os << "R          = " << to_string(r.canonical.R) << "   (s = " << r.canonical.s << ")\n";
  os << "G0         = " << to_string(r.tilde.G0) << "   (mu = " << r.tilde.mu << ")\n";
  os << "G~         = " << to_string(r.tilde.G_tilde) << "   (m~ = " << r.tilde.m_tilde << ")\n";
  os << "R~         = " << to_string(r.tilde.R_tilde) << "\n";
  for (const auto& z : r.tilde.circle_zeros)
    os << "  circle zero " << num(z.zeta.real()) << (z.zeta.imag() < 0 ? " - " : " + ") << num(std::abs(z.zeta.imag()))
       << "i  multiplicity " << z.lambda << "\n";
  if (r.matrix) matrix_text(os, "M ", *r.matrix, r.kernel);
  if (r.matrix_tilde) matrix_text(os, "M~", *r.matrix_tilde, r.kernel_tilde);
  if (r.dim_plus) os << "dim_+      = " << *r.dim_plus << "\n";
  for (const auto& v : r.plus_vectors) {
    os << "  plus-vector (";
    const auto f = v.flat();
    for (std::size_t i = 0; i < f.size(); ++i) os << (i ? ", " : "") << num(f[i]);
    os << ")\n";
  }
  os << "extreme    = " << verdict(r.is_extreme) << "   [" << fast_path_name(r.extreme_path) << "]\n";
  os << "exposed    = " << verdict(r.is_exposed) << "   [" << fast_path_name(r.exposed_path) << "]\n";
  for (const auto& w : r.witnesses) {
    os << "witness " << witness_kind_name(w.kind) << ":\n";
    os << "  " << (w.kind == WitnessKind::non_extreme ? "Q " : "Q~") << " = " << to_string(w.Q) << "\n";
    os << "  q  = " << to_string(w.q) << "\n";
    os << "  Re h in [" << num(w.min_real) << ", " << num(w.max_real) << "], max |Im h| = " << num(w.max_imag) << "\n";
    os << "  checks: q in P(Lambda) " << (w.checks.q_in_lambda ? "ok" : "FAIL") << ", h "
       << (w.kind == WitnessKind::non_extreme ? "real " : "nonneg ") << (w.checks.h_admissible ? "ok" : "FAIL")
       << ", nonconstant " << (w.checks.h_nonconstant ? "ok" : "FAIL") << "\n";
  }
  for (const auto& d : r.diagnostics) os << "diagnostic: " << d << "\n";
  return os.str();
}

ordered_json plus_dimension_json(const PlusDimension& pd) {
  ordered_json out;
  out["schema"] = kReportSchema;
  out["dim_plus"] = pd.dim_plus;
  ordered_json vs = ordered_json::array();
  for (const auto& v : pd.vectors) vs.push_back(vector_json(v.flat()));
  out["vectors"] = std::move(vs);
  ordered_json zs = ordered_json::array();
  for (const auto& z : pd.zeros) zs.push_back({{"t", z.t}, {"order", z.order}});
  out["facial_zeros"] = std::move(zs);
  out["facial_dim"] = pd.facial_dim;
  out["probes"] = pd.probes;
  out["log"] = pd.log;
  return out;
}

std::string plus_dimension_text(const PlusDimension& pd) {
  std::ostringstream os;
  os << "dim_+ = " << pd.dim_plus << "\n";
  for (const auto& v : pd.vectors) {
    os << "  plus-vector (";
    const auto f = v.flat();
    for (std::size_t i = 0; i < f.size(); ++i) os << (i ? ", " : "") << num(f[i]);
    os << ")\n";
  }
  os << "facial dimension " << pd.facial_dim << " from " << pd.zeros.size() << " circle zero(s), " << pd.probes
     << " probes\n";
  return os.str();
}

}  // namespace lacuna
