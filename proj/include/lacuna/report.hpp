#pragma once

#include <string>

#include <json.hpp>

#include "lacuna/classifier.hpp"

namespace lacuna {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "lacuna/1";
/// Every stride-th grid sample of h is written to the report.
inline constexpr int kReportSampleStride = 64;

/// {"coeffs": [[re_num, re_den, im_num, im_den], ...]} or
/// {"coeffs_f": [[re, im], ...]}, plus a readable "text" field.
ordered_json poly_json(const ComplexPoly& p);
ordered_json rational_json(const Rational& q);

ordered_json report_json(const ClassificationReport& r);
std::string report_text(const ClassificationReport& r);

ordered_json plus_dimension_json(const PlusDimension& pd);
std::string plus_dimension_text(const PlusDimension& pd);

/// Scalar c and integer matrix K with entries = c K (exact matrices only),
/// so text output can print c * [[...]].
struct FactoredMatrix {
  Rational content;
  Grid<mpz_class> integers;
};
FactoredMatrix factor_content(const Grid<Rational>& g);

}  // namespace lacuna
