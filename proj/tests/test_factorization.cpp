#include <doctest.h>

#include <numbers>
#include <random>

#include "lacuna/factorization.hpp"
#include "lacuna/parse.hpp"
#include "lacuna/plus_cone.hpp"
#include "test_util.hpp"

using namespace lacuna;

namespace {

struct Prepared {
  ComplexPoly p;
  double scale;
  CanonicalData can;
  TildeData til;
};

Prepared prepare(const ComplexPoly& p, int N) {
  const Normalized nz = normalize(p);
  Prepared out{nz.poly, nz.scale, {}, {}};
  out.can = canonical_factorization(nz.poly, N, nz.symbolic ? nz.scale : 1.0);
  out.til = tilde_factorization(nz.poly, N, out.can);
  return out;
}

/// z^{-h} F(z) on an n-point grid; returns the smallest real part and the largest |imag|.
std::pair<double, double> symbol_range(const ComplexPoly& F, int h, int n = 4096) {
  double lo = INFINITY, im = 0.0;
  for (int i = 0; i < n; ++i) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * i / n);
    const Complex v = F(z) * std::pow(z, -h);
    lo = std::min(lo, v.real());
    im = std::max(im, std::abs(v.imag()));
  }
  return {lo, im};
}

}  // namespace

TEST_CASE("canonical factorization: one common zero, quadratic cofactor") {
  const auto P = prepare(parse_poly("(z-1/2)*(8-z^3)"), 4);
  CHECK(P.can.m == 1);
  CHECK(P.can.s == 2);
  CHECK(P.can.G.exact() == parse_poly("(z-1/2)*(1-z/2)").exact());
  const double delta = P.scale;
  CHECK(std::abs(P.can.C(0) - 8.0 * delta) <= 1e-14);
  CHECK(std::abs(P.can.C(1) - 4.0 * delta) <= 1e-14);
  CHECK(std::abs(P.can.C(2) - 2.0 * delta) <= 1e-14);
  CHECK(P.can.C(3) == Complex(0, 0));
  CHECK(P.can.C(-1) == Complex(0, 0));
}

TEST_CASE("canonical factorization: common zero with circle zeros in the cofactor") {
  const auto P = prepare(parse_poly("(z-1/2)*(2-z)*(1+z^4)"), 6);
  CHECK(P.can.m == 1);
  CHECK(P.can.s == 4);
  CHECK(P.can.G.exact() == parse_poly("(z-1/2)*(1-z/2)").exact());
  const Complex c0 = P.can.C(0);
  CHECK(std::abs(P.can.C(4) - c0) <= 1e-14);
  for (int k = 1; k <= 3; ++k) CHECK(P.can.C(k) == Complex(0, 0));
  CHECK(std::abs(c0 - 2.0 * P.scale) <= 1e-14);
  // Float mode reproduces G to 1e-9.
  const auto F = prepare(ComplexPoly(parse_poly("(z-1/2)*(2-z)*(1+z^4)").to_float()), 6);
  CHECK(testutil::max_abs_diff(F.can.G.to_float().coeffs(), P.can.G.to_float().coeffs()) <= 1e-9);
}

TEST_CASE("canonical factorization without common zeros") {
  const auto p = parse_poly("(z-1/3)*(z+4)");
  const auto can = canonical_factorization(p, 2);
  CHECK(can.m == 0);
  CHECK(can.G.exact() == parse_poly("1").exact());
  CHECK(can.R.exact() == p.exact());
}

TEST_CASE("tilde factorization: two double circle zeros") {
  const auto P = prepare(parse_poly("1/2*(1-z^2)^2"), 4);
  CHECK(P.til.m_tilde == 2);
  CHECK(P.til.mu == 2);
  CHECK(P.til.s_tilde == 0);
  CHECK(P.til.G0.exact() == parse_poly("-(1-z^2)^2").exact());
  CHECK(P.til.G_tilde.exact() == P.til.G0.exact());
  CHECK(std::abs(P.til.C(0) - Complex(-0.5, 0)) <= 1e-14);
  CHECK(P.til.has_multiple_circle_zeros());
  REQUIRE(P.til.circle_zeros.size() == 2);
  for (const auto& z : P.til.circle_zeros) {
    CHECK(z.lambda == 2);
    CHECK(z.mu == 1);
  }
}

TEST_CASE("tilde factorization: double zero at 1") {
  const auto P = prepare(parse_poly("(1-z)^2*(2+z)"), 3);
  const double c = P.scale;
  CHECK(P.til.m_tilde == 1);
  CHECK(P.til.mu == 1);
  CHECK(P.til.s_tilde == 1);
  CHECK(P.til.G0.exact() == parse_poly("-(1-z)^2").exact());
  CHECK(std::abs(P.til.C(0) + 2.0 * c) <= 1e-14);
  CHECK(std::abs(P.til.C(1) + c) <= 1e-14);
}

TEST_CASE("tilde factorization with only simple circle zeros") {
  const auto P = prepare(parse_poly("(z-1/2)*(8-z^3)"), 4);
  CHECK(P.til.G0.exact() == parse_poly("1").exact());
  CHECK(P.til.G_tilde.exact() == P.can.G.exact());
  CHECK(P.til.R_tilde.exact() == P.can.R.exact());
  CHECK(P.til.m_tilde == P.can.m);
  CHECK_FALSE(P.til.has_multiple_circle_zeros());
}

TEST_CASE("real_symbol_on_circle") {
  const auto P = prepare(parse_poly("(1-z)^2*(2+z)"), 3);
  const CoefVector v = real_symbol_on_circle(P.til.G_tilde, 1);
  // Oracle: Fourier coefficients of z^{-1} G~(z) on the circle.
  for (int k = 0; k <= 1; ++k) {
    const Complex ck = oracle::fourier_coefficient(
        [&](double t) { return P.til.G_tilde(std::polar(1.0, t)) * std::polar(1.0, -t); }, k);
    CHECK(std::abs(v.gamma(k) - ck) <= 1e-12);
  }
  CHECK(v.alpha[0] == doctest::Approx(1.0));
  CHECK(v.alpha[1] == doctest::Approx(-1.0));
  CHECK(is_plus(v).plus);

  CHECK_THROWS_AS(real_symbol_on_circle(parse_poly("z"), 0), Error);
  const CoefVector c = real_symbol_on_circle(parse_poly("2z^3"), 3);
  CHECK(c.flat() == std::vector<double>{1, 0, 0, 0, 0, 0, 0});
  const auto e = real_symbol_on_circle_exact(parse_poly("2z^3").exact(), 3);
  CHECK(e[0] == 1);
}

TEST_CASE("reconstruction, degree bounds and positivity of the symbols") {
  const char* inputs[] = {"(z-1/2)*(8-z^3)", "(z-1/2)*(2-z)*(1+z^4)", "1/2*(1-z^2)^2", "(1-z)^2*(2+z)",
                          "(z-1/3)^2*(1-z/3)^2*(1+z)^3*(z-i)", "(z+i/2)*(1-i z/2)*(z-1)^4"};
  for (const char* s : inputs) {
    const auto p = parse_poly(s);
    for (const bool exact : {true, false}) {
      CAPTURE(s);
      CAPTURE(exact);
      const ComplexPoly q = exact ? p : ComplexPoly(p.to_float());
      const int N = q.degree() + 1;
      const auto can = canonical_factorization(q, N);
      const auto til = tilde_factorization(q, N, can);
      CHECK(can.R.degree() <= can.s);
      CHECK(til.R_tilde.degree() <= til.s_tilde);
      const double tol = 1e-9 * coeff_norm(q.to_float());
      CHECK(testutil::max_abs_diff(mul(can.G, can.R).to_float().coeffs(), q.to_float().coeffs()) <= tol);
      CHECK(testutil::max_abs_diff(mul(til.G_tilde, til.R_tilde).to_float().coeffs(), q.to_float().coeffs()) <= tol);
      const auto [glo, gim] = symbol_range(can.G, can.m);
      const auto [tlo, tim] = symbol_range(til.G_tilde, til.m_tilde);
      const double gs = coeff_norm(can.G.to_float()), ts = coeff_norm(til.G_tilde.to_float());
      CHECK(glo >= -1e-9 * gs);
      CHECK(gim <= 1e-9 * gs);
      CHECK(tlo >= -1e-9 * ts);
      CHECK(tim <= 1e-9 * ts);
      CHECK(is_plus(real_symbol_on_circle(til.G_tilde, til.m_tilde, 1e-8)).plus);
    }
  }
}

TEST_CASE("phase equivariance") {
  const auto p = parse_poly("(z-1/2)*(2-z)*(1-z)^2*(3+z)");
  const int N = 6;
  const auto can = canonical_factorization(p, N);
  const auto til = tilde_factorization(p, N, can);
  const GaussianRational u(Rational(3, 5), Rational(-4, 5));
  const auto q = scale(p, u);
  const auto can2 = canonical_factorization(q, N);
  const auto til2 = tilde_factorization(q, N, can2);
  CHECK(can2.G.exact() == can.G.exact());
  CHECK(til2.G_tilde.exact() == til.G_tilde.exact());
  CHECK(can2.R.exact() == scale(can.R, u).exact());
  CHECK(til2.R_tilde.exact() == scale(til.R_tilde, u).exact());
}
