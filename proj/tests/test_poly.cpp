#include <doctest.h>

#include <random>

#include "lacuna/parse.hpp"
#include "lacuna/poly.hpp"
#include "test_util.hpp"

using namespace lacuna;
using testutil::qi;

namespace {

ExactPoly random_exact(std::mt19937_64& rng, int degree) {
  std::vector<GaussianRational> c;
  for (int k = 0; k <= degree; ++k)
    c.emplace_back(oracle::random_rational(rng, -3, 3, 4), oracle::random_rational(rng, -3, 3, 4));
  if (c.back().is_zero()) c.back() = GaussianRational(1);
  return ExactPoly(std::move(c));
}

}  // namespace

TEST_CASE("parse: JSON coefficient list") {
  const auto p = parse_poly("[[2,0],[-3,0],[0,0],[1,0]]");
  REQUIRE(p.is_exact());
  CHECK(p.exact() == ExactPoly({GaussianRational(2), GaussianRational(-3), GaussianRational(0), GaussianRational(1)}));
}

TEST_CASE("parse: factored expression matches a schoolbook product") {
  const auto p = parse_poly("(z-1/2)*(8-z^3)");
  const auto expected = oracle::multiply({qi(-1, 2), qi(1)}, {qi(8), qi(0), qi(0), qi(-1)});
  CHECK(testutil::to_oracle(p.exact()) == expected);
  CHECK(p.exact().coeff(0) == GaussianRational(-4));
  CHECK(p.exact().coeff(4) == GaussianRational(-1));
}

TEST_CASE("parse: Gaussian literals, decimals and implicit products") {
  CHECK(parse_poly("(1+i)z").exact().coeff(1) == GaussianRational(1, 1));
  CHECK(parse_poly("0.25 z^2").exact().coeff(2) == GaussianRational(Rational(1, 4)));
  CHECK(parse_poly("2(z+1)").exact() == ExactPoly({GaussianRational(2), GaussianRational(2)}));
  const auto f = parse_poly(R"({"coeffs_f": [[0.5, 0], [0, 1]]})");
  CHECK_FALSE(f.is_exact());
  const auto e = parse_poly(R"({"coeffs": [[1, 2, 0, 1], [0, 1, -3, 4]]})");
  CHECK(e.exact().coeff(1) == GaussianRational(0, Rational(-3, 4)));
}

TEST_CASE("parse: errors carry positions") {
  CHECK_THROWS_AS(parse_poly(""), ParseError);
  try {
    parse_poly("(z+1");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse_poly("z^999999999"), ParseError);
  CHECK_THROWS_AS(parse_poly("(1+z)/z"), ParseError);
  CHECK_THROWS_AS(parse_poly("[[1,0],[2]"), ParseError);
}

TEST_CASE("conjugate_reciprocal") {
  const ExactPoly p({GaussianRational(2), GaussianRational(-3), GaussianRational(0), GaussianRational(1)});
  CHECK(conjugate_reciprocal(p, 3) ==
        ExactPoly({GaussianRational(1), GaussianRational(0), GaussianRational(-3), GaussianRational(2)}));
  const ExactPoly lin({GaussianRational(1, 2), GaussianRational(Rational(1, 3), -1)});
  CHECK(conjugate_reciprocal(lin, 1) == ExactPoly({GaussianRational(Rational(1, 3), 1), GaussianRational(1, -2)}));
  CHECK_THROWS_AS(conjugate_reciprocal(p, 2), Error);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int deg = static_cast<int>(rng() % 8);
    const int N = deg + static_cast<int>(rng() % 3);
    const ExactPoly q = random_exact(rng, deg);
    const ExactPoly qs = conjugate_reciprocal(q, N);
    CHECK(conjugate_reciprocal(qs, N) == q);
    for (int k = 0; k <= N; ++k) CHECK(std::abs(qs.coeff(k).to_complex()) == std::abs(q.coeff(N - k).to_complex()));
  }
}

TEST_CASE("divide_exact") {
  const auto d = divide_exact(parse_poly("z^2-1"), parse_poly("z-1"));
  CHECK(d.exact() == parse_poly("z+1").exact());
  CHECK_THROWS_AS(divide_exact(parse_poly("z^2+1"), parse_poly("z-1")), Error);

  // p / G for the second extreme-point example is 2(4 + 2z + z^2) before normalization.
  const auto R = divide_exact(parse_poly("(z-1/2)*(8-z^3)"), parse_poly("(z-1/2)*(1-z/2)"));
  CHECK(R.exact() == parse_poly("2*(4+2z+z^2)").exact());

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const ExactPoly a = random_exact(rng, 1 + static_cast<int>(rng() % 5));
    const ExactPoly b = random_exact(rng, static_cast<int>(rng() % 6));
    CHECK(divide_exact(mul(a, b), a) == b);
    const FloatPoly af = to_float(a), bf = to_float(b);
    const FloatPoly qf = divide_exact(mul(af, bf), af);
    CHECK(testutil::max_abs_diff(qf.coeffs(), bf.coeffs()) <= 1e-9 * std::max(1.0, coeff_norm(bf)));
  }
}

TEST_CASE("gcd_exact") {
  CHECK(gcd_exact(parse_poly("z-1"), parse_poly("z+1")).exact() == ExactPoly({GaussianRational(1)}));
  const auto p = parse_poly("(z-1/2)*(2-z)*(1+z^4)");
  const auto g = gcd_exact(p, conjugate_reciprocal(p, 6));
  // Oracle: the monic product of the shared factors.
  const auto shared = oracle::multiply(oracle::from_roots({qi(1, 2), qi(2)}), {qi(1), qi(0), qi(0), qi(0), qi(1)});
  CHECK(testutil::to_oracle(g.exact()) == shared);
  const auto q = parse_poly("3z^2 + 6");
  CHECK(gcd_exact(q, ComplexPoly(ExactPoly{})).exact() == parse_poly("z^2+2").exact());
  CHECK_THROWS_AS(gcd_exact(ComplexPoly(to_float(q.exact())), q), Error);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const ExactPoly a = random_exact(rng, 3), b = random_exact(rng, 2), c = random_exact(rng, 2);
    const ExactPoly g2 = gcd_exact(mul(a, b), mul(a, c));
    CHECK(divmod(mul(a, b), g2).second.is_zero());
    CHECK(divmod(mul(a, c), g2).second.is_zero());
    CHECK(g2.degree() >= a.degree());
  }
}

TEST_CASE("spectrum_in") {
  const LacunaryPattern lam(3, {2});
  CHECK(spectrum_in(parse_poly("2-3z+z^3"), lam));
  CHECK_FALSE(spectrum_in(parse_poly("1+z^2"), LacunaryPattern(1, {})));
  CHECK(spectrum_in(ComplexPoly(ExactPoly{}), lam));
  CHECK(spectrum_in(scale(parse_poly("2-3z+z^3"), GaussianRational(Rational(-5, 7), 2)), lam));
  FloatPoly f({Complex(1, 0), Complex(0, 0), Complex(1e-12, 0), Complex(1, 0)});
  CHECK(spectrum_in(ComplexPoly(f), lam));
  FloatPoly g({Complex(1, 0), Complex(0, 0), Complex(1e-6, 0), Complex(1, 0)});
  CHECK_FALSE(spectrum_in(ComplexPoly(g), lam));
}

TEST_CASE("lacunary pattern") {
  const LacunaryPattern lam = LacunaryPattern::from_lambda({0, 2, 4});
  CHECK(lam.N() == 4);
  CHECK(lam.forbidden() == std::vector<int>{1, 3});
  CHECK(lam.lambda() == std::vector<int>{0, 2, 4});
  CHECK_THROWS_AS(LacunaryPattern(3, {3}), Error);
  CHECK_THROWS_AS(LacunaryPattern(4, {2, 1}), Error);
}

TEST_CASE("square-free decomposition") {
  const auto p = parse_poly("(z-1)^3*(z+2)^2*(z-i)");
  const auto parts = square_free_decomposition(p.exact());
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == parse_poly("z-i").exact());
  CHECK(parts[1] == parse_poly("z+2").exact());
  CHECK(parts[2] == parse_poly("z-1").exact());
}
