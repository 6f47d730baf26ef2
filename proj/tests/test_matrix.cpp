#include <doctest.h>

#include <random>

#include "lacuna/factorization.hpp"
#include "lacuna/matrix.hpp"
#include "lacuna/parse.hpp"
#include "test_util.hpp"

using namespace lacuna;

namespace {

struct Built {
  BlockMatrix plain, tilde;
  CanonicalData can;
  TildeData til;
};

Built build(const ComplexPoly& p0, const LacunaryPattern& lam) {
  const Normalized nz = normalize(p0);
  Built b;
  b.can = canonical_factorization(nz.poly, lam.N(), nz.symbolic ? nz.scale : 1.0);
  b.til = tilde_factorization(nz.poly, lam.N(), b.can);
  b.plain = assemble(b.can, lam);
  b.tilde = assemble(b.til, lam);
  return b;
}

std::vector<Complex> coefficients(const std::function<Complex(int)>& C, int deg) {
  std::vector<Complex> r;
  for (int k = 0; k <= deg; ++k) r.push_back(C(k));
  return r;
}

double max_entry_diff(const Eigen::MatrixXd& a, const std::vector<std::vector<double>>& b) {
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b[i][j]));
  return m;
}

/// Checks e == c * ints for a single nonzero scalar c.
bool proportional(const Eigen::MatrixXd& e, const std::vector<std::vector<double>>& ints, double c, double tol) {
  for (int i = 0; i < e.rows(); ++i)
    for (int j = 0; j < e.cols(); ++j)
      if (std::abs(e(i, j) - c * ints[i][j]) > tol) return false;
  return true;
}

std::vector<std::vector<oracle::Q>> to_q(const Grid<Rational>& g) {
  std::vector<std::vector<oracle::Q>> out;
  for (const auto& row : g) out.emplace_back(row.begin(), row.end());
  return out;
}

}  // namespace

TEST_CASE("matrix: vanishing block") {
  const auto b = build(parse_poly("(z-1/2)*(2-z)*(1+z^4)"), LacunaryPattern(6, {3}));
  CHECK(b.plain.rows() == 2);
  CHECK(b.plain.cols() == 3);
  REQUIRE(b.plain.exact);
  for (const auto& row : *b.plain.exact)
    for (const auto& x : row) CHECK(x == 0);
  CHECK(b.plain.entries.cwiseAbs().maxCoeff() == 0.0);
  const KernelBasis k = rank_and_kernel(b.plain);
  CHECK(k.rank == 0);
  CHECK(k.dim == 3);
}

TEST_CASE("matrix: full-rank 2x3 block") {
  const auto b = build(parse_poly("(z-1/2)*(8-z^3)"), LacunaryPattern(4, {2}));
  const double two_delta = 2.0 * normalize(parse_poly("(z-1/2)*(8-z^3)")).scale;
  CHECK(proportional(b.plain.entries, {{4, 5, 0}, {0, 0, 3}}, two_delta, 1e-12));
  REQUIRE(b.plain.exact);
  CHECK(to_q(*b.plain.exact) == std::vector<std::vector<oracle::Q>>{{8, 10, 0}, {0, 0, 6}});
  CHECK(rank_and_kernel(b.plain).rank == 2);

  // Float input reproduces the exact entries.
  const auto f = build(ComplexPoly(parse_poly("(z-1/2)*(8-z^3)").to_float()), LacunaryPattern(4, {2}));
  CHECK((f.plain.entries - b.plain.entries).cwiseAbs().maxCoeff() <= 1e-9);
  const KernelBasis kf = rank_and_kernel(f.plain);
  CHECK(kf.rank == 2);
  REQUIRE(kf.gap_ratio);
  CHECK(*kf.gap_ratio > 1e6);
}

TEST_CASE("matrix: tilde block with two forbidden frequencies") {
  const auto b = build(parse_poly("1/2*(1-z^2)^2"), LacunaryPattern(4, {1, 3}));
  CHECK(b.plain.M == 2);
  CHECK(b.plain.d == 0);
  CHECK(b.tilde.rows() == 4);
  CHECK(b.tilde.cols() == 5);
  // -1/2 times the reference layout [[0,1,0,0,0],[0,1,0,0,0],[0,0,0,-1,0],[0,0,0,1,0]].
  CHECK(proportional(b.tilde.entries, {{0, 1, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 0, -1, 0}, {0, 0, 0, 1, 0}}, -0.5,
                     1e-14));
  const KernelBasis k = rank_and_kernel(b.tilde);
  CHECK(k.rank == 2);
  CHECK(k.dim == 3);
}

TEST_CASE("matrix: tilde block with a one-dimensional kernel") {
  const auto p = parse_poly("(1-z)^2*(2+z)");
  const auto b = build(p, LacunaryPattern(3, {2}));
  const double c = normalize(p).scale;
  CHECK(proportional(b.tilde.entries, {{1, 1, 0}, {0, 0, 1}}, -2.0 * c, 1e-13));
  const KernelBasis k = rank_and_kernel(b.tilde);
  CHECK(k.rank == 2);
  REQUIRE(k.dim == 1);
  const auto& v = k.vectors[0];
  CHECK(std::abs(v[0] + v[1]) <= 1e-12 * std::abs(v[0]));
  CHECK(v[2] == 0.0);
  REQUIRE(k.exact);
  CHECK((*k.exact)[0][0] == -(*k.exact)[0][1]);
}

TEST_CASE("matrix entries agree with the numeric Fourier oracle") {
  struct Case {
    const char* poly;
    int N;
    std::vector<int> forbidden;
  };
  const Case cases[] = {{"(z-1/2)*(8-z^3)", 4, {2}},
                        {"(z-1/2)*(2-z)*(1+z^4)", 6, {3}},
                        {"(z-i/2)*(1+i z/2)*(1+z^4)", 6, {3}},
                        {"1/2*(1-z^2)^2", 4, {1, 3}},
                        {"(1-z)^2*(2+z)", 3, {2}},
                        {"(z-1/2)^2*(2-z)^2*(z+1/5)", 5, {1}},
                        {"(1-z^3)^2*(1+z^6)", 12, {1, 2, 4, 5, 7, 8, 10, 11}}};
  for (const auto& c : cases) {
    const auto p = parse_poly(c.poly);
    CAPTURE(c.poly);
    const LacunaryPattern lam(c.N, c.forbidden);
    REQUIRE(spectrum_in(p, lam));
    for (const bool exact : {true, false}) {
      const auto b = build(exact ? p : ComplexPoly(p.to_float()), lam);
      const auto ref = oracle::block_matrix(coefficients([&](int k) { return b.can.C(k); }, b.can.s), c.forbidden, b.can.m);
      CHECK(max_entry_diff(b.plain.entries, ref) <= 1e-12);
      const auto ref_t = oracle::block_matrix(coefficients([&](int k) { return b.til.C(k); }, b.til.s_tilde),
                                              c.forbidden, b.til.m_tilde);
      CHECK(max_entry_diff(b.tilde.entries, ref_t) <= 1e-12);
    }
  }
}

TEST_CASE("rank: rational row reduction vs Bareiss, rank-nullity, residual") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 6), cols = 1 + static_cast<int>(rng() % 7);
    const int r = 1 + static_cast<int>(rng() % std::min(rows, cols));
    // Low-rank rational matrix as a product of random factors.
    Grid<Rational> L(rows, std::vector<Rational>(r)), R(r, std::vector<Rational>(cols));
    for (auto& row : L)
      for (auto& x : row) x = oracle::random_rational(rng, -3, 3, 2);
    for (auto& row : R)
      for (auto& x : row) x = oracle::random_rational(rng, -3, 3, 3);
    Grid<Rational> A(rows, std::vector<Rational>(cols, Rational(0)));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        for (int k = 0; k < r; ++k) A[i][j] += L[i][k] * R[k][j];
    int rank = -1;
    const Grid<Rational> K = exact_kernel(A, cols, &rank);
    CHECK(rank == oracle::bareiss_rank(to_q(A)));
    CHECK(rank + static_cast<int>(K.size()) == cols);
    for (const auto& v : K)
      for (int i = 0; i < rows; ++i) {
        Rational s = 0;
        for (int j = 0; j < cols; ++j) s += A[i][j] * v[j];
        CHECK(s == 0);
      }
  }
}

TEST_CASE("rank: float SVD path and its residual") {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 30; ++trial) {
    const int M = 1 + static_cast<int>(rng() % 3), d = static_cast<int>(rng() % 4);
    const int r = 1 + static_cast<int>(rng() % std::min(2 * M, 2 * d + 1));
    const Eigen::MatrixXd A = Eigen::MatrixXd::NullaryExpr(2 * M, r, [&] { return g(rng); }) *
                              Eigen::MatrixXd::NullaryExpr(r, 2 * d + 1, [&] { return g(rng); });
    BlockMatrix mtx;
    mtx.M = M;
    mtx.d = d;
    mtx.entries = A;
    mtx.data_scale = A.cwiseAbs().maxCoeff();
    const KernelBasis k = rank_and_kernel(mtx);
    CHECK(k.rank == r);
    CHECK(k.rank + k.dim == 2 * d + 1);
    CHECK(k.residual <= 1e-12 * mtx.data_scale);
  }
}

TEST_CASE("rank: empty matrix and indeterminate gap") {
  BlockMatrix empty;
  empty.d = 2;
  empty.entries = Eigen::MatrixXd(0, 5);
  const KernelBasis k = rank_and_kernel(empty);
  CHECK(k.rank == 0);
  CHECK(k.dim == 5);

  BlockMatrix near;
  near.M = 1;
  near.d = 1;
  near.entries = Eigen::MatrixXd::Zero(2, 3);
  near.entries(0, 0) = 1.0;
  near.entries(1, 1) = 3e-8;  // straddles the 2^-26 threshold with a ratio of ~2
  near.data_scale = 1.0;
  try {
    rank_and_kernel(near);
    FAIL("expected rank_indeterminate");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::rank_indeterminate);
  }
  CHECK(rank_and_kernel(near, 1.0).rank == 2);
}
