#include <doctest.h>

#include <numbers>
#include <random>

#include "lacuna/plus_cone.hpp"
#include "test_util.hpp"

using namespace lacuna;

namespace {

CoefVector cv(std::vector<double> flat) { return CoefVector::from_flat(flat); }

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<std::vector<double>> identity(int n) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) out[i][i] = 1.0;
  return out;
}

/// Residual of x against span(basis) in the Euclidean norm.
double off_span(const std::vector<double>& x, const std::vector<std::vector<double>>& basis) {
  const Eigen::MatrixXd U = orthonormal_basis(basis, static_cast<int>(x.size()));
  const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  return (v - U * (U.transpose() * v)).norm();
}

}  // namespace

TEST_CASE("CoefVector layout and tau") {
  const CoefVector v = cv({1, 2, 3, 4, 5});
  CHECK(v.d == 2);
  CHECK(v.gamma(0) == Complex(2, 0));
  CHECK(v.gamma(1) == Complex(2, 4));
  CHECK(v.gamma(-2) == Complex(3, -5));
  for (double t : {0.0, 0.3, 1.7, 4.0}) {
    CHECK(v.tau(t) == doctest::Approx(oracle::tau(v.flat(), t)).epsilon(1e-13));
    // Central difference for the first derivative.
    const double h = 1e-5;
    CHECK(v.tau_derivative(t, 1) == doctest::Approx((v.tau(t + h) - v.tau(t - h)) / (2 * h)).epsilon(1e-6));
  }
  CHECK_THROWS_AS(CoefVector::from_flat(std::vector<double>{1, 2}), Error);
}

TEST_CASE("is_plus on small examples") {
  CHECK(is_plus(cv({1, 0, 0})).plus);
  const auto c = is_plus(cv({0, 1, 0}));
  CHECK_FALSE(c.plus);
  CHECK(c.value == doctest::Approx(-2.0).epsilon(1e-10));
  CHECK(std::abs(std::cos(c.t_star) + 1.0) <= 1e-8);
  CHECK(verify_certificate(cv({0, 1, 0}), c));

  // 1 - cos 2t touches zero at t = 0 and pi.
  const auto b = is_plus(cv({1, 0, -1, 0, 0}));
  CHECK(b.plus);
  CHECK(b.boundary);
  CHECK(verify_certificate(cv({1, 0, -1, 0, 0}), b));
  CHECK_FALSE(is_plus(cv({0, 0, 0, 1, 0})).plus);
  CHECK(is_plus(cv({0, 0, 0})).plus);
}

TEST_CASE("min_on_circle matches a dense grid") {
  const CoefVector s = cv({1, 1, -1, 0, 0});
  const CircleMin m = min_on_circle(s);
  CHECK(m.value == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(std::abs(std::cos(m.t) + 1.0) <= 1e-8);

  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 6);
    std::vector<double> f(static_cast<std::size_t>(2 * d + 1));
    for (auto& x : f) x = g(rng);
    const auto [t, ref] = oracle::grid_min(f, 20000);
    const CircleMin got = min_on_circle(cv(f));
    // The refined minimum is never above the grid value and close to it.
    CHECK(got.value <= ref + 1e-12);
    CHECK(got.value >= ref - 1e-3);
    const auto mins = local_minima_on_circle(cv(f));
    REQUIRE_FALSE(mins.empty());
    CHECK(mins.front().value == doctest::Approx(got.value).epsilon(1e-12));
    for (std::size_t i = 1; i < mins.size(); ++i) CHECK(mins[i - 1].value <= mins[i].value);
  }
}

TEST_CASE("Gram certificates reproduce the coefficients") {
  std::mt19937_64 rng(37);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 60; ++trial) {
    const int d = static_cast<int>(rng() % 8);
    std::vector<double> f(static_cast<std::size_t>(2 * d + 1));
    for (auto& x : f) x = g(rng);
    const double lo = min_on_circle(cv(f)).value;
    f[0] += -lo / 2 + 0.01 * std::abs(g(rng));
    const CoefVector v = cv(f);
    const auto cert = is_plus(v);
    REQUIRE(cert.plus);
    CHECK(cert.min_eigenvalue >= -1e-8);
    const auto gamma = gram_gamma(cert.gram);
    for (int k = 0; k <= d; ++k) CHECK(std::abs(gamma[k] - v.gamma(k)) <= 1e-8);
    CHECK(verify_certificate(v, cert));
  }
}

TEST_CASE("Fejer kernels are plus and sit on the boundary") {
  for (int d = 1; d <= 6; ++d)
    for (double theta : {0.0, 0.7, 2.0}) {
      const auto cert = is_plus(cv(oracle::fejer_vector(d, theta)));
      CHECK(cert.plus);
      CHECK(cert.boundary);
    }
}

TEST_CASE("cone closure") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 4);
    const auto a = oracle::fejer_vector(d, g(rng));
    const auto b = oracle::fejer_vector(d, g(rng));
    const double la = std::abs(g(rng)), lb = std::abs(g(rng));
    std::vector<double> s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) s[i] = la * a[i] + lb * b[i];
    CHECK(is_plus(cv(s)).plus);
  }
}

TEST_CASE("find_plus_in_slice") {
  const std::vector<std::vector<double>> V2 = {{1, 0, -1, 0, 0}, {0, 1, 0, 0, 0}};
  const std::vector<double> e0 = {1, 0, 0, 0, 0};
  const auto x = find_plus_in_slice(V2, e0, 1.0);
  REQUIRE(x);
  CHECK(dot(x->flat(), e0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(is_plus(*x).plus);
  CHECK(off_span(x->flat(), V2) <= 1e-9);

  // The only plus vector of span{cos t} is zero.
  CHECK_FALSE(find_plus_in_slice({{0, 1, 0}}, {0, 1, 0}, 1.0));
  // Normal orthogonal to the subspace.
  CHECK_FALSE(find_plus_in_slice(V2, {0, 0, 0, 1, 0}, 1.0));
  CHECK_FALSE(find_plus_in_slice({}, e0, 1.0));
  CHECK_THROWS_AS(find_plus_in_slice(V2, {1, 0, 0}, 1.0), Error);

  // Interior of the full cone.
  const auto y = find_plus_in_slice(identity(7), {1, 0, 0, 0, 0, 0, 0}, 2.0);
  REQUIRE(y);
  CHECK(y->alpha[0] == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("plus_dimension") {
  for (int d = 0; d <= 3; ++d) {
    const auto r = plus_dimension(identity(2 * d + 1));
    CHECK(r.dim_plus == 2 * d + 1);
    for (const auto& v : r.vectors) CHECK(is_plus(v).plus);
  }
  CHECK(plus_dimension({{0, 1, 0}}).dim_plus == 0);
  CHECK(plus_dimension({}).dim_plus == 0);
  const auto v2 = plus_dimension({{1, 0, -1, 0, 0}, {0, 1, 0, 0, 0}});
  CHECK(v2.dim_plus == 1);
  REQUIRE(v2.vectors.size() == 1);
  CHECK(off_span(v2.vectors[0].flat(), {{1, 0, -1, 0, 0}}) <= 1e-8);

  // Constants and the second harmonic: a disk cone of full dimension.
  const auto h = plus_dimension({{1, 0, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 0, 1}});
  CHECK(h.dim_plus == 3);
  // Two harmonics sharing a zero at t = 0: (1 - cos t) and (1 - cos 2t) only.
  const auto z = plus_dimension({{1, -1, 0, 0, 0}, {1, 0, -1, 0, 0}, {0, 0, 0, 1, 0}});
  CHECK(z.dim_plus == 2);
}

TEST_CASE("orthonormal_basis drops dependent vectors") {
  const Eigen::MatrixXd U = orthonormal_basis({{1, 0, 0}, {2, 0, 0}, {0, 1, 1}}, 3);
  CHECK(U.cols() == 2);
  CHECK((U.transpose() * U - Eigen::MatrixXd::Identity(2, 2)).norm() <= 1e-12);
}
