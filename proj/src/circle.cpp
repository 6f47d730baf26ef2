#include "lacuna/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss.hpp>

namespace lacuna {
namespace {

constexpr double kClusterFloor = 1e-6;
constexpr double kIllConditioned = 1e-6;

double sum_abs_powers(const FloatPoly& p, double r) {
  double acc = 0.0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

// Merge radius for a cluster of k eigenvalues: a k-fold root perturbed at
// machine precision spreads over roughly eps^(1/k).
double cluster_radius(int k, Complex center) {
  const double spread = 10.0 * std::pow(kMachineEps, 1.0 / std::max(k, 1));
  return std::max(kClusterFloor, spread) * std::max(1.0, std::abs(center));
}

Complex newton_polish(const FloatPoly& f, const FloatPoly& df, Complex z, int iters) {
  double best = std::abs(f(z));
  for (int i = 0; i < iters && best > 0.0; ++i) {
    const Complex d = df(z);
    if (d == Complex(0.0, 0.0)) break;
    const Complex next = z - f(z) / d;
    const double r = std::abs(f(next));
    if (!(r < best)) break;
    z = next;
    best = r;
  }
  return z;
}

Complex snap(Complex z) {
  const double scale = std::max(std::abs(z), 1e-300);
  double re = z.real();
  double im = z.imag();
  if (std::abs(im) <= 1e-14 * scale) im = 0.0;
  if (std::abs(re) <= 1e-14 * scale) re = 0.0;
  return {re, im};
}

double sort_arg(Complex z) {
  z = snap(z);
  if (z == Complex(0.0, 0.0)) return -std::numbers::pi;  // origin first
  double a = std::atan2(z.imag(), z.real());
  if (a <= -std::numbers::pi + 1e-15) a = std::numbers::pi;
  return a;
}

struct RawGroup {
  std::vector<Complex> points;
};

Complex centroid(const std::vector<Complex>& pts) {
  Complex c(0.0, 0.0);
  for (const auto& z : pts) c += z;
  return c / static_cast<double>(pts.size());
}

double diameter(const std::vector<Complex>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, std::abs(pts[i] - pts[j]));
  return d;
}

// Splits a point set along the longest edge of its minimum spanning tree.
std::pair<std::vector<Complex>, std::vector<Complex>> split_longest_edge(const std::vector<Complex>& pts) {
  const std::size_t n = pts.size();
  std::vector<bool> in_tree(n, false);
  std::vector<double> dist(n, INFINITY);
  std::vector<std::size_t> parent(n, 0);
  dist[0] = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!in_tree[v] && (u == n || dist[v] < dist[u])) u = v;
    in_tree[u] = true;
    if (step > 0) edges.emplace_back(parent[u], u);
    for (std::size_t v = 0; v < n; ++v) {
      const double d = std::abs(pts[u] - pts[v]);
      if (!in_tree[v] && d < dist[v]) {
        dist[v] = d;
        parent[v] = u;
      }
    }
  }
  std::size_t cut = 0;
  for (std::size_t e = 1; e < edges.size(); ++e)
    if (std::abs(pts[edges[e].first] - pts[edges[e].second]) > std::abs(pts[edges[cut].first] - pts[edges[cut].second]))
      cut = e;
  // Component of node 0 once the cut edge is removed.
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (e == cut) continue;
    adj[edges[e].first].push_back(edges[e].second);
    adj[edges[e].second].push_back(edges[e].first);
  }
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
  }
  std::pair<std::vector<Complex>, std::vector<Complex>> out;
  for (std::size_t i = 0; i < n; ++i) (seen[i] ? out.first : out.second).push_back(pts[i]);
  return out;
}

// Worst relative backward error of p, p', ..., p^(k-1) at z.
double derivative_residual(const std::vector<FloatPoly>& derivs, int k, Complex z) {
  double worst = 0.0;
  for (int j = 0; j < k; ++j) worst = std::max(worst, backward_error(derivs[j], z));
  return worst;
}

void cluster_points(const std::vector<Complex>& pts, const std::vector<FloatPoly>& derivs,
                    std::vector<ZeroCluster>& out) {
  const int k = static_cast<int>(pts.size());
  Complex c = centroid(pts);
  const double diam = diameter(pts);
  if (k == 1 || diam <= 2.0 * cluster_radius(k, c)) {
    if (k > 1) {
      const Complex refined = newton_polish(derivs[k - 1], derivs[k], c, 20);
      if (std::abs(refined - c) <= std::max(diam, cluster_radius(k, c))) c = refined;
    }
    const double res = derivative_residual(derivs, k, c);
    if (res <= kIllConditioned) {
      out.push_back(ZeroCluster{c, k, Region::disk, backward_error(derivs[0], c), diam / 2.0});
      return;
    }
    if (k == 1)
      throw Error(Errc::ill_conditioned_zeros, "zero near (" + std::to_string(c.real()) + ", " +
                                                   std::to_string(c.imag()) + ") has backward error " +
                                                   std::to_string(res));
  }
  auto [a, b] = split_longest_edge(pts);
  cluster_points(a, derivs, out);
  cluster_points(b, derivs, out);
}

void finish(std::vector<ZeroCluster>& clusters, double eps_circle) {
  for (auto& c : clusters) {
    c.location = snap(c.location);
    c.region = classify_region(c.location, eps_circle);
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const ZeroCluster& a, const ZeroCluster& b) { return zero_order_less(a.location, b.location); });
}

std::vector<ZeroCluster> find_zeros_float(const FloatPoly& p, double eps_circle) {
  std::vector<ZeroCluster> out;
  const int k0 = low_order(p);
  if (k0 > 0) out.push_back(ZeroCluster{Complex(0.0, 0.0), k0, Region::disk, 0.0, 0.0});
  const FloatPoly q = strip_low_order(p);
  if (q.degree() > 0) {
    std::vector<FloatPoly> derivs{q};
    for (int j = 0; j < q.degree(); ++j) derivs.push_back(derivative(derivs.back()));
    cluster_points(polynomial_roots(q), derivs, out);
  }
  finish(out, eps_circle);
  return out;
}

std::vector<ZeroCluster> find_zeros_exact(const ExactPoly& p, double eps_circle) {
  std::vector<ZeroCluster> out;
  const int k0 = low_order(p);
  if (k0 > 0) out.push_back(ZeroCluster{Complex(0.0, 0.0), k0, Region::disk, 0.0, 0.0});
  const auto factors = square_free_decomposition(strip_low_order(p));
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].degree() <= 0) continue;
    const FloatPoly f = to_float(factors[i]);
    for (const Complex& z : polynomial_roots(f)) {
      const double res = backward_error(f, z);
      if (res > kIllConditioned)
        throw Error(Errc::ill_conditioned_zeros, "root of a square-free factor has backward error " + std::to_string(res));
      out.push_back(ZeroCluster{z, static_cast<int>(i) + 1, Region::disk, res, 0.0});
    }
  }
  finish(out, eps_circle);
  return out;
}

}  // namespace

std::string_view region_name(Region r) {
  switch (r) {
    case Region::disk: return "disk";
    case Region::circle: return "circle";
    case Region::exterior: return "exterior";
  }
  return "disk";
}

Region classify_region(Complex z, double eps_circle) {
  const double r = std::abs(z);
  if (std::abs(r - 1.0) <= eps_circle) return Region::circle;
  return r < 1.0 ? Region::disk : Region::exterior;
}

bool zero_order_less(Complex a, Complex b) {
  const double ta = sort_arg(a);
  const double tb = sort_arg(b);
  if (std::abs(ta - tb) > 1e-12) return ta < tb;
  return std::abs(a) < std::abs(b);
}

double backward_error(const FloatPoly& p, Complex z) {
  if (p.is_zero()) return 0.0;
  const double denom = sum_abs_powers(p, std::abs(z));
  return denom > 0.0 ? std::abs(p(z)) / denom : 0.0;
}

std::vector<Complex> polynomial_roots(const FloatPoly& p) {
  if (p.is_zero()) throw Error(Errc::invalid_argument, "roots of the zero polynomial");
  std::vector<Complex> roots(static_cast<std::size_t>(low_order(p)), Complex(0.0, 0.0));
  const FloatPoly q = strip_low_order(p);
  const int n = q.degree();
  if (n <= 0) return roots;
  // Rescale z = sigma w so the root moduli are near 1; improves the eigenproblem.
  const double sigma = std::pow(std::abs(q.coeff(0)) / std::abs(q.leading()), 1.0 / n);
  std::vector<Complex> a(static_cast<std::size_t>(n) + 1);
  double sp = 1.0;
  for (int k = 0; k <= n; ++k, sp *= sigma) a[k] = q.coeff(k) * sp;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -a[i] / a[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw Error(Errc::ill_conditioned_zeros, "companion eigenvalue solver failed");
  const FloatPoly dq = derivative(q);
  for (int i = 0; i < n; ++i) roots.push_back(newton_polish(q, dq, solver.eigenvalues()[i] * sigma, 3));
  return roots;
}

NormResult l1_norm(const ComplexPoly& p, double tol, int max_panels) {
  if (p.is_zero()) throw Error(Errc::invalid_argument, "L1 norm of the zero polynomial");
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "quadrature tolerance must be positive");
  const FloatPoly f = p.to_float();
  const double two_pi = 2.0 * std::numbers::pi;
  auto g = [&f](double t) { return std::abs(f(std::polar(1.0, t))); };

  std::vector<double> cuts;
  const int base = std::max(8, 2 * (f.degree() + 1));
  for (int i = 0; i <= base; ++i) cuts.push_back(two_pi * i / base);
  if (f.degree() > 0) {
    try {
      for (const Complex& z : polynomial_roots(f))
        if (z != Complex(0.0, 0.0) && std::abs(std::abs(z) - 1.0) <= 0.1) {
          double t = std::arg(z);
          if (t < 0) t += two_pi;
          cuts.push_back(t);
        }
    } catch (const Error&) {
      // Breakpoints are only a hint; the adaptive loop still converges.
    }
    const int grid = 8 * (f.degree() + 1) + 64;
    std::vector<double> vals(grid);
    for (int i = 0; i < grid; ++i) vals[i] = g(two_pi * i / grid);
    for (int i = 0; i < grid; ++i)
      if (vals[i] <= vals[(i + grid - 1) % grid] && vals[i] <= vals[(i + 1) % grid]) cuts.push_back(two_pi * i / grid);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return b - a < 1e-13; }), cuts.end());

  using GL = boost::math::quadrature::gauss<double, 20>;
  struct Panel {
    double a, b, value, err;
    bool operator<(const Panel& o) const { return err < o.err; }
  };
  auto make_panel = [&](double a, double b) {
    const double m = 0.5 * (a + b);
    const double whole = GL::integrate(g, a, b);
    const double halves = GL::integrate(g, a, m) + GL::integrate(g, m, b);
    return Panel{a, b, halves / two_pi, std::abs(whole - halves) / two_pi};
  };

  std::priority_queue<Panel> queue;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i]) queue.push(make_panel(cuts[i], cuts[i + 1]));
  int panels = static_cast<int>(queue.size());
  auto total_err = [&queue]() {
    auto copy = queue;
    double s = 0.0;
    while (!copy.empty()) {
      s += copy.top().err;
      copy.pop();
    }
    return s;
  };
  double err = total_err();
  while (err > tol) {
    if (panels >= max_panels)
      throw Error(Errc::quadrature_budget_exceeded,
                  "L1 norm error estimate " + std::to_string(err) + " above tolerance after " + std::to_string(panels) + " panels");
    const Panel worst = queue.top();
    queue.pop();
    const double m = 0.5 * (worst.a + worst.b);
    const Panel left = make_panel(worst.a, m);
    const Panel right = make_panel(m, worst.b);
    err += left.err + right.err - worst.err;
    queue.push(left);
    queue.push(right);
    ++panels;
    if (panels % 64 == 0) err = total_err();  // drop accumulated rounding in the running sum
  }
  NormResult out;
  out.panels = panels;
  // Sum small panels first for a stable total.
  std::vector<Panel> all;
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.value < y.value; });
  for (const auto& pnl : all) {
    out.value += pnl.value;
    out.abs_error_bound += pnl.err;
  }
  return out;
}

Normalized normalize(const ComplexPoly& p, double tol) {
  if (p.is_zero()) throw Error(Errc::invalid_argument, "cannot normalize the zero polynomial");
  Normalized out;
  out.norm = l1_norm(p, tol);
  out.scale = 1.0 / out.norm.value;
  if (p.is_exact()) {
    out.poly = p;
    out.symbolic = true;
  } else {
    out.poly = lacuna::scale(p.floating(), Complex(out.scale, 0.0));
  }
  return out;
}

std::vector<ZeroCluster> find_zeros(const ComplexPoly& p, double eps_circle) {
  if (p.is_zero()) throw Error(Errc::invalid_argument, "zeros of the zero polynomial");
  if (p.is_exact()) return find_zeros_exact(p.exact(), eps_circle);
  return find_zeros_float(p.floating(), eps_circle);
}

CommonDiskZeros common_disk_zeros(const ComplexPoly& p, const ComplexPoly& pstar, double eps_circle) {
  CommonDiskZeros out;
  if (p.is_exact() && pstar.is_exact()) {
    const ExactPoly phi = gcd_exact(p.exact(), pstar.exact());
    if (phi.degree() > 0)
      for (auto& c : find_zeros_exact(phi, eps_circle))
        if (c.region == Region::disk) out.clusters.push_back(c);
  } else {
    const auto zp = find_zeros(p.to_float(), eps_circle);
    const auto zs = find_zeros(pstar.to_float(), eps_circle);
    for (const auto& a : zp) {
      if (a.region != Region::disk) continue;
      for (const auto& b : zs) {
        if (b.region != Region::disk) continue;
        const int k = std::max(a.multiplicity, b.multiplicity);
        if (std::abs(a.location - b.location) <= cluster_radius(k, a.location)) {
          ZeroCluster c = a;
          c.multiplicity = std::min(a.multiplicity, b.multiplicity);
          c.residual = std::max(a.residual, b.residual);
          out.clusters.push_back(c);
          break;
        }
      }
    }
  }
  for (const auto& c : out.clusters) out.m += c.multiplicity;
  return out;
}

}  // namespace lacuna
