#include "lacuna/poly.hpp"

#include <iomanip>
#include <sstream>

namespace lacuna {

FloatPoly to_float(const ExactPoly& p) {
  std::vector<Complex> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(c.to_complex());
  return FloatPoly(std::move(out));
}

ExactPoly gcd_exact(const ExactPoly& p, const ExactPoly& q) {
  if (p.is_zero() && q.is_zero()) throw Error(Errc::invalid_argument, "gcd of two zero polynomials");
  ExactPoly a = make_monic(p);
  ExactPoly b = make_monic(q);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    ExactPoly r = divmod(a, b).second;
    a = std::move(b);
    b = make_monic(r);
  }
  return make_monic(a);
}

std::vector<ExactPoly> square_free_decomposition(const ExactPoly& p) {
  std::vector<ExactPoly> out;
  if (p.degree() <= 0) return out;
  const ExactPoly f = make_monic(p);
  const ExactPoly df = derivative(f);
  ExactPoly a = gcd_exact(f, df);
  ExactPoly b = divide_exact(f, a);
  ExactPoly c = divide_exact(df, a);
  ExactPoly d = c - derivative(b);
  while (b.degree() > 0) {
    ExactPoly g = d.is_zero() ? b : gcd_exact(b, d);
    out.push_back(g);
    ExactPoly b_next = divide_exact(b, g);
    ExactPoly c_next = divide_exact(d, g);
    d = c_next - derivative(b_next);
    b = std::move(b_next);
  }
  return out;
}

LacunaryPattern::LacunaryPattern(int N, std::vector<int> forbidden) : N_(N), forbidden_(std::move(forbidden)) {
  if (N_ <= 0) throw Error(Errc::invalid_argument, "lacunary pattern needs N > 0");
  for (std::size_t j = 0; j < forbidden_.size(); ++j) {
    const int k = forbidden_[j];
    if (k <= 0 || k >= N_)
      throw Error(Errc::invalid_argument, "forbidden index " + std::to_string(k) + " outside 1..N-1");
    if (j > 0 && forbidden_[j - 1] >= k)
      throw Error(Errc::invalid_argument, "forbidden indices must be strictly increasing");
  }
}

LacunaryPattern LacunaryPattern::from_lambda(const std::set<int>& lambda) {
  if (lambda.empty() || *lambda.begin() != 0)
    throw Error(Errc::invalid_argument, "Lambda must contain 0");
  const int N = *lambda.rbegin();
  std::vector<int> forbidden;
  for (int k = 1; k < N; ++k)
    if (!lambda.count(k)) forbidden.push_back(k);
  return LacunaryPattern(N, std::move(forbidden));
}

bool LacunaryPattern::contains(int k) const {
  if (k < 0 || k > N_) return false;
  return !std::binary_search(forbidden_.begin(), forbidden_.end(), k);
}

std::vector<int> LacunaryPattern::lambda() const {
  std::vector<int> out;
  for (int k = 0; k <= N_; ++k)
    if (contains(k)) out.push_back(k);
  return out;
}

std::string_view mode_name(Mode m) { return m == Mode::exact ? "exact" : "float"; }

const ExactPoly& ComplexPoly::exact() const {
  if (!is_exact()) throw Error(Errc::unsupported_mode, "polynomial is in float mode");
  return std::get<ExactPoly>(poly_);
}

const FloatPoly& ComplexPoly::floating() const {
  if (is_exact()) throw Error(Errc::unsupported_mode, "polynomial is in exact mode");
  return std::get<FloatPoly>(poly_);
}

FloatPoly ComplexPoly::to_float() const {
  return is_exact() ? lacuna::to_float(exact()) : floating();
}

int ComplexPoly::degree() const {
  return visit([](const auto& p) { return p.degree(); });
}

Complex ComplexPoly::operator()(Complex z) const {
  return visit([z](const auto& p) { return p(z); });
}

std::vector<Complex> ComplexPoly::coeffs_complex() const { return to_float().coeffs(); }

ComplexPoly conjugate_reciprocal(const ComplexPoly& p, int N) {
  return p.visit([N](const auto& q) { return ComplexPoly(conjugate_reciprocal(q, N)); });
}

bool spectrum_in(const ComplexPoly& p, const LacunaryPattern& lambda, double tol_rel) {
  return p.visit([&](const auto& q) { return spectrum_in(q, lambda, tol_rel); });
}

ComplexPoly scale(const ComplexPoly& p, const GaussianRational& c) {
  if (p.is_exact()) return lacuna::scale(p.exact(), c);
  return lacuna::scale(p.floating(), c.to_complex());
}

ComplexPoly scale(const ComplexPoly& p, Complex c) { return lacuna::scale(p.to_float(), c); }

ComplexPoly mul(const ComplexPoly& a, const ComplexPoly& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() * b.exact();
  return a.to_float() * b.to_float();
}

ComplexPoly divide_exact(const ComplexPoly& p, const ComplexPoly& d, double tol) {
  if (p.is_exact() && d.is_exact()) return lacuna::divide_exact(p.exact(), d.exact());
  return lacuna::divide_exact(p.to_float(), d.to_float(), tol);
}

ComplexPoly gcd_exact(const ComplexPoly& p, const ComplexPoly& q) {
  if (!p.is_exact() || !q.is_exact())
    throw Error(Errc::unsupported_mode, "gcd_exact requires exact-mode polynomials; float mode uses root clustering");
  return lacuna::gcd_exact(p.exact(), q.exact());
}

namespace {

template <class C, class Fmt>
std::string format_terms(const std::vector<C>& coeffs, Fmt fmt) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const std::string c = fmt(coeffs[k]);
    if (c.empty()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")";
    if (k == 1) os << "*z";
    if (k > 1) os << "*z^" << k;
  }
  return first ? "0" : os.str();
}

}  // namespace

std::string to_string(const ExactPoly& p) {
  return format_terms(p.coeffs(), [](const GaussianRational& c) { return c.is_zero() ? std::string() : to_string(c); });
}

std::string to_string(const FloatPoly& p) {
  return format_terms(p.coeffs(), [](const Complex& c) {
    if (c == Complex(0.0, 0.0)) return std::string();
    std::ostringstream os;
    os << std::setprecision(17) << c.real();
    if (c.imag() != 0.0) os << (c.imag() >= 0 ? "+" : "") << c.imag() << "i";
    return os.str();
  });
}

std::string to_string(const ComplexPoly& p) {
  return p.visit([](const auto& q) { return to_string(q); });
}

}  // namespace lacuna
