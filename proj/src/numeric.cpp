#include "lacuna/numeric.hpp"

#include <cmath>
#include <sstream>

#include "lacuna/error.hpp"

namespace lacuna {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::parse: return "ParseError";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::not_divisible: return "NotDivisible";
    case Errc::unsupported_mode: return "UnsupportedMode";
    case Errc::ill_conditioned_zeros: return "IllConditionedZeros";
    case Errc::quadrature_budget_exceeded: return "QuadratureBudgetExceeded";
    case Errc::not_hermitian_symmetric: return "NotHermitianSymmetric";
    case Errc::rank_indeterminate: return "RankIndeterminate";
    case Errc::solver_stalled: return "SolverStalled";
    case Errc::facial_mismatch: return "FacialMismatch";
    case Errc::spectrum_violation: return "SpectrumViolation";
    case Errc::witness_validation_failed: return "WitnessValidationFailed";
    case Errc::precondition_failed: return "PreconditionFailed";
    case Errc::exact_split_failed: return "ExactSplitFailed";
    case Errc::invariant_violation: return "InvariantViolation";
    case Errc::io: return "IOError";
  }
  return "Unknown";
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  const Rational n = o.norm();
  if (sgn(n) == 0) throw Error(Errc::invalid_argument, "division by zero in Q(i)");
  Rational re = (re_ * o.re_ + im_ * o.im_) / n;
  Rational im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string to_string(const GaussianRational& z) {
  if (sgn(z.im()) == 0) return to_string(z.re());
  std::ostringstream os;
  if (sgn(z.re()) != 0) os << to_string(z.re()) << (sgn(z.im()) > 0 ? "+" : "");
  os << to_string(z.im()) << "i";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
  return os << to_string(z);
}

std::optional<Rational> rationalize(double x, double tol, long max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  const Rational target(x);  // exact binary value
  // Convergents h/k of the continued fraction of target.
  mpz_class h_prev = 1, h = 0, k_prev = 0, k = 1;
  Rational rest = target;
  for (int iter = 0; iter < 64; ++iter) {
    mpz_class a = rest.get_num() / rest.get_den();
    if (rest < 0 && a * rest.get_den() != rest.get_num()) a -= 1;  // floor
    mpz_class h_next = a * h_prev + h;
    mpz_class k_next = a * k_prev + k;
    h = h_prev;
    k = k_prev;
    h_prev = h_next;
    k_prev = k_next;
    if (k_prev > max_den) break;
    Rational candidate(h_prev, k_prev);
    candidate.canonicalize();
    if (std::abs(to_double(candidate) - x) <= tol) return candidate;
    Rational frac = rest - Rational(a);
    if (sgn(frac) == 0) break;
    rest = 1 / frac;
  }
  return std::nullopt;
}

std::optional<GaussianRational> rationalize(Complex z, double tol, long max_den) {
  auto re = rationalize(z.real(), tol, max_den);
  auto im = rationalize(z.imag(), tol, max_den);
  if (!re || !im) return std::nullopt;
  return GaussianRational(*re, *im);
}

}  // namespace lacuna
