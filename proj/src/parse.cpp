#include "lacuna/parse.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include <json.hpp>

namespace lacuna {
namespace {

using json = nlohmann::json;

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : s_(text) {}

  ExactPoly parse() {
    ExactPoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool starts_primary(char c) const {
    return c == '(' || c == 'z' || c == 'i' || std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }

  ExactPoly expr() {
    ExactPoly acc = term();
    for (;;) {
      const char c = peek();
      if (c == '+') {
        ++pos_;
        acc = acc + term();
      } else if (c == '-') {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  ExactPoly term() {
    ExactPoly acc = unary();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = checked_product(acc, unary());
      } else if (c == '/') {
        ++pos_;
        const std::size_t at = pos_;
        ExactPoly d = unary();
        if (d.degree() != 0) throw ParseError(at, "division is only allowed by a nonzero constant");
        acc = scale(acc, GaussianRational(1) / d.leading());
      } else if (starts_primary(c)) {
        acc = checked_product(acc, unary());
      } else {
        return acc;
      }
    }
  }

  ExactPoly checked_product(const ExactPoly& a, const ExactPoly& b) {
    if (a.degree() + b.degree() > kMaxParsedDegree) fail("degree overflow");
    return a * b;
  }

  ExactPoly unary() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  ExactPoly power() {
    ExactPoly base = primary();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a nonnegative integer exponent");
    const std::string digits(s_.substr(start, pos_ - start));
    if (digits.size() > 6 || std::stol(digits) > kMaxParsedDegree) throw ParseError(start, "exponent overflow");
    const int e = static_cast<int>(std::stol(digits));
    if (static_cast<long>(std::max(base.degree(), 0)) * e > kMaxParsedDegree) throw ParseError(start, "exponent overflow");
    return pow(base, e);
  }

  ExactPoly primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      ExactPoly inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == 'z') {
      ++pos_;
      return ExactPoly::monomial(GaussianRational(1), 1);
    }
    if (c == 'i') {
      ++pos_;
      return ExactPoly::constant(GaussianRational(0, 1));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return ExactPoly::constant(number());
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  GaussianRational number() {
    const std::size_t start = pos_;
    std::string mantissa;
    long frac_digits = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) mantissa += s_[pos_++];
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        mantissa += s_[pos_++];
        ++frac_digits;
      }
    }
    if (mantissa.empty()) throw ParseError(start, "malformed number");
    long exponent = 0;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      ++pos_;
      int sign = 1;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) sign = s_[pos_++] == '-' ? -1 : 1;
      const std::size_t exp_start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (exp_start == pos_) throw ParseError(exp_start, "malformed exponent");
      if (pos_ - exp_start > 4) throw ParseError(exp_start, "exponent overflow");
      exponent = sign * std::stol(std::string(s_.substr(exp_start, pos_ - exp_start)));
    }
    Rational value{mpz_class(mantissa, 10)};
    const long shift = exponent - frac_digits;
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
    if (shift >= 0) {
      value *= ten_pow;
    } else {
      value /= ten_pow;
    }
    value.canonicalize();
    return GaussianRational(value);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

Rational rational_from_json(const json& v, bool& is_float, double& as_double) {
  if (v.is_number_integer()) {
    as_double = v.get<double>();
    return Rational{mpz_class(v.dump(), 10)};
  }
  if (v.is_number_float()) {
    is_float = true;
    as_double = v.get<double>();
    return Rational(as_double);
  }
  if (v.is_string()) {
    const auto text = v.get<std::string>();
    ExprParser parser(text);
    ExactPoly c = parser.parse();
    if (c.degree() > 0 || (!c.is_zero() && sgn(c.leading().im()) != 0))
      throw Error(Errc::parse, "coefficient string '" + text + "' is not a real rational");
    Rational r = c.is_zero() ? Rational(0) : c.leading().re();
    as_double = to_double(r);
    return r;
  }
  throw Error(Errc::parse, "coefficient entries must be numbers or rational strings");
}

ComplexPoly from_json(const json& doc) {
  if (doc.is_object()) {
    if (doc.contains("coeffs")) {
      std::vector<GaussianRational> out;
      for (const auto& c : doc.at("coeffs")) {
        if (!c.is_array() || c.size() != 4) throw Error(Errc::parse, "exact coefficients need [re_num, re_den, im_num, im_den]");
        auto part = [&](int n, int d) {
          mpz_class num(c[n].is_string() ? c[n].get<std::string>() : c[n].dump());
          mpz_class den(c[d].is_string() ? c[d].get<std::string>() : c[d].dump());
          if (den == 0) throw Error(Errc::parse, "zero denominator in coefficient");
          Rational q(num, den);
          q.canonicalize();
          return q;
        };
        out.emplace_back(part(0, 1), part(2, 3));
      }
      return ExactPoly(std::move(out));
    }
    if (doc.contains("coeffs_f")) {
      std::vector<Complex> out;
      for (const auto& c : doc.at("coeffs_f")) {
        if (!c.is_array() || c.size() != 2) throw Error(Errc::parse, "float coefficients need [re, im]");
        out.emplace_back(c[0].get<double>(), c[1].get<double>());
      }
      return FloatPoly(std::move(out));
    }
    throw Error(Errc::parse, "polynomial object needs a \"coeffs\" or \"coeffs_f\" field");
  }
  if (!doc.is_array()) throw Error(Errc::parse, "polynomial JSON must be an array or object");
  bool is_float = false;
  std::vector<GaussianRational> exact;
  std::vector<Complex> approx;
  for (const auto& c : doc) {
    if (!c.is_array() || c.empty() || c.size() > 2) throw Error(Errc::parse, "coefficient list entries must be [re, im]");
    double re_d = 0.0;
    double im_d = 0.0;
    Rational re = rational_from_json(c[0], is_float, re_d);
    Rational im = c.size() == 2 ? rational_from_json(c[1], is_float, im_d) : Rational(0);
    exact.emplace_back(re, im);
    approx.emplace_back(re_d, im_d);
  }
  if (is_float) return FloatPoly(std::move(approx));
  return ExactPoly(std::move(exact));
}

}  // namespace

ComplexPoly parse_poly(std::string_view text) {
  std::size_t start = 0;
  while (start < text.size() && std::isspace(static_cast<unsigned char>(text[start]))) ++start;
  if (start == text.size()) throw ParseError(start, "empty input");
  if (text[start] == '[' || text[start] == '{') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(e.byte, std::string("malformed JSON: ") + e.what());
    } catch (const json::exception& e) {
      throw Error(Errc::parse, std::string("malformed JSON: ") + e.what());
    }
    try {
      return from_json(doc);
    } catch (const json::exception& e) {
      throw Error(Errc::parse, std::string("malformed coefficient document: ") + e.what());
    }
  }
  return ExprParser(text).parse();
}

}  // namespace lacuna
