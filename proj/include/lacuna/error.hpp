#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lacuna {

enum class Errc {
  parse,
  invalid_argument,
  not_divisible,
  unsupported_mode,
  ill_conditioned_zeros,
  quadrature_budget_exceeded,
  not_hermitian_symmetric,
  rank_indeterminate,
  solver_stalled,
  facial_mismatch,
  spectrum_violation,
  witness_validation_failed,
  precondition_failed,
  exact_split_failed,
  invariant_violation,
  io,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it to a structured diagnostic.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Syntax error with the byte offset where parsing stopped.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(Errc::parse, what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace lacuna
