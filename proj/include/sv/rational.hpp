#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sv {

using Rational = mpq_class;
using Integer = mpz_class;

enum class ErrorCode : int {
  Ok = 0,
  InvalidArgument = 1,
  LatticeMismatch = 2,
  NotNegativeDefinite = 3,
  NonGorenstein = 4,
  UnknownCurve = 5,
  Inconclusive = 6,
  Parse = 7,
  Io = 8,
  Internal = 9,
};

/// Base exception for every engine error; carries a stable code for the C API.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

Rational make_rational(long num, long den = 1);

/// "p/q" or "p"; accepts a leading '-' or the unicode minus sign.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when integral).
std::string to_string(const Rational& r);

bool is_integer(const Rational& r);

/// Integer value; throws when r is not integral.
long to_long(const Rational& r);

using RationalVector = std::vector<Rational>;

}  // namespace sv
