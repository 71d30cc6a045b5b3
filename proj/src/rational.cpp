#include "sv/rational.hpp"

#include <climits>

namespace sv {

Rational make_rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  // U+2212 MINUS SIGN
  const std::string unicode_minus = "\xE2\x88\x92";
  if (s.rfind(unicode_minus, 0) == 0) s = "-" + s.substr(unicode_minus.size());
  if (s.empty()) throw Error(ErrorCode::Parse, "empty rational literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_slash = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] == '/' && !seen_slash && i > start && i + 1 < s.size()) {
      seen_slash = true;
      continue;
    }
    if (s[i] < '0' || s[i] > '9')
      throw Error(ErrorCode::Parse, "malformed rational literal '" + s + "'");
  }
  if (start == s.size()) throw Error(ErrorCode::Parse, "malformed rational literal '" + s + "'");
  if (s[0] == '+') s = s.substr(1);
  Rational r;
  if (r.set_str(s, 10) != 0) throw Error(ErrorCode::Parse, "malformed rational literal '" + s + "'");
  if (r.get_den() == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

bool is_integer(const Rational& r) { return r.get_den() == 1; }

long to_long(const Rational& r) {
  if (!is_integer(r)) throw Error(ErrorCode::InvalidArgument, "expected an integer, got " + to_string(r));
  if (!r.get_num().fits_slong_p()) throw Error(ErrorCode::InvalidArgument, "integer out of range");
  return r.get_num().get_si();
}

}  // namespace sv
