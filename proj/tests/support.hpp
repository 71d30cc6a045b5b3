#pragma once

#include <doctest.h>

#include <string>

#include "sv/rational.hpp"

namespace doctest {
template <>
struct StringMaker<mpq_class> {
  static String convert(const mpq_class& q) { return sv::to_string(q).c_str(); }
};
template <>
struct StringMaker<sv::RationalVector> {
  static String convert(const sv::RationalVector& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + sv::to_string(v[i]);
    return (s + "]").c_str();
  }
};
}  // namespace doctest
