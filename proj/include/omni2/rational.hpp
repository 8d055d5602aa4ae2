#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace omni2 {

using Int = boost::multiprecision::cpp_int;
// Always stored in lowest terms with positive denominator.
using Rat = boost::multiprecision::cpp_rational;

/// Parses "p/q" or "n" (optional leading '-'). Rejects zero denominators and
/// anything that is not a plain integer fraction.
inline Rat parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!is_int(s)) throw std::invalid_argument("bad rational literal '" + s + "'");
    return Rat(Int(s));
  }
  const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!is_int(num) || !is_int(den))
    throw std::invalid_argument("bad rational literal '" + s + "'");
  Int n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  if (d < 0) { // the two-argument constructor insists on a positive denominator
    n = -n;
    d = -d;
  }
  return Rat(n, d);
}

/// Lowest-terms form: "p/q" with q > 1, plain "p" for integers.
inline std::string format_rational(const Rat& r) { return r.str(); }

} // namespace omni2
