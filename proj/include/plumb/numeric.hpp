#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace plumb {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return den(r) == 1; }

// exact Rat -> Int, caller must know the value is integral
inline Int to_int(const Rat& r) {
  if (!is_integer(r)) throw std::logic_error("to_int: non-integral rational");
  return num(r);
}

inline Int rat_floor(const Rat& r) {
  Int q = num(r) / den(r);
  if (num(r) < 0 && q * den(r) != num(r)) --q;
  return q;
}

inline std::string to_string(const Int& v) { return v.str(); }

// "p" when integral, "p/q" otherwise; q > 0 after normalization
inline std::string to_string(const Rat& r) {
  if (is_integer(r)) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

// parses an optionally signed decimal integer, rejecting trailing garbage
inline std::optional<Int> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) return std::nullopt;
  Int v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    v = v * 10 + (s[i] - '0');
  }
  return neg ? Int(-v) : v;
}

// "p" or "p/q" with q > 0
inline std::optional<Rat> parse_rat(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    auto p = parse_int(s);
    if (!p) return std::nullopt;
    return Rat(*p);
  }
  auto p = parse_int(s.substr(0, slash));
  auto q = parse_int(s.substr(slash + 1));
  if (!p || !q || *q <= 0) return std::nullopt;
  return Rat(*p, *q);
}

}  // namespace plumb
