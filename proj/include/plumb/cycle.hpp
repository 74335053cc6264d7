#pragma once

#include <initializer_list>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "plumb/error.hpp"
#include "plumb/numeric.hpp"

namespace plumb {

// Sparse vertex-indexed vector; zero coefficients are never stored, so
// equality is structural equality of values.
template <typename Coef>
class Cycle {
 public:
  Cycle() = default;
  Cycle(std::initializer_list<std::pair<const int, Coef>> init) {
    for (const auto& [id, c] : init) set(id, c);
  }

  static Cycle unit(int id) {
    Cycle c;
    c.set(id, Coef(1));
    return c;
  }

  // reduced cycle on a vertex set
  static Cycle ones(const std::set<int>& ids) {
    Cycle c;
    for (int id : ids) c.set(id, Coef(1));
    return c;
  }

  const std::map<int, Coef>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  Coef get(int id) const {
    auto it = c_.find(id);
    return it == c_.end() ? Coef(0) : it->second;
  }

  void set(int id, const Coef& v) {
    if (v == 0)
      c_.erase(id);
    else
      c_[id] = v;
  }

  std::set<int> support() const {
    std::set<int> s;
    for (const auto& [id, c] : c_) s.insert(id);
    return s;
  }

  bool is_effective() const {
    for (const auto& [id, c] : c_)
      if (c < 0) return false;
    return true;
  }

  // componentwise <=
  bool leq(const Cycle& o) const {
    for (const auto& [id, c] : c_)
      if (c > o.get(id)) return false;
    for (const auto& [id, c] : o.c_)
      if (get(id) > c) return false;
    return true;
  }

  Cycle restricted(const std::set<int>& keep) const {
    Cycle out;
    for (const auto& [id, c] : c_)
      if (keep.count(id)) out.c_.emplace(id, c);
    return out;
  }

  Cycle without(int id) const {
    Cycle out = *this;
    out.c_.erase(id);
    return out;
  }

  Cycle operator+(const Cycle& o) const {
    Cycle out = *this;
    for (const auto& [id, c] : o.c_) out.set(id, out.get(id) + c);
    return out;
  }

  Cycle operator-(const Cycle& o) const {
    Cycle out = *this;
    for (const auto& [id, c] : o.c_) out.set(id, out.get(id) - c);
    return out;
  }

  Cycle operator-() const {
    Cycle out;
    for (const auto& [id, c] : c_) out.c_.emplace(id, -c);
    return out;
  }

  Cycle scaled(const Coef& k) const {
    Cycle out;
    if (k == 0) return out;
    for (const auto& [id, c] : c_) out.c_.emplace(id, c * k);
    return out;
  }

  Coef total() const {
    Coef t(0);
    for (const auto& [id, c] : c_) t += c;
    return t;
  }

  bool operator==(const Cycle& o) const { return c_ == o.c_; }
  bool operator!=(const Cycle& o) const { return c_ != o.c_; }
  bool operator<(const Cycle& o) const { return c_ < o.c_; }

 private:
  std::map<int, Coef> c_;
};

using IntCycle = Cycle<Int>;
using ChernClass = Cycle<Rat>;

inline ChernClass to_chern(const IntCycle& z) {
  ChernClass out;
  for (const auto& [id, c] : z.coeffs()) out.set(id, Rat(c));
  return out;
}

// exact narrowing; caller guarantees integrality
inline IntCycle to_int_cycle(const ChernClass& z) {
  IntCycle out;
  for (const auto& [id, c] : z.coeffs()) out.set(id, to_int(c));
  return out;
}

namespace detail {

template <typename Coef, typename Parse>
Cycle<Coef> parse_cycle_impl(std::string_view text, Parse parse_coef) {
  Cycle<Coef> out;
  if (text.empty()) return out;
  std::set<int> seen;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view item = text.substr(pos, comma == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : comma - pos);
    pos = comma == std::string_view::npos ? text.size() + 1 : comma + 1;
    auto colon = item.find(':');
    if (colon == std::string_view::npos)
      throw SyntaxError("cycle item '" + std::string(item) + "' needs id:coeff",
                        std::string(item));
    auto id = parse_int(item.substr(0, colon));
    if (!id || *id < std::numeric_limits<int>::min() || *id > std::numeric_limits<int>::max())
      throw SyntaxError("bad vertex id in cycle item '" + std::string(item) + "'",
                        std::string(item));
    auto coef = parse_coef(item.substr(colon + 1));
    if (!coef)
      throw SyntaxError("bad coefficient in cycle item '" + std::string(item) + "'",
                        std::string(item));
    const int vid = static_cast<int>(*id);
    if (!seen.insert(vid).second)
      throw SyntaxError("vertex " + std::to_string(vid) + " repeated in cycle literal",
                        std::to_string(vid));
    out.set(vid, Coef(*coef));
  }
  return out;
}

}  // namespace detail

// literal: comma-separated id:coeff, e.g. "1:2,3:-1"
inline IntCycle parse_int_cycle(std::string_view text) {
  return detail::parse_cycle_impl<Int>(text, parse_int);
}

// literal with rational coefficients, e.g. "1:2,3:-1/2"
inline ChernClass parse_chern(std::string_view text) {
  return detail::parse_cycle_impl<Rat>(text, parse_rat);
}

template <typename Coef>
std::string print_cycle(const Cycle<Coef>& z) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [id, c] : z.coeffs()) {
    if (!first) os << ",";
    first = false;
    os << id << ":" << to_string(c);
  }
  return os.str();
}

}  // namespace plumb
