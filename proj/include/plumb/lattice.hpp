#pragma once

#include <set>
#include <string>
#include <vector>

#include "plumb/cycle.hpp"
#include "plumb/error.hpp"
#include "plumb/graph.hpp"
#include "plumb/numeric.hpp"

namespace plumb {

namespace detail {

template <typename Coef>
void check_indices(const PlumbingGraph& g, const Cycle<Coef>& z) {
  for (const auto& [id, c] : z.coeffs())
    if (!g.has_vertex(id))
      throw IndexMismatch("cycle mentions vertex " + std::to_string(id) + " not in graph",
                          std::to_string(id));
}

template <typename Coef>
std::vector<Rat> to_dense(const PlumbingGraph& g, const Cycle<Coef>& z) {
  check_indices(g, z);
  std::vector<Rat> out(static_cast<std::size_t>(g.vertex_count()), Rat(0));
  for (const auto& [id, c] : z.coeffs()) out[static_cast<std::size_t>(g.index(id))] = Rat(c);
  return out;
}

// Gaussian elimination over the rationals; the intersection matrix is
// nonsingular for every validated graph.
inline std::vector<Rat> solve_intersection(const PlumbingGraph& g, std::vector<Rat> rhs) {
  const int n = g.vertex_count();
  std::vector<std::vector<Rat>> m(static_cast<std::size_t>(n),
                                  std::vector<Rat>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = Rat(g.entry(g.id_at(i), g.id_at(j)));
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row)
      if (m[row][col] != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0) throw std::logic_error("singular intersection matrix");
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    const Rat inv = m[col][col];
    for (int row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const Rat f = m[row][col] / inv;
      for (int j = col; j < n; ++j) m[row][j] -= f * m[col][j];
      rhs[row] -= f * rhs[col];
    }
  }
  std::vector<Rat> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

}  // namespace detail

// intersection pairing extended bilinearly to rational cycles
template <typename A, typename B>
Rat pairing(const PlumbingGraph& g, const Cycle<A>& x, const Cycle<B>& y) {
  detail::check_indices(g, x);
  detail::check_indices(g, y);
  Rat acc(0);
  for (const auto& [id, c] : x.coeffs()) {
    Rat row(0);
    row += Rat(y.get(id)) * Rat(g.weight(id));
    for (int w : g.neighbors(id)) row += Rat(y.get(w));
    acc += Rat(c) * row;
  }
  return acc;
}

// (x, E_v)
template <typename A>
Rat pairing_with_vertex(const PlumbingGraph& g, const Cycle<A>& x, int v) {
  detail::check_indices(g, x);
  Rat acc = Rat(x.get(v)) * Rat(g.weight(v));
  for (int w : g.neighbors(v)) acc += Rat(x.get(w));
  return acc;
}

inline Int pairing_int(const PlumbingGraph& g, const IntCycle& x, const IntCycle& y) {
  return to_int(pairing(g, x, y));
}

// E*_v: the class with (E*_v, E_w) = -1 at w = v and 0 elsewhere
inline ChernClass dual_basis_element(const PlumbingGraph& g, int v) {
  std::vector<Rat> rhs(static_cast<std::size_t>(g.vertex_count()), Rat(0));
  rhs[static_cast<std::size_t>(g.index(v))] = Rat(-1);
  auto x = detail::solve_intersection(g, std::move(rhs));
  ChernClass out;
  for (int i = 0; i < g.vertex_count(); ++i) out.set(g.id_at(i), x[static_cast<std::size_t>(i)]);
  return out;
}

// aligned with g.ids()
inline std::vector<ChernClass> dual_basis(const PlumbingGraph& g) {
  std::vector<ChernClass> out;
  out.reserve(static_cast<std::size_t>(g.vertex_count()));
  for (int id : g.ids()) out.push_back(dual_basis_element(g, id));
  return out;
}

// Z_K, the class with (Z_K, E_v) = e_v + 2 for every v
inline ChernClass canonical_cycle(const PlumbingGraph& g) {
  std::vector<Rat> rhs(static_cast<std::size_t>(g.vertex_count()));
  for (int i = 0; i < g.vertex_count(); ++i)
    rhs[static_cast<std::size_t>(i)] = Rat(g.weight_at(i) + 2);
  auto x = detail::solve_intersection(g, std::move(rhs));
  ChernClass out;
  for (int i = 0; i < g.vertex_count(); ++i) out.set(g.id_at(i), x[static_cast<std::size_t>(i)]);
  return out;
}

// chi(x) = -(x, x - Z_K)/2
template <typename A>
Rat chi(const PlumbingGraph& g, const Cycle<A>& x) {
  detail::check_indices(g, x);
  Rat xx = pairing(g, x, x);
  // (x, Z_K) = sum x_v (e_v + 2), no solve needed
  Rat xk(0);
  for (const auto& [id, c] : x.coeffs()) xk += Rat(c) * Rat(g.weight(id) + 2);
  return -(xx - xk) / 2;
}

inline Int chi_int(const PlumbingGraph& g, const IntCycle& x) { return to_int(chi(g, x)); }

// full dual-lattice membership: every pairing with a basis element is integral
inline bool in_dual_lattice(const PlumbingGraph& g, const ChernClass& zp) {
  detail::check_indices(g, zp);
  for (int id : g.ids())
    if (!is_integer(pairing_with_vertex(g, zp, id))) return false;
  return true;
}

// Euler characteristic of the restricted bundle: chi(Z) + (Zp, Z). Depends on
// Zp only through its pairings on the support of Z, which must be integral.
inline Int chi_bundle(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp) {
  detail::check_indices(g, z);
  detail::check_indices(g, zp);
  Rat acc = chi(g, z);
  for (const auto& [id, c] : z.coeffs()) {
    Rat p = pairing_with_vertex(g, zp, id);
    if (!is_integer(p))
      throw NotInLprime("pairing with vertex " + std::to_string(id) + " is " + to_string(p),
                        "vertex=" + std::to_string(id) + " pairing=" + to_string(p));
    acc += Rat(c) * p;
  }
  return to_int(acc);
}

// membership in -S' restricted to the sublattice on s: all pairings >= 0 there
inline bool neg_lipman_member(const PlumbingGraph& g, const std::set<int>& s,
                              const ChernClass& zp) {
  detail::check_indices(g, zp);
  for (int id : s) {
    g.index(id);
    if (pairing_with_vertex(g, zp, id) < 0) return false;
  }
  return true;
}

// Total transform across one blowup: coefficients are kept and the new vertex
// receives the carrier coefficient sum, so all pairings are preserved.
template <typename Coef>
Cycle<Coef> pullback(const PlumbingGraph& child, const BlowdownData& bd, const Cycle<Coef>& x) {
  Coef extra = bd.kind == BlowdownData::Kind::free_point
                   ? x.get(bd.at)
                   : Coef(x.get(bd.at) + x.get(bd.at2));
  Cycle<Coef> out = x;
  out.set(bd.new_vertex, extra);
  detail::check_indices(child, out);
  return out;
}

}  // namespace plumb
