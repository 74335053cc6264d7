#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "plumb/canonical.hpp"
#include "plumb/cycle.hpp"
#include "plumb/error.hpp"
#include "plumb/graph.hpp"
#include "plumb/latopt.hpp"
#include "plumb/lattice.hpp"

namespace plumb {

// Memo for the cohomology of structure sheaves, keyed by the canonical
// (graph, cycle) encoding so isomorphic instances share entries.
struct Cache {
  std::map<std::string, Int> h1;
};

namespace detail {

template <typename Coef>
void require_effective(const Cycle<Coef>& z, const char* who) {
  if (!z.is_effective())
    throw IndexMismatch(std::string(who) + " needs an effective cycle", print_cycle(z));
}

}  // namespace detail

// h1 of the structure sheaf of Z: chi(E_{|Z|}) minus the minimum of chi over
// the box E_{|Z|} <= l <= Z.
inline Int h1_struct(const PlumbingGraph& g, const IntCycle& z, Cache& cache,
                     const LatOptions& opts = {}) {
  detail::check_indices(g, z);
  detail::require_effective(z, "h1_struct");
  if (z.is_zero()) return 0;
  const std::string key = canonical_key(g, z);
  if (auto it = cache.h1.find(key); it != cache.h1.end()) return it->second;
  auto supp = z.support();
  BoxSpec box;
  box.lower = IntCycle::ones(supp);
  box.upper = z;
  auto min = min_box(g, box, opts);
  Int out = chi_int(g, box.lower) - min.value;
  cache.h1.emplace(key, out);
  return out;
}

// h1 of a generically chosen line bundle with Chern class Zp restricted to Z:
// minus the minimum of chi + (Zp, .) over 0 <= l <= Z.
inline Int h1_gen_bundle(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp,
                         const LatOptions& opts = {}) {
  detail::check_indices(g, z);
  detail::check_indices(g, zp);
  detail::require_effective(z, "h1_gen_bundle");
  BoxSpec box;
  box.upper = z;
  box.shift = zp;
  return -min_box(g, box, opts).value;
}

// chi(l) >= 1 for every effective l > 0; the search space is covered by the
// cones { l >= E_v }, each handled by one unbounded minimization.
inline bool artin_rational(const PlumbingGraph& g, const LatOptions& opts = {}) {
  for (int id : g.ids()) {
    auto res = min_unbounded(g, IntCycle::unit(id), ChernClass{}, opts);
    if (res.value < 1) return false;
  }
  return true;
}

// geometric genus of the generic structure: chi(E) - min over l >= E of chi
inline Int pg(const PlumbingGraph& g, const LatOptions& opts = {}) {
  std::set<int> all(g.ids().begin(), g.ids().end());
  IntCycle reduced = IntCycle::ones(all);
  auto res = min_unbounded(g, reduced, ChernClass{}, opts);
  return chi_int(g, reduced) - res.value;
}

struct ImageDim {
  Int value;
  IntCycle argmin;  // minimizing subcycle Z1
};

namespace detail {

// min over 0 <= Z1 <= Z (optionally with one coordinate pinned to 0) of
// (Zp, Z1) + h1(Z) - h1(Z1); lex-least argmin
inline ImageDim image_dim_impl(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp,
                               std::optional<int> pinned, Cache& cache, const LatOptions& opts) {
  check_indices(g, z);
  check_indices(g, zp);
  require_effective(z, "dim_im");
  auto supp = z.support();
  if (!neg_lipman_member(g, supp, zp)) {
    std::string bad;
    for (int v : supp)
      if (pairing_with_vertex(g, zp, v) < 0) {
        bad = std::to_string(v);
        break;
      }
    throw EmptyImage("class pairs negatively on the support, no section realizes it",
                     "vertex=" + bad);
  }
  std::map<int, Int> m;  // (Zp, E_v), integral on the support
  for (int v : supp) {
    Rat p = pairing_with_vertex(g, zp, v);
    if (!is_integer(p))
      throw NotInLprime("pairing with vertex " + std::to_string(v) + " is " + to_string(p),
                        "vertex=" + std::to_string(v));
    m[v] = to_int(p);
  }
  const Int h1z = h1_struct(g, z, cache, opts);

  std::vector<int> coords(supp.begin(), supp.end());
  if (pinned) coords.erase(std::remove(coords.begin(), coords.end(), *pinned), coords.end());
  Int points = 1;
  for (int v : coords) points *= z.get(v) + 1;
  if (points > opts.budget)
    throw BoxTooLarge("image search over " + points.str() + " points, budget " +
                          std::to_string(opts.budget),
                      "points=" + points.str());

  ImageDim best;
  bool first = true;
  IntCycle z1;
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == coords.size()) {
      Int term = h1z - h1_struct(g, z1, cache, opts);
      for (const auto& [v, c] : z1.coeffs()) term += c * m.at(v);
      if (first || term < best.value) {
        best.value = term;
        best.argmin = z1;
        first = false;
      }
      return;
    }
    int v = coords[i];
    const Int top = z.get(v);
    for (Int c = 0; c <= top; ++c) {
      z1.set(v, c);
      walk(i + 1);
    }
    z1.set(v, Int(0));
  };
  walk(0);
  return best;
}

}  // namespace detail

// dimension of the image of the Abel map for the restricted class
inline ImageDim dim_im_witness(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp,
                               Cache& cache, const LatOptions& opts = {}) {
  return detail::image_dim_impl(g, z, zp, std::nullopt, cache, opts);
}

inline Int dim_im(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp, Cache& cache,
                  const LatOptions& opts = {}) {
  return dim_im_witness(g, z, zp, cache, opts).value;
}

// stabilized image dimension at v: the same minimum with (Z1)_v frozen to 0,
// the limit of dim_im along Zp - N E*_v for large N
inline ImageDim vdim_witness(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp,
                             int v, Cache& cache, const LatOptions& opts = {}) {
  if (z.get(v) == 0)
    throw UnknownVertex("vertex " + std::to_string(v) + " is not in the support",
                        std::to_string(v));
  return detail::image_dim_impl(g, z, zp, v, cache, opts);
}

inline Int vdim(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp, int v,
                Cache& cache, const LatOptions& opts = {}) {
  return vdim_witness(g, z, zp, v, cache, opts).value;
}

// vertices whose full coefficient can be removed without changing h1
inline std::vector<int> droppable_vertices(const PlumbingGraph& g, const IntCycle& z, Cache& cache,
                                           const LatOptions& opts = {}) {
  std::vector<int> out;
  if (z.is_zero()) return out;
  const Int r = h1_struct(g, z, cache, opts);
  for (int v : z.support())
    if (h1_struct(g, z.without(v), cache, opts) == r) out.push_back(v);
  return out;
}

namespace detail {

inline void minimal_support_scan(const PlumbingGraph& g, const IntCycle& z, Cache& cache,
                                 const LatOptions& opts, int subset_bound, bool all_ties,
                                 std::vector<std::vector<int>>& out) {
  check_indices(g, z);
  require_effective(z, "minimal_support");
  auto supp_set = z.support();
  std::vector<int> supp(supp_set.begin(), supp_set.end());
  if (static_cast<int>(supp.size()) > subset_bound)
    throw SupportTooLarge("support of " + std::to_string(supp.size()) +
                              " vertices exceeds bound " + std::to_string(subset_bound),
                          "support=" + std::to_string(supp.size()));
  const Int r = h1_struct(g, z, cache, opts);
  const std::size_t n = supp.size();
  // by cardinality, then lexicographic on the sorted id tuple
  for (std::size_t card = 0; card <= n; ++card) {
    std::vector<std::size_t> pick(card);
    for (std::size_t i = 0; i < card; ++i) pick[i] = i;
    while (true) {
      std::set<int> keep;
      for (auto i : pick) keep.insert(supp[i]);
      if (h1_struct(g, z.restricted(keep), cache, opts) == r) {
        out.emplace_back(keep.begin(), keep.end());
        if (!all_ties) return;
      }
      // next combination
      if (card == 0) break;
      std::size_t j = card;
      while (j > 0 && pick[j - 1] == n - card + (j - 1)) --j;
      if (j == 0) break;
      ++pick[j - 1];
      for (std::size_t i = j; i < card; ++i) pick[i] = pick[i - 1] + 1;
    }
    if (!out.empty()) return;
  }
}

}  // namespace detail

// smallest vertex subset of |Z| carrying the full h1 of Z; ties resolve to
// the lexicographically least id tuple
inline std::vector<int> minimal_support(const PlumbingGraph& g, const IntCycle& z, Cache& cache,
                                        const LatOptions& opts = {}, int subset_bound = 16) {
  std::vector<std::vector<int>> found;
  detail::minimal_support_scan(g, z, cache, opts, subset_bound, false, found);
  return found.front();
}

// every cardinality-minimal subset (for cross-checking choice independence)
inline std::vector<std::vector<int>> minimal_supports_all(const PlumbingGraph& g,
                                                          const IntCycle& z, Cache& cache,
                                                          const LatOptions& opts = {},
                                                          int subset_bound = 16) {
  std::vector<std::vector<int>> found;
  detail::minimal_support_scan(g, z, cache, opts, subset_bound, true, found);
  return found;
}

}  // namespace plumb
