#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "plumb/cycle.hpp"
#include "plumb/error.hpp"
#include "plumb/graph.hpp"
#include "plumb/lattice.hpp"
#include "plumb/numeric.hpp"

namespace plumb {

enum class MinEngine { exhaustive, descent };

inline std::string to_string(MinEngine e) {
  return e == MinEngine::exhaustive ? "exhaustive" : "descent";
}

struct LatOptions {
  unsigned long long budget = 10'000'000;  // max lattice points / dp cells evaluated
  int jobs = 1;
  MinEngine engine = MinEngine::exhaustive;
  int max_side = 65536;  // growth cap per coordinate for unbounded search
};

// Integer box { l : lower <= l <= upper, l_v = 0 for v in frozen_zero },
// objective f(l) = chi(l) + (shift, l).
struct BoxSpec {
  IntCycle lower;
  IntCycle upper;
  std::set<int> frozen_zero;
  ChernClass shift;
};

struct MinResult {
  Int value;
  IntCycle argmin;
  MinEngine engine = MinEngine::exhaustive;
  unsigned long long enumerated = 0;
};

namespace detail {

// Dense mutable state for walking f over a box one unit step at a time.
// chi(l + E_p) = chi(l) + 1 - (l, E_p) keeps every move O(deg).
struct BoxWalk {
  const PlumbingGraph* g = nullptr;
  std::vector<Int> lo, hi, cur;     // per position
  std::vector<Int> grad;            // (cur, E_p)
  std::vector<Int> wi;              // (shift, E_p), validated integral on active coords
  std::vector<int> active;          // positions with lo < hi, id order
  Int f = 0;

  void init(const PlumbingGraph& graph, const std::vector<Int>& lo_in,
            const std::vector<Int>& hi_in, const ChernClass& shift) {
    g = &graph;
    lo = lo_in;
    hi = hi_in;
    cur = lo;
    const int n = graph.vertex_count();
    grad.assign(static_cast<std::size_t>(n), Int(0));
    wi.assign(static_cast<std::size_t>(n), Int(0));
    active.clear();
    IntCycle start;
    for (int p = 0; p < n; ++p) start.set(graph.id_at(p), lo[static_cast<std::size_t>(p)]);
    for (int p = 0; p < n; ++p) {
      grad[static_cast<std::size_t>(p)] =
          to_int(pairing_with_vertex(graph, start, graph.id_at(p)));
      if (lo[static_cast<std::size_t>(p)] < hi[static_cast<std::size_t>(p)]) {
        active.push_back(p);
        Rat w = pairing_with_vertex(graph, shift, graph.id_at(p));
        if (!is_integer(w))
          throw NotInLprime("objective is not integer along vertex " +
                                std::to_string(graph.id_at(p)) + ": step " + to_string(w),
                            "vertex=" + std::to_string(graph.id_at(p)));
        wi[static_cast<std::size_t>(p)] = to_int(w);
      }
    }
    Rat f0 = chi(graph, start) + pairing(graph, shift, start);
    if (!is_integer(f0))
      throw NotInLprime("objective value " + to_string(f0) + " at box corner is not integral",
                        "f=" + to_string(f0));
    f = to_int(f0);
  }

  void inc(int p) {
    auto q = static_cast<std::size_t>(p);
    f += 1 - grad[q] + wi[q];
    cur[q] += 1;
    grad[q] += g->weight_at(p);
    for (int w : g->neighbors(g->id_at(p))) grad[static_cast<std::size_t>(g->index(w))] += 1;
  }

  void dec(int p) {
    auto q = static_cast<std::size_t>(p);
    f += -1 + grad[q] - g->weight_at(p) - wi[q];
    cur[q] -= 1;
    grad[q] -= g->weight_at(p);
    for (int w : g->neighbors(g->id_at(p))) grad[static_cast<std::size_t>(g->index(w))] -= 1;
  }

  IntCycle point() const {
    IntCycle out;
    for (int p = 0; p < g->vertex_count(); ++p)
      out.set(g->id_at(p), cur[static_cast<std::size_t>(p)]);
    return out;
  }
};

inline bool lex_less(const std::vector<Int>& a, const std::vector<Int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

struct ScanResult {
  Int value;
  std::vector<Int> argmin;
  unsigned long long enumerated = 0;
  bool any = false;
};

// Lex-order sweep (earliest minimum kept, hence lex-least argmin).
inline ScanResult scan_box(const PlumbingGraph& g, std::vector<Int> lo, std::vector<Int> hi,
                           const ChernClass& shift) {
  BoxWalk walk;
  walk.init(g, lo, hi, shift);
  ScanResult best;
  best.value = walk.f;
  best.argmin = walk.cur;
  best.any = true;
  best.enumerated = 1;
  if (walk.active.empty()) return best;
  while (true) {
    int j = static_cast<int>(walk.active.size()) - 1;
    while (j >= 0) {
      int p = walk.active[static_cast<std::size_t>(j)];
      auto q = static_cast<std::size_t>(p);
      if (walk.cur[q] < walk.hi[q]) {
        walk.inc(p);
        break;
      }
      while (walk.cur[q] > walk.lo[q]) walk.dec(p);
      --j;
    }
    if (j < 0) break;
    ++best.enumerated;
    if (walk.f < best.value) {
      best.value = walk.f;
      best.argmin = walk.cur;
    }
  }
  return best;
}

inline Int box_point_count(const std::vector<Int>& lo, const std::vector<Int>& hi) {
  Int total = 1;
  for (std::size_t i = 0; i < lo.size(); ++i) total *= hi[i] - lo[i] + 1;
  return total;
}

// Exact minimum of the doubled objective 2f = 2(chi + (shift, .)) over an
// integer box. Writing
//   2f(l) = sum_v (-e_v l_v^2 + (e_v + 2 + 2 w_v) l_v) - 2 sum_{uv edge} l_u l_v
// with w_v = (shift, E_v), every cross term sits on a tree edge, so a DP over
// the tree minimizes exactly in sum-of-range-products work instead of
// product-of-ranges points.
struct TreeBoxDp {
  const PlumbingGraph* g = nullptr;
  std::vector<Int> a, b;                   // per position: a_p t^2 + b_p t
  std::vector<std::vector<int>> children;  // forest, one root per component
  std::vector<int> order;                  // preorder; reverse = children first
  std::vector<int> roots;
  unsigned long long work = 0;

  void init(const PlumbingGraph& graph, const ChernClass& shift) {
    g = &graph;
    const int n = graph.vertex_count();
    a.assign(static_cast<std::size_t>(n), Int(0));
    b.assign(static_cast<std::size_t>(n), Int(0));
    for (int p = 0; p < n; ++p) {
      auto q = static_cast<std::size_t>(p);
      Rat w = pairing_with_vertex(graph, shift, graph.id_at(p));
      if (!is_integer(w))
        throw NotInLprime("objective is not integer along vertex " +
                              std::to_string(graph.id_at(p)) + ": step " + to_string(w),
                          "vertex=" + std::to_string(graph.id_at(p)));
      a[q] = -Int(graph.weight_at(p));
      b[q] = Int(graph.weight_at(p)) + 2 + 2 * to_int(w);
    }
    children.assign(static_cast<std::size_t>(n), {});
    order.clear();
    roots.clear();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int r = 0; r < n; ++r) {
      if (seen[static_cast<std::size_t>(r)]) continue;
      seen[static_cast<std::size_t>(r)] = 1;
      roots.push_back(r);
      std::vector<int> stack{r};
      while (!stack.empty()) {
        int p = stack.back();
        stack.pop_back();
        order.push_back(p);
        auto ids = graph.neighbors(graph.id_at(p));
        std::sort(ids.begin(), ids.end());
        for (int id : ids) {
          int c = graph.index(id);
          auto qc = static_cast<std::size_t>(c);
          if (!seen[qc]) {
            seen[qc] = 1;
            children[static_cast<std::size_t>(p)].push_back(c);
            stack.push_back(c);
          }
        }
      }
    }
  }

  Int min2(const std::vector<Int>& lo, const std::vector<Int>& hi) {
    const auto n = lo.size();
    std::vector<std::vector<Int>> table(n);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      auto p = static_cast<std::size_t>(*it);
      auto size = static_cast<std::size_t>((hi[p] - lo[p] + 1).convert_to<long long>());
      auto& tab = table[p];
      tab.resize(size);
      for (std::size_t i = 0; i < size; ++i) {
        Int t = lo[p] + Int(i);
        tab[i] = (a[p] * t + b[p]) * t;
      }
      work += size;
      for (int c : children[p]) {
        auto qc = static_cast<std::size_t>(c);
        const auto& sub = table[qc];
        // leftmost argmin of sub[j] - 2 t s_j is nondecreasing in t, so a
        // divide-and-conquer sweep needs O((rows + cols) log rows) probes
        std::vector<Int> fold(size);
        std::function<void(long long, long long, long long, long long)> solve =
            [&](long long il, long long ih, long long jl, long long jh) {
              if (il > ih) return;
              const long long im = il + (ih - il) / 2;
              const Int t2 = 2 * (lo[p] + Int(im));
              long long jm = jl;
              Int best = sub[static_cast<std::size_t>(jl)] - t2 * (lo[qc] + Int(jl));
              for (long long j = jl + 1; j <= jh; ++j) {
                Int cand = sub[static_cast<std::size_t>(j)] - t2 * (lo[qc] + Int(j));
                if (cand < best) {
                  best = cand;
                  jm = j;
                }
              }
              work += static_cast<unsigned long long>(jh - jl + 1);
              fold[static_cast<std::size_t>(im)] = std::move(best);
              solve(il, im - 1, jl, jm);
              solve(im + 1, ih, jm, jh);
            };
        solve(0, static_cast<long long>(size) - 1, 0, static_cast<long long>(sub.size()) - 1);
        for (std::size_t i = 0; i < size; ++i) tab[i] += fold[i];
        table[qc].clear();
      }
    }
    // components are independent, so the box minimum is the sum over roots
    Int out(0);
    for (int r : roots) {
      const auto& root = table[static_cast<std::size_t>(r)];
      Int best = root[0];
      for (const Int& v : root)
        if (v < best) best = v;
      out += best;
    }
    return out;
  }
};

// lex-least argmin over [plo, phi] attaining the minimum m2, pinning
// coordinates in id order: the smallest cap that still attains m2 is the
// coordinate of the least minimizer, found by binary search since
// attainment grows with the cap
template <typename F>
std::vector<Int> dp_lex_argmin(std::vector<Int> plo, std::vector<Int> phi, const Int& m2,
                               F&& box_min2) {
  for (std::size_t q = 0; q < plo.size(); ++q) {
    Int low = plo[q], high = phi[q];
    while (low < high) {
      const Int mid = low + (high - low) / 2;
      phi[q] = mid;
      if (box_min2(plo, phi) == m2)
        high = mid;
      else
        low = mid + 1;
    }
    plo[q] = low;
    phi[q] = low;
  }
  return plo;
}

}  // namespace detail

// Exact minimum of chi + (shift, .) over the box. The exhaustive engine
// enumerates every point; descent walks steepest unit moves and verifies
// the stall against the exact tree minimum, jumping to the lex-least
// global argmin when the walk stopped short (unit-step local minima need
// not be global once some |e_v| drops below the vertex degree). Ties in
// value resolve to the lexicographically least argmin (ids ascending).
inline MinResult min_box(const PlumbingGraph& g, const BoxSpec& box, const LatOptions& opts = {}) {
  detail::check_indices(g, box.lower);
  detail::check_indices(g, box.upper);
  detail::check_indices(g, box.shift);
  const int n = g.vertex_count();
  std::vector<Int> lo(static_cast<std::size_t>(n), Int(0)), hi(static_cast<std::size_t>(n), Int(0));
  for (int p = 0; p < n; ++p) {
    int id = g.id_at(p);
    lo[static_cast<std::size_t>(p)] = box.lower.get(id);
    hi[static_cast<std::size_t>(p)] = box.upper.get(id);
  }
  for (int id : box.frozen_zero) {
    int p = g.index(id);
    if (lo[static_cast<std::size_t>(p)] > 0 || hi[static_cast<std::size_t>(p)] < 0)
      throw IndexMismatch("frozen vertex " + std::to_string(id) + " cannot reach 0",
                          std::to_string(id));
    lo[static_cast<std::size_t>(p)] = 0;
    hi[static_cast<std::size_t>(p)] = 0;
  }
  for (int p = 0; p < n; ++p)
    if (lo[static_cast<std::size_t>(p)] > hi[static_cast<std::size_t>(p)])
      throw IndexMismatch("box lower exceeds upper at vertex " + std::to_string(g.id_at(p)),
                          std::to_string(g.id_at(p)));

  const Int points = detail::box_point_count(lo, hi);

  if (opts.engine == MinEngine::exhaustive) {
    if (points > opts.budget)
      throw BoxTooLarge("box holds " + points.str() + " points, budget " +
                            std::to_string(opts.budget),
                        "points=" + points.str());
    // split the first coordinate with room into contiguous slabs
    int split = -1;
    for (int p = 0; p < n; ++p)
      if (lo[static_cast<std::size_t>(p)] < hi[static_cast<std::size_t>(p)]) {
        split = p;
        break;
      }
    const int jobs = std::max(1, opts.jobs);
    std::vector<detail::ScanResult> parts;
    if (split < 0 || jobs == 1) {
      parts.push_back(detail::scan_box(g, lo, hi, box.shift));
    } else {
      // surface NotInLprime deterministically before any thread starts
      {
        detail::BoxWalk probe;
        probe.init(g, lo, hi, box.shift);
      }
      const Int side = hi[static_cast<std::size_t>(split)] - lo[static_cast<std::size_t>(split)] + 1;
      const int chunks = side < jobs ? static_cast<int>(side) : jobs;
      parts.resize(static_cast<std::size_t>(chunks));
      std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chunks));
      std::vector<std::thread> pool;
      for (int c = 0; c < chunks; ++c) {
        pool.emplace_back([&, c]() {
          try {
            std::vector<Int> clo = lo, cup = hi;
            const Int base = lo[static_cast<std::size_t>(split)];
            clo[static_cast<std::size_t>(split)] = base + (side * c) / chunks;
            cup[static_cast<std::size_t>(split)] = base + (side * (c + 1)) / chunks - 1;
            parts[static_cast<std::size_t>(c)] = detail::scan_box(g, clo, cup, box.shift);
          } catch (...) {
            errors[static_cast<std::size_t>(c)] = std::current_exception();
          }
        });
      }
      for (auto& t : pool) t.join();
      for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
    MinResult out;
    out.engine = MinEngine::exhaustive;
    bool first = true;
    for (const auto& part : parts) {
      out.enumerated += part.enumerated;
      if (first || part.value < out.value) {
        out.value = part.value;
        out.argmin = [&] {
          IntCycle z;
          for (int p = 0; p < n; ++p) z.set(g.id_at(p), part.argmin[static_cast<std::size_t>(p)]);
          return z;
        }();
        first = false;
      }
    }
    return out;
  }

  // descent engine
  detail::BoxWalk walk;
  walk.init(g, lo, hi, box.shift);
  MinResult out;
  out.engine = MinEngine::descent;
  out.enumerated = 1;
  auto charge = [&](unsigned long long k) {
    out.enumerated += k;
    if (out.enumerated > opts.budget)
      throw BoxTooLarge("descent exceeded budget " + std::to_string(opts.budget),
                        "enumerated=" + std::to_string(out.enumerated));
  };
  // steepest unit moves until no single step improves
  while (true) {
    Int best_delta = 0;
    int best_p = -1, best_dir = 0;
    for (int p : walk.active) {
      auto q = static_cast<std::size_t>(p);
      if (walk.cur[q] > walk.lo[q]) {
        charge(1);
        Int d = -1 + walk.grad[q] - g.weight_at(p) - walk.wi[q];
        if (best_p < 0 ? d < 0 : d < best_delta) {
          best_delta = d;
          best_p = p;
          best_dir = -1;
        }
      }
      if (walk.cur[q] < walk.hi[q]) {
        charge(1);
        Int d = 1 - walk.grad[q] + walk.wi[q];
        if (best_p < 0 ? d < 0 : d < best_delta) {
          best_delta = d;
          best_p = p;
          best_dir = +1;
        }
      }
    }
    if (best_p < 0 || best_delta >= 0) break;
    if (best_dir > 0)
      walk.inc(best_p);
    else
      walk.dec(best_p);
  }
  // exact verification of the stall point
  detail::TreeBoxDp dp;
  try {
    dp.init(g, box.shift);
  } catch (const NotInLprime&) {
    // a pinned coordinate may pair fractionally while the objective stays
    // integral over the box; verify by enumeration in that case
    LatOptions fallback = opts;
    fallback.engine = MinEngine::exhaustive;
    MinResult sweep = min_box(g, box, fallback);
    sweep.engine = MinEngine::descent;
    return sweep;
  }
  auto box_min2 = [&](const std::vector<Int>& blo, const std::vector<Int>& bhi) {
    const unsigned long long before = dp.work;
    Int m2 = dp.min2(blo, bhi);
    charge(dp.work - before);
    return m2;
  };
  const Int m2 = box_min2(lo, hi);
  if (2 * walk.f == m2) {
    out.value = walk.f;
    out.argmin = walk.point();
    return out;
  }
  auto arg = detail::dp_lex_argmin(lo, hi, m2, box_min2);
  out.value = m2 / 2;
  IntCycle z;
  for (int p = 0; p < n; ++p) z.set(g.id_at(p), arg[static_cast<std::size_t>(p)]);
  out.argmin = z;
  return out;
}

// Minimum of chi + (shift, .) over { l >= lower }. Completing the square,
// f(l) = |l - c|^2/2 - |c|^2/2 with c = Z_K/2 + shift and |x|^2 = -(x, x)
// positive definite, so every point with 2 f(l) <= m2 lies in the ellipsoid
// |l - c|^2 <= m2 + |c|^2. Its coordinate extents follow from the dual
// basis, |l_v - c_v| <= R * sqrt(-(E*_v, E*_v)), bounding the cone minimum
// inside an explicit finite box, which the tree DP then minimizes exactly. A
// warm-up scan near the corner supplies an incumbent m2 that usually shrinks
// the certified box by orders of magnitude. All arithmetic is rational;
// square roots only enter through integer-floor overestimates of the box
// corners.
inline MinResult min_unbounded(const PlumbingGraph& g, const IntCycle& lower,
                               const ChernClass& shift, const LatOptions& opts = {}) {
  detail::check_indices(g, lower);
  detail::check_indices(g, shift);
  const int n = g.vertex_count();
  const auto un = static_cast<std::size_t>(n);
  std::vector<Int> lo(un);
  for (int p = 0; p < n; ++p) lo[static_cast<std::size_t>(p)] = lower.get(g.id_at(p));

  MinResult out;
  out.engine = MinEngine::exhaustive;
  auto charge = [&](unsigned long long k) {
    out.enumerated += k;
    if (out.enumerated > opts.budget)
      throw BoxTooLarge("unbounded search exceeded budget " + std::to_string(opts.budget),
                        "enumerated=" + std::to_string(out.enumerated));
  };

  detail::TreeBoxDp dp;
  dp.init(g, shift);
  auto box_min2 = [&](const std::vector<Int>& blo, const std::vector<Int>& bhi) {
    const unsigned long long before = dp.work;
    Int m2 = dp.min2(blo, bhi);
    charge(dp.work - before);
    return m2;
  };

  ChernClass center = canonical_cycle(g);
  for (int id : g.ids()) center.set(id, center.get(id) / 2 + shift.get(id));
  const Rat c2 = -pairing(g, center, center);
  std::vector<Rat> diag(un);
  for (int p = 0; p < n; ++p) {
    const auto d = dual_basis_element(g, g.id_at(p));
    diag[static_cast<std::size_t>(p)] = -pairing(g, d, d);
  }
  auto extents = [&](const Int& m2) {
    const Rat r2 = Rat(m2) + c2;
    std::vector<Int> hi(un);
    for (int p = 0; p < n; ++p) {
      auto q = static_cast<std::size_t>(p);
      // sqrt(r2 * d) <= (isqrt(num * den) + 1) / den
      const Rat w = r2 * diag[q];
      const Int root = boost::multiprecision::sqrt(num(w) * den(w)) + 1;
      const Int bound = rat_floor(center.get(g.id_at(p)) + Rat(root, den(w)));
      hi[q] = bound < lo[q] ? lo[q] : bound;
    }
    return hi;
  };

  std::vector<Int> warm_hi(un);
  for (std::size_t q = 0; q < un; ++q) warm_hi[q] = lo[q] + 16;
  Int m2 = box_min2(lo, warm_hi);
  std::vector<Int> hi = extents(m2);
  bool covered = true;
  for (std::size_t q = 0; q < un; ++q)
    if (hi[q] > warm_hi[q]) covered = false;
  if (!covered) {
    for (std::size_t q = 0; q < un; ++q)
      if (hi[q] - lo[q] > opts.max_side)
        throw BoxTooLarge("certificate box side " + Int(hi[q] - lo[q]).str() + " exceeds cap " +
                              std::to_string(opts.max_side),
                          "vertex=" + std::to_string(g.id_at(static_cast<int>(q))));
    m2 = box_min2(lo, hi);
    hi = extents(m2);
  }
  auto arg = detail::dp_lex_argmin(lo, hi, m2, box_min2);
  out.value = m2 / 2;
  IntCycle z;
  for (int p = 0; p < n; ++p) z.set(g.id_at(p), arg[static_cast<std::size_t>(p)]);
  out.argmin = z;
  return out;
}

}  // namespace plumb
