#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "plumb/cycle.hpp"
#include "plumb/graph.hpp"
#include "plumb/lattice.hpp"

namespace plumb {

namespace detail {

// positions throughout; parent = -1 at the root
inline std::string encode_subtree(const PlumbingGraph& g, const std::vector<std::string>& dec,
                                  int pos, int parent_pos) {
  std::vector<std::string> kids;
  for (int w : g.neighbors(g.id_at(pos))) {
    int wp = g.index(w);
    if (wp != parent_pos) kids.push_back(encode_subtree(g, dec, wp, pos));
  }
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  out += dec[static_cast<std::size_t>(pos)];
  for (const auto& k : kids) out += k;
  out += ")";
  return out;
}

// one or two adjacent centroid positions of the tree
inline std::vector<int> centroids(const PlumbingGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> subtree(static_cast<std::size_t>(n), 0);
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> order;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int w : g.neighbors(g.id_at(v))) {
      int wp = g.index(w);
      if (!seen[static_cast<std::size_t>(wp)]) {
        seen[static_cast<std::size_t>(wp)] = 1;
        parent[static_cast<std::size_t>(wp)] = v;
        stack.push_back(wp);
      }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    subtree[static_cast<std::size_t>(*it)] += 1;
    int p = parent[static_cast<std::size_t>(*it)];
    if (p >= 0) subtree[static_cast<std::size_t>(p)] += subtree[static_cast<std::size_t>(*it)];
  }
  std::vector<int> best;
  int best_score = n + 1;
  for (int v = 0; v < n; ++v) {
    int score = n - subtree[static_cast<std::size_t>(v)];
    for (int w : g.neighbors(g.id_at(v))) {
      int wp = g.index(w);
      if (parent[static_cast<std::size_t>(wp)] == v)
        score = std::max(score, subtree[static_cast<std::size_t>(wp)]);
    }
    if (score < best_score) {
      best_score = score;
      best = {v};
    } else if (score == best_score) {
      best.push_back(v);
    }
  }
  std::sort(best.begin(), best.end());
  return best;
}

}  // namespace detail

// Isomorphism-invariant key for a decorated (graph, cycle, class) triple:
// identical keys exactly when some relabeling matches weights, edges and both
// coefficient vectors. Used as the memo key for all cached computations.
inline std::string canonical_key(const PlumbingGraph& g, const IntCycle& z,
                                 const ChernClass& zp) {
  detail::check_indices(g, z);
  detail::check_indices(g, zp);
  std::vector<std::string> dec(static_cast<std::size_t>(g.vertex_count()));
  for (int id : g.ids())
    dec[static_cast<std::size_t>(g.index(id))] =
        std::to_string(g.weight(id)) + "|" + to_string(z.get(id)) + "|" + to_string(zp.get(id));
  auto cs = detail::centroids(g);
  if (cs.size() == 1) return "1" + detail::encode_subtree(g, dec, cs[0], -1);
  // two centroids are adjacent; orient the split both ways and keep the least
  std::string a = detail::encode_subtree(g, dec, cs[0], cs[1]) +
                  detail::encode_subtree(g, dec, cs[1], cs[0]);
  std::string b = detail::encode_subtree(g, dec, cs[1], cs[0]) +
                  detail::encode_subtree(g, dec, cs[0], cs[1]);
  return "2" + std::min(a, b);
}

inline std::string canonical_key(const PlumbingGraph& g, const IntCycle& z) {
  return canonical_key(g, z, ChernClass{});
}

}  // namespace plumb
