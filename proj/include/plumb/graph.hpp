#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plumb/error.hpp"
#include "plumb/numeric.hpp"

namespace plumb {

// Decorated tree describing a resolution: vertices carry self-intersection
// weights, edges are unordered. Construction validates tree shape and
// negative definiteness of the intersection matrix, so every live instance
// is usable by the lattice routines.
class PlumbingGraph {
 public:
  static PlumbingGraph make(std::string name,
                            const std::vector<std::pair<int, long long>>& vertices,
                            const std::vector<std::pair<int, int>>& edges) {
    PlumbingGraph g;
    g.name_ = std::move(name);
    for (const auto& [id, w] : vertices) {
      if (g.index_.count(id))
        throw DuplicateVertex("vertex " + std::to_string(id) + " defined twice",
                              std::to_string(id));
      g.index_.emplace(id, 0);
      g.ids_.push_back(id);
    }
    std::sort(g.ids_.begin(), g.ids_.end());
    for (std::size_t i = 0; i < g.ids_.size(); ++i) g.index_[g.ids_[i]] = static_cast<int>(i);
    g.weights_.resize(g.ids_.size());
    for (const auto& [id, w] : vertices) g.weights_[g.index_.at(id)] = w;
    for (const auto& [a, b] : edges) {
      if (!g.index_.count(a))
        throw UnknownVertex("edge endpoint " + std::to_string(a) + " not a vertex",
                            std::to_string(a));
      if (!g.index_.count(b))
        throw UnknownVertex("edge endpoint " + std::to_string(b) + " not a vertex",
                            std::to_string(b));
      if (a == b) throw NotATree("self-loop at vertex " + std::to_string(a), std::to_string(a));
      auto e = std::minmax(a, b);
      if (!g.edge_set_.insert(e).second)
        throw NotATree("duplicate edge " + std::to_string(e.first) + " " + std::to_string(e.second));
    }
    g.edges_.assign(g.edge_set_.begin(), g.edge_set_.end());
    g.finish_validation();
    return g;
  }

  const std::string& name() const { return name_; }
  int vertex_count() const { return static_cast<int>(ids_.size()); }
  const std::vector<int>& ids() const { return ids_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  bool has_vertex(int id) const { return index_.count(id) != 0; }

  int index(int id) const {
    auto it = index_.find(id);
    if (it == index_.end())
      throw UnknownVertex("vertex " + std::to_string(id) + " not in graph", std::to_string(id));
    return it->second;
  }

  int id_at(int pos) const { return ids_[static_cast<std::size_t>(pos)]; }
  long long weight(int id) const { return weights_[static_cast<std::size_t>(index(id))]; }
  long long weight_at(int pos) const { return weights_[static_cast<std::size_t>(pos)]; }

  bool has_edge(int a, int b) const { return edge_set_.count(std::minmax(a, b)) != 0; }

  // sorted ascending
  const std::vector<int>& neighbors(int id) const {
    return adjacency_[static_cast<std::size_t>(index(id))];
  }

  // intersection pairing of basis elements: weight on the diagonal, 1 per edge
  Int entry(int a, int b) const {
    if (a == b) return Int(weight(a));
    return has_edge(a, b) ? Int(1) : Int(0);
  }

  int fresh_id() const { return ids_.empty() ? 1 : ids_.back() + 1; }

  bool operator==(const PlumbingGraph& o) const {
    return ids_ == o.ids_ && weights_ == o.weights_ && edges_ == o.edges_ && name_ == o.name_;
  }

 private:
  void finish_validation() {
    const std::size_t n = ids_.size();
    if (n == 0) throw NotATree("graph has no vertices");
    adjacency_.assign(n, {});
    for (const auto& [a, b] : edges_) {
      adjacency_[static_cast<std::size_t>(index_.at(a))].push_back(b);
      adjacency_[static_cast<std::size_t>(index_.at(b))].push_back(a);
    }
    for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
    if (edges_.size() != n - 1) throw NotATree("edge count " + std::to_string(edges_.size()) +
                                               " does not match vertex count " + std::to_string(n));
    std::vector<char> seen(n, 0);
    std::vector<int> stack{ids_[0]};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adjacency_[static_cast<std::size_t>(index_.at(v))]) {
        auto& mark = seen[static_cast<std::size_t>(index_.at(w))];
        if (!mark) {
          mark = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    if (reached != n) throw NotATree("graph is disconnected");
    check_negative_definite();
  }

  // Sylvester on the id-sorted intersection matrix via fraction-free
  // elimination: after stage k the pivot holds the (k+1)-th leading minor.
  void check_negative_definite() {
    const int n = vertex_count();
    std::vector<std::vector<Int>> m(static_cast<std::size_t>(n),
                                    std::vector<Int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m[i][j] = entry(ids_[i], ids_[j]);
    Int prev = 1;
    for (int k = 0; k < n; ++k) {
      const Int minor = m[k][k];
      const bool ok = (k % 2 == 0) ? minor < 0 : minor > 0;
      if (!ok)
        throw NotNegativeDefinite(
            "leading minor " + std::to_string(k + 1) + " is " + minor.str(),
            "order=" + std::to_string(k + 1) + " minor=" + minor.str());
      for (int i = k + 1; i < n; ++i)
        for (int j = k + 1; j < n; ++j)
          m[i][j] = (m[i][j] * minor - m[i][k] * m[k][j]) / prev;
      prev = minor;
    }
  }

  std::string name_;
  std::vector<int> ids_;
  std::vector<long long> weights_;
  std::vector<std::pair<int, int>> edges_;
  std::set<std::pair<int, int>> edge_set_;
  std::map<int, int> index_;
  std::vector<std::vector<int>> adjacency_;
};

// Enough to undo one blowup and to transport cycles across it.
struct BlowdownData {
  enum class Kind { free_point, edge_point };
  Kind kind;
  int at;          // carrier vertex (free) or first endpoint (edge)
  int at2;         // second endpoint (edge only, otherwise equals at)
  int new_vertex;  // the added (-1)-vertex
};

namespace detail {

inline std::vector<std::pair<int, long long>> vertex_list(const PlumbingGraph& g) {
  std::vector<std::pair<int, long long>> out;
  out.reserve(static_cast<std::size_t>(g.vertex_count()));
  for (int id : g.ids()) out.emplace_back(id, g.weight(id));
  return out;
}

}  // namespace detail

// Blowup at a generic point of E_v: v loses 1 from its weight and gains a
// (-1)-neighbor.
inline std::pair<PlumbingGraph, BlowdownData> blowup_free(const PlumbingGraph& g, int v) {
  if (!g.has_vertex(v))
    throw UnknownVertex("blowup at missing vertex " + std::to_string(v), std::to_string(v));
  auto vertices = detail::vertex_list(g);
  for (auto& [id, w] : vertices)
    if (id == v) --w;
  const int nv = g.fresh_id();
  vertices.emplace_back(nv, -1);
  auto edges = g.edges();
  edges.emplace_back(v, nv);
  PlumbingGraph child = PlumbingGraph::make(g.name(), vertices, edges);
  return {std::move(child), BlowdownData{BlowdownData::Kind::free_point, v, v, nv}};
}

// Blowup at the intersection point E_v cap E_w: the edge is subdivided by a
// (-1)-vertex and both endpoints lose 1 from their weights.
inline std::pair<PlumbingGraph, BlowdownData> blowup_edge(const PlumbingGraph& g, int v, int w) {
  if (!g.has_vertex(v))
    throw UnknownVertex("blowup at missing vertex " + std::to_string(v), std::to_string(v));
  if (!g.has_vertex(w))
    throw UnknownVertex("blowup at missing vertex " + std::to_string(w), std::to_string(w));
  if (!g.has_edge(v, w))
    throw NotAnEdge("no edge " + std::to_string(v) + " " + std::to_string(w),
                    std::to_string(v) + "-" + std::to_string(w));
  auto vertices = detail::vertex_list(g);
  for (auto& [id, weight] : vertices)
    if (id == v || id == w) --weight;
  const int nv = g.fresh_id();
  vertices.emplace_back(nv, -1);
  std::vector<std::pair<int, int>> edges;
  const std::pair<int, int> removed{std::min(v, w), std::max(v, w)};
  for (const auto& e : g.edges())
    if (e != removed) edges.push_back(e);
  edges.emplace_back(v, nv);
  edges.emplace_back(w, nv);
  PlumbingGraph child = PlumbingGraph::make(g.name(), vertices, edges);
  return {std::move(child), BlowdownData{BlowdownData::Kind::edge_point, std::min(v, w),
                                         std::max(v, w), nv}};
}

// Connected components of the induced subgraph on `s`; components are ordered
// by smallest member, members sorted ascending.
inline std::vector<std::vector<int>> components(const PlumbingGraph& g, const std::set<int>& s) {
  for (int id : s)
    if (!g.has_vertex(id))
      throw UnknownVertex("component query with missing vertex " + std::to_string(id),
                          std::to_string(id));
  std::vector<std::vector<int>> out;
  std::set<int> todo(s);
  while (!todo.empty()) {
    int start = *todo.begin();
    std::vector<int> comp;
    std::vector<int> stack{start};
    todo.erase(start);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int w : g.neighbors(v)) {
        auto it = todo.find(w);
        if (it != todo.end()) {
          todo.erase(it);
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

// BFS hop distance from the vertex set `s` (0 on members) for every vertex.
inline std::map<int, int> distances_from(const PlumbingGraph& g, const std::set<int>& s) {
  std::map<int, int> dist;
  std::vector<int> frontier;
  for (int id : s) {
    g.index(id);
    dist[id] = 0;
    frontier.push_back(id);
  }
  int d = 0;
  while (!frontier.empty()) {
    ++d;
    std::vector<int> next;
    for (int v : frontier)
      for (int w : g.neighbors(v))
        if (!dist.count(w)) {
          dist[w] = d;
          next.push_back(w);
        }
    frontier = std::move(next);
  }
  return dist;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline int parse_vertex_id(const std::string& tok, int line) {
  auto v = parse_int(tok);
  if (!v || *v < std::numeric_limits<int>::min() || *v > std::numeric_limits<int>::max())
    throw SyntaxError("line " + std::to_string(line) + ": bad vertex id '" + tok + "'",
                      "line=" + std::to_string(line));
  return static_cast<int>(*v);
}

}  // namespace detail

// Line-oriented text form: optional leading "graph <name>", then "vertex <id>
// <self-intersection>" and "edge <id> <id>" in any order; '#' starts a
// comment.
inline PlumbingGraph parse_graph(std::string_view text, std::string fallback_name = "") {
  std::string name = std::move(fallback_name);
  bool saw_graph_line = false;
  bool saw_content = false;
  std::vector<std::pair<int, long long>> vertices;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> edge_lines;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto toks = detail::split_ws(line);
    const std::string& kw = toks[0];
    if (kw == "graph") {
      if (saw_graph_line || saw_content)
        throw SyntaxError("line " + std::to_string(line_no) + ": misplaced graph line",
                          "line=" + std::to_string(line_no));
      if (toks.size() != 2)
        throw SyntaxError("line " + std::to_string(line_no) + ": graph takes exactly one name",
                          "line=" + std::to_string(line_no));
      name = toks[1];
      saw_graph_line = true;
      continue;
    }
    saw_content = true;
    if (kw == "vertex") {
      if (toks.size() != 3)
        throw SyntaxError("line " + std::to_string(line_no) + ": vertex takes id and weight",
                          "line=" + std::to_string(line_no));
      int id = detail::parse_vertex_id(toks[1], line_no);
      auto w = parse_int(toks[2]);
      if (!w || *w < std::numeric_limits<long long>::min() ||
          *w > std::numeric_limits<long long>::max())
        throw SyntaxError("line " + std::to_string(line_no) + ": bad weight '" + toks[2] + "'",
                          "line=" + std::to_string(line_no));
      for (const auto& [vid, vw] : vertices)
        if (vid == id)
          throw DuplicateVertex("line " + std::to_string(line_no) + ": vertex " +
                                    std::to_string(id) + " defined twice",
                                std::to_string(id));
      vertices.emplace_back(id, static_cast<long long>(*w));
    } else if (kw == "edge") {
      if (toks.size() != 3)
        throw SyntaxError("line " + std::to_string(line_no) + ": edge takes two vertex ids",
                          "line=" + std::to_string(line_no));
      int a = detail::parse_vertex_id(toks[1], line_no);
      int b = detail::parse_vertex_id(toks[2], line_no);
      edges.emplace_back(a, b);
      edge_lines.push_back(line_no);
    } else {
      throw SyntaxError("line " + std::to_string(line_no) + ": unknown keyword '" + kw + "'",
                        "line=" + std::to_string(line_no));
    }
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& [a, b] = edges[i];
    bool have_a = false, have_b = false;
    for (const auto& [vid, vw] : vertices) {
      have_a |= vid == a;
      have_b |= vid == b;
    }
    if (!have_a || !have_b)
      throw SyntaxError("line " + std::to_string(edge_lines[i]) + ": edge references missing vertex",
                        "line=" + std::to_string(edge_lines[i]));
  }
  return PlumbingGraph::make(std::move(name), vertices, edges);
}

// Canonical text round-trips through parse_graph.
inline std::string print_graph(const PlumbingGraph& g) {
  std::ostringstream os;
  if (!g.name().empty()) os << "graph " << g.name() << "\n";
  for (int id : g.ids()) os << "vertex " << id << " " << g.weight(id) << "\n";
  for (const auto& [a, b] : g.edges()) os << "edge " << a << " " << b << "\n";
  return os.str();
}

}  // namespace plumb
