#pragma once

#include <map>
#include <string>
#include <vector>

#include "plumb/error.hpp"
#include "plumb/graph.hpp"

namespace plumb::corpus {

// Bundled graphs, embedded so the binary works without the corpus directory.
// A test keeps these byte-identical to the shipped corpus/*.graph files.
inline const std::map<std::string, std::string>& texts() {
  static const std::map<std::string, std::string> m = {
      {"a1", R"(# single rational curve of self-intersection -2
graph a1
vertex 1 -2
)"},
      {"a2", R"(# two -2 curves meeting once
graph a2
vertex 1 -2
vertex 2 -2
edge 1 2
)"},
      {"a5", R"(# chain of five -2 curves
graph a5
vertex 1 -2
vertex 2 -2
vertex 3 -2
vertex 4 -2
vertex 5 -2
edge 1 2
edge 2 3
edge 3 4
edge 4 5
)"},
      {"d4", R"(# central -2 curve with three -2 leaves
graph d4
vertex 1 -2
vertex 2 -2
vertex 3 -2
vertex 4 -2
edge 1 2
edge 1 3
edge 1 4
)"},
      {"e8", R"(# star-shaped tree of -2 curves with arms of length 1, 2, 4
graph e8
vertex 1 -2
vertex 2 -2
vertex 3 -2
vertex 4 -2
vertex 5 -2
vertex 6 -2
vertex 7 -2
vertex 8 -2
edge 1 2
edge 1 3
edge 3 4
edge 1 5
edge 5 6
edge 6 7
edge 7 8
)"},
      {"g237", R"(# star with central -1 curve and legs -2, -3, -7; smallest non-rational corpus member
graph g237
vertex 1 -1
vertex 2 -2
vertex 3 -3
vertex 4 -7
edge 1 2
edge 1 3
edge 1 4
)"},
      {"g2315", R"(# star with central -1 curve, legs -2, -3 and a chain -8,-2; non-rational, one deeper arm than g237
graph g2315
vertex 1 -1
vertex 2 -2
vertex 3 -3
vertex 4 -8
vertex 5 -2
edge 1 2
edge 1 3
edge 1 4
edge 4 5
)"},
      {"twocomp", R"(# chain whose ends carry the two-component support demo cycle: -Z 1:1,5:1
# the middle vertex separates the support of that cycle into two pieces
graph twocomp
vertex 1 -2
vertex 2 -3
vertex 3 -2
vertex 4 -3
vertex 5 -2
edge 1 2
edge 2 3
edge 3 4
edge 4 5
)"},
  };
  return m;
}

inline std::vector<std::string> names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : texts()) out.push_back(k);
  return out;
}

inline PlumbingGraph load(const std::string& name) {
  auto it = texts().find(name);
  if (it == texts().end())
    throw SyntaxError("no bundled graph named " + name, name);
  return parse_graph(it->second, name);
}

}  // namespace plumb::corpus
