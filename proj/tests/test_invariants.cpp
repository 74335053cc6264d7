#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "plumb/corpus.hpp"
#include "plumb/graph.hpp"
#include "plumb/invariants.hpp"
#include "plumb/lattice.hpp"
#include "plumb/rng.hpp"

using namespace plumb;

namespace {

IntCycle all(const PlumbingGraph& g, long long k) {
  IntCycle z;
  for (int id : g.ids()) z.set(id, k);
  return z;
}

PlumbingGraph star_237_tail() {
  return parse_graph(
      "graph ga\nvertex 1 -1\nvertex 2 -2\nvertex 3 -3\nvertex 4 -7\nvertex 5 -2\n"
      "edge 1 2\nedge 1 3\nedge 1 4\nedge 4 5\n",
      "ga");
}

}  // namespace

TEST_CASE("rational corpus graphs have vanishing h1 everywhere sampled") {
  Cache cache;
  for (const auto& name : {"a2", "d4"}) {
    auto g = corpus::load(name);
    REQUIRE(artin_rational(g));
    REQUIRE(pg(g) == 0);
    std::vector<int> ids = g.ids();
    std::vector<long long> c(ids.size(), 0);
    while (true) {
      IntCycle z;
      for (std::size_t i = 0; i < ids.size(); ++i) z.set(ids[i], c[i]);
      REQUIRE(h1_struct(g, z, cache) == 0);
      std::size_t i = 0;
      while (i < ids.size() && c[i] == 3) c[i++] = 0;
      if (i == ids.size()) break;
      ++c[i];
    }
  }
}

TEST_CASE("structure sheaf h1 on the 237 star") {
  auto g = corpus::load("g237");
  Cache cache;
  REQUIRE(h1_struct(g, all(g, 1), cache) == 0);
  REQUIRE(h1_struct(g, all(g, 2), cache) == 1);
  REQUIRE(h1_struct(g, all(g, 3), cache) == 1);
  REQUIRE(h1_struct(g, IntCycle{}, cache) == 0);
  REQUIRE_FALSE(artin_rational(g));
  REQUIRE(pg(g) == 1);
}

TEST_CASE("structure sheaf h1 on the deeper star") {
  auto g = corpus::load("g2315");
  Cache cache;
  REQUIRE(h1_struct(g, all(g, 1), cache) == 0);
  REQUIRE(h1_struct(g, all(g, 2), cache) == 1);
  REQUIRE_FALSE(artin_rational(g));
  REQUIRE(pg(g) == 1);
}

TEST_CASE("geometric genus goldens off the corpus") {
  auto ga = star_237_tail();
  REQUIRE(pg(ga) == 1);
  auto star = parse_graph(
      "graph star\nvertex 1 -1\nvertex 2 -2\nvertex 3 -3\nvertex 4 -2\nvertex 5 -11\n"
      "edge 1 2\nedge 1 3\nedge 3 4\nedge 1 5\n",
      "star");
  REQUIRE(pg(star) == 2);
  REQUIRE_FALSE(artin_rational(star));
  auto gc = parse_graph(
      "graph gc\nvertex 1 -1\nvertex 2 -2\nvertex 3 -3\nvertex 4 -7\nvertex 5 -43\n"
      "edge 1 2\nedge 1 3\nedge 1 4\nedge 1 5\n",
      "gc");
  REQUIRE(pg(gc) == 232);
  REQUIRE_FALSE(artin_rational(gc));
}

TEST_CASE("h1 splits over support components") {
  auto tc = corpus::load("twocomp");
  Cache cache;
  IntCycle z;
  z.set(1, 2);
  z.set(2, 2);
  z.set(4, 1);
  z.set(5, 1);
  auto comps = components(tc, z.support());
  REQUIRE(comps.size() == 2);
  Int sum = 0;
  for (const auto& comp : comps) {
    std::set<int> cs(comp.begin(), comp.end());
    sum += h1_struct(tc, z.restricted(cs), cache);
  }
  REQUIRE(h1_struct(tc, z, cache) == sum);
}

TEST_CASE("generic bundles on the single vertex") {
  auto a1 = corpus::load("a1");
  IntCycle z2 = all(a1, 2);
  REQUIRE(h1_gen_bundle(a1, z2, to_chern(IntCycle::ones({1}))) == 1);
  REQUIRE(h1_gen_bundle(a1, z2, ChernClass{} - to_chern(IntCycle::ones({1}))) == 0);
  REQUIRE(h1_gen_bundle(a1, z2, ChernClass{}) == 0);
}

TEST_CASE("generic bundle h1 with zero twist is bounded by the structure sheaf") {
  Rng rng(19);
  Cache cache;
  for (const auto& name : corpus::names()) {
    auto g = corpus::load(name);
    for (int rep = 0; rep < 15; ++rep) {
      IntCycle z;
      for (int id : g.ids()) z.set(id, rng.range(0, 3));
      REQUIRE(h1_gen_bundle(g, z, ChernClass{}) <= h1_struct(g, z, cache));
    }
  }
}

TEST_CASE("droppable vertices and minimal supports") {
  Cache cache;
  auto g237 = corpus::load("g237");
  REQUIRE(droppable_vertices(g237, all(g237, 2), cache).empty());
  REQUIRE(minimal_support(g237, all(g237, 2), cache) == std::vector<int>{1, 2, 3, 4});

  auto ga = star_237_tail();
  IntCycle full2 = all(ga, 2);
  REQUIRE(h1_struct(ga, full2, cache) == 1);
  REQUIRE(droppable_vertices(ga, full2, cache) == std::vector<int>{5});
  REQUIRE(minimal_support(ga, full2, cache) == std::vector<int>{1, 2, 3, 4});

  // every minimal support of a rational cycle is empty: h1 is already 0
  auto a2 = corpus::load("a2");
  REQUIRE(minimal_support(a2, all(a2, 2), cache).empty());
  REQUIRE(droppable_vertices(a2, all(a2, 2), cache) ==
          std::vector<int>{1, 2});
}

TEST_CASE("minimal support respects the cardinality cap") {
  Cache cache;
  auto d4 = corpus::load("d4");
  REQUIRE_THROWS_AS(minimal_support(d4, all(d4, 1), cache, LatOptions{}, 2), SupportTooLarge);
}

TEST_CASE("image dimension on the length two chain") {
  Cache cache;
  auto a2 = corpus::load("a2");
  IntCycle z = IntCycle::ones({1, 2});
  ChernClass zp = ChernClass{} - dual_basis_element(a2, 1) - dual_basis_element(a2, 2);
  REQUIRE(dim_im(a2, z, zp, cache) == 0);
  auto wit = dim_im_witness(a2, z, zp, cache);
  REQUIRE(wit.value == 0);
  REQUIRE(vdim(a2, z, zp, 1, cache) == 0);
  REQUIRE(vdim(a2, z, zp, 2, cache) == 0);
  REQUIRE_THROWS_AS(dim_im(a2, z, dual_basis_element(a2, 1), cache), EmptyImage);
}

TEST_CASE("image dimension on the 237 star") {
  Cache cache;
  auto g = corpus::load("g237");
  IntCycle z = all(g, 2);
  ChernClass zp = ChernClass{} - dual_basis_element(g, 1);
  REQUIRE(dim_im(g, z, zp, cache) == 1);
  REQUIRE(vdim(g, z, zp, 1, cache) == 1);
  REQUIRE(vdim(g, z, zp, 4, cache) == 1);
}

TEST_CASE("image dimension is sandwiched between zero and h1") {
  Rng rng(29);
  Cache cache;
  for (const auto& name : {"a5", "d4", "g237", "g2315"}) {
    auto g = corpus::load(name);
    auto duals = dual_basis(g);
    for (int rep = 0; rep < 10; ++rep) {
      IntCycle z;
      for (int id : g.ids()) z.set(id, rng.range(1, 3));
      ChernClass zp;
      for (const auto& d : duals) {
        long long c = rng.range(0, 2);
        if (c != 0)
          for (int id : g.ids()) zp.set(id, zp.get(id) - Rat(c) * d.get(id));
      }
      Int d = dim_im(g, z, zp, cache);
      REQUIRE(d >= 0);
      REQUIRE(d <= h1_struct(g, z, cache));
    }
  }
}

TEST_CASE("vdim equals the stabilized image dimension") {
  Cache cache;
  auto g = corpus::load("g237");
  IntCycle z = all(g, 2);
  ChernClass zp = ChernClass{} - dual_basis_element(g, 1);
  for (int v : g.ids()) {
    Int expect = vdim(g, z, zp, v, cache);
    auto dual_v = dual_basis_element(g, v);
    Int prev(-1);
    bool stabilized = false;
    for (int n = 1; n <= 8; ++n) {
      ChernClass shifted = zp;
      for (int id : g.ids()) shifted.set(id, shifted.get(id) - Rat(n) * dual_v.get(id));
      Int cur = dim_im(g, z, shifted, cache);
      if (n > 1 && cur == prev) {
        stabilized = true;
        REQUIRE(cur == expect);
      }
      prev = cur;
    }
    REQUIRE(stabilized);
  }
}

TEST_CASE("invariants validate their inputs") {
  Cache cache;
  auto a2 = corpus::load("a2");
  IntCycle neg;
  neg.set(1, -1);
  REQUIRE_THROWS_AS(h1_struct(a2, neg, cache), IndexMismatch);
  IntCycle off;
  off.set(9, 1);
  REQUIRE_THROWS_AS(h1_struct(a2, off, cache), IndexMismatch);
  REQUIRE_THROWS_AS(h1_gen_bundle(a2, neg, ChernClass{}), IndexMismatch);
}
