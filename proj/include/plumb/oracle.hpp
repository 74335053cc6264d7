#pragma once

#include <cstdint>
#include <exception>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "plumb/canonical.hpp"
#include "plumb/cycle.hpp"
#include "plumb/error.hpp"
#include "plumb/graph.hpp"
#include "plumb/invariants.hpp"
#include "plumb/latopt.hpp"
#include "plumb/lattice.hpp"
#include "plumb/natline.hpp"
#include "plumb/rng.hpp"

namespace plumb::oracle {

struct IdentityReport {
  std::string name;
  long long checked = 0;
  long long failed = 0;
  std::vector<std::string> witnesses;  // first few failures
};

struct BatteryReport {
  std::string graph;
  std::uint64_t seed = 0;
  long long count = 0;
  std::vector<IdentityReport> identities;

  bool all_pass() const {
    for (const auto& i : identities)
      if (i.failed > 0) return false;
    return true;
  }
};

struct BatteryOptions {
  natline::Config engine;
  int max_coeff = 3;
  long long fault_bias = 0;  // test seam: offsets one side of the base-equivalence check
};

namespace detail {

class Check {
 public:
  explicit Check(IdentityReport& r) : r_(r) {}

  void require(bool cond, const std::string& witness) {
    ++r_.checked;
    if (!cond) {
      ++r_.failed;
      if (r_.witnesses.size() < 3) r_.witnesses.push_back(witness);
    }
  }

  // evaluates f, recording a thrown computation error as a failed check
  template <typename F>
  void guarded(F&& f) {
    try {
      f();
    } catch (const Error& e) {
      ++r_.checked;
      ++r_.failed;
      if (r_.witnesses.size() < 3)
        r_.witnesses.push_back(std::string(e.code()) + ": " + e.what());
    }
  }

 private:
  IdentityReport& r_;
};

inline IntCycle random_effective(Rng& rng, const PlumbingGraph& g, int max_coeff) {
  IntCycle z;
  for (int id : g.ids()) {
    if (rng.chance(2, 5)) continue;
    z.set(id, Int(rng.range(1, max_coeff)));
  }
  if (z.is_zero())
    z.set(g.ids()[rng.below(g.vertex_count())], Int(rng.range(1, max_coeff)));
  return z;
}

inline IntCycle random_lattice(Rng& rng, const PlumbingGraph& g, int max_coeff) {
  IntCycle z;
  for (int id : g.ids()) z.set(id, Int(rng.range(-max_coeff, max_coeff)));
  return z;
}

// integer mixes of basis and dual-basis elements: always in the dual lattice
inline ChernClass random_chern(Rng& rng, const PlumbingGraph& g,
                               const std::vector<ChernClass>& duals, int max_coeff) {
  ChernClass zp;
  long long picks = rng.range(0, 3);
  for (long long i = 0; i < picks; ++i) {
    std::size_t at = rng.below(g.vertex_count());
    long long c = rng.range(-max_coeff, max_coeff);
    bool dual = rng.chance(1, 2);
    if (c == 0) continue;
    if (dual) {
      zp = zp + duals[at].scaled(Rat(c));
    } else {
      ChernClass e;
      e.set(g.ids()[at], Rat(c));
      zp = zp + e;
    }
  }
  return zp;
}

inline ChernClass random_negative_on(Rng& rng, const PlumbingGraph& g, const IntCycle& z) {
  ChernClass zp;
  auto supp = z.support();
  for (int v : supp) zp.set(v, Rat(-rng.range(1, 2)));
  for (int id : g.ids()) {
    bool off = !supp.count(id);
    bool add = rng.chance(1, 3);
    long long c = rng.range(-2, 2);
    if (off && add && c != 0) zp.set(id, Rat(c));
  }
  return zp;
}

inline std::vector<int> random_permutation(Rng& rng, std::vector<int> ids) {
  for (std::size_t i = ids.size(); i > 1; --i)
    std::swap(ids[i - 1], ids[rng.below(i)]);
  return ids;
}

inline BoxSpec random_box(Rng& rng, const PlumbingGraph& g,
                          const std::vector<ChernClass>& duals, int max_coeff) {
  BoxSpec box;
  for (int id : g.ids()) {
    if (rng.chance(1, 3)) continue;
    Int lo(rng.range(0, 1)), span(rng.range(0, 2));
    box.lower.set(id, lo);
    box.upper.set(id, lo + span);
  }
  for (int id : g.ids()) {
    bool freeze = rng.chance(1, 6);
    if (freeze && box.lower.get(id) == 0) {
      box.frozen_zero.insert(id);
      box.upper.set(id, Int(0));
    }
  }
  box.shift = random_chern(rng, g, duals, max_coeff);
  return box;
}

inline bool same_record(const natline::StepRecord& a, const natline::StepRecord& b) {
  return a.key == b.key && a.step == b.step && a.choice == b.choice && a.h0 == b.h0 &&
         a.h1 == b.h1 && a.memo == b.memo;
}

struct RelabeledInstance {
  PlumbingGraph graph;
  IntCycle z;
  ChernClass zp;
};

inline RelabeledInstance relabel(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp,
                                 const std::vector<int>& perm) {
  const auto& ids = g.ids();
  std::map<int, int> to_new;
  for (std::size_t i = 0; i < ids.size(); ++i) to_new[ids[i]] = perm[i];
  std::vector<std::pair<int, long long>> verts;
  for (int id : ids) verts.push_back({to_new[id], g.weight(id)});
  std::vector<std::pair<int, int>> edges;
  for (const auto& [a, b] : g.edges()) edges.push_back({to_new[a], to_new[b]});
  RelabeledInstance out{PlumbingGraph::make(g.name() + "-relabeled", verts, edges), {}, {}};
  for (const auto& [id, c] : z.coeffs()) out.z.set(to_new[id], c);
  for (const auto& [id, c] : zp.coeffs()) out.zp.set(to_new[id], c);
  return out;
}

}  // namespace detail

// Runs every cross-implementation identity `count` times with seeded inputs.
// Deterministic for fixed (graph, seed, count); computation errors are
// recorded as failures, never propagated.
inline BatteryReport run_battery(const PlumbingGraph& g, std::uint64_t seed, long long count,
                                 BatteryOptions opt = {}) {
  BatteryReport rep;
  rep.graph = g.name();
  rep.seed = seed;
  rep.count = count;

  auto& ids = g.ids();
  const int n = g.vertex_count();
  const auto duals = dual_basis(g);
  natline::Engine eng(opt.engine);
  Cache& cache = eng.cache();
  const LatOptions& lat = opt.engine.lat;

  rep.identities.reserve(32);  // references below must survive the push_backs
  auto add = [&rep](const char* name) -> IdentityReport& {
    rep.identities.push_back({name, 0, 0, {}});
    return rep.identities.back();
  };

  // fixed report order; the first four are structural, the rest seeded
  IdentityReport& id_dual = add("dual basis pairing");
  IdentityReport& id_adj = add("adjunction residual");
  IdentityReport& id_rat = add("rationality two ways");
  IdentityReport& id_cone = add("cone minimum at zero");
  IdentityReport& id_chi = add("chi additivity");
  IdentityReport& id_sub = add("box submodularity");
  IdentityReport& id_eng = add("engine agreement");
  IdentityReport& id_comp = add("h1 component additivity");
  IdentityReport& id_gen = add("generic bundle bound");
  IdentityReport& id_zero = add("zero twist");
  IdentityReport& id_euler = add("euler identity");
  IdentityReport& id_nonneg = add("nonnegativity");
  IdentityReport& id_base = add("base equivalence");
  IdentityReport& id_neg = add("negative on support");
  IdentityReport& id_blow = add("blowup invariance");
  IdentityReport& id_mono = add("monotonicity");
  IdentityReport& id_imb = add("image bounds");
  IdentityReport& id_imm = add("image monotone");
  IdentityReport& id_stab = add("vdim stabilization");
  IdentityReport& id_rel = add("canonical relabel");
  IdentityReport& id_det = add("trace determinism");

  {
    detail::Check c(id_dual);
    for (int u : ids)
      for (int w : ids) {
        Rat p = pairing_with_vertex(g, duals[g.index(u)], w);
        c.require(p == (u == w ? Rat(-1) : Rat(0)),
                  "(dual " + std::to_string(u) + ", vertex " + std::to_string(w) + ") = " +
                      to_string(p));
      }
  }
  {
    detail::Check c(id_adj);
    ChernClass zk = canonical_cycle(g);
    for (int v : ids) {
      Rat res = pairing_with_vertex(g, zk, v) - Rat(g.weight(v) + 2);
      c.require(res == 0, "vertex " + std::to_string(v) + " residual " + to_string(res));
    }
  }
  {
    detail::Check c(id_rat);
    c.guarded([&] {
      bool art = artin_rational(g, lat);
      Int p = pg(g, lat);
      c.require(art == (p == 0), "artin=" + std::string(art ? "true" : "false") +
                                     " pg=" + p.str());
    });
  }
  {
    detail::Check c(id_cone);
    c.guarded([&] {
      MinResult m = min_unbounded(g, IntCycle{}, ChernClass{}, lat);
      c.require(m.value == 0, "min over the effective cone is " + m.value.str());
    });
  }

  Rng rng(seed);
  for (long long trial = 0; trial < count; ++trial) {
    // all draws happen up front so the stream never depends on outcomes
    IntCycle z = detail::random_effective(rng, g, opt.max_coeff);
    IntCycle a = detail::random_lattice(rng, g, opt.max_coeff);
    IntCycle b = detail::random_lattice(rng, g, opt.max_coeff);
    std::size_t ui = rng.below(n), wi = rng.below(n > 1 ? n - 1 : 1);
    IntCycle sub_l = detail::random_effective(rng, g, 2);
    BoxSpec box1 = detail::random_box(rng, g, duals, opt.max_coeff);
    BoxSpec box2 = detail::random_box(rng, g, duals, opt.max_coeff);
    ChernClass zp = detail::random_chern(rng, g, duals, opt.max_coeff);
    IntCycle z1;
    for (const auto& [id, cz] : z.coeffs()) {
      Int c(rng.range(0, 3));
      z1.set(id, c < cz ? c : cz);
    }
    ChernClass zp_neg = detail::random_negative_on(rng, g, z);
    auto supp_vec = [&] {
      std::vector<int> s;
      for (int v : z.support()) s.push_back(v);
      return s;
    }();
    int v_blow = supp_vec[rng.below(supp_vec.size())];
    int v_img = supp_vec[rng.below(supp_vec.size())];
    std::vector<long long> lip_coeffs;
    for (int i = 0; i < n; ++i) lip_coeffs.push_back(rng.range(0, 2));
    std::vector<int> perm = detail::random_permutation(rng, ids);

    const std::string zs = "Z=" + print_cycle(z);

    {
      detail::Check c(id_chi);
      Rat lhs = chi(g, a + b);
      Rat rhs = chi(g, a) + chi(g, b) - pairing(g, a, b);
      c.require(lhs == rhs, "a=" + print_cycle(a) + " b=" + print_cycle(b) + " gap " +
                                to_string(lhs - rhs));
    }
    if (n > 1) {
      detail::Check c(id_sub);
      int u = ids[ui];
      int w = ids[wi >= ui ? wi + 1 : wi];
      IntCycle eu = IntCycle::unit(u), ew = IntCycle::unit(w);
      Rat d2 = chi(g, sub_l + eu + ew) - chi(g, sub_l + eu) - chi(g, sub_l + ew) +
               chi(g, sub_l);
      Rat cross = -pairing(g, eu, ew);
      c.require(d2 == cross && cross <= 0,
                "l=" + print_cycle(sub_l) + " u=" + std::to_string(u) + " w=" +
                    std::to_string(w) + " got " + to_string(d2));
    }
    {
      detail::Check c(id_eng);
      for (const BoxSpec* box : {&box1, &box2}) {
        c.guarded([&] {
          LatOptions ex = lat, de = lat;
          ex.engine = MinEngine::exhaustive;
          de.engine = MinEngine::descent;
          MinResult r1 = min_box(g, *box, ex);
          MinResult r2 = min_box(g, *box, de);
          c.require(r1.value == r2.value, "box upper=" + print_cycle(box->upper) +
                                              " exhaustive " + r1.value.str() + " descent " +
                                              r2.value.str());
        });
      }
    }
    {
      detail::Check c(id_comp);
      c.guarded([&] {
        Int whole = h1_struct(g, z, cache, lat);
        Int parts = 0;
        for (const auto& comp : components(g, z.support())) {
          std::set<int> cs(comp.begin(), comp.end());
          parts += h1_struct(g, z.restricted(cs), cache, lat);
        }
        c.require(whole == parts, zs + " whole " + whole.str() + " parts " + parts.str());
      });
    }
    {
      detail::Check c(id_gen);
      c.guarded([&] {
        Int gen = h1_gen_bundle(g, z, ChernClass{}, lat);
        Int st = h1_struct(g, z, cache, lat);
        c.require(gen <= st, zs + " generic " + gen.str() + " struct " + st.str());
      });
    }
    {
      detail::Check c(id_zero);
      c.guarded([&] {
        natline::Value val = eng.compute(g, z, ChernClass{});
        Int st = h1_struct(g, z, cache, lat);
        Int h0_want = chi_bundle(g, z, ChernClass{}) + st;
        c.require(val.h1 == st && val.h0 == h0_want,
                  zs + " got (" + val.h0.str() + "," + val.h1.str() + ") want (" +
                      h0_want.str() + "," + st.str() + ")");
      });
    }
    {
      detail::Check c(id_euler);
      c.guarded([&] {
        natline::Value val = eng.compute(g, z, zp);
        Int cb = chi_bundle(g, z, zp);
        c.require(val.h0 - val.h1 == cb, zs + " Zp=" + print_cycle(zp) + " h0-h1 " +
                                             Int(val.h0 - val.h1).str() + " chi " + cb.str());
      });
    }
    {
      detail::Check c(id_nonneg);
      c.guarded([&] {
        natline::Value val = eng.compute(g, z, zp);
        c.require(val.h0 >= 0 && val.h1 >= 0,
                  zs + " h0 " + val.h0.str() + " h1 " + val.h1.str());
      });
    }
    {
      detail::Check c(id_base);
      c.guarded([&] {
        if (h1_struct(g, z, cache, lat) != 0) return;
        Int lhs = eng.compute(g, z, zp).h1 + Int(opt.fault_bias);
        Int rhs = h1_gen_bundle(g, z, zp, lat);
        c.require(lhs == rhs, zs + " Zp=" + print_cycle(zp) + " recursion " + lhs.str() +
                                  " direct " + rhs.str());
      });
    }
    {
      detail::Check c(id_neg);
      c.guarded([&] {
        Int lhs = eng.compute(g, z, zp_neg).h1;
        Int rhs = h1_gen_bundle(g, z, zp_neg, lat);
        c.require(lhs == rhs, zs + " Zp=" + print_cycle(zp_neg) + " recursion " + lhs.str() +
                                  " generic " + rhs.str());
      });
    }
    {
      detail::Check c(id_blow);
      c.guarded([&] {
        natline::Value before = eng.compute(g, z, zp);
        auto [child, bd] = blowup_free(g, v_blow);
        natline::Value after = eng.compute(child, pullback(child, bd, z),
                                           pullback(child, bd, zp));
        c.require(before.h0 == after.h0 && before.h1 == after.h1,
                  zs + " at " + std::to_string(v_blow) + " before (" + before.h0.str() + "," +
                      before.h1.str() + ") after (" + after.h0.str() + "," + after.h1.str() +
                      ")");
      });
    }
    {
      detail::Check c(id_mono);
      c.guarded([&] {
        Int small = eng.compute(g, z1, zp).h1;
        Int big = eng.compute(g, z, zp).h1;
        c.require(small <= big, "Z1=" + print_cycle(z1) + " " + zs + " h1 " + small.str() +
                                    " > " + big.str());
      });
    }
    ChernClass zp_lip;
    for (int i = 0; i < n; ++i)
      if (lip_coeffs[i] != 0) zp_lip = zp_lip + duals[i].scaled(Rat(-lip_coeffs[i]));
    {
      detail::Check c(id_imb);
      c.guarded([&] {
        Int di = dim_im(g, z, zp_lip, cache, lat);
        Int vd = vdim(g, z, zp_lip, v_img, cache, lat);
        Int st = h1_struct(g, z, cache, lat);
        c.require(di >= 0 && di <= vd && vd <= st,
                  zs + " dim " + di.str() + " vdim " + vd.str() + " h1 " + st.str());
      });
    }
    {
      detail::Check c(id_imm);
      c.guarded([&] {
        Int before = dim_im(g, z, zp_lip, cache, lat);
        Int after = dim_im(g, z, zp_lip - duals[g.index(v_img)], cache, lat);
        c.require(after >= before,
                  zs + " v=" + std::to_string(v_img) + " " + before.str() + " -> " +
                      after.str());
      });
    }
    {
      detail::Check c(id_stab);
      c.guarded([&] {
        Int vd = vdim(g, z, zp_lip, v_img, cache, lat);
        Int d7 = dim_im(g, z, zp_lip + duals[g.index(v_img)].scaled(Rat(-7)), cache, lat);
        Int d8 = dim_im(g, z, zp_lip + duals[g.index(v_img)].scaled(Rat(-8)), cache, lat);
        c.require(vd == d7 && d7 == d8, zs + " v=" + std::to_string(v_img) + " vdim " +
                                            vd.str() + " N7 " + d7.str() + " N8 " + d8.str());
      });
    }
    {
      detail::Check c(id_rel);
      c.guarded([&] {
        auto inst = detail::relabel(g, z, zp, perm);
        bool keys = canonical_key(g, z, zp) == canonical_key(inst.graph, inst.z, inst.zp);
        Cache fresh;
        bool vals = h1_struct(g, z, cache, lat) == h1_struct(inst.graph, inst.z, fresh, lat);
        c.require(keys && vals, zs + (keys ? " h1 differs" : " key differs"));
      });
    }
    {
      detail::Check c(id_det);
      c.guarded([&] {
        natline::Config traced = opt.engine;
        traced.collect_trace = true;
        natline::Engine e1(traced), e2(traced);
        natline::Value v1 = e1.compute(g, z, zp);
        natline::Value v2 = e2.compute(g, z, zp);
        bool same = v1.h0 == v2.h0 && v1.h1 == v2.h1 &&
                    e1.trace().size() == e2.trace().size();
        if (same)
          for (std::size_t i = 0; i < e1.trace().size(); ++i)
            if (!detail::same_record(e1.trace()[i], e2.trace()[i])) same = false;
        c.require(same, zs + " Zp=" + print_cycle(zp) + " runs diverge");
      });
    }
  }
  return rep;
}

}  // namespace plumb::oracle
