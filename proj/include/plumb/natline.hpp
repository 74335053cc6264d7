#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
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

namespace plumb::natline {

struct Config {
  LatOptions lat;
  int tv_cap = 64;                          // search cap for t values
  std::optional<long long> blowup_budget;   // per branch; defaults to 10 + sum of t values
  bool debug_asserts = false;               // re-verifies pruning, support ties, t chains
  int subset_bound = 16;                    // minimal-support cardinality cap
  bool collect_trace = false;
};

struct Value {
  Int h0;
  Int h1;
};

struct StepRecord {
  std::string key;     // canonical memo key of the node
  std::string step;    // base|split|trivial-twist|S1-closed|S1-rec|S2|S3|S3-t|S3-blowup|S4|S5
  std::string choice;  // the selected cycle / vertex / auxiliary data
  Int h0;
  Int h1;
  bool memo = false;
};
using Trace = std::vector<StepRecord>;

// Contact data of a class along the support boundary: for each support vertex
// with an outside neighbor carrying a nonzero coefficient, the multiset of
// those coefficients (split by sign) and the pairing m_v = (Zp, E_v). Only
// meaningful when the coefficient supports are disjoint.
struct BoundaryProfile {
  std::vector<int> boundary;                // I, ascending
  std::map<int, std::vector<Rat>> contact;  // sorted coefficient multisets
  std::map<int, std::vector<Rat>> pos;      // positive members of contact
  std::map<int, std::vector<Rat>> neg_abs;  // absolute values of negative members
  std::map<int, Int> m;
};

inline BoundaryProfile boundary_profile(const PlumbingGraph& g, const IntCycle& z,
                                        const ChernClass& zp) {
  detail::check_indices(g, z);
  detail::check_indices(g, zp);
  auto supp = z.support();
  for (int v : supp)
    if (zp.get(v) != 0)
      throw AssumptionViolated("boundary profile needs disjoint supports, vertex " +
                                   std::to_string(v) + " carries both",
                               "vertex=" + std::to_string(v));
  BoundaryProfile bp;
  for (int v : supp) {
    std::vector<Rat> cs;
    for (int w : g.neighbors(v))
      if (!supp.count(w) && zp.get(w) != 0) cs.push_back(zp.get(w));
    if (cs.empty()) continue;
    std::sort(cs.begin(), cs.end());
    Rat p = pairing_with_vertex(g, zp, v);
    if (!is_integer(p))
      throw NotInLprime("pairing with vertex " + std::to_string(v) + " is " + to_string(p),
                        "vertex=" + std::to_string(v));
    bp.boundary.push_back(v);
    std::vector<Rat> a, b;
    for (const Rat& c : cs)
      (c > 0 ? a : b).push_back(c > 0 ? c : -c);
    std::sort(b.begin(), b.end());
    bp.pos[v] = std::move(a);
    bp.neg_abs[v] = std::move(b);
    bp.contact[v] = std::move(cs);
    bp.m[v] = to_int(p);
  }
  return bp;
}

inline ChernClass chern_sub(const ChernClass& a, const IntCycle& b) { return a - to_chern(b); }

// h0/h1 of restrictions of natural line bundles, by structural recursion on
// (h1 of the structure sheaf, total coefficient) with memoization under graph
// isomorphism. Every node checks h0 - h1 against the Euler characteristic.
class Engine {
 public:
  explicit Engine(Config cfg = {}) : cfg_(std::move(cfg)) {}

  const Config& config() const { return cfg_; }
  Cache& cache() { return cache_; }
  const Trace& trace() const { return trace_; }

  Value compute(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp) {
    trace_.clear();
    return rec(g, z, zp, initial_budget());
  }

  Value step1(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp) {
    std::string choice, tag;
    return step1_impl(g, z, zp, initial_budget(), tag, choice);
  }

  Value step2(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp) {
    std::string choice;
    return step2_impl(g, z, zp, initial_budget(), choice);
  }

  Value step3(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp) {
    std::string choice;
    return step3_impl(g, z, zp, initial_budget(), choice);
  }

  Value step4(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp) {
    std::string choice;
    return step4_impl(g, z, zp, initial_budget(), choice);
  }

  Value step5(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp) {
    std::string choice;
    return step5_impl(g, z, zp, initial_budget(), choice);
  }

  // Smallest i >= 1 such that after i chained blowups at generic points over
  // v the tip coefficient can be removed without changing h1. Each pullback
  // must preserve h1 on the way.
  int t_value(const PlumbingGraph& g, const IntCycle& z, int v) {
    if (z.get(v) == 0)
      throw UnknownVertex("vertex " + std::to_string(v) + " is not in the support",
                          std::to_string(v));
    const Int r = h1_struct(g, z, cache_, cfg_.lat);
    PlumbingGraph cur = g;
    IntCycle zc = z;
    int tip = v;
    for (int i = 1; i <= cfg_.tv_cap; ++i) {
      auto [child, bd] = blowup_free(cur, tip);
      zc = pullback(child, bd, zc);
      cur = std::move(child);
      tip = bd.new_vertex;
      if (h1_struct(cur, zc, cache_, cfg_.lat) != r)
        throw AssumptionViolated("pullback changed h1 during the t search at vertex " +
                                     std::to_string(v),
                                 "vertex=" + std::to_string(v));
      if (h1_struct(cur, zc.without(tip), cache_, cfg_.lat) == r) return i;
    }
    throw TvSearchExceeded("no t value for vertex " + std::to_string(v) + " within " +
                               std::to_string(cfg_.tv_cap) + " blowups",
                           "vertex=" + std::to_string(v));
  }

 private:
  struct MemoEntry {
    Value val;
    std::string tag;
  };

  long long initial_budget() const { return cfg_.blowup_budget ? *cfg_.blowup_budget : -1; }

  void note(const std::string& key, const std::string& step, const std::string& choice,
            const Value& v, bool memo) {
    if (cfg_.collect_trace) trace_.push_back({key, step, choice, v.h0, v.h1, memo});
  }

  static bool overlaps(const IntCycle& z, const ChernClass& zp) {
    for (const auto& [id, c] : z.coeffs())
      if (zp.get(id) != 0) return true;
    return false;
  }

  ChernClass prune_far(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp) const {
    auto dist = distances_from(g, z.support());
    ChernClass out;
    for (const auto& [id, c] : zp.coeffs())
      if (dist.at(id) <= 1) out.set(id, c);
    return out;
  }

  Value rec(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp, long long blowups) {
    detail::check_indices(g, z);
    detail::check_indices(g, zp);
    detail::require_effective(z, "compute");
    if (z.is_zero()) {
      Value v{Int(0), Int(0)};
      note("", "base", "Z=0", v, false);
      return v;
    }
    for (int v : z.support()) {
      Rat p = pairing_with_vertex(g, zp, v);
      if (!is_integer(p))
        throw NotInLprime("pairing with vertex " + std::to_string(v) + " is " + to_string(p),
                          "vertex=" + std::to_string(v));
    }
    const std::string key = canonical_key(g, z, zp);
    if (auto it = memo_.find(key); it != memo_.end()) {
      note(key, it->second.tag, "", it->second.val, true);
      return it->second.val;
    }
    const Int euler = chi_bundle(g, z, zp);
    Value out;
    std::string tag, choice;
    auto comps = components(g, z.support());
    if (comps.size() > 1) {
      tag = "split";
      Int h1 = 0;
      for (const auto& comp : comps) {
        std::set<int> cs(comp.begin(), comp.end());
        h1 += rec(g, z.restricted(cs), zp, blowups).h1;
      }
      out = {euler + h1, h1};
      choice = std::to_string(comps.size()) + " components";
    } else {
      const Int r = h1_struct(g, z, cache_, cfg_.lat);
      if (r == 0) {
        tag = "base";
        Int h1 = h1_gen_bundle(g, z, zp, cfg_.lat);
        if (cfg_.debug_asserts && h1 != base_case_direct(g, z, zp))
          throw AssumptionViolated("generic-bundle formula disagrees with the direct "
                                   "chi sweep",
                                   key);
        out = {euler + h1, h1};
      } else if (!droppable_vertices(g, z, cache_, cfg_.lat).empty()) {
        tag = "S5";
        out = step5_impl(g, z, zp, blowups, choice);
      } else if (overlaps(z, zp)) {
        tag = "S4";
        out = step4_impl(g, z, zp, blowups, choice);
      } else {
        ChernClass pruned = prune_far(g, z, zp);
        out = disjoint_dispatch(g, z, pruned, blowups, tag, choice);
        if (cfg_.debug_asserts && !(pruned == zp)) {
          std::string tag2, choice2;
          Value again = disjoint_dispatch(g, z, zp, blowups, tag2, choice2);
          if (again.h0 != out.h0 || again.h1 != out.h1)
            throw AssumptionViolated("dropping far coefficients changed the answer", key);
        }
      }
    }
    if (out.h1 < 0 || out.h0 < 0 || out.h0 - out.h1 != euler)
      throw AssumptionViolated("h0 - h1 must equal the Euler characteristic " + euler.str() +
                                   ", got h0=" + out.h0.str() + " h1=" + out.h1.str(),
                               key);
    memo_.emplace(key, MemoEntry{out, tag});
    note(key, tag, choice, out, false);
    return out;
  }

  // supports already disjoint, zp pruned to distance <= 1
  Value disjoint_dispatch(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp,
                          long long blowups, std::string& tag, std::string& choice) {
    auto bp = boundary_profile(g, z, zp);
    if (bp.boundary.empty()) {
      tag = "trivial-twist";
      Int h1 = h1_struct(g, z, cache_, cfg_.lat);
      return {chi_bundle(g, z, zp) + h1, h1};
    }
    bool all_ones = true;
    for (int v : bp.boundary)
      if (z.get(v) != 1) all_ones = false;
    if (all_ones) return step1_impl(g, z, zp, blowups, tag, choice);
    const Int r = h1_struct(g, z, cache_, cfg_.lat);
    IntCycle z_red = z;
    for (int v : bp.boundary) z_red.set(v, Int(1));
    if (h1_struct(g, z_red, cache_, cfg_.lat) == r) {
      tag = "S2";
      return step2_impl(g, z, zp, blowups, choice);
    }
    tag = "S3";
    return step3_impl(g, z, zp, blowups, choice);
  }

  // h1 of a generic bundle the long way: minimize chi over the shifted
  // rational classes themselves instead of the integer-cycle rewrite
  Int base_case_direct(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp) {
    ChernClass base = -zp;
    Rat best = chi(g, base);
    for_each_subcycle(z, [&](const IntCycle& l) {
      Rat c = chi(g, base + to_chern(l));
      if (c < best) best = c;
    });
    Rat h1 = chi(g, base) - best;
    if (!is_integer(h1))
      throw AssumptionViolated("direct chi sweep gave a non-integer h1 " + to_string(h1),
                               print_cycle(z));
    return to_int(h1);
  }

  // enumerate integer cycles 0 <= l <= top in ascending lex order (ids
  // ascending, smallest coefficients first)
  void for_each_subcycle(const IntCycle& top, const std::function<void(const IntCycle&)>& fn) {
    std::vector<int> coords;
    for (const auto& [id, c] : top.coeffs()) coords.push_back(id);
    Int points = 1;
    for (const auto& [id, c] : top.coeffs()) points *= c + 1;
    if (points > cfg_.lat.budget)
      throw BoxTooLarge("cycle box holds " + points.str() + " points, budget " +
                            std::to_string(cfg_.lat.budget),
                        "points=" + points.str());
    IntCycle cur;
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
      if (i == coords.size()) {
        fn(cur);
        return;
      }
      const Int hi = top.get(coords[i]);
      for (Int c = 0; c <= hi; ++c) {
        cur.set(coords[i], c);
        walk(i + 1);
      }
      cur.set(coords[i], Int(0));
    };
    walk(0);
  }

  // shared tail of steps 1 and 2: drop the smallest support vertex of l from
  // Z - l and recurse; h0 is the best candidate over 0 < l <= Z
  Int rec_branch_h0(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp,
                    long long blowups, std::string& choice) {
    Int best = 0;
    bool first = true;
    for_each_subcycle(z, [&](const IntCycle& l) {
      if (l.is_zero()) return;
      const int v_l = *l.support().begin();
      IntCycle rest = z - l;
      IntCycle z_l = rest.without(v_l);
      ChernClass zpl = chern_sub(zp, l);
      Int cand = rec(g, z_l, zpl, blowups).h1 + chi_bundle(g, rest, zpl);
      if (first || cand > best) {
        best = cand;
        choice = "l=" + print_cycle(l);
        first = false;
      }
    });
    return best;
  }

  Value step1_impl(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp,
                   long long blowups, std::string& tag, std::string& choice) {
    auto bp = boundary_profile(g, z, zp);
    check_disjoint_preconditions(g, z, zp, bp, "step1");
    for (int v : bp.boundary)
      if (z.get(v) != 1)
        throw AssumptionViolated("step1 needs coefficient 1 on the boundary, vertex " +
                                     std::to_string(v) + " has " + z.get(v).str(),
                                 "vertex=" + std::to_string(v));
    const Int r = h1_struct(g, z, cache_, cfg_.lat);
    const Int euler = chi_bundle(g, z, zp);
    if (neg_lipman_member(g, z.support(), zp)) {
      const Int d = dim_im(g, z, zp, cache_, cfg_.lat);
      bool certified = true;
      for (int v : bp.boundary) {
        const auto& cs = bp.contact.at(v);
        bool integral_contacts = true;
        for (const Rat& c : cs)
          if (c < 0 || !is_integer(c)) integral_contacts = false;
        if (integral_contacts) continue;
        if (vdim(g, z, zp, v, cache_, cfg_.lat) != d) {
          certified = false;
          break;
        }
      }
      if (certified) {
        tag = "S1-closed";
        choice = "dim=" + d.str();
        Value out{euler + (r - d), r - d};
        check_value(out, euler, "step1");
        return out;
      }
    }
    tag = "S1-rec";
    Int h0 = rec_branch_h0(g, z, zp, blowups, choice);
    Value out{h0, h0 - euler};
    check_value(out, euler, "step1");
    return out;
  }

  Value step2_impl(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp,
                   long long blowups, std::string& choice) {
    auto bp = boundary_profile(g, z, zp);
    check_disjoint_preconditions(g, z, zp, bp, "step2");
    const Int r = h1_struct(g, z, cache_, cfg_.lat);
    IntCycle z_red = z;
    for (int v : bp.boundary) z_red.set(v, Int(1));
    if (h1_struct(g, z_red, cache_, cfg_.lat) != r)
      throw AssumptionViolated("reduced boundary cycle lost h1, step2 does not apply",
                               print_cycle(z_red));
    const Int euler = chi_bundle(g, z, zp);
    std::string rtag, rchoice;
    Value red = step1_impl(g, z_red, zp, blowups, rtag, rchoice);
    Int a = euler + red.h1;
    std::string bchoice;
    Int b = rec_branch_h0(g, z, zp, blowups, bchoice);
    Value out;
    if (a >= b) {
      choice = "reduced " + rtag + (rchoice.empty() ? "" : " " + rchoice);
      out = {a, a - euler};
    } else {
      choice = bchoice;
      out = {b, b - euler};
    }
    check_value(out, euler, "step2");
    return out;
  }

  Value step3_impl(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp,
                   long long blowups, std::string& choice) {
    auto bp = boundary_profile(g, z, zp);
    check_disjoint_preconditions(g, z, zp, bp, "step3");
    const Int r = h1_struct(g, z, cache_, cfg_.lat);
    std::map<int, int> tv;
    long long tv_sum = 0;
    for (int v : bp.boundary) {
      tv[v] = t_value(g, z, v);
      tv_sum += tv[v];
    }
    if (cfg_.collect_trace) {
      std::string ts;
      for (const auto& [v, t] : tv)
        ts += (ts.empty() ? "" : " ") + std::to_string(v) + ":" + std::to_string(t);
      note(canonical_key(g, z, zp), "S3-t", ts, Value{Int(0), Int(0)}, false);
    }
    int v = -1;
    for (const auto& [u, t] : tv)
      if (t >= 2) {
        v = u;
        break;
      }
    if (v < 0)
      throw AssumptionViolated("every t value is 1, an earlier step should have applied",
                               print_cycle(z));
    int w = -1;
    for (int u : g.neighbors(v))
      if (zp.get(u) != 0) {
        w = u;
        break;
      }
    if (w < 0)
      throw AssumptionViolated("boundary vertex lost its outside contact", std::to_string(v));

    long long budget = blowups < 0 ? (cfg_.blowup_budget ? *cfg_.blowup_budget : 10 + tv_sum)
                                   : blowups;
    if (budget <= 0)
      throw BlowupBudgetExceeded("blowup budget exhausted at vertex " + std::to_string(v),
                                 "vertex=" + std::to_string(v));
    --budget;

    auto [child, bd] = blowup_edge(g, v, w);
    IntCycle zn = pullback(child, bd, z);
    ChernClass zpn = pullback(child, bd, zp);
    const int nv = bd.new_vertex;
    if (cfg_.collect_trace)
      note(canonical_key(child, zn, zpn), "S3-blowup",
           "edge " + std::to_string(v) + "-" + std::to_string(w) + " new " + std::to_string(nv),
           Value{Int(0), Int(0)}, false);
    if (h1_struct(child, zn, cache_, cfg_.lat) != r)
      throw AssumptionViolated("pullback changed h1 across the edge blowup",
                               std::to_string(nv));
    if (!droppable_vertices(child, zn, cache_, cfg_.lat).empty())
      throw AssumptionViolated("pulled-back cycle has a droppable vertex after the edge blowup",
                               std::to_string(nv));
    if (cfg_.debug_asserts) {
      // the t value is expected to drop by one across the blowup; a mismatch
      // is recorded, not fatal, since nothing downstream relies on it
      int t_new = t_value(child, zn, nv);
      if (t_new != tv[v] - 1)
        trace_.push_back({canonical_key(child, zn, zpn), "S3-t-claim",
                          "expected " + std::to_string(tv[v] - 1) + " got " +
                              std::to_string(t_new),
                          Int(0), Int(0), false});
    }

    const Rat zw = zp.get(w);
    IntCycle excl;
    if (is_integer(zw) && zw > 0 && num(zw) <= z.get(v)) excl.set(nv, num(zw));

    const Int euler = chi_bundle(g, z, zp);
    Int best = 0;
    bool first = true;
    for_each_subcycle(zn, [&](const IntCycle& l) {
      if (!excl.is_zero() && l == excl) return;
      IntCycle rest = zn - l;
      ChernClass zpl = chern_sub(zpn, l);
      IntCycle z_l = rest.without(nv);
      Int cand = rec(child, z_l, zpl, budget).h1 + chi_bundle(child, rest, zpl);
      if (first || cand > best) {
        best = cand;
        choice = "l=" + print_cycle(l);
        first = false;
      }
    });
    if (!excl.is_zero()) {
      Value nval = rec(child, zn - excl, chern_sub(zpn, excl), budget);
      if (first || nval.h0 > best) {
        best = nval.h0;
        choice = "n-term " + print_cycle(excl);
        first = false;
      }
    }
    Value out{best, best - euler};
    check_value(out, euler, "step3");
    return out;
  }

  Value step4_impl(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp,
                   long long blowups, std::string& choice) {
    if (!overlaps(z, zp))
      throw AssumptionViolated("step4 needs overlapping supports", print_cycle(z));
    const Int euler = chi_bundle(g, z, zp);
    Int best = 0;
    bool first = true;
    for_each_subcycle(z, [&](const IntCycle& l) {
      IntCycle rest = z - l;
      ChernClass zpl = chern_sub(zp, l);
      std::set<int> shared;
      for (const auto& [id, c] : rest.coeffs())
        if (zpl.get(id) != 0) shared.insert(id);
      IntCycle z_l = rest;
      for (int id : shared) z_l = z_l.without(id);
      Int cand = rec(g, z_l, zpl, blowups).h1 + chi_bundle(g, rest, zpl);
      if (first || cand > best) {
        best = cand;
        choice = "l=" + print_cycle(l);
        first = false;
      }
    });
    Value out{best, best - euler};
    check_value(out, euler, "step4");
    return out;
  }

  Value step5_impl(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp,
                   long long blowups, std::string& choice) {
    if (droppable_vertices(g, z, cache_, cfg_.lat).empty())
      throw AssumptionViolated("step5 needs a droppable vertex", print_cycle(z));
    const Int euler = chi_bundle(g, z, zp);
    Int best = 0;
    bool first = true;
    for_each_subcycle(z, [&](const IntCycle& l) {
      IntCycle rest = z - l;
      ChernClass zpl = chern_sub(zp, l);
      auto keep = minimal_support(g, rest, cache_, cfg_.lat, cfg_.subset_bound);
      if (l.is_zero() && keep.empty())
        throw AssumptionViolated("minimal support of the full cycle is empty despite h1 > 0",
                                 print_cycle(z));
      std::set<int> keep_set(keep.begin(), keep.end());
      IntCycle z_l = rest.restricted(keep_set);
      Int cand = rec(g, z_l, zpl, blowups).h1 + chi_bundle(g, rest, zpl);
      if (cfg_.debug_asserts) {
        for (const auto& alt : minimal_supports_all(g, rest, cache_, cfg_.lat, cfg_.subset_bound)) {
          std::set<int> alt_set(alt.begin(), alt.end());
          Int alt_cand = rec(g, rest.restricted(alt_set), zpl, blowups).h1 +
                         chi_bundle(g, rest, zpl);
          if (alt_cand != cand)
            throw AssumptionViolated("minimal support choice changed a step5 candidate",
                                     print_cycle(rest));
        }
      }
      if (first || cand > best) {
        best = cand;
        choice = "l=" + print_cycle(l);
        first = false;
      }
    });
    Value out{best, best - euler};
    check_value(out, euler, "step5");
    return out;
  }

  void check_disjoint_preconditions(const PlumbingGraph& g, const IntCycle& z,
                                    const ChernClass& zp, const BoundaryProfile& bp,
                                    const char* who) {
    if (z.is_zero() || components(g, z.support()).size() != 1)
      throw AssumptionViolated(std::string(who) + " needs a nonzero connected support",
                               print_cycle(z));
    if (overlaps(z, zp))
      throw AssumptionViolated(std::string(who) + " needs disjoint supports", print_cycle(z));
    if (h1_struct(g, z, cache_, cfg_.lat) == 0)
      throw AssumptionViolated(std::string(who) + " needs h1 > 0", print_cycle(z));
    if (!droppable_vertices(g, z, cache_, cfg_.lat).empty())
      throw AssumptionViolated(std::string(who) + " forbids droppable vertices", print_cycle(z));
    if (bp.boundary.empty())
      throw AssumptionViolated(std::string(who) + " needs boundary contact", print_cycle(z));
  }

  void check_value(const Value& v, const Int& euler, const char* who) {
    if (v.h0 < 0 || v.h1 < 0 || v.h0 - v.h1 != euler)
      throw AssumptionViolated(std::string(who) + " broke the Euler identity: h0=" +
                                   v.h0.str() + " h1=" + v.h1.str() + " chi=" + euler.str(),
                               who);
  }

  Config cfg_;
  Cache cache_;
  std::map<std::string, MemoEntry> memo_;
  Trace trace_;
};

// single-shot convenience wrapper
inline Value compute(const PlumbingGraph& g, const IntCycle& z, const ChernClass& zp,
                     Config cfg = {}) {
  Engine engine(std::move(cfg));
  return engine.compute(g, z, zp);
}

}  // namespace plumb::natline
