// Exercises the ten acceptance properties end to end and prints one PASS or
// FAIL line per criterion with its wall time. Exits nonzero on any failure.
#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "plumb/corpus.hpp"
#include "plumb/graph.hpp"
#include "plumb/invariants.hpp"
#include "plumb/lattice.hpp"
#include "plumb/natline.hpp"
#include "plumb/oracle.hpp"
#include "plumb/rng.hpp"

using namespace plumb;
using Clock = std::chrono::steady_clock;

namespace {

bool g_budget_violation = false;

struct Outcome {
  bool pass = false;
  double secs = 0;
  std::string detail;
};

Outcome run_criterion(const std::function<std::string()>& body, double limit) {
  Outcome out;
  auto t0 = Clock::now();
  try {
    out.detail = body();
    out.pass = true;
  } catch (const BlowupBudgetExceeded& e) {
    g_budget_violation = true;
    out.detail = e.what();
  } catch (const TvSearchExceeded& e) {
    g_budget_violation = true;
    out.detail = e.what();
  } catch (const std::exception& e) {
    out.detail = e.what();
  }
  out.secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (out.pass && out.secs > limit) {
    out.pass = false;
    out.detail += " [over the " + std::to_string(static_cast<int>(limit)) + "s limit]";
  }
  return out;
}

void check(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error("check failed: " + what);
}

IntCycle all(const PlumbingGraph& g, long long k) {
  IntCycle z;
  for (int id : g.ids()) z.set(id, k);
  return z;
}

ChernClass dual_combo(const PlumbingGraph& g, const std::vector<ChernClass>& duals,
                      Rng& rng, long long lo, long long hi) {
  ChernClass zp;
  for (const auto& d : duals) {
    long long c = rng.range(lo, hi);
    if (c != 0)
      for (int id : g.ids()) zp.set(id, zp.get(id) + Rat(c) * d.get(id));
  }
  return zp;
}

// every Z with 0 <= Z_v <= top_v, in odometer order
void for_each_cycle(const PlumbingGraph& g, long long top,
                    const std::function<void(const IntCycle&)>& fn) {
  const auto& ids = g.ids();
  std::vector<long long> c(ids.size(), 0);
  while (true) {
    IntCycle z;
    for (std::size_t i = 0; i < ids.size(); ++i) z.set(ids[i], c[i]);
    fn(z);
    std::size_t i = 0;
    while (i < ids.size() && c[i] == top) c[i++] = 0;
    if (i == ids.size()) break;
    ++c[i];
  }
}

std::string criterion1() {
  long long pairs = 0;
  for (const auto& name : corpus::names()) {
    auto g = corpus::load(name);
    auto zk = canonical_cycle(g);
    for (int v : g.ids()) {
      auto dv = dual_basis_element(g, v);
      for (int w : g.ids()) {
        IntCycle e;
        e.set(w, 1);
        check(pairing(g, dv, to_chern(e)) == (v == w ? Rat(-1) : Rat(0)),
              "dual pairing on " + name);
      }
      IntCycle e;
      e.set(v, 1);
      check(pairing(g, zk, to_chern(e)) == Rat(g.weight(v) + 2), "adjunction on " + name);
    }
    Rng rng(101);
    for (int rep = 0; rep < 100; ++rep) {
      ChernClass a, b;
      for (int id : g.ids()) {
        a.set(id, Rat(rng.range(-6, 6), rng.range(1, 4)));
        b.set(id, Rat(rng.range(-6, 6), rng.range(1, 4)));
      }
      check(chi(g, a + b) == chi(g, a) + chi(g, b) - pairing(g, a, b),
            "chi additivity on " + name);
      ++pairs;
    }
  }
  return "dual/adjunction exact, " + std::to_string(pairs) + " additivity pairs";
}

std::string criterion2() {
  long long cycles = 0;
  for (const auto& name : {"a1", "a2", "a5", "d4", "e8"}) {
    auto g = corpus::load(name);
    check(artin_rational(g), std::string(name) + " artin");
    check(pg(g) == 0, std::string(name) + " pg");
    Cache cache;
    for_each_cycle(g, 3, [&](const IntCycle& z) {
      check(h1_struct(g, z, cache) == 0, "h1 sweep on " + std::string(name));
      ++cycles;
    });
  }
  return "cone certificates and " + std::to_string(cycles) + " cycle sweeps agree";
}

std::string criterion3() {
  long long checked = 0;
  Cache cache;
  for (const auto& name : {"a1", "a2", "a5", "d4", "e8"}) {
    auto g = corpus::load(name);
    auto duals = dual_basis(g);
    natline::Engine eng;
    Rng rng(303);
    for (int rep = 0; rep < 50; ++rep) {
      IntCycle z;
      for (int id : g.ids()) z.set(id, rng.range(0, 3));
      check(h1_struct(g, z, cache) == 0, "rational draw");
      ChernClass zp = dual_combo(g, duals, rng, -2, 2);
      check(eng.compute(g, z, zp).h1 == h1_gen_bundle(g, z, zp),
            "base equivalence on " + std::string(name));
      ++checked;
    }
  }
  check(checked >= 200, "enough base pairs");
  return std::to_string(checked) + " pairs with vanishing h1";
}

std::string criterion4() {
  long long checked = 0;
  std::set<std::string> steps;
  for (const auto& name : {"g237", "g2315"}) {
    auto g = corpus::load(name);
    auto duals = dual_basis(g);
    natline::Config cfg;
    cfg.collect_trace = true;
    Rng rng(404);
    for (int rep = 0; rep < 55; ++rep) {
      IntCycle z;
      for (int id : g.ids()) z.set(id, rng.range(1, 3));
      ChernClass zp = dual_combo(g, duals, rng, -2, -1);
      for (int v : z.support()) check(zp.get(v) < 0, "strictly negative coefficients");
      natline::Engine eng(cfg);
      check(eng.compute(g, z, zp).h1 == h1_gen_bundle(g, z, zp),
            "generic equivalence on " + std::string(name));
      for (const auto& rec : eng.trace()) steps.insert(rec.step);
      ++checked;
    }
  }
  check(checked >= 100, "enough negative pairs");
  std::string seen;
  for (const auto& s : steps) seen += (seen.empty() ? "" : ",") + s;
  return std::to_string(checked) + " strictly negative twists; steps " + seen;
}

std::string criterion5() {
  long long checked = 0;
  Cache cache;
  for (const auto& name : corpus::names()) {
    auto g = corpus::load(name);
    natline::Engine eng;
    Rng rng(505);
    for (int rep = 0; rep < 12; ++rep) {
      IntCycle z;
      for (int id : g.ids()) z.set(id, rng.range(0, 2));
      auto val = eng.compute(g, z, ChernClass{});
      check(val.h1 == h1_struct(g, z, cache), "zero twist on " + name);
      check(val.h0 - val.h1 == chi_bundle(g, z, ChernClass{}), "euler on " + name);
      ++checked;
    }
    auto val = eng.compute(g, all(g, 2), ChernClass{});
    check(val.h1 == h1_struct(g, all(g, 2), cache), "zero twist 2E on " + name);
    ++checked;
  }
  return std::to_string(checked) +
         " twists; the engine asserts h0-h1=chi at every recursion node";
}

std::string criterion6() {
  long long checked = 0;
  for (const auto& name : corpus::names()) {
    auto g = corpus::load(name);
    auto duals = dual_basis(g);
    natline::Engine eng;
    Rng rng(606);
    for (int rep = 0; rep < 13; ++rep) {
      IntCycle z;
      for (int id : g.ids()) z.set(id, rng.range(0, 2));
      if (z.is_zero()) z.set(g.ids()[0], 1);
      ChernClass zp = dual_combo(g, duals, rng, -1, 1);
      auto base = eng.compute(g, z, zp);
      auto supp = z.support();
      auto it = supp.begin();
      std::advance(it, rng.range(0, static_cast<long long>(supp.size()) - 1));
      auto [child, bd] = blowup_free(g, *it);
      auto lifted = eng.compute(child, pullback(child, bd, z), pullback(child, bd, zp));
      check(base.h0 == lifted.h0 && base.h1 == lifted.h1, "blowup invariance on " + name);
      ++checked;
    }
  }
  check(checked >= 100, "enough blowup instances");
  return std::to_string(checked) + " free point blowups";
}

std::string criterion7() {
  long long checked = 0;
  Cache cache;
  for (const auto& name : {"a2", "a5", "d4", "g237", "g2315"}) {
    auto g = corpus::load(name);
    auto duals = dual_basis(g);
    Rng rng(707);
    for (int rep = 0; rep < 21; ++rep) {
      IntCycle z;
      for (int id : g.ids()) z.set(id, rng.range(1, 2));
      ChernClass zp = dual_combo(g, duals, rng, -2, 0);
      Int d = dim_im(g, z, zp, cache);
      check(d >= 0 && d <= h1_struct(g, z, cache), "image bounds on " + std::string(name));
      auto supp = z.support();
      auto it = supp.begin();
      std::advance(it, rng.range(0, static_cast<long long>(supp.size()) - 1));
      const int v = *it;
      Int stable = vdim(g, z, zp, v, cache);
      auto dual_v = dual_basis_element(g, v);
      Int prev(-1);
      bool stabilized = false;
      for (int n = 1; n <= 8; ++n) {
        ChernClass shifted = zp;
        for (int id : g.ids()) shifted.set(id, shifted.get(id) - Rat(n) * dual_v.get(id));
        Int cur = dim_im(g, z, shifted, cache);
        if (n > 1 && cur == prev) {
          check(cur == stable, "vdim stabilization on " + std::string(name));
          stabilized = true;
          break;
        }
        prev = cur;
      }
      check(stabilized, "stabilization within 8 steps on " + std::string(name));
      ++checked;
    }
  }
  check(checked >= 100, "enough image instances");
  return std::to_string(checked) + " image/vdim instances";
}

std::string criterion8() {
  long long boxes = 0;
  for (const auto& name : corpus::names()) {
    auto g = corpus::load(name);
    auto duals = dual_basis(g);
    Rng rng(808);
    for (int rep = 0; rep < 63; ++rep) {
      BoxSpec box;
      for (int id : g.ids()) {
        long long lo = rng.range(-1, 1);
        box.lower.set(id, lo);
        box.upper.set(id, lo + rng.range(0, 2));
      }
      box.shift = dual_combo(g, duals, rng, -1, 1);
      LatOptions ex;
      LatOptions de;
      de.engine = MinEngine::descent;
      check(min_box(g, box, ex).value == min_box(g, box, de).value,
            "engine agreement on " + name);
      ++boxes;
    }
  }
  check(boxes >= 500, "enough boxes");
  return std::to_string(boxes) + " seeded boxes";
}

std::string run_cli(const std::string& args) {
  const std::string cmd = std::string(PLUMB_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  check(pipe != nullptr, "popen");
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  check(WIFEXITED(status) && WEXITSTATUS(status) == 0, "selftest exit");
  return out;
}

std::string criterion9() {
  const std::string args = "selftest --count 6 --seed 3";
  std::string a = run_cli(args + " --jobs 1");
  std::string b = run_cli(args + " --jobs 1");
  std::string c = run_cli(args + " --jobs 4");
  check(!a.empty(), "selftest output");
  check(a == b, "repeat run bytes");
  check(a == c, "jobs 1 vs 4 bytes");
  check(a.find("\"pass\":true") != std::string::npos, "selftest passes");
  return "byte-identical across reruns and job counts";
}

}  // namespace

int main() {
  auto t0 = Clock::now();
  struct Entry {
    std::string name;
    std::function<std::string()> body;
    double limit;
  };
  std::vector<Entry> criteria = {
      {"lattice exactness", criterion1, 1},
      {"rationality consistency", criterion2, 10},
      {"base equivalence", criterion3, 60},
      {"generic bundle identity", criterion4, 300},
      {"zero twist and euler", criterion5, 300},
      {"blowup invariance", criterion6, 300},
      {"image dimension and vdim", criterion7, 300},
      {"engine agreement", criterion8, 120},
      {"determinism", criterion9, 300},
  };
  bool all_pass = true;
  int idx = 0;
  for (const auto& [name, body, limit] : criteria) {
    auto out = run_criterion(body, limit);
    all_pass = all_pass && out.pass;
    std::printf("criterion %2d %s %-26s %7.2fs  %s\n", ++idx, out.pass ? "PASS" : "FAIL",
                name.c_str(), out.secs, out.detail.c_str());
  }
  const double total = std::chrono::duration<double>(Clock::now() - t0).count();
  const bool wall_ok = total < 900.0 && !g_budget_violation;
  all_pass = all_pass && wall_ok;
  std::printf("criterion 10 %s %-26s %7.2fs  %s\n", wall_ok ? "PASS" : "FAIL", "suite budget",
              total,
              g_budget_violation ? "a blowup/tv budget was exceeded" : "no budget exceptions");
  return all_pass ? 0 : 1;
}
