// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails. Seeds, corpus sizes, tolerances and time limits
// are fixed below.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ewsat/ewsat.hpp"
#include "oracles.hpp"

using namespace ewsat;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

/// Collects the first failure message; later checks still run for the counts.
struct Check {
  bool ok = true;
  std::string first;
  void require(bool cond, const std::string& what) {
    if (cond || !ok) {
      ok = ok && cond;
      return;
    }
    ok = false;
    first = what;
  }
  Outcome done(const std::string& summary) const { return {ok, ok ? summary : summary + "; first failure: " + first}; }
};

std::string num(double v, int prec = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

std::shared_ptr<const ConstraintFamily> single(const BoolFun& f) { return rnd::family(f.name(), {f}); }

BoolFun dual_horn() {
  return BoolFun::from_predicate("DH", 3, [](std::uint32_t m) { return !(m & 1) || (m & 6); });
}

// ---------------------------------------------------------------------------
// 1. regime table

Outcome regime_table() {
  std::vector<BoolFun> three_sat;
  for (std::uint32_t bad = 0; bad < 8; ++bad)
    three_sat.push_back(BoolFun::from_predicate("C" + std::to_string(bad), 3, [bad](std::uint32_t m) { return m != bad; }));
  // rows (0,0,0), (1,0,1), (1,1,0) with y1 as the low bit
  const auto fprime = BoolFun::from_predicate("FP", 3, [](std::uint32_t m) { return m == 0 || m == 5 || m == 3; });
  const std::vector<std::tuple<std::string, std::shared_ptr<const ConstraintFamily>, RegimeTag>> table{
      {"{IMPL}", single(fn::impl()), RegimeTag::subexponential},
      {"{NAND2}", single(fn::nand(2)), RegimeTag::clique},
      {"{NAND3}", single(fn::nand(3)), RegimeTag::brute_force},
      {"3-SAT", rnd::family("3sat", three_sat), RegimeTag::brute_force},
      {"{OR2}", single(fn::or_fn(2)), RegimeTag::fpt},
      {"{EQ2}", single(fn::eq2()), RegimeTag::fpt},
      {"{y1=>(y2|y3)}", single(dual_horn()), RegimeTag::subexponential},
      {"{IMPL,f'}", rnd::family("implfp", {fn::impl(), fprime}), RegimeTag::subexponential},
  };
  Check c;
  int match = 0;
  for (const auto& [name, fam, want] : table) {
    const auto got = classify(*fam).tag;
    c.require(got == want, name + " classified " + to_string(got) + ", expected " + to_string(want));
    match += got == want;
  }
  return c.done(std::to_string(match) + "/" + std::to_string(table.size()) + " families match");
}

// ---------------------------------------------------------------------------
// 2. gcd criterion on Frobenius instances

Outcome gcd_criterion() {
  std::mt19937_64 rng(2002);
  Check c;
  int instances = 0, yes = 0, no = 0, extra_yes = 0, extra_no = 0;
  // in range: l <= 2, k <= 8, n <= 20; then k in [9, 20] to reach gcd-infeasible targets
  auto run = [&](std::int64_t k_lo, std::int64_t k_hi, int rounds, int& y, int& n_no, bool counted) {
    for (int it = 0; it < rounds; ++it) {
      const std::int64_t k = rnd::uniform(rng, static_cast<int>(k_lo), static_cast<int>(k_hi));
      const int ell = 2 * k <= 20 && rnd::coin(rng, 0.6) ? 2 : 1;
      std::vector<std::int64_t> w;
      std::vector<int> sizes;
      for (int i = 0; i < ell; ++i) {
        std::int64_t wi = 1;
        while (2 * (wi + 1) * (wi + 1) <= k && rnd::coin(rng, 0.7)) ++wi;
        w.push_back(wi);
        sizes.push_back(rnd::uniform(rng, static_cast<int>(k), 20 / ell));
      }
      auto fc = rnd::frobenius(rng, k, w, sizes, 2);
      const auto bad = frobenius_violation(fc.g, fc.view, k);
      c.require(!bad && fc.g.n <= 20, "generated instance violates P1-P4: " + bad.value_or("n > 20"));
      if (bad) continue;
      if (counted) ++instances;
      const bool gcd = frobenius_feasible(fc.view.layer_weight, k);
      const bool brute = oracle::wdi_feasible(fc.g);
      c.require(brute == gcd, "k=" + std::to_string(k) + ": brute force " + (brute ? "YES" : "NO") + ", gcd " + (gcd ? "YES" : "NO"));
      if (gcd) {
        ++y;
        c.require(verify_witness(fc.g, frobenius_witness(fc.g, fc.view, k)), "witness fails at k=" + std::to_string(k));
      } else {
        ++n_no;
      }
    }
  };
  run(2, 8, 60, yes, no, true);
  run(9, 20, 40, extra_yes, extra_no, false);
  c.require(instances >= 50, "only " + std::to_string(instances) + " instances");
  c.require(no + extra_no > 0, "no gcd-infeasible instance generated");
  return c.done(std::to_string(instances) + " instances k<=8 (" + std::to_string(yes) + " YES, " + std::to_string(no) +
                " NO) + 40 with k in [9,20] (" + std::to_string(extra_yes) + " YES, " + std::to_string(extra_no) + " NO)");
}

// ---------------------------------------------------------------------------
// 3. WDI three-way agreement

Outcome wdi_agreement() {
  std::mt19937_64 rng(3003);
  Check c;
  int yes = 0;
  for (int it = 0; it < 300; ++it) {
    const int n = rnd::uniform(rng, 1, 18);
    const std::int64_t k = rnd::uniform(rng, 0, 12);
    auto g = rnd::dag(rng, n, rnd::uniform(rng, 0, 30) / 100.0, rnd::uniform(rng, 1, 3), k);
    const auto f = solve_frobenius(g);
    const auto s = solve_sources(g);
    const auto b = solve_bruteforce(g);
    const bool truth = oracle::wdi_feasible(g);
    const std::string at = "instance " + std::to_string(it);
    c.require(f.has_value() == truth && s.has_value() == truth && b.has_value() == truth, at + ": verdict mismatch");
    for (const auto& w : {f, s, b})
      if (w) c.require(verify_witness(g, *w), at + ": witness fails");
    yes += truth;
  }
  return c.done("300 DAGs, " + std::to_string(yes) + " YES, 0 mismatches");
}

// ---------------------------------------------------------------------------
// 4. implication-graph pipeline on NAND2-avoiding formulas

std::shared_ptr<const ConstraintFamily> random_nand2_free_family(std::mt19937_64& rng) {
  std::vector<BoolFun> fs;
  while (fs.size() < 2) {
    const int r = 2 + static_cast<int>(rng() % 2);
    Bits t(std::size_t{1} << r);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng() % 3 != 0;
    BoolFun f("f" + std::to_string(fs.size()), r, t);
    if (!find_restriction(f, fn::nand(2))) fs.push_back(f);
  }
  return rnd::family("R", fs);
}

Outcome impl_pipeline() {
  std::mt19937_64 rng(4004);
  Check c;
  // half the draws use fixed families whose minimal extensions branch
  const auto dh4 = BoolFun::from_predicate("DH4", 4, [](std::uint32_t m) { return !(m & 1) || (m & 14); });
  const std::vector<std::shared_ptr<const ConstraintFamily>> branching{
      single(dual_horn()), rnd::family("dh4-impl", {dh4, fn::impl()}), rnd::family("dh-or", {dual_horn(), fn::or_fn(2)})};
  int sat = 0, unsat = 0, found = 0, found_big = 0, p1_trips = 0, certified = 0;
  std::uint64_t seed = 0, trials = 0;
  while (sat < 200) {
    auto fam = rnd::coin(rng, 0.5) ? random_nand2_free_family(rng) : branching[rng() % branching.size()];
    const int n = rnd::uniform(rng, 2, 12);
    auto phi = rnd::formula(rng, fam, n, rnd::uniform(rng, 1, 2 * n));
    const int k = rnd::uniform(rng, 0, std::min(n, 5));
    const bool truth = oracle::feasible(phi, k);
    TrialConfig cfg;
    cfg.seed = seed++;
    const auto r = solve_nand2_avoiding(phi, k, cfg);
    trials += r.trials;
    if (r.max_considered > static_cast<std::uint64_t>(std::max(k, 1))) ++p1_trips;
    if (r.witness) c.require(truth && verify(phi, *r.witness, k), "YES without a valid witness");
    if (!truth) {
      ++unsat;
      certified += r.certified_no;
      c.require(!r.witness, "YES on an unsatisfiable formula");
      continue;
    }
    ++sat;
    if (r.witness) {
      ++found;
      ++found_big;
      continue;
    }
    c.require(!r.certified_no, "certified NO on a satisfiable formula");
    TrialConfig big = cfg;
    big.budget = 100 * default_budget(k, fam->arity());
    const auto r2 = solve_nand2_avoiding(phi, k, big);
    if (r2.max_considered > static_cast<std::uint64_t>(std::max(k, 1))) ++p1_trips;
    if (r2.witness && verify(phi, *r2.witness, k)) ++found_big;
  }
  c.require(found * 100 >= sat * 95, "default budget found " + std::to_string(found) + "/200");
  c.require(found_big == sat, "x100 budget found " + std::to_string(found_big) + "/200");
  c.require(p1_trips == 0, std::to_string(p1_trips) + " runs exceeded k considerations per vertex");
  return c.done("default " + std::to_string(found) + "/200 (>= 190 required), x100 " + std::to_string(found_big) +
                "/200, unsat sub-corpus " + std::to_string(unsat) + " with 0 YES (" + std::to_string(certified) +
                " certified), " + std::to_string(trials) + " trials at default budget, P1 trips " + std::to_string(p1_trips));
}

// ---------------------------------------------------------------------------
// 5. color-coding pipeline on NAND3-avoiding formulas

std::shared_ptr<const ConstraintFamily> random_nand3_free_family(std::mt19937_64& rng) {
  while (true) {
    std::vector<BoolFun> fs;
    for (int i = 0; i < 2; ++i) {
      const int r = 2 + static_cast<int>(rng() % 2);
      Bits t(std::size_t{1} << r);
      for (std::size_t j = 0; j < t.size(); ++j) t[j] = rng() % 4 != 0;
      fs.emplace_back("f" + std::to_string(i), r, t);
    }
    auto fam = rnd::family("R", fs);
    if (!represents(*fam, fn::nand(3))) return fam;
  }
}

/// No sub-assignment of weight <= d falsifies phi.
bool robust(const Formula& phi, oracle::Mask a, int d) {
  for (oracle::Mask b = a;; b = (b - 1) & a) {
    if (std::popcount(b) <= d && !oracle::eval(phi, b)) return false;
    if (b == 0) return true;
  }
}

Outcome robust_pipeline() {
  constexpr double kDelta = 0.01;
  std::mt19937_64 rng(5005);
  Check c;
  int yes = 0, misses = 0, robust_checked = 0;
  for (int it = 0; it < 200; ++it) {
    auto fam = random_nand3_free_family(rng);
    const int n = rnd::uniform(rng, 2, 10);
    auto phi = rnd::formula(rng, fam, n, rnd::uniform(rng, 1, 2 * n));
    const int k = rnd::uniform(rng, 0, std::min(n, 4));
    const std::string at = "instance " + std::to_string(it);

    RobustConfig cfg;
    cfg.color.delta = kDelta;
    cfg.color.seed = static_cast<std::uint64_t>(it);
    const auto r = solve_nand_d_avoiding(phi, k, 2, cfg);
    const bool truth = oracle::feasible(phi, k);
    yes += truth;
    if (r.witness) c.require(truth && verify(phi, *r.witness, k), at + ": YES without a valid witness");
    if (truth && !r.witness) {
      ++misses;
      c.require(!r.certified_no, at + ": certified NO on a satisfiable formula");
    }

    // phi_2 properties, by enumeration of all assignments
    const auto phid = build_phi_d(phi, 2);
    for (oracle::Mask a = 0; a < (1u << n); ++a) {
      const bool in_phi = oracle::eval(phi, a);
      if (oracle::eval(phid, a)) c.require(in_phi, at + ": phi_2 solution violates phi (P1)");
      if (in_phi && robust(phi, a, 2)) {
        ++robust_checked;
        c.require(oracle::eval(phid, a), at + ": 2-robust solution violates phi_2 (P2)");
      }
    }
  }
  const double expect = kDelta * yes;
  const int tolerance = static_cast<int>(std::ceil(expect + 3 * std::sqrt(expect)));
  c.require(misses <= tolerance, std::to_string(misses) + " misses exceed tolerance " + std::to_string(tolerance));
  return c.done("200 instances, " + std::to_string(yes) + " YES, misses " + std::to_string(misses) + " (tolerance " +
                std::to_string(tolerance) + "), P1/P2 over " + std::to_string(robust_checked) + " robust solutions");
}

// ---------------------------------------------------------------------------
// 6. 0-restriction properties, exhaustive over arity <= 4

/// f(a_S) with S given as a row mask.
bool on(const BoolFun& f, std::uint32_t s) { return f.at(s); }

Outcome restriction_sweep() {
  Check c;
  std::uint64_t functions = 0, impl_cases = 0, subset_cases = 0, nand_cases = 0;
  const auto impl = fn::impl();
  std::vector<BoolFun> nands;
  for (int d = 0; d <= 4; ++d) nands.push_back(d >= 2 ? fn::nand(d) : fn::constant(true));

  auto replays_as_zero_restriction = [](const BoolFun& f, const BoolFun& g, const std::optional<ArgMap>& m) {
    return m && !m->uses_const1() && restrict(f, *m) == g;
  };

  for (int r = 1; r <= 4; ++r) {
    const std::uint32_t rows = 1u << r;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << rows); ++code) {
      ++functions;
      const BoolFun f("f", r, Bits(rows, static_cast<unsigned long>(code)));
      if (!is_zero_valid(f)) continue;
      const std::string tag = "arity " + std::to_string(r) + " code " + std::to_string(code);
      const auto impl0 = find_zero_restriction(f, impl);
      if (impl0) c.require(replays_as_zero_restriction(f, impl, impl0), tag + ": IMPL 0-restriction does not replay");

      // a 0-valid function containing IMPL contains it as a 0-restriction
      if (find_restriction(f, impl)) {
        ++impl_cases;
        c.require(impl0.has_value(), tag + ": IMPL only with a constant 1");
      }
      if (impl0) continue;

      // without IMPL as a 0-restriction, satisfying sets are closed under differences
      for (std::uint32_t t = 0; t < rows; ++t)
        for (std::uint32_t s = t;; s = (s - 1) & t) {
          if (on(f, s) && on(f, t)) {
            ++subset_cases;
            c.require(on(f, t & ~s), tag + ": f(S) = f(T) = 1 but f(T \\ S) = 0");
          }
          if (s == 0) break;
        }

      // ... and every NAND_d restriction is already a 0-restriction
      for (int d = 2; d <= r; ++d) {
        if (!find_restriction(f, nands[static_cast<std::size_t>(d)])) continue;
        ++nand_cases;
        const auto m = find_zero_restriction(f, nands[static_cast<std::size_t>(d)]);
        c.require(replays_as_zero_restriction(f, nands[static_cast<std::size_t>(d)], m),
                  tag + ": NAND" + std::to_string(d) + " only with a constant 1");
      }
    }
  }
  // the (NAND3, NAND2) pair: decided by the search above, pinned here
  const auto pair = find_zero_restriction(fn::nand(3), fn::nand(2));
  const std::string pair_text = pair ? pair->to_string() : std::string("none");
  c.require(pair_text == "(x1,x1,x2)", "NAND3 -> NAND2 0-restriction is " + pair_text);
  return c.done(std::to_string(functions) + " functions; IMPL premise " + std::to_string(impl_cases) + ", subset pairs " +
                std::to_string(subset_cases) + ", NAND premise " + std::to_string(nand_cases) + "; NAND3 -> NAND2 via " +
                pair_text);
}

// ---------------------------------------------------------------------------
// 7. clique -> WDI -> unit digraph -> SAT(IMPL)

/// Exact closed-set search with propagation: is there a set of total weight k
/// closed under the arcs? Branches on vertices in index order; taking a vertex
/// takes its descendants, dropping it drops its ancestors.
bool closed_set_exists(int n, const std::vector<std::pair<int, int>>& arcs, const std::vector<std::int64_t>& w, std::int64_t k) {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n)), in(static_cast<std::size_t>(n));
  for (const auto& [u, v] : arcs) {
    out[static_cast<std::size_t>(u)].push_back(v);
    in[static_cast<std::size_t>(v)].push_back(u);
  }
  std::vector<int> state(static_cast<std::size_t>(n), -1);
  auto rec = [&](auto& self, int v, std::int64_t taken) -> bool {
    if (taken > k) return false;
    while (v < n && state[static_cast<std::size_t>(v)] != -1) ++v;
    if (v == n) return taken == k;
    for (int value : {1, 0}) {
      std::vector<int> changed{v}, stack{v};
      state[static_cast<std::size_t>(v)] = value;
      std::int64_t add = value ? w[static_cast<std::size_t>(v)] : 0;
      bool conflict = false;
      while (!stack.empty() && !conflict) {
        const int x = stack.back();
        stack.pop_back();
        for (int y : value ? out[static_cast<std::size_t>(x)] : in[static_cast<std::size_t>(x)]) {
          auto& s = state[static_cast<std::size_t>(y)];
          if (s == value) continue;
          if (s != -1) {
            conflict = true;
            break;
          }
          s = value;
          if (value) add += w[static_cast<std::size_t>(y)];
          changed.push_back(y);
          stack.push_back(y);
        }
      }
      if (!conflict && self(self, v + 1, taken + add)) return true;
      for (int x : changed) state[static_cast<std::size_t>(x)] = -1;
    }
    return false;
  };
  return rec(rec, 0, 0);
}

Outcome clique_chain() {
  std::mt19937_64 rng(7007);
  Check c;
  int yes = 0;
  for (int it = 0; it < 100; ++it) {
    const int n = rnd::uniform(rng, 3, 10);
    const auto g = rnd::graph(rng, n, 0.45);
    const std::string at = "graph " + std::to_string(it);
    const bool clique = oracle::has_clique(g, 3);

    const auto wdi = clique_to_wdi(g, 3);
    c.require(wdi.k == 15, at + ": k' = " + std::to_string(wdi.k));
    bool wdi_yes = closed_set_exists(wdi.n, wdi.arcs, wdi.weight, wdi.k);
    if (wdi.n <= 24) c.require(oracle::wdi_feasible(wdi) == wdi_yes, at + ": WDI oracles disagree");

    const auto unit = wdi_to_unit(wdi);
    const auto phi = digraph_to_sat_impl(unit.graph);
    // the formula read back as implication arcs
    std::vector<std::pair<int, int>> implications;
    for (const auto& con : phi.constraints()) {
      c.require(phi.function_of(con) == fn::impl() && con.args.size() == 2 && con.args[0].var >= 0 && con.args[1].var >= 0,
                at + ": non-IMPL constraint");
      implications.emplace_back(con.args[0].var, con.args[1].var);
    }
    const bool sat_yes = closed_set_exists(phi.n(), implications, std::vector<std::int64_t>(static_cast<std::size_t>(phi.n()), 1),
                                           static_cast<std::int64_t>(unit.graph.k));
    c.require(clique == wdi_yes && wdi_yes == sat_yes, at + ": clique " + std::to_string(clique) + ", WDI " +
                                                           std::to_string(wdi_yes) + ", SAT(IMPL) " + std::to_string(sat_yes));
    yes += clique;
  }
  return c.done("100 graphs, " + std::to_string(yes) + " with a triangle, all three sides agree at k' = 15");
}

// ---------------------------------------------------------------------------
// 8. matrix-product clique detection

Outcome clique_mm() {
  std::mt19937_64 rng(8008);
  Check c;
  int yes = 0, fallbacks = 0;
  CliqueOptions opt;
  opt.diag = [&](const std::string&) { ++fallbacks; };
  for (int it = 0; it < 100; ++it) {
    const int n = rnd::uniform(rng, 1, 40);
    const int k = rnd::uniform(rng, 1, 6);
    const auto g = rnd::graph(rng, n, rnd::uniform(rng, 30, 70) / 100.0);
    const auto mm = find_clique_mm(g, k, opt);
    const bool truth = oracle::has_clique(g, k);
    c.require(mm.has_value() == truth, "graph " + std::to_string(it) + ": verdict mismatch");
    if (mm) c.require(static_cast<int>(mm->size()) == k && is_clique(g, *mm), "graph " + std::to_string(it) + ": not a k-clique");
    yes += truth;
  }
  c.require(fallbacks == 0, std::to_string(fallbacks) + " runs fell back to brute force");
  return c.done("100 graphs, " + std::to_string(yes) + " YES, 0 mismatches");
}

// ---------------------------------------------------------------------------
// 9. gadget uniqueness

std::vector<oracle::Mask> light_solutions(const Formula& phi, int kmax) {
  std::vector<oracle::Mask> out;
  for (oracle::Mask a = 0; a < (1u << phi.n()); ++a)
    if (std::popcount(a) <= kmax && oracle::eval(phi, a)) out.push_back(a);
  return out;
}

Outcome gadgets() {
  std::mt19937_64 rng(9009);
  Check c;
  int const01 = 0, const0 = 0;
  for (int tries = 0; tries < 20000 && (const01 < 20 || const0 < 20); ++tries) {
    const int r = rnd::uniform(rng, 1, 4);
    Bits t(std::size_t{1} << r);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = rnd::coin(rng, 0.5);
    const BoolFun f("f", r, t);
    if (!find_restriction(f, fn::impl()) && !find_restriction(f, fn::nand(2))) continue;
    const std::string tag = "f = " + f.to_string();
    if (!is_zero_valid(f)) {
      // y = 1 alone has weight 1
      const int k = rnd::uniform(rng, 1, 4);
      if (const01 >= 20) continue;
      ++const01;
      const auto g = gadget_const01(f, k);
      const oracle::Mask want = oracle::Mask{1} << g.y;
      c.require(light_solutions(g.fragment, k) == std::vector<oracle::Mask>{want}, tag + " const01 k'=" + std::to_string(k));
    } else {
      const int k = rnd::uniform(rng, 0, 4);
      if (const0 >= 20) continue;
      ++const0;
      const auto g = gadget_const0(f, k);
      c.require(light_solutions(g.fragment, k) == std::vector<oracle::Mask>{0}, tag + " const0 k=" + std::to_string(k));
    }
  }
  c.require(const01 == 20 && const0 == 20, "too few eligible functions sampled");
  return c.done(std::to_string(const01) + " constant-0/1 and " + std::to_string(const0) +
                " constant-0 gadgets, each with a unique light solution");
}

// ---------------------------------------------------------------------------
// 10. layered Frobenius instances at n = 2000, k = 100

Outcome frobenius_smoke() {
  std::mt19937_64 rng(10010);
  Check c;
  // layer weights obey 2 w^2 <= k; the last case has gcd 3, which does not divide 100
  const std::vector<std::vector<std::int64_t>> cases{{1, 2, 3}, {2, 5, 7}, {4, 6}, {3, 6}};
  std::string verdicts;
  for (const auto& w : cases) {
    std::vector<int> sizes(w.size(), 2000 / static_cast<int>(w.size()));
    sizes.back() += 2000 - std::accumulate(sizes.begin(), sizes.end(), 0);
    auto fc = rnd::frobenius(rng, 100, w, sizes, 3);
    const auto bad = frobenius_violation(fc.g, fc.view, 100);
    c.require(!bad, "generated instance violates P1-P4: " + bad.value_or(""));
    const auto s = solve_frobenius(fc.g);
    c.require(s.has_value() == frobenius_feasible(w, 100), "verdict differs from the gcd criterion");
    if (s) c.require(verify_witness(fc.g, *s), "witness fails");
    verdicts += std::string(verdicts.empty() ? "" : " ") + (s ? "YES" : "NO");
  }
  return c.done("4 instances n=2000 k=100 (" + verdicts + ")");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "regime table", 1, regime_table},
      {2, "gcd criterion on Frobenius instances", 60, gcd_criterion},
      {3, "WDI solvers agree", 120, wdi_agreement},
      {4, "implication-graph pipeline", 600, impl_pipeline},
      {5, "color-coding pipeline", 600, robust_pipeline},
      {6, "0-restriction sweep", 300, restriction_sweep},
      {7, "clique to SAT(IMPL) chain", 60, clique_chain},
      {8, "matrix-product clique", 60, clique_mm},
      {9, "gadget uniqueness", 60, gadgets},
      {10, "Frobenius performance smoke", 60, frobenius_smoke},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < cr.limit_s;
    const bool pass = o.ok && in_time;
    failed += !pass;
    std::printf("%s %2d %s: %s [%ss, limit %ss%s]\n", pass ? "PASS" : "FAIL", cr.id, cr.name, o.detail.c_str(),
                num(secs).c_str(), num(cr.limit_s, 0).c_str(), in_time ? "" : ", too slow");
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
