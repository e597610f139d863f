#include <gtest/gtest.h>

#include <random>

#include "ewsat/impl_reduce.hpp"
#include "oracles.hpp"

using namespace ewsat;

namespace {

BoolFun dual_horn() {
  return BoolFun::from_predicate("DH", 3, [](std::uint32_t m) { return !(m & 1) || (m & 6); });
}

Constraint c2(std::size_t f, int a, int b) { return {f, {Term::variable(a), Term::variable(b)}}; }

std::size_t first_choice(std::size_t) { return 0; }

/// Random NAND2-avoiding families: a fixed set plus sampled functions of arity <= 3.
std::shared_ptr<const ConstraintFamily> random_nand2_free_family(std::mt19937_64& rng, bool zero_valid_only) {
  std::vector<BoolFun> fs;
  while (fs.size() < 2) {
    const int r = 2 + static_cast<int>(rng() % 2);
    Bits t(std::size_t{1} << r);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng() % 3 != 0;
    if (zero_valid_only) t[0] = true;
    BoolFun f("f" + std::to_string(fs.size()), r, t);
    if (!find_restriction(f, fn::nand(2))) fs.push_back(f);
  }
  return rnd::family("R", fs);
}

}  // namespace

TEST(ImplReduce, DefaultBudget) {
  EXPECT_EQ(default_budget(2, 2), 16u);
  EXPECT_EQ(default_budget(3, 3), 729u);
  EXPECT_EQ(default_budget(0, 3), 1u);
  EXPECT_EQ(default_budget(10, 3), kMaxDefaultBudget);
}

TEST(ImplReduce, SingleImplicationGraph) {
  Formula phi(2, rnd::family("impl", {fn::impl()}), {c2(0, 0, 1)});
  auto g = build_graph_trial(phi, 2, first_choice);
  EXPECT_EQ(g.graph.arcs, (std::vector<std::pair<int, int>>{{0, 1}}));
  EXPECT_FALSE(g.branched);
  EXPECT_EQ(g.alive.count(), 2u);
}

TEST(ImplReduce, EmptyFormulaGivesEdgelessGraph) {
  Formula phi(4, rnd::family("impl", {fn::impl()}));
  auto g = build_graph_trial(phi, 2, first_choice);
  EXPECT_TRUE(g.graph.arcs.empty());
  EXPECT_EQ(g.alive.count(), 4u);
}

TEST(ImplReduce, TwoCycleOfImplications) {
  Formula phi(2, rnd::family("impl", {fn::impl()}), {c2(0, 0, 1), c2(0, 1, 0)});
  auto g = build_graph_trial(phi, 2, first_choice);
  EXPECT_EQ(g.graph.arcs, (std::vector<std::pair<int, int>>{{0, 1}, {1, 0}}));
  auto c = condense(g.graph);
  EXPECT_EQ(c.dag.n, 1);
}

TEST(ImplReduce, RejectsNonZeroValidInput) {
  Formula phi(2, rnd::family("or", {fn::or_fn(2)}), {c2(0, 0, 1)});
  EXPECT_THROW(build_graph_trial(phi, 2, first_choice), UsageError);
}

TEST(ImplReduce, BlockedVariablesStayOutOfTheGraph) {
  Formula phi(3, rnd::family("impl", {fn::impl()}), {c2(0, 0, 1), c2(0, 2, 1)});
  Bits blocked(3);
  blocked.set(1);
  auto g = build_graph_trial(phi, 3, first_choice, &blocked);
  // x1 and x3 both need x2, which is unavailable
  EXPECT_EQ(g.alive.count(), 0u);
  EXPECT_TRUE(g.graph.arcs.empty());
}

TEST(ImplReduce, ClosedSetsOfBuiltGraphsSatisfyFormula) {
  std::mt19937_64 rng(41);
  int checked = 0;
  for (int it = 0; it < 150; ++it) {
    auto fam = random_nand2_free_family(rng, true);
    const int n = rnd::uniform(rng, 2, 12);
    auto phi = rnd::formula(rng, fam, n, rnd::uniform(rng, 1, 2 * n));
    const int k = rnd::uniform(rng, 1, 5);
    std::mt19937_64 trial_rng(it);
    auto g = build_graph_trial(phi, k, [&](std::size_t s) { return static_cast<std::size_t>(trial_rng() % s); });
    for (int c : g.considered) ASSERT_LE(c, k);
    for (const auto& [u, v] : g.graph.arcs) {
      ASSERT_TRUE(g.alive.test(static_cast<std::size_t>(u)));
      ASSERT_TRUE(g.alive.test(static_cast<std::size_t>(v)));
    }
    oracle::Mask alive = 0;
    for (int v = 0; v < n; ++v)
      if (g.alive.test(static_cast<std::size_t>(v))) alive |= 1u << v;
    for (oracle::Mask s = 0; s < (1u << n); ++s) {
      if ((s & ~alive) || !oracle::closed(g.graph, s)) continue;
      ++checked;
      ASSERT_TRUE(oracle::eval(phi, s)) << "iteration " << it << " set " << s;
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(ImplReduce, SolveExamples) {
  auto fam = rnd::family("impl", {fn::impl()});
  Formula phi(2, fam, {c2(0, 0, 1)});
  auto r2 = solve_nand2_avoiding(phi, 2);
  ASSERT_TRUE(r2.witness);
  EXPECT_EQ(r2.witness->ones(), (std::vector<int>{0, 1}));
  auto r1 = solve_nand2_avoiding(phi, 1);
  ASSERT_TRUE(r1.witness);
  EXPECT_EQ(r1.witness->ones(), std::vector<int>{1});

  Formula dh(3, rnd::family("dh", {dual_horn()}),
             {Constraint{0, {Term::variable(0), Term::variable(1), Term::variable(2)}}});
  auto r = solve_nand2_avoiding(dh, 2);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(verify(dh, *r.witness, 2));
}

TEST(ImplReduce, RejectsNand2Families) {
  Formula phi(2, rnd::family("nand", {fn::nand(2)}), {c2(0, 0, 1)});
  EXPECT_THROW(solve_nand2_avoiding(phi, 1), UsageError);
}

TEST(ImplReduce, ExhaustiveModeIsExact) {
  std::mt19937_64 rng(42);
  int yes = 0, no = 0;
  for (int it = 0; it < 200; ++it) {
    auto fam = random_nand2_free_family(rng, false);
    const int n = rnd::uniform(rng, 1, 8);
    auto phi = rnd::formula(rng, fam, n, rnd::uniform(rng, 1, 2 * n));
    const int k = rnd::uniform(rng, 0, std::min(n, 5));
    TrialConfig cfg;
    cfg.exhaustive = true;
    auto r = solve_nand2_avoiding(phi, k, cfg);
    const bool truth = oracle::feasible(phi, k);
    ASSERT_EQ(r.witness.has_value(), truth) << "iteration " << it;
    if (truth) {
      ++yes;
      EXPECT_TRUE(verify(phi, *r.witness, k));
    } else {
      ++no;
      EXPECT_TRUE(r.certified_no);
    }
  }
  EXPECT_GT(yes, 40);
  EXPECT_GT(no, 20);
}

TEST(ImplReduce, RandomModeIsSoundAndMostlyComplete) {
  std::mt19937_64 rng(43);
  int yes = 0, found = 0;
  for (int it = 0; it < 150; ++it) {
    auto fam = random_nand2_free_family(rng, false);
    const int n = rnd::uniform(rng, 2, 12);
    auto phi = rnd::formula(rng, fam, n, rnd::uniform(rng, 1, 2 * n));
    const int k = rnd::uniform(rng, 0, std::min(n, 5));
    TrialConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(it);
    auto r = solve_nand2_avoiding(phi, k, cfg);
    const bool truth = oracle::feasible(phi, k);
    if (r.witness) {
      ASSERT_TRUE(truth);
      EXPECT_TRUE(verify(phi, *r.witness, k));
    }
    if (!truth) {
      EXPECT_FALSE(r.witness);
    }
    if (r.certified_no) {
      EXPECT_FALSE(truth);
    }
    EXPECT_LE(r.max_considered, static_cast<std::uint64_t>(std::max(k, 1)));
    yes += truth;
    found += r.witness.has_value();
  }
  EXPECT_GT(yes, 30);
  EXPECT_GE(found * 100, yes * 95);
}

TEST(ImplReduce, SeedDeterminismAndThreadIndependence) {
  std::mt19937_64 rng(44);
  for (int it = 0; it < 40; ++it) {
    auto fam = random_nand2_free_family(rng, true);
    const int n = rnd::uniform(rng, 4, 12);
    auto phi = rnd::formula(rng, fam, n, rnd::uniform(rng, 2, 2 * n));
    const int k = rnd::uniform(rng, 1, 5);
    TrialConfig a;
    a.seed = 99;
    a.budget = 50;
    TrialConfig b = a;
    b.threads = 4;
    auto ra = solve_nand2_avoiding(phi, k, a);
    auto ra2 = solve_nand2_avoiding(phi, k, a);
    auto rb = solve_nand2_avoiding(phi, k, b);
    ASSERT_EQ(ra.witness.has_value(), rb.witness.has_value());
    if (ra.witness) {
      EXPECT_EQ(ra.witness->ones(), rb.witness->ones());
      EXPECT_EQ(ra.witness->ones(), ra2.witness->ones());
    }
    EXPECT_EQ(ra.trials, rb.trials);
    EXPECT_EQ(ra.trials, ra2.trials);
  }
}

TEST(ImplReduce, ExhaustiveCapacityGuard) {
  Formula phi(9, rnd::family("impl", {fn::impl()}));
  TrialConfig cfg;
  cfg.exhaustive = true;
  EXPECT_THROW(solve_nand2_avoiding(phi, 2, cfg), CapacityError);
}

TEST(ImplReduce, ChoiceTreeEnumeratesAllPaths) {
  // Two nested binary choices, the second only after pick 1 at the first.
  detail::ChoiceTree tree;
  std::vector<std::vector<std::size_t>> seen;
  while (!tree.exhausted()) {
    auto prefix = tree.next_prefix();
    std::vector<std::pair<std::size_t, std::size_t>> path;
    const std::size_t a = prefix.size() > 0 ? prefix[0] : 0;
    path.emplace_back(2, a);
    std::vector<std::size_t> picks{a};
    if (a == 1) {
      const std::size_t b = prefix.size() > 1 ? prefix[1] : 0;
      path.emplace_back(3, b);
      picks.push_back(b);
    }
    seen.push_back(picks);
    tree.record(path);
    ASSERT_LT(seen.size(), 10u);
  }
  EXPECT_EQ(seen, (std::vector<std::vector<std::size_t>>{{0}, {1, 0}, {1, 1}, {1, 2}}));
}
