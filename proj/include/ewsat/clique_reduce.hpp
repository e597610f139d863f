#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ewsat/boolfun.hpp"
#include "ewsat/clique.hpp"
#include "ewsat/common.hpp"
#include "ewsat/formula.hpp"

namespace ewsat {

/// Support of a violating assignment of weight <= d mapped to the first clause it violates.
using ViolationIndex = std::map<std::vector<int>, std::size_t>;

/// Only supports inside some vars(C) are considered; keys are sorted variable lists.
inline ViolationIndex violated_assignment_index(const Formula& phi, int d) {
  ViolationIndex index;
  for (std::size_t ci = 0; ci < phi.m(); ++ci) {
    const auto eff = effective_function(phi, phi[ci]);
    const int s = static_cast<int>(eff.vars.size());
    for (int w = 0; w <= std::min(d, s); ++w)
      for_each_combination(s, w, [&](const std::vector<int>& pos) {
        std::uint32_t row = 0;
        std::vector<int> support;
        for (int p : pos) {
          row |= std::uint32_t{1} << p;
          support.push_back(eff.vars[static_cast<std::size_t>(p)]);
        }
        if (!eff.fun.at(row)) {
          std::sort(support.begin(), support.end());
          index.emplace(std::move(support), ci);
        }
        return false;
      });
  }
  return index;
}

/// No indexed violator lies below `a`. Assumes `a` satisfies phi.
inline bool is_d_robust(const ViolationIndex& index, const Assignment& a) {
  for (const auto& [support, clause] : index) {
    bool below = true;
    for (int v : support) below = below && a.get(v);
    if (below) return false;
  }
  return true;
}

inline bool is_d_robust(const Formula& phi, const Assignment& a, int d) {
  return is_d_robust(violated_assignment_index(phi, d), a);
}

/// The family {FALSE, NAND1, ..., NANDd}; FALSE (arity 0) marks an empty violating support.
inline std::shared_ptr<const ConstraintFamily> nand_family(int d) {
  std::vector<BoolFun> fs{fn::constant(false)};
  for (int j = 1; j <= d; ++j) fs.push_back(fn::nand(j));
  return std::make_shared<const ConstraintFamily>("NAND<=" + std::to_string(d), std::move(fs));
}

/// Conjunction of NAND(support) over all indexed violators.
inline Formula build_phi_d(const Formula& phi, int d) {
  Formula out(phi.n(), nand_family(d));
  for (const auto& [support, clause] : violated_assignment_index(phi, d)) {
    Constraint c{support.size(), {}};
    for (int v : support) c.args.push_back(Term::variable(v));
    out.add(std::move(c));
  }
  return out;
}

inline constexpr int kExhaustiveColorVars = 8;

struct ColorCodeConfig {
  bool exhaustive = false;   // all k^n colorings (n <= 8)
  double delta = 0.01;       // failure probability per call in random mode
  std::uint64_t seed = 0;
  std::int64_t max_hyperedge_candidates = 50000000;
  DiagSink diag;
};

inline std::uint64_t random_colorings(int k, double delta) {
  return static_cast<std::uint64_t>(std::ceil(std::exp(static_cast<double>(k)) * std::log(1.0 / delta)));
}

struct ColorCodeResult {
  std::optional<Assignment> witness;
  bool certified_no = false;
  std::uint64_t colorings = 0;
};

/// Weight-k solutions of psi that avoid `blocked`, via k-colorings and hypercliques.
///
/// For each coloring of the usable variables into k parts, an r-set with one
/// vertex in each of r distinct parts is a hyperedge unless a clause whose
/// variables lie in those parts is violated by switching exactly that set on.
/// A k-hyperclique then is a rainbow weight-k solution. r is the formula arity
/// (at least 2). Variables with a violated unary clause are never usable.
inline ColorCodeResult colorcode_solve(const Formula& psi, int k, const ColorCodeConfig& cfg = {}, const Bits* blocked = nullptr) {
  ColorCodeResult res;
  const int n = psi.n();
  const auto finish = [&](const std::vector<int>& ones) {
    Assignment a = Assignment::from_ones(static_cast<std::size_t>(n), ones);
    if (!verify(psi, a, k)) throw InternalError("color coding produced an invalid witness");
    res.witness = std::move(a);
    return res;
  };

  std::vector<EffectiveConstraint> clauses;
  Bits usable(static_cast<std::size_t>(n));
  usable.set();
  if (blocked) usable -= *blocked;
  for (const auto& c : psi.constraints()) {
    auto eff = effective_function(psi, c);
    if (eff.vars.empty()) {
      if (!eff.fun.at(0)) {
        res.certified_no = true;
        return res;
      }
      continue;
    }
    if (eff.vars.size() == 1 && !eff.fun.at(1)) usable.reset(static_cast<std::size_t>(eff.vars[0]));
    clauses.push_back(std::move(eff));
  }
  const std::vector<int> pool = bits_to_list(usable);
  const int np = static_cast<int>(pool.size());
  if (k < 0 || k > np) {
    res.certified_no = true;
    return res;
  }
  const int r = std::max(psi.family().arity(), 2);

  if (k < r) {
    // Too few parts for cross-part hyperedges: enumerate weight-k sets directly.
    std::optional<std::vector<int>> hit;
    for_each_combination(np, k, [&](const std::vector<int>& idx) {
      std::vector<int> ones;
      for (int i : idx) ones.push_back(pool[static_cast<std::size_t>(i)]);
      if (!satisfies(psi, Assignment::from_ones(static_cast<std::size_t>(n), ones))) return false;
      hit = std::move(ones);
      return true;
    });
    if (hit) return finish(*hit);
    res.certified_no = true;
    return res;
  }

  if (binomial(np, r) > cfg.max_hyperedge_candidates)
    throw CapacityError("color coding would test C(" + std::to_string(np) + "," + std::to_string(r) + ") candidate hyperedges");
  if (k > 63) throw CapacityError("color coding supports k <= 63");
  if (cfg.exhaustive && np > kExhaustiveColorVars)
    throw CapacityError("exhaustive colorings are limited to " + std::to_string(kExhaustiveColorVars) + " variables");
  const std::uint64_t rounds = random_colorings(k, cfg.delta);
  // When all k^n colorings are no more than the random rounds, enumerate them and certify.
  bool exhaustive = cfg.exhaustive;
  if (!exhaustive) {
    std::uint64_t all = 1;
    for (int i = 0; i < np && all <= rounds; ++i) all *= static_cast<std::uint64_t>(k);
    exhaustive = all <= rounds;
  }

  std::vector<int> color(static_cast<std::size_t>(n), -1);
  const auto try_coloring = [&]() -> std::optional<std::vector<int>> {
    // Clauses grouped by the set of parts their variables touch.
    std::map<std::uint64_t, std::vector<const EffectiveConstraint*>> by_parts;
    for (const auto& c : clauses) {
      // Unusable variables stay 0 and do not touch any part.
      std::uint64_t mask = 0;
      for (int v : c.vars)
        if (color[static_cast<std::size_t>(v)] >= 0) mask |= std::uint64_t{1} << color[static_cast<std::size_t>(v)];
      by_parts[mask].push_back(&c);
    }
    Hypergraph h(r, np);
    Graph g(r == 2 ? np : 0);
    std::vector<int> e(static_cast<std::size_t>(r));
    for_each_combination(np, r, [&](const std::vector<int>& idx) {
      std::uint64_t mask = 0;
      for (int i : idx) mask |= std::uint64_t{1} << color[static_cast<std::size_t>(pool[static_cast<std::size_t>(i)])];
      if (std::popcount(mask) != r) return false;
      for (std::size_t j = 0; j < idx.size(); ++j) e[j] = pool[static_cast<std::size_t>(idx[j])];
      // Every clause inside these parts must hold under the assignment that switches on exactly e.
      for (std::uint64_t sub = mask;; sub = (sub - 1) & mask) {
        if (auto it = by_parts.find(sub); it != by_parts.end())
          for (const auto* c : it->second) {
            std::uint32_t row = 0;
            for (std::size_t p = 0; p < c->vars.size(); ++p)
              if (std::find(e.begin(), e.end(), c->vars[p]) != e.end()) row |= std::uint32_t{1} << p;
            if (!c->fun.at(row)) return false;
          }
        if (sub == 0) break;
      }
      if (r == 2)
        g.add_edge(idx[0], idx[1]);
      else
        h.add_edge(idx);
      return false;
    });
    auto clique = r == 2 ? find_clique_mm(g, k, CliqueOptions{.diag = cfg.diag}) : find_hyperclique(h, k);
    if (!clique) return std::nullopt;
    for (int& i : *clique) i = pool[static_cast<std::size_t>(i)];
    std::sort(clique->begin(), clique->end());
    return clique;
  };

  if (exhaustive) {
    std::vector<int> digits(static_cast<std::size_t>(np), 0);
    while (true) {
      ++res.colorings;
      for (int i = 0; i < np; ++i) color[static_cast<std::size_t>(pool[static_cast<std::size_t>(i)])] = digits[static_cast<std::size_t>(i)];
      if (auto hit = try_coloring()) return finish(*hit);
      int i = 0;
      while (i < np && ++digits[static_cast<std::size_t>(i)] == k) digits[static_cast<std::size_t>(i++)] = 0;
      if (i == np) break;
    }
    res.certified_no = true;
    return res;
  }

  for (std::uint64_t t = 0; t < rounds; ++t) {
    ++res.colorings;
    std::mt19937_64 rng(cfg.seed ^ t);
    std::uniform_int_distribution<int> part(0, k - 1);
    for (int v : pool) color[static_cast<std::size_t>(v)] = part(rng);
    if (auto hit = try_coloring()) return finish(*hit);
  }
  emit(cfg.diag, "color coding: no rainbow solution in " + std::to_string(rounds) + " colorings");
  return res;
}

struct RobustConfig {
  ColorCodeConfig color;
};

struct RobustResult {
  std::optional<Assignment> witness;
  bool certified_no = true;
  std::uint64_t nodes = 0;       // recursive calls
  std::uint64_t colorings = 0;
};

/// Weight-k solutions for families that avoid NAND_{d+1}.
///
/// A solution that is not d-robust contains the support of an indexed violator
/// plus one more variable of its clause; those are guessed and the rest is
/// solved recursively with a smaller target. d-robust solutions are exactly
/// the solutions of phi_d, found by color coding.
inline RobustResult solve_nand_d_avoiding(const Formula& phi, int k, int d, const RobustConfig& cfg = {}) {
  if (d < 1) throw UsageError("d must be >= 1");
  if (d == 2 && represents(phi.family(), fn::nand(3)))
    throw UsageError("family represents NAND3; the d = 2 clique pipeline does not apply");
  RobustResult res;
  const auto n = static_cast<std::size_t>(phi.n());

  auto rec = [&](auto& self, const Formula& cur, int target, const Bits& forced, int depth) -> std::optional<Assignment> {
    ++res.nodes;
    if (depth > k) throw InternalError("recursion deeper than k");
    if (target < 0) return std::nullopt;
    if (target == 0) {
      if (satisfies(cur, Assignment(n))) return Assignment(forced);
      return std::nullopt;
    }
    const auto index = violated_assignment_index(cur, d);
    for (const auto& [support, clause] : index) {
      const int next = target - static_cast<int>(support.size()) - 1;
      if (next < 0) continue;
      for (int x : vars_of(cur[clause])) {
        if (std::find(support.begin(), support.end(), x) != support.end()) continue;
        Bits ones = list_to_bits(n, support);
        ones.set(static_cast<std::size_t>(x));
        if (auto r = self(self, restrict_vars_to_one(cur, ones), next, forced | ones, depth + 1)) return r;
      }
    }
    ColorCodeConfig cc = cfg.color;
    cc.seed = cfg.color.seed ^ (res.nodes * 0x9E3779B97F4A7C15ULL);
    const auto found = colorcode_solve(build_phi_d(cur, d), target, cc, &forced);
    res.colorings += found.colorings;
    if (!found.certified_no && !found.witness) res.certified_no = false;
    if (!found.witness) return std::nullopt;
    return Assignment(found.witness->bits() | forced);
  };

  if (k < 0 || k > phi.n()) return res;
  if (auto a = rec(rec, phi, k, Bits(n), 0)) {
    if (!verify(phi, *a, k)) throw InternalError("clique pipeline produced an invalid witness");
    res.witness = std::move(a);
    res.certified_no = false;
  }
  return res;
}

}  // namespace ewsat
