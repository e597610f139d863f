#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ewsat/boolfun.hpp"
#include "ewsat/clique_reduce.hpp"
#include "ewsat/common.hpp"
#include "ewsat/formula.hpp"
#include "ewsat/impl_reduce.hpp"

namespace ewsat {

enum class Method { oracle, frobenius_pipeline, clique_pipeline, bruteforce };
enum class Certainty { certified, monte_carlo };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::oracle: return "oracle";
    case Method::frobenius_pipeline: return "frobenius-pipeline";
    case Method::clique_pipeline: return "clique-pipeline";
    case Method::bruteforce: return "bruteforce";
  }
  return "?";
}

inline std::string to_string(Certainty c) { return c == Certainty::certified ? "certified" : "monte-carlo"; }

struct Answer {
  std::optional<Assignment> witness;  // present iff the verdict is YES
  RegimeTag regime = RegimeTag::fpt;
  Method method = Method::oracle;
  Certainty certainty = Certainty::certified;
  std::uint64_t trials = 0;  // constructions or colorings
  std::uint64_t nodes = 0;   // recursion nodes / branches

  bool yes() const { return witness.has_value(); }
};

enum class MethodChoice { automatic, oracle, bruteforce, implication, clique };

struct SolveConfig {
  MethodChoice method = MethodChoice::automatic;
  std::uint64_t budget = 0;  // 0: default per-branch budget
  std::uint64_t seed = 0;
  int threads = 1;
  bool exhaustive = false;   // deterministic replay / all colorings on small inputs
  double delta = 0.01;
  /// BruteForce regime: use the clique pipeline with d = nand_order instead of enumeration.
  bool hyperclique_speedup = false;
  std::int64_t max_enumeration = 200000000;  // C(n,k) guard for enumeration
  DiagSink diag;
};

inline constexpr int kOracleMaxVars = 24;

namespace detail {

inline std::optional<Assignment> enumerate_weight_k(const Formula& phi, int k) {
  if (k < 0 || k > phi.n()) return std::nullopt;
  std::optional<Assignment> hit;
  Assignment a(static_cast<std::size_t>(phi.n()));
  for_each_combination(phi.n(), k, [&](const std::vector<int>& ones) {
    for (int v : ones) a.set(v);
    if (satisfies(phi, a)) {
      hit = a;
      return true;
    }
    for (int v : ones) a.set(v, false);
    return false;
  });
  return hit;
}

}  // namespace detail

/// Exact answer by enumerating all weight-k assignments in lexicographic order (n <= 24).
inline Answer solve_oracle(const Formula& phi, int k) {
  if (phi.n() > kOracleMaxVars)
    throw CapacityError("oracle is limited to n <= " + std::to_string(kOracleMaxVars) + ", got n = " + std::to_string(phi.n()));
  Answer ans;
  ans.regime = classify(phi.family()).tag;
  ans.method = Method::oracle;
  ans.witness = detail::enumerate_weight_k(phi, k);
  return ans;
}

/// Routes (phi, k) to the pipeline matching the family's regime.
inline Answer solve(const Formula& phi, int k, const SolveConfig& cfg = {}) {
  Answer ans;
  ans.regime = classify(phi.family()).tag;
  MethodChoice m = cfg.method;
  if (m == MethodChoice::automatic) {
    switch (ans.regime) {
      case RegimeTag::fpt:
      case RegimeTag::subexponential: m = MethodChoice::implication; break;
      case RegimeTag::clique: m = MethodChoice::clique; break;
      case RegimeTag::brute_force: m = cfg.hyperclique_speedup ? MethodChoice::clique : MethodChoice::bruteforce; break;
    }
  }

  switch (m) {
    case MethodChoice::oracle: {
      auto o = solve_oracle(phi, k);
      o.regime = ans.regime;
      return o;
    }
    case MethodChoice::automatic:
    case MethodChoice::bruteforce: {
      if (binomial(phi.n(), std::max(k, 0)) > cfg.max_enumeration)
        throw CapacityError("enumeration of C(" + std::to_string(phi.n()) + "," + std::to_string(k) + ") assignments exceeds the guard");
      ans.method = Method::bruteforce;
      ans.witness = detail::enumerate_weight_k(phi, k);
      return ans;
    }
    case MethodChoice::implication: {
      TrialConfig tc{cfg.budget, cfg.seed, cfg.exhaustive, cfg.threads, cfg.diag};
      auto r = solve_nand2_avoiding(phi, k, tc);
      ans.method = Method::frobenius_pipeline;
      ans.witness = std::move(r.witness);
      ans.certainty = ans.yes() || r.certified_no ? Certainty::certified : Certainty::monte_carlo;
      ans.trials = r.trials;
      ans.nodes = r.branches;
      return ans;
    }
    case MethodChoice::clique: {
      int d = 2;
      if (ans.regime == RegimeTag::brute_force) {
        d = nand_order(phi.family());
        if (d >= phi.family().arity())
          throw UsageError("family represents NAND" + std::to_string(d) + " at full arity; no hyperclique speedup applies");
      }
      RobustConfig rc;
      rc.color.exhaustive = cfg.exhaustive;
      rc.color.delta = cfg.delta;
      rc.color.seed = cfg.seed;
      rc.color.diag = cfg.diag;
      auto r = solve_nand_d_avoiding(phi, k, d, rc);
      ans.method = Method::clique_pipeline;
      ans.witness = std::move(r.witness);
      ans.certainty = ans.yes() || r.certified_no ? Certainty::certified : Certainty::monte_carlo;
      ans.trials = r.colorings;
      ans.nodes = r.nodes;
      return ans;
    }
  }
  return ans;
}

}  // namespace ewsat
