#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ewsat/boolfun.hpp"
#include "ewsat/common.hpp"
#include "ewsat/formula.hpp"
#include "ewsat/wdi.hpp"

namespace ewsat {

struct TrialConfig {
  std::uint64_t budget = 0;  // trials per branch; 0 selects default_budget()
  std::uint64_t seed = 0;
  bool exhaustive = false;   // replay every choice sequence instead of sampling (n <= 8)
  int threads = 1;
  DiagSink diag;
};

inline constexpr std::uint64_t kMaxDefaultBudget = 1000000;
inline constexpr int kExhaustiveMaxVars = 8;

/// min(10^6, (k*r)^k), at least 1.
inline std::uint64_t default_budget(int k, int r) {
  const double base = static_cast<double>(std::max(k, 1)) * std::max(r, 1);
  const double v = std::pow(base, std::max(k, 0));
  if (v >= static_cast<double>(kMaxDefaultBudget)) return kMaxDefaultBudget;
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(v));
}

/// Picks an index in [0, size) when the construction has several candidates.
using Chooser = std::function<std::size_t(std::size_t size)>;

struct BuiltGraph {
  WdiInstance graph;        // unit weights; arcs between remaining variables only
  Bits alive;               // variables not deleted
  bool branched = false;    // some choice had more than one candidate
  std::vector<int> considered;  // loop-body entries per variable
};

/// One run of the randomized implication-graph construction.
///
/// Scans variables in index order and restarts after every change. A variable
/// v whose descendant set D(v) gives a violating assignment either gets an arc
/// to a variable occurring in some minimal extension of a_D(v) (weight <= k),
/// or is deleted together with its ascendants when there is none. Only
/// extensions inside the remaining variables count. Variables in `blocked`
/// start out deleted; arcs only ever point to remaining variables.
inline BuiltGraph build_graph_trial(const Formula& phi, int k, const Chooser& choose, const Bits* blocked = nullptr) {
  const auto n = static_cast<std::size_t>(phi.n());
  if (!satisfies(phi, Assignment(n))) throw UsageError("implication-graph construction needs a 0-valid instance");
  BuiltGraph out;
  out.graph = WdiInstance::unit(phi.n(), {}, k);
  out.alive = Bits(n);
  out.alive.set();
  if (blocked) out.alive -= *blocked;
  out.considered.assign(n, 0);
  const int limit = std::max(k, 1);

  bool changed = true;
  while (changed) {
    changed = false;
    const Digraph dg(out.graph);
    for (auto v = out.alive.find_first(); v != Bits::npos; v = out.alive.find_next(v)) {
      const Bits d = dg.descendants(static_cast<int>(v), out.alive);
      const Assignment a(d);
      if (satisfies(phi, a)) continue;
      if (++out.considered[v] > limit)
        throw InternalError("variable " + std::to_string(v + 1) + " considered more than k times");
      // Extensions that need a deleted variable can never be completed.
      Bits x(n);
      for (const auto& ext : minimal_extensions(phi, a, k))
        if (ext.bits().is_subset_of(out.alive)) x |= ext.bits();
      x -= d;
      if (x.none()) {
        out.alive -= dg.ascendants(static_cast<int>(v), out.alive);
      } else {
        const auto cand = bits_to_list(x);
        if (cand.size() > 1) out.branched = true;
        const std::size_t pick = cand.size() == 1 ? 0 : choose(cand.size());
        out.graph.arcs.emplace_back(static_cast<int>(v), cand.at(pick));
      }
      changed = true;
      break;
    }
  }
  // Drop arcs that touch deleted variables.
  std::erase_if(out.graph.arcs, [&](const auto& arc) {
    return !out.alive.test(static_cast<std::size_t>(arc.first)) || !out.alive.test(static_cast<std::size_t>(arc.second));
  });
  return out;
}

/// Closed set of exact size `target` among the remaining variables of a built graph.
inline std::optional<std::vector<int>> closed_set_of_size(const BuiltGraph& g, int target, WdiStats* stats = nullptr) {
  std::vector<int> keep = bits_to_list(g.alive), index(g.alive.size(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) index[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
  WdiInstance sub = WdiInstance::unit(static_cast<int>(keep.size()), {}, target);
  for (const auto& [u, v] : g.graph.arcs) sub.arcs.emplace_back(index[static_cast<std::size_t>(u)], index[static_cast<std::size_t>(v)]);
  auto r = solve_frobenius(sub, stats);
  if (!r) return std::nullopt;
  for (int& v : *r) v = keep[static_cast<std::size_t>(v)];
  return r;
}

struct PipelineResult {
  std::optional<Assignment> witness;
  bool certified_no = false;     // every possible construction was tried (or none was random)
  std::uint64_t trials = 0;
  std::uint64_t branches = 0;
  std::uint64_t max_considered = 0;
};

namespace detail {

/// Choice tree over construction runs; a run is a root-to-leaf path of (options, pick).
/// Once every path has been replayed the construction space is exhausted.
class ChoiceTree {
 public:
  static constexpr std::size_t kMaxNodes = 1 << 21;

  void record(const std::vector<std::pair<std::size_t, std::size_t>>& path) {
    if (overflow_) return;
    if (nodes_.empty()) nodes_.push_back({});
    std::vector<std::size_t> trail{0};
    std::size_t cur = 0;
    for (const auto& [options, pick] : path) {
      if (nodes_[cur].child.empty()) nodes_[cur].child.assign(options, kNone);
      if (nodes_[cur].child.size() != options) throw InternalError("construction is not replay-deterministic");
      if (nodes_[cur].child[pick] == kNone) {
        if (nodes_.size() >= kMaxNodes) {
          overflow_ = true;
          return;
        }
        nodes_[cur].child[pick] = nodes_.size();
        nodes_.push_back({});
      }
      cur = nodes_[cur].child[pick];
      trail.push_back(cur);
    }
    nodes_[cur].done = true;
    for (auto it = trail.rbegin() + 1; it != trail.rend(); ++it) {
      auto& node = nodes_[*it];
      node.done = std::all_of(node.child.begin(), node.child.end(), [&](std::size_t c) { return c != kNone && nodes_[c].done; });
      if (!node.done) break;
    }
  }

  bool exhausted() const { return !overflow_ && !nodes_.empty() && nodes_[0].done; }
  bool overflowed() const { return overflow_; }

  /// First path (lowest picks) that has not been completed yet.
  std::vector<std::size_t> next_prefix() const {
    std::vector<std::size_t> prefix;
    std::size_t cur = 0;
    while (!nodes_.empty() && !nodes_[cur].child.empty()) {
      std::size_t pick = 0;
      while (pick < nodes_[cur].child.size() && nodes_[cur].child[pick] != kNone && nodes_[nodes_[cur].child[pick]].done) ++pick;
      prefix.push_back(pick);
      if (nodes_[cur].child[pick] == kNone) break;
      cur = nodes_[cur].child[pick];
    }
    return prefix;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  struct Node {
    std::vector<std::size_t> child;
    bool done = false;
  };
  std::vector<Node> nodes_;
  bool overflow_ = false;
};

struct TrialOutcome {
  std::optional<std::vector<int>> closed;
  std::vector<std::pair<std::size_t, std::size_t>> path;
  int max_considered = 0;
};

inline TrialOutcome run_trial(const Formula& phi, int k, const Bits& blocked, const Chooser& choose) {
  TrialOutcome t;
  const auto g = build_graph_trial(phi, k, [&](std::size_t size) {
    const std::size_t pick = choose(size);
    t.path.emplace_back(size, pick);
    return pick;
  }, &blocked);
  t.max_considered = *std::max_element(g.considered.begin(), g.considered.end());
  t.closed = closed_set_of_size(g, k);
  return t;
}

}  // namespace detail

/// Weight-k solutions for families that avoid NAND2.
///
/// Splits into 0-valid branches, then for each branch runs up to `budget`
/// constructions (trial i seeded with seed ^ i), looking for a closed set of
/// the residual size in each built graph. YES answers are verified against phi.
/// A NO is certified when every branch's construction space was exhausted.
inline PipelineResult solve_nand2_avoiding(const Formula& phi, int k, const TrialConfig& cfg = {}) {
  if (represents(phi.family(), fn::nand(2))) throw UsageError("family represents NAND2; the implication pipeline does not apply");
  PipelineResult res;
  res.certified_no = true;
  if (k < 0 || k > phi.n()) return res;
  if (cfg.exhaustive && phi.n() > kExhaustiveMaxVars)
    throw CapacityError("exhaustive construction replay is limited to n <= " + std::to_string(kExhaustiveMaxVars));
  // exhaustive replay runs until the choice tree is complete
  const std::uint64_t budget = cfg.exhaustive ? std::numeric_limits<std::uint64_t>::max()
                               : cfg.budget   ? cfg.budget
                                              : default_budget(k, phi.family().arity());
  const int threads = std::max(1, cfg.threads);

  for (const auto& branch : zero_valid_branches(phi, k)) {
    ++res.branches;
    const Bits& forced = branch.forced.bits();
    auto finish = [&](const std::vector<int>& closed) {
      Assignment a = branch.forced;
      for (int v : closed) a.set(v);
      if (!verify(phi, a, k)) throw InternalError("implication pipeline produced an invalid witness");
      res.witness = std::move(a);
      res.certified_no = false;
    };
    if (branch.target == 0) {
      finish({});
      return res;
    }
    detail::ChoiceTree tree;
    bool exhausted = false;
    for (std::uint64_t start = 0; start < budget && !exhausted;) {
      const std::uint64_t batch = cfg.exhaustive ? 1 : std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), budget - start);
      std::vector<detail::TrialOutcome> out(batch);
      auto work = [&](std::uint64_t j) {
        const std::uint64_t trial = start + j;
        if (cfg.exhaustive) {
          const auto prefix = tree.next_prefix();
          std::size_t pos = 0;
          out[j] = detail::run_trial(branch.residual, branch.target, forced, [&](std::size_t) { return pos < prefix.size() ? prefix[pos++] : std::size_t{0}; });
        } else {
          std::mt19937_64 rng(cfg.seed ^ trial);
          out[j] = detail::run_trial(branch.residual, branch.target, forced, [&](std::size_t size) {
            return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
          });
        }
      };
      if (batch == 1) {
        work(0);
      } else {
        std::vector<std::thread> pool;
        for (std::uint64_t j = 0; j < batch; ++j) pool.emplace_back(work, j);
        for (auto& t : pool) t.join();
      }
      for (std::uint64_t j = 0; j < batch; ++j) {
        ++res.trials;
        res.max_considered = std::max<std::uint64_t>(res.max_considered, static_cast<std::uint64_t>(out[j].max_considered));
        if (out[j].closed) {
          finish(*out[j].closed);
          emit(cfg.diag, "implication pipeline: witness after " + std::to_string(res.trials) + " trials");
          return res;
        }
        tree.record(out[j].path);
        if (cfg.exhaustive && tree.overflowed()) throw CapacityError("choice tree exceeds its node cap");
        if (tree.exhausted()) {
          exhausted = true;
          break;
        }
      }
      start += batch;
    }
    if (!exhausted) res.certified_no = false;
  }
  emit(cfg.diag, "implication pipeline: no witness after " + std::to_string(res.trials) + " trials over " +
                     std::to_string(res.branches) + " branches" + (res.certified_no ? " (all constructions tried)" : ""));
  return res;
}

}  // namespace ewsat
