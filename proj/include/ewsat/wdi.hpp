#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ewsat/common.hpp"

namespace ewsat {

/// Weighted DAG Implications: find a closed vertex set of total weight exactly k.
///
/// An arc (u, v) means u in S implies v in S. Vertices are 0-based; weights
/// are positive. Cycles are allowed in the input; solvers condense them.
struct WdiInstance {
  int n = 0;
  std::vector<std::pair<int, int>> arcs;
  std::vector<std::int64_t> weight;
  std::int64_t k = 0;

  static WdiInstance unit(int n, std::vector<std::pair<int, int>> arcs, std::int64_t k) {
    return WdiInstance{n, std::move(arcs), std::vector<std::int64_t>(static_cast<std::size_t>(n), 1), k};
  }

  void validate() const {
    if (n < 0) throw UsageError("negative vertex count");
    if (static_cast<int>(weight.size()) != n) throw UsageError("weight vector does not match n");
    for (auto w : weight)
      if (w < 1) throw UsageError("vertex weights must be >= 1");
    for (const auto& [u, v] : arcs)
      if (u < 0 || u >= n || v < 0 || v >= n) throw UsageError("arc endpoint out of range");
    if (k < 0) throw UsageError("negative target weight");
  }

  std::int64_t total_weight() const { return std::accumulate(weight.begin(), weight.end(), std::int64_t{0}); }
};

/// Adjacency lists of a WDI instance, with reachability helpers restricted to a live vertex set.
class Digraph {
 public:
  explicit Digraph(const WdiInstance& inst)
      : n_(inst.n), out_(static_cast<std::size_t>(inst.n)), in_(static_cast<std::size_t>(inst.n)) {
    for (const auto& [u, v] : inst.arcs) {
      if (u == v) continue;
      out_[static_cast<std::size_t>(u)].push_back(v);
      in_[static_cast<std::size_t>(v)].push_back(u);
    }
  }

  int n() const { return n_; }
  const std::vector<int>& out(int v) const { return out_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& in(int v) const { return in_[static_cast<std::size_t>(v)]; }

  /// Vertices reachable from `from` (inclusive) inside `alive`.
  Bits descendants(const Bits& from, const Bits& alive) const { return reach(from, alive, out_); }
  Bits descendants(int v, const Bits& alive) const { return reach(single(v), alive, out_); }
  /// Vertices that reach `v` (inclusive) inside `alive`.
  Bits ascendants(int v, const Bits& alive) const { return reach(single(v), alive, in_); }

 private:
  Bits single(int v) const {
    Bits b(static_cast<std::size_t>(n_));
    b.set(static_cast<std::size_t>(v));
    return b;
  }

  static Bits reach(const Bits& from, const Bits& alive, const std::vector<std::vector<int>>& adj) {
    Bits seen = from & alive;
    std::vector<int> stack = bits_to_list(seen);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int w : adj[static_cast<std::size_t>(u)]) {
        const auto wi = static_cast<std::size_t>(w);
        if (alive.test(wi) && !seen.test(wi)) {
          seen.set(wi);
          stack.push_back(w);
        }
      }
    }
    return seen;
  }

  int n_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

inline std::int64_t weight_of(const Bits& set, const std::vector<std::int64_t>& w) {
  std::int64_t total = 0;
  for (auto i = set.find_first(); i != Bits::npos; i = set.find_next(i)) total += w[i];
  return total;
}

/// Closure under all arcs and exact weight k.
inline bool verify_witness(const WdiInstance& inst, const std::vector<int>& set) {
  Bits in(static_cast<std::size_t>(inst.n));
  for (int v : set) {
    if (v < 0 || v >= inst.n) return false;
    in.set(static_cast<std::size_t>(v));
  }
  for (const auto& [u, v] : inst.arcs)
    if (in.test(static_cast<std::size_t>(u)) && !in.test(static_cast<std::size_t>(v))) return false;
  return weight_of(in, inst.weight) == inst.k;
}

struct Condensation {
  WdiInstance dag;                         // one vertex per strongly connected component
  std::vector<int> component;              // original vertex -> dag vertex
  std::vector<std::vector<int>> members;   // dag vertex -> original vertices (ascending)

  std::vector<int> expand(const std::vector<int>& dag_set) const {
    std::vector<int> out;
    for (int c : dag_set) out.insert(out.end(), members[static_cast<std::size_t>(c)].begin(), members[static_cast<std::size_t>(c)].end());
    std::sort(out.begin(), out.end());
    return out;
  }
};

/// Contracts strongly connected components (Tarjan, iterative).
///
/// Components are numbered by their smallest original vertex, so a DAG input
/// maps onto itself. Component weight is the sum of member weights; parallel
/// arcs and self-loops are dropped.
inline Condensation condense(const WdiInstance& inst) {
  inst.validate();
  const int n = inst.n;
  const Digraph g(inst);
  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0), comp(static_cast<std::size_t>(n), -1);
  std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
  std::vector<int> stack;
  std::vector<std::pair<int, std::size_t>> call;  // (vertex, next out-arc position)
  int counter = 0, ncomp = 0;
  for (int root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] >= 0) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      const auto vi = static_cast<std::size_t>(v);
      if (pos == 0 && index[vi] < 0) {
        index[vi] = low[vi] = counter++;
        stack.push_back(v);
        on_stack[vi] = 1;
      }
      if (pos < g.out(v).size()) {
        const int w = g.out(v)[pos++];
        const auto wi = static_cast<std::size_t>(w);
        if (index[wi] < 0) {
          call.emplace_back(w, 0);
        } else if (on_stack[wi]) {
          low[vi] = std::min(low[vi], index[wi]);
        }
        continue;
      }
      if (low[vi] == index[vi]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = 0;
          comp[static_cast<std::size_t>(w)] = ncomp;
        } while (w != v);
        ++ncomp;
      }
      const int finished = v;
      call.pop_back();
      if (!call.empty()) {
        const auto pi = static_cast<std::size_t>(call.back().first);
        low[pi] = std::min(low[pi], low[static_cast<std::size_t>(finished)]);
      }
    }
  }

  // Renumber by smallest member.
  std::vector<int> rank(static_cast<std::size_t>(ncomp), -1);
  int next = 0;
  for (int v = 0; v < n; ++v) {
    auto& r = rank[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
    if (r < 0) r = next++;
  }
  Condensation out;
  out.component.resize(static_cast<std::size_t>(n));
  out.members.assign(static_cast<std::size_t>(ncomp), {});
  out.dag.n = ncomp;
  out.dag.k = inst.k;
  out.dag.weight.assign(static_cast<std::size_t>(ncomp), 0);
  for (int v = 0; v < n; ++v) {
    const int c = rank[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
    out.component[static_cast<std::size_t>(v)] = c;
    out.members[static_cast<std::size_t>(c)].push_back(v);
    out.dag.weight[static_cast<std::size_t>(c)] += inst.weight[static_cast<std::size_t>(v)];
  }
  for (const auto& [u, v] : inst.arcs) {
    const int cu = out.component[static_cast<std::size_t>(u)], cv = out.component[static_cast<std::size_t>(v)];
    if (cu != cv) out.dag.arcs.emplace_back(cu, cv);
  }
  std::sort(out.dag.arcs.begin(), out.dag.arcs.end());
  out.dag.arcs.erase(std::unique(out.dag.arcs.begin(), out.dag.arcs.end()), out.dag.arcs.end());
  return out;
}

inline bool is_acyclic(const WdiInstance& inst) { return condense(inst).dag.n == inst.n; }

// ---------------------------------------------------------------------------
// Frobenius instances

/// Layers V1..Vl of a Frobenius instance and their common weights.
struct FrobeniusView {
  std::vector<std::vector<int>> layers;
  std::vector<std::int64_t> layer_weight;
};

/// gcd(w1..wl) divides k; with no layers only k = 0 is reachable.
inline bool frobenius_feasible(const std::vector<std::int64_t>& weights, std::int64_t k) {
  std::int64_t g = 0;
  for (auto w : weights) g = std::gcd(g, w);
  if (g == 0) return k == 0;
  return k % g == 0;
}

/// Describes the first of P1..P4 that `view` violates on the graph `g`, or nullopt.
///
/// The instance is the subgraph induced by the layer vertices; arcs leaving
/// it are reported as a P2 violation. P4 is checked in the integer form
/// 2 * w(D(v))^2 <= k.
inline std::optional<std::string> frobenius_violation(const WdiInstance& g, const FrobeniusView& view, std::int64_t k) {
  if (view.layers.size() != view.layer_weight.size()) return "layer/weight count mismatch";
  std::vector<int> layer_of(static_cast<std::size_t>(g.n), -1);
  Bits alive(static_cast<std::size_t>(g.n));
  for (std::size_t i = 0; i < view.layers.size(); ++i)
    for (int v : view.layers[i]) {
      if (v < 0 || v >= g.n || layer_of[static_cast<std::size_t>(v)] >= 0) return "layers do not partition vertices";
      layer_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
      alive.set(static_cast<std::size_t>(v));
      if (g.weight[static_cast<std::size_t>(v)] != view.layer_weight[i]) return "P1: vertex " + std::to_string(v) + " has non-uniform weight";
    }
  for (const auto& [u, v] : g.arcs) {
    const int lu = layer_of[static_cast<std::size_t>(u)], lv = layer_of[static_cast<std::size_t>(v)];
    if (lu < 0) continue;
    if (lv < 0 || lv >= lu) return "P2: arc " + std::to_string(u) + "->" + std::to_string(v) + " does not go to a lower layer";
  }
  for (std::size_t i = 0; i < view.layers.size(); ++i)
    if (static_cast<std::int64_t>(view.layers[i].size()) < k) return "P3: layer " + std::to_string(i + 1) + " has fewer than k vertices";
  const Digraph dg(g);
  for (auto v = alive.find_first(); v != Bits::npos; v = alive.find_next(v)) {
    const auto w = weight_of(dg.descendants(static_cast<int>(v), alive), g.weight);
    if (2 * w * w > k) return "P4: w(D(" + std::to_string(v) + ")) = " + std::to_string(w) + " too large";
  }
  return std::nullopt;
}

namespace detail {

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

/// Smallest b >= 0 with b * a == t (mod m); requires gcd(a, m) | t.
inline std::int64_t solve_congruence(std::int64_t a, std::int64_t t, std::int64_t m) {
  a = floor_mod(a, m);
  t = floor_mod(t, m);
  const std::int64_t g = std::gcd(a, m);
  if (t % g != 0) throw InternalError("congruence has no solution");
  const std::int64_t a1 = a / g, t1 = t / g, m1 = m / g;
  // Extended Euclid for the inverse of a1 mod m1.
  std::int64_t old_r = a1, r = m1, old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  const std::int64_t inv = floor_mod(old_s, m1);
  return static_cast<std::int64_t>((static_cast<__int128>(inv) * t1) % m1);
}

}  // namespace detail

/// Constructs a closed set of weight exactly k in a Frobenius instance.
///
/// Follows the inductive argument: with one layer take k / w1 vertices;
/// otherwise, if d = gcd(w1..w(l-1)) divides k drop the top layer, else take
/// the b lowest-indexed top-layer vertices S with b * wl == k (mod d), add
/// D(S), divide the remaining weights and target by d and continue.
/// With `check_invariants` the derived instance is re-validated at every step.
inline std::vector<int> frobenius_witness(const WdiInstance& g, const FrobeniusView& view, std::int64_t k,
                                          bool check_invariants = true) {
  if (check_invariants)
    if (auto bad = frobenius_violation(g, view, k)) throw InternalError("not a Frobenius instance: " + *bad);
  if (!frobenius_feasible(view.layer_weight, k)) throw InternalError("gcd of layer weights does not divide k");
  const Digraph dg(g);
  Bits alive(static_cast<std::size_t>(g.n));
  for (const auto& layer : view.layers)
    for (int v : layer) alive.set(static_cast<std::size_t>(v));
  Bits result(static_cast<std::size_t>(g.n));
  std::vector<std::int64_t> w = view.layer_weight;
  std::int64_t scale = 1, target = k;
  std::size_t top = view.layers.size();

  auto pick = [&](std::size_t layer, std::int64_t count) {
    std::vector<int> chosen;
    for (int v : view.layers[layer]) {
      if (static_cast<std::int64_t>(chosen.size()) == count) break;
      if (alive.test(static_cast<std::size_t>(v))) chosen.push_back(v);
    }
    std::sort(chosen.begin(), chosen.end());
    if (static_cast<std::int64_t>(chosen.size()) < count) throw InternalError("layer too small for the construction");
    return chosen;
  };
  auto scaled_weight = [&](const Bits& set) { return weight_of(set, g.weight) / scale; };

  while (top > 0) {
    if (top == 1) {
      if (target % w[0] != 0) throw InternalError("base layer weight does not divide the target");
      for (int v : pick(0, target / w[0])) result.set(static_cast<std::size_t>(v));
      target = 0;
      break;
    }
    std::int64_t d = 0;
    for (std::size_t i = 0; i + 1 < top; ++i) d = std::gcd(d, w[i]);
    if (target % d == 0) {
      --top;
      for (int v : view.layers[top]) alive.reset(static_cast<std::size_t>(v));
      continue;
    }
    const std::int64_t b = detail::solve_congruence(w[top - 1], target, d);
    Bits from(static_cast<std::size_t>(g.n));
    for (int v : pick(top - 1, b)) from.set(static_cast<std::size_t>(v));
    const Bits closure = dg.descendants(from, alive);
    const std::int64_t taken = scaled_weight(closure);
    if ((target - taken) % d != 0 || target - taken < 0) throw InternalError("derived target is not a nonnegative integer");
    target = (target - taken) / d;
    result |= closure;
    alive -= closure;
    --top;
    for (int v : view.layers[top]) alive.reset(static_cast<std::size_t>(v));
    for (std::size_t i = 0; i < top; ++i) w[i] /= d;
    scale *= d;

    if (check_invariants) {
      for (std::size_t i = 0; i < top; ++i) {
        std::int64_t size = 0;
        for (int v : view.layers[i]) size += alive.test(static_cast<std::size_t>(v));
        if (size < target) throw InternalError("derived instance violates P3");
      }
      for (auto v = alive.find_first(); v != Bits::npos; v = alive.find_next(v)) {
        const auto wd = scaled_weight(dg.descendants(static_cast<int>(v), alive));
        if (2 * wd * wd > target) throw InternalError("derived instance violates P4");
      }
    }
  }
  if (target != 0) throw InternalError("construction left a nonzero target");
  auto out = bits_to_list(result);
  if (weight_of(result, g.weight) != k) throw InternalError("constructed set has the wrong weight");
  return out;
}

// ---------------------------------------------------------------------------
// Solvers

struct WdiStats {
  std::uint64_t calls = 0;            // recursive invocations
  std::uint64_t frobenius_checks = 0;  // times Step 3 was reached
  std::uint64_t max_layers = 0;        // largest layer count seen in Step 2
};

namespace detail {

class FrobeniusSolver {
 public:
  FrobeniusSolver(const WdiInstance& dag, WdiStats* stats) : g_(dag), dg_(dag), stats_(stats) {}

  std::optional<Bits> solve(const Bits& alive_in, std::int64_t k) {
    if (stats_) ++stats_->calls;
    if (k < 0) return std::nullopt;
    if (k == 0) return Bits(static_cast<std::size_t>(g_.n));
    Bits alive = alive_in;

    // Step 1: heavy descendant sets are guessed.
    for (auto v = alive.find_first(); v != Bits::npos; v = alive.find_next(v)) {
      const int vi = static_cast<int>(v);
      const Bits d = dg_.descendants(vi, alive);
      const auto w = weight_of(d, g_.weight);
      if (2 * w * w <= k) continue;
      if (auto r = recurse(alive, d, w, k)) return r;
      alive -= dg_.ascendants(vi, alive);
    }

    // Step 2: longest-path layering, then uniform-weight sublayers in (layer, weight) order.
    std::vector<int> layer(static_cast<std::size_t>(g_.n), 0);
    int layers = 0;
    for (const int v : topo_sinks_first(alive)) {
      int l = 1;
      for (int u : dg_.out(v))
        if (alive.test(static_cast<std::size_t>(u))) l = std::max(l, layer[static_cast<std::size_t>(u)] + 1);
      layer[static_cast<std::size_t>(v)] = l;
      layers = std::max(layers, l);
    }
    if (stats_) stats_->max_layers = std::max<std::uint64_t>(stats_->max_layers, static_cast<std::uint64_t>(layers));
    if (2 * static_cast<std::int64_t>(layers) * layers > k) throw InternalError("more layers than sqrt(k/2)");
    std::map<std::pair<int, std::int64_t>, std::vector<int>> sub;
    for (auto v = alive.find_first(); v != Bits::npos; v = alive.find_next(v))
      sub[{layer[v], g_.weight[v]}].push_back(static_cast<int>(v));
    for (auto& [key, members] : sub) {
      std::vector<int> live;
      for (int v : members)
        if (alive.test(static_cast<std::size_t>(v))) live.push_back(v);
      members = live;
      if (static_cast<std::int64_t>(live.size()) >= k) continue;
      for (int v : live) {
        const Bits d = dg_.descendants(v, alive);
        if (auto r = recurse(alive, d, weight_of(d, g_.weight), k)) return r;
        alive -= dg_.ascendants(v, alive);
      }
      members.clear();
    }

    // Step 3: what is left is a Frobenius instance.
    if (stats_) ++stats_->frobenius_checks;
    FrobeniusView view;
    for (auto& [key, members] : sub) {
      if (members.empty()) continue;
      view.layers.push_back(members);
      view.layer_weight.push_back(key.second);
    }
    if (!frobenius_feasible(view.layer_weight, k)) return std::nullopt;
    WdiInstance restricted = g_;
    restricted.arcs.clear();
    for (const auto& [u, v] : g_.arcs)
      if (alive.test(static_cast<std::size_t>(u)) && alive.test(static_cast<std::size_t>(v))) restricted.arcs.emplace_back(u, v);
    return list_to_bits(static_cast<std::size_t>(g_.n), frobenius_witness(restricted, view, k, false));
  }

 private:
  std::optional<Bits> recurse(const Bits& alive, const Bits& d, std::int64_t w, std::int64_t k) {
    if (w > k) return std::nullopt;
    auto r = solve(alive - d, k - w);
    if (r) *r |= d;
    return r;
  }

  std::vector<int> topo_sinks_first(const Bits& alive) const {
    std::vector<int> order, pending(static_cast<std::size_t>(g_.n), 0);
    for (auto v = alive.find_first(); v != Bits::npos; v = alive.find_next(v))
      for (int u : dg_.out(static_cast<int>(v)))
        if (alive.test(static_cast<std::size_t>(u))) ++pending[v];
    for (auto v = alive.find_first(); v != Bits::npos; v = alive.find_next(v))
      if (pending[v] == 0) order.push_back(static_cast<int>(v));
    for (std::size_t i = 0; i < order.size(); ++i)
      for (int p : dg_.in(order[i]))
        if (alive.test(static_cast<std::size_t>(p)) && --pending[static_cast<std::size_t>(p)] == 0) order.push_back(p);
    return order;
  }

  const WdiInstance& g_;
  Digraph dg_;
  WdiStats* stats_;
};

}  // namespace detail

/// Recursive solver: heavy vertices and small sublayers are guessed, the rest
/// is decided by the gcd criterion on the remaining Frobenius instance.
/// Returns a closed set of the original instance (sorted), or nullopt.
inline std::optional<std::vector<int>> solve_frobenius(const WdiInstance& inst, WdiStats* stats = nullptr) {
  inst.validate();
  if (inst.k == 0) return std::vector<int>{};
  const Condensation c = condense(inst);
  Bits all(static_cast<std::size_t>(c.dag.n));
  all.set();
  detail::FrobeniusSolver solver(c.dag, stats);
  auto r = solver.solve(all, inst.k);
  if (!r) return std::nullopt;
  auto out = c.expand(bits_to_list(*r));
  if (!verify_witness(inst, out)) throw InternalError("frobenius solver produced an invalid witness");
  return out;
}

namespace detail {

/// 0/1 subset sum with reconstruction; returns indices into `weights`.
inline std::optional<std::vector<std::size_t>> subset_sum(const std::vector<std::int64_t>& weights, std::int64_t target) {
  if (target < 0) return std::nullopt;
  constexpr long kUnset = -2, kStart = -1;
  std::vector<long> from(static_cast<std::size_t>(target) + 1, kUnset);
  from[0] = kStart;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const auto w = weights[i];
    for (std::int64_t t = target; t >= w; --t)
      if (from[static_cast<std::size_t>(t)] == kUnset && from[static_cast<std::size_t>(t - w)] != kUnset)
        from[static_cast<std::size_t>(t)] = static_cast<long>(i);
  }
  if (from[static_cast<std::size_t>(target)] == kUnset) return std::nullopt;
  std::vector<std::size_t> chosen;
  for (std::int64_t t = target; t > 0;) {
    const auto i = static_cast<std::size_t>(from[static_cast<std::size_t>(t)]);
    chosen.push_back(i);
    t -= weights[i];
  }
  return chosen;
}

}  // namespace detail

/// Guess-the-sources solver for acyclic inputs.
///
/// A closed set S either has at most floor(k/2) sources S', and then S = D(S'),
/// or at most floor(k/2) non-sources S''. S'' is itself closed, and the sources
/// are exactly vertices outside S'' whose out-arcs all land in S'', chosen by
/// subset sum to reach k - w(S'').
inline std::optional<std::vector<int>> solve_sources(const WdiInstance& inst) {
  inst.validate();
  if (!is_acyclic(inst)) throw UsageError("solve_sources requires an acyclic instance");
  const auto n = static_cast<std::size_t>(inst.n);
  const std::int64_t k = inst.k;
  if (k == 0) return std::vector<int>{};
  const Digraph dg(inst);
  Bits all(n);
  all.set();
  const int half = static_cast<int>(std::min<std::int64_t>(k / 2, inst.n));

  std::optional<std::vector<int>> found;
  for (int s = 1; s <= half && !found; ++s)
    for_each_combination(inst.n, s, [&](const std::vector<int>& pick) {
      const Bits d = dg.descendants(list_to_bits(n, pick), all);
      if (weight_of(d, inst.weight) != k) return false;
      found = bits_to_list(d);
      return true;
    });
  if (found) return found;

  for (int s = 0; s <= half && !found; ++s)
    for_each_combination(inst.n, s, [&](const std::vector<int>& pick) {
      const Bits inner = list_to_bits(n, pick);
      const std::int64_t rest = k - weight_of(inner, inst.weight);
      if (rest < 0) return false;
      for (int v : pick)
        for (int u : dg.out(v))
          if (!inner.test(static_cast<std::size_t>(u))) return false;
      std::vector<int> cand;
      std::vector<std::int64_t> cand_w;
      for (int v = 0; v < inst.n; ++v) {
        if (inner.test(static_cast<std::size_t>(v))) continue;
        bool ok = true;
        for (int u : dg.out(v)) ok = ok && inner.test(static_cast<std::size_t>(u));
        if (ok) {
          cand.push_back(v);
          cand_w.push_back(inst.weight[static_cast<std::size_t>(v)]);
        }
      }
      auto chosen = detail::subset_sum(cand_w, rest);
      if (!chosen) return false;
      Bits out = inner;
      for (auto i : *chosen) out.set(static_cast<std::size_t>(cand[i]));
      found = bits_to_list(out);
      return true;
    });
  return found;
}

inline constexpr int kBruteForceMaxVertices = 24;

/// Enumerates all 2^n subsets; the first closed weight-k set in mask order wins.
inline std::optional<std::vector<int>> solve_bruteforce(const WdiInstance& inst) {
  inst.validate();
  if (inst.n > kBruteForceMaxVertices)
    throw CapacityError("brute force is limited to " + std::to_string(kBruteForceMaxVertices) + " vertices");
  std::vector<std::uint32_t> out_mask(static_cast<std::size_t>(inst.n), 0);
  for (const auto& [u, v] : inst.arcs) out_mask[static_cast<std::size_t>(u)] |= std::uint32_t{1} << v;
  const std::uint32_t limit = std::uint32_t{1} << inst.n;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    std::int64_t w = 0;
    bool closed = true;
    for (std::uint32_t rest = mask; rest && closed; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      w += inst.weight[static_cast<std::size_t>(v)];
      closed = (out_mask[static_cast<std::size_t>(v)] & ~mask) == 0 && w <= inst.k;
    }
    if (closed && w == inst.k) {
      std::vector<int> out;
      for (int v = 0; v < inst.n; ++v)
        if (mask >> v & 1) out.push_back(v);
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace ewsat
