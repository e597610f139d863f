#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/functional/hash.hpp>

#include "ewsat/common.hpp"

namespace ewsat {

/// Simple undirected graph on vertices 0..n-1 with bit-row adjacency.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n), Bits(static_cast<std::size_t>(n))) {
    if (n < 0) throw UsageError("negative vertex count");
  }

  int n() const { return n_; }
  const Bits& row(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  bool has_edge(int u, int v) const { return adj_[static_cast<std::size_t>(u)].test(static_cast<std::size_t>(v)); }

  void add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw UsageError("edge endpoint out of range");
    if (u == v) throw UsageError("self-loop in a simple graph");
    adj_[static_cast<std::size_t>(u)].set(static_cast<std::size_t>(v));
    adj_[static_cast<std::size_t>(v)].set(static_cast<std::size_t>(u));
  }

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
      for (auto v = row(u).find_next(static_cast<std::size_t>(u)); v != Bits::npos; v = row(u).find_next(v))
        out.emplace_back(u, static_cast<int>(v));
    return out;
  }

 private:
  int n_ = 0;
  std::vector<Bits> adj_;
};

/// d-uniform hypergraph; edges are stored as sorted vertex lists.
class Hypergraph {
 public:
  Hypergraph() = default;
  Hypergraph(int d, int n) : d_(d), n_(n) {
    if (d < 1) throw UsageError("hypergraph uniformity must be >= 1");
    if (n < 0) throw UsageError("negative vertex count");
  }

  int d() const { return d_; }
  int n() const { return n_; }
  std::size_t m() const { return order_.size(); }
  const std::vector<std::vector<int>>& edges() const { return order_; }

  /// Inserts an edge; returns false if it was already present.
  bool add_edge(std::vector<int> e) {
    std::sort(e.begin(), e.end());
    if (static_cast<int>(e.size()) != d_) throw UsageError("hyperedge size differs from d");
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) throw UsageError("hyperedge repeats a vertex");
    for (int v : e)
      if (v < 0 || v >= n_) throw UsageError("hyperedge vertex out of range");
    if (!set_.insert(e).second) return false;
    order_.push_back(std::move(e));
    return true;
  }

  /// `sorted_edge` must be sorted ascending.
  bool has_edge(const std::vector<int>& sorted_edge) const { return set_.count(sorted_edge) > 0; }

 private:
  int d_ = 2;
  int n_ = 0;
  std::unordered_set<std::vector<int>, boost::hash<std::vector<int>>> set_;
  std::vector<std::vector<int>> order_;
};

inline bool is_clique(const Graph& g, const std::vector<int>& set) {
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (set[i] == set[j] || !g.has_edge(set[i], set[j])) return false;
  return true;
}

/// Every d-subset of `set` is an edge; vacuously true when |set| < d.
inline bool is_clique(const Hypergraph& h, std::vector<int> set) {
  std::sort(set.begin(), set.end());
  if (std::adjacent_find(set.begin(), set.end()) != set.end()) return false;
  std::vector<int> e(static_cast<std::size_t>(h.d()));
  return !for_each_combination(static_cast<int>(set.size()), h.d(), [&](const std::vector<int>& idx) {
    for (std::size_t i = 0; i < idx.size(); ++i) e[i] = set[static_cast<std::size_t>(idx[i])];
    return !h.has_edge(e);
  });
}

/// Lexicographically first k-clique by depth-first search over candidate rows.
inline std::optional<std::vector<int>> find_clique_bruteforce(const Graph& g, int k) {
  if (k < 0 || k > g.n()) return std::nullopt;
  std::vector<int> cur;
  Bits all(static_cast<std::size_t>(g.n()));
  all.set();
  auto dfs = [&](auto& self, const Bits& cand) -> bool {
    if (static_cast<int>(cur.size()) == k) return true;
    if (static_cast<int>(cur.size() + cand.count()) < k) return false;
    for (auto v = cand.find_first(); v != Bits::npos; v = cand.find_next(v)) {
      Bits next = cand & g.row(static_cast<int>(v));
      // keep only vertices after v so that sets are visited in lexicographic order
      for (auto u = next.find_first(); u != Bits::npos && u <= v; u = next.find_next(u)) next.reset(u);
      cur.push_back(static_cast<int>(v));
      if (self(self, next)) return true;
      cur.pop_back();
    }
    return false;
  };
  if (!dfs(dfs, all)) return std::nullopt;
  return cur;
}

namespace detail {

/// All cliques of size s in lexicographic order.
inline std::vector<std::vector<int>> all_cliques(const Graph& g, int s) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  Bits all(static_cast<std::size_t>(g.n()));
  all.set();
  auto dfs = [&](auto& self, const Bits& cand) -> void {
    if (static_cast<int>(cur.size()) == s) {
      out.push_back(cur);
      return;
    }
    for (auto v = cand.find_first(); v != Bits::npos; v = cand.find_next(v)) {
      Bits next = cand & g.row(static_cast<int>(v));
      for (auto u = next.find_first(); u != Bits::npos && u <= v; u = next.find_next(u)) next.reset(u);
      cur.push_back(static_cast<int>(v));
      self(self, next);
      cur.pop_back();
    }
  };
  dfs(dfs, all);
  return out;
}

}  // namespace detail

struct CliqueOptions {
  /// Largest C(n, ceil(k/3)) for which the auxiliary graph is built.
  std::int64_t max_aux_nodes = 200000;
  DiagSink diag;
};

/// k-clique via triangle detection in the graph of small cliques.
///
/// k is split into k1 = ceil(k/3), k2 = ceil((k-k1)/2), k3 = k-k1-k2. The
/// auxiliary graph is tripartite over the cliques of those sizes; two small
/// cliques are adjacent when one lies in the common neighbourhood of the other,
/// so a triangle is exactly a k-clique. The triangle is found with a boolean
/// product over bit rows. k <= 2 and oversized inputs go to brute force.
inline std::optional<std::vector<int>> find_clique_mm(const Graph& g, int k, const CliqueOptions& opt = {}) {
  if (k < 3 || k > g.n()) return find_clique_bruteforce(g, k);
  const int k1 = (k + 2) / 3;
  const int k2 = (k - k1 + 1) / 2;
  const int k3 = k - k1 - k2;
  if (binomial(g.n(), k1) > opt.max_aux_nodes) {
    emit(opt.diag, "clique: auxiliary graph over C(" + std::to_string(g.n()) + "," + std::to_string(k1) +
                       ") nodes exceeds the cap; using brute force");
    return find_clique_bruteforce(g, k);
  }
  const auto A = detail::all_cliques(g, k1);
  const auto B = k2 == k1 ? A : detail::all_cliques(g, k2);
  const auto C = k3 == k2 ? B : detail::all_cliques(g, k3);
  if (A.empty() || B.empty() || C.empty()) return std::nullopt;

  const auto common = [&](const std::vector<int>& q) {
    Bits nb(static_cast<std::size_t>(g.n()));
    nb.set();
    for (int v : q) nb &= g.row(v);
    return nb;
  };
  const auto inside = [](const std::vector<int>& q, const Bits& nb) {
    for (int v : q)
      if (!nb.test(static_cast<std::size_t>(v))) return false;
    return true;
  };
  const auto adjacency = [&](const std::vector<std::vector<int>>& rows, const std::vector<std::vector<int>>& cols) {
    std::vector<Bits> m(rows.size(), Bits(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Bits nb = common(rows[i]);
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (inside(cols[j], nb)) m[i].set(j);
    }
    return m;
  };
  const auto ab = adjacency(A, B);
  const auto bc = adjacency(B, C);
  const auto ac = adjacency(A, C);

  for (std::size_t a = 0; a < A.size(); ++a) {
    Bits reach(C.size());
    for (auto b = ab[a].find_first(); b != Bits::npos; b = ab[a].find_next(b)) reach |= bc[b];
    reach &= ac[a];
    const auto c = reach.find_first();
    if (c == Bits::npos) continue;
    for (auto b = ab[a].find_first(); b != Bits::npos; b = ab[a].find_next(b)) {
      if (!bc[b].test(c)) continue;
      std::vector<int> out = A[a];
      out.insert(out.end(), B[b].begin(), B[b].end());
      out.insert(out.end(), C[c].begin(), C[c].end());
      std::sort(out.begin(), out.end());
      if (!is_clique(g, out)) throw InternalError("triangle does not correspond to a clique");
      return out;
    }
  }
  return std::nullopt;
}

/// First k-set (lexicographically) all of whose d-subsets are edges.
/// For k < d every k-set qualifies, so the answer is {0..k-1} when k <= n.
inline std::optional<std::vector<int>> find_hyperclique(const Hypergraph& h, int k) {
  if (k < 0 || k > h.n()) return std::nullopt;
  std::vector<int> cur;
  if (k < h.d()) {
    for (int i = 0; i < k; ++i) cur.push_back(i);
    return cur;
  }
  std::vector<int> e(static_cast<std::size_t>(h.d()));
  // Adding v keeps the invariant iff every (d-1)-subset of cur together with v is an edge.
  const auto extends = [&](int v) {
    if (static_cast<int>(cur.size()) < h.d() - 1) return true;
    return !for_each_combination(static_cast<int>(cur.size()), h.d() - 1, [&](const std::vector<int>& idx) {
      for (std::size_t i = 0; i < idx.size(); ++i) e[i] = cur[static_cast<std::size_t>(idx[i])];
      e.back() = v;
      return !h.has_edge(e);
    });
  };
  auto dfs = [&](auto& self, int next) -> bool {
    if (static_cast<int>(cur.size()) == k) return true;
    for (int v = next; v <= h.n() - (k - static_cast<int>(cur.size())); ++v) {
      if (!extends(v)) continue;
      cur.push_back(v);
      if (self(self, v + 1)) return true;
      cur.pop_back();
    }
    return false;
  };
  if (!dfs(dfs, 0)) return std::nullopt;
  return cur;
}

}  // namespace ewsat
