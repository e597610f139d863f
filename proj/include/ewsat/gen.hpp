#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ewsat/boolfun.hpp"
#include "ewsat/clique.hpp"
#include "ewsat/common.hpp"
#include "ewsat/formula.hpp"
#include "ewsat/wdi.hpp"

namespace ewsat {

/// k-clique to weighted implications: vertex nodes of weight C(k,2)+1, one
/// unit-weight node per edge pointing at both endpoints, target k*K + C(k,2).
/// Vertex u becomes node u; edge i (in lexicographic order) becomes node n+i.
inline WdiInstance clique_to_wdi(const Graph& g, int k) {
  if (k < 2) throw UsageError("clique_to_wdi needs k >= 2");
  const std::int64_t pairs = binomial(k, 2);
  const std::int64_t big = pairs + 1;
  const auto edges = g.edges();
  WdiInstance out;
  out.n = g.n() + static_cast<int>(edges.size());
  out.weight.assign(static_cast<std::size_t>(g.n()), big);
  out.weight.resize(static_cast<std::size_t>(out.n), 1);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const int node = g.n() + static_cast<int>(i);
    out.arcs.emplace_back(node, edges[i].first);
    out.arcs.emplace_back(node, edges[i].second);
  }
  out.k = k * big + pairs;
  return out;
}

struct UnitExpansion {
  WdiInstance graph;       // unit weights
  std::vector<int> first;  // original vertex -> its first node
};

/// Replaces every weight-w vertex by a directed w-cycle; arcs run between first nodes.
inline UnitExpansion wdi_to_unit(const WdiInstance& inst) {
  inst.validate();
  UnitExpansion out;
  out.first.resize(static_cast<std::size_t>(inst.n));
  int next = 0;
  for (int v = 0; v < inst.n; ++v) {
    out.first[static_cast<std::size_t>(v)] = next;
    next += static_cast<int>(inst.weight[static_cast<std::size_t>(v)]);
  }
  out.graph = WdiInstance::unit(next, {}, inst.k);
  for (int v = 0; v < inst.n; ++v) {
    const int f = out.first[static_cast<std::size_t>(v)];
    const int w = static_cast<int>(inst.weight[static_cast<std::size_t>(v)]);
    for (int i = 0; w > 1 && i < w; ++i) out.graph.arcs.emplace_back(f + i, f + (i + 1) % w);
  }
  for (const auto& [u, v] : inst.arcs)
    out.graph.arcs.emplace_back(out.first[static_cast<std::size_t>(u)], out.first[static_cast<std::size_t>(v)]);
  return out;
}

inline std::shared_ptr<const ConstraintFamily> single_family(BoolFun f) {
  std::string name = f.name();
  return std::make_shared<const ConstraintFamily>(std::move(name), std::vector<BoolFun>{std::move(f)});
}

/// One IMPL(x_u, x_v) per arc; weights are ignored.
inline Formula digraph_to_sat_impl(const WdiInstance& g) {
  Formula out(g.n, single_family(fn::impl()));
  for (const auto& [u, v] : g.arcs) out.add(Constraint{0, {Term::variable(u), Term::variable(v)}});
  return out;
}

/// One NAND_d per d-subset of vertices that is not a hyperedge.
inline Formula hypergraph_to_sat_nand(const Hypergraph& h) {
  Formula out(h.n(), single_family(fn::nand(h.d())));
  for_each_combination(h.n(), h.d(), [&](const std::vector<int>& e) {
    if (h.has_edge(e)) return false;
    Constraint c{0, {}};
    for (int v : e) c.args.push_back(Term::variable(v));
    out.add(std::move(c));
    return false;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Constant gadgets

namespace detail {

/// Argument subsets of [r] as bit masks, by size and then lexicographically.
inline std::vector<std::uint32_t> supports_in_order(int r) {
  std::vector<std::uint32_t> out;
  for (int s = 0; s <= r; ++s)
    for_each_combination(r, s, [&](const std::vector<int>& idx) {
      std::uint32_t m = 0;
      for (int i : idx) m |= std::uint32_t{1} << i;
      out.push_back(m);
      return false;
    });
  return out;
}

inline bool contains_impl_or_nand2(const BoolFun& f) {
  return find_restriction(f, fn::impl()).has_value() || find_restriction(f, fn::nand(2)).has_value();
}

/// Instantiates f with variable `in` on the positions of `mask` and `out` elsewhere.
inline Constraint split_constraint(std::size_t fun, int arity, std::uint32_t mask, int in, int out) {
  Constraint c{fun, {}};
  for (int i = 0; i < arity; ++i) c.args.push_back(Term::variable(mask >> i & 1 ? in : out));
  return c;
}

}  // namespace detail

/// Supports chosen for the one/zero-forcing gadget of a 0-invalid function.
struct Const01Plan {
  std::uint32_t lift = 0;   // S with f(a_S) = 1, used to force y = 1
  std::uint32_t low = 0;    // S with f(a_S) = 1 ...
  std::uint32_t high = 0;   // ... and T strictly above it with f(a_T) = 0
};

inline Const01Plan plan_const01(const BoolFun& f) {
  if (is_zero_valid(f)) throw UsageError("'" + f.name() + "' is 0-valid; the 0/1 gadget needs a 0-invalid function");
  if (!detail::contains_impl_or_nand2(f)) throw UsageError("'" + f.name() + "' contains neither IMPL nor NAND2");
  const auto order = detail::supports_in_order(f.arity());
  Const01Plan plan;
  bool have_lift = false, have_pair = false;
  for (auto s : order) {
    if (!f.at(s)) continue;
    if (!have_lift) {
      plan.lift = s;
      have_lift = true;
    }
    for (auto t : order)
      if (!have_pair && (s & t) == s && s != t && !f.at(t)) {
        plan.low = s;
        plan.high = t;
        have_pair = true;
      }
    if (have_pair) break;
  }
  if (!have_lift || !have_pair) throw InternalError("no supports for the 0/1 gadget of '" + f.name() + "'");
  return plan;
}

/// Appends constraints (over family member `fun` = f) forcing y = 1 and every z = 0
/// among solutions in which at least one z is 0.
inline void append_const01(Formula& out, std::size_t fun, const BoolFun& f, int y, const std::vector<int>& z) {
  const auto plan = plan_const01(f);
  const int r = f.arity();
  for (int zj : z) out.add(detail::split_constraint(fun, r, plan.lift, y, zj));
  for (int zj : z)
    for (int zk : z) {
      if (zj == zk) continue;
      Constraint c{fun, {}};
      for (int i = 0; i < r; ++i) {
        const int v = plan.low >> i & 1 ? y : (plan.high >> i & 1 ? zj : zk);
        c.args.push_back(Term::variable(v));
      }
      out.add(std::move(c));
    }
}

struct Gadget {
  Formula fragment;
  int y = -1;  // -1 when the gadget has no y
  std::vector<int> z;
};

/// Fragment on y = var 0 and z1..z(k'+1) = vars 1..k'+1 whose only solution of
/// weight <= k' is y = 1, all z = 0.
inline Gadget gadget_const01(const BoolFun& f, int kprime) {
  if (kprime < 0) throw UsageError("negative gadget parameter");
  Gadget g{Formula(kprime + 2, single_family(f)), 0, {}};
  for (int j = 1; j <= kprime + 1; ++j) g.z.push_back(j);
  append_const01(g.fragment, 0, f, g.y, g.z);
  return g;
}

/// Appends constraints forcing all of z to 0 among solutions of weight < |z|.
inline void append_const0(Formula& out, std::size_t fun, const BoolFun& f, const std::vector<int>& z) {
  if (!is_zero_valid(f)) throw UsageError("'" + f.name() + "' is 0-invalid; the 0 gadget needs a 0-valid function");
  if (!detail::contains_impl_or_nand2(f)) throw UsageError("'" + f.name() + "' contains neither IMPL nor NAND2");
  const int r = f.arity();
  if (!is_one_valid(f)) {
    for (int zi : z) out.add(detail::split_constraint(fun, r, 0, zi, zi));
    return;
  }
  const std::uint32_t full = (std::uint32_t{1} << r) - 1;
  std::optional<std::uint32_t> split;
  for (auto s : detail::supports_in_order(r))
    if (s != 0 && s != full && !f.at(s)) {
      split = s;
      break;
    }
  if (!split) throw InternalError("no violating proper support in '" + f.name() + "'");
  for (int zi : z)
    for (int zj : z)
      if (zi != zj) out.add(detail::split_constraint(fun, r, *split, zi, zj));
}

/// Fragment on z1..z(k+1) = vars 0..k whose only solution of weight <= k is all-zero.
inline Gadget gadget_const0(const BoolFun& f, int k) {
  if (k < 0) throw UsageError("negative gadget parameter");
  Gadget g{Formula(k + 1, single_family(f)), -1, {}};
  for (int j = 0; j <= k; ++j) g.z.push_back(j);
  append_const0(g.fragment, 0, f, g.z);
  return g;
}

// ---------------------------------------------------------------------------
// Expressing SAT(g) inside another family

struct Expressed {
  Formula formula;
  int k = 0;
  char route = '?';   // 'a': 0/1 gadget, 'b': 0-restriction, 'c': 0-restriction plus implications to y
  Witness witness;    // member of the family and the map used for g
};

/// Rewrites a formula over a single function g (IMPL or NAND_d, variables only)
/// into an equivalent formula over `family` with target k or k+1.
inline Expressed express_sat_g_in_family(const Formula& phi, std::shared_ptr<const ConstraintFamily> family, int k) {
  if (phi.family().size() != 1) throw UsageError("input formula must use a single function");
  const BoolFun& g = phi.family()[0];
  if (!(g == fn::impl()) && !(g.arity() >= 2 && g == fn::nand(g.arity())))
    throw UsageError("input function must be IMPL or NAND_d");
  for (const auto& c : phi.constraints())
    for (const auto& t : c.args)
      if (!t.is_var()) throw UsageError("input formula must not use constants");
  if (k < 0) throw UsageError("negative target");

  const auto rep = represents(*family, g);
  if (!rep) throw UsageError("family '" + family->name() + "' does not represent " + g.name());
  const BoolFun& f = (*family)[rep->member];
  const int n = phi.n();
  Expressed res{Formula(n, family), k, '?', *rep};

  ArgMap map = rep->map;
  int y = -1;
  std::vector<int> z;
  if (!is_zero_valid(f)) {
    res.route = 'a';
    res.k = k + 1;
    y = res.formula.add_vars(1);
    const int first = res.formula.add_vars(k + 2);
    for (int j = 0; j < k + 2; ++j) z.push_back(first + j);
    append_const01(res.formula, rep->member, f, y, z);
  } else if (auto zero_map = find_zero_restriction(f, g)) {
    res.route = 'b';
    map = *zero_map;
    res.witness.map = map;
    const int first = res.formula.add_vars(k + 1);
    for (int j = 0; j <= k; ++j) z.push_back(first + j);
    append_const0(res.formula, rep->member, f, z);
  } else {
    const auto impl_map = find_zero_restriction(f, fn::impl());
    if (!impl_map) throw InternalError("'" + f.name() + "' has neither " + g.name() + " nor IMPL as a 0-restriction");
    res.route = 'c';
    res.k = k + 1;
    const int first = res.formula.add_vars(k + 2);
    for (int j = 0; j < k + 2; ++j) z.push_back(first + j);
    y = res.formula.add_vars(1);
    append_const0(res.formula, rep->member, f, z);
    for (int x = 0; x < n; ++x) {
      Constraint c{rep->member, {}};
      for (const auto& s : impl_map->slots)
        c.args.push_back(s.kind == Slot::Kind::arg ? Term::variable(s.arg == 0 ? x : y) : Term::variable(z[0]));
      res.formula.add(std::move(c));
    }
  }

  for (const auto& c : phi.constraints()) {
    Constraint out{rep->member, {}};
    for (const auto& s : map.slots) {
      switch (s.kind) {
        case Slot::Kind::arg: out.args.push_back(c.args[static_cast<std::size_t>(s.arg)]); break;
        case Slot::Kind::zero: out.args.push_back(Term::variable(z[0])); break;
        case Slot::Kind::one: out.args.push_back(Term::variable(y)); break;
      }
    }
    res.formula.add(std::move(out));
  }
  return res;
}

}  // namespace ewsat
