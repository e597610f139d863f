#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ewsat/boolfun.hpp"
#include "ewsat/common.hpp"

namespace ewsat {

/// A constraint argument: a variable (0-based) or a Boolean constant.
struct Term {
  int var = -1;  // -1 for constants
  bool value = false;

  static Term variable(int i) { return {i, false}; }
  static Term constant(bool b) { return {-1, b}; }
  bool is_var() const { return var >= 0; }

  friend bool operator==(const Term&, const Term&) = default;
};

struct Constraint {
  std::size_t fun = 0;  // index into the formula's family
  std::vector<Term> args;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Distinct variables of a constraint in first-occurrence order.
inline std::vector<int> vars_of(const Constraint& c) {
  std::vector<int> out;
  for (const auto& t : c.args)
    if (t.is_var() && std::find(out.begin(), out.end(), t.var) == out.end()) out.push_back(t.var);
  return out;
}

/// A 0/1 assignment to n variables.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t n) : bits_(n) {}
  explicit Assignment(Bits bits) : bits_(std::move(bits)) {}

  static Assignment from_ones(std::size_t n, const std::vector<int>& ones) { return Assignment(list_to_bits(n, ones)); }

  std::size_t size() const { return bits_.size(); }
  bool get(int i) const { return bits_.test(static_cast<std::size_t>(i)); }
  void set(int i, bool v = true) { bits_.set(static_cast<std::size_t>(i), v); }
  int weight() const { return static_cast<int>(bits_.count()); }
  std::vector<int> ones() const { return bits_to_list(bits_); }
  const Bits& bits() const { return bits_; }

  /// a <= b pointwise.
  bool dominated_by(const Assignment& other) const { return bits_.is_subset_of(other.bits_); }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  Bits bits_;
};

/// Orders assignments by weight, then by their sorted lists of ones.
inline bool canonical_less(const Assignment& a, const Assignment& b) {
  if (a.weight() != b.weight()) return a.weight() < b.weight();
  return a.ones() < b.ones();
}

/// A conjunction of constraints over variables 0..n-1.
class Formula {
 public:
  Formula() : family_(std::make_shared<const ConstraintFamily>()) {}

  Formula(int n, std::shared_ptr<const ConstraintFamily> family, std::vector<Constraint> constraints = {})
      : n_(n), family_(std::move(family)), constraints_(std::move(constraints)) {
    if (n_ < 0) throw UsageError("negative variable count");
    if (!family_) throw UsageError("formula without a family");
    for (const auto& c : constraints_) check(c);
  }

  int n() const { return n_; }
  std::size_t m() const { return constraints_.size(); }
  const ConstraintFamily& family() const { return *family_; }
  const std::shared_ptr<const ConstraintFamily>& family_ptr() const { return family_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const Constraint& operator[](std::size_t i) const { return constraints_[i]; }
  const BoolFun& function_of(const Constraint& c) const { return (*family_)[c.fun]; }

  void add(Constraint c) {
    check(c);
    constraints_.push_back(std::move(c));
  }

  /// Appends fresh variables; returns the index of the first one.
  int add_vars(int count) {
    const int first = n_;
    n_ += count;
    return first;
  }

 private:
  void check(const Constraint& c) const {
    if (c.fun >= family_->size()) throw UsageError("constraint refers to unknown function");
    if (static_cast<int>(c.args.size()) != (*family_)[c.fun].arity())
      throw UsageError("constraint on '" + (*family_)[c.fun].name() + "' has " + std::to_string(c.args.size()) +
                       " arguments, expected " + std::to_string((*family_)[c.fun].arity()));
    for (const auto& t : c.args)
      if (t.is_var() && t.var >= n_)
        throw UsageError("variable " + std::to_string(t.var + 1) + " exceeds n = " + std::to_string(n_));
  }

  int n_ = 0;
  std::shared_ptr<const ConstraintFamily> family_;
  std::vector<Constraint> constraints_;
};

inline bool eval_constraint(const BoolFun& f, const Constraint& c, const Assignment& a) {
  std::uint32_t row = 0;
  for (std::size_t j = 0; j < c.args.size(); ++j) {
    const auto& t = c.args[j];
    if (t.is_var() ? a.get(t.var) : t.value) row |= std::uint32_t{1} << j;
  }
  return f.at(row);
}

inline bool eval_constraint(const Formula& phi, const Constraint& c, const Assignment& a) {
  return eval_constraint(phi.function_of(c), c, a);
}

/// Index of the first violated constraint, absent iff `a` satisfies `phi`.
inline std::optional<std::size_t> find_violated(const Formula& phi, const Assignment& a) {
  for (std::size_t i = 0; i < phi.m(); ++i)
    if (!eval_constraint(phi, phi[i], a)) return i;
  return std::nullopt;
}

inline bool satisfies(const Formula& phi, const Assignment& a) { return !find_violated(phi, a); }

struct ExtensionStats {
  std::uint64_t leaves = 0;  // satisfying leaves plus dead ends of the search tree
};

/// Minimal satisfying extensions of `a` with weight at most k.
///
/// Bounded search tree: at each node take the first violated constraint and
/// branch on switching on one of its variables that is still 0. Any extension
/// that repairs the constraint has to flip one of them, so every minimal
/// extension is reached as a leaf; non-minimal leaves are filtered afterwards.
/// A satisfying `a` is its own (only) minimal extension.
inline std::vector<Assignment> minimal_extensions(const Formula& phi, const Assignment& a, int k,
                                                  ExtensionStats* stats = nullptr) {
  if (a.weight() > k) return {};
  if (satisfies(phi, a)) {
    if (stats) ++stats->leaves;
    return {a};
  }
  std::unordered_set<Bits> seen;
  std::vector<Assignment> leaves;
  Assignment cur = a;
  auto search = [&](auto& self, int weight) -> void {
    const auto violated = find_violated(phi, cur);
    if (!violated) {
      if (stats) ++stats->leaves;
      if (seen.insert(cur.bits()).second) leaves.push_back(cur);
      return;
    }
    bool branched = false;
    if (weight < k) {
      for (int v : vars_of(phi[*violated])) {
        if (cur.get(v)) continue;
        branched = true;
        cur.set(v, true);
        self(self, weight + 1);
        cur.set(v, false);
      }
    }
    if (!branched && stats) ++stats->leaves;
  };
  search(search, a.weight());

  std::vector<Assignment> minimal;
  for (const auto& cand : leaves) {
    bool dominated = false;
    for (const auto& other : leaves)
      if (other.bits() != cand.bits() && other.dominated_by(cand)) {
        dominated = true;
        break;
      }
    if (!dominated) minimal.push_back(cand);
  }
  std::sort(minimal.begin(), minimal.end(), canonical_less);
  return minimal;
}

/// Substitutes the constant 1 for every variable in `ones`; n is unchanged.
inline Formula restrict_vars_to_one(const Formula& phi, const Bits& ones) {
  std::vector<Constraint> out = phi.constraints();
  for (auto& c : out)
    for (auto& t : c.args)
      if (t.is_var() && ones.test(static_cast<std::size_t>(t.var))) t = Term::constant(true);
  return Formula(phi.n(), phi.family_ptr(), std::move(out));
}

inline Formula restrict_vars_to_one(const Formula& phi, const std::vector<int>& ones) {
  return restrict_vars_to_one(phi, list_to_bits(static_cast<std::size_t>(phi.n()), ones));
}

/// One instance produced by reducing to 0-valid instances.
struct Branch {
  Assignment forced;  // variables fixed to 1
  Formula residual;   // constants substituted; satisfied by all-zero
  int target = 0;     // k - weight(forced)
};

/// Splits (phi, k) into instances whose all-zero assignment is satisfying.
///
/// If all-zero already satisfies phi the single branch is (empty, phi, k).
/// Otherwise there is one branch per minimal satisfying extension m of the
/// all-zero assignment with weight(m) <= k. phi has a weight-k solution iff
/// some branch's residual has a weight-(k - weight(m)) solution avoiding the
/// forced variables.
inline std::vector<Branch> zero_valid_branches(const Formula& phi, int k) {
  const Assignment zero(static_cast<std::size_t>(phi.n()));
  if (satisfies(phi, zero)) return {Branch{zero, phi, k}};
  std::vector<Branch> out;
  for (auto& m : minimal_extensions(phi, zero, k)) {
    Formula residual = restrict_vars_to_one(phi, m.bits());
    const int target = k - m.weight();
    out.push_back(Branch{std::move(m), std::move(residual), target});
  }
  return out;
}

/// The function a constraint induces on its distinct variables (first-occurrence order).
struct EffectiveConstraint {
  BoolFun fun;
  std::vector<int> vars;
};

inline EffectiveConstraint effective_function(const Formula& phi, const Constraint& c) {
  const BoolFun& f = phi.function_of(c);
  auto vars = vars_of(c);
  std::uint32_t const_row = 0;
  std::vector<std::uint32_t> var_mask(vars.size(), 0);
  for (std::size_t j = 0; j < c.args.size(); ++j) {
    const auto& t = c.args[j];
    const auto bit = std::uint32_t{1} << j;
    if (!t.is_var()) {
      if (t.value) const_row |= bit;
      continue;
    }
    const auto pos = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), t.var) - vars.begin());
    var_mask[pos] |= bit;
  }
  auto g = BoolFun::from_predicate(f.name() + "'", static_cast<int>(vars.size()), [&](std::uint32_t x) {
    std::uint32_t row = const_row;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (x >> i & 1) row |= var_mask[i];
    return f.at(row);
  });
  return {std::move(g), std::move(vars)};
}

/// Exact weight-k check of a candidate solution.
inline bool verify(const Formula& phi, const Assignment& a, int k) {
  return static_cast<int>(a.size()) == phi.n() && a.weight() == k && satisfies(phi, a);
}

}  // namespace ewsat
