#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ewsat/common.hpp"

namespace ewsat {

/// Default bound on the arity of family members (R_MAX).
inline constexpr int kDefaultMaxArity = 10;
/// Hard bound imposed by the truth-table representation.
inline constexpr int kTableArityLimit = 20;

/// A Boolean function stored as an explicit truth table.
///
/// Bit m of the table is f(y1, ..., yr) where y(j+1) is bit j of m, i.e. the
/// first argument is the least significant bit of the row index. Arity 0 is
/// allowed and denotes a constant.
class BoolFun {
 public:
  BoolFun() : table_(1) {}

  BoolFun(std::string name, int arity, Bits table) : name_(std::move(name)), arity_(arity), table_(std::move(table)) {
    if (arity_ < 0 || arity_ > kTableArityLimit)
      throw CapacityError("arity " + std::to_string(arity_) + " outside [0, " + std::to_string(kTableArityLimit) + "]");
    if (table_.size() != (std::size_t{1} << arity_))
      throw UsageError("truth table of '" + name_ + "' has " + std::to_string(table_.size()) + " rows, expected " +
                       std::to_string(std::size_t{1} << arity_));
  }

  /// Parses a '0'/'1' string where position m is table row m.
  static BoolFun from_string(std::string name, int arity, std::string_view table) {
    if (arity < 0 || arity > kTableArityLimit) throw CapacityError("arity " + std::to_string(arity) + " out of range");
    if (table.size() != (std::size_t{1} << arity))
      throw UsageError("table for '" + name + "' must have length " + std::to_string(std::size_t{1} << arity));
    Bits bits(table.size());
    for (std::size_t m = 0; m < table.size(); ++m) {
      if (table[m] == '1')
        bits.set(m);
      else if (table[m] != '0')
        throw UsageError("table for '" + name + "' contains a character other than 0/1");
    }
    return BoolFun(std::move(name), arity, std::move(bits));
  }

  template <typename Pred>
  static BoolFun from_predicate(std::string name, int arity, Pred&& pred) {
    Bits bits(std::size_t{1} << arity);
    for (std::uint32_t m = 0; m < bits.size(); ++m)
      if (pred(m)) bits.set(m);
    return BoolFun(std::move(name), arity, std::move(bits));
  }

  const std::string& name() const { return name_; }
  int arity() const { return arity_; }
  std::size_t rows() const { return table_.size(); }
  const Bits& table() const { return table_; }

  bool at(std::uint32_t row) const { return table_.test(row); }

  /// Evaluates on an explicit argument vector (args[j] is argument j+1).
  bool eval(const std::vector<bool>& args) const {
    if (static_cast<int>(args.size()) != arity_)
      throw UsageError("'" + name_ + "' expects " + std::to_string(arity_) + " arguments, got " +
                       std::to_string(args.size()));
    std::uint32_t row = 0;
    for (std::size_t j = 0; j < args.size(); ++j)
      if (args[j]) row |= std::uint32_t{1} << j;
    return at(row);
  }

  std::string to_string() const {
    std::string s(table_.size(), '0');
    for (std::size_t m = 0; m < table_.size(); ++m)
      if (table_.test(m)) s[m] = '1';
    return s;
  }

  BoolFun renamed(std::string name) const { return BoolFun(std::move(name), arity_, table_); }

  /// Equality of functions; names are ignored.
  friend bool operator==(const BoolFun& a, const BoolFun& b) { return a.arity_ == b.arity_ && a.table_ == b.table_; }

 private:
  std::string name_;
  int arity_ = 0;
  Bits table_;
};

inline bool is_zero_valid(const BoolFun& f) { return f.at(0); }
inline bool is_one_valid(const BoolFun& f) { return f.at(static_cast<std::uint32_t>(f.rows() - 1)); }

namespace fn {

inline BoolFun impl() {
  return BoolFun::from_predicate("IMPL", 2, [](std::uint32_t m) { return !(m & 1) || (m & 2); });
}

inline BoolFun nand(int d) {
  const std::uint32_t all = (std::uint32_t{1} << d) - 1;
  return BoolFun::from_predicate("NAND" + std::to_string(d), d, [all](std::uint32_t m) { return m != all; });
}

inline BoolFun or_fn(int r) {
  return BoolFun::from_predicate("OR" + std::to_string(r), r, [](std::uint32_t m) { return m != 0; });
}

inline BoolFun and_fn(int r) {
  const std::uint32_t all = (std::uint32_t{1} << r) - 1;
  return BoolFun::from_predicate("AND" + std::to_string(r), r, [all](std::uint32_t m) { return m == all; });
}

inline BoolFun eq2() {
  return BoolFun::from_predicate("EQ2", 2, [](std::uint32_t m) { return m == 0 || m == 3; });
}

inline BoolFun constant(bool value, int arity = 0) {
  return BoolFun::from_predicate(value ? "TRUE" : "FALSE", arity, [value](std::uint32_t) { return value; });
}

}  // namespace fn

/// Where one argument of the source function is routed by a restriction.
struct Slot {
  enum class Kind : std::uint8_t { arg, zero, one };
  Kind kind = Kind::zero;
  int arg = -1;  // 0-based target argument when kind == arg

  static Slot to_arg(int i) { return {Kind::arg, i}; }
  static Slot zero() { return {Kind::zero, -1}; }
  static Slot one() { return {Kind::one, -1}; }

  friend bool operator==(const Slot&, const Slot&) = default;
};

/// Per-argument routing of a source function onto a target of arity `target_arity`.
struct ArgMap {
  int target_arity = 0;
  std::vector<Slot> slots;

  bool uses_const1() const {
    for (const auto& s : slots)
      if (s.kind == Slot::Kind::one) return true;
    return false;
  }

  /// Human-readable form, e.g. "(x1,x2,0)".
  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (i) out += ',';
      switch (slots[i].kind) {
        case Slot::Kind::arg: out += "x" + std::to_string(slots[i].arg + 1); break;
        case Slot::Kind::zero: out += '0'; break;
        case Slot::Kind::one: out += '1'; break;
      }
    }
    return out + ")";
  }

  friend bool operator==(const ArgMap&, const ArgMap&) = default;
};

inline ArgMap identity_map(int arity) {
  ArgMap m{arity, {}};
  for (int i = 0; i < arity; ++i) m.slots.push_back(Slot::to_arg(i));
  return m;
}

namespace detail {

inline void validate_map(const BoolFun& f, const ArgMap& map, bool require_all_args) {
  if (static_cast<int>(map.slots.size()) != f.arity())
    throw UsageError("argument map has " + std::to_string(map.slots.size()) + " entries, '" + f.name() + "' has arity " +
                     std::to_string(f.arity()));
  if (map.target_arity < 0 || map.target_arity > kTableArityLimit) throw UsageError("bad target arity in argument map");
  std::vector<bool> used(static_cast<std::size_t>(map.target_arity), false);
  for (const auto& s : map.slots) {
    if (s.kind != Slot::Kind::arg) continue;
    if (s.arg < 0 || s.arg >= map.target_arity) throw UsageError("argument map refers to x" + std::to_string(s.arg + 1));
    used[static_cast<std::size_t>(s.arg)] = true;
  }
  if (require_all_args)
    for (std::size_t i = 0; i < used.size(); ++i)
      if (!used[i]) throw UsageError("argument map leaves x" + std::to_string(i + 1) + " unused");
}

}  // namespace detail

/// g(x1..xs) = f(values routed by `map`), by full truth-table evaluation.
inline BoolFun restrict(const BoolFun& f, const ArgMap& map, bool require_all_args = true) {
  detail::validate_map(f, map, require_all_args);
  std::uint32_t one_mask = 0;
  std::vector<std::uint32_t> arg_mask(static_cast<std::size_t>(map.target_arity), 0);
  for (std::size_t p = 0; p < map.slots.size(); ++p) {
    const auto bit = std::uint32_t{1} << p;
    if (map.slots[p].kind == Slot::Kind::one) one_mask |= bit;
    if (map.slots[p].kind == Slot::Kind::arg) arg_mask[static_cast<std::size_t>(map.slots[p].arg)] |= bit;
  }
  return BoolFun::from_predicate(f.name() + map.to_string(), map.target_arity, [&](std::uint32_t x) {
    std::uint32_t row = one_mask;
    for (std::size_t i = 0; i < arg_mask.size(); ++i)
      if (x >> i & 1) row |= arg_mask[i];
    return f.at(row);
  });
}

struct RestrictionSearch {
  bool allow_const1 = true;     // false searches 0-restrictions only
  bool require_all_args = true;  // every argument of g must be routed somewhere
  int max_arity = kDefaultMaxArity;
};

namespace detail {

class RestrictionFinder {
 public:
  RestrictionFinder(const BoolFun& f, const BoolFun& g, const RestrictionSearch& opt)
      : f_(f), g_(g), opt_(opt), r_(f.arity()), s_(g.arity()),
        arg_mask_(static_cast<std::size_t>(s_), 0), used_(static_cast<std::size_t>(s_), 0),
        row_(std::size_t{1} << s_, 0), map_{s_, std::vector<Slot>(static_cast<std::size_t>(r_))} {}

  std::optional<ArgMap> run() {
    unused_ = s_;
    if (dfs(0)) return map_;
    return std::nullopt;
  }

 private:
  bool dfs(int pos) {
    if (opt_.require_all_args && unused_ > r_ - pos) return false;
    if (pos == r_) return matches();
    const auto bit = std::uint32_t{1} << pos;
    auto& slot = map_.slots[static_cast<std::size_t>(pos)];
    for (int i = 0; i < s_; ++i) {
      slot = Slot::to_arg(i);
      arg_mask_[static_cast<std::size_t>(i)] |= bit;
      if (used_[static_cast<std::size_t>(i)]++ == 0) --unused_;
      const bool ok = dfs(pos + 1);
      if (--used_[static_cast<std::size_t>(i)] == 0) ++unused_;
      arg_mask_[static_cast<std::size_t>(i)] &= ~bit;
      if (ok) return true;
    }
    slot = Slot::zero();
    if (dfs(pos + 1)) return true;
    if (opt_.allow_const1) {
      slot = Slot::one();
      one_mask_ |= bit;
      const bool ok = dfs(pos + 1);
      one_mask_ &= ~bit;
      if (ok) return true;
    }
    return false;
  }

  // Compares row by row, stopping at the first mismatch.
  bool matches() {
    row_[0] = one_mask_;
    if (f_.at(row_[0]) != g_.at(0)) return false;
    for (std::uint32_t x = 1; x < row_.size(); ++x) {
      row_[x] = row_[x & (x - 1)] | arg_mask_[static_cast<std::size_t>(std::countr_zero(x))];
      if (f_.at(row_[x]) != g_.at(x)) return false;
    }
    return true;
  }

  const BoolFun& f_;
  const BoolFun& g_;
  const RestrictionSearch& opt_;
  int r_;
  int s_;
  std::uint32_t one_mask_ = 0;
  std::vector<std::uint32_t> arg_mask_;
  std::vector<int> used_;
  int unused_ = 0;
  std::vector<std::uint32_t> row_;
  ArgMap map_;
};

}  // namespace detail

/// Exhaustive search for a map m with restrict(f, m) == g.
///
/// Maps are visited in lexicographic order over argument positions 1..r with
/// x1 < ... < xs < 0 < 1, so the returned witness is the first such map.
inline std::optional<ArgMap> find_restriction(const BoolFun& f, const BoolFun& g, const RestrictionSearch& opt = {}) {
  if (f.arity() > opt.max_arity)
    throw CapacityError("'" + f.name() + "' has arity " + std::to_string(f.arity()) + " > " +
                        std::to_string(opt.max_arity));
  if (opt.require_all_args && g.arity() > f.arity()) return std::nullopt;
  return detail::RestrictionFinder(f, g, opt).run();
}

inline std::optional<ArgMap> find_zero_restriction(const BoolFun& f, const BoolFun& g) {
  return find_restriction(f, g, RestrictionSearch{.allow_const1 = false});
}

/// A finite constraint family: named truth tables with unique names.
class ConstraintFamily {
 public:
  ConstraintFamily() = default;
  ConstraintFamily(std::string name, std::vector<BoolFun> functions)
      : name_(std::move(name)), functions_(std::move(functions)) {
    if (functions_.empty()) throw UsageError("constraint family '" + name_ + "' is empty");
    for (std::size_t i = 0; i < functions_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (functions_[i].name() == functions_[j].name())
          throw UsageError("duplicate function name '" + functions_[i].name() + "'");
  }

  const std::string& name() const { return name_; }
  const std::vector<BoolFun>& functions() const { return functions_; }
  std::size_t size() const { return functions_.size(); }
  const BoolFun& operator[](std::size_t i) const { return functions_[i]; }

  int arity() const {
    int r = 0;
    for (const auto& f : functions_) r = std::max(r, f.arity());
    return r;
  }

  std::optional<std::size_t> find(std::string_view fname) const {
    for (std::size_t i = 0; i < functions_.size(); ++i)
      if (functions_[i].name() == fname) return i;
    return std::nullopt;
  }

 private:
  std::string name_;
  std::vector<BoolFun> functions_;
};

/// A member of a family together with the map that restricts it to some target.
struct Witness {
  std::size_t member = 0;
  ArgMap map;
};

/// First member containing g as a restriction; absent iff the family avoids g.
inline std::optional<Witness> represents(const ConstraintFamily& family, const BoolFun& g,
                                         const RestrictionSearch& opt = {}) {
  for (std::size_t i = 0; i < family.size(); ++i)
    if (auto m = find_restriction(family[i], g, opt)) return Witness{i, std::move(*m)};
  return std::nullopt;
}

enum class RegimeTag { fpt, subexponential, clique, brute_force };

inline std::string to_string(RegimeTag t) {
  switch (t) {
    case RegimeTag::fpt: return "FPT";
    case RegimeTag::subexponential: return "Subexponential";
    case RegimeTag::clique: return "Clique";
    case RegimeTag::brute_force: return "BruteForce";
  }
  return "?";
}

struct Regime {
  RegimeTag tag = RegimeTag::fpt;
  /// Target function ("IMPL", "NAND2", "NAND3") and the witness that triggers the tag.
  std::optional<std::pair<BoolFun, Witness>> evidence;
};

/// Four-way classification by which of NAND3, NAND2, IMPL the family represents.
inline Regime classify(const ConstraintFamily& family, const RestrictionSearch& opt = {}) {
  const std::pair<RegimeTag, BoolFun> order[] = {
      {RegimeTag::brute_force, fn::nand(3)}, {RegimeTag::clique, fn::nand(2)}, {RegimeTag::subexponential, fn::impl()}};
  for (const auto& [tag, target] : order)
    if (auto w = represents(family, target, opt)) return Regime{tag, std::make_pair(target, std::move(*w))};
  return Regime{};
}

/// Largest d >= 2 such that NAND_d is represented (searched up to the family arity), 0 if none.
inline int nand_order(const ConstraintFamily& family) {
  for (int d = family.arity(); d >= 2; --d)
    if (represents(family, fn::nand(d))) return d;
  return 0;
}

}  // namespace ewsat
