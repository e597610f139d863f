#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ewsat/boolfun.hpp"
#include "ewsat/clique.hpp"
#include "ewsat/common.hpp"
#include "ewsat/formula.hpp"
#include "ewsat/wdi.hpp"

namespace ewsat::io {

namespace detail {

/// Non-empty lines split on whitespace, '#' comments removed, with 1-based line numbers.
struct Line {
  int number = 0;
  std::vector<std::string> tok;
};

inline std::vector<Line> lines(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ss(raw);
    Line l{number, {}};
    for (std::string t; ss >> t;) l.tok.push_back(std::move(t));
    if (!l.tok.empty()) out.push_back(std::move(l));
  }
  return out;
}

inline std::int64_t integer(const std::string& s, int line, std::int64_t lo, std::int64_t hi, const char* what) {
  std::int64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) throw ParseError(std::string(what) + " '" + s + "' is not an integer", line);
  if (v < lo || v > hi)
    throw ParseError(std::string(what) + " " + s + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]", line);
  return v;
}

inline void arity(const Line& l, std::size_t count) {
  if (l.tok.size() != count)
    throw ParseError("'" + l.tok[0] + "' line expects " + std::to_string(count - 1) + " fields, got " + std::to_string(l.tok.size() - 1), l.number);
}

inline void header(const Line& l, const char* kind, std::size_t count) {
  if (l.tok[0] != "p" || l.tok.size() < 2 || l.tok[1] != kind) throw ParseError(std::string("expected header 'p ") + kind + " ...'", l.number);
  arity(l, count);
}

template <typename Fn>
auto rethrow_usage(int line, Fn&& fn) {
  try {
    return fn();
  } catch (const UsageError& e) {
    throw ParseError(e.what(), line);
  } catch (const CapacityError&) {
    throw;
  }
}

inline std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return in;
}

}  // namespace detail

// --- family: `fun <name> <arity> <table>` -----------------------------------

inline ConstraintFamily read_family(std::istream& in, const std::string& name, int max_arity = kDefaultMaxArity) {
  std::vector<BoolFun> fs;
  for (const auto& l : detail::lines(in)) {
    if (l.tok[0] != "fun") throw ParseError("unknown directive '" + l.tok[0] + "'", l.number);
    detail::arity(l, 4);
    const int r = static_cast<int>(detail::integer(l.tok[2], l.number, 0, kTableArityLimit, "arity"));
    if (r > max_arity) throw CapacityError("line " + std::to_string(l.number) + ": arity " + std::to_string(r) + " exceeds the limit " + std::to_string(max_arity));
    for (const auto& f : fs)
      if (f.name() == l.tok[1]) throw ParseError("duplicate function name '" + l.tok[1] + "'", l.number);
    fs.push_back(detail::rethrow_usage(l.number, [&] { return BoolFun::from_string(l.tok[1], r, l.tok[3]); }));
  }
  if (fs.empty()) throw ParseError("family '" + name + "' defines no functions", 0);
  return ConstraintFamily(name, std::move(fs));
}

inline void write_family(std::ostream& out, const ConstraintFamily& f) {
  for (const auto& g : f.functions()) out << "fun " << g.name() << ' ' << g.arity() << ' ' << g.to_string() << '\n';
}

// --- formula: `p ewsat n m k`, `use <family>`, `c <fun> <t1..tr>` -------------

struct FormulaFile {
  Formula formula;
  int k = 0;
  std::string use;  // family name from the `use` line
};

/// Reads only the `use` line, so that the family can be located before parsing.
inline std::string read_use(std::istream& in) {
  for (const auto& l : detail::lines(in))
    if (l.tok[0] == "use") {
      detail::arity(l, 2);
      return l.tok[1];
    }
  throw ParseError("formula has no 'use' line", 0);
}

inline FormulaFile read_formula(std::istream& in, std::shared_ptr<const ConstraintFamily> family) {
  const auto ls = detail::lines(in);
  if (ls.empty()) throw ParseError("empty formula file", 0);
  detail::header(ls[0], "ewsat", 5);
  const int n = static_cast<int>(detail::integer(ls[0].tok[2], ls[0].number, 0, 1 << 24, "variable count"));
  const auto m = detail::integer(ls[0].tok[3], ls[0].number, 0, std::int64_t{1} << 40, "constraint count");
  const int k = static_cast<int>(detail::integer(ls[0].tok[4], ls[0].number, 0, 1 << 24, "target weight"));
  FormulaFile out{Formula(n, family), k, {}};
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto& l = ls[i];
    if (l.tok[0] == "use") {
      detail::arity(l, 2);
      if (!out.use.empty()) throw ParseError("second 'use' line", l.number);
      out.use = l.tok[1];
    } else if (l.tok[0] == "c") {
      if (l.tok.size() < 2) throw ParseError("constraint without a function name", l.number);
      const auto fi = family->find(l.tok[1]);
      if (!fi) throw ParseError("unknown function '" + l.tok[1] + "'", l.number);
      Constraint c{*fi, {}};
      for (std::size_t t = 2; t < l.tok.size(); ++t) {
        if (l.tok[t] == "T")
          c.args.push_back(Term::constant(true));
        else if (l.tok[t] == "F")
          c.args.push_back(Term::constant(false));
        else
          c.args.push_back(Term::variable(static_cast<int>(detail::integer(l.tok[t], l.number, 1, n, "variable")) - 1));
      }
      detail::rethrow_usage(l.number, [&] { out.formula.add(std::move(c)); return 0; });
    } else {
      throw ParseError("unknown directive '" + l.tok[0] + "'", l.number);
    }
  }
  if (static_cast<std::int64_t>(out.formula.m()) != m)
    throw ParseError("header announces " + std::to_string(m) + " constraints, found " + std::to_string(out.formula.m()), ls[0].number);
  if (out.use.empty()) throw ParseError("formula has no 'use' line", 0);
  return out;
}

inline void write_formula(std::ostream& out, const Formula& phi, int k, const std::string& use) {
  out << "p ewsat " << phi.n() << ' ' << phi.m() << ' ' << k << '\n';
  out << "use " << use << '\n';
  for (const auto& c : phi.constraints()) {
    out << "c " << phi.function_of(c).name();
    for (const auto& t : c.args) {
      if (t.is_var())
        out << ' ' << t.var + 1;
      else
        out << ' ' << (t.value ? 'T' : 'F');
    }
    out << '\n';
  }
}

// --- weighted implications: `p wdi n m k`, `w v weight`, `a u v` ---------------

inline WdiInstance read_wdi(std::istream& in) {
  const auto ls = detail::lines(in);
  if (ls.empty()) throw ParseError("empty WDI file", 0);
  detail::header(ls[0], "wdi", 5);
  WdiInstance g;
  g.n = static_cast<int>(detail::integer(ls[0].tok[2], ls[0].number, 0, 1 << 24, "vertex count"));
  const auto m = detail::integer(ls[0].tok[3], ls[0].number, 0, std::int64_t{1} << 40, "arc count");
  g.k = detail::integer(ls[0].tok[4], ls[0].number, 0, std::int64_t{1} << 40, "target weight");
  g.weight.assign(static_cast<std::size_t>(g.n), 1);
  std::vector<char> weighted(static_cast<std::size_t>(g.n), 0);
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto& l = ls[i];
    if (l.tok[0] == "w") {
      detail::arity(l, 3);
      const auto v = static_cast<std::size_t>(detail::integer(l.tok[1], l.number, 1, g.n, "vertex") - 1);
      if (weighted[v]) throw ParseError("second weight for vertex " + l.tok[1], l.number);
      weighted[v] = 1;
      g.weight[v] = detail::integer(l.tok[2], l.number, 1, std::int64_t{1} << 40, "weight");
    } else if (l.tok[0] == "a") {
      detail::arity(l, 3);
      const int u = static_cast<int>(detail::integer(l.tok[1], l.number, 1, g.n, "vertex")) - 1;
      const int v = static_cast<int>(detail::integer(l.tok[2], l.number, 1, g.n, "vertex")) - 1;
      g.arcs.emplace_back(u, v);
    } else {
      throw ParseError("unknown directive '" + l.tok[0] + "'", l.number);
    }
  }
  if (static_cast<std::int64_t>(g.arcs.size()) != m)
    throw ParseError("header announces " + std::to_string(m) + " arcs, found " + std::to_string(g.arcs.size()), ls[0].number);
  return g;
}

/// Weight lines are written for every vertex whose weight is not 1.
inline void write_wdi(std::ostream& out, const WdiInstance& g) {
  out << "p wdi " << g.n << ' ' << g.arcs.size() << ' ' << g.k << '\n';
  for (int v = 0; v < g.n; ++v)
    if (g.weight[static_cast<std::size_t>(v)] != 1) out << "w " << v + 1 << ' ' << g.weight[static_cast<std::size_t>(v)] << '\n';
  for (const auto& [u, v] : g.arcs) out << "a " << u + 1 << ' ' << v + 1 << '\n';
}

// --- graphs: `p edge n m`, `e u v`; hypergraphs: `p hedge d n m`, `e v1..vd` ---

inline Graph read_graph(std::istream& in) {
  const auto ls = detail::lines(in);
  if (ls.empty()) throw ParseError("empty graph file", 0);
  detail::header(ls[0], "edge", 4);
  const int n = static_cast<int>(detail::integer(ls[0].tok[2], ls[0].number, 0, 1 << 20, "vertex count"));
  const auto m = detail::integer(ls[0].tok[3], ls[0].number, 0, std::int64_t{1} << 40, "edge count");
  Graph g(n);
  std::int64_t seen = 0;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto& l = ls[i];
    if (l.tok[0] != "e") throw ParseError("unknown directive '" + l.tok[0] + "'", l.number);
    detail::arity(l, 3);
    const int u = static_cast<int>(detail::integer(l.tok[1], l.number, 1, n, "vertex")) - 1;
    const int v = static_cast<int>(detail::integer(l.tok[2], l.number, 1, n, "vertex")) - 1;
    if (u == v) throw ParseError("self-loop", l.number);
    if (g.has_edge(u, v)) throw ParseError("duplicate edge", l.number);
    g.add_edge(u, v);
    ++seen;
  }
  if (seen != m) throw ParseError("header announces " + std::to_string(m) + " edges, found " + std::to_string(seen), ls[0].number);
  return g;
}

inline void write_graph(std::ostream& out, const Graph& g) {
  const auto es = g.edges();
  out << "p edge " << g.n() << ' ' << es.size() << '\n';
  for (const auto& [u, v] : es) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

inline Hypergraph read_hypergraph(std::istream& in) {
  const auto ls = detail::lines(in);
  if (ls.empty()) throw ParseError("empty hypergraph file", 0);
  detail::header(ls[0], "hedge", 5);
  const int d = static_cast<int>(detail::integer(ls[0].tok[2], ls[0].number, 1, 64, "uniformity"));
  const int n = static_cast<int>(detail::integer(ls[0].tok[3], ls[0].number, 0, 1 << 20, "vertex count"));
  const auto m = detail::integer(ls[0].tok[4], ls[0].number, 0, std::int64_t{1} << 40, "edge count");
  Hypergraph h(d, n);
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto& l = ls[i];
    if (l.tok[0] != "e") throw ParseError("unknown directive '" + l.tok[0] + "'", l.number);
    detail::arity(l, static_cast<std::size_t>(d) + 1);
    std::vector<int> e;
    for (int j = 1; j <= d; ++j) e.push_back(static_cast<int>(detail::integer(l.tok[static_cast<std::size_t>(j)], l.number, 1, n, "vertex")) - 1);
    const bool fresh = detail::rethrow_usage(l.number, [&] { return h.add_edge(e); });
    if (!fresh) throw ParseError("duplicate hyperedge", l.number);
  }
  if (static_cast<std::int64_t>(h.m()) != m)
    throw ParseError("header announces " + std::to_string(m) + " edges, found " + std::to_string(h.m()), ls[0].number);
  return h;
}

inline void write_hypergraph(std::ostream& out, const Hypergraph& h) {
  out << "p hedge " << h.d() << ' ' << h.n() << ' ' << h.m() << '\n';
  for (const auto& e : h.edges()) {
    out << 'e';
    for (int v : e) out << ' ' << v + 1;
    out << '\n';
  }
}

// --- file helpers -------------------------------------------------------------

inline ConstraintFamily load_family(const std::string& path, const std::string& name, int max_arity = kDefaultMaxArity) {
  auto in = detail::open(path);
  return read_family(in, name, max_arity);
}

inline WdiInstance load_wdi(const std::string& path) {
  auto in = detail::open(path);
  return read_wdi(in);
}

inline Graph load_graph(const std::string& path) {
  auto in = detail::open(path);
  return read_graph(in);
}

inline Hypergraph load_hypergraph(const std::string& path) {
  auto in = detail::open(path);
  return read_hypergraph(in);
}

inline FormulaFile load_formula(const std::string& path, std::shared_ptr<const ConstraintFamily> family) {
  auto in = detail::open(path);
  return read_formula(in, std::move(family));
}

}  // namespace ewsat::io
