// ewsat: classify constraint families, solve exact-weight instances, generate
// reduction instances and cross-check a corpus against the oracle.
//
// Exit codes: 10 YES, 20 certified NO, 21 monte-carlo NO, 2 usage or parse
// error, 3 capacity guard, 1 internal error or xcheck mismatch, 0 otherwise.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ewsat/ewsat.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace ewsat;

namespace {

constexpr int kExitYes = 10;
constexpr int kExitNo = 20;
constexpr int kExitMonteCarloNo = 21;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitFailure = 1;

std::shared_ptr<const ConstraintFamily> load_family(const std::string& path) {
  return std::make_shared<const ConstraintFamily>(io::load_family(path, fs::path(path).stem().string()));
}

std::string with_file(const std::string& path, const ParseError& e) { return path + ": " + e.what(); }

/// Formula plus its family. Without an explicit family the `use` line names
/// `<use>.fam` next to the formula.
struct Loaded {
  std::shared_ptr<const ConstraintFamily> family;
  io::FormulaFile file;
};

Loaded load_instance(const std::string& formula_path, const std::string& family_path) {
  std::string fam_path = family_path;
  if (fam_path.empty()) {
    auto in = io::detail::open(formula_path);
    std::string use;
    try {
      use = io::read_use(in);
    } catch (const ParseError& e) {
      throw ParseError(with_file(formula_path, e), 0);
    }
    fam_path = (fs::path(formula_path).parent_path() / (use + ".fam")).string();
  }
  Loaded out;
  try {
    out.family = load_family(fam_path);
  } catch (const ParseError& e) {
    throw ParseError(with_file(fam_path, e), 0);
  }
  try {
    out.file = io::load_formula(formula_path, out.family);
  } catch (const ParseError& e) {
    throw ParseError(with_file(formula_path, e), 0);
  }
  if (out.file.use != out.family->name())
    std::cerr << "warning: formula uses '" << out.file.use << "' but the family file defines '" << out.family->name() << "'\n";
  return out;
}

std::vector<int> one_based(const Assignment& a) {
  auto v = a.ones();
  for (int& x : v) ++x;
  return v;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

std::string describe(const ConstraintFamily& fam, const Witness& w) {
  return fam[w.member].name() + " " + w.map.to_string();
}

// --- classify ---------------------------------------------------------------

struct ClassifyOpts {
  std::string family;
  bool json = false;
};

int run_classify(const ClassifyOpts& o) {
  const auto fam = load_family(o.family);
  const auto c = classify(*fam);
  const std::vector<std::pair<std::string, BoolFun>> targets{{"IMPL", fn::impl()}, {"NAND2", fn::nand(2)}, {"NAND3", fn::nand(3)}};
  if (o.json) {
    json j{{"family", fam->name()}, {"regime", to_string(c.tag)}, {"nand_order", nand_order(*fam)}};
    json reps = json::object();
    for (const auto& [name, g] : targets) {
      const auto w = represents(*fam, g);
      reps[name] = w ? json(describe(*fam, *w)) : json(nullptr);
    }
    j["represents"] = reps;
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::cout << to_string(c.tag) << '\n';
  for (const auto& [name, g] : targets) {
    const auto w = represents(*fam, g);
    std::cout << "  " << name << ": " << (w ? describe(*fam, *w) : std::string("avoided")) << '\n';
  }
  return 0;
}

// --- solve ------------------------------------------------------------------

struct SolveOpts {
  std::string formula, family, method = "auto";
  std::uint64_t budget = 0, seed = 0;
  int threads = 1;
  double delta = 0.01;
  bool oracle = false, exhaustive = false, hyperclique = false, json = false, verbose = false;
};

MethodChoice parse_method(const std::string& s) {
  static const std::map<std::string, MethodChoice> m{{"auto", MethodChoice::automatic},
                                                     {"oracle", MethodChoice::oracle},
                                                     {"bruteforce", MethodChoice::bruteforce},
                                                     {"implication", MethodChoice::implication},
                                                     {"clique", MethodChoice::clique}};
  return m.at(s);
}

int exit_code(const Answer& a) {
  if (a.yes()) return kExitYes;
  return a.certainty == Certainty::certified ? kExitNo : kExitMonteCarloNo;
}

int run_solve(const SolveOpts& o) {
  const auto inst = load_instance(o.formula, o.family);
  SolveConfig cfg;
  cfg.method = o.oracle ? MethodChoice::oracle : parse_method(o.method);
  cfg.budget = o.budget;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.exhaustive = o.exhaustive;
  cfg.delta = o.delta;
  cfg.hyperclique_speedup = o.hyperclique;
  if (o.verbose) cfg.diag = [](const std::string& s) { std::cerr << "c " << s << '\n'; };
  const auto a = solve(inst.file.formula, inst.file.k, cfg);

  if (o.json) {
    json j{{"verdict", a.yes() ? "YES" : "NO"},
           {"witness", a.yes() ? json(one_based(*a.witness)) : json(nullptr)},
           {"regime", to_string(a.regime)},
           {"method", to_string(a.method)},
           {"certainty", to_string(a.certainty)},
           {"trials", a.trials},
           {"nodes", a.nodes},
           {"seed", o.seed}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "s " << (a.yes() ? "YES" : "NO") << '\n';
    if (a.yes()) std::cout << "v " << join(one_based(*a.witness)) << '\n';
    std::cout << "c regime " << to_string(a.regime) << " method " << to_string(a.method) << " certainty "
              << to_string(a.certainty) << " trials " << a.trials << " nodes " << a.nodes << '\n';
  }
  return exit_code(a);
}

// --- gen --------------------------------------------------------------------

struct GenOpts {
  std::string kind, input, family, input_family, output, family_output;
  int k = -1;
};

/// Writes to the output file, or stdout when none was given.
template <typename Fn>
void emit_to(const std::string& path, Fn&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'", 0);
  write(out);
}

void emit_family(const std::string& path, const ConstraintFamily& fam) {
  if (!path.empty()) emit_to(path, [&](std::ostream& os) { io::write_family(os, fam); });
}

int run_gen(const GenOpts& o) {
  if (o.kind == "clique-to-wdi") {
    if (o.k < 0) throw UsageError("clique-to-wdi needs --k");
    const auto g = clique_to_wdi(io::load_graph(o.input), o.k);
    emit_to(o.output, [&](std::ostream& os) { io::write_wdi(os, g); });
  } else if (o.kind == "wdi-to-unit") {
    const auto u = wdi_to_unit(io::load_wdi(o.input));
    emit_to(o.output, [&](std::ostream& os) { io::write_wdi(os, u.graph); });
  } else if (o.kind == "digraph-to-impl") {
    const auto g = io::load_wdi(o.input);
    const auto phi = digraph_to_sat_impl(g);
    emit_family(o.family_output, phi.family());
    emit_to(o.output, [&](std::ostream& os) { io::write_formula(os, phi, static_cast<int>(g.k), phi.family().name()); });
  } else if (o.kind == "hyper-to-nand") {
    if (o.k < 0) throw UsageError("hyper-to-nand needs --k");
    const auto phi = hypergraph_to_sat_nand(io::load_hypergraph(o.input));
    emit_family(o.family_output, phi.family());
    emit_to(o.output, [&](std::ostream& os) { io::write_formula(os, phi, o.k, phi.family().name()); });
  } else if (o.kind == "express") {
    if (o.family.empty()) throw UsageError("express needs --family (the target family)");
    const auto inst = load_instance(o.input, o.input_family);
    const auto target = load_family(o.family);
    const auto ex = express_sat_g_in_family(inst.file.formula, target, inst.file.k);
    std::cerr << "c route " << ex.route << " via " << describe(*target, ex.witness) << '\n';
    emit_to(o.output, [&](std::ostream& os) { io::write_formula(os, ex.formula, ex.k, target->name()); });
  } else {
    throw UsageError("unknown generator '" + o.kind + "'");
  }
  return 0;
}

// --- xcheck -----------------------------------------------------------------

struct XcheckOpts {
  std::string dir;
  std::uint64_t seed = 0;
};

/// Expected verdict file: `YES v1 .. vk` (1-based) or `NO`.
struct Expectation {
  bool yes = false;
  std::vector<int> ones;  // 0-based
};

Expectation read_expectation(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw ParseError("cannot open '" + p.string() + "'", 0);
  std::vector<std::string> tok;
  for (std::string t; in >> t;) tok.push_back(t);
  if (tok.empty() || (tok[0] != "YES" && tok[0] != "NO")) throw ParseError(p.string() + ": expected YES or NO", 1);
  Expectation e{tok[0] == "YES", {}};
  for (std::size_t i = 1; i < tok.size(); ++i) e.ones.push_back(static_cast<int>(io::detail::integer(tok[i], 1, 1, 1 << 24, "variable")) - 1);
  if (!e.yes && !e.ones.empty()) throw ParseError(p.string() + ": NO takes no variables", 1);
  return e;
}

int run_xcheck(const XcheckOpts& o) {
  if (!fs::is_directory(o.dir)) throw UsageError("'" + o.dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(o.dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());

  int checked = 0, failed = 0, misses = 0;
  auto fail = [&](const fs::path& p, const std::string& why) {
    ++failed;
    std::cout << "FAIL " << p.filename().string() << ": " << why << '\n';
  };
  for (const auto& p : files) {
    const auto ext = p.extension().string();
    if (ext == ".fam") {
      ++checked;
      const auto fam = load_family(p.string());
      std::cout << "ok   " << p.filename().string() << ": " << to_string(classify(*fam).tag) << '\n';
    } else if (ext == ".ews") {
      ++checked;
      const auto inst = load_instance(p.string(), "");
      const auto& phi = inst.file.formula;
      const int k = inst.file.k;
      const auto truth = solve_oracle(phi, k);
      SolveConfig cfg;
      cfg.seed = o.seed;
      const auto a = solve(phi, k, cfg);
      std::string why;
      if (a.yes() && !verify(phi, *a.witness, k)) why = "solver witness does not verify";
      if (a.yes() != truth.yes()) {
        if (!a.yes() && a.certainty == Certainty::monte_carlo) {
          ++misses;
          std::cout << "miss " << p.filename().string() << ": monte-carlo NO, oracle YES\n";
        } else {
          why = std::string("solver ") + (a.yes() ? "YES" : "NO") + ", oracle " + (truth.yes() ? "YES" : "NO");
        }
      }
      auto wit = p;
      wit.replace_extension(".wit");
      if (why.empty() && fs::exists(wit)) {
        const auto e = read_expectation(wit);
        if (e.yes != truth.yes())
          why = std::string("expected ") + (e.yes ? "YES" : "NO") + ", oracle " + (truth.yes() ? "YES" : "NO");
        else if (e.yes && (std::any_of(e.ones.begin(), e.ones.end(), [&](int v) { return v >= phi.n(); }) ||
                           !verify(phi, Assignment::from_ones(static_cast<std::size_t>(phi.n()), e.ones), k)))
          why = "recorded witness does not verify";
      }
      if (!why.empty())
        fail(p, why);
      else
        std::cout << "ok   " << p.filename().string() << ": " << (truth.yes() ? "YES" : "NO") << " (" << to_string(a.regime) << ")\n";
    } else if (ext == ".wdi") {
      ++checked;
      const auto g = io::load_wdi(p.string());
      const auto fr = solve_frobenius(g);
      // the sources solver needs an acyclic graph
      const auto so = is_acyclic(g) ? solve_sources(g) : fr;
      std::optional<std::vector<int>> bf;
      if (g.n <= kBruteForceMaxVertices) bf = solve_bruteforce(g);
      std::string why;
      if (fr.has_value() != so.has_value()) why = "frobenius and sources solvers disagree";
      if (g.n <= kBruteForceMaxVertices && fr.has_value() != bf.has_value()) why = "frobenius and brute force disagree";
      for (const auto& w : {fr, so, bf})
        if (w && !verify_witness(g, *w)) why = "witness does not verify";
      if (!why.empty())
        fail(p, why);
      else
        std::cout << "ok   " << p.filename().string() << ": " << (fr ? "YES" : "NO") << '\n';
    }
  }
  if (checked == 0) std::cerr << "warning: no instances in '" << o.dir << "'\n";
  std::cout << "checked " << checked << " files, " << failed << " failed, " << misses << " monte-carlo misses\n";
  return failed ? kExitFailure : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-weight constraint satisfaction"};
  app.require_subcommand(1);

  ClassifyOpts co;
  auto* classify_cmd = app.add_subcommand("classify", "Report the regime of a constraint family");
  classify_cmd->add_option("family", co.family, "Family file")->required()->check(CLI::ExistingFile);
  classify_cmd->add_flag("--json", co.json, "JSON report");

  SolveOpts so;
  auto* solve_cmd = app.add_subcommand("solve", "Find a weight-k solution");
  solve_cmd->add_option("formula", so.formula, "Formula file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("family", so.family, "Family file (default: <use>.fam next to the formula)")->check(CLI::ExistingFile);
  solve_cmd->add_option("--method", so.method, "auto, oracle, bruteforce, implication or clique")
      ->check(CLI::IsMember({"auto", "oracle", "bruteforce", "implication", "clique"}));
  solve_cmd->add_flag("--oracle", so.oracle, "Exact enumeration (n <= 24)");
  solve_cmd->add_option("--budget", so.budget, "Trials per branch (0: default)");
  solve_cmd->add_option("--seed", so.seed, "Random seed");
  solve_cmd->add_option("--threads", so.threads, "Parallel trials")->check(CLI::Range(1, 256));
  solve_cmd->add_option("--delta", so.delta, "Color-coding failure probability")->check(CLI::Range(1e-12, 0.5));
  solve_cmd->add_flag("--exhaustive", so.exhaustive, "Replay all random choices (small n)");
  solve_cmd->add_flag("--hyperclique", so.hyperclique, "Clique pipeline for wide brute-force families");
  solve_cmd->add_flag("--json", so.json, "JSON report");
  solve_cmd->add_flag("-v,--verbose", so.verbose, "Diagnostics on stderr");

  GenOpts go;
  auto* gen_cmd = app.add_subcommand("gen", "Write a reduction instance");
  gen_cmd->add_option("kind", go.kind, "clique-to-wdi, wdi-to-unit, digraph-to-impl, hyper-to-nand or express")
      ->required()
      ->check(CLI::IsMember({"clique-to-wdi", "wdi-to-unit", "digraph-to-impl", "hyper-to-nand", "express"}));
  gen_cmd->add_option("input", go.input, "Input file")->required()->check(CLI::ExistingFile);
  gen_cmd->add_option("--k", go.k, "Target (clique-to-wdi, hyper-to-nand)");
  gen_cmd->add_option("--family", go.family, "Target family (express)")->check(CLI::ExistingFile);
  gen_cmd->add_option("--input-family", go.input_family, "Family of the input formula (express)")->check(CLI::ExistingFile);
  gen_cmd->add_option("-o,--output", go.output, "Output file (default: stdout)");
  gen_cmd->add_option("--family-out", go.family_output, "Also write the output family");

  XcheckOpts xo;
  auto* xcheck_cmd = app.add_subcommand("xcheck", "Cross-check a corpus directory against the oracles");
  xcheck_cmd->add_option("dir", xo.dir, "Corpus directory")->required();
  xcheck_cmd->add_option("--seed", xo.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*classify_cmd) return run_classify(co);
    if (*solve_cmd) return run_solve(so);
    if (*gen_cmd) return run_gen(go);
    if (*xcheck_cmd) return run_xcheck(xo);
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
