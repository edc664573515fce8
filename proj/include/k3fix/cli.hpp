#pragma once

// Command-line front end. `run_cli` is the whole program; the executable in
// tools/ only forwards argv and the standard streams.
//
// Exit codes: 0 success (an empty solution set included), 1 usage error,
// 2 internal inconsistency.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "k3fix/cyclotomic.hpp"
#include "k3fix/enumerate.hpp"
#include "k3fix/errors.hpp"
#include "k3fix/io.hpp"
#include "k3fix/lattice.hpp"
#include "k3fix/lefschetz.hpp"
#include "k3fix/linear_system.hpp"
#include "k3fix/weierstrass.hpp"

namespace k3fix {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInternal = 2;

namespace cli {

/// Loads a scenario file plus, recursively, every scenario its curve policy
/// refers to (looked up as <dir>/<name>.json).
inline ScenarioRegistry load_with_dependencies(const std::string& path,
                                               const std::string& scenario_dir,
                                               std::string& root_name) {
  ScenarioRegistry reg;
  Scenario root = load_scenario(path);
  root_name = root.name;
  std::vector<std::string> pending;
  if (root.curve_policy.contained_in) pending.push_back(*root.curve_policy.contained_in);
  reg.add(std::move(root));
  while (!pending.empty()) {
    const std::string name = pending.back();
    pending.pop_back();
    if (reg.contains(name)) continue;
    const auto file = std::filesystem::path(scenario_dir) / (name + ".json");
    Scenario dep = load_scenario(file.string());
    if (dep.name != name)
      throw UsageError(file.string() + ": scenario is named '" + dep.name + "', expected '" +
                       name + "'");
    if (dep.curve_policy.contained_in) pending.push_back(*dep.curve_policy.contained_in);
    reg.add(std::move(dep));
  }
  return reg;
}

inline void emit(const std::string& text, const std::string& out_file, std::ostream& out) {
  if (out_file.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_file, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + out_file + "'");
  f << text;
}

inline std::string tightness_text(const TightnessReport& rep) {
  std::ostringstream s;
  s << "tightness over " << rep.solution_count << " solution(s):\n";
  for (const auto& e : rep.entries) {
    s << "  " << (e.holds ? "[holds]   " : "[fails]   ") << e.target.label << "  observed:";
    for (auto v : e.observed) s << " " << v;
    s << "\n";
  }
  return s.str();
}

inline int cmd_traces(std::int64_t n, std::int64_t q, std::ostream& out) {
  if (n < 1) throw UsageError("traces: n must be >= 1");
  out << "order: " << n << "\n"
      << "phi: " << euler_totient(n) << "\n"
      << "moebius: " << moebius(n) << "\n"
      << "primitive_trace: " << primitive_trace(n) << "\n"
      << "transcendental_trace(q=" << q << "): " << transcendental_trace(n, q) << "\n";
  return kExitOk;
}

inline int cmd_lattice(const std::string& expr, std::optional<std::int64_t> order, bool show_gram,
                       std::ostream& out) {
  const Lattice l = parse_lattice_sum(expr);
  const auto inv = invariants(l);
  out << "lattice: " << l.name() << "\n"
      << "rank: " << inv.rank << "\n"
      << "determinant: " << inv.determinant << "\n"
      << "signature: (" << inv.signature.positive << "," << inv.signature.negative << ")"
      << (inv.signature.nullity ? " nullity " + std::to_string(inv.signature.nullity) : "")
      << "\n"
      << "even: " << (inv.is_even ? "yes" : "no") << "\n"
      << "unimodular: " << (inv.is_unimodular ? "yes" : "no") << "\n";
  if (inv.is_degenerate) out << "degenerate: yes\n";
  if (show_gram) {
    out << "gram:\n";
    for (const auto& row : l.gram()) {
      out << " ";
      for (auto v : row) out << " " << v;
      out << "\n";
    }
  }
  if (order) {
    const auto d = deduce_ranks({*order, static_cast<std::int64_t>(inv.rank), 22});
    out << "rank deduction (order " << *order << ", invariant rank " << inv.rank << "):\n";
    out << "  feasible rk T:";
    for (auto t : d.feasible_rank_T) out << " " << t;
    out << "\n";
    if (d.unique)
      out << "  rk T = " << d.rank_T << ", rk S = " << d.rank_S << "\n"
          << "  action on S forced trivial: " << (d.action_on_S_forced_trivial ? "yes" : "no")
          << "\n";
    else
      out << "  underdetermined\n";
  }
  return kExitOk;
}

inline int cmd_solve(std::int64_t order, const std::vector<std::string>& free_names,
                     std::ostream& out) {
  const ConstraintSystem sys = build_holomorphic_system(order);
  std::map<std::string, AffineExpression> solved;
  if (free_names.empty()) {
    // Pivot on the later types first, keeping the small-i types and g_sum
    // free.
    std::vector<std::size_t> col;
    const std::size_t n = sys.variables().size();
    for (std::size_t k = n - 1; k-- > 0;) col.push_back(k);
    col.push_back(n - 1);
    const auto red = reduce_equalities(sys, col);
    if (!red.consistent) throw InvariantError("holomorphic system is inconsistent");
    for (const auto& [p, e] : red.solved) solved.emplace(sys.variables()[p], e);
  } else {
    solved = solve_for(sys, free_names);
  }
  out << "order: " << order << "\n"
      << "variables: " << sys.variables().size() << "\n"
      << "equations: " << sys.equalities().size() << "\n"
      << "rank: " << solved.size() << "\n"
      << "relations:\n";
  // Print in variable order.
  for (const auto& name : sys.variables()) {
    auto it = solved.find(name);
    if (it != solved.end()) out << "  " << format_affine(name, it->second, sys.variables()) << "\n";
  }
  return kExitOk;
}

inline int cmd_enumerate(const std::string& file, std::string scenario_dir,
                         const std::string& format, const std::string& out_file,
                         unsigned threads, bool tightness, std::ostream& out) {
  if (scenario_dir.empty())
    scenario_dir = std::filesystem::path(file).parent_path().string();
  if (scenario_dir.empty()) scenario_dir = ".";
  std::string name;
  const ScenarioRegistry reg = load_with_dependencies(file, scenario_dir, name);
  const SolutionSet set = reg.enumerate(name, threads);
  const Scenario& s = reg.get(name);
  std::string text = format == "json" ? report_json(s, set).dump(2) + "\n"
                                      : report_markdown(s, set);
  if (tightness) {
    if (s.order != 42) throw UsageError("--tightness applies to order-42 scenarios");
    text += "\n" + tightness_text(check_tightness(set, order42_tightness_targets()));
  }
  emit(text, out_file, out);
  return kExitOk;
}

inline int cmd_verify_weierstrass(const std::string& file, std::ostream& out) {
  const auto models = weierstrass_from_json(parse_json_text(read_file(file), file));
  bool all_ok = true;
  for (const auto& m : models) {
    const auto inv = check_invariance(m.equation, m.action);
    out << m.name << ": " << m.equation.str() << "\n"
        << "  action weights (x, y, t) mod " << m.action.order() << ": (" << m.action.wx()
        << ", " << m.action.wy() << ", " << m.action.wt() << ")\n"
        << "  effective order: " << m.action.effective_order() << "\n"
        << "  monomial weights: " << inv.describe() << "\n";
    if (!inv.invariant) {
      out << "  invariant: no\n";
      all_ok = false;
      continue;
    }
    const auto w = two_form_weight(m.action);
    out << "  invariant: yes (common weight " << inv.common_weight << ")\n"
        << "  2-form weight: " << w.weight << (w.primitive ? " (unit)" : " (not a unit)")
        << "\n"
        << "  non-symplectic of order " << m.action.order() << ": "
        << (w.primitive && !w.symplectic_or_trivial ? "yes" : "no") << "\n";
  }
  out << (all_ok ? "all models invariant\n" : "some models are not invariant\n");
  return all_ok ? kExitOk : kExitUsage;
}

inline int cmd_repro(const std::string& which, const std::string& scenario_dir, unsigned threads,
                     std::ostream& out, std::ostream& err) {
  static const std::set<std::string> known = {"order7", "order21", "order42"};
  if (!known.count(which))
    throw UsageError("repro: expected one of order7, order21, order42");
  const auto dir = std::filesystem::path(scenario_dir);
  std::string name;
  const ScenarioRegistry reg = load_with_dependencies((dir / (which + ".json")).string(),
                                                      dir.string(), name);
  const SolutionSet set = reg.enumerate(name, threads);
  const Scenario& s = reg.get(name);
  const std::string json = report_json(s, set).dump(2) + "\n";
  out << report_markdown(s, set);
  if (s.order == 42) out << "\n" << tightness_text(check_tightness(set, order42_tightness_targets()));

  const auto golden = dir / "golden" / (which + ".json");
  const std::string expected = read_file(golden.string());
  if (expected != json) {
    err << "repro " << which << ": output differs from " << golden.string() << "\n"
        << "--- expected\n" << expected << "--- actual\n" << json;
    return kExitInternal;
  }
  out << "\ngolden: " << golden.filename().string() << " matches\n";
  return kExitOk;
}

}  // namespace cli

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                   std::string default_scenario_dir = "scenarios") {
  CLI::App app{"Fixed loci of non-symplectic automorphisms of K3 surfaces", "k3fix"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::int64_t traces_n = 0, traces_q = 1;
  auto* traces = app.add_subcommand("traces", "sum of primitive n-th roots of unity");
  traces->add_option("n", traces_n, "order")->required();
  traces->add_option("--q", traces_q, "multiplicity of each primitive eigenvalue on T");

  std::string lattice_expr;
  std::optional<std::int64_t> lattice_order;
  bool show_gram = false;
  auto* lattice = app.add_subcommand("lattice", "invariants of a direct sum like U+E8+A6");
  lattice->add_option("expr", lattice_expr, "lattice expression")->required();
  lattice->add_option("--order", lattice_order,
                      "also deduce rk S / rk T, treating the lattice as S^sigma");
  lattice->add_flag("--gram", show_gram, "print the Gram matrix");

  std::int64_t solve_order = 0;
  std::vector<std::string> free_names;
  auto* solve = app.add_subcommand("solve", "reduced holomorphic Lefschetz system");
  solve->add_option("--order", solve_order, "automorphism order")->required();
  solve->add_option("--free", free_names, "variables to keep free, e.g. m(2,20) g_sum");

  std::string scenario_file, scenario_dir, format = "markdown", out_file;
  unsigned threads = 1;
  bool tightness = false;
  auto* enumerate = app.add_subcommand("enumerate", "classify the configurations of a scenario");
  enumerate->add_option("--scenario", scenario_file, "scenario JSON file")->required();
  enumerate->add_option("--scenario-dir", scenario_dir,
                        "where referenced scenarios live (default: the file's directory)");
  enumerate->add_option("--format", format, "markdown or json")
      ->check(CLI::IsMember({"markdown", "json"}));
  enumerate->add_option("--out", out_file, "write the report here instead of stdout");
  enumerate->add_option("--threads", threads, "search threads");
  enumerate->add_flag("--tightness", tightness, "check the six order-42 equalities");

  std::string weierstrass_file;
  auto* weier = app.add_subcommand("verify-weierstrass", "check diagonal automorphisms");
  weier->add_option("file", weierstrass_file, "model JSON")->required();

  std::string repro_which, repro_dir = default_scenario_dir;
  auto* repro = app.add_subcommand("repro", "run a shipped scenario against its golden output");
  repro->add_option("which", repro_which, "order7, order21 or order42")->required();
  repro->add_option("--scenario-dir", repro_dir, "directory of shipped scenarios");
  repro->add_option("--threads", threads, "search threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*traces) return cli::cmd_traces(traces_n, traces_q, out);
    if (*lattice) return cli::cmd_lattice(lattice_expr, lattice_order, show_gram, out);
    if (*solve) return cli::cmd_solve(solve_order, free_names, out);
    if (*enumerate)
      return cli::cmd_enumerate(scenario_file, scenario_dir, format, out_file, threads,
                                tightness, out);
    if (*weier) return cli::cmd_verify_weierstrass(weierstrass_file, out);
    if (*repro) return cli::cmd_repro(repro_which, repro_dir, threads, out, err);
  } catch (const InvariantError& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace k3fix
