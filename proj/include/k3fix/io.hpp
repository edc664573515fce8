#pragma once

// JSON ingestion of scenarios and Weierstrass models, and JSON / markdown
// reports of solution sets.

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "k3fix/enumerate.hpp"
#include "k3fix/errors.hpp"
#include "k3fix/lefschetz.hpp"
#include "k3fix/weierstrass.hpp"

namespace k3fix {

using Json = nlohmann::ordered_json;

namespace detail {

/// Field access with a path prefix in every diagnostic.
class JsonReader {
 public:
  JsonReader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw UsageError((path_.empty() ? std::string("<root>") : path_) + ": " + what);
  }

  const Json& json() const { return j_; }
  const std::string& path() const { return path_; }

  JsonReader at(const std::string& key) const {
    if (!j_.is_object()) fail("expected an object");
    if (!j_.contains(key)) fail("missing field '" + key + "'");
    return JsonReader(j_.at(key), child(key));
  }

  JsonReader at(std::size_t idx) const {
    return JsonReader(j_.at(idx), path_ + "[" + std::to_string(idx) + "]");
  }

  bool has(const std::string& key) const {
    return j_.is_object() && j_.contains(key) && !j_.at(key).is_null();
  }

  std::int64_t integer() const {
    if (!j_.is_number_integer()) fail("expected an integer");
    return j_.get<std::int64_t>();
  }

  std::string string() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }

  std::size_t array_size() const {
    if (!j_.is_array()) fail("expected an array");
    return j_.size();
  }

  void only_keys(const std::set<std::string>& allowed) const {
    if (!j_.is_object()) fail("expected an object");
    for (const auto& [k, v] : j_.items())
      if (!allowed.count(k) && k.rfind('_', 0) != 0) fail("unknown field '" + k + "'");
  }

 private:
  std::string child(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }
  const Json& j_;
  std::string path_;
};

inline PointType read_type(const JsonReader& r, std::int64_t order) {
  if (r.array_size() != 2) r.fail("expected a pair [i, j]");
  try {
    return PointType(order, r.at(std::size_t{0}).integer(), r.at(std::size_t{1}).integer());
  } catch (const UsageError& e) {
    r.fail(e.what());
  }
}

inline TypeSelector read_selector(const JsonReader& r, std::int64_t order) {
  TypeSelector sel;
  if (r.json().is_array()) {  // a single explicit type
    sel.types.push_back(read_type(r, order));
    return sel;
  }
  if (r.has("types")) {
    const auto types = r.at("types");
    for (std::size_t k = 0; k < types.array_size(); ++k)
      sel.types.push_back(read_type(types.at(k), order));
  }
  if (r.has("power") || r.has("image")) {
    const std::int64_t power = r.at("power").integer();
    if (power < 1) r.at("power").fail("power must be >= 1");
    const std::int64_t target = order / std::gcd(order, power);
    if (target < 2) r.at("power").fail("sigma^power is the identity");
    sel.power = power;
    const auto img = r.at("image");
    if (img.json().is_string()) {
      if (img.string() != "curve") img.fail("image must be [i, j] or \"curve\"");
      sel.image = PointType::curve_point(target);
    } else {
      sel.image = read_type(img, target);
    }
  }
  if (sel.types.empty() && !sel.power) r.fail("expected 'types' or 'power'/'image'");
  return sel;
}

inline Sense read_sense(const JsonReader& r) {
  const std::string s = r.string();
  if (s == "<=" || s == "le") return Sense::kLessEqual;
  if (s == "=" || s == "==" || s == "eq") return Sense::kEqual;
  r.fail("sense must be \"<=\" or \"=\"");
}

inline std::optional<std::int64_t> optional_int(const JsonReader& r, const std::string& key,
                                                std::optional<std::int64_t> fallback) {
  if (!r.json().contains(key)) return fallback;
  if (r.json().at(key).is_null()) return std::nullopt;
  return r.at(key).integer();
}

}  // namespace detail

inline Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Translate the byte offset into line:column.
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw UsageError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": malformed JSON: " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Scenario scenario_from_json(const Json& j) {
  const detail::JsonReader r(j, "");
  r.only_keys({"name", "comment", "order", "q", "trace_on_S", "rank_S", "capacities",
               "forced_zero", "curve_policy", "search_bounds"});
  Scenario s;
  s.name = r.has("name") ? r.at("name").string() : "scenario";
  if (r.has("comment")) s.comment = r.at("comment").string();
  s.order = r.at("order").integer();
  if (s.order < 2) r.at("order").fail("order must be >= 2");
  s.q = r.has("q") ? r.at("q").integer() : 1;
  s.trace_on_S = r.at("trace_on_S").integer();
  if (r.has("rank_S")) s.rank_S = r.at("rank_S").integer();

  if (r.has("capacities")) {
    const auto caps = r.at("capacities");
    for (std::size_t k = 0; k < caps.array_size(); ++k) {
      const auto c = caps.at(k);
      c.only_keys({"types", "power", "image", "bound", "sense", "source"});
      Capacity cap;
      cap.selector = detail::read_selector(c, s.order);
      cap.bound = c.at("bound").integer();
      cap.sense = c.has("sense") ? detail::read_sense(c.at("sense")) : Sense::kLessEqual;
      if (c.has("source")) cap.source = c.at("source").string();
      s.capacities.push_back(std::move(cap));
    }
  }
  if (r.has("forced_zero")) {
    const auto fz = r.at("forced_zero");
    for (std::size_t k = 0; k < fz.array_size(); ++k) {
      const auto z = fz.at(k);
      if (z.json().is_object()) z.only_keys({"types", "power", "image", "source"});
      s.forced_zero.push_back(detail::read_selector(z, s.order));
    }
  }
  if (r.has("curve_policy")) {
    const auto cp = r.at("curve_policy");
    cp.only_keys({"max_curves", "genus_max", "exact_genera", "contained_in", "source"});
    s.curve_policy.max_curves = detail::optional_int(cp, "max_curves", std::nullopt);
    s.curve_policy.genus_max = detail::optional_int(cp, "genus_max", std::nullopt);
    if (cp.has("exact_genera")) {
      const auto eg = cp.at("exact_genera");
      std::vector<std::int64_t> g;
      for (std::size_t k = 0; k < eg.array_size(); ++k) g.push_back(eg.at(k).integer());
      s.curve_policy.exact_genera = g;
    }
    if (cp.has("contained_in")) s.curve_policy.contained_in = cp.at("contained_in").string();
  }
  if (r.json().contains("search_bounds")) {
    const auto sb = r.at("search_bounds");
    sb.only_keys({"max_multiplicity", "g_sum_min", "g_sum_max"});
    s.bounds.max_multiplicity = detail::optional_int(sb, "max_multiplicity", 24);
    s.bounds.g_sum_min = detail::optional_int(sb, "g_sum_min", -21);
    s.bounds.g_sum_max = detail::optional_int(sb, "g_sum_max", 12);
  }
  validate(s);
  return s;
}

inline Scenario load_scenario(const std::string& path) {
  return scenario_from_json(parse_json_text(read_file(path), path));
}

// ---------------------------------------------------------------------------
// Weierstrass models.

struct WeierstrassInput {
  std::string name;
  MonomialWeierstrass equation;
  DiagonalAction action;
};

/// {"name", "order", "weights": [wx, wy, wt], "rhs": [{"coef", "x", "t"}, ...]}
inline std::vector<WeierstrassInput> weierstrass_from_json(const Json& j) {
  std::vector<WeierstrassInput> out;
  auto one = [&](const detail::JsonReader& r) {
    r.only_keys({"name", "order", "weights", "rhs", "source"});
    const std::int64_t n = r.at("order").integer();
    if (n < 1) r.at("order").fail("order must be >= 1");
    const auto w = r.at("weights");
    if (w.array_size() != 3) w.fail("expected [w_x, w_y, w_t]");
    std::vector<Monomial> rhs;
    const auto terms = r.at("rhs");
    for (std::size_t k = 0; k < terms.array_size(); ++k) {
      const auto m = terms.at(k);
      m.only_keys({"coef", "x", "y", "t"});
      Monomial mono;
      mono.coefficient = m.has("coef") ? m.at("coef").integer() : 1;
      mono.x = m.has("x") ? m.at("x").integer() : 0;
      mono.y = m.has("y") ? m.at("y").integer() : 0;
      mono.t = m.has("t") ? m.at("t").integer() : 0;
      rhs.push_back(mono);
    }
    try {
      out.push_back({r.has("name") ? r.at("name").string() : "model",
                     MonomialWeierstrass(std::move(rhs)),
                     DiagonalAction(n, w.at(std::size_t{0}).integer(),
                                    w.at(std::size_t{1}).integer(),
                                    w.at(std::size_t{2}).integer())});
    } catch (const UsageError& e) {
      r.fail(e.what());
    }
  };
  if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k)
      one(detail::JsonReader(j.at(k), "[" + std::to_string(k) + "]"));
  } else {
    one(detail::JsonReader(j, ""));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports.

/// "11 isolated points + 1 rational curve".
inline std::string describe_config(const FixedLocusConfig& c) {
  auto plural = [](std::int64_t n, const std::string& one, const std::string& many) {
    return std::to_string(n) + " " + (n == 1 ? one : many);
  };
  std::string s = plural(c.isolated_count(), "isolated point", "isolated points");
  std::map<std::int64_t, std::int64_t> by_genus;
  for (auto g : c.curves.genera) ++by_genus[g];
  for (const auto& [g, n] : by_genus) {
    if (g == 0)
      s += " + " + plural(n, "rational curve", "rational curves");
    else if (g == 1)
      s += " + " + plural(n, "elliptic curve", "elliptic curves");
    else
      s += " + " + plural(n, "curve", "curves") + " of genus " + std::to_string(g);
  }
  return s;
}

inline Json config_to_json(const FixedLocusConfig& c) {
  Json pts = Json::array();
  for (const auto& [t, m] : c.points)
    pts.push_back(Json{{"type", {t.i(), t.j()}}, {"multiplicity", m}});
  return Json{{"points", pts},
              {"M", c.isolated_count()},
              {"N", c.curves.count()},
              {"genera", c.curves.genera},
              {"g_sum", c.curves.g_sum()},
              {"euler", c.euler},
              {"summary", describe_config(c)}};
}

inline Json report_json(const Scenario& s, const SolutionSet& set) {
  Json sols = Json::array();
  for (const auto& c : set.configs) sols.push_back(config_to_json(c));
  return Json{{"scenario", s.name},
              {"order", s.order},
              {"q", s.q},
              {"trace_on_S", s.trace_on_S},
              {"euler_characteristic", euler_characteristic(s.order, s.trace_on_S, s.q)},
              {"status", set.configs.empty() ? "infeasible" : "feasible"},
              {"solution_count", set.configs.size()},
              {"solutions", sols}};
}

/// Reads back the "solutions" part of a report (or a bare solutions array).
inline SolutionSet solution_set_from_json(const Json& j, std::int64_t order) {
  const detail::JsonReader root(j, "");
  const detail::JsonReader sols = j.is_array() ? root : root.at("solutions");
  SolutionSet set;
  for (std::size_t k = 0; k < sols.array_size(); ++k) {
    const auto c = sols.at(k);
    FixedLocusConfig cfg;
    cfg.order = order;
    const auto pts = c.at("points");
    for (std::size_t p = 0; p < pts.array_size(); ++p) {
      const auto e = pts.at(p);
      cfg.points[detail::read_type(e.at("type"), order)] = e.at("multiplicity").integer();
    }
    const auto g = c.at("genera");
    for (std::size_t p = 0; p < g.array_size(); ++p)
      cfg.curves.genera.push_back(g.at(p).integer());
    cfg.euler = c.at("euler").integer();
    if (c.has("M") && c.at("M").integer() != cfg.isolated_count())
      c.at("M").fail("disagrees with the listed points");
    if (!cfg.euler_consistent()) c.fail("euler != M + 2 * g_sum");
    set.configs.push_back(std::move(cfg));
  }
  return set;
}

inline std::string points_markdown(const FixedLocusConfig& c) {
  if (c.points.empty()) return "none";
  std::string s;
  for (const auto& [t, m] : c.points) {
    if (!s.empty()) s += " + ";
    if (m != 1) s += std::to_string(m) + "×";
    s += "P" + t.str();
  }
  return s;
}

inline std::string curves_markdown(const FixedLocusConfig& c) {
  if (c.curves.genera.empty()) return "none";
  std::string s;
  for (auto g : c.curves.genera) {
    if (!s.empty()) s += " ⊔ ";
    s += g == 0 ? "P¹" : g == 1 ? "E" : "C_" + std::to_string(g);
  }
  return s;
}

inline std::string report_markdown(const Scenario& s, const SolutionSet& set) {
  std::ostringstream out;
  out << "## Fixed locus classification: " << s.name << "\n\n";
  out << "order " << s.order << ", q = " << s.q << ", tr(σ*|S) = " << s.trace_on_S
      << ", χ = " << euler_characteristic(s.order, s.trace_on_S, s.q) << "\n\n";
  if (set.configs.empty()) {
    out << "No configuration satisfies the constraints (infeasible).\n";
    return out.str();
  }
  out << "| # | isolated points | M | curves | N | χ |\n";
  out << "|---|---|---|---|---|---|\n";
  for (std::size_t k = 0; k < set.configs.size(); ++k) {
    const auto& c = set.configs[k];
    out << "| " << k + 1 << " | " << points_markdown(c) << " | " << c.isolated_count() << " | "
        << curves_markdown(c) << " | " << c.curves.count() << " | " << c.euler << " |\n";
  }
  out << "\n"
      << set.configs.size() << (set.configs.size() == 1 ? " configuration" : " configurations")
      << ":\n";
  for (std::size_t k = 0; k < set.configs.size(); ++k)
    out << "- " << describe_config(set.configs[k]) << ", χ = " << set.configs[k].euler << "\n";
  return out.str();
}

}  // namespace k3fix
