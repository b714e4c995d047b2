#pragma once

// Declarative scenarios: a root datum, labelled module recipes and tasks, run into
// one key=value record per line.
//
//   [datum]
//   type = B2
//   parameters = 1 2          # one value per parameter orbit
//   extra_dims = 0            # optional
//
//   [module.St]
//   kind = one_dim            # one_dim | principal_series | parabolic_induction | dual
//   signs = -1 -1
//
//   [module.M]
//   kind = principal_series
//   gamma = 3 7
//
//   [module.I]
//   kind = parabolic_induction
//   J = 1                     # 1-based simple roots; induce from H_J
//   source = St               # Ind Res of a module, or signs = ... for a character of H_J
//
//   [module.DSt]
//   kind = dual
//   op = D                    # star | bullet | iota | theta | D
//   source = St
//
//   [task.e1]
//   kind = ext_dims           # ext_dims duality_check ep_check aubert_check indres_check classify elliptic_count
//   pair = St St              # or pairs = all | pairs = A:B C:D
//   expect = 1 0 0            # optional
//
// Single-module tasks take module = X or modules = all | X Y ...

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "heckext/hom_complex.hpp"
#include "heckext/indres.hpp"

namespace heckext {

class ScenarioError : public Error {
 public:
  enum class Kind { Syntax, UnresolvedLabel, InvalidRecipe, Cycle, Task };
  ScenarioError(Kind kind, int line, int column, const std::string& msg)
      : Error(where(line, column) + msg), kind_(kind), line_(line), column_(column) {}
  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string where(int line, int column) {
    if (line <= 0) return "";
    return "line " + std::to_string(line) + (column > 0 ? ", column " + std::to_string(column) : "") + ": ";
  }
  Kind kind_;
  int line_, column_;
};

struct ScenarioEntry {
  std::string value;
  int line = 0, key_column = 0, value_column = 0;
};

struct ScenarioSection {
  std::string kind;  // datum, module, task
  std::string name;
  int line = 0;
  std::vector<std::pair<std::string, ScenarioEntry>> entries;

  const ScenarioEntry* find(const std::string& key) const {
    for (const auto& [k, e] : entries)
      if (k == key) return &e;
    return nullptr;
  }
};

struct ModuleRecipe {
  ScenarioSection section;
  std::string kind;
  std::vector<std::string> sources;
};

struct TaskSpec {
  ScenarioSection section;
  std::string kind;
  std::vector<std::pair<std::string, std::string>> pairs;  // pair tasks
  std::vector<std::string> modules;                        // single-module tasks and elliptic_count
  std::optional<std::vector<std::string>> expect;
};

struct Scenario {
  std::string type;
  std::vector<Scalar> parameters;
  std::size_t extra_dims = 0;
  AlgebraPtr algebra;
  std::vector<ModuleRecipe> modules;  // declaration order
  std::vector<TaskSpec> tasks;
  std::vector<std::string> build_order;  // labels, sources first

  const ModuleRecipe* recipe(const std::string& label) const {
    for (const auto& m : modules)
      if (m.section.name == label) return &m;
    return nullptr;
  }
};

// ---- records -----------------------------------------------------------------

/// Always "p/q", also for integers, so every scalar field has one shape.
inline std::string scalar_field(const Scalar& x) { return x.get_num().get_str() + "/" + x.get_den().get_str(); }

template <class T>
std::string join(const std::vector<T>& v, const std::string& sep = ",") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

inline std::string join_scalars(const std::vector<Scalar>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + scalar_field(v[i]);
  return s;
}

struct ReportRecord {
  std::string task, kind;
  std::vector<std::pair<std::string, std::string>> fields;
  bool passed = true;
  std::optional<long> wall_ms;

  void add(std::string key, std::string value) { fields.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, bool b) { add(std::move(key), std::string(b ? "true" : "false")); }
  void check(std::string key, bool b) {
    add(std::move(key), b);
    passed = passed && b;
  }
  const std::string* get(const std::string& key) const {
    for (const auto& [k, v] : fields)
      if (k == key) return &v;
    return nullptr;
  }

  std::string to_line() const;
};

namespace detail {

inline bool needs_quotes(const std::string& v) {
  return v.empty() || v.find_first_of(" \t\"\\=") != std::string::npos;
}

inline std::string quote(const std::string& v) {
  if (!needs_quotes(v)) return v;
  std::string q = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') q += '\\';
    q += c;
  }
  return q + "\"";
}

}  // namespace detail

inline std::string ReportRecord::to_line() const {
  std::string s = "task=" + detail::quote(task) + " kind=" + kind;
  for (const auto& [k, v] : fields) s += " " + k + "=" + detail::quote(v);
  s += std::string(" status=") + (passed ? "pass" : "fail");
  if (wall_ms) s += " wall_ms=" + std::to_string(*wall_ms);
  return s;
}

/// Inverse of ReportRecord::to_line as an ordered key/value list.
inline std::vector<std::pair<std::string, std::string>> parse_record_line(const std::string& line) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    if (i >= line.size()) break;
    const std::size_t eq = line.find('=', i);
    if (eq == std::string::npos) throw Error("record field without '=' at offset " + std::to_string(i));
    std::string key = line.substr(i, eq - i), value;
    i = eq + 1;
    if (i < line.size() && line[i] == '"') {
      ++i;
      while (i < line.size() && line[i] != '"') {
        if (line[i] == '\\' && i + 1 < line.size()) ++i;
        value += line[i++];
      }
      if (i >= line.size()) throw Error("unterminated quoted value for '" + key + "'");
      ++i;
    } else {
      while (i < line.size() && line[i] != ' ') value += line[i++];
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

// ---- parsing -----------------------------------------------------------------

namespace detail {

using SK = ScenarioError::Kind;

inline std::vector<ScenarioSection> split_sections(const std::string& text) {
  std::vector<ScenarioSection> out;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (trim(line).empty()) continue;
    const int indent = static_cast<int>(line.find_first_not_of(" \t")) + 1;
    const std::string body = trim(line);
    if (body.front() == '[') {
      if (body.back() != ']') throw ScenarioError(SK::Syntax, lineno, indent, "unterminated section header");
      const std::string name = trim(body.substr(1, body.size() - 2));
      ScenarioSection s;
      s.line = lineno;
      if (name == "datum") {
        s.kind = "datum";
      } else if (name.rfind("module.", 0) == 0 || name.rfind("task.", 0) == 0) {
        const auto dot = name.find('.');
        s.kind = name.substr(0, dot);
        s.name = name.substr(dot + 1);
        if (s.name.empty() || s.name.find_first_of(" \t:") != std::string::npos)
          throw ScenarioError(SK::Syntax, lineno, indent + 1 + static_cast<int>(dot) + 1,
                              "invalid " + s.kind + " label '" + s.name + "'");
      } else {
        throw ScenarioError(SK::Syntax, lineno, indent + 1, "unknown section '" + name + "'");
      }
      for (const auto& prev : out)
        if (prev.kind == s.kind && prev.name == s.name)
          throw ScenarioError(SK::Syntax, lineno, indent,
                              "duplicate section [" + name + "] (first at line " + std::to_string(prev.line) + ")");
      out.push_back(std::move(s));
      continue;
    }
    if (out.empty()) throw ScenarioError(SK::Syntax, lineno, indent, "key = value outside of any section");
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ScenarioError(SK::Syntax, lineno, indent, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ScenarioError(SK::Syntax, lineno, static_cast<int>(eq) + 1, "empty key");
    ScenarioEntry e;
    e.line = lineno;
    e.key_column = indent;
    const auto vstart = line.find_first_not_of(" \t", eq + 1);
    e.value_column = static_cast<int>(vstart == std::string::npos ? eq + 2 : vstart + 1);
    e.value = trim(line.substr(eq + 1));
    if (out.back().find(key)) throw ScenarioError(SK::Syntax, lineno, indent, "duplicate key '" + key + "'");
    out.back().entries.emplace_back(key, std::move(e));
  }
  return out;
}

inline const ScenarioEntry& require(const ScenarioSection& s, const std::string& key) {
  if (const auto* e = s.find(key)) return *e;
  throw ScenarioError(SK::InvalidRecipe, s.line, 0,
                      "[" + s.kind + (s.name.empty() ? "" : "." + s.name) + "] is missing '" + key + "'");
}

inline void allow_keys(const ScenarioSection& s, std::initializer_list<const char*> keys) {
  for (const auto& [k, e] : s.entries)
    if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; }))
      throw ScenarioError(SK::InvalidRecipe, e.line, e.key_column, "unknown key '" + k + "' in [" + s.kind +
                                                                        (s.name.empty() ? "" : "." + s.name) + "]");
}

inline std::vector<Scalar> scalars(const ScenarioEntry& e) {
  std::vector<Scalar> v;
  std::size_t pos = 0;
  for (const auto& tok : detail::split_ws(e.value)) {
    pos = e.value.find(tok, pos);
    try {
      v.push_back(parse_scalar(tok));
    } catch (const Error& err) {
      throw ScenarioError(SK::InvalidRecipe, e.line, e.value_column + static_cast<int>(pos), err.what());
    }
    pos += tok.size();
  }
  return v;
}

inline std::vector<long> integers(const ScenarioEntry& e) {
  std::vector<long> out;
  for (const auto& s : scalars(e)) {
    if (!is_integer(s) || !s.get_num().fits_slong_p())
      throw ScenarioError(SK::InvalidRecipe, e.line, e.value_column, "expected integers in '" + e.value + "'");
    out.push_back(s.get_num().get_si());
  }
  return out;
}

inline void check_label(const Scenario& sc, const std::string& label, const ScenarioEntry& e) {
  if (sc.recipe(label)) return;
  const auto pos = e.value.find(label);
  throw ScenarioError(SK::UnresolvedLabel, e.line, e.value_column + static_cast<int>(pos == std::string::npos ? 0 : pos),
                      "unresolved module label '" + label + "'");
}

inline unsigned parse_subset(const Algebra& alg, const ScenarioEntry& e) {
  unsigned mask = 0;
  for (long j : integers(e)) {
    if (j < 1 || static_cast<std::size_t>(j) > alg.rank())
      throw ScenarioError(SK::InvalidRecipe, e.line, e.value_column,
                          "simple root index " + std::to_string(j) + " outside 1.." + std::to_string(alg.rank()));
    mask |= 1u << (j - 1);
  }
  return mask;
}

inline void check_signs(std::size_t want, const ScenarioEntry& e) {
  const auto s = integers(e);
  if (s.size() != want)
    throw ScenarioError(SK::InvalidRecipe, e.line, e.value_column,
                        "expected " + std::to_string(want) + " sign(s), got " + std::to_string(s.size()));
  for (long x : s)
    if (x != 1 && x != -1) throw ScenarioError(SK::InvalidRecipe, e.line, e.value_column, "signs must be 1 or -1");
}

inline const std::set<std::string>& task_kinds() {
  static const std::set<std::string> k{"ext_dims",     "duality_check", "ep_check",      "aubert_check",
                                       "indres_check", "classify",      "elliptic_count"};
  return k;
}

inline bool is_pair_task(const std::string& k) { return k == "ext_dims" || k == "duality_check" || k == "ep_check"; }

}  // namespace detail

inline Scenario parse_scenario(const std::string& text) {
  using detail::SK;
  const auto sections = detail::split_sections(text);
  Scenario sc;

  const ScenarioSection* datum = nullptr;
  for (const auto& s : sections)
    if (s.kind == "datum") datum = &s;
  if (!datum) throw ScenarioError(SK::InvalidRecipe, 0, 0, "missing [datum] section");
  detail::allow_keys(*datum, {"type", "parameters", "extra_dims"});
  const auto& type = detail::require(*datum, "type");
  sc.type = type.value;
  if (const auto* p = datum->find("parameters")) sc.parameters = detail::scalars(*p);
  if (const auto* x = datum->find("extra_dims")) {
    const auto v = detail::integers(*x);
    if (v.size() != 1 || v[0] < 0) throw ScenarioError(SK::InvalidRecipe, x->line, x->value_column, "extra_dims must be one integer >= 0");
    sc.extra_dims = static_cast<std::size_t>(v[0]);
  }
  try {
    sc.algebra = Algebra::create(build_root_datum(sc.type, sc.parameters, sc.extra_dims));
  } catch (const Error& e) {
    throw ScenarioError(SK::InvalidRecipe, type.line, type.value_column, e.what());
  }
  const Algebra& alg = *sc.algebra;

  for (const auto& s : sections)
    if (s.kind == "module") sc.modules.push_back({s, "", {}});
  for (const auto& s : sections)
    if (s.kind == "task") sc.tasks.push_back({s, "", {}, {}, std::nullopt});

  for (auto& m : sc.modules) {
    const auto& s = m.section;
    const auto& kind = detail::require(s, "kind");
    m.kind = kind.value;
    if (m.kind == "one_dim") {
      detail::allow_keys(s, {"kind", "signs"});
      detail::check_signs(alg.rank(), detail::require(s, "signs"));
    } else if (m.kind == "principal_series") {
      detail::allow_keys(s, {"kind", "gamma"});
      const auto& g = detail::require(s, "gamma");
      if (detail::scalars(g).size() != alg.dim_v())
        throw ScenarioError(SK::InvalidRecipe, g.line, g.value_column, "gamma needs " + std::to_string(alg.dim_v()) + " coordinate(s)");
    } else if (m.kind == "parabolic_induction") {
      detail::allow_keys(s, {"kind", "J", "source", "signs"});
      const unsigned mask = detail::parse_subset(alg, detail::require(s, "J"));
      const auto* src = s.find("source");
      const auto* signs = s.find("signs");
      if (!!src == !!signs) throw ScenarioError(SK::InvalidRecipe, s.line, 0, "parabolic_induction needs exactly one of source, signs");
      if (src) {
        detail::check_label(sc, src->value, *src);
        m.sources.push_back(src->value);
      } else {
        detail::check_signs(static_cast<std::size_t>(__builtin_popcount(mask)), *signs);
      }
    } else if (m.kind == "dual") {
      detail::allow_keys(s, {"kind", "op", "source"});
      const auto& op = detail::require(s, "op");
      static const std::set<std::string> ops{"star", "bullet", "iota", "theta", "D"};
      if (!ops.count(op.value)) throw ScenarioError(SK::InvalidRecipe, op.line, op.value_column, "unknown dual op '" + op.value + "'");
      const auto& src = detail::require(s, "source");
      detail::check_label(sc, src.value, src);
      m.sources.push_back(src.value);
    } else {
      throw ScenarioError(SK::InvalidRecipe, kind.line, kind.value_column, "unknown module kind '" + m.kind + "'");
    }
  }

  // Topological order; a grey node met again closes a cycle.
  std::map<std::string, int> colour;
  std::function<void(const ModuleRecipe&)> visit = [&](const ModuleRecipe& m) {
    int& c = colour[m.section.name];
    if (c == 2) return;
    if (c == 1) throw ScenarioError(SK::Cycle, m.section.line, 0, "module recipes form a cycle through '" + m.section.name + "'");
    c = 1;
    for (const auto& src : m.sources) visit(*sc.recipe(src));
    colour[m.section.name] = 2;
    sc.build_order.push_back(m.section.name);
  };
  for (const auto& m : sc.modules) visit(m);

  std::vector<std::string> all_labels;
  for (const auto& m : sc.modules) all_labels.push_back(m.section.name);

  for (auto& t : sc.tasks) {
    const auto& s = t.section;
    const auto& kind = detail::require(s, "kind");
    t.kind = kind.value;
    if (!detail::task_kinds().count(t.kind))
      throw ScenarioError(SK::InvalidRecipe, kind.line, kind.value_column, "unknown task kind '" + t.kind + "'");
    if (detail::is_pair_task(t.kind)) {
      detail::allow_keys(s, {"kind", "pair", "pairs", "expect"});
      const auto* pair = s.find("pair");
      const auto* pairs = s.find("pairs");
      if (!!pair == !!pairs) throw ScenarioError(SK::InvalidRecipe, s.line, 0, t.kind + " needs exactly one of pair, pairs");
      if (pair) {
        const auto lab = detail::split_ws(pair->value);
        if (lab.size() != 2) throw ScenarioError(SK::InvalidRecipe, pair->line, pair->value_column, "pair needs two labels");
        for (const auto& l : lab) detail::check_label(sc, l, *pair);
        t.pairs.emplace_back(lab[0], lab[1]);
      } else if (pairs->value == "all") {
        for (const auto& a : all_labels)
          for (const auto& b : all_labels) t.pairs.emplace_back(a, b);
      } else {
        for (const auto& tok : detail::split_ws(pairs->value)) {
          const auto colon = tok.find(':');
          if (colon == std::string::npos)
            throw ScenarioError(SK::InvalidRecipe, pairs->line, pairs->value_column, "pairs entries look like X:Y, got '" + tok + "'");
          const std::string a = tok.substr(0, colon), b = tok.substr(colon + 1);
          detail::check_label(sc, a, *pairs);
          detail::check_label(sc, b, *pairs);
          t.pairs.emplace_back(a, b);
        }
      }
      if (const auto* e = s.find("expect")) {
        if (t.pairs.size() != 1) throw ScenarioError(SK::InvalidRecipe, e->line, e->key_column, "expect needs a single pair");
        detail::integers(*e);
        t.expect = detail::split_ws(e->value);
      }
    } else {
      const bool ell = t.kind == "elliptic_count";
      if (t.kind == "classify")
        detail::allow_keys(s, {"kind", "module", "modules", "expect_tempered", "expect_discrete_series", "expect_irreducible"});
      else if (ell)
        detail::allow_keys(s, {"kind", "modules", "expect"});
      else
        detail::allow_keys(s, {"kind", "module", "modules"});
      const auto* one = s.find("module");
      const auto* many = s.find("modules");
      if (one && many) throw ScenarioError(SK::InvalidRecipe, s.line, 0, "use one of module, modules");
      if (!one && !many && !ell) throw ScenarioError(SK::InvalidRecipe, s.line, 0, t.kind + " needs module or modules");
      if (one) {
        detail::check_label(sc, one->value, *one);
        t.modules.push_back(one->value);
      } else if (many && many->value == "all") {
        t.modules = all_labels;
      } else if (many) {
        for (const auto& l : detail::split_ws(many->value)) {
          detail::check_label(sc, l, *many);
          t.modules.push_back(l);
        }
      }
      if (const auto* e = s.find("expect")) {
        const auto v = detail::integers(*e);
        if (v.size() != 1) throw ScenarioError(SK::InvalidRecipe, e->line, e->value_column, "expect takes one count");
        t.expect = detail::split_ws(e->value);
      }
      for (const char* key : {"expect_tempered", "expect_discrete_series", "expect_irreducible"})
        if (const auto* e = s.find(key); e && e->value != "true" && e->value != "false")
          throw ScenarioError(SK::InvalidRecipe, e->line, e->value_column, std::string(key) + " must be true or false");
    }
  }
  return sc;
}

// ---- running -----------------------------------------------------------------

/// Reads and parses a scenario file; unreadable files raise a Syntax error at line 0.
inline Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(ScenarioError::Kind::Syntax, 0, 0, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

struct RunOptions {
  bool timing = false;  // adds wall_ms, which breaks byte-identical output
};

inline std::map<std::string, HModule> build_modules(const Scenario& sc) {
  std::map<std::string, HModule> built;
  for (const auto& label : sc.build_order) {
    const ModuleRecipe& m = *sc.recipe(label);
    const auto& s = m.section;
    try {
      HModule x;
      if (m.kind == "one_dim") {
        std::vector<int> signs;
        for (long v : detail::integers(*s.find("signs"))) signs.push_back(static_cast<int>(v));
        x = one_dim_module(sc.algebra, signs);
      } else if (m.kind == "principal_series") {
        x = principal_series(sc.algebra, detail::scalars(*s.find("gamma")));
      } else if (m.kind == "parabolic_induction") {
        const unsigned mask = detail::parse_subset(*sc.algebra, *s.find("J"));
        HModule xj;
        if (const auto* src = s.find("source")) {
          xj = restrict_to_parabolic(built.at(src->value), mask);
        } else {
          std::vector<int> signs;
          for (long v : detail::integers(*s.find("signs"))) signs.push_back(static_cast<int>(v));
          xj = one_dim_module(sc.algebra->parabolic(mask).algebra, signs);
        }
        x = parabolic_induction_checked(sc.algebra, mask, xj);
      } else {
        const HModule& src = built.at(s.find("source")->value);
        const std::string& op = s.find("op")->value;
        if (op == "star") x = dual_star(src);
        else if (op == "bullet") x = dual_bullet(src);
        else if (op == "iota") x = iota(src);
        else if (op == "theta") x = theta(src);
        else x = dD(src);
      }
      built.emplace(label, require_valid(x.relabeled(label)));
    } catch (const ScenarioError&) {
      throw;
    } catch (const Error& e) {
      throw ScenarioError(ScenarioError::Kind::InvalidRecipe, s.line, 0, "module '" + label + "': " + e.what());
    }
  }
  return built;
}

namespace detail {

inline std::string ext_string(const std::vector<std::size_t>& v) { return join(v); }

/// Everything pair tasks share for one (X, Y): the complex is built at most once.
struct PairContext {
  const HModule& x;
  const HModule& y;
  ExtCache& cache;
  std::optional<HomComplex> c;
  const HomComplex& complex() {
    if (!c) {
      c.emplace(x, y);
      cache.remember(*c);
    }
    return *c;
  }
};

inline void run_pair_task(const TaskSpec& t, const HModule& x, const HModule& y, PairContext& ctx, ReportRecord& r) {
  ExtCache& cache = ctx.cache;
  r.add("x", x.label());
  r.add("y", y.label());
  if (t.kind == "ext_dims") {
    const HomComplex& c = ctx.complex();
    const auto ext = c.ext_dims();
    r.add("term_dims", ext_string(c.term_dims()));
    r.add("ext", ext_string(ext));
    r.add("ep", scalar_field(euler_poincare(ext)));
    r.add("elliptic", scalar_field(elliptic_pairing(w_character(x), w_character(y))));
    r.check("d_squared_zero", c.d_squared_zero());
    r.check("forms_agree", c.differential_forms_agree());
    r.check("ext0_is_hom", ext.front() == hom_space(x, y).size());
    if (t.expect) r.check("expected", join(*t.expect) == ext_string(ext));
  } else if (t.kind == "ep_check") {
    const auto ext = ctx.complex().ext_dims();
    const Scalar ep = euler_poincare(ext);
    const Scalar ell = elliptic_pairing(w_character(x), w_character(y));
    r.add("ext", ext_string(ext));
    r.add("ep", scalar_field(ep));
    r.add("elliptic", scalar_field(ell));
    r.check("ep_equals_elliptic", ep == ell);
    if (t.expect) r.check("expected", join(*t.expect) == ext_string(ext));
  } else {
    const auto d = duality_check(x, y, &cache, &ctx.complex());
    std::vector<std::size_t> ranks;
    for (const auto& p : d.pairing) ranks.push_back(rank(p));
    r.add("ext", ext_string(d.ext));
    r.add("partner_ext", ext_string(d.partner_ext));
    r.add("pairing_ranks", ext_string(ranks));
    r.check("dimensions_match", d.dimensions_match);
    r.check("psi_intertwines", d.psi_intertwines);
    r.check("adjointness", d.adjointness);
    r.check("full_rank", d.full_rank);
    std::size_t held = 0;
    const auto sym = ext_symmetry_checks(x, y, &cache);
    for (const auto& s : sym) held += s.passed();
    r.add("symmetries", std::to_string(held) + "/" + std::to_string(sym.size()));
    r.check("symmetries_hold", held == sym.size());
    if (t.expect) r.check("expected", join(*t.expect) == ext_string(d.ext));
  }
}

inline void run_module_task(const TaskSpec& t, const HModule& x, ReportRecord& r) {
  r.add("x", x.label());
  if (t.kind == "aubert_check") {
    const auto au = aubert_virtual_character(x);
    const auto want = w_character(x) * sgn_character(x.algebra());
    r.add("aubert", au.to_string());
    r.add("sgn_chi", want.to_string());
    r.check("aubert_is_sgn_chi", au == want);
  } else if (t.kind == "indres_check") {
    const auto rep = indres_complex(x);
    std::vector<std::size_t> dims;
    for (const auto& s : rep.stages) dims.push_back(s.dim);
    r.add("stage_dims", ext_string(dims));
    r.add("ranks", ext_string(rep.ranks));
    r.add("kernel_dim", std::to_string(rep.kernel_dim));
    r.add("euler_count", std::to_string(rep.euler_count));
    r.check("equivariant", rep.maps_equivariant);
    r.check("composites_vanish", rep.composites_vanish);
    r.check("exact", rep.exact);
    r.check("kernel_is_chi_image", rep.kernel_is_image_of_chi);
    r.check("kernel_is_D", rep.kernel_isomorphic_to_D);
    r.check("euler_count_one", rep.euler_count == 1);
  } else {  // classify
    const bool irr = is_irreducible(x);
    const bool temp = is_tempered(x);
    const bool ds = is_discrete_series(x);
    const auto cc = central_character(x);
    r.add("dim", std::to_string(x.dim()));
    r.add("irreducible", irr);
    r.add("tempered", temp);
    r.add("discrete_series", ds);
    r.add("central_character", cc.to_string());
    std::vector<std::string> chi;
    const auto character = w_character(x);
    for (const auto& v : character.values()) chi.push_back(scalar_field(v));
    r.add("character", join(chi));
    const auto expect = [&](const char* key, bool got) {
      if (const auto* e = t.section.find(key)) r.check(std::string(key), (e->value == "true") == got);
    };
    expect("expect_irreducible", irr);
    expect("expect_tempered", temp);
    expect("expect_discrete_series", ds);
  }
}

}  // namespace detail

/// Discrete series among the given irreducible modules, counted up to isomorphism.
inline std::size_t count_discrete_series(const std::vector<const HModule*>& mods) {
  std::vector<const HModule*> reps;
  for (const auto* m : mods) {
    if (!is_discrete_series(*m) || !is_irreducible(*m)) continue;
    if (std::none_of(reps.begin(), reps.end(), [&](const HModule* r) { return is_isomorphic(*r, *m); })) reps.push_back(m);
  }
  return reps.size();
}

/// Pair jobs are grouped by module content so each complex is built once; records
/// still come out in declaration order.
inline std::vector<ReportRecord> run_scenario(const Scenario& sc, RunOptions opts = {}) {
  const auto built = build_modules(sc);
  ExtCache cache;
  std::vector<std::vector<ReportRecord>> per_task(sc.tasks.size());
  std::map<std::string, std::string> keys;
  for (const auto& [label, m] : built) keys[label] = module_key(m);

  auto fail = [&](const TaskSpec& t, const std::string& what) -> ScenarioError {
    return ScenarioError(ScenarioError::Kind::Task, t.section.line, 0, "task '" + t.section.name + "': " + what);
  };
  auto timed = [&](ReportRecord& r, auto&& body) {
    const auto start = std::chrono::steady_clock::now();
    body();
    if (opts.timing)
      r.wall_ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  };

  struct Job {
    std::size_t task, slot;
  };
  std::vector<std::pair<std::string, std::vector<Job>>> groups;
  std::map<std::string, std::size_t> group_of;
  for (std::size_t ti = 0; ti < sc.tasks.size(); ++ti) {
    const auto& t = sc.tasks[ti];
    if (!detail::is_pair_task(t.kind)) continue;
    per_task[ti].resize(t.pairs.size());
    for (std::size_t pi = 0; pi < t.pairs.size(); ++pi) {
      const std::string k = keys.at(t.pairs[pi].first) + "#" + keys.at(t.pairs[pi].second);
      auto [it, fresh] = group_of.emplace(k, groups.size());
      if (fresh) groups.emplace_back(k, std::vector<Job>{});
      groups[it->second].second.push_back({ti, pi});
    }
  }
  for (const auto& [key, jobs] : groups) {
    const auto& first = sc.tasks[jobs.front().task].pairs[jobs.front().slot];
    detail::PairContext ctx{built.at(first.first), built.at(first.second), cache, std::nullopt};
    for (const auto& job : jobs) {
      const auto& t = sc.tasks[job.task];
      const auto& [a, b] = t.pairs[job.slot];
      ReportRecord& r = per_task[job.task][job.slot];
      r.task = t.section.name;
      r.kind = t.kind;
      try {
        timed(r, [&] { detail::run_pair_task(t, built.at(a), built.at(b), ctx, r); });
      } catch (const ScenarioError&) {
        throw;
      } catch (const Error& e) {
        throw fail(t, e.what());
      }
    }
  }

  for (std::size_t ti = 0; ti < sc.tasks.size(); ++ti) {
    const auto& t = sc.tasks[ti];
    if (detail::is_pair_task(t.kind)) continue;
    try {
      if (t.kind == "elliptic_count") {
        ReportRecord r{t.section.name, t.kind, {}, true, std::nullopt};
        timed(r, [&] {
          const auto& g = sc.algebra->group();
          const std::size_t n = elliptic_classes(g).size();
          r.add("type", sc.type);
          r.add("classes", std::to_string(g.class_count()));
          r.add("elliptic_classes", std::to_string(n));
          if (!t.modules.empty()) {
            std::vector<const HModule*> mods;
            for (const auto& l : t.modules) mods.push_back(&built.at(l));
            const std::size_t ds = count_discrete_series(mods);
            r.add("discrete_series_seen", std::to_string(ds));
            r.check("within_bound", ds <= n);
          }
          if (t.expect) r.check("expected", t.expect->front() == std::to_string(n));
        });
        per_task[ti].push_back(std::move(r));
      } else {
        for (const auto& l : t.modules) {
          ReportRecord r{t.section.name, t.kind, {}, true, std::nullopt};
          timed(r, [&] { detail::run_module_task(t, built.at(l), r); });
          per_task[ti].push_back(std::move(r));
        }
      }
    } catch (const ScenarioError&) {
      throw;
    } catch (const Error& e) {
      throw fail(t, e.what());
    }
  }

  std::vector<ReportRecord> out;
  for (auto& v : per_task)
    for (auto& r : v) out.push_back(std::move(r));
  return out;
}

inline bool all_passed(const std::vector<ReportRecord>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const ReportRecord& r) { return r.passed; });
}

inline std::string render_records(const std::vector<ReportRecord>& rs) {
  std::string s;
  for (const auto& r : rs) s += r.to_line() + "\n";
  return s;
}

/// Human table built from the records alone.
inline std::string render_table(const std::vector<ReportRecord>& rs) {
  std::size_t wt = 4, wk = 4, wi = 6;
  auto inputs = [](const ReportRecord& r) {
    std::string s;
    if (const auto* x = r.get("x")) s = *x;
    if (const auto* y = r.get("y")) s += " -> " + *y;
    return s.empty() ? std::string("-") : s;
  };
  for (const auto& r : rs) {
    wt = std::max(wt, r.task.size());
    wk = std::max(wk, r.kind.size());
    wi = std::max(wi, inputs(r).size());
  }
  auto pad = [](std::string s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); };
  std::string s = pad("task", wt) + "  " + pad("kind", wk) + "  " + pad("inputs", wi) + "  status  results\n";
  std::size_t passed = 0;
  for (const auto& r : rs) {
    std::string res;
    for (const auto& [k, v] : r.fields) {
      if (k == "x" || k == "y") continue;
      res += (res.empty() ? "" : "  ") + k + "=" + v;
    }
    if (r.wall_ms) res += "  wall_ms=" + std::to_string(*r.wall_ms);
    s += pad(r.task, wt) + "  " + pad(r.kind, wk) + "  " + pad(inputs(r), wi) + "  " + pad(r.passed ? "pass" : "FAIL", 6) +
         "  " + res + "\n";
    passed += r.passed;
  }
  s += std::to_string(passed) + "/" + std::to_string(rs.size()) + " records passed\n";
  return s;
}

}  // namespace heckext
