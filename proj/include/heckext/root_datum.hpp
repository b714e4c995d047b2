#pragma once

// Root data: simple roots and coroots in a fixed coordinate realization,
// the full positive system obtained by orbit closure, and the W-orbit
// constant parameter function k.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "heckext/matrix.hpp"

namespace heckext {

class DatumError : public Error {
 public:
  using Error::Error;
};

/// A positive root with its coroot and simple-root orbit.
struct Root {
  QVector vector;         // in V
  QVector coroot;         // in V^vee
  QVector simple_coords;  // expansion in the simple roots
  std::size_t orbit = 0;  // orbit id (index into RootDatum::orbit_parameters)
  Scalar k;               // parameter k_alpha
  int height() const {
    Scalar h = 0;
    for (const auto& c : simple_coords) h += c;
    return static_cast<int>(h.get_num().get_si());
  }
};

/// <v, a^vee>.
inline Scalar pair(const QVector& v, const QVector& covector) { return dot<Scalar>(v, covector); }

/// Matrix of v -> v - <v, a^vee> a on column vectors.
inline QMatrix reflection_matrix(const QVector& root, const QVector& coroot) {
  const std::size_t n = root.size();
  QMatrix s = QMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (root[i] != 0 && coroot[j] != 0) s(i, j) -= root[i] * coroot[j];
  return s;
}

class RootDatum {
 public:
  RootDatum() = default;

  /// Validating constructor. `simple_parameters` gives k for each simple root
  /// and must be constant on W-orbits.
  RootDatum(std::string type_label, std::size_t ambient_dim, std::vector<QVector> simple_roots,
            std::vector<QVector> simple_coroots, const std::vector<Scalar>& simple_parameters)
      : type_label_(std::move(type_label)),
        ambient_dim_(ambient_dim),
        simple_roots_(std::move(simple_roots)),
        simple_coroots_(std::move(simple_coroots)) {
    check_shapes(simple_parameters.size());
    close_orbits();
    assign_parameters(simple_parameters);
  }

  const std::string& type_label() const { return type_label_; }
  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t rank() const { return simple_roots_.size(); }
  bool spans() const { return rank() == ambient_dim_; }

  const std::vector<QVector>& simple_roots() const { return simple_roots_; }
  const std::vector<QVector>& simple_coroots() const { return simple_coroots_; }
  const std::vector<Root>& positive_roots() const { return positive_; }

  std::size_t orbit_count() const { return orbit_parameters_.size(); }
  const std::vector<Scalar>& orbit_parameters() const { return orbit_parameters_; }
  std::size_t simple_orbit(std::size_t i) const { return simple_orbit_.at(i); }
  const Scalar& simple_parameter(std::size_t i) const { return orbit_parameters_[simple_orbit_.at(i)]; }

  /// Index of the positive root equal to +-v, if any.
  std::optional<std::size_t> find_root(const QVector& v) const {
    for (std::size_t r = 0; r < positive_.size(); ++r) {
      if (positive_[r].vector == v) return r;
      QVector neg = v;
      for (auto& x : neg) x = -x;
      if (positive_[r].vector == neg) return r;
    }
    return std::nullopt;
  }

  QMatrix simple_reflection(std::size_t i) const {
    return reflection_matrix(simple_roots_.at(i), simple_coroots_.at(i));
  }

  /// cartan[i][j] = <alpha_j, alpha_i^vee>.
  std::vector<std::vector<Scalar>> cartan() const {
    std::vector<std::vector<Scalar>> c(rank(), std::vector<Scalar>(rank()));
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) c[i][j] = pair(simple_roots_[j], simple_coroots_[i]);
    return c;
  }

  /// The datum (R_J, V, R_J^vee, V^vee, J) for the simple roots selected by `mask`.
  RootDatum parabolic(unsigned mask) const {
    std::vector<QVector> roots, coroots;
    std::vector<Scalar> params;
    std::string label = type_label_ + "|J={";
    bool first = true;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (!(mask >> i & 1u)) continue;
      roots.push_back(simple_roots_[i]);
      coroots.push_back(simple_coroots_[i]);
      params.push_back(simple_parameter(i));
      label += (first ? "" : ",") + std::to_string(i + 1);
      first = false;
    }
    label += "}";
    return RootDatum(label, ambient_dim_, roots, coroots, params);
  }

  friend bool operator==(const RootDatum& a, const RootDatum& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.simple_roots_ == b.simple_roots_ &&
           a.simple_coroots_ == b.simple_coroots_ && a.orbit_parameters_ == b.orbit_parameters_ &&
           a.simple_orbit_ == b.simple_orbit_;
  }

 private:
  static constexpr std::size_t kMaxRoots = 512;

  void check_shapes(std::size_t nparams) const {
    if (ambient_dim_ == 0) throw DatumError("ambient dimension must be positive");
    if (simple_roots_.size() != simple_coroots_.size())
      throw DatumError("simple roots and coroots differ in number");
    if (nparams != simple_roots_.size()) throw DatumError("one parameter per simple root required");
    for (std::size_t i = 0; i < rank(); ++i) {
      if (simple_roots_[i].size() != ambient_dim_ || simple_coroots_[i].size() != ambient_dim_)
        throw DatumError("simple root/coroot " + std::to_string(i + 1) + " has wrong length");
      if (pair(simple_roots_[i], simple_coroots_[i]) != 2)
        throw DatumError("<alpha, alpha^vee> != 2 for simple root " + std::to_string(i + 1));
    }
    if (rank() > 0 && heckext::rank(QMatrix::from_columns(simple_roots_, ambient_dim_)) != rank())
      throw DatumError("simple roots are linearly dependent");
  }

  void close_orbits() {
    const std::size_t r = rank();
    std::vector<QMatrix> refl;
    for (std::size_t i = 0; i < r; ++i) refl.push_back(simple_reflection(i));

    // Orbit of each simple root under the simple reflections; coroots ride along.
    // Orbits are disjoint or equal, so every root is tagged by the first simple root reaching it.
    struct Entry {
      QVector root, coroot;
      std::size_t source;
    };
    std::map<QVector, Entry> seen;
    for (std::size_t i = 0; i < r; ++i) {
      if (seen.count(simple_roots_[i])) continue;  // orbit already explored from an earlier root
      std::vector<Entry> frontier{{simple_roots_[i], simple_coroots_[i], i}};
      seen.emplace(simple_roots_[i], frontier.front());
      while (!frontier.empty()) {
        std::vector<Entry> next;
        for (const auto& e : frontier)
          for (std::size_t j = 0; j < r; ++j) {
            QVector nr = refl[j] * std::span<const Scalar>(e.root);
            QVector nc = row_times<Scalar>(e.coroot, refl[j]);
            if (auto it = seen.find(nr); it != seen.end()) {
              if (it->second.coroot != nc) throw DatumError("inconsistent coroot assignment");
              continue;
            }
            Entry ne{nr, nc, i};
            seen.emplace(nr, ne);
            next.push_back(std::move(ne));
            if (seen.size() > kMaxRoots) throw DatumError("root system is not finite (closure exceeded cap)");
          }
        frontier = std::move(next);
      }
    }

    std::vector<std::set<QVector>> orbit_sets(r);
    for (const auto& [v, e] : seen) orbit_sets[e.source].insert(v);
    simple_orbit_.assign(r, 0);
    std::vector<std::size_t> orbit_rep;
    for (std::size_t i = 0; i < r; ++i) {
      bool found = false;
      for (std::size_t o = 0; o < orbit_rep.size(); ++o) {
        const std::size_t rep = orbit_rep[o];
        if (orbit_sets[rep].count(simple_roots_[i]) || orbit_sets[i].count(simple_roots_[rep])) {
          simple_orbit_[i] = o;
          found = true;
          break;
        }
      }
      if (!found) {
        simple_orbit_[i] = orbit_rep.size();
        orbit_rep.push_back(i);
      }
    }

    // Positive roots: nonnegative expansion in the simple roots.
    QMatrix basis = QMatrix::from_columns(simple_roots_, ambient_dim_);
    for (const auto& [v, e] : seen) {
      QMatrix rhs(ambient_dim_, 1);
      for (std::size_t k = 0; k < ambient_dim_; ++k) rhs(k, 0) = v[k];
      auto coords = solve(basis, rhs);
      if (!coords) throw DatumError("root outside the span of the simple roots");
      QVector c = coords->column(0);
      bool nonneg = std::all_of(c.begin(), c.end(), [](const Scalar& x) { return x >= 0; });
      bool nonpos = std::all_of(c.begin(), c.end(), [](const Scalar& x) { return x <= 0; });
      if (!nonneg && !nonpos) throw DatumError("root with mixed-sign simple expansion");
      if (!nonneg) continue;
      positive_.push_back(Root{v, e.coroot, c, simple_orbit_[e.source], Scalar(0)});
    }
    std::sort(positive_.begin(), positive_.end(), [](const Root& a, const Root& b) {
      if (a.height() != b.height()) return a.height() < b.height();
      return a.simple_coords > b.simple_coords;
    });
    if (seen.size() != 2 * positive_.size()) throw DatumError("root set is not symmetric under negation");
  }

  void assign_parameters(const std::vector<Scalar>& simple_parameters) {
    orbit_parameters_.assign(0, Scalar(0));
    for (std::size_t i = 0; i < rank(); ++i) {
      const std::size_t o = simple_orbit_[i];
      if (o == orbit_parameters_.size()) {
        orbit_parameters_.push_back(simple_parameters[i]);
      } else if (orbit_parameters_[o] != simple_parameters[i]) {
        throw DatumError("parameter not constant on the W-orbit of simple root " + std::to_string(i + 1));
      }
    }
    for (auto& root : positive_) root.k = orbit_parameters_[root.orbit];
  }

  std::string type_label_;
  std::size_t ambient_dim_ = 0;
  std::vector<QVector> simple_roots_;
  std::vector<QVector> simple_coroots_;
  std::vector<Root> positive_;
  std::vector<std::size_t> simple_orbit_;
  std::vector<Scalar> orbit_parameters_;
};

namespace detail {

inline std::vector<std::vector<int>> cartan_for(const std::string& type) {
  if (type == "A1") return {{2}};
  if (type == "A2" || type == "I2(3)") return {{2, -1}, {-1, 2}};
  if (type == "A3") return {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  if (type == "B2" || type == "I2(4)") return {{2, -1}, {-2, 2}};
  if (type == "B3") return {{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}};
  if (type == "G2" || type == "I2(6)") return {{2, -3}, {-1, 2}};
  if (type == "I2(2)") return {{2, 0}, {0, 2}};
  if (type.rfind("I2(", 0) == 0 || type == "H3" || type == "H4")
    throw DatumError("type " + type + " needs an irrational Cartan pairing; unsupported over the rationals");
  throw DatumError("unknown root system type '" + type + "'");
}

}  // namespace detail

inline std::vector<std::string> supported_types() {
  return {"A1", "A2", "A3", "B2", "B3", "G2", "I2(2)", "I2(3)", "I2(4)", "I2(6)"};
}

/// Standard realization: simple roots are the first coordinate vectors of
/// V = span(R) (+ `extra_dims` directions fixed by W), coroots are the Cartan rows.
/// `orbit_parameters` lists k per simple-root orbit, orbits numbered by first simple root.
inline RootDatum build_root_datum(const std::string& type, const std::vector<Scalar>& orbit_parameters,
                                  std::size_t extra_dims = 0) {
  const auto cartan = detail::cartan_for(type);
  const std::size_t r = cartan.size();
  const std::size_t n = r + extra_dims;
  std::vector<QVector> roots(r, QVector(n)), coroots(r, QVector(n));
  for (std::size_t i = 0; i < r; ++i) {
    roots[i][i] = 1;
    for (std::size_t j = 0; j < r; ++j) coroots[i][j] = cartan[i][j];
  }
  // Probe orbit structure with a constant parameter, then map orbit values to simple roots.
  RootDatum probe(type, n, roots, coroots, std::vector<Scalar>(r, Scalar(1)));
  if (orbit_parameters.size() != probe.orbit_count())
    throw DatumError(type + " has " + std::to_string(probe.orbit_count()) + " parameter orbit(s), got " +
                     std::to_string(orbit_parameters.size()) + " value(s)");
  std::vector<Scalar> simple(r);
  for (std::size_t i = 0; i < r; ++i) simple[i] = orbit_parameters[probe.simple_orbit(i)];
  std::string label = type;
  return RootDatum(label, n, roots, coroots, simple);
}

// ---- text serialization ------------------------------------------------------

namespace detail {

inline std::string join_rows(const std::vector<QVector>& rows) {
  std::string out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < rows[i].size(); ++j) out += (j ? " " : "") + to_string(rows[i][j]);
  }
  return out;
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

inline std::string trim(std::string s) {
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && ws(s.back())) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && ws(s[b])) ++b;
  return s.substr(b);
}

inline std::vector<QVector> parse_rows(const std::string& s) {
  std::vector<QVector> rows;
  if (trim(s).empty()) return rows;
  std::size_t start = 0;
  while (true) {
    std::size_t semi = s.find(';', start);
    QVector row;
    for (const auto& tok : split_ws(s.substr(start, semi == std::string::npos ? std::string::npos : semi - start)))
      row.push_back(parse_scalar(tok));
    rows.push_back(std::move(row));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return rows;
}

/// Ordered key = value lines; '#' starts a comment.
inline std::vector<std::pair<std::string, std::string>> parse_key_values(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> kv;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error("line " + std::to_string(lineno) + ": expected key = value");
    kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return kv;
}

}  // namespace detail

inline std::string serialize(const RootDatum& d) {
  std::ostringstream os;
  os << "type = " << d.type_label() << '\n';
  os << "ambient_dim = " << d.ambient_dim() << '\n';
  os << "simple_roots = " << detail::join_rows(d.simple_roots()) << '\n';
  os << "simple_coroots = " << detail::join_rows(d.simple_coroots()) << '\n';
  std::vector<QVector> cartan;
  for (const auto& row : d.cartan()) cartan.emplace_back(row.begin(), row.end());
  os << "cartan = " << detail::join_rows(cartan) << '\n';
  os << "parameters =";
  for (const auto& k : d.orbit_parameters()) os << ' ' << to_string(k);
  os << '\n';
  return os.str();
}

inline RootDatum parse_root_datum(const std::string& text) {
  std::map<std::string, std::string> kv;
  for (auto& [k, v] : detail::parse_key_values(text)) {
    if (!kv.emplace(k, v).second) throw DatumError("duplicate key '" + k + "'");
  }
  auto need = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw DatumError("missing key '" + key + "'");
    return it->second;
  };
  const std::string type = need("type");
  const long n = std::stol(need("ambient_dim"));
  if (n <= 0) throw DatumError("ambient_dim must be positive");
  auto roots = detail::parse_rows(need("simple_roots"));
  auto coroots = detail::parse_rows(need("simple_coroots"));
  std::vector<Scalar> orbit_params;
  for (const auto& tok : detail::split_ws(need("parameters"))) orbit_params.push_back(parse_scalar(tok));

  RootDatum probe(type, static_cast<std::size_t>(n), roots, coroots, std::vector<Scalar>(roots.size(), Scalar(1)));
  if (orbit_params.size() != probe.orbit_count()) throw DatumError("parameter list length mismatch");
  std::vector<Scalar> simple(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) simple[i] = orbit_params[probe.simple_orbit(i)];
  RootDatum d(type, static_cast<std::size_t>(n), roots, coroots, simple);

  if (auto it = kv.find("cartan"); it != kv.end()) {
    auto c = detail::parse_rows(it->second);
    auto actual = d.cartan();
    std::vector<QVector> expect(actual.begin(), actual.end());
    if (c != expect) throw DatumError("cartan matrix inconsistent with simple roots/coroots");
  }
  return d;
}

}  // namespace heckext
