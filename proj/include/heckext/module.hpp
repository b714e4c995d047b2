#pragma once

// Finite-dimensional H-modules given by matrices for the simple reflections
// and for a basis of V, together with the relation checker, the tilde
// operators, the twists theta/iota, the star/bullet contragredients, D, and
// intertwiner spaces.

#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "heckext/algebra.hpp"

namespace heckext {

class ModuleError : public Error {
 public:
  using Error::Error;
};

class InconclusiveError : public Error {
 public:
  using Error::Error;
};

class HModule {
 public:
  HModule() = default;
  HModule(AlgebraPtr algebra, std::vector<QMatrix> gen_w, std::vector<QMatrix> gen_v, std::string label)
      : algebra_(std::move(algebra)), gen_w_(std::move(gen_w)), gen_v_(std::move(gen_v)), label_(std::move(label)) {
    if (!algebra_) throw ModuleError("module without an algebra");
    if (gen_w_.size() != algebra_->rank()) throw ModuleError("need one matrix per simple reflection");
    if (gen_v_.size() != algebra_->dim_v()) throw ModuleError("need one matrix per basis vector of V");
    dim_ = gen_v_.empty() ? (gen_w_.empty() ? 0 : gen_w_[0].rows()) : gen_v_[0].rows();
    for (const auto* family : {&gen_w_, &gen_v_})
      for (const auto& m : *family)
        if (m.rows() != dim_ || m.cols() != dim_) throw ModuleError("generator matrices must be square of equal size");
    if (dim_ == 0) throw ModuleError("module dimension must be positive");
    build_group_action();
    for (std::size_t j = 0; j < algebra_->dim_v(); ++j) {
      QVector e(algebra_->dim_v());
      e[j] = 1;
      tilde_basis_.push_back(tilde(e));
    }
  }

  const AlgebraPtr& algebra() const { return algebra_; }
  const Algebra& alg() const { return *algebra_; }
  std::size_t dim() const { return dim_; }
  const std::string& label() const { return label_; }
  HModule relabeled(std::string label) const {
    HModule m = *this;
    m.label_ = std::move(label);
    return m;
  }

  const std::vector<QMatrix>& gen_w() const { return gen_w_; }
  const std::vector<QMatrix>& gen_v() const { return gen_v_; }

  /// rho(t_w) for a group element index.
  const QMatrix& act_w(std::size_t w) const { return group_action_.at(w); }

  /// rho(v) = sum_j v_j rho(e_j).
  QMatrix act_v(const QVector& v) const {
    QMatrix m(dim_, dim_);
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) m += gen_v_[j] * v[j];
    return m;
  }

  /// rho(v~) with v~ = v - 1/2 sum_{beta > 0} k_beta <v, beta^vee> t_{s_beta}.
  QMatrix tilde(const QVector& v) const {
    QMatrix m = act_v(v);
    const auto& roots = algebra_->datum().positive_roots();
    Scalar t;
    for (std::size_t r = 0; r < roots.size(); ++r) {
      Scalar c = roots[r].k * pair(v, roots[r].coroot) / 2;
      if (c == 0) continue;
      const QMatrix& s = act_w(algebra_->reflection(r));
      for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
          if (s(i, j) != 0) {
            t = c * s(i, j);
            m(i, j) -= t;
          }
    }
    return m;
  }

  /// rho(e~_j), precomputed.
  const QMatrix& tilde_basis(std::size_t j) const { return tilde_basis_.at(j); }

  friend bool operator==(const HModule& a, const HModule& b) {
    return a.algebra_->same_as(*b.algebra_) && a.gen_w_ == b.gen_w_ && a.gen_v_ == b.gen_v_;
  }

 private:
  void build_group_action() {
    const auto& g = algebra_->group();
    group_action_.assign(g.order(), QMatrix());
    group_action_[0] = QMatrix::identity(dim_);
    // Elements are sorted by length; drop the first letter of the reduced word.
    for (std::size_t w = 1; w < g.order(); ++w) {
      const auto& word = g.element(w).word;
      const std::size_t s = g.simple(static_cast<std::size_t>(word.front()));
      const std::size_t rest = g.multiply(s, w);
      group_action_[w] = gen_w_[static_cast<std::size_t>(word.front())] * group_action_[rest];
    }
  }

  AlgebraPtr algebra_;
  std::vector<QMatrix> gen_w_;
  std::vector<QMatrix> gen_v_;
  std::string label_;
  std::size_t dim_ = 0;
  std::vector<QMatrix> group_action_;
  std::vector<QMatrix> tilde_basis_;
  mutable std::shared_ptr<const std::string> content_key_;  // text of the generators, built on first use

  friend const std::string& content_key(const HModule& m);
};

inline const QMatrix& act_w(const HModule& x, std::size_t w) { return x.act_w(w); }
inline QMatrix tilde_matrix(const HModule& x, const QVector& v) { return x.tilde(v); }

// ---- relation checking -------------------------------------------------------

enum class RelationFamily { WeylRelations, Commutativity, CrossRelation };

inline std::string to_string(RelationFamily f) {
  switch (f) {
    case RelationFamily::WeylRelations: return "W-relations";
    case RelationFamily::Commutativity: return "V-commutativity";
    case RelationFamily::CrossRelation: return "cross-relation";
  }
  return "?";
}

struct RelationCheck {
  RelationFamily family;
  bool passed = true;
  std::string first_violation;
};

struct ValidationReport {
  std::vector<RelationCheck> checks;
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }
  /// Families that failed, in check order.
  std::vector<RelationFamily> failures() const {
    std::vector<RelationFamily> f;
    for (const auto& c : checks)
      if (!c.passed) f.push_back(c.family);
    return f;
  }
  std::string summary() const {
    std::string s;
    for (const auto& c : checks)
      s += to_string(c.family) + (c.passed ? ": pass" : ": FAIL (" + c.first_violation + ")") + "\n";
    return s;
  }
};

/// Checks the Coxeter relations (t_i t_j)^{m_ij} = 1, commutativity of the
/// V-action, and t_s v - s(v) t_s = k_alpha <v, alpha^vee> on basis vectors.
inline ValidationReport validate_module(const HModule& x) {
  const auto& alg = x.alg();
  const auto& g = alg.group();
  const std::size_t r = alg.rank(), n = alg.dim_v(), d = x.dim();
  const QMatrix id = QMatrix::identity(d);
  ValidationReport report;

  RelationCheck weyl{RelationFamily::WeylRelations, true, {}};
  for (std::size_t i = 0; i < r && weyl.passed; ++i)
    for (std::size_t j = i; j < r && weyl.passed; ++j) {
      const std::size_t m = g.coxeter_exponent(i, j);
      QMatrix p = x.gen_w()[i] * x.gen_w()[j];
      QMatrix acc = id;
      for (std::size_t k = 0; k < m; ++k) acc = acc * p;
      if (i == j) acc = x.gen_w()[i] * x.gen_w()[i];
      if (!(acc == id)) {
        weyl.passed = false;
        weyl.first_violation = i == j ? "t_" + std::to_string(i + 1) + "^2 != 1"
                                      : "(t_" + std::to_string(i + 1) + " t_" + std::to_string(j + 1) + ")^" +
                                            std::to_string(m) + " != 1";
      }
    }
  report.checks.push_back(weyl);

  RelationCheck comm{RelationFamily::Commutativity, true, {}};
  for (std::size_t a = 0; a < n && comm.passed; ++a)
    for (std::size_t b = a + 1; b < n && comm.passed; ++b)
      if (!(x.gen_v()[a] * x.gen_v()[b] == x.gen_v()[b] * x.gen_v()[a])) {
        comm.passed = false;
        comm.first_violation = "e_" + std::to_string(a + 1) + " e_" + std::to_string(b + 1) + " != e_" +
                               std::to_string(b + 1) + " e_" + std::to_string(a + 1);
      }
  report.checks.push_back(comm);

  RelationCheck cross{RelationFamily::CrossRelation, true, {}};
  const auto& datum = alg.datum();
  for (std::size_t i = 0; i < r && cross.passed; ++i) {
    const QMatrix s = datum.simple_reflection(i);
    for (std::size_t j = 0; j < n && cross.passed; ++j) {
      QVector e(n);
      e[j] = 1;
      QVector se = s * std::span<const Scalar>(e);
      QMatrix lhs = x.gen_w()[i] * x.gen_v()[j] - x.act_v(se) * x.gen_w()[i];
      QMatrix rhs = id * (datum.simple_parameter(i) * pair(e, datum.simple_coroots()[i]));
      if (!(lhs == rhs)) {
        cross.passed = false;
        cross.first_violation = "simple root " + std::to_string(i + 1) + ", basis vector e_" + std::to_string(j + 1);
      }
    }
  }
  report.checks.push_back(cross);
  return report;
}

inline const HModule& require_valid(const HModule& x) {
  auto report = validate_module(x);
  if (!report.ok()) throw ModuleError("module '" + x.label() + "' violates relations:\n" + report.summary());
  return x;
}

// ---- twists and contragredients ----------------------------------------------

namespace detail {

inline QVector basis_vector(std::size_t n, std::size_t j) {
  QVector e(n);
  e.at(j) = 1;
  return e;
}

inline QVector neg(QVector v) {
  for (auto& c : v) c = -c;
  return v;
}

inline std::vector<QMatrix> transposed(const std::vector<QMatrix>& ms) {
  std::vector<QMatrix> out;
  for (const auto& m : ms) out.push_back(m.transpose());
  return out;
}

}  // namespace detail

/// theta(v) = -w0(v), theta(t_w) = t_{w0 w w0^-1}; rho_theta(h) = rho(theta(h)).
inline HModule theta(const HModule& x) {
  const auto& alg = x.alg();
  const auto& g = alg.group();
  const std::size_t w0 = g.longest();
  std::vector<QMatrix> gw, gv;
  for (std::size_t i = 0; i < alg.rank(); ++i)
    gw.push_back(x.act_w(g.multiply(g.multiply(w0, g.simple(i)), g.inverse(w0))));
  for (std::size_t j = 0; j < alg.dim_v(); ++j)
    gv.push_back(x.act_v(detail::neg(alg.act(w0, detail::basis_vector(alg.dim_v(), j)))));
  return HModule(x.algebra(), gw, gv, "theta(" + x.label() + ")");
}

/// iota(v) = -v, iota(t_w) = sgn(w) t_w.
inline HModule iota(const HModule& x) {
  std::vector<QMatrix> gw, gv;
  for (const auto& m : x.gen_w()) gw.push_back(-m);
  for (const auto& m : x.gen_v()) gv.push_back(-m);
  return HModule(x.algebra(), gw, gv, "iota(" + x.label() + ")");
}

/// Contragredient for the anti-involution t_w^* = t_w^-1, v^* = t_{w0} theta(v) t_{w0}^-1,
/// on the dual basis: rho*(h) = rho(h^*)^T.
inline HModule dual_star(const HModule& x) {
  const auto& alg = x.alg();
  const auto& g = alg.group();
  const std::size_t w0 = g.longest();
  const QMatrix& tw0 = x.act_w(w0);
  const QMatrix& tw0_inv = x.act_w(g.inverse(w0));
  std::vector<QMatrix> gv;
  for (std::size_t j = 0; j < alg.dim_v(); ++j) {
    QVector th = detail::neg(alg.act(w0, detail::basis_vector(alg.dim_v(), j)));
    gv.push_back((tw0 * x.act_v(th) * tw0_inv).transpose());
  }
  return HModule(x.algebra(), detail::transposed(x.gen_w()), gv, "star(" + x.label() + ")");
}

/// Contragredient for t_w^bullet = t_w^-1, v^bullet = v.
inline HModule dual_bullet(const HModule& x) {
  return HModule(x.algebra(), detail::transposed(x.gen_w()), detail::transposed(x.gen_v()),
                 "bullet(" + x.label() + ")");
}

/// D(X) = iota(X^bullet)^*.
inline HModule dD(const HModule& x) { return dual_star(iota(dual_bullet(x))).relabeled("D(" + x.label() + ")"); }

// ---- intertwiners ------------------------------------------------------------

/// Basis of Hom_H(X, Y): matrices M (dim Y x dim X) with M rho_X(g) = rho_Y(g) M on all generators.
inline std::vector<QMatrix> hom_space(const HModule& x, const HModule& y) {
  if (!x.alg().same_as(y.alg())) throw ModuleError("hom_space: modules over different algebras");
  const std::size_t dx = x.dim(), dy = y.dim(), unknowns = dx * dy;
  std::vector<const QMatrix*> gx, gy;
  for (std::size_t i = 0; i < x.gen_w().size(); ++i) {
    gx.push_back(&x.gen_w()[i]);
    gy.push_back(&y.gen_w()[i]);
  }
  for (std::size_t i = 0; i < x.gen_v().size(); ++i) {
    gx.push_back(&x.gen_v()[i]);
    gy.push_back(&y.gen_v()[i]);
  }
  // Rows are fed one at a time so the common Hom = 0 case stops once the rank is full.
  EchelonBasis<Scalar> sys(unknowns);
  std::vector<Scalar> row(unknowns);
  for (std::size_t g = 0; g < gx.size() && sys.size() < unknowns; ++g) {
    const QMatrix& a = *gx[g];
    const QMatrix& b = *gy[g];
    // Row (g, i, j): sum_k M(i,k) a(k,j) - sum_k b(i,k) M(k,j).
    for (std::size_t i = 0; i < dy && sys.size() < unknowns; ++i)
      for (std::size_t j = 0; j < dx && sys.size() < unknowns; ++j) {
        for (auto& r : row) r = 0;
        for (std::size_t k = 0; k < dx; ++k)
          if (a(k, j) != 0) row[i * dx + k] += a(k, j);
        for (std::size_t k = 0; k < dy; ++k)
          if (b(i, k) != 0) row[k * dx + j] -= b(i, k);
        sys.insert(row);
      }
  }
  QMatrix ker = kernel(sys);
  std::vector<QMatrix> basis;
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    QMatrix m(dy, dx);
    for (std::size_t i = 0; i < dy; ++i)
      for (std::size_t j = 0; j < dx; ++j) m(i, j) = ker(i * dx + j, c);
    basis.push_back(std::move(m));
  }
  return basis;
}

struct IsomorphismSearch {
  std::size_t max_candidates = 200000;
};

/// Some invertible intertwiner X -> Y, or nullopt if none exists.
///
/// Candidates are the basis intertwiners, then integer combinations with
/// coefficients drawn from {0, 1, -1, 2, -2, ...} of size dim + 1. det of a
/// generic combination is a polynomial of degree dim in the coefficients, so a
/// nonzero one cannot vanish on that whole grid; an exhausted grid therefore
/// proves non-isomorphism. Throws InconclusiveError if the grid is larger than
/// `max_candidates`.
inline std::optional<QMatrix> find_isomorphism(const HModule& x, const HModule& y, IsomorphismSearch opts = {}) {
  if (!x.alg().same_as(y.alg())) throw ModuleError("is_isomorphic: modules over different algebras");
  if (x.dim() != y.dim()) return std::nullopt;
  auto basis = hom_space(x, y);
  if (basis.empty()) return std::nullopt;
  for (const auto& b : basis)
    if (determinant(b) != 0) return b;
  if (basis.size() == 1) return std::nullopt;

  const std::size_t m = basis.size();
  const std::size_t levels = x.dim() + 1;
  double grid = 1;
  for (std::size_t k = 0; k < m; ++k) grid *= static_cast<double>(levels);
  const bool exhaustive = grid <= static_cast<double>(opts.max_candidates);
  auto coefficient = [](std::size_t level) {
    // 0, 1, -1, 2, -2, ...
    long v = static_cast<long>((level + 1) / 2);
    return Scalar(level % 2 ? v : -v);
  };
  std::vector<std::size_t> digits(m, 0);
  std::size_t tried = 0;
  while (tried < opts.max_candidates) {
    std::size_t k = 0;
    while (k < m && ++digits[k] == levels) digits[k++] = 0;
    if (k == m) break;
    ++tried;
    QMatrix c(y.dim(), x.dim());
    for (std::size_t b = 0; b < m; ++b)
      if (digits[b]) c += basis[b] * coefficient(digits[b]);
    if (determinant(c) != 0) return c;
  }
  if (exhaustive) return std::nullopt;
  throw InconclusiveError("isomorphism search exhausted " + std::to_string(tried) + " candidates for '" + x.label() +
                          "' vs '" + y.label() + "'");
}

inline bool is_isomorphic(const HModule& x, const HModule& y, IsomorphismSearch opts = {}) {
  return find_isomorphism(x, y, opts).has_value();
}

/// Absolute irreducibility via Burnside: the image of H is all of End(X). By PBW that image is
/// spanned by t_w a with a in the commutative algebra generated by the V-action.
inline bool is_irreducible(const HModule& x) {
  const std::size_t d = x.dim();
  EchelonBasis<Scalar> poly(d * d);
  std::vector<QMatrix> vbasis{QMatrix::identity(d)}, frontier = vbasis;
  poly.insert(vbasis.front().data());
  while (!frontier.empty()) {
    std::vector<QMatrix> next;
    for (const auto& a : frontier)
      for (const auto& g : x.gen_v()) {
        QMatrix p = g * a;
        if (poly.insert(p.data())) {
          vbasis.push_back(p);
          next.push_back(std::move(p));
        }
      }
    frontier = std::move(next);
  }
  EchelonBasis<Scalar> span(d * d);
  for (std::size_t w = 0; w < x.alg().group().order() && span.size() < d * d; ++w)
    for (std::size_t k = 0; k < vbasis.size() && span.size() < d * d; ++k) span.insert((x.act_w(w) * vbasis[k]).data());
  return span.size() == d * d;
}

/// The submodule carried by the columns of `basis` (assumed invariant), in that basis.
inline HModule submodule(const HModule& x, const QMatrix& basis, std::string label) {
  auto restrict = [&](const QMatrix& g) {
    auto m = solve(basis, g * basis);
    if (!m) throw ModuleError("subspace is not invariant under the action");
    return *m;
  };
  std::vector<QMatrix> gw, gv;
  for (const auto& m : x.gen_w()) gw.push_back(restrict(m));
  for (const auto& m : x.gen_v()) gv.push_back(restrict(m));
  return HModule(x.algebra(), gw, gv, std::move(label));
}

inline HModule direct_sum(const HModule& x, const HModule& y) {
  if (!x.alg().same_as(y.alg())) throw ModuleError("direct_sum: modules over different algebras");
  auto block = [&](const QMatrix& a, const QMatrix& b) {
    QMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
  };
  std::vector<QMatrix> gw, gv;
  for (std::size_t i = 0; i < x.gen_w().size(); ++i) gw.push_back(block(x.gen_w()[i], y.gen_w()[i]));
  for (std::size_t i = 0; i < x.gen_v().size(); ++i) gv.push_back(block(x.gen_v()[i], y.gen_v()[i]));
  return HModule(x.algebra(), gw, gv, x.label() + "+" + y.label());
}

// ---- text serialization ------------------------------------------------------

namespace detail {

inline std::string matrix_text(const QMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? " " : "") + to_string(m(i, j));
  }
  return out;
}

}  // namespace detail

/// Text of all generator matrices, W part first; equal keys mean identical modules up to label.
inline const std::string& content_key(const HModule& m) {
  if (!m.content_key_) {
    std::string k;
    for (const auto& g : m.gen_w_) k += detail::matrix_text(g) + "|";
    k += "#";
    for (const auto& g : m.gen_v_) k += detail::matrix_text(g) + "|";
    m.content_key_ = std::make_shared<const std::string>(std::move(k));
  }
  return *m.content_key_;
}

/// The W-generator part of content_key.
inline std::string_view w_content_key(const HModule& m) {
  std::string_view k = content_key(m);
  return k.substr(0, k.find('#'));
}

/// Module record: label, the inline root datum under "datum.*" keys, dim, then
/// gen_W.i / gen_V.j as row-major matrices with rows separated by ';'.
inline std::string serialize(const HModule& x) {
  std::ostringstream os;
  os << "label = " << x.label() << '\n';
  std::istringstream datum(serialize(x.alg().datum()));
  for (std::string line; std::getline(datum, line);) os << "datum." << line << '\n';
  os << "dim = " << x.dim() << '\n';
  for (std::size_t i = 0; i < x.gen_w().size(); ++i)
    os << "gen_W." << i + 1 << " = " << detail::matrix_text(x.gen_w()[i]) << '\n';
  for (std::size_t j = 0; j < x.gen_v().size(); ++j)
    os << "gen_V." << j + 1 << " = " << detail::matrix_text(x.gen_v()[j]) << '\n';
  return os.str();
}

inline HModule parse_module(const std::string& text) {
  std::string datum_text, label;
  long dim = -1;
  std::map<std::size_t, QMatrix> gw, gv;
  auto to_matrix = [&](const std::string& v) {
    auto rows = detail::parse_rows(v);
    if (dim < 0) throw ModuleError("dim must precede generator matrices");
    QMatrix m(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
    if (rows.size() != m.rows()) throw ModuleError("generator matrix has wrong number of rows");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols()) throw ModuleError("generator matrix has wrong number of columns");
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  };
  for (const auto& [key, value] : detail::parse_key_values(text)) {
    if (key.rfind("datum.", 0) == 0) {
      datum_text += key.substr(6) + " = " + value + "\n";
    } else if (key == "label") {
      label = value;
    } else if (key == "dim") {
      dim = std::stol(value);
      if (dim <= 0) throw ModuleError("dim must be positive");
    } else if (key.rfind("gen_W.", 0) == 0) {
      gw[std::stoul(key.substr(6))] = to_matrix(value);
    } else if (key.rfind("gen_V.", 0) == 0) {
      gv[std::stoul(key.substr(6))] = to_matrix(value);
    } else {
      throw ModuleError("unknown key '" + key + "'");
    }
  }
  auto algebra = Algebra::create(parse_root_datum(datum_text));
  auto collect = [](std::map<std::size_t, QMatrix>& m, std::size_t count, const char* what) {
    std::vector<QMatrix> out;
    for (std::size_t i = 1; i <= count; ++i) {
      auto it = m.find(i);
      if (it == m.end()) throw ModuleError(std::string("missing ") + what + "." + std::to_string(i));
      out.push_back(std::move(it->second));
    }
    if (m.size() != count) throw ModuleError(std::string("unexpected extra ") + what + " entries");
    return out;
  };
  auto w = collect(gw, algebra->rank(), "gen_W");
  auto v = collect(gv, algebra->dim_v(), "gen_V");
  return HModule(algebra, std::move(w), std::move(v), label);
}

}  // namespace heckext
