#pragma once

// Concrete modules: one-dimensional characters, principal series,
// parabolic induction and restriction; weights, central characters and the
// tempered / discrete series predicates.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "heckext/class_function.hpp"
#include "heckext/polynomial.hpp"

namespace heckext {

/// A weight gamma in V^vee, stored by its values gamma(e_i).
using Weight = QVector;

inline std::string weight_to_string(const Weight& g) {
  std::string s = "(";
  for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + to_string(g[i]);
  return s + ")";
}

// ---- one-dimensional modules -------------------------------------------------

/// t_{s_i} -> eps_i, v -> gamma(v) with gamma(alpha_i) = eps_i k_i (free directions set to 0).
inline HModule one_dim_module(const AlgebraPtr& alg, const std::vector<int>& signs, std::string label = "") {
  const auto& d = alg->datum();
  const auto& g = alg->group();
  const std::size_t r = d.rank();
  if (signs.size() != r) throw ModuleError("one sign per simple root required");
  for (int e : signs)
    if (e != 1 && e != -1) throw ModuleError("signs must be +1 or -1");
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (d.simple_orbit(i) == d.simple_orbit(j) && signs[i] != signs[j])
        throw ModuleError("sign pattern is not constant on W-orbits of simple roots");
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (g.coxeter_exponent(i, j) % 2 == 1 && signs[i] != signs[j])
        throw ModuleError("sign pattern does not extend to a character of W");

  QMatrix a(r, d.ambient_dim());
  QMatrix rhs(r, 1);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < d.ambient_dim(); ++j) a(i, j) = d.simple_roots()[i][j];
    rhs(i, 0) = d.simple_parameter(i) * signs[i];
  }
  auto gamma = solve(a, rhs);
  if (!gamma) throw ModuleError("no weight satisfies gamma(alpha) = eps(alpha) k_alpha");
  std::vector<QMatrix> gw, gv;
  for (int e : signs) gw.push_back(QMatrix{{Scalar(e)}});
  for (std::size_t j = 0; j < d.ambient_dim(); ++j) gv.push_back(QMatrix{{(*gamma)(j, 0)}});
  if (label.empty()) {
    bool all_plus = std::all_of(signs.begin(), signs.end(), [](int e) { return e == 1; });
    bool all_minus = std::all_of(signs.begin(), signs.end(), [](int e) { return e == -1; });
    label = all_plus ? "triv" : all_minus ? "St" : "one_dim";
  }
  return HModule(alg, gw, gv, label);
}

inline HModule trivial_module(const AlgebraPtr& alg) { return one_dim_module(alg, std::vector<int>(alg->rank(), 1)); }
inline HModule steinberg_module(const AlgebraPtr& alg) { return one_dim_module(alg, std::vector<int>(alg->rank(), -1)); }

// ---- principal series --------------------------------------------------------

/// M(gamma) = H (x)_{S(V)} C_gamma on the basis t_w (x) 1 in group order, using
/// v t_w = t_w ( w^-1(v) - sum_{beta > 0, w beta < 0} k_beta <w^-1 v, beta^vee> t_{s_beta} ).
inline HModule principal_series(const AlgebraPtr& alg, const Weight& gamma, std::string label = "") {
  const auto& d = alg->datum();
  const auto& g = alg->group();
  const std::size_t n = d.ambient_dim(), N = g.order();
  if (gamma.size() != n) throw ModuleError("weight has wrong length");
  const auto& roots = d.positive_roots();

  std::vector<QMatrix> gw;
  for (std::size_t i = 0; i < d.rank(); ++i) {
    QMatrix m(N, N);
    for (std::size_t w = 0; w < N; ++w) m(g.multiply(g.simple(i), w), w) = 1;
    gw.push_back(std::move(m));
  }
  std::vector<QMatrix> gv(n, QMatrix(N, N));
  for (std::size_t w = 0; w < N; ++w) {
    const QMatrix& winv = g.element(g.inverse(w)).matrix;
    const QMatrix& wm = g.element(w).matrix;
    for (std::size_t j = 0; j < n; ++j) {
      QVector u = winv.column(j);  // w^-1(e_j)
      gv[j](w, w) += dot<Scalar>(gamma, u);
      for (std::size_t r = 0; r < roots.size(); ++r) {
        QVector image = wm * std::span<const Scalar>(roots[r].vector);
        // w beta < 0 iff its simple-root expansion is nonpositive; test via positivity lookup.
        auto idx = d.find_root(image);
        if (!idx || roots[*idx].vector == image) continue;
        Scalar c = roots[r].k * pair(u, roots[r].coroot);
        if (c != 0) gv[j](g.multiply(w, alg->reflection(r)), w) -= c;
      }
    }
  }
  if (label.empty()) label = "M" + weight_to_string(gamma);
  return HModule(alg, gw, gv, label);
}

// ---- restriction and induction -----------------------------------------------

/// Res to H_J: same matrices, datum replaced by the parabolic sub-datum.
inline HModule restrict_to_parabolic(const HModule& x, unsigned mask) {
  auto par = x.alg().parabolic(mask);
  std::vector<QMatrix> gw;
  for (std::size_t i = 0; i < x.alg().rank(); ++i)
    if (mask >> i & 1u) gw.push_back(x.gen_w()[i]);
  return HModule(par.algebra, gw, x.gen_v(), "Res_" + std::to_string(mask) + "(" + x.label() + ")");
}

enum class InductionRoute { Tilde, CrossRelation };

namespace detail {

/// Group-algebra-over-S(V) element sum_g t_g (c_g + a_g), c_g in V, a_g a scalar.
struct NormalForm {
  std::map<std::size_t, std::pair<QVector, Scalar>> terms;
};

/// v t_w written as sum_g t_g (linear + constant) by iterating
/// v t_s = t_s s(v) + k_alpha <v, alpha^vee> along the reduced word of w.
/// Returns, for each w, the normal forms of e_j t_w.
inline std::vector<std::vector<NormalForm>> push_basis_past_group(const Algebra& alg) {
  const auto& d = alg.datum();
  const auto& g = alg.group();
  const std::size_t n = d.ambient_dim();
  std::vector<std::vector<NormalForm>> out(g.order(), std::vector<NormalForm>(n));
  for (std::size_t j = 0; j < n; ++j) {
    QVector e(n);
    e[j] = 1;
    out[0][j].terms[0] = {e, Scalar(0)};
  }
  for (std::size_t w = 1; w < g.order(); ++w) {
    const std::size_t i = static_cast<std::size_t>(g.element(w).word.front());
    const std::size_t s = g.simple(i);
    const std::size_t rest = g.multiply(s, w);
    const QMatrix sm = d.simple_reflection(i);
    for (std::size_t j = 0; j < n; ++j) {
      // e_j t_s t_rest = t_s (s(e_j) t_rest) + k <e_j, alpha^vee> t_rest
      NormalForm nf;
      QVector se = sm.column(j);
      for (std::size_t m = 0; m < n; ++m) {
        if (se[m] == 0) continue;
        for (const auto& [h, term] : out[rest][m].terms) {
          auto& slot = nf.terms[g.multiply(s, h)];
          if (slot.first.empty()) slot.first.assign(n, Scalar(0));
          for (std::size_t q = 0; q < n; ++q) slot.first[q] += se[m] * term.first[q];
          slot.second += se[m] * term.second;
        }
      }
      Scalar c = d.simple_parameter(i) * d.simple_coroots()[i][j];
      if (c != 0) {
        auto& slot = nf.terms[rest];
        if (slot.first.empty()) slot.first.assign(n, Scalar(0));
        slot.second += c;
      }
      out[w][j] = std::move(nf);
    }
  }
  return out;
}

}  // namespace detail

/// Ind_{H_J}^H of a module over H_J on the basis t_u (x) x_b, u in W^J (index u_pos * dim + b).
inline HModule parabolic_induction(const AlgebraPtr& alg, unsigned mask, const HModule& xj,
                                   InductionRoute route = InductionRoute::Tilde, std::string label = "") {
  const auto& d = alg->datum();
  const auto& g = alg->group();
  const auto par = alg->parabolic(mask);
  if (!xj.alg().same_as(*par.algebra)) throw ModuleError("induced module must live over the parabolic subalgebra");
  const auto& p = g.parabolic(mask);
  const std::size_t dx = xj.dim(), nu = p.min_reps.size(), dim = nu * dx, n = d.ambient_dim();

  // Parent element of W_J -> rho_J(t_{w_J}).
  std::vector<const QMatrix*> sub_action(g.order(), nullptr);
  for (std::size_t w = 0; w < par.to_parent.size(); ++w) sub_action[par.to_parent[w]] = &xj.act_w(w);

  // Adds c * (t_h (x) A x_b) for every b into the columns of block u_pos of m.
  auto place = [&](QMatrix& m, std::size_t u_pos, std::size_t h, const QMatrix& a, const Scalar& c) {
    const std::size_t target = p.rep_of[h];
    const QMatrix wa = *sub_action[p.factor_of[h]] * a;
    for (std::size_t b = 0; b < dx; ++b)
      for (std::size_t r = 0; r < dx; ++r)
        if (wa(r, b) != 0) m(target * dx + r, u_pos * dx + b) += c * wa(r, b);
  };
  const QMatrix id = QMatrix::identity(dx);

  std::vector<QMatrix> gw;
  for (std::size_t i = 0; i < d.rank(); ++i) {
    QMatrix m(dim, dim);
    for (std::size_t k = 0; k < nu; ++k) place(m, k, g.multiply(g.simple(i), p.min_reps[k]), id, 1);
    gw.push_back(std::move(m));
  }

  std::vector<QMatrix> gv(n, QMatrix(dim, dim));
  const auto& roots = d.positive_roots();
  if (route == InductionRoute::Tilde) {
    // v t_u = t_u (u^-1 v) + 1/2 sum_beta k_beta ( <v,beta^vee> t_{s_beta u} - <u^-1 v,beta^vee> t_{u s_beta} ),
    // from v = v~ + 1/2 sum k <v,beta^vee> t_{s_beta} and t_u (u^-1 v)~ = v~ t_u.
    for (std::size_t k = 0; k < nu; ++k) {
      const std::size_t u = p.min_reps[k];
      const QMatrix& uinv = g.element(g.inverse(u)).matrix;
      for (std::size_t j = 0; j < n; ++j) {
        QVector v(n);
        v[j] = 1;
        QVector uv = uinv.column(j);
        place(gv[j], k, u, xj.act_v(uv), 1);
        for (std::size_t r = 0; r < roots.size(); ++r) {
          const std::size_t sb = alg->reflection(r);
          Scalar a = roots[r].k * pair(v, roots[r].coroot) / 2;
          Scalar b = roots[r].k * pair(uv, roots[r].coroot) / 2;
          if (a != 0) place(gv[j], k, g.multiply(sb, u), id, a);
          if (b != 0) place(gv[j], k, g.multiply(u, sb), id, -b);
        }
      }
    }
  } else {
    const auto nf = detail::push_basis_past_group(*alg);
    for (std::size_t k = 0; k < nu; ++k) {
      const std::size_t u = p.min_reps[k];
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& [h, term] : nf[u][j].terms) {
          QMatrix a = xj.act_v(term.first);
          for (std::size_t q = 0; q < dx; ++q) a(q, q) += term.second;
          place(gv[j], k, h, a, 1);
        }
    }
  }
  if (label.empty()) label = "Ind_" + std::to_string(mask) + "(" + xj.label() + ")";
  return HModule(alg, gw, gv, label);
}

/// Both induction routes, asserted equal.
inline HModule parabolic_induction_checked(const AlgebraPtr& alg, unsigned mask, const HModule& xj,
                                           std::string label = "") {
  HModule a = parabolic_induction(alg, mask, xj, InductionRoute::Tilde, label);
  HModule b = parabolic_induction(alg, mask, xj, InductionRoute::CrossRelation, label);
  if (!(a == b)) throw ModuleError("induction routes disagree for '" + xj.label() + "'");
  return a;
}

/// The one-dimensional S(V)-module C_gamma as a module over H_emptyset.
inline HModule character_of_sv(const AlgebraPtr& alg, const Weight& gamma) {
  auto par = alg->parabolic(0);
  std::vector<QMatrix> gv;
  for (const auto& c : gamma) gv.push_back(QMatrix{{c}});
  return HModule(par.algebra, {}, gv, "C" + weight_to_string(gamma));
}

// ---- weights and central characters ------------------------------------------

struct WeightMultiplicity {
  Weight weight;
  std::size_t multiplicity = 0;
  friend bool operator==(const WeightMultiplicity&, const WeightMultiplicity&) = default;
};

/// Joint generalized eigenvalues of the commuting V-action, sorted by weight.
inline std::vector<WeightMultiplicity> weights(const HModule& x) {
  const std::size_t n = x.alg().dim_v();
  struct Piece {
    QMatrix basis;  // columns span a joint generalized eigenspace
    Weight partial;
  };
  std::vector<Piece> pieces{{QMatrix::identity(x.dim()), {}}};
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Piece> next;
    for (auto& piece : pieces) {
      auto local = solve(piece.basis, x.gen_v()[j] * piece.basis);
      if (!local) throw ModuleError("V-action does not preserve a generalized eigenspace");
      auto roots = rational_roots(characteristic_polynomial(*local));
      if (!roots.splits())
        throw ModuleError("spectrum of e_" + std::to_string(j + 1) + " on '" + x.label() +
                          "' does not split over Q: factor " + roots.unsplit.to_string());
      for (const auto& [lambda, mult] : roots.roots) {
        QMatrix shifted = *local - QMatrix::identity(local->rows()) * lambda;
        QMatrix power = QMatrix::identity(local->rows());
        for (std::size_t k = 0; k < mult; ++k) power = power * shifted;
        QMatrix ker = kernel(power);
        Piece p{piece.basis * ker, piece.partial};
        p.partial.push_back(lambda);
        next.push_back(std::move(p));
      }
    }
    pieces = std::move(next);
  }
  std::map<Weight, std::size_t> acc;
  for (const auto& p : pieces) acc[p.partial] += p.basis.cols();
  std::vector<WeightMultiplicity> out;
  for (const auto& [w, m] : acc) out.push_back({w, m});
  return out;
}

/// (w.gamma)(v) = gamma(w^-1 v).
inline Weight act_on_weight(const Algebra& alg, std::size_t w, const Weight& gamma) {
  return row_times<Scalar>(gamma, alg.group().element(alg.group().inverse(w)).matrix);
}

/// theta(gamma) = gamma o theta = gamma o (-w0) on V.
inline Weight theta_weight(const Algebra& alg, const Weight& gamma) {
  Weight t = row_times<Scalar>(gamma, alg.group().element(alg.group().longest()).matrix);
  for (auto& c : t) c = -c;
  return t;
}

inline std::vector<Weight> weight_orbit(const Algebra& alg, const Weight& gamma) {
  std::set<Weight> orbit;
  for (std::size_t w = 0; w < alg.group().order(); ++w) orbit.insert(act_on_weight(alg, w, gamma));
  return {orbit.begin(), orbit.end()};
}

struct CentralCharacterReport {
  std::vector<std::vector<Weight>> orbits;  // distinct W-orbits met by the weights, sorted
  bool single() const { return orbits.size() == 1; }
  const std::vector<Weight>& orbit() const {
    if (!single()) throw ModuleError("module has weights in " + std::to_string(orbits.size()) + " W-orbits");
    return orbits.front();
  }
  std::string to_string() const {
    std::string s;
    for (std::size_t o = 0; o < orbits.size(); ++o) {
      s += o ? " | {" : "{";
      for (std::size_t k = 0; k < orbits[o].size(); ++k) s += (k ? " " : "") + weight_to_string(orbits[o][k]);
      s += "}";
    }
    return s;
  }
};

inline CentralCharacterReport central_character(const HModule& x) {
  std::set<std::vector<Weight>> orbits;
  for (const auto& wm : weights(x)) orbits.insert(weight_orbit(x.alg(), wm.weight));
  return {{orbits.begin(), orbits.end()}};
}

/// Coefficients a with gamma = sum_i a_i alpha_i^vee; requires R to span V.
inline QVector coroot_expansion(const RootDatum& d, const Weight& gamma) {
  if (!d.spans()) throw ModuleError("tempered/discrete series tests require R to span V");
  QMatrix c(d.ambient_dim(), d.rank());
  for (std::size_t i = 0; i < d.rank(); ++i)
    for (std::size_t j = 0; j < d.ambient_dim(); ++j) c(j, i) = d.simple_coroots()[i][j];
  QMatrix rhs(d.ambient_dim(), 1);
  for (std::size_t j = 0; j < gamma.size(); ++j) rhs(j, 0) = gamma[j];
  auto a = solve(c, rhs);
  if (!a) throw ModuleError("weight is not in the span of the coroots");
  return a->column(0);
}

inline bool is_tempered(const HModule& x) {
  for (const auto& wm : weights(x))
    for (const auto& a : coroot_expansion(x.alg().datum(), wm.weight))
      if (a > 0) return false;
  return true;
}

inline bool is_discrete_series(const HModule& x) {
  for (const auto& wm : weights(x))
    for (const auto& a : coroot_expansion(x.alg().datum(), wm.weight))
      if (a >= 0) return false;
  return true;
}

}  // namespace heckext
