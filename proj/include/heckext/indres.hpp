#pragma once

// The Ind-Res complex 0 -> ker pi_0 -> C_0(X) -> ... -> C_{m-1}(X) -> X -> 0,
// C_i(X) = sum over |J| = i of Ind_{H_J} Res_{H_J} X, with Coxeter-complex
// signs, and the Aubert-type alternating sum of characters.

#include <string>
#include <vector>

#include "heckext/constructions.hpp"

namespace heckext {

/// (-1)^{j+1}, j the 1-based position of the added root within the sorted complement of J.
inline int coxeter_sign(unsigned j_mask, unsigned jp_mask, std::size_t rank) {
  const unsigned added = jp_mask & ~j_mask;
  if ((j_mask & ~jp_mask) || __builtin_popcount(added) != 1) throw Error("J' must be J plus one simple root");
  int pos = 0;
  for (std::size_t i = 0; i < rank; ++i) {
    if (j_mask >> i & 1u) continue;
    ++pos;
    if (added >> i & 1u) break;
  }
  return pos % 2 ? 1 : -1;
}

struct IndResStage {
  std::size_t degree = 0;
  std::vector<unsigned> subsets;  // the J with |J| = degree, ascending as bit masks
  std::vector<std::size_t> offsets;
  std::size_t dim = 0;
};

struct IndResReport {
  std::vector<IndResStage> stages;  // degrees 0..m
  std::vector<QMatrix> maps;        // pi_i : C_i -> C_{i+1}, i = 0..m-1
  std::vector<std::size_t> ranks;
  std::size_t kernel_dim = 0;
  bool maps_equivariant = true;
  bool composites_vanish = true;
  bool exact = true;                // exact at C_1..C_{m-1} and onto X
  bool kernel_is_image_of_chi = true;
  bool kernel_isomorphic_to_D = true;
  long euler_count = 0;             // sum_J (-1)^{|J|} |W / W_J|
  bool ok() const {
    return maps_equivariant && composites_vanish && exact && kernel_is_image_of_chi && kernel_isomorphic_to_D;
  }
};

/// chi(x) = sum_w (-1)^{l(w)} t_w (x) t_w^-1 x in Ind_{S(V)} Res X (basis t_w (x) x_b), as a matrix on X.
inline QMatrix chi_map(const HModule& x) {
  const auto& g = x.alg().group();
  QMatrix m(g.order() * x.dim(), x.dim());
  for (std::size_t w = 0; w < g.order(); ++w) {
    const QMatrix& a = x.act_w(g.inverse(w));
    const int s = g.element(w).sign;
    for (std::size_t r = 0; r < x.dim(); ++r)
      for (std::size_t c = 0; c < x.dim(); ++c) m(w * x.dim() + r, c) = a(r, c) * s;
  }
  return m;
}

inline IndResReport indres_complex(const HModule& x) {
  const auto& alg = x.alg();
  const auto& g = alg.group();
  const std::size_t m = alg.rank();
  if (!alg.datum().spans()) throw ModuleError("Ind-Res complex requires R to span V");

  std::vector<HModule> induced(std::size_t{1} << m);
  for (unsigned mask = 0; mask <= alg.full_mask(); ++mask)
    induced[mask] = parabolic_induction_checked(x.algebra(), mask, restrict_to_parabolic(x, mask));

  IndResReport rep;
  for (std::size_t i = 0; i <= m; ++i) {
    IndResStage st;
    st.degree = i;
    for (unsigned mask = 0; mask <= alg.full_mask(); ++mask)
      if (static_cast<std::size_t>(__builtin_popcount(mask)) == i) {
        st.subsets.push_back(mask);
        st.offsets.push_back(st.dim);
        st.dim += induced[mask].dim();
      }
    rep.euler_count += (i % 2 ? -1 : 1) * static_cast<long>(st.dim / x.dim());
    rep.stages.push_back(std::move(st));
  }

  // Block-diagonal action on a stage.
  auto stage_action = [&](const IndResStage& st, bool w_gen, std::size_t k) {
    QMatrix a(st.dim, st.dim);
    for (std::size_t b = 0; b < st.subsets.size(); ++b) {
      const HModule& mod = induced[st.subsets[b]];
      const QMatrix& blk = w_gen ? mod.gen_w()[k] : mod.gen_v()[k];
      for (std::size_t r = 0; r < blk.rows(); ++r)
        for (std::size_t c = 0; c < blk.cols(); ++c) a(st.offsets[b] + r, st.offsets[b] + c) = blk(r, c);
    }
    return a;
  };

  for (std::size_t i = 0; i < m; ++i) {
    const auto& src = rep.stages[i];
    const auto& dst = rep.stages[i + 1];
    QMatrix pi(dst.dim, src.dim);
    for (std::size_t b = 0; b < src.subsets.size(); ++b) {
      const unsigned j = src.subsets[b];
      const auto& pj = g.parabolic(j);
      for (std::size_t b2 = 0; b2 < dst.subsets.size(); ++b2) {
        const unsigned jp = dst.subsets[b2];
        if ((j & jp) != j) continue;
        const int eps = coxeter_sign(j, jp, m);
        const auto& pjp = g.parabolic(jp);
        // t_u (x) x -> eps t_{u'} (x) t_{w_J'} x where u = u' w_J'.
        for (std::size_t k = 0; k < pj.min_reps.size(); ++k) {
          const std::size_t u = pj.min_reps[k];
          const std::size_t target = pjp.rep_of[u];
          const QMatrix& a = x.act_w(pjp.factor_of[u]);
          for (std::size_t r = 0; r < x.dim(); ++r)
            for (std::size_t c = 0; c < x.dim(); ++c)
              if (a(r, c) != 0)
                pi(dst.offsets[b2] + target * x.dim() + r, src.offsets[b] + k * x.dim() + c) += a(r, c) * eps;
        }
      }
    }
    for (std::size_t s = 0; s < m; ++s)
      if (!(pi * stage_action(src, true, s) == stage_action(dst, true, s) * pi)) rep.maps_equivariant = false;
    for (std::size_t v = 0; v < alg.dim_v(); ++v)
      if (!(pi * stage_action(src, false, v) == stage_action(dst, false, v) * pi)) rep.maps_equivariant = false;
    rep.ranks.push_back(rank(pi));
    rep.maps.push_back(std::move(pi));
  }
  for (std::size_t i = 0; i + 1 < rep.maps.size(); ++i)
    if (!(rep.maps[i + 1] * rep.maps[i]).is_zero()) rep.composites_vanish = false;
  for (std::size_t i = 1; i < m; ++i)
    if (rep.stages[i].dim - rep.ranks[i] != rep.ranks[i - 1]) rep.exact = false;
  if (m > 0 && rep.ranks[m - 1] != x.dim()) rep.exact = false;

  if (m == 0) {
    rep.kernel_dim = 0;
    return rep;
  }
  const QMatrix ker = kernel(rep.maps[0]);
  rep.kernel_dim = ker.cols();
  const QMatrix chi = chi_map(x);
  rep.kernel_is_image_of_chi = (rep.maps[0] * chi).is_zero() && rank(chi) == ker.cols();
  try {
    HModule k = submodule(induced[0], ker, "ker pi_0(" + x.label() + ")");
    rep.kernel_isomorphic_to_D = is_isomorphic(k, dD(x));
  } catch (const ModuleError&) {
    rep.kernel_isomorphic_to_D = false;
  }
  return rep;
}

/// sum_J (-1)^{|J|} Ind_{W_J}^W Res_{W_J} chi_X.
inline ClassFunction aubert_virtual_character(const HModule& x) {
  const ClassFunction chi = w_character(x);
  ClassFunction acc = ClassFunction::constant(x.algebra(), 0);
  for (unsigned mask = 0; mask <= x.alg().full_mask(); ++mask) {
    ClassFunction term = induce_restriction(chi, mask);
    acc = __builtin_popcount(mask) % 2 ? acc - term : acc + term;
  }
  return acc;
}

}  // namespace heckext
