#pragma once

// Exterior powers of V in the lexicographic basis e_K (K strictly increasing).

#include <vector>

#include "heckext/class_function.hpp"

namespace heckext {

using Subset = std::vector<std::size_t>;

/// All k-subsets of {0..n-1}, lexicographic.
inline std::vector<Subset> wedge_basis(std::size_t n, std::size_t k) {
  std::vector<Subset> out;
  if (k > n) return out;
  Subset s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

inline std::size_t wedge_index(const std::vector<Subset>& basis, const Subset& s) {
  auto it = std::lower_bound(basis.begin(), basis.end(), s);
  if (it == basis.end() || *it != s) throw Error("subset not in wedge basis");
  return static_cast<std::size_t>(it - basis.begin());
}

inline Subset complement(std::size_t n, const Subset& s) {
  Subset c;
  for (std::size_t i = 0, j = 0; i < n; ++i) {
    if (j < s.size() && s[j] == i) ++j;
    else c.push_back(i);
  }
  return c;
}

/// det(e_A, e_B) for the concatenated tuple: the sign sorting A followed by B, or 0 on overlap.
inline int concat_sign(const Subset& a, const Subset& b) {
  std::vector<std::size_t> all(a);
  all.insert(all.end(), b.begin(), b.end());
  int sign = 1;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (all[i] == all[j]) return 0;
      if (all[i] > all[j]) sign = -sign;
    }
  return sign;
}

/// Matrix of wedge^k m: entry (K, L) is the minor with rows K and columns L.
inline QMatrix wedge_power(const QMatrix& m, std::size_t k) {
  const auto basis = wedge_basis(m.rows(), k);
  QMatrix out(basis.size(), basis.size());
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (std::size_t c = 0; c < basis.size(); ++c) {
      QMatrix minor(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) minor(i, j) = m(basis[r][i], basis[c][j]);
      out(r, c) = k == 0 ? Scalar(1) : determinant(minor);
    }
  return out;
}

/// <e_K, e_L> = det(e_K, e_L) between degree k and degree n - k.
inline QMatrix wedge_pairing(std::size_t n, std::size_t k) {
  const auto lo = wedge_basis(n, k), hi = wedge_basis(n, n - k);
  QMatrix p(lo.size(), hi.size());
  for (std::size_t r = 0; r < lo.size(); ++r)
    for (std::size_t c = 0; c < hi.size(); ++c) p(r, c) = concat_sign(lo[r], hi[c]);
  return p;
}

inline ClassFunction wedge_character(const AlgebraPtr& alg, std::size_t k) {
  const auto& g = alg->group();
  std::vector<Scalar> v;
  for (std::size_t c = 0; c < g.class_count(); ++c)
    v.push_back(trace(wedge_power(g.element(g.class_representative(c)).matrix, k)));
  return ClassFunction(alg, v);
}

}  // namespace heckext
