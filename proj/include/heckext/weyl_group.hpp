#pragma once

// Finite reflection groups, enumerated as exact matrix groups.
//
// Elements are ordered by (length, lexicographically minimal reduced word),
// so index 0 is the identity and indices 1..rank are the simple reflections
// in order. Conjugacy classes are numbered by their smallest element.

#include <map>
#include <string>
#include <vector>

#include "heckext/root_datum.hpp"

namespace heckext {

struct WeylElement {
  QMatrix matrix;         // action on V
  std::vector<int> word;  // lexicographically minimal reduced word (0-based simple indices)
  std::size_t length = 0;
  int sign = 1;
};

/// Subgroup W_J, its minimal left coset representatives W^J and the factorization w = u * w_J.
struct ParabolicData {
  unsigned mask = 0;
  std::vector<std::size_t> members;       // W_J, ascending index
  std::vector<std::size_t> min_reps;      // W^J ordered by (length, word)
  std::vector<std::size_t> rep_of;        // w -> position in min_reps of its coset
  std::vector<std::size_t> factor_of;     // w -> element w_J with w = u * w_J
  std::size_t longest = 0;                // w_{0,J}
};

class WeylGroup {
 public:
  static constexpr std::size_t kDefaultOrderCap = 20000;

  WeylGroup() = default;
  explicit WeylGroup(const RootDatum& datum, std::size_t order_cap = kDefaultOrderCap) {
    enumerate(datum, order_cap);
    build_tables();
    build_classes();
    build_parabolics();
  }

  std::size_t order() const { return elements_.size(); }
  std::size_t rank() const { return simple_.size(); }
  const std::vector<WeylElement>& elements() const { return elements_; }
  const WeylElement& element(std::size_t w) const { return elements_.at(w); }
  std::size_t identity() const { return 0; }
  std::size_t simple(std::size_t i) const { return simple_.at(i); }
  std::size_t longest() const { return longest_; }

  std::size_t multiply(std::size_t a, std::size_t b) const { return mult_[a * order() + b]; }
  std::size_t inverse(std::size_t a) const { return inv_[a]; }
  std::size_t conjugate(std::size_t g, std::size_t h) const { return multiply(multiply(h, g), inv_[h]); }

  /// Element index for a matrix, if it belongs to the group.
  std::optional<std::size_t> find(const QMatrix& m) const {
    auto it = index_.find(m.data());
    if (it == index_.end() || m.rows() != dim_) return std::nullopt;
    return it->second;
  }

  /// Order of s_i s_j (the Coxeter exponent m_ij).
  std::size_t coxeter_exponent(std::size_t i, std::size_t j) const {
    const std::size_t g = multiply(simple_[i], simple_[j]);
    std::size_t x = g, m = 1;
    while (x != 0) {
      x = multiply(x, g);
      ++m;
    }
    return m;
  }

  const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }
  std::size_t class_count() const { return classes_.size(); }
  std::size_t class_of(std::size_t w) const { return class_of_[w]; }
  std::size_t class_representative(std::size_t c) const { return classes_.at(c).front(); }
  std::size_t class_size(std::size_t c) const { return classes_.at(c).size(); }

  /// det_V(1 - w) for a class representative.
  Scalar class_det_one_minus(std::size_t c) const {
    const auto& m = elements_[class_representative(c)].matrix;
    return determinant(QMatrix::identity(m.rows()) - m);
  }

  const ParabolicData& parabolic(unsigned mask) const { return parabolics_.at(mask); }

  /// The coset representatives of W/W_J, ordered by (length, word).
  std::vector<std::size_t> minimal_coset_reps(unsigned mask) const {
    if (mask >= parabolics_.size()) throw Error("invalid parabolic subset");
    return parabolics_[mask].min_reps;
  }

 private:
  void enumerate(const RootDatum& datum, std::size_t cap) {
    dim_ = datum.ambient_dim();
    const std::size_t r = datum.rank();
    std::vector<QMatrix> gens;
    for (std::size_t i = 0; i < r; ++i) gens.push_back(datum.simple_reflection(i));

    // Breadth-first closure under left multiplication gives lengths.
    std::vector<QMatrix> mats{QMatrix::identity(dim_)};
    std::vector<std::size_t> len{0};
    std::map<std::vector<Scalar>, std::size_t> idx{{mats[0].data(), 0}};
    for (std::size_t head = 0; head < mats.size(); ++head)
      for (std::size_t i = 0; i < r; ++i) {
        QMatrix m = gens[i] * mats[head];
        if (idx.count(m.data())) continue;
        if (mats.size() >= cap) throw DatumError("group order exceeds cap " + std::to_string(cap));
        idx.emplace(m.data(), mats.size());
        mats.push_back(std::move(m));
        len.push_back(len[head] + 1);
      }

    // Lex-minimal reduced word: peel off the smallest left descent.
    const std::size_t n = mats.size();
    std::vector<std::size_t> by_len(n);
    for (std::size_t k = 0; k < n; ++k) by_len[k] = k;
    std::stable_sort(by_len.begin(), by_len.end(), [&](auto a, auto b) { return len[a] < len[b]; });
    std::vector<std::vector<int>> words(n);
    for (auto w : by_len) {
      if (len[w] == 0) continue;
      for (std::size_t i = 0; i < r; ++i) {
        std::size_t sw = idx.at((gens[i] * mats[w]).data());
        if (len[sw] + 1 == len[w]) {
          words[w].push_back(static_cast<int>(i));
          words[w].insert(words[w].end(), words[sw].begin(), words[sw].end());
          break;
        }
      }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t k = 0; k < n; ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
      if (len[a] != len[b]) return len[a] < len[b];
      return words[a] < words[b];
    });
    elements_.clear();
    for (auto k : order) {
      WeylElement e;
      e.matrix = std::move(mats[k]);
      e.word = std::move(words[k]);
      e.length = len[k];
      e.sign = (len[k] % 2) ? -1 : 1;
      index_.emplace(e.matrix.data(), elements_.size());
      elements_.push_back(std::move(e));
    }
    simple_.resize(r);
    for (std::size_t i = 0; i < r; ++i) simple_[i] = index_.at(gens[i].data());
  }

  void build_tables() {
    const std::size_t n = order();
    mult_.assign(n * n, 0);
    inv_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        std::size_t c = index_.at((elements_[a].matrix * elements_[b].matrix).data());
        mult_[a * n + b] = c;
        if (c == 0) inv_[a] = b;
      }
    longest_ = 0;
    for (std::size_t w = 0; w < n; ++w)
      if (elements_[w].length > elements_[longest_].length) longest_ = w;
  }

  void build_classes() {
    const std::size_t n = order();
    class_of_.assign(n, n);
    for (std::size_t g = 0; g < n; ++g) {
      if (class_of_[g] != n) continue;
      std::vector<std::size_t> cls;
      for (std::size_t h = 0; h < n; ++h) {
        std::size_t c = conjugate(g, h);
        if (class_of_[c] == n) {
          class_of_[c] = classes_.size();
          cls.push_back(c);
        }
      }
      std::sort(cls.begin(), cls.end());
      classes_.push_back(std::move(cls));
    }
  }

  void build_parabolics() {
    const std::size_t r = rank();
    const std::size_t n = order();
    parabolics_.resize(std::size_t{1} << r);
    for (unsigned mask = 0; mask < parabolics_.size(); ++mask) {
      ParabolicData p;
      p.mask = mask;
      std::vector<bool> in(n, false);
      in[0] = true;
      std::vector<std::size_t> stack{0};
      while (!stack.empty()) {
        std::size_t w = stack.back();
        stack.pop_back();
        for (std::size_t i = 0; i < r; ++i) {
          if (!(mask >> i & 1u)) continue;
          std::size_t x = multiply(w, simple_[i]);
          if (!in[x]) {
            in[x] = true;
            stack.push_back(x);
          }
        }
      }
      for (std::size_t w = 0; w < n; ++w)
        if (in[w]) p.members.push_back(w);
      for (auto w : p.members)
        if (elements_[w].length > elements_[p.longest].length) p.longest = w;

      p.rep_of.assign(n, 0);
      p.factor_of.assign(n, 0);
      std::vector<std::size_t> coset_rep(n, n);
      for (std::size_t w = 0; w < n; ++w) {
        if (coset_rep[w] != n) continue;
        // Elements are sorted by length, so the first hit of a fresh coset is its minimum.
        for (auto h : p.members) coset_rep[multiply(w, h)] = w;
        p.min_reps.push_back(w);
      }
      for (std::size_t w = 0; w < n; ++w) {
        std::size_t u = coset_rep[w];
        p.rep_of[w] = static_cast<std::size_t>(std::find(p.min_reps.begin(), p.min_reps.end(), u) - p.min_reps.begin());
        p.factor_of[w] = multiply(inv_[u], w);
      }
      parabolics_[mask] = std::move(p);
    }
  }

  std::size_t dim_ = 0;
  std::vector<WeylElement> elements_;
  std::map<std::vector<Scalar>, std::size_t> index_;
  std::vector<std::size_t> simple_;
  std::vector<std::size_t> mult_;
  std::vector<std::size_t> inv_;
  std::size_t longest_ = 0;
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<std::size_t> class_of_;
  std::vector<ParabolicData> parabolics_;
};

inline WeylGroup enumerate_weyl_group(const RootDatum& datum, std::size_t order_cap = WeylGroup::kDefaultOrderCap) {
  return WeylGroup(datum, order_cap);
}

/// Conjugacy classes with det_V(1 - w) != 0.
inline std::vector<std::size_t> elliptic_classes(const WeylGroup& group) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < group.class_count(); ++c)
    if (group.class_det_one_minus(c) != 0) out.push_back(c);
  return out;
}

}  // namespace heckext
