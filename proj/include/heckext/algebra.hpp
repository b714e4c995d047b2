#pragma once

// The graded affine Hecke algebra H(Pi, k) as a context object: root datum,
// enumerated Weyl group, and the group elements s_beta for every positive root.

#include <memory>

#include "heckext/weyl_group.hpp"

namespace heckext {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

class Algebra {
 public:
  static AlgebraPtr create(RootDatum datum) { return AlgebraPtr(new Algebra(std::move(datum))); }

  const RootDatum& datum() const { return datum_; }
  const WeylGroup& group() const { return group_; }
  std::size_t dim_v() const { return datum_.ambient_dim(); }
  std::size_t rank() const { return datum_.rank(); }
  unsigned full_mask() const { return (1u << rank()) - 1u; }

  /// Group element s_beta for positive root index r.
  std::size_t reflection(std::size_t r) const { return root_reflection_.at(r); }

  /// w(v) for v in V.
  QVector act(std::size_t w, const QVector& v) const { return group_.element(w).matrix * std::span<const Scalar>(v); }

  /// The parabolic subalgebra H_J together with the embedding of W_J into W.
  struct Parabolic {
    unsigned mask = 0;
    AlgebraPtr algebra;
    std::vector<std::size_t> to_parent;  // element of W_J (in its own indexing) -> element of W
  };

  Parabolic parabolic(unsigned mask) const {
    if (mask > full_mask()) throw Error("invalid parabolic subset mask");
    Parabolic p;
    p.mask = mask;
    p.algebra = create(datum_.parabolic(mask));
    const auto& sub = p.algebra->group();
    p.to_parent.resize(sub.order());
    for (std::size_t w = 0; w < sub.order(); ++w) {
      auto parent = group_.find(sub.element(w).matrix);
      if (!parent) throw Error("parabolic element not found in the parent group");
      p.to_parent[w] = *parent;
    }
    return p;
  }

  bool same_as(const Algebra& other) const { return this == &other || datum_ == other.datum_; }

 private:
  explicit Algebra(RootDatum datum) : datum_(std::move(datum)), group_(datum_) {
    for (const auto& root : datum_.positive_roots()) {
      auto w = group_.find(reflection_matrix(root.vector, root.coroot));
      if (!w) throw DatumError("reflection of a positive root missing from W");
      root_reflection_.push_back(*w);
    }
  }

  RootDatum datum_;
  WeylGroup group_;
  std::vector<std::size_t> root_reflection_;
};

}  // namespace heckext
