#pragma once

// Exact class functions on W: characters of modules, sgn, induced
// characters from parabolic subgroups, and the elliptic pairing.

#include <sstream>
#include <string>
#include <vector>

#include "heckext/module.hpp"

namespace heckext {

class ClassFunction {
 public:
  ClassFunction() = default;
  ClassFunction(AlgebraPtr algebra, std::vector<Scalar> values) : algebra_(std::move(algebra)), values_(std::move(values)) {
    if (values_.size() != algebra_->group().class_count()) throw Error("class function needs one value per class");
  }

  static ClassFunction constant(AlgebraPtr algebra, const Scalar& c) {
    const std::size_t n = algebra->group().class_count();
    return ClassFunction(std::move(algebra), std::vector<Scalar>(n, c));
  }

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::vector<Scalar>& values() const { return values_; }
  const Scalar& on_class(std::size_t c) const { return values_.at(c); }
  const Scalar& operator()(std::size_t w) const { return values_.at(algebra_->group().class_of(w)); }

  friend ClassFunction operator+(ClassFunction a, const ClassFunction& b) {
    a.check(b);
    for (std::size_t c = 0; c < a.values_.size(); ++c) a.values_[c] += b.values_[c];
    return a;
  }
  friend ClassFunction operator-(ClassFunction a, const ClassFunction& b) {
    a.check(b);
    for (std::size_t c = 0; c < a.values_.size(); ++c) a.values_[c] -= b.values_[c];
    return a;
  }
  /// Pointwise product.
  friend ClassFunction operator*(ClassFunction a, const ClassFunction& b) {
    a.check(b);
    for (std::size_t c = 0; c < a.values_.size(); ++c) a.values_[c] *= b.values_[c];
    return a;
  }
  friend ClassFunction operator*(ClassFunction a, const Scalar& s) {
    for (auto& v : a.values_) v *= s;
    return a;
  }
  friend bool operator==(const ClassFunction& a, const ClassFunction& b) { return a.values_ == b.values_; }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t c = 0; c < values_.size(); ++c) s += (c ? "," : "") + heckext::to_string(values_[c]);
    return s + ")";
  }

 private:
  void check(const ClassFunction& o) const {
    if (values_.size() != o.values_.size()) throw Error("class functions over different groups");
  }
  AlgebraPtr algebra_;
  std::vector<Scalar> values_;
};

inline ClassFunction sgn_character(const AlgebraPtr& alg) {
  const auto& g = alg->group();
  std::vector<Scalar> v;
  for (std::size_t c = 0; c < g.class_count(); ++c) v.emplace_back(g.element(g.class_representative(c)).sign);
  return ClassFunction(alg, v);
}

/// Traces of rho(t_w) on class representatives; each class is also sampled at its largest member.
inline ClassFunction w_character(const HModule& x) {
  const auto& g = x.alg().group();
  std::vector<Scalar> v;
  for (std::size_t c = 0; c < g.class_count(); ++c) {
    const auto& members = g.classes()[c];
    Scalar t = trace(x.act_w(members.front()));
    if (members.size() > 1 && trace(x.act_w(members.back())) != t)
      throw ModuleError("character of '" + x.label() + "' is not constant on class " + std::to_string(c));
    v.push_back(t);
  }
  return ClassFunction(x.algebra(), v);
}

/// (1/|W|) sum_w f(w) g(w^-1).
inline Scalar inner_product(const ClassFunction& f, const ClassFunction& h) {
  const auto& g = f.algebra()->group();
  Scalar s = 0;
  for (std::size_t c = 0; c < g.class_count(); ++c) {
    const std::size_t inv_class = g.class_of(g.inverse(g.class_representative(c)));
    s += f.on_class(c) * h.on_class(inv_class) * static_cast<long>(g.class_size(c));
  }
  return s / static_cast<long>(g.order());
}

/// (1/|W|) sum_w f(w) g(w) det_V(1 - w).
inline Scalar elliptic_pairing(const ClassFunction& f, const ClassFunction& h) {
  const auto& g = f.algebra()->group();
  if (h.values().size() != f.values().size()) throw Error("elliptic pairing of class functions on different groups");
  Scalar s = 0;
  for (std::size_t c = 0; c < g.class_count(); ++c) {
    Scalar d = g.class_det_one_minus(c);
    if (d != 0) s += f.on_class(c) * h.on_class(c) * d * static_cast<long>(g.class_size(c));
  }
  return s / static_cast<long>(g.order());
}

/// Ind_{W_J}^W Res_{W_J} f via Ind(w) = (1/|W_J|) sum_{g in W, g w g^-1 in W_J} f(g w g^-1).
inline ClassFunction induce_restriction(const ClassFunction& f, unsigned mask) {
  const auto& g = f.algebra()->group();
  const auto& p = g.parabolic(mask);
  std::vector<bool> in_j(g.order(), false);
  for (auto m : p.members) in_j[m] = true;
  std::vector<Scalar> v;
  for (std::size_t c = 0; c < g.class_count(); ++c) {
    const std::size_t w = g.class_representative(c);
    Scalar s = 0;
    for (std::size_t h = 0; h < g.order(); ++h) {
      const std::size_t x = g.conjugate(w, h);
      if (in_j[x]) s += f(x);
    }
    v.push_back(s / static_cast<long>(p.members.size()));
  }
  return ClassFunction(f.algebra(), v);
}

}  // namespace heckext
