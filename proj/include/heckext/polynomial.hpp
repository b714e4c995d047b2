#pragma once

// Univariate polynomials over the rationals: characteristic polynomials,
// square-free parts and exact rational root extraction.

#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "heckext/matrix.hpp"

namespace heckext {

/// Coefficients from the constant term upward; no trailing zeros.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(const Scalar& coeff, std::size_t degree) {
    std::vector<Scalar> c(degree + 1);
    c[degree] = coeff;
    return Polynomial(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  /// Degree of the zero polynomial is reported as -1.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  const Scalar& leading() const { return c_.back(); }
  Scalar coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Scalar(0); }

  Scalar operator()(const Scalar& x) const {
    Scalar acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Scalar> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
    return Polynomial(std::move(d));
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    Polynomial p = *this;
    Scalar inv = 1 / leading();
    for (auto& x : p.c_) x *= inv;
    return p;
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) - b.coeff(k);
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }

  /// Euclidean division: returns (quotient, remainder).
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    std::vector<Scalar> r = a.c_;
    if (a.degree() < b.degree()) return {Polynomial{}, a};
    std::vector<Scalar> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    const std::size_t db = b.c_.size() - 1;
    for (std::size_t k = q.size(); k-- > 0;) {
      Scalar t = r[k + db] / b.leading();
      q[k] = t;
      if (t == 0) continue;
      for (std::size_t j = 0; j <= db; ++j) r[k + j] -= t * b.c_[j];
    }
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (c_[k] == 0) continue;
      if (!first) os << (c_[k] < 0 ? " - " : " + ");
      else if (c_[k] < 0) os << "-";
      Scalar a = abs(c_[k]);
      if (a != 1 || k == 0) os << a;
      if (k > 0) os << (a != 1 ? "*x" : "x");
      if (k > 1) os << "^" << k;
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Scalar> c_;
};

inline Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// det(x I - m) via the Faddeev-LeVerrier recursion (exact over Q).
inline Polynomial characteristic_polynomial(const QMatrix& m) {
  if (!m.is_square()) throw Error("characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Scalar> c(n + 1);
  c[n] = 1;
  QMatrix acc(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    acc = m * acc;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += c[n - k + 1];
    c[n - k] = -trace(m * acc) / static_cast<long>(k);
  }
  return Polynomial(std::move(c));
}

/// Multiplicity of `root` as a zero of p.
inline std::size_t root_multiplicity(Polynomial p, const Scalar& root) {
  const Polynomial lin({-root, Scalar(1)});
  std::size_t mult = 0;
  while (!p.is_zero()) {
    auto [q, r] = divmod(p, lin);
    if (!r.is_zero()) break;
    p = std::move(q);
    ++mult;
  }
  return mult;
}

struct RationalRoots {
  std::vector<std::pair<Scalar, std::size_t>> roots;  // ascending, with multiplicity
  Polynomial unsplit;                                 // cofactor without rational roots (1 when split)
  bool splits() const { return unsplit.degree() == 0; }
};

namespace detail {

inline std::vector<mpz_class> integer_divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> small, large;
  if (n == 0) return {};
  if (!n.fits_ulong_p() || n > mpz_class("1000000000000"))
    throw Error("constant term " + n.get_str() + " too large for rational root search");
  const unsigned long v = n.get_ui();
  for (unsigned long d = 1; d * d <= v; ++d) {
    if (v % d) continue;
    small.emplace_back(d);
    if (d * d != v) large.emplace_back(v / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace detail

/// All rational roots of p with multiplicities.
///
/// The square-free part is scaled to a monic integer polynomial in y = D x,
/// whose integer roots divide its constant term.
inline RationalRoots rational_roots(const Polynomial& p) {
  if (p.is_zero()) throw Error("rational_roots of the zero polynomial");
  RationalRoots out;
  Polynomial sq = divmod(p.monic(), gcd(p, p.derivative())).first.monic();

  mpz_class denom_lcm = 1;
  for (const auto& c : sq.coeffs()) mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), c.get_den_mpz_t());
  // q(y) = D^d sq(y / D) is monic with integer coefficients.
  const std::size_t d = static_cast<std::size_t>(sq.degree());
  std::vector<Scalar> qc(d + 1);
  mpz_class power = 1;
  for (std::size_t k = d + 1; k-- > 0;) {
    qc[k] = sq.coeff(k) * Scalar(power);
    power *= denom_lcm;
  }
  Polynomial q(std::move(qc));

  std::vector<Scalar> candidates;
  std::size_t shift = 0;
  while (shift < q.coeffs().size() && q.coeffs()[shift] == 0) ++shift;
  if (shift > 0) candidates.emplace_back(0);
  if (shift < q.coeffs().size()) {
    for (const auto& div : detail::integer_divisors(q.coeffs()[shift].get_num())) {
      candidates.emplace_back(div);
      candidates.emplace_back(-div);
    }
  }
  std::sort(candidates.begin(), candidates.end());

  Polynomial rest = p.monic();
  for (const auto& y : candidates) {
    if (q(y) != 0) continue;
    Scalar x = y / Scalar(denom_lcm);
    std::size_t m = root_multiplicity(rest, x);
    if (m == 0) continue;
    out.roots.emplace_back(x, m);
    for (std::size_t k = 0; k < m; ++k) rest = divmod(rest, Polynomial({-x, Scalar(1)})).first;
  }
  std::sort(out.roots.begin(), out.roots.end());
  out.unsplit = rest;
  return out;
}

}  // namespace heckext
