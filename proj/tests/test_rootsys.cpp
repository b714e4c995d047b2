#include <gtest/gtest.h>

#include "heckext/algebra.hpp"

using namespace heckext;

namespace {

RootDatum unit(const std::string& type) {
  const std::size_t orbits = (type == "B2" || type == "G2" || type == "B3" || type == "I2(2)") ? 2 : 1;
  return build_root_datum(type, std::vector<Scalar>(orbits, Scalar(1)));
}

}  // namespace

TEST(RootDatum, PositiveRootCounts) {
  EXPECT_EQ(unit("A1").positive_roots().size(), 1u);
  EXPECT_EQ(unit("A1").ambient_dim(), 1u);
  EXPECT_EQ(unit("A2").positive_roots().size(), 3u);
  EXPECT_EQ(unit("B2").positive_roots().size(), 4u);
  EXPECT_EQ(unit("G2").positive_roots().size(), 6u);
  EXPECT_EQ(unit("A3").positive_roots().size(), 6u);
  EXPECT_EQ(unit("B3").positive_roots().size(), 9u);
}

TEST(RootDatum, G2PairingsMatchConvention) {
  auto d = unit("G2");
  const auto c = d.cartan();
  // <alpha_2, alpha_1^vee> = -3 with alpha_1 short.
  EXPECT_EQ(c[0][1], -3);
  EXPECT_EQ(c[1][0], -1);
}

TEST(RootDatum, RejectsBadInput) {
  EXPECT_THROW(build_root_datum("E8", {1}), DatumError);
  EXPECT_THROW(build_root_datum("A2", {1, 1}), DatumError);
  EXPECT_THROW(build_root_datum("H3", {1}), DatumError);
  // Orbit constancy: both A2 simple roots are conjugate.
  EXPECT_THROW(RootDatum("A2", 2, {{1, 0}, {0, 1}}, {{2, -1}, {-1, 2}}, {1, 2}), DatumError);
  EXPECT_THROW(RootDatum("bad", 1, {{1}}, {{1}}, {1}), DatumError);
}

TEST(RootDatum, SerializationRoundTrip) {
  for (const auto& d : {build_root_datum("B2", {Scalar(1), Scalar(2)}), build_root_datum("G2", {Scalar(1, 2), Scalar(3)}),
                        build_root_datum("A2", {Scalar(1)}, 1)}) {
    const std::string text = serialize(d);
    auto back = parse_root_datum(text);
    EXPECT_TRUE(back == d);
    EXPECT_EQ(serialize(back), text);
  }
}

TEST(RootDatum, RootsClosedUnderReflections) {
  for (auto type : {"A1", "A2", "B2", "G2", "A3", "B3", "I2(2)"}) {
    auto d = unit(type);
    WeylGroup g(d);
    for (const auto& w : g.elements())
      for (const auto& r : d.positive_roots()) {
        auto img = w.matrix * std::span<const Scalar>(r.vector);
        EXPECT_TRUE(d.find_root(img).has_value()) << type;
      }
  }
}

TEST(WeylGroup, Orders) {
  EXPECT_EQ(WeylGroup(unit("A1")).order(), 2u);
  EXPECT_EQ(WeylGroup(unit("A2")).order(), 6u);
  EXPECT_EQ(WeylGroup(unit("B2")).order(), 8u);
  EXPECT_EQ(WeylGroup(unit("G2")).order(), 12u);
  EXPECT_EQ(WeylGroup(unit("A3")).order(), 24u);
  EXPECT_EQ(WeylGroup(unit("B3")).order(), 48u);
  EXPECT_THROW(WeylGroup(unit("B3"), 10), DatumError);
}

TEST(WeylGroup, StructuralProperties) {
  for (auto type : {"A1", "A2", "B2", "G2", "A3", "B3"}) {
    auto d = unit(type);
    WeylGroup g(d);
    int sign_sum = 0;
    for (std::size_t w = 0; w < g.order(); ++w) {
      const auto& e = g.element(w);
      sign_sum += e.sign;
      EXPECT_EQ(determinant(e.matrix), e.sign);
      QMatrix prod = QMatrix::identity(d.ambient_dim());
      for (int i : e.word) prod = prod * d.simple_reflection(static_cast<std::size_t>(i));
      EXPECT_EQ(prod, e.matrix);
      EXPECT_EQ(e.word.size(), e.length);
    }
    EXPECT_EQ(sign_sum, 0) << type;
    const auto w0 = g.longest();
    EXPECT_EQ(g.multiply(w0, w0), 0u);
    EXPECT_EQ(g.element(w0).length, d.positive_roots().size());
    for (std::size_t i = 0; i < d.rank(); ++i) {
      auto img = g.element(w0).matrix * std::span<const Scalar>(d.simple_roots()[i]);
      for (auto& x : img) x = -x;
      EXPECT_NE(std::find(d.simple_roots().begin(), d.simple_roots().end(), img), d.simple_roots().end());
    }
    std::size_t total = 0;
    for (const auto& c : g.classes()) total += c.size();
    EXPECT_EQ(total, g.order());
  }
}

TEST(WeylGroup, ParabolicFactorization) {
  for (auto type : {"A2", "B2", "G2", "A3"}) {
    WeylGroup g(unit(type));
    for (unsigned mask = 0; mask < (1u << g.rank()); ++mask) {
      const auto& p = g.parabolic(mask);
      EXPECT_EQ(p.min_reps.size() * p.members.size(), g.order());
      std::set<std::pair<std::size_t, std::size_t>> seen;
      for (std::size_t w = 0; w < g.order(); ++w) {
        const std::size_t u = p.min_reps[p.rep_of[w]];
        EXPECT_EQ(g.multiply(u, p.factor_of[w]), w);
        EXPECT_EQ(g.element(w).length, g.element(u).length + g.element(p.factor_of[w]).length);
        seen.insert({u, p.factor_of[w]});
      }
      EXPECT_EQ(seen.size(), g.order());
    }
  }
}

TEST(WeylGroup, MinimalCosetReps) {
  WeylGroup a1(unit("A1"));
  EXPECT_EQ(a1.minimal_coset_reps(1), std::vector<std::size_t>{0});
  EXPECT_EQ(a1.minimal_coset_reps(0).size(), 2u);
  WeylGroup a2(unit("A2"));
  auto reps = a2.minimal_coset_reps(1);
  ASSERT_EQ(reps.size(), 3u);
  EXPECT_EQ(a2.element(reps[0]).length, 0u);
  EXPECT_EQ(a2.element(reps[1]).length, 1u);
  EXPECT_EQ(a2.element(reps[2]).length, 2u);
  EXPECT_THROW(a2.minimal_coset_reps(4), Error);
}

TEST(WeylGroup, EllipticClassCounts) {
  EXPECT_EQ(elliptic_classes(WeylGroup(unit("A1"))).size(), 1u);
  EXPECT_EQ(elliptic_classes(WeylGroup(unit("A2"))).size(), 1u);
  EXPECT_EQ(elliptic_classes(WeylGroup(unit("B2"))).size(), 2u);
  EXPECT_EQ(elliptic_classes(WeylGroup(unit("G2"))).size(), 3u);
}

TEST(WeylGroup, ClassCountsMatchKnownTables) {
  EXPECT_EQ(WeylGroup(unit("A2")).class_count(), 3u);
  EXPECT_EQ(WeylGroup(unit("B2")).class_count(), 5u);
  EXPECT_EQ(WeylGroup(unit("G2")).class_count(), 6u);
  EXPECT_EQ(WeylGroup(unit("A3")).class_count(), 5u);
}
