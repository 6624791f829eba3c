#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "numrad/spaces.hpp"

using namespace numrad;

namespace {

std::vector<NormedSpace> catalog() {
  return {NormedSpace::lp(2, 2.0),
          NormedSpace::lp(2, 4.0),
          NormedSpace::lp(3, 1.5),
          NormedSpace::l1(2),
          NormedSpace::l1(3),
          NormedSpace::linf(2),
          NormedSpace::linf(3),
          NormedSpace::mixed(),
          NormedSpace::lp(2, 2.0, Field::Complex),
          NormedSpace::lp(3, 3.0, Field::Complex),
          NormedSpace::l1(2, Field::Complex),
          NormedSpace::linf(2, Field::Complex)};
}

}  // namespace

TEST(Norm, CatalogValues) {
  EXPECT_NEAR(NormedSpace::lp(2, 4.0).norm(Vector{1.0, 1.0}), std::pow(2.0, 0.25), 1e-15);
  EXPECT_DOUBLE_EQ(NormedSpace::l1(2).norm(Vector{1.0, 1.0}), 2.0);
  EXPECT_DOUBLE_EQ(NormedSpace::mixed().norm(Vector{-1.0, 1.0}), 1.0);
  EXPECT_DOUBLE_EQ(NormedSpace::linf(3).norm(Vector{0.5, -2.0, 1.0}), 2.0);
  EXPECT_NEAR(NormedSpace::lp(2, 2.0, Field::Complex).norm(Vector{Scalar{3.0, 4.0}, 0.0}), 5.0, 1e-15);
}

TEST(Norm, MixedUsesEuclideanOnFirstAndThirdQuadrants) {
  const auto m = NormedSpace::mixed();
  EXPECT_NEAR(m.norm(Vector{3.0, 4.0}), 5.0, 1e-15);
  EXPECT_NEAR(m.norm(Vector{-3.0, -4.0}), 5.0, 1e-15);
  EXPECT_DOUBLE_EQ(m.norm(Vector{-3.0, 4.0}), 4.0);
  EXPECT_DOUBLE_EQ(m.norm(Vector{3.0, -1.0}), 3.0);
}

TEST(Norm, ZeroOnlyAtOrigin) {
  for (const auto& s : catalog()) {
    EXPECT_EQ(s.norm(Vector::zero(s.dim())), 0.0) << s.name();
    EXPECT_GT(s.norm(Vector::basis(s.dim(), 0)), 0.0) << s.name();
  }
}

TEST(Norm, RejectsBadInput) {
  const auto s = NormedSpace::lp(2, 4.0);
  EXPECT_THROW(s.norm(Vector{1.0, 2.0, 3.0}), UsageError);
  EXPECT_THROW(s.check_vector(Vector{Scalar{0.0, 1.0}, 0.0}.coords), UsageError);
  EXPECT_THROW(s.check_vector(Vector{std::nan(""), 0.0}.coords), UsageError);
  EXPECT_THROW(s.normalize(Vector::zero(2)), UsageError);
}

TEST(Space, ConstructionLimits) {
  EXPECT_THROW(NormedSpace::lp(1, 2.0), UsageError);
  EXPECT_THROW(NormedSpace::lp(kMaxDim + 1, 2.0), UsageError);
  EXPECT_THROW(NormedSpace::lp(2, 1.0), UsageError);
  EXPECT_THROW(NormedSpace::lp(2, std::numeric_limits<double>::infinity()), UsageError);
  EXPECT_THROW(NormedSpace::parse("mixed", 3), UsageError);
  EXPECT_THROW(NormedSpace::parse("mixed", 2, Field::Complex), UsageError);
  EXPECT_THROW(NormedSpace::parse("lp:abc", 2), UsageError);
  EXPECT_THROW(NormedSpace::parse("l3", 2), UsageError);
}

TEST(Space, NamesRoundTrip) {
  for (const auto& s : catalog()) {
    EXPECT_EQ(NormedSpace::parse(s.name(), s.dim(), s.field()), s) << s.name();
  }
  EXPECT_EQ(NormedSpace::parse("l2", 2), NormedSpace::lp(2, 2.0));
  EXPECT_EQ(NormedSpace::parse("lp:4", 2).p(), 4.0);
}

TEST(Norm, HomogeneityAndTriangle) {
  int k = 0;
  for (const auto& s : catalog()) {
    for (int i = 0; i < 1000; ++i, ++k) {
      gen::Gen g(11, static_cast<std::uint64_t>(k));
      const Coords x = g.coords(s, 3.0);
      const Coords y = g.coords(s, 3.0);
      const Scalar c = g.scalar(s.field(), 5.0);
      const double nx = s.norm(x);
      EXPECT_NEAR(s.norm(Coords(c * x)), std::abs(c) * nx, 1e-12 * (1.0 + nx)) << s.name();
      EXPECT_LE(s.norm(Coords(x + y)), nx + s.norm(y) + 1e-12) << s.name();
    }
  }
}

TEST(Duality, LpFourIsHoelderEquality) {
  const auto s = NormedSpace::lp(2, 4.0);
  const double x = std::pow(4.0, -0.25);
  const double y = std::pow(0.75, 0.25);
  const DualitySet set = duality_set(s, Vector{x, y});
  ASSERT_TRUE(set.is_singleton());
  const Functional& f = set.members()[0];
  EXPECT_NEAR(f.coords(0).real(), std::pow(4.0, -0.75), 1e-15);
  EXPECT_NEAR(f.coords(1).real(), std::pow(0.75, 0.75), 1e-15);
}

TEST(Duality, EuclideanIsSelfDual) {
  const auto s = NormedSpace::lp(3, 2.0);
  const Vector x = s.normalize(Vector{1.0, -2.0, 0.5});
  const DualitySet set = duality_set(s, x);
  ASSERT_TRUE(set.is_singleton());
  EXPECT_LT((set.members()[0].coords - x.coords).norm(), 1e-15);
}

TEST(Duality, ComplexLpConjugatesThePhase) {
  const auto s = NormedSpace::lp(2, 2.0, Field::Complex);
  const Vector x = s.normalize(Vector{Scalar{1.0, 1.0}, Scalar{0.0, -1.0}});
  const Functional f = duality_set(s, x).members()[0];
  EXPECT_NEAR(std::abs(f(x) - 1.0), 0.0, 1e-15);
  EXPECT_LT((f.coords - x.coords.conjugate()).norm(), 1e-15);
}

TEST(Duality, LOneFaceHasSignCompletions) {
  const auto s = NormedSpace::l1(2);
  const DualitySet set = duality_set(s, Vector{1.0, 0.0});
  ASSERT_FALSE(set.is_singleton());
  ASSERT_EQ(set.members().size(), 2u);
  std::vector<double> second;
  for (const auto& f : set.members()) {
    EXPECT_DOUBLE_EQ(f.coords(0).real(), 1.0);
    second.push_back(f.coords(1).real());
  }
  std::sort(second.begin(), second.end());
  EXPECT_EQ(second, (std::vector<double>{-1.0, 1.0}));

  const DualitySet corner = duality_set(NormedSpace::l1(3), Vector{0.0, -1.0, 0.0});
  EXPECT_EQ(corner.members().size(), 4u);
}

TEST(Duality, LinfArgmaxCoordinates) {
  const auto s = NormedSpace::linf(3);
  const DualitySet set = duality_set(s, Vector{1.0, -1.0, 0.5});
  ASSERT_EQ(set.members().size(), 2u);
  EXPECT_EQ(set.members()[0].coords, Functional({1.0, 0.0, 0.0}).coords);
  EXPECT_EQ(set.members()[1].coords, Functional({0.0, -1.0, 0.0}).coords);
  EXPECT_TRUE(duality_set(s, Vector{0.2, -1.0, 0.5}).is_singleton());
}

TEST(Duality, RequiresUnitVector) {
  EXPECT_THROW(duality_set(NormedSpace::lp(2, 4.0), Vector{1.0, 1.0}), UsageError);
  EXPECT_THROW(is_smooth_point(NormedSpace::l1(2), Vector{2.0, 0.0}), UsageError);
}

TEST(Duality, EveryMemberIsACertificate) {
  int k = 0;
  for (const auto& s : catalog()) {
    for (int i = 0; i < 40; ++i, ++k) {
      gen::Gen g(23, static_cast<std::uint64_t>(k));
      Vector x = g.unit(s);
      // Push some samples onto faces and corners where J(x) is not a singleton.
      if (i % 3 == 0) {
        x.coords(0) = 0.0;
        if (s.norm(x) < 1e-3) x = Vector::basis(s.dim(), 1);
        x = s.normalize(x);
      } else if (i % 3 == 1 && s.kind() == NormKind::Linf) {
        x.coords(1) = x.coords(0);
        x = s.normalize(x);
      }
      const DualitySet set = duality_set(s, x);
      for (const auto& f : set.members()) {
        EXPECT_TRUE(in_duality_set(s, x, f)) << s.name();
        EXPECT_GE(f(x).real(), 1.0 - kClosedFormTol) << s.name();
        double sup = 0.0;
        for (int j = 0; j < 1000; ++j) sup = std::max(sup, std::abs(f(g.unit(s))));
        EXPECT_LE(sup, 1.0 + kClosedFormTol) << s.name();
      }
    }
  }
}

TEST(Duality, ExtremePointsDominateConvexCombinations) {
  int k = 0;
  for (const auto& s : {NormedSpace::l1(3), NormedSpace::linf(3), NormedSpace::l1(2)}) {
    for (int i = 0; i < 20; ++i, ++k) {
      gen::Gen g(31, static_cast<std::uint64_t>(k));
      Vector x = g.unit(s);
      if (s.kind() == NormKind::L1) {
        x.coords(1) = 0.0;
      } else {
        // Two tied maximal coordinates; the third stays strictly below them.
        if (std::abs(x.coords(0)) < 0.5) x.coords(0) = 1.0;
        x.coords(1) = -x.coords(0);
        x.coords(2) = 0.2 * x.coords(2);
      }
      x = s.normalize(x);
      const DualitySet set = duality_set(s, x);
      const auto members = set.members();
      ASSERT_GE(members.size(), 2u) << s.name();
      const Coords z = g.coords(s);
      double extreme = 0.0;
      for (const auto& f : members) extreme = std::max(extreme, std::abs(f.apply(z)));
      double mixed = 0.0;
      for (int j = 0; j < 1000; ++j) {
        Coords a = Coords::Zero(s.dim());
        double total = 0.0;
        for (const auto& f : members) {
          const double w = g.real(0.0, 1.0);
          a += w * f.coords;
          total += w;
        }
        mixed = std::max(mixed, std::abs(Functional(Coords(a / total)).apply(z)));
      }
      EXPECT_LE(mixed, extreme + kClosedFormTol) << s.name();
      EXPECT_TRUE(in_duality_set(s, x, members[0])) << s.name();
    }
  }
}

TEST(Duality, SupportingFunctionalIsExactMaximizer) {
  int k = 0;
  for (const auto& s : catalog()) {
    for (int i = 0; i < 30; ++i, ++k) {
      gen::Gen g(41, static_cast<std::uint64_t>(k));
      Vector x = g.unit(s);
      if (i % 2 == 0) {
        x.coords(0) = 0.0;
        if (s.norm(x) < 1e-3) x = Vector::basis(s.dim(), 1);
        x = s.normalize(x);
      }
      const Coords w = g.coords(s);
      const Support sup = supporting_functional(s, x, w);
      EXPECT_TRUE(in_duality_set(s, x, sup.xstar)) << s.name();
      EXPECT_NEAR(std::abs(sup.xstar.apply(w) - sup.value), 0.0, 1e-14);
      for (const auto& f : duality_set(s, x).members()) {
        EXPECT_LE(std::abs(f.apply(w)), std::abs(sup.value) + 1e-12) << s.name();
      }
    }
  }
}

TEST(Smooth, CatalogPoints) {
  EXPECT_TRUE(is_smooth_point(NormedSpace::lp(2, 2.0), Vector{1.0, 0.0}));
  EXPECT_FALSE(is_smooth_point(NormedSpace::l1(2), Vector{1.0, 0.0}));
  EXPECT_TRUE(is_smooth_point(NormedSpace::l1(2), Vector{0.5, -0.5}));
  EXPECT_FALSE(is_smooth_point(NormedSpace::mixed(), Vector{-1.0, 1.0}));
  EXPECT_TRUE(is_smooth_point(NormedSpace::mixed(), Vector{1.0, 0.0}));
  EXPECT_TRUE(is_smooth_point(NormedSpace::mixed(), Vector{-1.0, 0.5}));
  EXPECT_FALSE(is_smooth_point(NormedSpace::linf(2), Vector{1.0, 1.0}));
}

TEST(Rotund, CatalogPoints) {
  EXPECT_TRUE(is_rotund_point(NormedSpace::lp(2, 4.0), NormedSpace::lp(2, 4.0).normalize(Vector{1.0, 2.0})));
  EXPECT_FALSE(is_rotund_point(NormedSpace::linf(2), Vector{1.0, 0.5}));
  EXPECT_FALSE(is_rotund_point(NormedSpace::mixed(), Vector{-1.0, 1.0}));
  EXPECT_FALSE(is_rotund_point(NormedSpace::l1(2), Vector{0.5, 0.5}));
  // Interior of the euclidean arc of the mixed norm is strictly convex.
  EXPECT_TRUE(is_rotund_point(NormedSpace::mixed(), NormedSpace::mixed().normalize(Vector{1.0, 1.0})));
  // Corners of polyhedral balls are endpoints of edges, classified not rotund.
  EXPECT_FALSE(is_rotund_point(NormedSpace::l1(2), Vector{1.0, 0.0}));
  EXPECT_THROW(is_rotund_point(NormedSpace::lp(2, 4.0), Vector{1.0, 1.0}), UsageError);
}

TEST(Rotund, EverySmoothOrRotundOnMixedNorm) {
  const auto s = NormedSpace::mixed();
  for (int k = 0; k < 64; ++k) {
    const double th = 2.0 * std::numbers::pi * (k + 0.5) / 64;
    const Vector x = s.normalize(Vector{std::cos(th), std::sin(th)});
    EXPECT_TRUE(is_smooth_point(s, x) || is_rotund_point(s, x)) << th;
  }
}

TEST(Annihilator, SmoothPointGivesKernelDirection) {
  for (const auto& s : {NormedSpace::lp(2, 4.0), NormedSpace::lp(2, 2.0), NormedSpace::lp(2, 3.0)}) {
    const Vector x = s.normalize(Vector{0.3, 0.8});
    const Vector y = annihilated_direction(s, x);
    const Functional f = duality_set(s, x).members()[0];
    EXPECT_NEAR(std::abs(f(y)), 0.0, 1e-14);
    EXPECT_NEAR(s.norm(y), 1.0, 1e-14);
  }
  EXPECT_THROW(annihilated_direction(NormedSpace::l1(2), Vector{1.0, 0.0}), UsageError);
}
