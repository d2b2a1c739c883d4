#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"
#include "tvar/polyhedron.hpp"

using namespace tvar;
using tvar::test::for_each_in_box;
using tvar::test::q;
using tvar::test::qv;

namespace {

Cone quadrant() { return Cone::orthant(2); }

Polyhedron point_plus(const QVec& p, const Cone& c) { return Polyhedron::from_generators(c.ambient_rank(), {p}, c); }

}  // namespace

TEST(DualCone, FirstQuadrantIsSelfDual) {
  Cone c = quadrant();
  EXPECT_EQ(c.dual().rays(), (std::vector<ZVec>{{0, 1}, {1, 0}}));
  EXPECT_EQ(c.dual(), c);
}

TEST(DualCone, SigmaThreeTwo) {
  Cone c = Cone::from_generators(2, std::vector<ZVec>{{1, 0}, {1, 6}});
  Cone d = c.dual();
  EXPECT_EQ(d.rays(), (std::vector<ZVec>{{0, 1}, {6, -1}}));
  // Pairings: all >= 0, each dual ray tight on exactly one primal ray.
  for (const auto& m : d.rays()) {
    int tight = 0;
    for (const auto& v : c.rays()) {
      EXPECT_GE(dot(m, v), 0);
      tight += dot(m, v) == 0;
    }
    EXPECT_EQ(tight, 1);
  }
}

TEST(DualCone, WholePlaneDualIsZero) {
  Cone plane = Cone::from_generators(2, std::vector<ZVec>{{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  EXPECT_FALSE(plane.pointed());
  EXPECT_EQ(plane.lineality().size(), 2u);
  EXPECT_TRUE(plane.dual().is_zero_cone());
  EXPECT_EQ(plane.dual(), Cone::zero(2));
}

TEST(DdConvert, DropsRedundantInequality) {
  Cone c = dd_convert({ConeInput::Kind::Inequalities, 2, {qv({1, 0}), qv({0, 1}), qv({1, 1})}});
  EXPECT_EQ(c.rays(), (std::vector<ZVec>{{0, 1}, {1, 0}}));
  EXPECT_EQ(c.facets(), (std::vector<ZVec>{{0, 1}, {1, 0}}));
}

TEST(DdConvert, RaysArePrimitive) {
  Cone c = dd_convert({ConeInput::Kind::Rays, 2, {qv({2, 0})}});
  EXPECT_EQ(c.rays(), (std::vector<ZVec>{{1, 0}}));
  EXPECT_FALSE(c.full_dimensional());
}

TEST(DdConvert, DualOfSigmaThreeTwo) {
  // Facets of cone((1,0),(1,6)) are y >= 0 and 6x - y >= 0.
  Cone c = dd_convert({ConeInput::Kind::Inequalities, 2, {qv({0, 1}), qv({6, -1})}});
  EXPECT_EQ(c.rays(), (std::vector<ZVec>{{1, 0}, {1, 6}}));
  // With x >= 0 in place of y >= 0 the region contains (0,-1).
  Cone d = dd_convert({ConeInput::Kind::Inequalities, 2, {qv({1, 0}), qv({6, -1})}});
  EXPECT_EQ(d.rays(), (std::vector<ZVec>{{0, -1}, {1, 6}}));
}

TEST(DdConvert, RankZeroIsAnError) {
  try {
    dd_convert({ConeInput::Kind::Inequalities, 0, {}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyInput);
  }
}

TEST(DdConvert, HalfPlaneKeepsLineality) {
  Cone c = Cone::from_inequalities(2, std::vector<ZVec>{{1, 1}});
  EXPECT_EQ(c.lineality(), (std::vector<ZVec>{{1, -1}}));
  EXPECT_EQ(c.rays(), (std::vector<ZVec>{{1, 1}}));
  EXPECT_EQ(c.dual().rays(), (std::vector<ZVec>{{1, 1}}));
}

TEST(MinkowskiSum, NeutralElement) {
  Cone s = quadrant();
  Polyhedron d = Polyhedron::from_generators(2, {qv({"1/2", "0"}), qv({"0", "1/2"})}, s);
  EXPECT_EQ(d + Polyhedron::from_cone(s), d);
}

TEST(MinkowskiSum, SegmentPlusItself) {
  Cone s = quadrant();
  Polyhedron d = Polyhedron::from_generators(2, {qv({1, 0}), qv({0, 1})}, s);
  Polyhedron sum = d + d;
  EXPECT_EQ(sum.vertices(), (std::vector<QVec>{qv({0, 2}), qv({2, 0})}));
  EXPECT_EQ(sum, Polyhedron::from_generators(2, {qv({2, 0}), qv({1, 1}), qv({0, 2})}, s));
}

TEST(MinkowskiSum, PointTranslatesAdd) {
  Cone s = quadrant();
  Polyhedron sum = point_plus(qv({"1/3", "2"}), s) + point_plus(qv({"-1", "1/2"}), s);
  EXPECT_EQ(sum, point_plus(qv({"-2/3", "5/2"}), s));
}

TEST(MinkowskiSum, RankMismatch) {
  EXPECT_THROW(Polyhedron::from_cone(quadrant()) + Polyhedron::from_cone(Cone::orthant(3)), Error);
}

TEST(SupportFunction, TightVertexOfExample) {
  Polyhedron d = point_plus(qv({"-1/2", "0"}), quadrant());
  EXPECT_EQ(support_function(d, ZVec{2, 0}), -1);
}

TEST(SupportFunction, SegmentMinimum) {
  Polyhedron d = Polyhedron::from_generators(2, {qv({"1/2", "0"}), qv({"0", "1/2"})}, quadrant());
  EXPECT_EQ(support_function(d, ZVec{2, 2}), 1);
}

TEST(SupportFunction, ConeIsZero) {
  Polyhedron s = Polyhedron::from_cone(Cone::from_generators(2, std::vector<ZVec>{{1, 0}, {1, 6}}));
  for (ZVec m : {ZVec{0, 1}, ZVec{6, -1}, ZVec{6, 3}}) EXPECT_EQ(support_function(s, m), 0);
}

TEST(SupportFunction, UnboundedOutsideDual) {
  Polyhedron s = Polyhedron::from_cone(quadrant());
  try {
    support_function(s, ZVec{-1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unbounded);
  }
}

TEST(PolyhedronFromInequalities, DeltaZeroOfExample) {
  std::vector<Inequality> in = {{{2, 0}, -1}, {{0, 1}, 0}, {{2, 2}, -1}, {{3, 2}, -2}};
  Polyhedron p = polyhedron_from_inequalities(in, quadrant());
  EXPECT_EQ(p, point_plus(qv({"-1/2", "0"}), quadrant()));
  EXPECT_EQ(p.vertices(), (std::vector<QVec>{qv({"-1/2", "0"})}));
}

TEST(PolyhedronFromInequalities, DeltaInfinityOfExample) {
  std::vector<Inequality> in = {{{2, 0}, 0}, {{0, 1}, 0}, {{2, 2}, 1}, {{3, 2}, 1}};
  Polyhedron p = polyhedron_from_inequalities(in, quadrant());
  EXPECT_EQ(p, Polyhedron::from_generators(2, {qv({"1/2", "0"}), qv({"0", "1/2"})}, quadrant()));
}

TEST(PolyhedronFromInequalities, SigmaItself) {
  std::vector<Inequality> in = {{{1, 0}, 0}, {{0, 1}, 0}};
  EXPECT_EQ(polyhedron_from_inequalities(in, quadrant()), Polyhedron::from_cone(quadrant()));
}

TEST(PolyhedronFromInequalities, Errors) {
  std::vector<Inequality> empty = {{{1, 0}, 1}, {{-1, 0}, 0}, {{0, 1}, 0}};
  try {
    polyhedron_from_inequalities(empty, quadrant());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyPolyhedron);
  }
  std::vector<Inequality> half = {{{1, 0}, 0}};
  try {
    polyhedron_from_inequalities(half, quadrant());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RecessionMismatch);
  }
}

TEST(Dilate, ZeroGivesRecessionCone) {
  Polyhedron p = Polyhedron::from_generators(2, {qv({3, 0}), qv({0, 3})}, quadrant());
  EXPECT_EQ(dilate(p, 0), Polyhedron::from_cone(quadrant()));
  EXPECT_EQ(dilate(p, 1), p);
}

TEST(Dilate, TwoEqualsMinkowskiSquare) {
  Polyhedron p = Polyhedron::from_generators(2, {qv({3, 0}), qv({0, 3})}, quadrant());
  Polyhedron expect = Polyhedron::from_generators(2, {qv({6, 0}), qv({3, 3}), qv({0, 6})}, quadrant());
  EXPECT_EQ(dilate(p, 2), expect);
  EXPECT_EQ(p + p, expect);
}

TEST(PolyhedraEqual, Examples) {
  Polyhedron a = point_plus(qv({"1/2", "0"}), quadrant());
  Polyhedron b = point_plus(qv({"0", "1/2"}), quadrant());
  EXPECT_TRUE(polyhedra_equal(a, a));
  EXPECT_FALSE(polyhedra_equal(a, b));
  Polyhedron redundant = Polyhedron::from_generators(2, {qv({0, 0}), qv({1, 0})}, quadrant());
  EXPECT_TRUE(polyhedra_equal(redundant, Polyhedron::from_cone(quadrant())));
  EXPECT_EQ(redundant.vertices(), (std::vector<QVec>{qv({0, 0})}));
}

TEST(Polyhedron, LowerDimensionalSegment) {
  Polyhedron seg = Polyhedron::from_generators(2, {qv({0, 0}), qv({2, 2})});
  EXPECT_TRUE(seg.bounded());
  EXPECT_EQ(seg.vertices().size(), 2u);
  EXPECT_TRUE(seg.contains(qv({1, 1})));
  EXPECT_FALSE(seg.contains(qv({1, 0})));
  EXPECT_EQ(seg.equations().size(), 1u);
}

// ---------------------------------------------------------------------------
// Randomized properties.

namespace {

std::vector<ZVec> random_vectors(std::mt19937_64& rng, std::size_t dim, std::size_t count, long lo, long hi) {
  std::vector<ZVec> out;
  for (std::size_t i = 0; i < count; ++i) {
    ZVec v(dim);
    for (auto& x : v) x = tvar::test::uniform(rng, lo, hi);
    out.push_back(v);
  }
  return out;
}

// Pointed full-dimensional cone: orthant-like generators with a random skew.
Cone random_pointed_cone(std::mt19937_64& rng, std::size_t dim) {
  while (true) {
    auto gens = random_vectors(rng, dim, dim + tvar::test::uniform(rng, 0, 2), 0, 3);
    Cone c = Cone::from_generators(dim, gens);
    if (c.pointed() && c.full_dimensional()) return c;
  }
}

Polyhedron random_sigma_polyhedron(std::mt19937_64& rng, const Cone& sigma) {
  std::vector<QVec> pts;
  const std::size_t k = 1 + tvar::test::uniform(rng, 0, 2);
  for (std::size_t i = 0; i < k; ++i) {
    QVec v(sigma.ambient_rank());
    for (auto& x : v) x = Rational(tvar::test::uniform(rng, -4, 4), tvar::test::uniform(rng, 1, 3));
    for (auto& x : v) x.canonicalize();
    pts.push_back(v);
  }
  return Polyhedron::from_generators(sigma.ambient_rank(), pts, sigma);
}

}  // namespace

TEST(Properties, DoubleDescriptionRoundtripAgainstPointMembership) {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t dim = 1 + iter % 4;
    auto ineqs = random_vectors(rng, dim, 1 + tvar::test::uniform(rng, 0, 4), -3, 3);
    Cone c = Cone::from_inequalities(dim, ineqs);
    // H -> V -> H and V -> H -> V are identities on canonical forms.
    EXPECT_EQ(Cone::from_generators(dim, c.rays(), c.lineality()), c);
    EXPECT_EQ(Cone::from_inequalities(dim, c.facets(), c.equations()), c);
    // Oracle: point membership computed from the raw inequalities.
    ZVec lo(dim, -2), hi(dim, 2);
    for_each_in_box(lo, hi, [&](const ZVec& x) {
      bool raw = true;
      for (const auto& a : ineqs) raw = raw && dot(a, x) >= 0;
      EXPECT_EQ(c.contains(x), raw);
    });
    for (const auto& r : c.rays()) {
      for (const auto& a : ineqs) EXPECT_GE(dot(a, r), 0);
    }
  }
}

TEST(Properties, DualIsInvolution) {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t dim = 1 + iter % 4;
    auto gens = random_vectors(rng, dim, 1 + tvar::test::uniform(rng, 0, 4), -3, 3);
    Cone c = Cone::from_generators(dim, gens);
    EXPECT_EQ(c.dual().dual(), c);
    // Recompute the dual from scratch through the inequality route.
    EXPECT_EQ(Cone::from_inequalities(dim, gens), c.dual());
  }
}

TEST(Properties, SubadditivityAndAdditivityOfSupportFunctions) {
  std::mt19937_64 rng(13);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t dim = 1 + iter % 3;
    Cone sigma = random_pointed_cone(rng, dim);
    Polyhedron a = random_sigma_polyhedron(rng, sigma);
    Polyhedron b = random_sigma_polyhedron(rng, sigma);
    Polyhedron s = a + b;
    Cone dual = sigma.dual();
    std::vector<ZVec> ms;
    for_each_in_box(ZVec(dim, -3), ZVec(dim, 3), [&](const ZVec& m) {
      if (dual.contains(m)) ms.push_back(m);
    });
    for (const auto& m : ms) {
      EXPECT_EQ(support_function(s, m), support_function(a, m) + support_function(b, m));
      for (std::size_t j = 0; j < ms.size(); j += 1 + ms.size() / 12) {
        const ZVec& m2 = ms[j];
        EXPECT_LE(support_function(a, m) + support_function(a, m2), support_function(a, add(m, m2)));
      }
    }
  }
}

TEST(Properties, EqualityAgreesWithSupportFunctionsOnFacetNormals) {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t dim = 1 + iter % 3;
    Cone sigma = random_pointed_cone(rng, dim);
    Polyhedron a = random_sigma_polyhedron(rng, sigma);
    // Half the time compare against a re-generated copy with a redundant point added.
    Polyhedron b = random_sigma_polyhedron(rng, sigma);
    if (iter % 2 == 0) {
      std::vector<QVec> pts = a.vertices();
      QVec extra = pts.front();
      for (const auto& r : sigma.rays()) extra = add(extra, to_q(r));
      pts.push_back(extra);
      b = Polyhedron::from_generators(dim, pts, sigma);
    }
    // A sigma-polyhedron is the intersection of its supporting half-spaces, so the
    // support functions agree everywhere iff they agree on the facet normals of both.
    bool same_support = true;
    std::vector<ZVec> normals;
    for (const auto& in : a.inequalities()) normals.push_back(in.normal);
    for (const auto& in : b.inequalities()) normals.push_back(in.normal);
    for (const auto& m : normals) {
      if (support_function(a, m) != support_function(b, m)) same_support = false;
    }
    EXPECT_EQ(polyhedra_equal(a, b), same_support) << "iter " << iter << " dim " << dim;
    if (iter % 2 == 0) {
      EXPECT_TRUE(polyhedra_equal(a, b));
    }
  }
}
