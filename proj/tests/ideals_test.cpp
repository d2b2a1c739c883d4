#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"
#include "tvar/ideals.hpp"

using namespace tvar;
using tvar::test::for_each_in_box;
using tvar::test::qv;
using tvar::test::uniform;

namespace {

const CurveKind kP1 = CurveKind::ProjectiveLine;
const CurveKind kA1 = CurveKind::AffineLine;

CurvePoint pt(long a) { return CurvePoint::finite(a); }
CurvePoint inf() { return CurvePoint::infinity(); }
RationalFunction z(long e = 1) { return RationalFunction::linear(0, e); }
RationalFunction zm1(long e = 1) { return RationalFunction::linear(1, e); }
RationalFunction one() { return RationalFunction(); }

Polyhedron shifted(const Cone& s, const QVec& v) { return Polyhedron::from_generators(s.ambient_rank(), {v}, s); }

MultigradedAlgebra elliptic_surface() {
  const Cone s = Cone::orthant(2);
  PolyhedralDivisor d(kP1, s);
  d.set(pt(0), shifted(s, qv({"-1/2", "0"})));
  d.set(pt(1), shifted(s, qv({"1/2", "0"})));
  d.set(inf(), Polyhedron::from_generators(2, {qv({"1/2", "0"}), qv({"0", "1/2"})}, s));
  return MultigradedAlgebra(d);
}

// (t2, t3, t4)
HomogeneousIdeal elliptic_ideal() {
  return HomogeneousIdeal(elliptic_surface(), {{one(), {0, 1}}, {z(), {2, 2}}, {z(2) / zm1(), {3, 2}}});
}

Cone elliptic_ideal_cone() { return Cone::from_generators(3, std::vector<ZVec>{{0, 1, 1}, {1, 0, 0}, {0, 1, 0}}); }

MultigradedAlgebra zero_affine(std::size_t n) { return MultigradedAlgebra(PolyhedralDivisor(kA1, Cone::orthant(n))); }

MultigradedAlgebra random_algebra(std::mt19937_64& rng, CurveKind kind) {
  while (true) {
    const Cone sigma = uniform(rng, 0, 1) ? Cone::orthant(2) : Cone::from_generators(2, std::vector<ZVec>{{1, 0}, {1, 3}});
    PolyhedralDivisor d(kind, sigma);
    std::vector<CurvePoint> pts{pt(0), pt(1)};
    if (kind == kP1) pts.push_back(inf());
    for (const auto& p : pts) {
      std::vector<QVec> verts;
      for (long i = uniform(rng, 1, 2); i > 0; --i) {
        QVec v(2);
        for (auto& x : v) {
          x = Rational(uniform(rng, -2, 2), uniform(rng, 1, 2));
          x.canonicalize();
        }
        verts.push_back(v);
      }
      d.set(p, Polyhedron::from_generators(2, verts, sigma));
    }
    if (is_proper(d).proper) return MultigradedAlgebra(d);
  }
}

HomogeneousIdeal random_ideal(std::mt19937_64& rng, const MultigradedAlgebra& a) {
  const Cone dual = a.divisor().sigma().dual();
  std::vector<HomogeneousElement> gens;
  while (gens.size() < static_cast<std::size_t>(uniform(rng, 1, 3))) {
    ZVec m{uniform(rng, -1, 4), uniform(rng, 0, 4)};
    if (!dual.contains(m)) continue;
    const SectionSpace s = graded_piece(a, m);
    if (s.empty()) continue;
    RationalFunction f = s.basis[uniform(rng, 0, static_cast<long>(s.basis.size()) - 1)];
    if (a.divisor().kind() == kA1) f = f * RationalFunction::linear(uniform(rng, 0, 2), uniform(rng, 0, 1));
    gens.push_back({f, m});
  }
  return HomogeneousIdeal(a, gens);
}

ReesData translated(ReesData r, const CurvePoint& z, long dp) {
  QVec shift(r.rees_divisor.rank(), 0);
  shift.back() = dp;
  r.rees_divisor.set(z, translate(r.rees_divisor.at(z), shift));
  return r;
}

// On sampled weights: I_[0] = A and I_[e] inside A for e = 1, 2.
bool pieces_form_ideals(const ReesData& r, const MultigradedAlgebra& a) {
  const Cone dual = a.divisor().sigma().dual();
  bool ok = true;
  for_each_in_box(ZVec{-2, -1}, ZVec{6, 6}, [&](const ZVec& m) {
    if (!ok || !dual.contains(m)) return;
    for (long e = 0; e <= 2; ++e) {
      if (!dilate(r.newton, e).contains(m)) continue;
      ZVec me = m;
      me.push_back(e);
      const QDivisor tilde = floor_divisor(evaluate(r.rees_divisor, me));
      const QDivisor base = floor_divisor(evaluate(a.divisor(), m));
      const QDivisor diff = base - tilde;
      if (e == 0 && diff != QDivisor(diff.kind())) ok = false;
      for (const auto& [p, c] : diff.coefficients()) {
        if (c < 0) ok = false;
      }
    }
  });
  return ok;
}

}  // namespace

TEST(NewtonPolyhedron, Examples) {
  HomogeneousIdeal intro(zero_affine(2), {{one(), {3, 0}}, {one(), {0, 3}}});
  EXPECT_EQ(newton_polyhedron(intro), Polyhedron::from_generators(2, {qv({3, 0}), qv({0, 3})}, Cone::orthant(2)));
  EXPECT_EQ(newton_polyhedron(elliptic_ideal()), shifted(Cone::orthant(2), qv({0, 1})));
  HomogeneousIdeal principal(zero_affine(2), {{z(), {1, 2}}});
  EXPECT_EQ(newton_polyhedron(principal), shifted(Cone::orthant(2), qv({1, 2})));
}

TEST(HomogeneousIdeal, GeneratorsMustLieInTheAlgebra) {
  try {
    HomogeneousIdeal bad(elliptic_surface(), {{z(2), {2, 0}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GeneratorNotInAlgebra);
  }
}

TEST(ReesWeightCone, Examples) {
  EXPECT_EQ(rees_weight_cone(shifted(Cone::orthant(2), qv({0, 1}))), elliptic_ideal_cone());
  EXPECT_EQ(rees_weight_cone(Polyhedron::from_cone(Cone::orthant(2))), Cone::orthant(3));
  EXPECT_EQ(rees_weight_cone(Polyhedron::from_generators(2, {qv({3, 0}), qv({0, 3})}, Cone::orthant(2))),
            Cone::from_generators(3, std::vector<ZVec>{{3, 0, 1}, {0, 3, 1}, {1, 0, 0}, {0, 1, 0}}));
}

TEST(IdealClosure, EllipticIdeal) {
  const ReesData r = ideal_closure(elliptic_ideal());
  EXPECT_EQ(r.rees_cone, elliptic_ideal_cone());
  const Cone tail = elliptic_ideal_cone().dual();
  PolyhedralDivisor expect(kP1, tail);
  expect.set(pt(0), shifted(tail, qv({"-1/2", "0", "0"})));
  expect.set(pt(1), shifted(tail, qv({"1/2", "0", "0"})));
  expect.set(inf(), Polyhedron::from_generators(3, {qv({"0", "1", "-1"}), qv({"1/2", "0", "0"}), qv({"0", "1/2", "0"})},
                                                tail));
  EXPECT_EQ(r.rees_divisor, expect);

  const SectionSpace s = closure_graded_piece(r, ZVec{0, 1}, 1);
  EXPECT_EQ(s.basis.size(), 1u);
  EXPECT_TRUE(verify_correspondence(r, elliptic_surface()).ok());
}

TEST(IdealClosure, UnitIdeal) {
  MultigradedAlgebra a = elliptic_surface();
  const ReesData r = ideal_closure(HomogeneousIdeal(a, {{one(), {0, 0}}}));
  for (const auto& p : {pt(0), pt(1), inf()}) {
    const Polyhedron delta = a.divisor().at(p);
    std::vector<QVec> normals;
    std::vector<Rational> bounds;
    for (const auto& in : delta.inequalities()) {
      QVec n = to_q(in.normal);
      n.push_back(0);
      normals.push_back(n);
      bounds.push_back(in.bound);
    }
    normals.push_back(qv({0, 0, 1}));
    bounds.push_back(0);
    EXPECT_EQ(r.rees_divisor.at(p), Polyhedron::from_inequalities(3, normals, bounds));
  }
  for_each_in_box(ZVec{0, 0}, ZVec{4, 4}, [&](const ZVec& m) {
    EXPECT_EQ(closure_graded_piece(r, m, 1).basis, graded_piece(a, m).basis);
  });
}

TEST(IdealClosure, MonomialIdealOverZeroDivisor) {
  HomogeneousIdeal i(zero_affine(2), {{one(), {3, 0}}, {one(), {0, 3}}});
  const ReesData r = ideal_closure(i);
  EXPECT_TRUE(r.rees_divisor.support().empty());
}

TEST(ClosureGradedPiece, AffineRankOne) {
  // I = (x0^2 chi^0, chi^1) over the zero divisor, sigma = Q>=0.
  HomogeneousIdeal i(zero_affine(1), {{z(2), {0}}, {one(), {1}}});
  const ReesData r = ideal_closure(i);
  EXPECT_EQ(closure_graded_piece(r, ZVec{0}, 1).generator, z(2));
  EXPECT_EQ(closure_graded_piece(r, ZVec{1}, 1).generator, one());
  // D~_0 = {v >= 0, p >= -2, v + p >= 0}.
  EXPECT_EQ(r.rees_divisor.at(pt(0)),
            Polyhedron::from_inequalities(2, {qv({1, 0}), qv({0, 1}), qv({1, 1})}, {0, -2, 0}));
  try {
    closure_graded_piece(r, ZVec{-1}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WeightOutsideDilatedNewton);
  }
}

TEST(MonomialClosure, Examples) {
  EXPECT_EQ(monomial_closure({{3, 0}, {0, 3}}, Cone::orthant(2)),
            (std::vector<ZVec>{{0, 3}, {1, 2}, {2, 1}, {3, 0}}));
  EXPECT_EQ(monomial_closure({{2, 5}}, Cone::orthant(2)), (std::vector<ZVec>{{2, 5}}));
  const std::vector<ZVec> rem = monomial_closure({{2, 0, 0}, {0, 3, 0}, {0, 0, 7}}, Cone::orthant(3));
  EXPECT_EQ(rem, module_generators(Polyhedron::from_generators(3, {qv({2, 0, 0}), qv({0, 3, 0}), qv({0, 0, 7})},
                                                               Cone::orthant(3))));
  EXPECT_TRUE(std::find(rem.begin(), rem.end(), ZVec{1, 1, 2}) != rem.end());
  EXPECT_FALSE(std::find(rem.begin(), rem.end(), ZVec{1, 1, 1}) != rem.end());
  EXPECT_THROW(monomial_closure({{1, 0}}, Cone::from_generators(2, std::vector<ZVec>{{1, 0}}, std::vector<ZVec>{{0, 1}})),
               Error);
}

TEST(VerifyCorrespondence, TranslationBreaksTheProjectionCondition) {
  const ReesData r = translated(ideal_closure(elliptic_ideal()), pt(0), 1);
  const VerificationReport rep = verify_correspondence(r, elliptic_surface());
  ASSERT_NE(rep.find("projection"), nullptr);
  EXPECT_FALSE(rep.find("projection")->passed);
}

TEST(VerifyCorrespondence, AffineFacetWithNonIntegralWeight) {
  // P = [1, inf) in rank 1. Facet normals of an omega~-dual polyhedron lie in
  // omega~, whose level-1 slice is P, so a bad facet has a non-integral weight:
  // 3v + 2p >= -3, i.e. m = 3/2.
  HomogeneousIdeal i(zero_affine(1), {{one(), {1}}});
  ReesData r = ideal_closure(i);
  EXPECT_TRUE(verify_correspondence(r, i.ambient()).ok());
  r.rees_divisor.set(pt(0), Polyhedron::from_inequalities(2, {qv({1, 0}), qv({1, 1}), qv({3, 2})}, {0, -2, -3}));
  const VerificationReport rep = verify_correspondence(r, i.ambient());
  EXPECT_TRUE(rep.find("projection")->passed);
  EXPECT_FALSE(rep.find("facets_affine")->passed);
}

TEST(Properties, ClosureContainsTheIdeal) {
  std::mt19937_64 rng(103);
  for (int iter = 0; iter < 60; ++iter) {
    MultigradedAlgebra a = random_algebra(rng, iter % 2 ? kA1 : kP1);
    HomogeneousIdeal i = random_ideal(rng, a);
    const ReesData r = ideal_closure(i);
    for (const auto& g : i.generators()) EXPECT_TRUE(closure_graded_piece(r, g.weight, 1).contains(g.function));
    const VerificationReport rep = verify_correspondence(r, a);
    for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  }
}

TEST(Properties, ClosingTheClosureChangesNothing) {
  std::mt19937_64 rng(107);
  for (int iter = 0; iter < 40; ++iter) {
    MultigradedAlgebra a = random_algebra(rng, iter % 2 ? kA1 : kP1);
    const ReesData r = ideal_closure(random_ideal(rng, a));
    const ReesData again = ideal_closure(HomogeneousIdeal(a, closure_generators(r)));
    EXPECT_EQ(again.newton, r.newton);
    EXPECT_EQ(again.rees_divisor, r.rees_divisor);
    // Closure of I^e from I and from its closure, e = 1, 2.
    for_each_in_box(ZVec{-1, 0}, ZVec{5, 5}, [&](const ZVec& m) {
      for (long e = 1; e <= 2; ++e) {
        if (!dilate(r.newton, e).contains(m)) continue;
        EXPECT_EQ(closure_graded_piece(r, m, e).basis, closure_graded_piece(again, m, e).basis);
      }
    });
  }
}

TEST(Properties, ProjectionConditionMatchesIdealPieces) {
  std::mt19937_64 rng(109);
  int broken = 0;
  for (int iter = 0; iter < 40; ++iter) {
    MultigradedAlgebra a = random_algebra(rng, iter % 2 ? kA1 : kP1);
    const ReesData r = ideal_closure(random_ideal(rng, a));
    EXPECT_TRUE(verify_correspondence(r, a).find("projection")->passed);
    EXPECT_TRUE(pieces_form_ideals(r, a));
    // Shifting up keeps the projection; it breaks the condition once a vertex reaches p > 0.
    const ReesData bad = translated(r, pt(uniform(rng, 0, 1)), uniform(rng, 1, 2));
    const bool cond = verify_correspondence(bad, a).find("projection")->passed;
    EXPECT_EQ(pieces_form_ideals(bad, a), cond);
    broken += !cond;
  }
  EXPECT_GT(broken, 20);
}

TEST(Properties, MonomialIdealsOverTheZeroDivisor) {
  std::mt19937_64 rng(113);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<ZVec> exps;
    std::vector<HomogeneousElement> gens;
    for (long k = uniform(rng, 1, 3); k > 0; --k) {
      ZVec m{uniform(rng, 0, 4), uniform(rng, 0, 4)};
      exps.push_back(m);
      gens.push_back({one(), m});
    }
    const ReesData r = ideal_closure(HomogeneousIdeal(zero_affine(2), gens));
    const std::vector<ZVec> mono = monomial_closure(exps, Cone::orthant(2));
    for_each_in_box(ZVec{0, 0}, ZVec{6, 6}, [&](const ZVec& m) {
      const bool in_p = r.newton.contains(m);
      // m lies in P iff it dominates some minimal generator.
      bool dominated = false;
      for (const auto& g : mono) dominated = dominated || (m[0] >= g[0] && m[1] >= g[1]);
      EXPECT_EQ(in_p, dominated);
      if (in_p) {
        EXPECT_EQ(closure_graded_piece(r, m, 1).generator, one());
      }
    });
  }
}
