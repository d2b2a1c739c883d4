#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"
#include "tvar/json_io.hpp"

using namespace tvar;
using namespace tvar::json_io;
using tvar::test::qv;
using tvar::test::uniform;

namespace {

std::string path_of(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const ParseError& e) {
    return e.path();
  }
  return "no error";
}

const char* kMinimal = R"({"version": "1", "rank": 2, "curve": "projective-line",
  "sigma": {"rays": [[1, 0], [0, 1]]},
  "divisor": [{"point": "0", "polyhedron": {"vertices": [["-1/2", "0"]]}},
              {"point": "inf", "polyhedron": {"vertices": [["1/2", "0"], ["0", "1/2"]]}}]})";

}  // namespace

TEST(ReadProblem, Minimal) {
  const Problem p = parse_problem(kMinimal);
  EXPECT_EQ(p.rank, 2u);
  EXPECT_EQ(p.curve, CurveKind::ProjectiveLine);
  const PolyhedralDivisor d = p.divisor();
  EXPECT_EQ(d.at(CurvePoint::finite(0)),
            Polyhedron::from_generators(2, {qv({"-1/2", "0"})}, Cone::orthant(2)));
  EXPECT_EQ(d.at(CurvePoint::infinity()),
            Polyhedron::from_generators(2, {qv({"1/2", "0"}), qv({"0", "1/2"})}, Cone::orthant(2)));
}

TEST(ReadProblem, FloatsAreRejectedWithTheirPath) {
  EXPECT_EQ(path_of(R"({"version": "1", "rank": 1, "curve": "affine-line", "options": {"power_e": 2.0}})"),
            "$.options.power_e");
  EXPECT_EQ(path_of(R"({"version": "1", "rank": 1, "curve": "affine-line", "sigma": {"rays": [[1]]},
                        "divisor": [{"point": "0", "polyhedron": {"vertices": [[0.5]]}}]})"),
            "$.divisor[0].polyhedron.vertices[0][0]");
}

TEST(ReadProblem, Errors) {
  EXPECT_EQ(path_of("{"), "");
  EXPECT_EQ(path_of(R"({"version": "1", "rank": 0, "curve": "affine-line"})"), "$.rank");
  EXPECT_EQ(path_of(R"({"version": "1", "rank": 1, "curve": "elliptic"})"), "$.curve");
  EXPECT_EQ(path_of(R"({"version": "1", "rank": 1, "curve": "affine-line", "extra": 1})"), "$");
  EXPECT_EQ(path_of(R"({"version": "1", "rank": 1, "curve": "affine-line", "task": "solve"})"), "$.task");
  // "inf" is not a point of the affine line.
  EXPECT_EQ(path_of(R"({"version": "1", "rank": 1, "curve": "affine-line", "sigma": {"rays": [[1]]},
                        "divisor": [{"point": "inf", "polyhedron": {"vertices": [["0"]]}}]})"),
            "$.divisor[0].point");
  EXPECT_EQ(path_of(R"({"version": "1", "rank": 1, "curve": "affine-line", "sigma": {"rays": [[1]]},
                        "divisor": [{"point": "0", "polyhedron": {"vertices": [["1/0"]]}}]})"),
            "$.divisor[0].polyhedron.vertices[0][0]");
  EXPECT_EQ(path_of(R"({"version": "1", "rank": 1, "curve": "affine-line", "sigma": {"rays": [[1]]},
                        "divisor": [{"point": "0", "polyhedron": {"vertices": [["0"]]}},
                                    {"point": "0/3", "polyhedron": {"vertices": [["1"]]}}]})"),
            "$.divisor[1].point");
  EXPECT_EQ(path_of(R"({"version": "1", "rank": 2, "curve": "affine-line",
                        "generators": [{"weight": [1], "factors": []}]})"),
            "$.generators[0].weight");
  EXPECT_EQ(path_of(R"({"version": "1", "rank": 1, "curve": "affine-line",
                        "generators": [{"weight": [1], "unit": "0"}]})"),
            "$.generators[0].unit");
}

TEST(ReadProblem, DivisorNeedsSigma) {
  const Problem p = parse_problem(R"({"version": "1", "rank": 1, "curve": "affine-line"})");
  EXPECT_THROW(p.divisor(), ParseError);
}

TEST(Write, RationalsAreStrings) {
  EXPECT_EQ(write(Rational(-3, 4)).dump(), "\"-3/4\"");
  EXPECT_EQ(write(qv({"2", "1/3"})).dump(), "[\"2\",\"1/3\"]");
  EXPECT_EQ(write(ZVec{1, -2}).dump(), "[1,-2]");
  EXPECT_EQ(write(CurvePoint::infinity()).dump(), "\"inf\"");
}

TEST(Write, FunctionRoundTrip) {
  const RationalFunction f = RationalFunction::constant(Rational(2, 3)) * RationalFunction::linear(1, 2) /
                             RationalFunction::linear(Rational(-1, 2), 1);
  EXPECT_EQ(read_function(write(f), "$"), f);
  const HomogeneousElement g{f, {3, -1}};
  EXPECT_EQ(read_element(write(g), 2, "$"), g);
}

TEST(Write, PolyhedronRoundTrip) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const std::size_t dim = 1 + t % 3;
    std::vector<QVec> pts(uniform(rng, 1, 3), QVec(dim)), rays(uniform(rng, 0, 3), QVec(dim));
    for (auto& v : pts) {
      for (auto& x : v) {
        x = Rational(uniform(rng, -5, 5), uniform(rng, 1, 4));
        x.canonicalize();
      }
    }
    for (auto& v : rays) {
      for (auto& x : v) x = uniform(rng, -2, 2);
    }
    const Polyhedron p = Polyhedron::from_generators(dim, pts, rays);
    const Json j = write(p);
    EXPECT_EQ(read_polyhedron(j, dim, std::nullopt, "$"), p);
    // Reading a written document is a fixed point of the serializer.
    EXPECT_EQ(write(read_polyhedron(Json::parse(j.dump()), dim, std::nullopt, "$")).dump(), j.dump());
  }
}

TEST(Write, DivisorKeysAreSorted) {
  const Json j = write(parse_problem(kMinimal).divisor());
  const std::string s = j.dump();
  EXPECT_LT(s.find("\"coefficients\""), s.find("\"curve\""));
  EXPECT_LT(s.find("\"curve\""), s.find("\"sigma\""));
}
