#include <cstdint>
#include <vector>

#include "doctest.h"
#include "ultra/errors.hpp"
#include "ultra/spaces.hpp"

using ultra::BaireSeq;
using ultra::Dendrogram;
using ultra::PAdicModel;
using ultra::Rational;
using ultra::Space;

namespace {
Rational q(const char* s) { return Rational::parse(s); }
}  // namespace

TEST_CASE("p-adic model construction") {
  for (long bad : {-3L, 0L, 1L, 4L, 9L, 15L}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(PAdicModel::create(bad, 2), ultra::ArgError);
  }
  CHECK_THROWS_AS(PAdicModel::create(3, 0), ultra::ArgError);
  const PAdicModel m = PAdicModel::create(3, 4);
  CHECK(m.p() == 3);
  CHECK(m.precision() == 4);
  CHECK(m.modulus() == 81);
  CHECK(m.in_carrier(0));
  CHECK(m.in_carrier(80));
  CHECK_FALSE(m.in_carrier(81));
  CHECK_FALSE(m.in_carrier(-1));
}

TEST_CASE("reduction to canonical residues") {
  const PAdicModel m = PAdicModel::create(3, 2);
  CHECK(m.reduce(10) == 1);
  CHECK(m.reduce(-1) == 8);
  CHECK(m.reduce(9) == 0);
  CHECK(m.reduce(4) == 4);
}

TEST_CASE("valuation counts factors of p, capped at the precision") {
  const PAdicModel m = PAdicModel::create(3, 4);
  CHECK(m.valuation(18, 0) == 2);
  CHECK(m.dist(18, 0) == q("1/9"));
  CHECK(m.valuation(1, 0) == 0);
  CHECK(m.dist(1, 0) == Rational(1));
  CHECK(m.valuation(27, 0) == 3);
  CHECK(m.dist(27, 0) == q("1/27"));
  CHECK(m.valuation(5, 5) == 4);  // equality caps at the precision
  CHECK(m.dist(5, 5) == Rational(0));
  CHECK(m.dist(0, 18) == m.dist(18, 0));
  CHECK_THROWS_AS(m.valuation(81, 0), ultra::ArgError);
  CHECK_THROWS_AS(m.dist(-1, 0), ultra::ArgError);
}

TEST_CASE("the p-adic distance satisfies the strong triangle inequality") {
  const PAdicModel m = PAdicModel::create(3, 3);
  for (long a = 0; a < 27; ++a) {
    for (long b = 0; b < 27; ++b) {
      for (long c = 0; c < 27; ++c) {
        CHECK(m.dist(a, c) <= max(m.dist(a, b), m.dist(b, c)));
      }
    }
  }
}

TEST_CASE("materialized carrier agrees with the model") {
  const PAdicModel m = PAdicModel::create(3, 2);
  const Space s = ultra::padic_space(m);
  REQUIRE(s.size() == 9);
  CHECK(s.labels().front() == "0");
  CHECK(s.labels().back() == "8");
  for (long i = 0; i < 9; ++i) {
    for (long j = 0; j < 9; ++j) {
      CHECK(s.dist(i, j) == m.dist(i, j));
    }
  }
  CHECK(s.kind() == ultra::MetricKind::Ultrametric);
}

TEST_CASE("carrier materialization respects the point bound") {
  const PAdicModel m = PAdicModel::create(3, 2);
  CHECK_THROWS_AS(ultra::padic_space(m, 8), ultra::LimitError);
  CHECK(ultra::padic_space(m, 9).size() == 9);
  CHECK_THROWS_AS(ultra::padic_space(PAdicModel::create(2, 12)), ultra::LimitError);
}

TEST_CASE("word distance halves at each agreeing position") {
  const BaireSeq a{{0, 1, 2}};
  const BaireSeq b{{0, 1, 3}};
  const BaireSeq c{{0, 2, 2}};
  const BaireSeq prefix{{0, 1}};
  const BaireSeq empty{{}};
  CHECK(ultra::baire_dist(a, a) == Rational(0));
  CHECK(ultra::baire_dist(empty, empty) == Rational(0));
  CHECK(ultra::baire_dist(a, b) == q("1/4"));
  CHECK(ultra::baire_dist(a, c) == q("1/2"));
  CHECK(ultra::baire_dist(a, prefix) == q("1/4"));  // missing position disagrees
  CHECK(ultra::baire_dist(empty, a) == Rational(1));
  CHECK(ultra::baire_dist(b, a) == ultra::baire_dist(a, b));
  // Strong triangle on the sample triple.
  CHECK(ultra::baire_dist(a, c) <= max(ultra::baire_dist(a, b), ultra::baire_dist(b, c)));
  CHECK(ultra::baire_dist(a, b) <= max(ultra::baire_dist(a, c), ultra::baire_dist(c, b)));
}

TEST_CASE("dendrogram cophenetic distances") {
  const Dendrogram d{{"a", "b", "c"}, {{0, 1, Rational(1)}, {3, 2, Rational(2)}}};
  const Space s = ultra::dendrogram_to_space(d);
  CHECK(s.labels() == std::vector<std::string>{"a", "b", "c"});
  CHECK(s.dist(0, 1) == Rational(1));
  CHECK(s.dist(0, 2) == Rational(2));
  CHECK(s.dist(1, 2) == Rational(2));
}

TEST_CASE("dendrogram structural errors") {
  SUBCASE("merge count") {
    CHECK_THROWS_AS(ultra::dendrogram_to_space({{"a", "b"}, {}}), ultra::ArgError);
    CHECK_THROWS_AS(ultra::dendrogram_to_space({{}, {}}), ultra::ArgError);
  }
  SUBCASE("children must already exist") {
    CHECK_THROWS_AS(ultra::dendrogram_to_space({{"a", "b"}, {{0, 3, Rational(1)}}}),
                    ultra::ArgError);
    CHECK_THROWS_AS(ultra::dendrogram_to_space({{"a", "b"}, {{-1, 1, Rational(1)}}}),
                    ultra::ArgError);
  }
  SUBCASE("no child is used twice") {
    CHECK_THROWS_AS(ultra::dendrogram_to_space(
                        {{"a", "b", "c"}, {{0, 1, Rational(1)}, {0, 2, Rational(2)}}}),
                    ultra::ArgError);
  }
  SUBCASE("no self merges") {
    CHECK_THROWS_AS(ultra::dendrogram_to_space({{"a", "b"}, {{0, 0, Rational(1)}}}),
                    ultra::ArgError);
  }
  SUBCASE("heights are positive") {
    CHECK_THROWS_AS(ultra::dendrogram_to_space({{"a", "b"}, {{0, 1, Rational(0)}}}),
                    ultra::ArgError);
    CHECK_THROWS_AS(ultra::dendrogram_to_space({{"a", "b"}, {{0, 1, Rational(-1)}}}),
                    ultra::ArgError);
  }
  SUBCASE("heights never decrease toward the root") {
    try {
      ultra::dendrogram_to_space(
          {{"a", "b", "c"}, {{0, 1, Rational(2)}, {3, 2, Rational(1)}}});
      FAIL("expected ArgError");
    } catch (const ultra::ArgError& e) {
      CHECK(std::string(e.what()).find("non-monotone heights") != std::string::npos);
    }
  }
  SUBCASE("equal heights are allowed") {
    const Dendrogram d{{"a", "b", "c"}, {{0, 1, Rational(1)}, {3, 2, Rational(1)}}};
    CHECK(ultra::dendrogram_to_space(d).dist(0, 2) == Rational(1));
  }
}

TEST_CASE("single-leaf dendrogram and one-point spaces") {
  const Space s = ultra::dendrogram_to_space({{"only"}, {}});
  CHECK(s.size() == 1);
  CHECK(ultra::discrete_space(1).size() == 1);
  CHECK(ultra::random_space(1, 5).size() == 1);
}

TEST_CASE("discrete space") {
  CHECK_THROWS_AS(ultra::discrete_space(0), ultra::ArgError);
  const Space s = ultra::discrete_space(3);
  CHECK(s.labels() == std::vector<std::string>{"1", "2", "3"});
  for (long i = 0; i < 3; ++i) {
    for (long j = 0; j < 3; ++j) {
      CHECK(s.dist(i, j) == (i == j ? Rational(0) : Rational(1)));
    }
  }
}

TEST_CASE("seeded spaces are deterministic and valid") {
  CHECK_THROWS_AS(ultra::random_space(0, 1), ultra::ArgError);
  const Space a = ultra::random_space(16, 42);
  const Space b = ultra::random_space(16, 42);
  REQUIRE(a.size() == 16);
  CHECK(a.labels() == b.labels());
  CHECK(a.matrix().entries() == b.matrix().entries());

  const Space c = ultra::random_space(16, 43);
  CHECK(a.matrix().entries() != c.matrix().entries());

  // Heights come from {1/k : 1 <= k <= n}, so every value fits that grid.
  for (const Rational& v : a.values()) {
    if (v.is_zero()) continue;
    CHECK(v.numerator() == 1);
    CHECK(v.denominator() <= 16);
  }
}
