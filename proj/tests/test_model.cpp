#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "mcdm/types.hpp"

#include "support/paper_tables.hpp"

using Catch::Matchers::WithinAbs;

namespace {

const std::vector<std::string> kAb = {"a", "b"};

}  // namespace

TEST_CASE("validate_pairwise accepts the published ten-criterion matrix") {
  auto m = mcdm::validate_pairwise(fixtures::kExpert4Matrix,
                                   fixtures::kCriterionIds);
  REQUIRE(m.order() == 10);
  REQUIRE(m.at(0, 1) == 3.0);
  REQUIRE(m.at(1, 0) == 0.333333);
  REQUIRE(m.criterion_ids() == fixtures::kCriterionIds);
}

TEST_CASE("validate_pairwise accepts identity judgments") {
  auto m = mcdm::validate_pairwise({{1, 1}, {1, 1}}, kAb);
  REQUIRE(m.order() == 2);
}

TEST_CASE("validate_pairwise is idempotent") {
  auto m = mcdm::validate_pairwise(fixtures::kExpert4Matrix,
                                   fixtures::kCriterionIds);
  auto again =
      mcdm::PairwiseMatrix::validated(m.entries(), m.criterion_ids());
  REQUIRE(again == m);
}

TEST_CASE("validate_pairwise rejects reciprocity violations with the worst "
          "pair") {
  try {
    mcdm::validate_pairwise({{1, 2}, {0.3, 1}}, kAb);
    FAIL("expected ReciprocityViolation");
  } catch (const mcdm::ReciprocityViolation& e) {
    REQUIRE(e.row() == 0);
    REQUIRE(e.col() == 1);
    REQUIRE_THAT(e.residual(), WithinAbs(0.4, 1e-12));
  }
}

TEST_CASE("validate_pairwise rejects malformed input") {
  SECTION("non-square") {
    REQUIRE_THROWS_AS(
        mcdm::validate_pairwise({{1, 1}, {1, 1}, {1, 1}}, kAb),
        mcdm::NonSquare);
    REQUIRE_THROWS_AS(mcdm::validate_pairwise({{1, 1, 1}, {1, 1}}, kAb),
                      mcdm::NonSquare);
  }
  SECTION("non-positive entries") {
    REQUIRE_THROWS_AS(mcdm::validate_pairwise({{1, 0}, {2, 1}}, kAb),
                      mcdm::NonPositiveEntry);
    REQUIRE_THROWS_AS(mcdm::validate_pairwise({{1, -2}, {-0.5, 1}}, kAb),
                      mcdm::NonPositiveEntry);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    REQUIRE_THROWS_AS(mcdm::validate_pairwise({{1, nan}, {1, 1}}, kAb),
                      mcdm::NonPositiveEntry);
  }
  SECTION("diagonal must be exactly one") {
    REQUIRE_THROWS_AS(
        mcdm::validate_pairwise({{1.0000001, 2}, {0.5, 1}}, kAb),
        mcdm::ReciprocityViolation);
  }
  SECTION("order bounds") {
    REQUIRE_THROWS_AS(mcdm::validate_pairwise({{1}}, {"a"}),
                      mcdm::DimensionMismatch);
    std::vector<std::string> ids;
    for (int i = 0; i < 16; ++i) ids.push_back("c" + std::to_string(i));
    std::vector<std::vector<double>> rows(16, std::vector<double>(16, 1.0));
    REQUIRE_THROWS_AS(mcdm::validate_pairwise(rows, ids),
                      mcdm::DimensionMismatch);
  }
  SECTION("duplicate ids") {
    REQUIRE_THROWS_AS(mcdm::validate_pairwise({{1, 1}, {1, 1}}, {"a", "a"}),
                      mcdm::ValidationError);
  }
}

TEST_CASE("saaty scale enforcement is opt-in") {
  mcdm::PairwiseMatrix::Options strict;
  strict.enforce_saaty_scale = true;
  const std::vector<std::vector<double>> wide = {{1, 12}, {1.0 / 12, 1}};
  REQUIRE_NOTHROW(mcdm::validate_pairwise(wide, kAb));
  REQUIRE_THROWS_AS(mcdm::validate_pairwise(wide, kAb, strict),
                    mcdm::ScaleViolation);
  // Fractional reciprocals down to 1/9 stay legal under enforcement.
  REQUIRE_NOTHROW(
      mcdm::validate_pairwise({{1, 0.2}, {5, 1}}, kAb, strict));
}

TEST_CASE("reciprocity tolerance is configurable") {
  // 0.3333 against 3 leaves a 1e-4 residual: inside the default, outside a
  // strict override.
  const std::vector<std::vector<double>> truncated = {{1, 0.3333}, {3, 1}};
  REQUIRE_NOTHROW(mcdm::validate_pairwise(truncated, kAb));
  mcdm::PairwiseMatrix::Options strict;
  strict.reciprocity_tol = 1e-6;
  REQUIRE_THROWS_AS(mcdm::validate_pairwise(truncated, kAb, strict),
                    mcdm::ReciprocityViolation);
}

TEST_CASE("validate_decision accepts the maturity-factor grid") {
  std::vector<mcdm::CriterionSpec> criteria;
  for (const auto& id : fixtures::kTop5Criteria) {
    criteria.push_back({id, id, mcdm::Direction::Benefit});
  }
  auto d = mcdm::validate_decision(fixtures::kDecisionMatrix,
                                   fixtures::kAlternativeIds, criteria);
  REQUIRE(d.alternative_count() == 4);
  REQUIRE(d.criterion_count() == 5);
  REQUIRE(d.at(0, 0) == 6.0);
}

TEST_CASE("validate_decision reports structural problems") {
  const std::vector<mcdm::CriterionSpec> cc = {
      {"c1", "c1", mcdm::Direction::Benefit},
      {"c2", "c2", mcdm::Direction::Benefit}};
  const std::vector<std::string> aa = {"a1", "a2"};

  SECTION("zero column carries the criterion id") {
    try {
      mcdm::validate_decision({{1, 0}, {2, 0}}, aa, cc);
      FAIL("expected ZeroColumn");
    } catch (const mcdm::ZeroColumn& e) {
      REQUIRE(e.criterion_id() == "c2");
    }
  }
  SECTION("negative and non-finite scores") {
    REQUIRE_THROWS_AS(mcdm::validate_decision({{1, -1}, {2, 3}}, aa, cc),
                      mcdm::NegativeScore);
    const double inf = std::numeric_limits<double>::infinity();
    REQUIRE_THROWS_AS(mcdm::validate_decision({{1, inf}, {2, 3}}, aa, cc),
                      mcdm::NegativeScore);
  }
  SECTION("at least two alternatives") {
    REQUIRE_THROWS_AS(mcdm::validate_decision({{1, 2}}, {"a1"}, cc),
                      mcdm::DimensionMismatch);
  }
  SECTION("jagged rows") {
    REQUIRE_THROWS_AS(mcdm::validate_decision({{1, 2}, {3}}, aa, cc),
                      mcdm::DimensionMismatch);
  }
}

TEST_CASE("grey scores whiten between their bounds") {
  auto g = mcdm::GreyScore::validated(4, 8);
  REQUIRE(g.whiten(0.5) == 6.0);
  REQUIRE(g.whiten(0.0) == 4.0);
  REQUIRE(g.whiten(1.0) == 8.0);
  REQUIRE_THROWS_AS(g.whiten(1.5), mcdm::ValidationError);
  REQUIRE_THROWS_AS(mcdm::GreyScore::validated(8, 4), mcdm::ValidationError);
}

TEST_CASE("priority vectors must sum to one") {
  REQUIRE_THROWS_AS(mcdm::PriorityVector::validated({0.6, 0.5}, kAb),
                    mcdm::ValidationError);
  REQUIRE_THROWS_AS(mcdm::PriorityVector::validated({1.2, -0.2}, kAb),
                    mcdm::ValidationError);
  auto pv = mcdm::PriorityVector::normalized({2, 3}, kAb);
  REQUIRE_THAT(pv.weights()[0], WithinAbs(0.4, 1e-15));
  REQUIRE_THAT(pv.weights()[1], WithinAbs(0.6, 1e-15));
  REQUIRE_THROWS_AS(mcdm::PriorityVector::normalized({0, 0}, kAb),
                    mcdm::ValidationError);
}

TEST_CASE("published vectors keep their printed digits") {
  // rounded columns may miss sum 1 by a percent or two
  auto pv = mcdm::PriorityVector::published({0.52, 0.3, 0.2}, {"a", "b", "c"});
  REQUIRE(pv.weights() == std::vector<double>{0.52, 0.3, 0.2});
  REQUIRE_THROWS_AS(
      mcdm::PriorityVector::published({0.8, 0.3, 0.2}, {"a", "b", "c"}),
      mcdm::ValidationError);
}

TEST_CASE("equal weight vector is uniform") {
  auto w = mcdm::WeightVector::equal({"a", "b", "c", "d"});
  for (double v : w.weights()) REQUIRE_THAT(v, WithinAbs(0.25, 1e-15));
}

TEST_CASE("ranking orders by descending score") {
  const std::vector<std::string> ids = {"x", "y", "z"};
  const std::vector<double> scores = {0.5, 0.3, 0.2};
  auto r = mcdm::Ranking::of(ids, scores);
  REQUIRE(r.items[0].id == "x");
  REQUIRE(r.items[0].rank == 1);
  REQUIRE(r.items[1].id == "y");
  REQUIRE(r.items[2].id == "z");
  REQUIRE(r.tie_groups.empty());
}

TEST_CASE("uniform scores form a single tie group in input order") {
  const std::vector<std::string> ids = {"x", "y", "z"};
  const std::vector<double> scores = {0.25, 0.25, 0.25};
  auto r = mcdm::Ranking::of(ids, scores);
  REQUIRE(r.tie_groups.size() == 1);
  REQUIRE(r.tie_groups[0] == std::vector<std::string>{"x", "y", "z"});
  REQUIRE(r.items[0].id == "x");
  REQUIRE(r.items[2].rank == 3);
}

TEST_CASE("near-equal scores tie and keep input position") {
  const std::vector<std::string> ids = {"first", "second", "third"};
  // second is fractionally larger than first but inside the tolerance
  const std::vector<double> scores = {0.5, 0.5 + 1e-10, 0.1};
  auto r = mcdm::Ranking::of(ids, scores);
  REQUIRE(r.items[0].id == "first");
  REQUIRE(r.items[1].id == "second");
  REQUIRE(r.items[2].id == "third");
  REQUIRE(r.tie_groups.size() == 1);
  REQUIRE(r.same_tie_group("first", "second"));
  REQUIRE_FALSE(r.same_tie_group("first", "third"));
}
