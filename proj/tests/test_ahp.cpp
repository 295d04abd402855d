#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "mcdm/ahp.hpp"

#include "support/builders.hpp"
#include "support/oracles.hpp"
#include "support/paper_tables.hpp"

using Catch::Matchers::WithinAbs;
using mcdm::ahp::RiTable;

namespace {

mcdm::PairwiseMatrix consistent_631() {
  // a_ij = w_i / w_j for w = (0.6, 0.3, 0.1)
  const std::vector<double> w = {0.6, 0.3, 0.1};
  std::vector<std::vector<double>> rows(3, std::vector<double>(3));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) rows[i][j] = w[i] / w[j];
  }
  return mcdm::PairwiseMatrix::validated(rows, {"a", "b", "c"});
}

mcdm::PairwiseMatrix all_ones(std::size_t n) {
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 1.0));
  return mcdm::PairwiseMatrix::validated(rows, oracle::make_ids(n, "c"));
}

}  // namespace

TEST_CASE("column normalization reproduces the published spot row") {
  auto norm = mcdm::ahp::column_normalized(fixtures::expert4_matrix());
  for (std::size_t j = 0; j < 10; ++j) {
    REQUIRE_THAT(norm[5][j],
                 WithinAbs(fixtures::kNormalizedCostOptimizationRow[j], 5e-4));
  }
}

TEST_CASE("row-average priorities match the published vector") {
  auto w = mcdm::ahp::priority_row_average(fixtures::expert4_matrix());
  for (std::size_t i = 0; i < 10; ++i) {
    REQUIRE_THAT(w.weights()[i],
                 WithinAbs(fixtures::kExpert4Priority[i], 5e-4));
  }
}

TEST_CASE("row-average of an all-ones matrix is uniform") {
  auto w = mcdm::ahp::priority_row_average(all_ones(4));
  for (double v : w.weights()) REQUIRE(v == 0.25);
}

TEST_CASE("row-average recovers the weights of a consistent matrix") {
  auto w = mcdm::ahp::priority_row_average(consistent_631());
  REQUIRE_THAT(w.weights()[0], WithinAbs(0.6, 1e-9));
  REQUIRE_THAT(w.weights()[1], WithinAbs(0.3, 1e-9));
  REQUIRE_THAT(w.weights()[2], WithinAbs(0.1, 1e-9));
}

TEST_CASE("eigenvector recovers the weights of a consistent matrix") {
  auto w = mcdm::ahp::priority_eigenvector(consistent_631());
  REQUIRE_THAT(w.weights()[0], WithinAbs(0.6, 1e-9));
  REQUIRE_THAT(w.weights()[1], WithinAbs(0.3, 1e-9));
  REQUIRE_THAT(w.weights()[2], WithinAbs(0.1, 1e-9));
}

TEST_CASE("eigenvector of an all-ones matrix is uniform") {
  auto w = mcdm::ahp::priority_eigenvector(all_ones(4));
  for (double v : w.weights()) REQUIRE_THAT(v, WithinAbs(0.25, 1e-15));
}

TEST_CASE("eigenvector matches the repeated-squaring reference") {
  auto w = mcdm::ahp::priority_eigenvector(fixtures::expert4_matrix());
  auto ref = oracle::dominant_eigenvector(fixtures::kExpert4Matrix);
  for (std::size_t i = 0; i < 10; ++i) {
    REQUIRE_THAT(w.weights()[i], WithinAbs(ref[i], 1e-8));
  }
}

TEST_CASE("eigenvector surfaces iteration misconfiguration") {
  REQUIRE_THROWS_AS(
      mcdm::ahp::priority_eigenvector(consistent_631(), 1e-10, 1),
      mcdm::NoConvergence);
  REQUIRE_THROWS_AS(mcdm::ahp::priority_eigenvector(consistent_631(), -1.0),
                    mcdm::ValidationError);
}

TEST_CASE("lambda_max matches the published estimate") {
  auto m = fixtures::expert4_matrix();
  auto w = mcdm::ahp::priority_row_average(m);
  REQUIRE_THAT(mcdm::ahp::lambda_max(m, w),
               WithinAbs(fixtures::kExpert4LambdaMax, 1e-3));
}

TEST_CASE("lambda_max equals the order for consistent inputs") {
  auto m = consistent_631();
  auto w = mcdm::ahp::priority_eigenvector(m);
  REQUIRE_THAT(mcdm::ahp::lambda_max(m, w), WithinAbs(3.0, 1e-9));

  auto ones = all_ones(4);
  auto uniform = mcdm::PriorityVector::normalized({1, 1, 1, 1},
                                                  ones.criterion_ids());
  REQUIRE_THAT(mcdm::ahp::lambda_max(ones, uniform), WithinAbs(4.0, 1e-12));
}

TEST_CASE("lambda_max rejects zero weight components") {
  auto ones = all_ones(3);
  auto degenerate =
      mcdm::PriorityVector::validated({0.0, 0.5, 0.5}, ones.criterion_ids());
  REQUIRE_THROWS_AS(mcdm::ahp::lambda_max(ones, degenerate),
                    mcdm::ZeroWeightComponent);
}

TEST_CASE("consistency reproduces the published figures") {
  auto m = fixtures::expert4_matrix();
  auto w = mcdm::ahp::priority_row_average(m);

  SECTION("with the classic RI of 1.49") {
    auto r = mcdm::ahp::consistency(m, w, RiTable::saaty_classic());
    REQUIRE_THAT(r.ci, WithinAbs(fixtures::kExpert4Ci, 5e-4));
    REQUIRE_THAT(r.cr, WithinAbs(fixtures::kExpert4CrSaatyClassic, 1e-3));
    REQUIRE(r.acceptable);
    REQUIRE(r.ri_preset == "saaty-classic");
  }
  SECTION("with the published RI table") {
    auto r = mcdm::ahp::consistency(m, w, RiTable::paper_table2());
    REQUIRE(r.ri == 1.4882);
    REQUIRE_THAT(r.cr, WithinAbs(fixtures::kExpert4CrTable2, 1e-3));
  }
  SECTION("explicit RI value") {
    auto r = mcdm::ahp::consistency_with_ri(m, w, 1.49, "custom");
    REQUIRE_THAT(r.cr, WithinAbs(fixtures::kExpert4CrSaatyClassic, 1e-3));
    REQUIRE(r.ri_preset == "custom");
  }
}

TEST_CASE("consistent matrices have zero CI and CR") {
  auto m = consistent_631();
  auto w = mcdm::ahp::priority_row_average(m);
  auto r = mcdm::ahp::consistency(m, w, RiTable::paper_table2());
  REQUIRE_THAT(r.ci, WithinAbs(0.0, 1e-6));
  REQUIRE_THAT(r.cr, WithinAbs(0.0, 1e-6));
  REQUIRE(r.acceptable);
}

TEST_CASE("order-2 matrices get CR zero by convention") {
  auto m = mcdm::validate_pairwise({{1, 4}, {0.25, 1}}, {"a", "b"});
  auto w = mcdm::ahp::priority_row_average(m);
  auto r = mcdm::ahp::consistency(m, w, RiTable::paper_table2());
  REQUIRE(r.ri == 0.0);
  REQUIRE(r.cr == 0.0);
}

TEST_CASE("orders beyond the preset need an explicit RI") {
  std::mt19937 rng(7);
  auto [rows, gen_w] = oracle::random_consistent_matrix(rng, 11);
  auto m = mcdm::PairwiseMatrix::validated(rows, oracle::make_ids(11, "c"));
  auto w = mcdm::ahp::priority_row_average(m);
  REQUIRE_THROWS_AS(
      mcdm::ahp::consistency(m, w, RiTable::paper_table2()),
      mcdm::MissingRiEntry);
  auto r = mcdm::ahp::consistency_with_ri(m, w, 1.51, "custom");
  REQUIRE_THAT(r.cr, WithinAbs(0.0, 1e-6));
}

TEST_CASE("RI presets carry the expected calibration values") {
  REQUIRE(RiTable::paper_table2().value_for(3) == 0.5799);
  REQUIRE(RiTable::paper_table2().value_for(10) == 1.4882);
  REQUIRE(RiTable::saaty_classic().value_for(10) == 1.49);
  REQUIRE(RiTable::from_preset("paper-table2").preset_id() == "paper-table2");
  REQUIRE_THROWS_AS(RiTable::from_preset("nope"), mcdm::ValidationError);
  REQUIRE_THROWS_AS(RiTable::validated("bad", {{2, 0.5}}),
                    mcdm::ValidationError);
  REQUIRE_THROWS_AS(RiTable::validated("bad", {{3, 0.9}, {4, 0.5}}),
                    mcdm::ValidationError);
}

TEST_CASE("aggregation reproduces the published group weights") {
  auto vectors = fixtures::expert_vectors();
  auto group = mcdm::ahp::aggregate_expert_priorities(
      vectors, mcdm::ahp::Aggregation::ArithmeticMean);
  for (std::size_t i = 0; i < 10; ++i) {
    REQUIRE_THAT(group.weights()[i],
                 WithinAbs(fixtures::kPublishedGroupWeights[i], 2e-3));
  }
}

TEST_CASE("aggregation basics") {
  const std::vector<std::string> ids = {"a", "b"};
  auto v1 = mcdm::PriorityVector::validated({0.8, 0.2}, ids);
  auto v2 = mcdm::PriorityVector::validated({0.2, 0.8}, ids);

  SECTION("single vector passes through") {
    std::vector<mcdm::PriorityVector> one = {v1};
    auto out = mcdm::ahp::aggregate_expert_priorities(
        one, mcdm::ahp::Aggregation::ArithmeticMean);
    REQUIRE_THAT(out.weights()[0], WithinAbs(0.8, 1e-12));
  }
  SECTION("symmetric pair averages to uniform") {
    std::vector<mcdm::PriorityVector> pair = {v1, v2};
    auto out = mcdm::ahp::aggregate_expert_priorities(
        pair, mcdm::ahp::Aggregation::ArithmeticMean);
    REQUIRE_THAT(out.weights()[0], WithinAbs(0.5, 1e-12));
    REQUIRE_THAT(out.weights()[1], WithinAbs(0.5, 1e-12));
  }
  SECTION("copies of one vector reproduce it") {
    std::vector<mcdm::PriorityVector> copies = {v1, v1, v1};
    for (auto method : {mcdm::ahp::Aggregation::ArithmeticMean,
                        mcdm::ahp::Aggregation::GeometricMean}) {
      auto out = mcdm::ahp::aggregate_expert_priorities(copies, method);
      REQUIRE_THAT(out.weights()[0], WithinAbs(0.8, 1e-12));
      REQUIRE_THAT(out.weights()[1], WithinAbs(0.2, 1e-12));
    }
  }
  SECTION("expert weights bias the mean") {
    std::vector<mcdm::PriorityVector> pair = {v1, v2};
    const std::vector<double> u = {3.0, 1.0};
    auto out = mcdm::ahp::aggregate_expert_priorities(
        pair, mcdm::ahp::Aggregation::ArithmeticMean, u);
    REQUIRE_THAT(out.weights()[0], WithinAbs(0.65, 1e-12));
    REQUIRE_THAT(out.weights()[1], WithinAbs(0.35, 1e-12));
  }
  SECTION("mismatched criterion sets are rejected") {
    auto other = mcdm::PriorityVector::validated({0.5, 0.5}, {"a", "x"});
    std::vector<mcdm::PriorityVector> bad = {v1, other};
    REQUIRE_THROWS_AS(mcdm::ahp::aggregate_expert_priorities(
                          bad, mcdm::ahp::Aggregation::ArithmeticMean),
                      mcdm::CriterionSetMismatch);
  }
  SECTION("empty input is rejected") {
    std::vector<mcdm::PriorityVector> none;
    REQUIRE_THROWS_AS(mcdm::ahp::aggregate_expert_priorities(
                          none, mcdm::ahp::Aggregation::ArithmeticMean),
                      mcdm::EmptySubset);
  }
}

TEST_CASE("expert panels demand a shared criterion set") {
  mcdm::ahp::ExpertJudgment a;
  a.expert_id = "e1";
  a.supplied_priorities =
      mcdm::PriorityVector::validated({0.5, 0.5}, {"c1", "c2"});
  mcdm::ahp::ExpertJudgment b;
  b.expert_id = "e2";
  b.supplied_priorities =
      mcdm::PriorityVector::validated({0.5, 0.5}, {"c1", "cX"});
  REQUIRE_THROWS_AS(mcdm::ahp::ExpertPanel::validated({a, b}),
                    mcdm::CriterionSetMismatch);

  mcdm::ahp::ExpertJudgment neither;
  neither.expert_id = "e3";
  REQUIRE_THROWS_AS(mcdm::ahp::ExpertPanel::validated({neither}),
                    mcdm::ValidationError);

  auto dup = a;
  REQUIRE_THROWS_AS(mcdm::ahp::ExpertPanel::validated({a, dup}),
                    mcdm::ValidationError);
}

TEST_CASE("criteria ranking from the aggregated weights") {
  auto vectors = fixtures::expert_vectors();
  auto group = mcdm::ahp::aggregate_expert_priorities(
      vectors, mcdm::ahp::Aggregation::ArithmeticMean);
  auto ranking = mcdm::ahp::rank_criteria(group);
  for (std::size_t i = 0; i < fixtures::kTop5Criteria.size(); ++i) {
    REQUIRE(ranking.items[i].id == fixtures::kTop5Criteria[i]);
  }
}

TEST_CASE("relabeling permutes priorities and leaves consistency intact") {
  std::mt19937 rng(11);
  for (int round = 0; round < 10; ++round) {
    const std::size_t n = 4 + round % 4;
    auto rows = oracle::random_judgment_matrix(rng, n);
    auto ids = oracle::make_ids(n, "c");
    auto m = mcdm::PairwiseMatrix::validated(rows, ids);

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<double>> prows(n, std::vector<double>(n));
    std::vector<std::string> pids(n);
    for (std::size_t i = 0; i < n; ++i) {
      pids[i] = ids[perm[i]];
      for (std::size_t j = 0; j < n; ++j) {
        prows[i][j] = rows[perm[i]][perm[j]];
      }
    }
    auto pm = mcdm::PairwiseMatrix::validated(prows, pids);

    auto w = mcdm::ahp::priority_row_average(m);
    auto pw = mcdm::ahp::priority_row_average(pm);
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE_THAT(pw.weights()[i], WithinAbs(w.weights()[perm[i]], 1e-12));
    }
    auto r = mcdm::ahp::consistency(m, w, RiTable::paper_table2());
    auto pr = mcdm::ahp::consistency(pm, pw, RiTable::paper_table2());
    REQUIRE_THAT(pr.lambda_max, WithinAbs(r.lambda_max, 1e-12));
    REQUIRE_THAT(pr.ci, WithinAbs(r.ci, 1e-12));
    REQUIRE_THAT(pr.cr, WithinAbs(r.cr, 1e-12));
  }
}

TEST_CASE("property smoke: random judgment matrices behave") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<std::size_t> order(3, 7);
  for (int round = 0; round < 50; ++round) {
    const std::size_t n = order(rng);
    auto ids = oracle::make_ids(n, "c");

    auto rows = oracle::random_judgment_matrix(rng, n);
    auto m = mcdm::PairwiseMatrix::validated(rows, ids);
    auto we = mcdm::ahp::priority_eigenvector(m);
    REQUIRE(mcdm::ahp::lambda_max(m, we) >=
            static_cast<double>(n) - 1e-6);
    auto ref = oracle::dominant_eigenvector(rows);
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE_THAT(we.weights()[i], WithinAbs(ref[i], 1e-8));
    }

    auto [crows, cw] = oracle::random_consistent_matrix(rng, n);
    auto cm = mcdm::PairwiseMatrix::validated(crows, ids);
    auto ra = mcdm::ahp::priority_row_average(cm);
    auto ev = mcdm::ahp::priority_eigenvector(cm);
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE_THAT(ra.weights()[i], WithinAbs(ev.weights()[i], 1e-9));
    }
    auto report = mcdm::ahp::consistency(cm, ra, RiTable::paper_table2());
    REQUIRE(std::abs(report.cr) < 1e-6);
  }
}
