#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "mcdm/errors.hpp"

namespace mcdm {

// Whether larger scores on a criterion are better (Benefit) or worse (Cost).
enum class Direction { Benefit, Cost };

inline std::string_view to_string(Direction d) {
  return d == Direction::Benefit ? "benefit" : "cost";
}

inline Direction direction_from_string(std::string_view s) {
  if (s == "benefit") return Direction::Benefit;
  if (s == "cost") return Direction::Cost;
  throw ValidationError("unknown direction '" + std::string(s) +
                        "' (expected 'benefit' or 'cost')");
}

struct CriterionSpec {
  std::string id;
  std::string label;
  Direction direction = Direction::Benefit;

  bool operator==(const CriterionSpec&) const = default;
};

namespace detail {

inline void require_unique_nonempty_ids(std::span<const std::string> ids,
                                        std::string_view what) {
  std::unordered_set<std::string_view> seen;
  for (const auto& id : ids) {
    if (id.empty()) {
      throw ValidationError(std::string(what) + " id must be nonempty");
    }
    if (!seen.insert(id).second) {
      throw ValidationError("duplicate " + std::string(what) + " id: " + id);
    }
  }
}

inline bool finite(double v) { return std::isfinite(v); }

}  // namespace detail

// Square positive reciprocal judgment matrix over a criterion set.
// Entries are kept exactly as supplied; validation checks but never rewrites,
// so downstream arithmetic reproduces truncated-input judgments verbatim.
class PairwiseMatrix {
 public:
  struct Options {
    // Truncated reciprocal entries (0.3333 stored against 3) leave residuals
    // of 1e-4, so the default admits four-decimal data.
    double reciprocity_tol = 5e-4;
    // Opt-in 1/9..9 judgment-scale enforcement.
    bool enforce_saaty_scale = false;
  };

  static constexpr std::size_t kMinOrder = 2;
  static constexpr std::size_t kMaxOrder = 15;

  static PairwiseMatrix validated(const std::vector<std::vector<double>>& rows,
                                  std::vector<std::string> criterion_ids) {
    return validated(rows, std::move(criterion_ids), Options{});
  }

  static PairwiseMatrix validated(const std::vector<std::vector<double>>& rows,
                                  std::vector<std::string> criterion_ids,
                                  const Options& options) {
    const std::size_t n = criterion_ids.size();
    if (rows.size() != n) {
      throw NonSquare("matrix has " + std::to_string(rows.size()) +
                      " rows but " + std::to_string(n) + " criterion ids");
    }
    std::vector<double> flat;
    flat.reserve(n * n);
    for (const auto& row : rows) {
      if (row.size() != n) {
        throw NonSquare("matrix row has " + std::to_string(row.size()) +
                        " entries, expected " + std::to_string(n));
      }
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return validated(std::move(flat), std::move(criterion_ids), options);
  }

  static PairwiseMatrix validated(std::vector<double> row_major,
                                  std::vector<std::string> criterion_ids) {
    return validated(std::move(row_major), std::move(criterion_ids),
                     Options{});
  }

  static PairwiseMatrix validated(std::vector<double> row_major,
                                  std::vector<std::string> criterion_ids,
                                  const Options& options) {
    const std::size_t n = criterion_ids.size();
    if (n < kMinOrder || n > kMaxOrder) {
      throw DimensionMismatch("matrix order " + std::to_string(n) +
                              " outside supported range [" +
                              std::to_string(kMinOrder) + ", " +
                              std::to_string(kMaxOrder) + "]");
    }
    if (row_major.size() != n * n) {
      throw NonSquare("expected " + std::to_string(n * n) +
                      " entries for order " + std::to_string(n) + ", got " +
                      std::to_string(row_major.size()));
    }
    detail::require_unique_nonempty_ids(criterion_ids, "criterion");

    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double a = row_major[i * n + j];
        if (!detail::finite(a) || a <= 0.0) {
          throw NonPositiveEntry("entry a[" + std::to_string(i) + "][" +
                                 std::to_string(j) +
                                 "] must be a positive finite real");
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (row_major[i * n + i] != 1.0) {
        throw ReciprocityViolation(i, i,
                                   std::abs(row_major[i * n + i] - 1.0));
      }
    }
    // Reciprocity: report the worst offending pair, not the first.
    double worst = 0.0;
    std::size_t worst_i = 0, worst_j = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double residual =
            std::abs(row_major[i * n + j] * row_major[j * n + i] - 1.0);
        if (residual > worst) {
          worst = residual;
          worst_i = i;
          worst_j = j;
        }
      }
    }
    if (worst > options.reciprocity_tol) {
      throw ReciprocityViolation(worst_i, worst_j, worst);
    }
    if (options.enforce_saaty_scale) {
      constexpr double kEps = 1e-9;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const double a = row_major[i * n + j];
          if (a < 1.0 / 9.0 - kEps || a > 9.0 + kEps) {
            throw ScaleViolation("entry a[" + std::to_string(i) + "][" +
                                 std::to_string(j) + "] = " +
                                 std::to_string(a) +
                                 " outside the 1/9..9 judgment scale");
          }
        }
      }
    }
    return PairwiseMatrix(std::move(row_major), std::move(criterion_ids));
  }

  std::size_t order() const { return ids_.size(); }
  double at(std::size_t i, std::size_t j) const {
    return entries_[i * order() + j];
  }
  const std::vector<double>& entries() const { return entries_; }
  const std::vector<std::string>& criterion_ids() const { return ids_; }

  bool operator==(const PairwiseMatrix&) const = default;

 private:
  PairwiseMatrix(std::vector<double> entries, std::vector<std::string> ids)
      : entries_(std::move(entries)), ids_(std::move(ids)) {}

  std::vector<double> entries_;  // row-major n*n
  std::vector<std::string> ids_;
};

// Normalized criterion weights; components sum to 1.
class PriorityVector {
 public:
  static constexpr double kSumTol = 1e-9;

  static PriorityVector validated(std::vector<double> weights,
                                  std::vector<std::string> criterion_ids) {
    check_shape(weights, criterion_ids);
    const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (std::abs(sum - 1.0) > kSumTol) {
      throw ValidationError("priority weights sum to " + std::to_string(sum) +
                            ", expected 1");
    }
    return PriorityVector(std::move(weights), std::move(criterion_ids));
  }

  // Accepts raw nonnegative weights and scales them to sum 1.
  static PriorityVector normalized(std::vector<double> raw,
                                   std::vector<std::string> criterion_ids) {
    check_shape(raw, criterion_ids);
    const double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
    if (sum <= 0.0) {
      throw ValidationError("priority weights must have a positive sum");
    }
    for (auto& w : raw) w /= sum;
    return PriorityVector(std::move(raw), std::move(criterion_ids));
  }

  // Published tables round their entries, so their columns can miss sum 1 by
  // a percent or two. This path keeps the entries exactly as printed and
  // only rejects sums outside the rounding window; group aggregation
  // renormalizes once at the end, reproducing spreadsheet arithmetic over
  // the printed digits.
  static constexpr double kPublishedSumTol = 0.05;

  static PriorityVector published(std::vector<double> raw,
                                  std::vector<std::string> criterion_ids) {
    check_shape(raw, criterion_ids);
    const double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
    if (std::abs(sum - 1.0) > kPublishedSumTol) {
      throw ValidationError(
          "supplied priority weights sum to " + std::to_string(sum) +
          "; expected 1 within rounding (renormalize them first)");
    }
    return PriorityVector(std::move(raw), std::move(criterion_ids));
  }

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<std::string>& criterion_ids() const { return ids_; }
  std::size_t size() const { return weights_.size(); }

  bool operator==(const PriorityVector&) const = default;

 private:
  static void check_shape(const std::vector<double>& weights,
                          const std::vector<std::string>& ids) {
    if (weights.size() != ids.size()) {
      throw DimensionMismatch("got " + std::to_string(weights.size()) +
                              " weights for " + std::to_string(ids.size()) +
                              " criterion ids");
    }
    if (weights.empty()) {
      throw EmptySubset("priority vector must not be empty");
    }
    detail::require_unique_nonempty_ids(ids, "criterion");
    for (double w : weights) {
      if (!detail::finite(w) || w < 0.0) {
        throw ValidationError("priority weights must be finite and >= 0");
      }
    }
  }

  PriorityVector(std::vector<double> weights, std::vector<std::string> ids)
      : weights_(std::move(weights)), ids_(std::move(ids)) {}

  std::vector<double> weights_;
  std::vector<std::string> ids_;
};

// Criterion weights consumed by the ranking engine; same shape as a
// PriorityVector but decoupled from how the weights were derived.
class WeightVector {
 public:
  static WeightVector validated(std::vector<double> weights,
                                std::vector<std::string> criterion_ids) {
    auto pv = PriorityVector::validated(std::move(weights),
                                        std::move(criterion_ids));
    return WeightVector(std::move(pv));
  }

  static WeightVector normalized(std::vector<double> raw,
                                 std::vector<std::string> criterion_ids) {
    auto pv =
        PriorityVector::normalized(std::move(raw), std::move(criterion_ids));
    return WeightVector(std::move(pv));
  }

  static WeightVector equal(std::vector<std::string> criterion_ids) {
    std::vector<double> raw(criterion_ids.size(), 1.0);
    return normalized(std::move(raw), std::move(criterion_ids));
  }

  const std::vector<double>& weights() const { return pv_.weights(); }
  const std::vector<std::string>& criterion_ids() const {
    return pv_.criterion_ids();
  }
  std::size_t size() const { return pv_.size(); }

  bool operator==(const WeightVector&) const = default;

 private:
  explicit WeightVector(PriorityVector pv) : pv_(std::move(pv)) {}
  PriorityVector pv_;
};

struct ConsistencyReport {
  double lambda_max = 0.0;
  double ci = 0.0;
  double ri = 0.0;
  double cr = 0.0;
  std::string ri_preset;
  bool acceptable = false;

  bool operator==(const ConsistencyReport&) const = default;
};

// Interval-valued expert score; whitening collapses it to a crisp value.
struct GreyScore {
  double lower = 0.0;
  double upper = 0.0;

  static GreyScore validated(double lower, double upper) {
    if (!detail::finite(lower) || !detail::finite(upper)) {
      throw ValidationError("grey score bounds must be finite");
    }
    if (lower > upper) {
      throw ValidationError("grey score lower bound " +
                            std::to_string(lower) + " exceeds upper bound " +
                            std::to_string(upper));
    }
    return GreyScore{lower, upper};
  }

  // lambda = 1 keeps the optimistic bound, lambda = 0 the pessimistic one.
  double whiten(double lambda) const {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
      throw ValidationError("whitening lambda must lie in [0, 1]");
    }
    return lambda * upper + (1.0 - lambda) * lower;
  }

  bool operator==(const GreyScore&) const = default;
};

// Alternatives x criteria performance scores.
class DecisionMatrix {
 public:
  static DecisionMatrix validated(const std::vector<std::vector<double>>& rows,
                                  std::vector<std::string> alternative_ids,
                                  std::vector<CriterionSpec> criteria) {
    const std::size_t m = alternative_ids.size();
    const std::size_t n = criteria.size();
    if (m < 2) {
      throw DimensionMismatch("need at least 2 alternatives, got " +
                              std::to_string(m));
    }
    if (n < 1) {
      throw DimensionMismatch("need at least 1 criterion");
    }
    if (rows.size() != m) {
      throw DimensionMismatch("got " + std::to_string(rows.size()) +
                              " score rows for " + std::to_string(m) +
                              " alternatives");
    }
    detail::require_unique_nonempty_ids(alternative_ids, "alternative");
    std::vector<std::string> crit_ids;
    crit_ids.reserve(n);
    for (const auto& c : criteria) crit_ids.push_back(c.id);
    detail::require_unique_nonempty_ids(crit_ids, "criterion");

    std::vector<double> flat;
    flat.reserve(m * n);
    for (std::size_t i = 0; i < m; ++i) {
      if (rows[i].size() != n) {
        throw DimensionMismatch("score row for '" + alternative_ids[i] +
                                "' has " + std::to_string(rows[i].size()) +
                                " entries, expected " + std::to_string(n));
      }
      for (double v : rows[i]) {
        if (!detail::finite(v)) {
          throw NegativeScore("scores must be finite");
        }
        if (v < 0.0) {
          throw NegativeScore("scores must be >= 0, got " +
                              std::to_string(v));
        }
        flat.push_back(v);
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      bool all_zero = true;
      for (std::size_t i = 0; i < m; ++i) {
        if (flat[i * n + j] != 0.0) {
          all_zero = false;
          break;
        }
      }
      if (all_zero) throw ZeroColumn(criteria[j].id);
    }
    return DecisionMatrix(std::move(flat), std::move(alternative_ids),
                          std::move(criteria));
  }

  std::size_t alternative_count() const { return alternative_ids_.size(); }
  std::size_t criterion_count() const { return criteria_.size(); }
  double at(std::size_t i, std::size_t j) const {
    return scores_[i * criterion_count() + j];
  }
  const std::vector<std::string>& alternative_ids() const {
    return alternative_ids_;
  }
  const std::vector<CriterionSpec>& criteria() const { return criteria_; }

  std::vector<Direction> directions() const {
    std::vector<Direction> out;
    out.reserve(criteria_.size());
    for (const auto& c : criteria_) out.push_back(c.direction);
    return out;
  }

  std::vector<std::vector<double>> rows() const {
    std::vector<std::vector<double>> out(alternative_count());
    for (std::size_t i = 0; i < alternative_count(); ++i) {
      out[i].assign(scores_.begin() + i * criterion_count(),
                    scores_.begin() + (i + 1) * criterion_count());
    }
    return out;
  }

  bool operator==(const DecisionMatrix&) const = default;

 private:
  DecisionMatrix(std::vector<double> scores,
                 std::vector<std::string> alternative_ids,
                 std::vector<CriterionSpec> criteria)
      : scores_(std::move(scores)),
        alternative_ids_(std::move(alternative_ids)),
        criteria_(std::move(criteria)) {}

  std::vector<double> scores_;  // row-major m*n
  std::vector<std::string> alternative_ids_;
  std::vector<CriterionSpec> criteria_;
};

struct RankedItem {
  std::string id;
  double score = 0.0;
  int rank = 0;

  bool operator==(const RankedItem&) const = default;
};

// Descending ranking with explicit tie groups. Items whose scores differ by
// no more than the tie tolerance share a group and keep input order.
struct Ranking {
  static constexpr double kDefaultTieTol = 1e-9;

  std::vector<RankedItem> items;  // rank order, ranks 1..k
  std::vector<std::vector<std::string>> tie_groups;  // groups of size >= 2

  static Ranking of(std::span<const std::string> ids,
                    std::span<const double> scores,
                    double tie_tol = kDefaultTieTol) {
    if (ids.size() != scores.size()) {
      throw DimensionMismatch("got " + std::to_string(scores.size()) +
                              " scores for " + std::to_string(ids.size()) +
                              " ids");
    }
    const std::size_t k = ids.size();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return scores[a] > scores[b];
                     });

    // Group consecutive near-equal scores, then restore input order inside
    // each group.
    Ranking out;
    out.items.reserve(k);
    std::size_t group_start = 0;
    std::vector<std::size_t> final_order;
    final_order.reserve(k);
    for (std::size_t pos = 1; pos <= k; ++pos) {
      const bool boundary =
          pos == k || scores[order[pos - 1]] - scores[order[pos]] > tie_tol;
      if (!boundary) continue;
      std::vector<std::size_t> group(order.begin() + group_start,
                                     order.begin() + pos);
      std::sort(group.begin(), group.end());
      if (group.size() >= 2) {
        std::vector<std::string> group_ids;
        group_ids.reserve(group.size());
        for (std::size_t idx : group) group_ids.push_back(ids[idx]);
        out.tie_groups.push_back(std::move(group_ids));
      }
      final_order.insert(final_order.end(), group.begin(), group.end());
      group_start = pos;
    }
    int rank = 1;
    for (std::size_t idx : final_order) {
      out.items.push_back(RankedItem{ids[idx], scores[idx], rank++});
    }
    return out;
  }

  // 1-based rank of an id, or 0 when absent.
  int rank_of(std::string_view id) const {
    for (const auto& item : items) {
      if (item.id == id) return item.rank;
    }
    return 0;
  }

  bool same_tie_group(std::string_view a, std::string_view b) const {
    for (const auto& group : tie_groups) {
      const bool has_a = std::find(group.begin(), group.end(), a) != group.end();
      const bool has_b = std::find(group.begin(), group.end(), b) != group.end();
      if (has_a && has_b) return true;
    }
    return false;
  }

  bool operator==(const Ranking&) const = default;
};

// validate_pairwise / validate_decision free-function spellings.

inline PairwiseMatrix validate_pairwise(
    const std::vector<std::vector<double>>& raw, std::vector<std::string> ids,
    const PairwiseMatrix::Options& options = PairwiseMatrix::Options{}) {
  return PairwiseMatrix::validated(raw, std::move(ids), options);
}

inline DecisionMatrix validate_decision(
    const std::vector<std::vector<double>>& raw,
    std::vector<std::string> alternative_ids,
    std::vector<CriterionSpec> criteria) {
  return DecisionMatrix::validated(raw, std::move(alternative_ids),
                                   std::move(criteria));
}

}  // namespace mcdm
