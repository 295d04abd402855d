#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mcdm/errors.hpp"
#include "mcdm/types.hpp"

namespace mcdm::topsis {

// How a cell's expert scores collapse to one crisp value.
//   Mean          — arithmetic mean of the listed scores.
//   Whitening(l)  — treat the cell as a grey interval [min, max] and take
//                   l*upper + (1-l)*lower. A two-element cell written in
//                   order is exactly its [lower, upper] pair.
struct WhiteningPolicy {
  enum class Kind { Mean, Whitening };

  Kind kind = Kind::Mean;
  double lambda = 0.5;

  static WhiteningPolicy mean() { return WhiteningPolicy{Kind::Mean, 0.5}; }

  static WhiteningPolicy whitening(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
      throw ValidationError("whitening lambda must lie in [0, 1]");
    }
    return WhiteningPolicy{Kind::Whitening, lambda};
  }

  bool operator==(const WhiteningPolicy&) const = default;
};

using ScoreCell = std::vector<double>;

// Raw per-(alternative, criterion) expert scores, pre-whitening.
struct ScoreTable {
  std::vector<std::string> alternative_ids;
  std::vector<CriterionSpec> criteria;
  std::vector<std::vector<ScoreCell>> cells;  // [alternative][criterion]
};

inline double whiten_cell(const ScoreCell& cell,
                          const WhiteningPolicy& policy) {
  if (cell.empty()) {
    throw ValidationError("cannot whiten an empty score cell");
  }
  if (policy.kind == WhiteningPolicy::Kind::Mean) {
    double sum = 0.0;
    for (double v : cell) sum += v;
    return sum / static_cast<double>(cell.size());
  }
  const auto [lo, hi] = std::minmax_element(cell.begin(), cell.end());
  return GreyScore::validated(*lo, *hi).whiten(policy.lambda);
}

inline double whiten_cell(const GreyScore& grey,
                          const WhiteningPolicy& policy) {
  if (policy.kind == WhiteningPolicy::Kind::Mean) {
    return 0.5 * (grey.lower + grey.upper);
  }
  return grey.whiten(policy.lambda);
}

// Collapse every cell and validate the result as a DecisionMatrix.
inline DecisionMatrix whiten_scores(const ScoreTable& scores,
                                    const WhiteningPolicy& policy) {
  const std::size_t m = scores.alternative_ids.size();
  const std::size_t n = scores.criteria.size();
  if (scores.cells.size() != m) {
    throw DimensionMismatch("score table has " +
                            std::to_string(scores.cells.size()) +
                            " rows for " + std::to_string(m) +
                            " alternatives");
  }
  std::vector<std::vector<double>> rows(m, std::vector<double>(n));
  for (std::size_t i = 0; i < m; ++i) {
    if (scores.cells[i].size() != n) {
      throw DimensionMismatch("score row for '" + scores.alternative_ids[i] +
                              "' has " +
                              std::to_string(scores.cells[i].size()) +
                              " cells, expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (scores.cells[i][j].empty()) {
        throw EmptyCell(scores.alternative_ids[i], scores.criteria[j].id);
      }
      rows[i][j] = whiten_cell(scores.cells[i][j], policy);
    }
  }
  return DecisionMatrix::validated(rows, scores.alternative_ids,
                                   scores.criteria);
}

// Vector normalization: r_ij = x_ij / sqrt(sum_i x_ij^2). Every column of
// the result has unit Euclidean norm.
inline std::vector<std::vector<double>> normalize(const DecisionMatrix& d) {
  const std::size_t m = d.alternative_count();
  const std::size_t n = d.criterion_count();
  std::vector<double> col_norm(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += d.at(i, j) * d.at(i, j);
    col_norm[j] = std::sqrt(acc);
  }
  std::vector<std::vector<double>> r(m, std::vector<double>(n));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) r[i][j] = d.at(i, j) / col_norm[j];
  }
  return r;
}

// v_ij = w_j * r_ij.
inline std::vector<std::vector<double>> apply_weights(
    const std::vector<std::vector<double>>& r, const WeightVector& w) {
  const auto& weights = w.weights();
  std::vector<std::vector<double>> v(r.size(),
                                     std::vector<double>(weights.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i].size() != weights.size()) {
      throw DimensionMismatch("normalized row has " +
                              std::to_string(r[i].size()) +
                              " entries for " +
                              std::to_string(weights.size()) + " weights");
    }
    for (std::size_t j = 0; j < weights.size(); ++j) {
      v[i][j] = weights[j] * r[i][j];
    }
  }
  return v;
}

struct IdealPair {
  std::vector<double> positive;  // v_j+
  std::vector<double> negative;  // v_j-
};

// Per-criterion extrema of the weighted grid: the positive ideal takes the
// column maximum on benefit criteria and the minimum on cost criteria; the
// negative ideal mirrors it.
inline IdealPair ideals(const std::vector<std::vector<double>>& v,
                        std::span<const Direction> directions) {
  if (v.empty()) throw DimensionMismatch("weighted grid is empty");
  const std::size_t n = directions.size();
  IdealPair out;
  out.positive.resize(n);
  out.negative.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double lo = v[0][j], hi = v[0][j];
    for (const auto& row : v) {
      if (row.size() != n) {
        throw DimensionMismatch("weighted grid row size mismatch");
      }
      lo = std::min(lo, row[j]);
      hi = std::max(hi, row[j]);
    }
    const bool benefit = directions[j] == Direction::Benefit;
    out.positive[j] = benefit ? hi : lo;
    out.negative[j] = benefit ? lo : hi;
  }
  return out;
}

struct SeparationPair {
  std::vector<double> positive;  // d_i+
  std::vector<double> negative;  // d_i-
};

// Euclidean distances of each alternative's weighted row to the ideals.
inline SeparationPair separations(const std::vector<std::vector<double>>& v,
                                  std::span<const double> ideal_positive,
                                  std::span<const double> ideal_negative) {
  SeparationPair out;
  out.positive.reserve(v.size());
  out.negative.reserve(v.size());
  for (const auto& row : v) {
    if (row.size() != ideal_positive.size() ||
        row.size() != ideal_negative.size()) {
      throw DimensionMismatch("ideal vectors do not match grid width");
    }
    double dp = 0.0, dn = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double ep = row[j] - ideal_positive[j];
      const double en = row[j] - ideal_negative[j];
      dp += ep * ep;
      dn += en * en;
    }
    out.positive.push_back(std::sqrt(dp));
    out.negative.push_back(std::sqrt(dn));
  }
  return out;
}

// C_i = d_i- / (d_i+ + d_i-).
inline std::vector<double> closeness(std::span<const double> d_pos,
                                     std::span<const double> d_neg) {
  if (d_pos.size() != d_neg.size()) {
    throw DimensionMismatch("separation vectors differ in length");
  }
  std::vector<double> c;
  c.reserve(d_pos.size());
  for (std::size_t i = 0; i < d_pos.size(); ++i) {
    const double denom = d_pos[i] + d_neg[i];
    if (denom == 0.0) throw DegenerateAlternative(i);
    c.push_back(d_neg[i] / denom);
  }
  return c;
}

// Full audit of one run: every stage grid plus the final ranking.
struct TopsisTrace {
  DecisionMatrix input;
  WeightVector weights;
  std::vector<std::vector<double>> normalized;
  std::vector<std::vector<double>> weighted;
  std::vector<double> ideal_positive;
  std::vector<double> ideal_negative;
  std::vector<double> separation_positive;
  std::vector<double> separation_negative;
  std::vector<double> closeness;
  Ranking ranking;
};

inline TopsisTrace run_topsis(const DecisionMatrix& d, const WeightVector& w,
                              double tie_tol = Ranking::kDefaultTieTol) {
  if (w.size() != d.criterion_count()) {
    throw DimensionMismatch("got " + std::to_string(w.size()) +
                            " weights for " +
                            std::to_string(d.criterion_count()) +
                            " criteria");
  }
  for (std::size_t j = 0; j < d.criterion_count(); ++j) {
    if (w.criterion_ids()[j] != d.criteria()[j].id) {
      throw CriterionSetMismatch("weight vector criterion order differs from "
                                 "decision matrix");
    }
  }
  TopsisTrace trace{d, w, {}, {}, {}, {}, {}, {}, {}, {}};
  trace.normalized = normalize(d);
  trace.weighted = apply_weights(trace.normalized, w);
  const auto directions = d.directions();
  auto ideal = ideals(trace.weighted, directions);
  trace.ideal_positive = std::move(ideal.positive);
  trace.ideal_negative = std::move(ideal.negative);
  auto sep = separations(trace.weighted, trace.ideal_positive,
                         trace.ideal_negative);
  trace.separation_positive = std::move(sep.positive);
  trace.separation_negative = std::move(sep.negative);
  trace.closeness = closeness(trace.separation_positive,
                              trace.separation_negative);
  trace.ranking = Ranking::of(d.alternative_ids(), trace.closeness, tie_tol);
  return trace;
}

}  // namespace mcdm::topsis
