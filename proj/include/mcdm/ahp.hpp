#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mcdm/errors.hpp"
#include "mcdm/types.hpp"

namespace mcdm::ahp {

// Random consistency index, keyed by matrix order.
//
// Two presets ship. "paper-table2" carries the published calibration values;
// "saaty-classic" carries Saaty's two-decimal classics (1.49 at order 10),
// which is what the worked appendix arithmetic implies. Reports always record
// which preset produced a CR.
class RiTable {
 public:
  static RiTable validated(std::string preset_id,
                           std::map<std::size_t, double> values) {
    double prev = 0.0;
    for (const auto& [n, ri] : values) {
      if (ri < 0.0 || !std::isfinite(ri)) {
        throw ValidationError("RI values must be finite and >= 0");
      }
      if (n <= 2 && ri != 0.0) {
        throw ValidationError("RI must be 0 for orders 1 and 2");
      }
      if (ri < prev) {
        throw ValidationError("RI values must be nondecreasing in order");
      }
      prev = ri;
    }
    return RiTable(std::move(preset_id), std::move(values));
  }

  static const RiTable& paper_table2() {
    static const RiTable table = validated(
        "paper-table2",
        {{1, 0.0}, {2, 0.0}, {3, 0.5799}, {4, 0.8921}, {5, 1.1159},
         {6, 1.2358}, {7, 1.3322}, {8, 1.3952}, {9, 1.4537}, {10, 1.4882}});
    return table;
  }

  static const RiTable& saaty_classic() {
    static const RiTable table = validated(
        "saaty-classic",
        {{1, 0.0}, {2, 0.0}, {3, 0.58}, {4, 0.90}, {5, 1.12},
         {6, 1.24}, {7, 1.32}, {8, 1.41}, {9, 1.45}, {10, 1.49}});
    return table;
  }

  static const RiTable& from_preset(std::string_view name) {
    if (name == "paper-table2") return paper_table2();
    if (name == "saaty-classic") return saaty_classic();
    throw ValidationError("unknown RI preset '" + std::string(name) +
                          "' (expected 'paper-table2' or 'saaty-classic')");
  }

  const std::string& preset_id() const { return preset_id_; }

  double value_for(std::size_t order) const {
    auto it = values_.find(order);
    if (it == values_.end()) throw MissingRiEntry(order);
    return it->second;
  }

  bool covers(std::size_t order) const { return values_.contains(order); }

 private:
  RiTable(std::string preset_id, std::map<std::size_t, double> values)
      : preset_id_(std::move(preset_id)), values_(std::move(values)) {}

  std::string preset_id_;
  std::map<std::size_t, double> values_;
};

// Judgment matrix divided through by its column sums (the "normalized
// pairwise comparison matrix").
inline std::vector<std::vector<double>> column_normalized(
    const PairwiseMatrix& m) {
  const std::size_t n = m.order();
  std::vector<double> colsum(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) colsum[j] += m.at(i, j);
  }
  std::vector<std::vector<double>> out(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i][j] = m.at(i, j) / colsum[j];
  }
  return out;
}

// Column-normalize, then average each row. This is the only derivation whose
// intermediate values are published, so it is the reproduction default.
inline PriorityVector priority_row_average(const PairwiseMatrix& m) {
  const std::size_t n = m.order();
  const auto norm = column_normalized(m);
  std::vector<double> w(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += norm[i][j];
    w[i] = sum / static_cast<double>(n);
  }
  return PriorityVector::normalized(std::move(w), m.criterion_ids());
}

// Principal right eigenvector via power iteration with sum normalization.
// Positive matrices converge to the Perron vector; the iteration stops once
// successive normalized iterates agree within tol in max-norm.
inline PriorityVector priority_eigenvector(const PairwiseMatrix& m,
                                           double tol = 1e-10,
                                           int max_iter = 1000) {
  if (!(tol > 0.0)) throw ValidationError("eigenvector tol must be > 0");
  if (max_iter < 1) throw ValidationError("max_iter must be >= 1");
  const std::size_t n = m.order();
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> y(n);
  double delta = 0.0;
  for (int iter = 0; iter < max_iter; ++iter) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += m.at(i, j) * x[j];
      y[i] = acc;
      sum += acc;
    }
    delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= sum;
      delta = std::max(delta, std::abs(y[i] - x[i]));
    }
    x.swap(y);
    if (delta < tol) {
      return PriorityVector::normalized(std::move(x), m.criterion_ids());
    }
  }
  throw NoConvergence(max_iter, delta);
}

// Averaged-ratio estimate of the principal eigenvalue:
// mean over i of (A*w)_i / w_i. At the exact eigenvector every ratio equals
// the eigenvalue; for row-average weights this is the estimator whose value
// the published worked example reports.
inline double lambda_max(const PairwiseMatrix& m, const PriorityVector& w) {
  const std::size_t n = m.order();
  if (w.size() != n) {
    throw DimensionMismatch("priority vector size " + std::to_string(w.size()) +
                            " does not match matrix order " +
                            std::to_string(n));
  }
  const auto& weights = w.weights();
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (weights[i] == 0.0) {
      throw ZeroWeightComponent("priority component " + std::to_string(i) +
                                " is zero; ratio undefined");
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += m.at(i, j) * weights[j];
    mean += acc / weights[i];
  }
  return mean / static_cast<double>(n);
}

inline ConsistencyReport consistency_with_ri(const PairwiseMatrix& m,
                                             const PriorityVector& w,
                                             double ri_value,
                                             std::string ri_label,
                                             double threshold = 0.1) {
  if (!(threshold > 0.0)) throw ValidationError("CR threshold must be > 0");
  if (ri_value < 0.0 || !std::isfinite(ri_value)) {
    throw ValidationError("RI value must be finite and >= 0");
  }
  const auto n = static_cast<double>(m.order());
  ConsistencyReport report;
  report.lambda_max = lambda_max(m, w);
  report.ci = (report.lambda_max - n) / (n - 1.0);
  report.ri = ri_value;
  report.cr = ri_value == 0.0 ? 0.0 : report.ci / ri_value;
  report.ri_preset = std::move(ri_label);
  report.acceptable = report.cr < threshold;
  return report;
}

inline ConsistencyReport consistency(const PairwiseMatrix& m,
                                     const PriorityVector& w,
                                     const RiTable& ri,
                                     double threshold = 0.1) {
  return consistency_with_ri(m, w, ri.value_for(m.order()), ri.preset_id(),
                             threshold);
}

enum class Aggregation { ArithmeticMean, GeometricMean };

inline std::string_view to_string(Aggregation a) {
  return a == Aggregation::ArithmeticMean ? "arithmetic-mean"
                                          : "geometric-mean";
}

inline Aggregation aggregation_from_string(std::string_view s) {
  if (s == "arithmetic-mean") return Aggregation::ArithmeticMean;
  if (s == "geometric-mean") return Aggregation::GeometricMean;
  throw ValidationError("unknown aggregation '" + std::string(s) + "'");
}

// Combine per-expert priority vectors into a group vector. Expert weights
// default to equal; the result is renormalized to sum 1.
inline PriorityVector aggregate_expert_priorities(
    std::span<const PriorityVector> vectors, Aggregation method,
    std::span<const double> expert_weights = {}) {
  if (vectors.empty()) {
    throw EmptySubset("need at least one priority vector to aggregate");
  }
  const auto& ids = vectors.front().criterion_ids();
  for (const auto& v : vectors) {
    if (v.criterion_ids() != ids) {
      throw CriterionSetMismatch(
          "expert priority vectors cover different criterion sets");
    }
  }
  std::vector<double> u(vectors.size(), 1.0);
  if (!expert_weights.empty()) {
    if (expert_weights.size() != vectors.size()) {
      throw DimensionMismatch("got " + std::to_string(expert_weights.size()) +
                              " expert weights for " +
                              std::to_string(vectors.size()) + " vectors");
    }
    for (std::size_t e = 0; e < u.size(); ++e) {
      if (!(expert_weights[e] > 0.0) || !std::isfinite(expert_weights[e])) {
        throw ValidationError("expert weights must be positive finite reals");
      }
      u[e] = expert_weights[e];
    }
  }
  double total_u = 0.0;
  for (double v : u) total_u += v;

  const std::size_t n = ids.size();
  std::vector<double> out(n, 0.0);
  if (method == Aggregation::ArithmeticMean) {
    for (std::size_t e = 0; e < vectors.size(); ++e) {
      const auto& w = vectors[e].weights();
      for (std::size_t i = 0; i < n; ++i) out[i] += u[e] * w[i];
    }
    for (auto& v : out) v /= total_u;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      double log_acc = 0.0;
      bool has_zero = false;
      for (std::size_t e = 0; e < vectors.size(); ++e) {
        const double w = vectors[e].weights()[i];
        if (w == 0.0) {
          has_zero = true;
          break;
        }
        log_acc += u[e] * std::log(w);
      }
      out[i] = has_zero ? 0.0 : std::exp(log_acc / total_u);
    }
  }
  return PriorityVector::normalized(std::move(out), ids);
}

inline Ranking rank_criteria(const PriorityVector& w,
                             double tie_tol = Ranking::kDefaultTieTol) {
  return Ranking::of(w.criterion_ids(), w.weights(), tie_tol);
}

// One expert's judgment: either a full pairwise matrix, or an
// already-derived priority vector published without its matrix (in which
// case the consistency ratio, if any, is taken on trust).
struct ExpertJudgment {
  std::string expert_id;
  std::optional<PairwiseMatrix> matrix;
  std::optional<PriorityVector> supplied_priorities;
  std::optional<double> supplied_cr;
  double panel_weight = 1.0;
};

class ExpertPanel {
 public:
  static ExpertPanel validated(std::vector<ExpertJudgment> experts) {
    if (experts.empty()) {
      throw ValidationError("expert panel must not be empty");
    }
    std::vector<std::string> expert_ids;
    expert_ids.reserve(experts.size());
    const std::vector<std::string>* shared_ids = nullptr;
    for (const auto& e : experts) {
      expert_ids.push_back(e.expert_id);
      const bool has_matrix = e.matrix.has_value();
      const bool has_vector = e.supplied_priorities.has_value();
      if (has_matrix == has_vector) {
        throw ValidationError("expert '" + e.expert_id +
                              "' must supply exactly one of a pairwise "
                              "matrix or a priority vector");
      }
      if (e.supplied_cr && !has_vector) {
        throw ValidationError("expert '" + e.expert_id +
                              "' supplies a trusted CR without priorities");
      }
      if (!(e.panel_weight > 0.0) || !std::isfinite(e.panel_weight)) {
        throw ValidationError("expert '" + e.expert_id +
                              "' has a non-positive panel weight");
      }
      const auto& ids = has_matrix ? e.matrix->criterion_ids()
                                   : e.supplied_priorities->criterion_ids();
      if (shared_ids == nullptr) {
        shared_ids = &ids;
      } else if (ids != *shared_ids) {
        throw CriterionSetMismatch("expert '" + e.expert_id +
                                   "' covers a different criterion set");
      }
    }
    detail::require_unique_nonempty_ids(expert_ids, "expert");
    return ExpertPanel(std::move(experts));
  }

  const std::vector<ExpertJudgment>& experts() const { return experts_; }
  const std::vector<std::string>& criterion_ids() const {
    const auto& e = experts_.front();
    return e.matrix ? e.matrix->criterion_ids()
                    : e.supplied_priorities->criterion_ids();
  }
  std::size_t criterion_count() const { return criterion_ids().size(); }

 private:
  explicit ExpertPanel(std::vector<ExpertJudgment> experts)
      : experts_(std::move(experts)) {}

  std::vector<ExpertJudgment> experts_;
};

}  // namespace mcdm::ahp
