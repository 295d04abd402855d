#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mcdm/ahp.hpp"
#include "mcdm/errors.hpp"
#include "mcdm/topsis.hpp"
#include "mcdm/types.hpp"

namespace mcdm::pipeline {

enum class WeightMethod { RowAverage, Eigenvector };

inline std::string_view to_string(WeightMethod m) {
  return m == WeightMethod::RowAverage ? "row-average" : "eigenvector";
}

inline WeightMethod weight_method_from_string(std::string_view s) {
  if (s == "row-average") return WeightMethod::RowAverage;
  if (s == "eigenvector") return WeightMethod::Eigenvector;
  throw ValidationError("unknown weight method '" + std::string(s) + "'");
}

enum class GateMode { HardFail, WarningsOnly };

inline std::string_view to_string(GateMode g) {
  return g == GateMode::HardFail ? "hard-fail" : "warnings-only";
}

inline GateMode gate_mode_from_string(std::string_view s) {
  if (s == "hard-fail") return GateMode::HardFail;
  if (s == "warnings-only") return GateMode::WarningsOnly;
  throw ValidationError("unknown consistency gate mode '" + std::string(s) +
                        "'");
}

struct TopsisWeightPolicy {
  enum class Kind { Equal, AhpRenormalized, Custom };

  Kind kind = Kind::Equal;
  std::vector<double> custom;

  static TopsisWeightPolicy equal() { return {Kind::Equal, {}}; }
  static TopsisWeightPolicy ahp_renormalized() {
    return {Kind::AhpRenormalized, {}};
  }
  static TopsisWeightPolicy custom_weights(std::vector<double> w) {
    if (w.empty()) throw EmptySubset("custom weight list must not be empty");
    return {Kind::Custom, std::move(w)};
  }

  bool operator==(const TopsisWeightPolicy&) const = default;
};

struct PipelineConfig {
  WeightMethod weight_method = WeightMethod::RowAverage;
  ahp::Aggregation aggregation = ahp::Aggregation::ArithmeticMean;
  std::string ri_preset = "paper-table2";
  std::optional<double> custom_ri;  // required for orders beyond the presets
  double cr_threshold = 0.1;
  GateMode gate = GateMode::HardFail;
  std::size_t top_k = 0;  // 0 = keep every criterion
  TopsisWeightPolicy topsis_weights = TopsisWeightPolicy::equal();
  topsis::WhiteningPolicy whitening = topsis::WhiteningPolicy::mean();

  bool operator==(const PipelineConfig&) const = default;
};

// Per-expert phase-1 outcome. Vector-supplied experts carry no derivable
// consistency report; their CR, when present, was taken on trust.
struct ExpertResult {
  std::string expert_id;
  bool from_matrix = false;
  PriorityVector priorities;
  std::optional<ConsistencyReport> consistency;  // matrix experts only
  std::optional<double> trusted_cr;              // vector experts only

  std::optional<double> cr() const {
    if (consistency) return consistency->cr;
    return trusted_cr;
  }
};

struct Provenance {
  std::string tool_name;
  std::string tool_version;
  bool vectors_supplied = false;   // some experts came without matrices
  bool gate_bypassed = false;      // warnings-only mode let failures through
  std::vector<std::string> gate_failures;  // expert ids with CR >= threshold
  bool tie_straddles_cut = false;  // top-k cut fell inside a tie group

  bool operator==(const Provenance&) const = default;
};

struct PipelineReport {
  PipelineConfig config;
  std::vector<ExpertResult> experts;
  PriorityVector aggregated;
  Ranking criteria_ranking;
  std::vector<std::string> selected_criteria;
  topsis::TopsisTrace trace;
  Provenance provenance;
};

struct Selection {
  std::vector<std::string> ids;
  bool tie_straddles_cut = false;
};

// First k criteria of the ranking. Tie groups keep input order, so a group
// straddling the cut is taken in input order and flagged rather than
// silently resolved.
inline Selection select_top_k(const Ranking& r, std::size_t k) {
  if (k < 1 || k > r.items.size()) {
    throw KTooLarge("top-k of " + std::to_string(k) +
                    " outside 1.." + std::to_string(r.items.size()));
  }
  Selection out;
  out.ids.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.ids.push_back(r.items[i].id);
  if (k < r.items.size()) {
    out.tie_straddles_cut =
        r.same_tie_group(r.items[k - 1].id, r.items[k].id);
  }
  return out;
}

// Restrict a priority vector to a criterion subset and rescale to sum 1.
inline WeightVector renormalize_weights(const PriorityVector& w,
                                        std::span<const std::string> subset) {
  if (subset.empty()) {
    throw EmptySubset("criterion subset must not be empty");
  }
  const auto& ids = w.criterion_ids();
  std::vector<double> restricted;
  restricted.reserve(subset.size());
  for (const auto& id : subset) {
    auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end()) {
      throw CriterionSetMismatch("criterion '" + id +
                                 "' not present in the priority vector");
    }
    restricted.push_back(w.weights()[static_cast<std::size_t>(
        std::distance(ids.begin(), it))]);
  }
  return WeightVector::normalized(std::move(restricted),
                                  {subset.begin(), subset.end()});
}

// Phase-1 evaluation of a single expert: derive priorities from the matrix
// (or adopt the supplied vector) and attach the consistency evidence.
inline ExpertResult evaluate_expert(const ahp::ExpertJudgment& judgment,
                                    const PipelineConfig& cfg) {
  if (judgment.matrix) {
    const auto& m = *judgment.matrix;
    auto w = cfg.weight_method == WeightMethod::RowAverage
                 ? ahp::priority_row_average(m)
                 : ahp::priority_eigenvector(m);
    const auto& table = ahp::RiTable::from_preset(cfg.ri_preset);
    auto report =
        cfg.custom_ri && !table.covers(m.order())
            ? ahp::consistency_with_ri(m, w, *cfg.custom_ri, "custom",
                                       cfg.cr_threshold)
            : ahp::consistency(m, w, table, cfg.cr_threshold);
    return ExpertResult{judgment.expert_id, true, std::move(w),
                        std::move(report), std::nullopt};
  }
  return ExpertResult{judgment.expert_id, false, *judgment.supplied_priorities,
                      std::nullopt, judgment.supplied_cr};
}

// Restrict a score table to a criterion subset, preserving subset order.
inline topsis::ScoreTable restrict_scores(
    const topsis::ScoreTable& scores, std::span<const std::string> subset) {
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t j = 0; j < scores.criteria.size(); ++j) {
    index.emplace(scores.criteria[j].id, j);
  }
  topsis::ScoreTable out;
  out.alternative_ids = scores.alternative_ids;
  std::vector<std::size_t> picks;
  picks.reserve(subset.size());
  for (const auto& id : subset) {
    auto it = index.find(id);
    if (it == index.end()) {
      throw CriterionSetMismatch("criterion '" + id +
                                 "' has no score column");
    }
    picks.push_back(it->second);
    out.criteria.push_back(scores.criteria[it->second]);
  }
  out.cells.reserve(scores.cells.size());
  for (const auto& row : scores.cells) {
    std::vector<topsis::ScoreCell> restricted_row;
    restricted_row.reserve(picks.size());
    for (std::size_t j : picks) restricted_row.push_back(row[j]);
    out.cells.push_back(std::move(restricted_row));
  }
  return out;
}

// Two-phase run: per-expert AHP -> consistency gate -> aggregation ->
// criteria ranking -> top-k selection -> whitening -> TOPSIS. The report is
// a pure function of inputs and config; no stage applies math of its own.
inline PipelineReport run_pipeline(const ahp::ExpertPanel& panel,
                                   const topsis::ScoreTable& scores,
                                   const PipelineConfig& cfg,
                                   std::string_view tool_name = "mcdm",
                                   std::string_view tool_version = "0") {
  if (!(cfg.cr_threshold > 0.0)) {
    throw ValidationError("cr_threshold must be > 0");
  }
  const std::size_t n = panel.criterion_count();
  const std::size_t k = cfg.top_k == 0 ? n : cfg.top_k;
  if (k < 1 || k > n) {
    throw KTooLarge("top_k of " + std::to_string(k) + " outside 1.." +
                    std::to_string(n));
  }

  Provenance provenance{std::string(tool_name), std::string(tool_version)};

  // Phase 1: per-expert priorities and consistency.
  std::vector<ExpertResult> experts;
  experts.reserve(panel.experts().size());
  std::vector<std::pair<std::string, double>> failing;
  for (const auto& judgment : panel.experts()) {
    auto result = evaluate_expert(judgment, cfg);
    if (!result.from_matrix) provenance.vectors_supplied = true;
    const auto cr = result.cr();
    // A vector expert without a trusted CR cannot be verified against the
    // gate; hard-fail mode treats that as a failure.
    const bool passes = cr.has_value() && *cr < cfg.cr_threshold;
    if (!passes) {
      failing.emplace_back(
          result.expert_id,
          cr.value_or(std::numeric_limits<double>::quiet_NaN()));
      provenance.gate_failures.push_back(result.expert_id);
    }
    experts.push_back(std::move(result));
  }
  if (!failing.empty()) {
    if (cfg.gate == GateMode::HardFail) throw ConsistencyGateFailed(failing);
    provenance.gate_bypassed = true;
  }

  // Aggregation and criteria ranking.
  std::vector<PriorityVector> vectors;
  std::vector<double> expert_weights;
  vectors.reserve(experts.size());
  for (std::size_t e = 0; e < experts.size(); ++e) {
    vectors.push_back(experts[e].priorities);
    expert_weights.push_back(panel.experts()[e].panel_weight);
  }
  auto aggregated = ahp::aggregate_expert_priorities(vectors, cfg.aggregation,
                                                     expert_weights);
  auto criteria_ranking = ahp::rank_criteria(aggregated);

  // Selection and phase 2.
  auto selection = select_top_k(criteria_ranking, k);
  provenance.tie_straddles_cut = selection.tie_straddles_cut;

  auto restricted = restrict_scores(scores, selection.ids);
  auto decision = topsis::whiten_scores(restricted, cfg.whitening);

  WeightVector weights = [&] {
    switch (cfg.topsis_weights.kind) {
      case TopsisWeightPolicy::Kind::Equal:
        return WeightVector::equal(selection.ids);
      case TopsisWeightPolicy::Kind::AhpRenormalized:
        return renormalize_weights(aggregated, selection.ids);
      case TopsisWeightPolicy::Kind::Custom:
      default:
        if (cfg.topsis_weights.custom.size() != selection.ids.size()) {
          throw DimensionMismatch(
              "custom weight list has " +
              std::to_string(cfg.topsis_weights.custom.size()) +
              " entries for " + std::to_string(selection.ids.size()) +
              " selected criteria");
        }
        return WeightVector::normalized(cfg.topsis_weights.custom,
                                        selection.ids);
    }
  }();

  auto trace = topsis::run_topsis(decision, weights);
  return PipelineReport{cfg,
                        std::move(experts),
                        std::move(aggregated),
                        std::move(criteria_ranking),
                        std::move(selection.ids),
                        std::move(trace),
                        std::move(provenance)};
}

}  // namespace mcdm::pipeline
