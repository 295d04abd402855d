#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "mcdm/ahp.hpp"
#include "mcdm/csv_import.hpp"
#include "mcdm/errors.hpp"
#include "mcdm/pipeline.hpp"
#include "mcdm/topsis.hpp"
#include "mcdm/types.hpp"

namespace mcdm::io {

using ordered_json = nlohmann::ordered_json;

namespace jdetail {

inline const ordered_json& require_key(const ordered_json& obj,
                                       const char* key, const char* ctx) {
  if (!obj.is_object()) {
    throw ParseError(std::string(ctx) + " must be an object");
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(std::string(ctx) + " is missing key '" + key + "'");
  }
  return *it;
}

// Accepts a JSON number or a numeric string; strings may use a decimal
// comma, matching how judgment tables are usually exported.
inline double number_from(const ordered_json& node, const char* ctx) {
  if (node.is_number()) return node.get<double>();
  if (node.is_string()) return parse_real(node.get<std::string>());
  throw ParseError(std::string(ctx) + " must be a number");
}

inline std::string string_from(const ordered_json& node, const char* ctx) {
  if (!node.is_string()) {
    throw ParseError(std::string(ctx) + " must be a string");
  }
  return node.get<std::string>();
}

inline std::vector<double> number_list_from(const ordered_json& node,
                                            const char* ctx) {
  if (!node.is_array()) {
    throw ParseError(std::string(ctx) + " must be an array of numbers");
  }
  std::vector<double> out;
  out.reserve(node.size());
  for (const auto& v : node) out.push_back(number_from(v, ctx));
  return out;
}

}  // namespace jdetail

struct AlternativeSpec {
  std::string id;
  std::string label;

  bool operator==(const AlternativeSpec&) const = default;
};

struct ExpertEntry {
  std::string id;
  std::optional<std::vector<std::vector<double>>> matrix_rows;
  std::optional<std::vector<double>> priorities;
  std::optional<double> cr;
  double weight = 1.0;

  bool operator==(const ExpertEntry&) const = default;
};

// One self-describing decision problem: criteria, expert judgments,
// alternatives, raw scores, and run configuration. Scores may cover only a
// subset of the criteria; a criterion belongs to the ranking sub-problem
// when every alternative scores it.
struct ProjectFile {
  std::vector<CriterionSpec> criteria;
  std::vector<ExpertEntry> experts;
  std::vector<AlternativeSpec> alternatives;
  // Aligned [alternative][criterion]; nullopt marks an unscored cell.
  std::vector<std::vector<std::optional<topsis::ScoreCell>>> score_cells;
  pipeline::PipelineConfig config;
  PairwiseMatrix::Options matrix_options;

  static ProjectFile from_json(const ordered_json& root);
  static ProjectFile load(const std::filesystem::path& path);
  ordered_json to_json() const;

  std::vector<std::string> criterion_ids() const {
    std::vector<std::string> out;
    out.reserve(criteria.size());
    for (const auto& c : criteria) out.push_back(c.id);
    return out;
  }

  std::size_t criterion_index(std::string_view id) const {
    for (std::size_t j = 0; j < criteria.size(); ++j) {
      if (criteria[j].id == id) return j;
    }
    throw ValidationError("unknown criterion id: " + std::string(id));
  }

  bool has_experts() const { return !experts.empty(); }
  bool has_alternatives() const { return !alternatives.empty(); }

  // Builds the validated expert panel; judgment matrices are checked here
  // (reciprocity, positivity, scale) and published vectors normalized.
  ahp::ExpertPanel panel() const {
    if (experts.empty()) {
      throw ValidationError("project declares no experts");
    }
    std::vector<ahp::ExpertJudgment> judgments;
    judgments.reserve(experts.size());
    const auto ids = criterion_ids();
    for (const auto& e : experts) {
      ahp::ExpertJudgment j;
      j.expert_id = e.id;
      j.panel_weight = e.weight;
      j.supplied_cr = e.cr;
      if (e.matrix_rows) {
        j.matrix =
            PairwiseMatrix::validated(*e.matrix_rows, ids, matrix_options);
      }
      if (e.priorities) {
        j.supplied_priorities = PriorityVector::published(*e.priorities, ids);
      }
      judgments.push_back(std::move(j));
    }
    return ahp::ExpertPanel::validated(std::move(judgments));
  }

  // Criteria scored for every alternative, in declared order.
  std::vector<std::string> scored_criterion_ids() const {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < criteria.size(); ++j) {
      bool full = !alternatives.empty();
      for (std::size_t i = 0; i < alternatives.size(); ++i) {
        if (!score_cells[i][j]) {
          full = false;
          break;
        }
      }
      if (full) out.push_back(criteria[j].id);
    }
    return out;
  }

  // Dense score table over the given criteria; a missing cell is an error.
  topsis::ScoreTable score_table(
      std::span<const std::string> wanted_criteria) const {
    if (alternatives.empty()) {
      throw ValidationError("project declares no alternatives");
    }
    topsis::ScoreTable table;
    for (const auto& a : alternatives) table.alternative_ids.push_back(a.id);
    std::vector<std::size_t> picks;
    for (const auto& id : wanted_criteria) {
      const auto j = criterion_index(id);
      picks.push_back(j);
      table.criteria.push_back(criteria[j]);
    }
    for (std::size_t i = 0; i < alternatives.size(); ++i) {
      std::vector<topsis::ScoreCell> row;
      row.reserve(picks.size());
      for (std::size_t j : picks) {
        if (!score_cells[i][j]) {
          throw EmptyCell(alternatives[i].id, criteria[j].id);
        }
        row.push_back(*score_cells[i][j]);
      }
      table.cells.push_back(std::move(row));
    }
    return table;
  }

  topsis::ScoreTable full_score_table() const {
    auto ids = scored_criterion_ids();
    if (ids.empty()) {
      throw ValidationError(
          "no criterion is scored for every alternative; nothing to rank");
    }
    return score_table(ids);
  }
};

namespace jdetail {

inline pipeline::PipelineConfig config_from_json(const ordered_json& node) {
  pipeline::PipelineConfig cfg;
  if (node.is_null()) return cfg;
  if (!node.is_object()) throw ParseError("'config' must be an object");
  if (auto it = node.find("weight_method"); it != node.end()) {
    cfg.weight_method = pipeline::weight_method_from_string(
        string_from(*it, "config.weight_method"));
  }
  if (auto it = node.find("aggregation"); it != node.end()) {
    cfg.aggregation = ahp::aggregation_from_string(
        string_from(*it, "config.aggregation"));
  }
  if (auto it = node.find("ri_preset"); it != node.end()) {
    cfg.ri_preset = string_from(*it, "config.ri_preset");
    ahp::RiTable::from_preset(cfg.ri_preset);  // reject unknown presets
  }
  if (auto it = node.find("custom_ri"); it != node.end()) {
    cfg.custom_ri = number_from(*it, "config.custom_ri");
  }
  if (auto it = node.find("cr_threshold"); it != node.end()) {
    cfg.cr_threshold = number_from(*it, "config.cr_threshold");
    if (!(cfg.cr_threshold > 0.0)) {
      throw ValidationError("config.cr_threshold must be > 0");
    }
  }
  if (auto it = node.find("consistency_gate"); it != node.end()) {
    cfg.gate = pipeline::gate_mode_from_string(
        string_from(*it, "config.consistency_gate"));
  }
  if (auto it = node.find("top_k"); it != node.end()) {
    if (!it->is_number_integer()) {
      throw ParseError("config.top_k must be an integer");
    }
    const auto k = it->get<long long>();
    if (k < 0) throw ValidationError("config.top_k must be >= 0");
    cfg.top_k = static_cast<std::size_t>(k);
  }
  if (auto it = node.find("topsis_weights"); it != node.end()) {
    if (it->is_string()) {
      const auto s = it->get<std::string>();
      if (s == "equal") {
        cfg.topsis_weights = pipeline::TopsisWeightPolicy::equal();
      } else if (s == "ahp") {
        cfg.topsis_weights = pipeline::TopsisWeightPolicy::ahp_renormalized();
      } else {
        throw ValidationError("config.topsis_weights must be 'equal', 'ahp', "
                              "or a weight array");
      }
    } else if (it->is_array()) {
      cfg.topsis_weights = pipeline::TopsisWeightPolicy::custom_weights(
          number_list_from(*it, "config.topsis_weights"));
    } else {
      throw ParseError("config.topsis_weights must be a string or array");
    }
  }
  if (auto it = node.find("whitening"); it != node.end()) {
    if (it->is_string()) {
      const auto s = it->get<std::string>();
      if (s == "mean") {
        cfg.whitening = topsis::WhiteningPolicy::mean();
      } else if (s == "whitening") {
        cfg.whitening = topsis::WhiteningPolicy::whitening(0.5);
      } else {
        throw ValidationError("config.whitening must be 'mean', 'whitening', "
                              "or an object with 'lambda'");
      }
    } else if (it->is_object()) {
      const double lambda =
          number_from(require_key(*it, "lambda", "config.whitening"),
                      "config.whitening.lambda");
      cfg.whitening = topsis::WhiteningPolicy::whitening(lambda);
    } else {
      throw ParseError("config.whitening must be a string or object");
    }
  }
  return cfg;
}

inline ordered_json config_to_json(const pipeline::PipelineConfig& cfg) {
  ordered_json node;
  node["weight_method"] = std::string(pipeline::to_string(cfg.weight_method));
  node["aggregation"] = std::string(ahp::to_string(cfg.aggregation));
  node["ri_preset"] = cfg.ri_preset;
  if (cfg.custom_ri) node["custom_ri"] = *cfg.custom_ri;
  node["cr_threshold"] = cfg.cr_threshold;
  node["consistency_gate"] = std::string(pipeline::to_string(cfg.gate));
  node["top_k"] = cfg.top_k;
  switch (cfg.topsis_weights.kind) {
    case pipeline::TopsisWeightPolicy::Kind::Equal:
      node["topsis_weights"] = "equal";
      break;
    case pipeline::TopsisWeightPolicy::Kind::AhpRenormalized:
      node["topsis_weights"] = "ahp";
      break;
    case pipeline::TopsisWeightPolicy::Kind::Custom:
      node["topsis_weights"] = cfg.topsis_weights.custom;
      break;
  }
  if (cfg.whitening.kind == topsis::WhiteningPolicy::Kind::Mean) {
    node["whitening"] = "mean";
  } else {
    node["whitening"] = ordered_json{{"lambda", cfg.whitening.lambda}};
  }
  return node;
}

}  // namespace jdetail

inline ProjectFile ProjectFile::from_json(const ordered_json& root) {
  if (!root.is_object()) {
    throw ParseError("project root must be a JSON object");
  }
  ProjectFile project;

  // criteria
  const auto& criteria_node = jdetail::require_key(root, "criteria", "project");
  if (!criteria_node.is_array() || criteria_node.empty()) {
    throw ParseError("'criteria' must be a nonempty array");
  }
  for (const auto& c : criteria_node) {
    CriterionSpec spec;
    spec.id = jdetail::string_from(jdetail::require_key(c, "id", "criterion"),
                                   "criterion.id");
    spec.label = c.contains("label")
                     ? jdetail::string_from(c["label"], "criterion.label")
                     : spec.id;
    if (c.contains("direction")) {
      spec.direction = direction_from_string(
          jdetail::string_from(c["direction"], "criterion.direction"));
    }
    project.criteria.push_back(std::move(spec));
  }
  mcdm::detail::require_unique_nonempty_ids(project.criterion_ids(),
                                            "criterion");
  const std::size_t n = project.criteria.size();

  // config (needed before experts for matrix options)
  project.config = jdetail::config_from_json(
      root.contains("config") ? root["config"] : ordered_json());
  if (root.contains("config") && root["config"].is_object()) {
    const auto& cnode = root["config"];
    if (auto it = cnode.find("saaty_scale_enforcement"); it != cnode.end()) {
      if (!it->is_boolean()) {
        throw ParseError("config.saaty_scale_enforcement must be a boolean");
      }
      project.matrix_options.enforce_saaty_scale = it->get<bool>();
    }
    if (auto it = cnode.find("reciprocity_tolerance"); it != cnode.end()) {
      project.matrix_options.reciprocity_tol =
          jdetail::number_from(*it, "config.reciprocity_tolerance");
    }
  }

  // experts
  if (root.contains("experts")) {
    const auto& experts_node = root["experts"];
    if (!experts_node.is_array()) {
      throw ParseError("'experts' must be an array");
    }
    for (const auto& e : experts_node) {
      ExpertEntry entry;
      entry.id = jdetail::string_from(jdetail::require_key(e, "id", "expert"),
                                      "expert.id");
      const bool has_matrix = e.contains("matrix");
      const bool has_priorities = e.contains("priorities");
      if (has_matrix == has_priorities) {
        throw ParseError("expert '" + entry.id +
                         "' must have exactly one of 'matrix' or "
                         "'priorities'");
      }
      if (has_matrix) {
        const auto& mnode = e["matrix"];
        if (!mnode.is_array() || mnode.empty()) {
          throw ParseError("expert matrix must be a nonempty array");
        }
        std::vector<std::vector<double>> rows;
        if (mnode.front().is_array()) {
          for (const auto& r : mnode) {
            rows.push_back(jdetail::number_list_from(r, "matrix row"));
          }
        } else {
          // Flat row-major list.
          auto flat = jdetail::number_list_from(mnode, "matrix");
          if (flat.size() != n * n) {
            throw ValidationError("flat matrix for expert '" + entry.id +
                                  "' has " + std::to_string(flat.size()) +
                                  " entries, expected " +
                                  std::to_string(n * n));
          }
          for (std::size_t i = 0; i < n; ++i) {
            rows.emplace_back(flat.begin() + static_cast<long>(i * n),
                              flat.begin() + static_cast<long>((i + 1) * n));
          }
        }
        entry.matrix_rows = std::move(rows);
      }
      if (has_priorities) {
        entry.priorities =
            jdetail::number_list_from(e["priorities"], "expert priorities");
      }
      if (e.contains("cr")) {
        entry.cr = jdetail::number_from(e["cr"], "expert.cr");
      }
      if (e.contains("weight")) {
        entry.weight = jdetail::number_from(e["weight"], "expert.weight");
      }
      project.experts.push_back(std::move(entry));
    }
  }

  // alternatives
  if (root.contains("alternatives")) {
    const auto& alts_node = root["alternatives"];
    if (!alts_node.is_array()) {
      throw ParseError("'alternatives' must be an array");
    }
    for (const auto& a : alts_node) {
      AlternativeSpec spec;
      spec.id = jdetail::string_from(
          jdetail::require_key(a, "id", "alternative"), "alternative.id");
      spec.label = a.contains("label")
                       ? jdetail::string_from(a["label"], "alternative.label")
                       : spec.id;
      project.alternatives.push_back(std::move(spec));
    }
    std::vector<std::string> alt_ids;
    for (const auto& a : project.alternatives) alt_ids.push_back(a.id);
    mcdm::detail::require_unique_nonempty_ids(alt_ids, "alternative");
  }

  // scores: { "<alt-id>": { "<crit-id>": number | [numbers] } }
  project.score_cells.assign(
      project.alternatives.size(),
      std::vector<std::optional<topsis::ScoreCell>>(n));
  if (root.contains("scores")) {
    const auto& scores_node = root["scores"];
    if (!scores_node.is_object()) {
      throw ParseError("'scores' must be an object keyed by alternative id");
    }
    std::unordered_map<std::string_view, std::size_t> alt_index;
    for (std::size_t i = 0; i < project.alternatives.size(); ++i) {
      alt_index.emplace(project.alternatives[i].id, i);
    }
    for (const auto& [alt_id, per_criterion] : scores_node.items()) {
      auto it = alt_index.find(alt_id);
      if (it == alt_index.end()) {
        throw ValidationError("scores reference undeclared alternative '" +
                              alt_id + "'");
      }
      if (!per_criterion.is_object()) {
        throw ParseError("scores for '" + alt_id +
                         "' must be an object keyed by criterion id");
      }
      for (const auto& [crit_id, cell_node] : per_criterion.items()) {
        const auto j = project.criterion_index(crit_id);  // validates id
        topsis::ScoreCell cell;
        if (cell_node.is_array()) {
          cell = jdetail::number_list_from(cell_node, "score cell");
        } else {
          cell.push_back(jdetail::number_from(cell_node, "score cell"));
        }
        if (cell.empty()) {
          throw ValidationError("score cell for ('" + alt_id + "', '" +
                                crit_id + "') is empty");
        }
        project.score_cells[it->second][j] = std::move(cell);
      }
    }
  }

  return project;
}

inline ProjectFile ProjectFile::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open project file: " + path.string());
  }
  ordered_json root;
  try {
    root = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return from_json(root);
}

inline ordered_json ProjectFile::to_json() const {
  ordered_json root;
  root["criteria"] = ordered_json::array();
  for (const auto& c : criteria) {
    root["criteria"].push_back(
        ordered_json{{"id", c.id},
                     {"label", c.label},
                     {"direction", std::string(to_string(c.direction))}});
  }
  root["experts"] = ordered_json::array();
  for (const auto& e : experts) {
    ordered_json node{{"id", e.id}};
    if (e.matrix_rows) node["matrix"] = *e.matrix_rows;
    if (e.priorities) node["priorities"] = *e.priorities;
    if (e.cr) node["cr"] = *e.cr;
    if (e.weight != 1.0) node["weight"] = e.weight;
    root["experts"].push_back(std::move(node));
  }
  root["alternatives"] = ordered_json::array();
  for (const auto& a : alternatives) {
    root["alternatives"].push_back(
        ordered_json{{"id", a.id}, {"label", a.label}});
  }
  ordered_json scores = ordered_json::object();
  for (std::size_t i = 0; i < alternatives.size(); ++i) {
    ordered_json per_criterion = ordered_json::object();
    for (std::size_t j = 0; j < criteria.size(); ++j) {
      if (score_cells[i][j]) per_criterion[criteria[j].id] = *score_cells[i][j];
    }
    if (!per_criterion.empty()) scores[alternatives[i].id] = per_criterion;
  }
  root["scores"] = std::move(scores);
  root["config"] = jdetail::config_to_json(config);
  if (matrix_options.enforce_saaty_scale) {
    root["config"]["saaty_scale_enforcement"] = true;
  }
  if (matrix_options.reciprocity_tol != PairwiseMatrix::Options{}.reciprocity_tol) {
    root["config"]["reciprocity_tolerance"] = matrix_options.reciprocity_tol;
  }
  return root;
}

}  // namespace mcdm::io
