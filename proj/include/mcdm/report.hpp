#pragma once

#include <cmath>
#include <cstdio>
#include <cstddef>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "mcdm/errors.hpp"
#include "mcdm/pipeline.hpp"
#include "mcdm/project_file.hpp"
#include "mcdm/topsis.hpp"
#include "mcdm/types.hpp"

namespace mcdm::io {

// Half-up fixed 3-decimal rendering used by every human-readable table.
// Structured output carries full precision; this is presentation only.
inline std::string format_3dp(double v) {
  const double magnitude = std::floor(std::abs(v) * 1000.0 + 0.5) / 1000.0;
  const double rounded = (v < 0.0 && magnitude > 0.0) ? -magnitude : magnitude;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", rounded);
  return buf;
}

// Plain left-aligned column layout.
class TextTable {
 public:
  void add_row(std::vector<std::string> cells) {
    rows_.push_back(std::move(cells));
  }

  std::string str() const {
    std::vector<std::size_t> widths;
    for (const auto& row : rows_) {
      if (row.size() > widths.size()) widths.resize(row.size(), 0);
      for (std::size_t c = 0; c < row.size(); ++c) {
        widths[c] = std::max(widths[c], row[c].size());
      }
    }
    std::ostringstream os;
    for (const auto& row : rows_) {
      std::string line = "  ";
      for (std::size_t c = 0; c < row.size(); ++c) {
        line += row[c];
        if (c + 1 < row.size()) {
          line.append(widths[c] - row[c].size() + 2, ' ');
        }
      }
      os << line << '\n';
    }
    return os.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

namespace jdetail {

inline ordered_json ranking_to_json(const Ranking& r) {
  ordered_json node;
  node["items"] = ordered_json::array();
  for (const auto& item : r.items) {
    node["items"].push_back(ordered_json{
        {"id", item.id}, {"score", item.score}, {"rank", item.rank}});
  }
  node["tie_groups"] = r.tie_groups;
  return node;
}

inline Ranking ranking_from_json(const ordered_json& node) {
  Ranking out;
  for (const auto& item : require_key(node, "items", "ranking")) {
    out.items.push_back(RankedItem{
        string_from(require_key(item, "id", "ranking item"), "ranking id"),
        number_from(require_key(item, "score", "ranking item"),
                    "ranking score"),
        static_cast<int>(require_key(item, "rank", "ranking item")
                             .get<long long>())});
  }
  if (node.contains("tie_groups")) {
    for (const auto& group : node["tie_groups"]) {
      std::vector<std::string> ids;
      for (const auto& id : group) ids.push_back(id.get<std::string>());
      out.tie_groups.push_back(std::move(ids));
    }
  }
  return out;
}

inline ordered_json criteria_to_json(std::span<const CriterionSpec> criteria) {
  ordered_json node = ordered_json::array();
  for (const auto& c : criteria) {
    node.push_back(ordered_json{{"id", c.id},
                                {"label", c.label},
                                {"direction", std::string(to_string(c.direction))}});
  }
  return node;
}

inline std::vector<CriterionSpec> criteria_from_json(const ordered_json& node) {
  std::vector<CriterionSpec> out;
  for (const auto& c : node) {
    out.push_back(CriterionSpec{
        string_from(require_key(c, "id", "criterion"), "criterion.id"),
        string_from(require_key(c, "label", "criterion"), "criterion.label"),
        direction_from_string(string_from(
            require_key(c, "direction", "criterion"), "criterion.direction"))});
  }
  return out;
}

}  // namespace jdetail

inline ordered_json report_to_json(const pipeline::PipelineReport& r) {
  ordered_json root;
  root["tool"] = ordered_json{{"name", r.provenance.tool_name},
                              {"version", r.provenance.tool_version}};
  root["config"] = jdetail::config_to_json(r.config);
  root["provenance"] =
      ordered_json{{"vectors_supplied", r.provenance.vectors_supplied},
                   {"gate_bypassed", r.provenance.gate_bypassed},
                   {"gate_failures", r.provenance.gate_failures},
                   {"tie_straddles_cut", r.provenance.tie_straddles_cut}};

  root["experts"] = ordered_json::array();
  for (const auto& e : r.experts) {
    ordered_json node;
    node["id"] = e.expert_id;
    node["source"] = e.from_matrix ? "matrix" : "priorities";
    node["criterion_ids"] = e.priorities.criterion_ids();
    node["priorities"] = e.priorities.weights();
    if (e.consistency) {
      node["consistency"] =
          ordered_json{{"lambda_max", e.consistency->lambda_max},
                       {"ci", e.consistency->ci},
                       {"ri", e.consistency->ri},
                       {"cr", e.consistency->cr},
                       {"ri_preset", e.consistency->ri_preset},
                       {"acceptable", e.consistency->acceptable}};
    }
    if (e.trusted_cr) node["trusted_cr"] = *e.trusted_cr;
    root["experts"].push_back(std::move(node));
  }

  root["aggregated_weights"] =
      ordered_json{{"criterion_ids", r.aggregated.criterion_ids()},
                   {"weights", r.aggregated.weights()}};
  root["criteria_ranking"] = jdetail::ranking_to_json(r.criteria_ranking);
  root["selected_criteria"] = r.selected_criteria;

  ordered_json t;
  t["alternative_ids"] = r.trace.input.alternative_ids();
  t["criteria"] = jdetail::criteria_to_json(r.trace.input.criteria());
  t["weights"] = r.trace.weights.weights();
  t["decision_matrix"] = r.trace.input.rows();
  t["normalized"] = r.trace.normalized;
  t["weighted"] = r.trace.weighted;
  t["ideal_positive"] = r.trace.ideal_positive;
  t["ideal_negative"] = r.trace.ideal_negative;
  t["separation_positive"] = r.trace.separation_positive;
  t["separation_negative"] = r.trace.separation_negative;
  t["closeness"] = r.trace.closeness;
  t["ranking"] = jdetail::ranking_to_json(r.trace.ranking);
  root["topsis"] = std::move(t);
  return root;
}

inline pipeline::PipelineReport report_from_json(const ordered_json& root) {
  using jdetail::number_from;
  using jdetail::require_key;
  using jdetail::string_from;

  auto config = jdetail::config_from_json(require_key(root, "config", "report"));

  const auto& prov_node = require_key(root, "provenance", "report");
  pipeline::Provenance provenance;
  const auto& tool_node = require_key(root, "tool", "report");
  provenance.tool_name =
      string_from(require_key(tool_node, "name", "tool"), "tool.name");
  provenance.tool_version =
      string_from(require_key(tool_node, "version", "tool"), "tool.version");
  provenance.vectors_supplied = prov_node.value("vectors_supplied", false);
  provenance.gate_bypassed = prov_node.value("gate_bypassed", false);
  provenance.tie_straddles_cut = prov_node.value("tie_straddles_cut", false);
  if (prov_node.contains("gate_failures")) {
    for (const auto& id : prov_node["gate_failures"]) {
      provenance.gate_failures.push_back(id.get<std::string>());
    }
  }

  std::vector<pipeline::ExpertResult> experts;
  for (const auto& e : require_key(root, "experts", "report")) {
    std::vector<std::string> ids;
    for (const auto& id : require_key(e, "criterion_ids", "expert")) {
      ids.push_back(id.get<std::string>());
    }
    auto weights =
        jdetail::number_list_from(require_key(e, "priorities", "expert"),
                                  "expert priorities");
    auto priorities =
        PriorityVector::published(std::move(weights), std::move(ids));
    std::optional<ConsistencyReport> consistency;
    if (e.contains("consistency")) {
      const auto& c = e["consistency"];
      consistency = ConsistencyReport{
          number_from(require_key(c, "lambda_max", "consistency"), "lambda_max"),
          number_from(require_key(c, "ci", "consistency"), "ci"),
          number_from(require_key(c, "ri", "consistency"), "ri"),
          number_from(require_key(c, "cr", "consistency"), "cr"),
          string_from(require_key(c, "ri_preset", "consistency"), "ri_preset"),
          require_key(c, "acceptable", "consistency").get<bool>()};
    }
    std::optional<double> trusted_cr;
    if (e.contains("trusted_cr")) {
      trusted_cr = number_from(e["trusted_cr"], "trusted_cr");
    }
    experts.push_back(pipeline::ExpertResult{
        string_from(require_key(e, "id", "expert"), "expert.id"),
        string_from(require_key(e, "source", "expert"), "expert.source") ==
            "matrix",
        std::move(priorities), std::move(consistency), trusted_cr});
  }

  const auto& agg_node = require_key(root, "aggregated_weights", "report");
  std::vector<std::string> agg_ids;
  for (const auto& id : require_key(agg_node, "criterion_ids", "aggregated")) {
    agg_ids.push_back(id.get<std::string>());
  }
  auto aggregated = PriorityVector::validated(
      jdetail::number_list_from(require_key(agg_node, "weights", "aggregated"),
                                "aggregated weights"),
      std::move(agg_ids));

  auto criteria_ranking =
      jdetail::ranking_from_json(require_key(root, "criteria_ranking", "report"));

  std::vector<std::string> selected;
  for (const auto& id : require_key(root, "selected_criteria", "report")) {
    selected.push_back(id.get<std::string>());
  }

  const auto& t = require_key(root, "topsis", "report");
  std::vector<std::string> alt_ids;
  for (const auto& id : require_key(t, "alternative_ids", "topsis")) {
    alt_ids.push_back(id.get<std::string>());
  }
  auto criteria =
      jdetail::criteria_from_json(require_key(t, "criteria", "topsis"));
  std::vector<std::string> crit_ids;
  for (const auto& c : criteria) crit_ids.push_back(c.id);

  auto grid_from = [](const ordered_json& node) {
    std::vector<std::vector<double>> grid;
    for (const auto& row : node) {
      grid.push_back(jdetail::number_list_from(row, "grid row"));
    }
    return grid;
  };

  auto input = DecisionMatrix::validated(
      grid_from(require_key(t, "decision_matrix", "topsis")), alt_ids,
      criteria);
  auto weights = WeightVector::validated(
      jdetail::number_list_from(require_key(t, "weights", "topsis"),
                                "topsis weights"),
      crit_ids);

  topsis::TopsisTrace trace{
      std::move(input),
      std::move(weights),
      grid_from(require_key(t, "normalized", "topsis")),
      grid_from(require_key(t, "weighted", "topsis")),
      jdetail::number_list_from(require_key(t, "ideal_positive", "topsis"),
                                "ideal_positive"),
      jdetail::number_list_from(require_key(t, "ideal_negative", "topsis"),
                                "ideal_negative"),
      jdetail::number_list_from(require_key(t, "separation_positive", "topsis"),
                                "separation_positive"),
      jdetail::number_list_from(require_key(t, "separation_negative", "topsis"),
                                "separation_negative"),
      jdetail::number_list_from(require_key(t, "closeness", "topsis"),
                                "closeness"),
      jdetail::ranking_from_json(require_key(t, "ranking", "topsis"))};

  return pipeline::PipelineReport{std::move(config),
                                  std::move(experts),
                                  std::move(aggregated),
                                  std::move(criteria_ranking),
                                  std::move(selected),
                                  std::move(trace),
                                  std::move(provenance)};
}

// ---- human-readable rendering -------------------------------------------

inline std::string render_consistency_table(
    std::span<const pipeline::ExpertResult> experts, double threshold) {
  TextTable table;
  table.add_row({"expert", "source", "lambda_max", "CI", "RI", "CR",
                 "acceptable"});
  for (const auto& e : experts) {
    std::vector<std::string> row;
    row.push_back(e.expert_id);
    row.push_back(e.from_matrix ? "matrix" : "priorities");
    if (e.consistency) {
      row.push_back(format_3dp(e.consistency->lambda_max));
      row.push_back(format_3dp(e.consistency->ci));
      row.push_back(format_3dp(e.consistency->ri) + " (" +
                    e.consistency->ri_preset + ")");
      row.push_back(format_3dp(e.consistency->cr));
      row.push_back(e.consistency->acceptable ? "yes" : "NO");
    } else if (e.trusted_cr) {
      row.push_back("-");
      row.push_back("-");
      row.push_back("-");
      row.push_back(format_3dp(*e.trusted_cr) + " (trusted)");
      row.push_back(*e.trusted_cr < threshold ? "yes" : "NO");
    } else {
      row.push_back("-");
      row.push_back("-");
      row.push_back("-");
      row.push_back("missing");
      row.push_back("NO");
    }
    table.add_row(std::move(row));
  }
  return table.str();
}

inline std::string render_ranking_table(std::string_view score_header,
                                        const Ranking& ranking) {
  TextTable table;
  table.add_row({"rank", "id", std::string(score_header)});
  for (const auto& item : ranking.items) {
    table.add_row({std::to_string(item.rank), item.id,
                   format_3dp(item.score)});
  }
  std::string out = table.str();
  for (const auto& group : ranking.tie_groups) {
    out += "  tie group:";
    for (const auto& id : group) out += " " + id;
    out += "\n";
  }
  return out;
}

inline std::string render_grid(std::span<const std::string> row_ids,
                               std::span<const std::string> col_ids,
                               const std::vector<std::vector<double>>& grid) {
  TextTable table;
  std::vector<std::string> header{""};
  header.insert(header.end(), col_ids.begin(), col_ids.end());
  table.add_row(std::move(header));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<std::string> row{row_ids[i]};
    for (double v : grid[i]) row.push_back(format_3dp(v));
    table.add_row(std::move(row));
  }
  return table.str();
}

inline std::string render_trace(const topsis::TopsisTrace& trace) {
  std::ostringstream os;
  const auto& alts = trace.input.alternative_ids();
  std::vector<std::string> crit_ids;
  for (const auto& c : trace.input.criteria()) crit_ids.push_back(c.id);

  os << "Decision matrix\n"
     << render_grid(alts, crit_ids, trace.input.rows());
  {
    TextTable weights;
    std::vector<std::string> header{""};
    header.insert(header.end(), crit_ids.begin(), crit_ids.end());
    weights.add_row(std::move(header));
    std::vector<std::string> row{"weight"};
    for (double w : trace.weights.weights()) row.push_back(format_3dp(w));
    weights.add_row(std::move(row));
    os << "Criterion weights\n" << weights.str();
  }
  os << "Normalized matrix\n"
     << render_grid(alts, crit_ids, trace.normalized);
  os << "Weighted normalized matrix\n"
     << render_grid(alts, crit_ids, trace.weighted);

  TextTable ideal;
  ideal.add_row({"criterion", "positive ideal", "negative ideal"});
  for (std::size_t j = 0; j < crit_ids.size(); ++j) {
    ideal.add_row({crit_ids[j], format_3dp(trace.ideal_positive[j]),
                   format_3dp(trace.ideal_negative[j])});
  }
  os << "Ideal values\n" << ideal.str();

  TextTable sep;
  sep.add_row({"alternative", "d+", "d-", "C"});
  for (std::size_t i = 0; i < alts.size(); ++i) {
    sep.add_row({alts[i], format_3dp(trace.separation_positive[i]),
                 format_3dp(trace.separation_negative[i]),
                 format_3dp(trace.closeness[i])});
  }
  os << "Separation and closeness\n" << sep.str();
  os << "Ranking by closeness\n"
     << render_ranking_table("C", trace.ranking);
  return os.str();
}

inline std::string render_report_human(const pipeline::PipelineReport& r) {
  std::ostringstream os;
  os << r.provenance.tool_name << " pipeline report (version "
     << r.provenance.tool_version << ")\n\n";

  os << "Configuration\n";
  TextTable cfg;
  cfg.add_row({"weight method", std::string(pipeline::to_string(r.config.weight_method))});
  cfg.add_row({"aggregation", std::string(ahp::to_string(r.config.aggregation))});
  cfg.add_row({"RI preset", r.config.ri_preset});
  cfg.add_row({"CR threshold", format_3dp(r.config.cr_threshold)});
  cfg.add_row({"consistency gate", std::string(pipeline::to_string(r.config.gate))});
  cfg.add_row({"top-k", std::to_string(r.config.top_k)});
  switch (r.config.topsis_weights.kind) {
    case pipeline::TopsisWeightPolicy::Kind::Equal:
      cfg.add_row({"TOPSIS weights", "equal"});
      break;
    case pipeline::TopsisWeightPolicy::Kind::AhpRenormalized:
      cfg.add_row({"TOPSIS weights", "ahp"});
      break;
    case pipeline::TopsisWeightPolicy::Kind::Custom: {
      std::string list = "custom";
      for (double w : r.config.topsis_weights.custom) {
        list += " " + format_3dp(w);
      }
      cfg.add_row({"TOPSIS weights", list});
      break;
    }
  }
  cfg.add_row({"whitening",
               r.config.whitening.kind == topsis::WhiteningPolicy::Kind::Mean
                   ? "mean"
                   : "whitening lambda=" + format_3dp(r.config.whitening.lambda)});
  os << cfg.str() << '\n';

  os << "Expert consistency\n"
     << render_consistency_table(r.experts, r.config.cr_threshold) << '\n';

  os << "Criteria ranking (aggregated weights)\n"
     << render_ranking_table("weight", r.criteria_ranking) << '\n';

  os << "Selected criteria (top " << r.selected_criteria.size() << "):";
  for (const auto& id : r.selected_criteria) os << ' ' << id;
  os << "\n\n";

  os << render_trace(r.trace);

  std::vector<std::string> flags;
  if (r.provenance.vectors_supplied) {
    flags.push_back("priority vectors supplied without matrices; their CRs "
                    "are trusted from the file");
  }
  if (r.provenance.gate_bypassed) {
    std::string f = "consistency gate bypassed (warnings-only) for:";
    for (const auto& id : r.provenance.gate_failures) f += " " + id;
    flags.push_back(std::move(f));
  }
  if (r.provenance.tie_straddles_cut) {
    flags.push_back("top-k cut falls inside a tie group; selection used "
                    "input order");
  }
  if (!flags.empty()) {
    os << '\n' << "Flags\n";
    for (const auto& f : flags) os << "  - " << f << '\n';
  }
  return os.str();
}

}  // namespace mcdm::io
