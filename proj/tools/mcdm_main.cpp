// mcdm — AHP / grey-TOPSIS decision engine.
//
// Subcommands: validate, ahp, topsis, pipeline, chart.
// Exit codes: 0 success, 1 parse error, 2 validation error,
// 3 consistency-gate failure, 4 completed with flags (top-k tie straddle).

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mcdm/mcdm.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitValidation = 2;
constexpr int kExitGate = 3;
constexpr int kExitFlags = 4;

struct GlobalOptions {
  std::optional<std::string> ri_preset;
  std::optional<double> cr_threshold;
  std::string format = "human";
  bool warnings_only = false;
};

// CLI flags override whatever the project file configured.
void apply_overrides(mcdm::pipeline::PipelineConfig& cfg,
                     const GlobalOptions& opts) {
  if (opts.ri_preset) {
    mcdm::ahp::RiTable::from_preset(*opts.ri_preset);
    cfg.ri_preset = *opts.ri_preset;
  }
  if (opts.cr_threshold) cfg.cr_threshold = *opts.cr_threshold;
  if (opts.warnings_only) cfg.gate = mcdm::pipeline::GateMode::WarningsOnly;
}

double worst_reciprocity_residual(const mcdm::PairwiseMatrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.order(); ++i) {
    for (std::size_t j = i + 1; j < m.order(); ++j) {
      worst = std::max(worst, std::abs(m.at(i, j) * m.at(j, i) - 1.0));
    }
  }
  return worst;
}

std::vector<mcdm::pipeline::ExpertResult> evaluate_experts(
    const mcdm::ahp::ExpertPanel& panel,
    const mcdm::pipeline::PipelineConfig& cfg) {
  std::vector<mcdm::pipeline::ExpertResult> results;
  for (const auto& judgment : panel.experts()) {
    results.push_back(mcdm::pipeline::evaluate_expert(judgment, cfg));
  }
  return results;
}

int gate_exit_code(const std::vector<mcdm::pipeline::ExpertResult>& experts,
                   double threshold) {
  for (const auto& e : experts) {
    const auto cr = e.cr();
    if (!cr.has_value() || !(*cr < threshold)) return kExitGate;
  }
  return kExitOk;
}

int cmd_validate(const std::string& path, const GlobalOptions& opts,
                 const std::optional<std::string>& csv_matrix) {
  if (csv_matrix) {
    auto m = mcdm::io::pairwise_from_csv_file(*csv_matrix);
    auto w = mcdm::ahp::priority_row_average(m);
    auto report = mcdm::ahp::consistency(
        m, w, mcdm::ahp::RiTable::from_preset(opts.ri_preset.value_or(
                  "paper-table2")),
        opts.cr_threshold.value_or(0.1));
    std::cout << "csv matrix: " << m.order() << "x" << m.order()
              << ", worst reciprocity residual "
              << worst_reciprocity_residual(m) << "\n"
              << "lambda_max " << mcdm::io::format_3dp(report.lambda_max)
              << ", CI " << mcdm::io::format_3dp(report.ci) << ", CR "
              << mcdm::io::format_3dp(report.cr) << " (" << report.ri_preset
              << "), " << (report.acceptable ? "acceptable" : "NOT acceptable")
              << "\n";
    return report.acceptable ? kExitOk : kExitGate;
  }

  auto project = mcdm::io::ProjectFile::load(path);
  auto cfg = project.config;
  apply_overrides(cfg, opts);

  std::cout << "project: " << project.criteria.size() << " criteria, "
            << project.experts.size() << " experts, "
            << project.alternatives.size() << " alternatives\n";

  if (project.has_experts()) {
    auto panel = project.panel();
    for (const auto& judgment : panel.experts()) {
      if (judgment.matrix) {
        std::cout << "  " << judgment.expert_id
                  << ": matrix ok, worst reciprocity residual "
                  << worst_reciprocity_residual(*judgment.matrix) << "\n";
      } else {
        std::cout << "  " << judgment.expert_id
                  << ": priority vector supplied"
                  << (judgment.supplied_cr ? " (trusted CR)" : " (no CR)")
                  << "\n";
      }
    }
    auto experts = evaluate_experts(panel, cfg);
    std::cout << mcdm::io::render_consistency_table(experts,
                                                    cfg.cr_threshold);
    if (gate_exit_code(experts, cfg.cr_threshold) != kExitOk) {
      std::cout << "consistency gate: FAILED (threshold "
                << mcdm::io::format_3dp(cfg.cr_threshold) << ")\n";
      return kExitGate;
    }
    std::cout << "consistency gate: ok (threshold "
              << mcdm::io::format_3dp(cfg.cr_threshold) << ")\n";
  }
  if (project.has_alternatives()) {
    // Surfaces zero columns, negative scores, and dimension problems.
    auto table = project.full_score_table();
    mcdm::topsis::whiten_scores(table, cfg.whitening);
    std::cout << "scores: " << table.alternative_ids.size()
              << " alternatives x " << table.criteria.size()
              << " scored criteria, whitening ok\n";
  }
  std::cout << "valid\n";
  return kExitOk;
}

int cmd_ahp(const std::string& path, const GlobalOptions& opts,
            const std::optional<std::string>& method,
            const std::optional<std::string>& aggregate,
            const std::optional<std::string>& csv_matrix) {
  if (csv_matrix) {
    auto m = mcdm::io::pairwise_from_csv_file(*csv_matrix);
    auto w = method && *method == "eigenvector"
                 ? mcdm::ahp::priority_eigenvector(m)
                 : mcdm::ahp::priority_row_average(m);
    auto report = mcdm::ahp::consistency(
        m, w, mcdm::ahp::RiTable::from_preset(opts.ri_preset.value_or(
                  "paper-table2")),
        opts.cr_threshold.value_or(0.1));
    std::cout << "lambda_max " << mcdm::io::format_3dp(report.lambda_max)
              << ", CI " << mcdm::io::format_3dp(report.ci) << ", CR "
              << mcdm::io::format_3dp(report.cr) << " (" << report.ri_preset
              << ")\n"
              << mcdm::io::render_ranking_table(
                     "weight", mcdm::ahp::rank_criteria(w));
    return report.acceptable ? kExitOk : kExitGate;
  }

  auto project = mcdm::io::ProjectFile::load(path);
  auto cfg = project.config;
  apply_overrides(cfg, opts);
  if (method) cfg.weight_method = mcdm::pipeline::weight_method_from_string(*method);
  if (aggregate) cfg.aggregation = mcdm::ahp::aggregation_from_string(*aggregate);

  auto panel = project.panel();
  auto experts = evaluate_experts(panel, cfg);

  std::vector<mcdm::PriorityVector> vectors;
  std::vector<double> panel_weights;
  for (std::size_t e = 0; e < experts.size(); ++e) {
    vectors.push_back(experts[e].priorities);
    panel_weights.push_back(panel.experts()[e].panel_weight);
  }
  auto aggregated = mcdm::ahp::aggregate_expert_priorities(
      vectors, cfg.aggregation, panel_weights);
  auto ranking = mcdm::ahp::rank_criteria(aggregated);

  if (opts.format == "structured") {
    mcdm::io::ordered_json out;
    out["aggregated_weights"] =
        mcdm::io::ordered_json{{"criterion_ids", aggregated.criterion_ids()},
                               {"weights", aggregated.weights()}};
    out["criteria_ranking"] = mcdm::io::jdetail::ranking_to_json(ranking);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "Expert consistency\n"
              << mcdm::io::render_consistency_table(experts, cfg.cr_threshold)
              << "\nCriteria ranking (aggregated weights, "
              << mcdm::ahp::to_string(cfg.aggregation) << ")\n"
              << mcdm::io::render_ranking_table("weight", ranking);
  }
  const int gate = gate_exit_code(experts, cfg.cr_threshold);
  if (gate != kExitOk && !opts.warnings_only) return gate;
  return kExitOk;
}

mcdm::WeightVector resolve_topsis_weights(
    const mcdm::io::ProjectFile& project,
    const mcdm::pipeline::PipelineConfig& cfg,
    const std::vector<std::string>& weight_args,
    const std::vector<std::string>& criterion_ids) {
  // --weights equal | ahp | custom <list> | <list>
  std::string policy =
      weight_args.empty() ? std::string() : weight_args.front();
  std::string list_arg = weight_args.size() > 1 ? weight_args[1] : "";
  if (policy.empty()) {
    // fall back to the project config
    switch (cfg.topsis_weights.kind) {
      case mcdm::pipeline::TopsisWeightPolicy::Kind::Equal:
        policy = "equal";
        break;
      case mcdm::pipeline::TopsisWeightPolicy::Kind::AhpRenormalized:
        policy = "ahp";
        break;
      case mcdm::pipeline::TopsisWeightPolicy::Kind::Custom: {
        return mcdm::WeightVector::normalized(cfg.topsis_weights.custom,
                                              criterion_ids);
      }
    }
  }
  if (!policy.empty() && policy != "equal" && policy != "ahp" &&
      policy != "custom") {
    // a bare comma list is shorthand for custom
    list_arg = policy;
    policy = "custom";
  }
  if (policy == "equal") {
    return mcdm::WeightVector::equal(criterion_ids);
  }
  if (policy == "ahp") {
    auto panel = project.panel();
    auto experts = evaluate_experts(panel, cfg);
    std::vector<mcdm::PriorityVector> vectors;
    std::vector<double> panel_weights;
    for (std::size_t e = 0; e < experts.size(); ++e) {
      vectors.push_back(experts[e].priorities);
      panel_weights.push_back(panel.experts()[e].panel_weight);
    }
    auto aggregated = mcdm::ahp::aggregate_expert_priorities(
        vectors, cfg.aggregation, panel_weights);
    return mcdm::pipeline::renormalize_weights(aggregated, criterion_ids);
  }
  if (list_arg.empty()) {
    throw mcdm::ValidationError(
        "--weights custom requires a comma-separated list");
  }
  std::vector<double> values;
  std::string token;
  std::istringstream in(list_arg);
  while (std::getline(in, token, ',')) {
    values.push_back(mcdm::io::parse_real(token));
  }
  if (values.size() != criterion_ids.size()) {
    throw mcdm::DimensionMismatch(
        "custom weight list has " + std::to_string(values.size()) +
        " entries for " + std::to_string(criterion_ids.size()) + " criteria");
  }
  return mcdm::WeightVector::normalized(values, criterion_ids);
}

int cmd_topsis(const std::string& path, const GlobalOptions& opts,
               const std::vector<std::string>& weight_args, bool trace) {
  auto project = mcdm::io::ProjectFile::load(path);
  auto cfg = project.config;
  apply_overrides(cfg, opts);

  auto table = project.full_score_table();
  std::vector<std::string> crit_ids;
  for (const auto& c : table.criteria) crit_ids.push_back(c.id);

  auto weights = resolve_topsis_weights(project, cfg, weight_args, crit_ids);
  auto decision = mcdm::topsis::whiten_scores(table, cfg.whitening);
  auto result = mcdm::topsis::run_topsis(decision, weights);

  if (opts.format == "structured") {
    mcdm::io::ordered_json t;
    t["alternative_ids"] = result.input.alternative_ids();
    t["criteria"] = mcdm::io::jdetail::criteria_to_json(result.input.criteria());
    t["weights"] = result.weights.weights();
    t["decision_matrix"] = result.input.rows();
    t["normalized"] = result.normalized;
    t["weighted"] = result.weighted;
    t["ideal_positive"] = result.ideal_positive;
    t["ideal_negative"] = result.ideal_negative;
    t["separation_positive"] = result.separation_positive;
    t["separation_negative"] = result.separation_negative;
    t["closeness"] = result.closeness;
    t["ranking"] = mcdm::io::jdetail::ranking_to_json(result.ranking);
    std::cout << t.dump(2) << "\n";
  } else if (trace) {
    std::cout << mcdm::io::render_trace(result);
  } else {
    std::cout << mcdm::io::render_ranking_table("C", result.ranking);
  }
  return kExitOk;
}

int cmd_pipeline(const std::string& path, const GlobalOptions& opts,
                 const std::optional<std::string>& out_path) {
  auto project = mcdm::io::ProjectFile::load(path);
  auto cfg = project.config;
  apply_overrides(cfg, opts);

  auto panel = project.panel();
  auto scores = project.full_score_table();
  auto report = mcdm::pipeline::run_pipeline(panel, scores, cfg,
                                             mcdm::kToolName,
                                             mcdm::kToolVersion);
  auto json = mcdm::io::report_to_json(report);
  if (out_path) {
    mcdm::chart::write_file_atomic(*out_path, json.dump(2) + "\n");
  }
  if (opts.format == "structured") {
    std::cout << json.dump(2) << "\n";
  } else {
    std::cout << mcdm::io::render_report_human(report);
  }
  return report.provenance.tie_straddles_cut ? kExitFlags : kExitOk;
}

int cmd_chart(const std::string& report_path, const std::string& which,
              const std::string& out_path) {
  std::ifstream in(report_path, std::ios::binary);
  if (!in) {
    throw mcdm::ParseError("cannot open report file: " + report_path);
  }
  mcdm::io::ordered_json root;
  try {
    root = mcdm::io::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw mcdm::ParseError("invalid JSON in " + report_path + ": " +
                           e.what());
  }
  auto report = mcdm::io::report_from_json(root);
  auto svg = mcdm::chart::chart_from_report(report, which);
  mcdm::chart::write_file_atomic(out_path, svg);
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AHP / grey-TOPSIS multi-criteria decision engine"};
  app.require_subcommand(1);

  GlobalOptions opts;
  app.add_option("--ri-preset", opts.ri_preset,
                 "Random-index preset: paper-table2 or saaty-classic")
      ->check(CLI::IsMember({"paper-table2", "saaty-classic"}));
  app.add_option("--cr-threshold", opts.cr_threshold,
                 "Consistency-ratio acceptance threshold");
  app.add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"human", "structured"}));
  app.add_flag("--warnings-only", opts.warnings_only,
               "Report consistency-gate failures without failing");

  std::string project_path;
  std::optional<std::string> csv_matrix;
  auto* validate = app.add_subcommand(
      "validate", "Check a project file's structure and consistency");
  validate->fallthrough();
  validate->add_option("project", project_path, "Project JSON file");
  validate->add_option("--csv-matrix", csv_matrix,
                       "Validate a pairwise-matrix CSV instead");

  std::optional<std::string> method;
  std::optional<std::string> aggregate;
  auto* ahp = app.add_subcommand(
      "ahp", "Derive, check, and aggregate criterion weights");
  ahp->fallthrough();
  ahp->add_option("project", project_path, "Project JSON file");
  ahp->add_option("--method", method, "Weight derivation method")
      ->check(CLI::IsMember({"row-average", "eigenvector"}));
  ahp->add_option("--aggregate", aggregate, "Expert aggregation rule")
      ->check(CLI::IsMember({"arithmetic-mean", "geometric-mean"}));
  ahp->add_option("--csv-matrix", csv_matrix,
                  "Analyze a pairwise-matrix CSV instead");

  std::vector<std::string> weight_args;
  bool trace = false;
  auto* topsis = app.add_subcommand(
      "topsis", "Rank alternatives against the scored criteria");
  topsis->fallthrough();
  topsis->add_option("project", project_path, "Project JSON file")
      ->required();
  topsis->add_option("--weights", weight_args,
                     "equal | ahp | custom <w1,w2,...> | <w1,w2,...>")
      ->expected(1, 2);
  topsis->add_flag("--trace", trace, "Print every stage table");

  std::optional<std::string> out_path;
  auto* pipeline = app.add_subcommand(
      "pipeline", "Run the full two-phase analysis and emit a report");
  pipeline->fallthrough();
  pipeline->add_option("project", project_path, "Project JSON file")
      ->required();
  pipeline->add_option("--out", out_path, "Also write the structured report "
                                          "to this file");

  std::string report_path, which, chart_out;
  auto* chart = app.add_subcommand(
      "chart", "Render a bar chart from a structured pipeline report");
  chart->fallthrough();
  chart->add_option("report", report_path, "Structured report JSON file")
      ->required();
  chart->add_option("which", which, "weights | closeness")->required();
  chart->add_option("out", chart_out, "Output SVG path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(validate)) {
      if (project_path.empty() && !csv_matrix) {
        throw mcdm::ParseError("validate needs a project file or --csv-matrix");
      }
      return cmd_validate(project_path, opts, csv_matrix);
    }
    if (app.got_subcommand(ahp)) {
      if (project_path.empty() && !csv_matrix) {
        throw mcdm::ParseError("ahp needs a project file or --csv-matrix");
      }
      return cmd_ahp(project_path, opts, method, aggregate, csv_matrix);
    }
    if (app.got_subcommand(topsis)) {
      return cmd_topsis(project_path, opts, weight_args, trace);
    }
    if (app.got_subcommand(pipeline)) {
      return cmd_pipeline(project_path, opts, out_path);
    }
    if (app.got_subcommand(chart)) {
      return cmd_chart(report_path, which, chart_out);
    }
  } catch (const mcdm::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const mcdm::ConsistencyError& e) {
    std::cerr << "consistency error: " << e.what() << "\n";
    return kExitGate;
  } catch (const mcdm::Error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
  return kExitOk;
}
