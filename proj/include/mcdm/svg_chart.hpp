#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mcdm/errors.hpp"
#include "mcdm/pipeline.hpp"
#include "mcdm/report.hpp"

namespace mcdm::chart {

struct Bar {
  std::string label;
  double value = 0.0;
};

namespace detail {

inline std::string escape_xml(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

inline std::string fixed1(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

}  // namespace detail

// Self-contained horizontal bar chart. Bars are emitted in the given order
// (callers pass them rank-sorted); the longest bar spans the full plot
// width, labels sit left of the bars and 3-decimal values at their ends.
inline std::string render_bar_chart(std::string_view title,
                                    const std::vector<Bar>& bars) {
  if (bars.empty()) {
    throw ValidationError("cannot chart an empty bar list");
  }
  constexpr double kLeft = 240.0;
  constexpr double kRight = 80.0;
  constexpr double kTop = 48.0;
  constexpr double kBottom = 16.0;
  constexpr double kRowHeight = 28.0;
  constexpr double kBarHeight = 18.0;
  constexpr double kPlotWidth = 420.0;

  double max_value = 0.0;
  for (const auto& b : bars) max_value = std::max(max_value, b.value);
  if (max_value <= 0.0) max_value = 1.0;

  const double width = kLeft + kPlotWidth + kRight;
  const double height = kTop + kRowHeight * static_cast<double>(bars.size()) +
                        kBottom;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
     << detail::fixed1(width) << "\" height=\"" << detail::fixed1(height)
     << "\" viewBox=\"0 0 " << detail::fixed1(width) << ' '
     << detail::fixed1(height) << "\">\n"
     << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "  <text x=\"" << detail::fixed1(kLeft) << "\" y=\"28\" "
        "font-family=\"sans-serif\" font-size=\"16\" font-weight=\"bold\">"
     << detail::escape_xml(title) << "</text>\n";

  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double y = kTop + kRowHeight * static_cast<double>(i);
    const double bar_w = kPlotWidth * bars[i].value / max_value;
    const double text_y = y + kBarHeight - 4.0;
    os << "  <text x=\"" << detail::fixed1(kLeft - 8.0) << "\" y=\""
       << detail::fixed1(text_y)
       << "\" font-family=\"sans-serif\" font-size=\"12\" "
          "text-anchor=\"end\">"
       << detail::escape_xml(bars[i].label) << "</text>\n"
       << "  <rect x=\"" << detail::fixed1(kLeft) << "\" y=\""
       << detail::fixed1(y) << "\" width=\"" << detail::fixed1(bar_w)
       << "\" height=\"" << detail::fixed1(kBarHeight)
       << "\" fill=\"#4878a8\"/>\n"
       << "  <text x=\"" << detail::fixed1(kLeft + bar_w + 6.0) << "\" y=\""
       << detail::fixed1(text_y)
       << "\" font-family=\"sans-serif\" font-size=\"12\">"
       << io::format_3dp(bars[i].value) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

// Chartable report fields: "weights" (criteria ranking) and "closeness"
// (alternative ranking).
inline std::string chart_from_report(const pipeline::PipelineReport& report,
                                     std::string_view which) {
  std::vector<Bar> bars;
  if (which == "weights") {
    for (const auto& item : report.criteria_ranking.items) {
      bars.push_back(Bar{item.id, item.score});
    }
    return render_bar_chart("Criteria weights", bars);
  }
  if (which == "closeness") {
    for (const auto& item : report.trace.ranking.items) {
      bars.push_back(Bar{item.id, item.score});
    }
    return render_bar_chart("Closeness to ideal", bars);
  }
  throw UnknownReportField("unknown chart field '" + std::string(which) +
                           "' (expected 'weights' or 'closeness')");
}

// Write-temp-then-rename so readers never observe a partial file.
inline void write_file_atomic(const std::filesystem::path& path,
                              std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw ValidationError("cannot write file: " + tmp.string());
    }
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace mcdm::chart
