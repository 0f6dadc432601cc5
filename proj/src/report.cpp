#include "cargoload/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cargoload/errors.hpp"

namespace cargoload {

using nlohmann::json;

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr double kWidth = 640.0;
constexpr double kHeight = 360.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 70.0;

std::string svg_open(std::string_view title) {
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
    << "<style>.bar{fill:#7f8c9a}.bar.optimal{fill:#2e9b4f}.cost{stroke:#1f5fa8;fill:none}"
       ".best{stroke:#c0392b;fill:none;stroke-dasharray:4 2}text{font-family:sans-serif;font-size:11px}</style>\n"
    << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\">" << xml_escape(title) << "</text>\n"
    << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << kWidth - kRight << "\" y2=\""
    << kHeight - kBottom << "\" stroke=\"black\"/>\n"
    << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kHeight - kBottom
    << "\" stroke=\"black\"/>\n";
  return s.str();
}

}  // namespace

std::string trace_to_csv(const std::vector<TraceRecord>& records) {
  std::string out = "iteration,cost,best_energy,p_optimal\n";
  for (const auto& r : records) {
    out += std::to_string(r.iteration) + ',' + fmt_double(r.cost) + ',' + fmt_double(r.best_cost) + ',';
    if (r.p_optimal) out += fmt_double(*r.p_optimal);
    out += '\n';
  }
  return out;
}

std::vector<TraceRecord> trace_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line.rfind("iteration,cost,best_energy", 0) != 0)
    throw ConfigError("not a trace CSV (missing header)");
  std::vector<TraceRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream row(line);
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.emplace_back();
    if (fields.size() != 4) throw ConfigError("trace row has " + std::to_string(fields.size()) + " fields");
    try {
      TraceRecord r;
      r.iteration = std::stoul(fields[0]);
      r.cost = std::stod(fields[1]);
      r.best_cost = std::stod(fields[2]);
      if (!fields[3].empty()) r.p_optimal = std::stod(fields[3]);
      out.push_back(r);
    } catch (const std::logic_error&) {
      throw ConfigError("unparseable trace row: " + line);
    }
  }
  return out;
}

json counts_to_json(const ShotCounts& counts) {
  json doc;
  doc["n_qubits"] = counts.n_qubits;
  doc["shots"] = counts.shots;
  doc["counts"] = json::object();
  for (const auto& [s, c] : counts.counts) doc["counts"][basis_string(s, counts.n_qubits)] = c;
  return doc;
}

ShotCounts counts_from_json(const json& doc) {
  try {
    ShotCounts out;
    out.n_qubits = doc.at("n_qubits").get<std::size_t>();
    out.shots = doc.at("shots").get<std::uint64_t>();
    std::uint64_t total = 0;
    for (const auto& [bits, c] : doc.at("counts").items()) {
      const auto b = Bitstring::parse(bits);
      if (b.size() != out.n_qubits) throw ConfigError("count key '" + bits + "' has the wrong length");
      out.counts[b.to_index()] = c.get<std::uint64_t>();
      total += c.get<std::uint64_t>();
    }
    if (total != out.shots) throw ConfigError("counts do not sum to shots");
    return out;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed counts file: ") + e.what());
  }
}

json report_to_json(const InferenceReport& report) {
  json doc;
  doc["shots"] = report.counts.shots;
  doc["n_qubits"] = report.counts.n_qubits;
  doc["distinct_outcomes"] = report.counts.counts.size();
  doc["top"] = json::array();
  for (const auto& r : report.rows) {
    json row = {{"bitstring", r.bitstring},   {"count", r.count},       {"probability", r.probability},
                {"energy", r.energy},         {"feasible", r.feasible}, {"total_weight", r.total_weight}};
    row["optimal"] = r.optimal ? json(*r.optimal) : json(nullptr);
    doc["top"].push_back(std::move(row));
  }
  return doc;
}

std::vector<ReportRow> rows_from_report_json(const json& doc) {
  std::vector<ReportRow> rows;
  try {
    for (const auto& r : doc.at("top")) {
      ReportRow row;
      row.bitstring = r.at("bitstring").get<std::string>();
      row.count = r.value("count", std::uint64_t{0});
      row.probability = r.at("probability").get<double>();
      row.energy = r.value("energy", 0.0);
      row.feasible = r.value("feasible", false);
      row.total_weight = r.value("total_weight", 0.0);
      if (r.contains("optimal") && r.at("optimal").is_boolean()) row.optimal = r.at("optimal").get<bool>();
      rows.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
  return rows;
}

json solution_to_json(const ExactSolution& sol, double elapsed_ms) {
  json doc;
  doc["optimal_weight"] = sol.optimal_weight;
  doc["optima"] = json::array();
  for (const auto& x : sol.optima) doc["optima"].push_back(encode_assignment(x).str());
  doc["search_space_size"] = sol.search_space_size;
  doc["elapsed_ms"] = elapsed_ms;
  return doc;
}

json instance_summary(const ProblemInstance& inst) {
  return {{"containers", inst.num_containers()},
          {"slots", inst.num_slots()},
          {"qubits", inst.num_qubits()},
          {"total_container_weight", inst.total_container_weight()},
          {"w_max", inst.w_max},
          {"r_min", inst.r_min},
          {"r_max", inst.r_max}};
}

std::string histogram_svg(const std::vector<ReportRow>& rows, std::string_view title) {
  std::ostringstream s;
  s << svg_open(title);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  double top = 0.0;
  for (const auto& r : rows) top = std::max(top, r.probability);
  if (top <= 0.0) top = 1.0;
  const double slot = rows.empty() ? plot_w : plot_w / static_cast<double>(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    const double h = plot_h * r.probability / top;
    const double x = kLeft + slot * static_cast<double>(k) + 0.15 * slot;
    const double y = kHeight - kBottom - h;
    const bool optimal = r.optimal.value_or(false);
    s << "<rect class=\"bar" << (optimal ? " optimal" : "") << "\" x=\"" << fmt_coord(x) << "\" y=\""
      << fmt_coord(y) << "\" width=\"" << fmt_coord(0.7 * slot) << "\" height=\"" << fmt_coord(h)
      << "\"><title>" << xml_escape(r.bitstring) << " p=" << fmt_double(r.probability) << "</title></rect>\n";
    s << "<text x=\"" << fmt_coord(x + 0.35 * slot) << "\" y=\"" << fmt_coord(y - 4)
      << "\" text-anchor=\"middle\">" << fmt_coord(r.probability) << "</text>\n";
    s << "<text x=\"" << fmt_coord(x + 0.35 * slot) << "\" y=\"" << fmt_coord(kHeight - kBottom + 14)
      << "\" text-anchor=\"middle\">" << xml_escape(r.bitstring) << "</text>\n";
  }
  s << "<text x=\"15\" y=\"" << fmt_coord(kTop + plot_h / 2) << "\" transform=\"rotate(-90 15 "
    << fmt_coord(kTop + plot_h / 2) << ")\" text-anchor=\"middle\">probability</text>\n";
  s << "</svg>\n";
  return s.str();
}

std::string trace_svg(const std::vector<TraceRecord>& records, std::string_view title) {
  std::ostringstream s;
  s << svg_open(title);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  double lo = 0.0, hi = 1.0;
  if (!records.empty()) {
    lo = hi = records.front().cost;
    for (const auto& r : records) {
      lo = std::min({lo, r.cost, r.best_cost});
      hi = std::max({hi, r.cost, r.best_cost});
    }
  }
  if (hi - lo < 1e-12) hi = lo + 1.0;
  const double last = records.size() > 1 ? static_cast<double>(records.size() - 1) : 1.0;
  auto point = [&](std::size_t k, double v) {
    const double x = kLeft + plot_w * static_cast<double>(k) / last;
    const double y = kTop + plot_h * (hi - v) / (hi - lo);
    return fmt_coord(x) + "," + fmt_coord(y);
  };
  s << "<polyline class=\"cost\" points=\"";
  for (std::size_t k = 0; k < records.size(); ++k) s << (k ? " " : "") << point(k, records[k].cost);
  s << "\"/>\n<polyline class=\"best\" points=\"";
  for (std::size_t k = 0; k < records.size(); ++k) s << (k ? " " : "") << point(k, records[k].best_cost);
  s << "\"/>\n";
  s << "<text x=\"" << kLeft - 5 << "\" y=\"" << kTop + 4 << "\" text-anchor=\"end\">" << fmt_coord(hi) << "</text>\n"
    << "<text x=\"" << kLeft - 5 << "\" y=\"" << kHeight - kBottom << "\" text-anchor=\"end\">" << fmt_coord(lo)
    << "</text>\n"
    << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - kBottom + 30
    << "\" text-anchor=\"middle\">iteration</text>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace cargoload
