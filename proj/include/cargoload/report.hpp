#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cargoload/optim.hpp"
#include "cargoload/oracle.hpp"
#include "json.hpp"

namespace cargoload {

// Trace CSV: header "iteration,cost,best_energy,p_optimal"; p_optimal is
// blank when no oracle reference was supplied.
std::string trace_to_csv(const std::vector<TraceRecord>& records);
std::vector<TraceRecord> trace_from_csv(std::string_view text);

// {"n_qubits", "shots", "counts": {"<bitstring>": count, ...}}
nlohmann::json counts_to_json(const ShotCounts& counts);
ShotCounts counts_from_json(const nlohmann::json& doc);

nlohmann::json report_to_json(const InferenceReport& report);
// Rows of a report document back into ReportRow form (for `report`).
std::vector<ReportRow> rows_from_report_json(const nlohmann::json& doc);

// {optimal_weight, optima: [bitstrings], search_space_size, elapsed_ms}
nlohmann::json solution_to_json(const ExactSolution& sol, double elapsed_ms);

nlohmann::json instance_summary(const ProblemInstance& inst);

// Probability bar chart; rows flagged optimal get class "bar optimal".
std::string histogram_svg(const std::vector<ReportRow>& rows, std::string_view title = "Top outcomes");
// Cost and best-seen cost against iteration as two polylines.
std::string trace_svg(const std::vector<TraceRecord>& records, std::string_view title = "Cost per iteration");

}  // namespace cargoload
