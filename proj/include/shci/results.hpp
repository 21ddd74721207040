#pragma once

#include "shci/confidence.hpp"
#include "shci/design_audit.hpp"
#include "shci/lasso.hpp"
#include "shci/simulation.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace shci {

enum class ResultFormat { csv, json };

ResultFormat parse_result_format(const std::string& text);

/// Column names of the metrics table.
const std::vector<std::string>& metrics_columns();

void write_results(std::ostream& out, const std::vector<MetricsRow>& rows, ResultFormat format);

/// Writes `rows` to `path`; I/O failures carry the path.
void emit_results(const std::vector<MetricsRow>& rows, ResultFormat format, const std::filesystem::path& path);

std::vector<MetricsRow> parse_results_json(const std::string& text);

nlohmann::json to_json(const MetricsRow& row);
nlohmann::json to_json(const EstimateReport& report, bool include_theta = true);
nlohmann::json to_json(const TestReport& report);
nlohmann::json to_json(const ConfidenceBall& ball, bool include_center = true);
nlohmann::json to_json(const DesignAudit& audit);
nlohmann::json to_json(const ReplicationRecord& record);
nlohmann::json to_json(const SimulationConfig& cfg);

} // namespace shci
