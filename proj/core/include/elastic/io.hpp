#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "elastic/composer.hpp"
#include "elastic/model.hpp"
#include "elastic/reliability.hpp"
#include "elastic/simulator.hpp"
#include "elastic/timeline.hpp"

namespace elastic::io {

using nlohmann::json;

// Services and queries travel as CSV (header required) or a JSON array; field
// names match the model structs. Format is picked by file extension
// (.json vs anything else).

std::vector<EnergyService> load_services(const std::string& path);
std::vector<EnergyQuery> load_queries(const std::string& path);
void save_services_csv(const std::string& path, const std::vector<EnergyService>& services);
void save_queries_csv(const std::string& path, const std::vector<EnergyQuery>& queries);

json service_to_json(const EnergyService& s);
json query_to_json(const EnergyQuery& q);
EnergyService service_from_json(const json& j);
EnergyQuery query_from_json(const json& j);

// SoC series CSV: owner_id,time_min,soc. Provision history CSV: owner_id,ss,tps.
std::vector<SocSeries> load_soc_series(const std::string& path);
std::vector<ReliabilityProfile> load_provision_history(const std::string& path);

json composition_result_to_json(const CompositionResult& result);
json timeline_to_json(const ChunkedTimeline& tl);

EnvironmentConfig environment_config_from_json(const json& j);
json environment_config_to_json(const EnvironmentConfig& cfg);
EnvironmentConfig load_environment_config(const std::string& path);

// report.csv has a fixed column order; elapsed_ms is the last column so
// determinism checks can strip it mechanically.
void save_report_csv(const std::string& path, const std::vector<ReportRow>& rows);
json report_summary_json(const ExperimentReport& report);

}  // namespace elastic::io
