#ifndef MMF_EXPERIMENT_HPP
#define MMF_EXPERIMENT_HPP

#include <json.hpp>

namespace mmf {

inline constexpr const char* kLibraryVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

// Batch experiment runners; each takes a JSON config and returns a JSON report
// that embeds the config, seed and library version.  Side files (CSV
// histograms, sample dumps) are written to paths named in the config.

nlohmann::json run_diagnose(const nlohmann::json& config);
nlohmann::json run_limit_compare(const nlohmann::json& config);
nlohmann::json run_mean_value(const nlohmann::json& config);
nlohmann::json run_series_check(const nlohmann::json& config);
nlohmann::json run_sample_limit(const nlohmann::json& config);

}  // namespace mmf

#endif
