#pragma once

#include <filesystem>
#include <string>

#include "graphrec/metrics.hpp"
#include "graphrec/pipeline.hpp"

namespace graphrec {

/// Version string written into every report.
std::string_view library_version();

/// Pretty-printed JSON. Reports carry the full configuration and seed but no
/// timings, so reruns in deterministic mode are byte-identical.
std::string config_to_json(const PipelineConfig& cfg);
std::string report_to_json(const AttackReport& report);
std::string privacy_to_json(const PrivacyReport& report);
std::string utility_to_json(const UtilitySimilarity& anonymized, const UtilitySimilarity* enhanced = nullptr);
/// Anonymizer metadata: edge counts of both graphs and the realization summary.
std::string anonymization_to_json(const Graph& g, const Graph& ga, const AnonymizationSummary& summary,
                                  Mechanism mechanism, double privacy, std::uint64_t seed);
std::string timings_to_json(const StageTimings& timings);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace graphrec
