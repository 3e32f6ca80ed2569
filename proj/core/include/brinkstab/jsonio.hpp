#pragma once

#include <string>

#include "brinkstab/types.hpp"

namespace brinkstab::jsonio {

/// ISO-8601 UTC timestamp; honors SOURCE_DATE_EPOCH for reproducible runs.
std::string timestamp_utc();

/// Serialized ResultRecord (see schema/result_record.schema.json):
/// { schema_version, timestamp, kind, config, payload, convergence }.
/// `config_json` and `payload_json` must be JSON object texts.
std::string result_record(const std::string& kind, const std::string& config_json,
                          const std::string& payload_json);

std::string critical_point_json(const CriticalPoint& cp);

/// Minimal JSON-Schema checker covering the subset the shipped schema uses:
/// type, properties, required, items, enum, additionalProperties (boolean).
/// Returns an empty string when `document` conforms, else a message naming
/// the first violation.
std::string schema_violations(const std::string& document_json,
                              const std::string& schema_json);

}  // namespace brinkstab::jsonio
