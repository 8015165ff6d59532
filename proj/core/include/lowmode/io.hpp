#pragma once

#include <string>

#include "lowmode/harness.hpp"

namespace lowmode {

// Parses a JSON experiment description (schema documented in the README).
// Any structural or semantic problem throws ConfigParseError.
ExperimentSpec parse_experiment(const std::string& json_text);

// Canonical re-serialization of a parsed spec: object keys sorted, numbers at
// full precision; used for echoing the spec into result files and as the
// hashing pre-image.
std::string experiment_to_json(const ExperimentSpec& spec);

// 64-bit FNV-1a of the canonical serialization, in fixed-width hex.
std::string config_hash(const ExperimentSpec& spec);

// Persists every artifact under out_dir (created if missing). Throws IoError
// and removes nothing; callers compute all artifacts before writing any.
void write_artifacts(const RunResult& result, const std::string& out_dir);

}  // namespace lowmode
