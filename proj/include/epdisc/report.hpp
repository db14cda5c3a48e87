#pragma once

// Scan report serialization. JSON is the lossless format: multiprecision
// values are decimal strings. CSV is a 17-digit export of accepted EPs.

#include "epdisc/epsolver.hpp"

#include <string>
#include <utility>
#include <vector>

namespace epdisc {

std::string report_to_json(const ScanReport& r);
/// Throws Error on malformed input.
ScanReport report_from_json(const std::string& text);

/// CLI model id ("mathieu", "rotor", ...) and class/parity column.
std::string model_id(const ModelSpec& spec);
std::string model_class(const ModelSpec& spec);

/// Header `model,M,K,class,n,re,im,residual` and one row per accepted EP.
std::string accepted_csv(const ScanReport& r);

/// Header `series,re,im` and one row per accepted EP of every series.
std::string figure_csv(const std::vector<std::pair<std::string, const ScanReport*>>& series);

/// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace epdisc
