#pragma once

#include <string>

#include <json.hpp>

namespace unicrag {

// Flat table from a report body: one line per (method, defense, metric),
// one column per k seen anywhere in the rows. Transfer metrics, when
// present, render as an extra defense="transfer" block.
std::string report_csv(const nlohmann::json& body);

// Same table as a pipe table plus a short run summary.
std::string report_markdown(const nlohmann::json& body);

}  // namespace unicrag
