#pragma once

#include <string>

#include <json.hpp>

namespace meanlab {

struct JobResult {
  nlohmann::ordered_json report;  // machine-readable report
  std::string text;               // fixed-layout table for standard output
  int exit_status = 0;            // 0 done, 2 indeterminate verdict
};

// Parses a job document, applies overrides ({"command","seed","grid","tol"},
// any subset), executes the named command and assembles both report forms.
// Throws Error on malformed jobs (errc::parse/invalid_argument) and on
// numerical failures (errc::numerical).
JobResult run_job(const std::string& job_text, const std::string& overrides_text = "");

// %.17g serialization of the machine-readable report.
std::string report_to_string(const JobResult& result);

}  // namespace meanlab
