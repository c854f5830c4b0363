#pragma once

#include "secsym/types.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace secsym::runner {

using Json = nlohmann::ordered_json;

/// One experiment outcome: the JSON report, named CSV blobs, and the overall
/// verdict. Reports carry no timestamps, paths or thread counts, so repeated
/// runs with the same config and seed are byte-identical.
struct ExperimentResult {
    Json report;
    std::map<std::string, std::string> csv_files; // name -> contents
    bool pass = true;
};

/// Append a named check to report["checks"] and fold it into `pass`.
void add_check(ExperimentResult& result, const std::string& name, double value,
               double threshold, bool ok);
/// Convenience: ok = |value| <= threshold.
void add_residual_check(ExperimentResult& result, const std::string& name, double value,
                        double threshold);

/// CSV with a header row; %.17g cells (shortest exact round-trip not required,
/// 17 significant digits are).
std::string csv_table(const std::vector<std::string>& headers,
                      const std::vector<std::vector<double>>& rows);

/// Write report + CSVs under out_dir as <experiment>_report.json etc.
void write_result(const ExperimentResult& result, const std::string& experiment,
                  const std::filesystem::path& out_dir);

std::string format_double(double v);

} // namespace secsym::runner
