#pragma once

#include "config.hpp"
#include "report.hpp"

#include <filesystem>
#include <string>

namespace secsym::runner {

ExperimentResult run_ccr(const ExperimentConfig& cfg);
ExperimentResult run_closedness(const ExperimentConfig& cfg);
ExperimentResult run_exactness(const ExperimentConfig& cfg);
ExperimentResult run_lemma2(const ExperimentConfig& cfg);
ExperimentResult run_reconstruct(const ExperimentConfig& cfg);
ExperimentResult run_ed_compare(const ExperimentConfig& cfg);
ExperimentResult run_evolve(const ExperimentConfig& cfg);
ExperimentResult run_nondegeneracy(const ExperimentConfig& cfg);

/// Dispatch by name, write report + CSVs under out_dir.
/// Returns 0 when every check passed, 1 otherwise.
int run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

} // namespace secsym::runner
