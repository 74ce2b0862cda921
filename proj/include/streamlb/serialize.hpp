#pragma once

#include <string>
#include <vector>

#include "streamlb/experiments.hpp"
#include "streamlb/runtime.hpp"

namespace streamlb {

// Skew values render with two decimals everywhere, mirroring the study
// tables; -0.00 normalizes to 0.00.
double round2(double value) noexcept;

std::string run_result_to_json(const RunResult& result);

std::string rows_to_json(const std::vector<ExperimentRow>& rows);
std::string rows_to_csv(const std::vector<ExperimentRow>& rows);
std::string rows_to_json(const std::vector<SweepRow>& rows);
std::string rows_to_csv(const std::vector<SweepRow>& rows);

}  // namespace streamlb
