#pragma once

#include "cli/config.hpp"
#include "discframe/report.hpp"

namespace discframe::cli {

// Dispatch a validated config to the corresponding numerical pipeline and
// collect the result table (provenance included). Numerical refusals and
// convergence failures surface as ComputationError.
ReportTable run(const ExperimentConfig& cfg);

}  // namespace discframe::cli
