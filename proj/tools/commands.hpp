#pragma once

#include <string>
#include <vector>

#include "cdf2pdf/pdf_curve.hpp"
#include "config.hpp"

namespace cdf2pdf::cli {

// interior grid x grid points of the prior box, theta1-major order;
// fractions (i+1)/(grid+1) along each axis
std::vector<uq::ThetaPoint> eval_grid(const RunConfig& cfg);

std::vector<double> lambda_grid(const RunConfig& cfg);

// Runs one command against the run directory cfg.out and finishes by
// writing manifest_<command>.json. Artifacts are write-once; errors use the
// library exception types and are mapped to exit codes by the caller.
void run_command(const std::string& command, const RunConfig& cfg,
                 const std::string& config_echo);

std::string usage_text();

}  // namespace cdf2pdf::cli
