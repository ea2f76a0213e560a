#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cdf2pdf/activations.hpp"
#include "cdf2pdf/dataset.hpp"
#include "cdf2pdf/loss.hpp"
#include "cdf2pdf/network.hpp"
#include "cdf2pdf/optimizer.hpp"
#include "cdf2pdf/sweep.hpp"
#include "cdf2pdf/training.hpp"

namespace cdf2pdf::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Parsed command line. Flags override config-file values.
struct CliArgs {
  std::string command;
  std::optional<std::filesystem::path> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
  std::optional<int> workers;
};

CliArgs parse_cli(int argc, const char* const* argv);  // throws ConfigError

// Effective run configuration. Every field has a documented default; the
// echo below prints all of them, so a run is fully described by its echo.
struct RunConfig {
  // [run]
  std::string problem = "onoff";  // onoff | sir
  std::uint64_t seed = 13;
  std::filesystem::path out;  // resolution order: --out, file, CDF2PDF_OUT, "runs"
  int workers = 1;

  // [data]
  std::string generator = "ecdf";  // ecdf | alffi (alffi: onoff only)
  long points = 0;                 // parameter points (alffi: records)
  long draws = 0;                  // statistics per point, ecdf only
  data::PriorBox prior;
  double split_train = 0.8;
  double split_val = 0.1;
  double split_calib = 0.1;
  bool group_aware = true;

  // [scenario], sir only
  data::SirScenario scenario;

  // [network]
  int layers = 6;
  int width = 12;
  nn::Activation activation = nn::Activation::silu;
  nn::Activation output_act = nn::Activation::sigmoid;
  double kappa = 1.0;

  // [train]; seed is filled per command from the master seed
  train::TrainConfig tr;

  // [sweep]
  int trials = 10;
  long epochs = 5;
  train::SweepSpace space;

  // [uq]
  double alpha = 0.32;
  std::string band = "cdf";  // conformal score space: cdf | pdf
  long boot_members = 20;
  bool shared_init = true;
  double sigma = 0.01;
  long copies = 100;
  double level = 0.68;  // envelope central mass

  // [eval]
  int grid = 3;  // grid x grid interior points of the prior box
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  long lambda_points = 201;

  // [msnn]
  int msnn_stages = 3;
  int msnn_layers = 2;
  int msnn_width = 32;
  double msnn_kappa = 60.0;
  long msnn_iterations = 4000;
};

// File (when given) + environment + flag overrides, fully validated.
// Errors name the offending key, the value, and the permitted range.
RunConfig load_run_config(const CliArgs& args);

// INI text of the effective configuration, all defaults included. Parsing
// the echo reproduces the configuration exactly.
std::string echo_config(const RunConfig& cfg);

// Echo -> RunConfig, used to prove snapshots round-trip (out is taken
// verbatim from the text, no environment lookup).
RunConfig config_from_text(const std::string& ini_text);

}  // namespace cdf2pdf::cli
