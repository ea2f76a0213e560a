#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cdf2pdf/sir.hpp"

namespace cdf2pdf::data {

// Uniform box prior over the two model parameters.
struct PriorBox {
  double t1_lo = 0.0, t1_hi = 0.0;
  double t2_lo = 0.0, t2_hi = 0.0;
};

struct SirScenario {
  long population = 1000;
  long initial_infected = 1;
  int horizon = 50;          // daily observations 1..horizon
  double ode_step = 0.01;
  double truth_alpha = 0.1;  // generates the stored observed epidemic
  double truth_beta = 5e-4;
  bool floor_mean = false;
};

struct DatasetMeta {
  std::string problem;    // "onoff" | "sir" | freeform for synthetic fixtures
  std::string generator;  // "ecdf" | "alffi"
  std::uint64_t seed = 0;
  long points = 0;           // parameter points (ecdf) or records (alffi)
  long draws_per_point = 0;  // ecdf only
  PriorBox prior;
  SirScenario scenario;              // sir only, defaulted otherwise
  sim::SirTrajectory observed;       // sir only: fixed observed epidemic
  bool has_scenario = false;
};

// Flat record table, one row per (parameter point, statistic) pair. For
// empirical-CDF datasets `target` is the within-group ECDF value of `lambda`;
// for indicator datasets it is the 0/1 indicator. `group` ties rows generated
// from one parameter point together (row index for indicator data).
struct Dataset {
  std::vector<double> theta1;
  std::vector<double> theta2;
  std::vector<double> lambda;
  std::vector<double> target;
  std::vector<long> group;
  DatasetMeta meta;

  std::size_t size() const { return lambda.size(); }
  void append(double t1, double t2, double lam, double tgt, long grp);

  // row-major (theta1, theta2, lambda) feature matrix for training
  std::vector<double> feature_matrix() const;
};

// ECDF regression data for the counting experiment: per parameter point, K
// statistic draws and their within-group ECDF values.
Dataset gen_ecdf_onoff(long points, long draws_per_point, const PriorBox& prior,
                       std::uint64_t seed);

// Indicator regression data for the counting experiment: each record draws
// its own parameters, a null statistic, and an independent comparison
// statistic from freshly drawn parameters; the target marks whether the null
// statistic is at or below the comparison one.
Dataset gen_alffi_onoff(long records, const PriorBox& prior, std::uint64_t seed);

// ECDF regression data for the epidemic model: per parameter point, K
// stochastic epidemics scored against that point's deterministic mean curve.
// A fixed observed epidemic from the scenario's truth point is generated once
// and stored in the metadata.
Dataset gen_ecdf_sir(long points, long draws_per_point, const PriorBox& prior,
                     const SirScenario& scenario, std::uint64_t seed);

struct SplitSpec {
  double train = 0.8;
  double val = 0.1;
  double calib = 0.1;
  bool group_aware = true;  // keep every group intact within one part
  std::uint64_t seed = 0;
};

struct SplitResult {
  Dataset train;
  Dataset val;
  Dataset calib;
};

// Seeded disjoint partition; parts keep the original row order. Fractions
// must sum to 1 and every part must come out nonempty.
SplitResult split_dataset(const Dataset& ds, const SplitSpec& spec);

// CSV with header theta1,theta2,lambda,target,group_id plus a JSON metadata
// sidecar at <path>.meta.json. Round-trips exactly.
void save_dataset(const Dataset& ds, const std::filesystem::path& csv_path);
Dataset load_dataset(const std::filesystem::path& csv_path);

}  // namespace cdf2pdf::data
