#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cdf2pdf/dataset.hpp"
#include "cdf2pdf/network.hpp"
#include "cdf2pdf/pdf_curve.hpp"
#include "cdf2pdf/training.hpp"

namespace cdf2pdf::uq {

enum class EnsembleSource { bootstrap, weight_fluctuation };

struct Ensemble {
  std::vector<nn::Network> members;
  EnsembleSource source = EnsembleSource::bootstrap;
  std::uint64_t seed = 0;
  double sigma = 0.0;  // weight_fluctuation only

  std::size_t size() const { return members.size(); }
};

// Trains `members` networks, each on an independent with-replacement resample
// of the training rows. Member k draws its resample from the child stream
// ("bootstrap-resample", k) and shuffles batches with ("bootstrap-train", k),
// so the ensemble is reproducible from `seed` alone, independent of worker
// count or scheduling. Members validate (and checkpoint) on their own
// resample. With shared_init every member starts from the weights given by
// spec.init; otherwise member k re-rolls them from ("bootstrap-init", k).
Ensemble bootstrap_ensemble(const data::Dataset& train_set,
                            const nn::NetworkSpec& spec,
                            const train::TrainConfig& config, long members,
                            std::uint64_t seed, int workers = 1,
                            bool shared_init = true);

// `copies` clones of a trained network with every weight and bias nudged by
// sigma * N(0,1) from the child stream ("fluctuate", k). Learnable activation
// slopes are left alone. sigma = 0 reproduces the input network exactly.
Ensemble weight_fluctuate(const nn::Network& net, double sigma, long copies,
                          std::uint64_t seed);

enum class CurveKind { cdf, pdf };

// Pointwise member spread over a lambda grid at fixed theta.
struct Envelope {
  std::vector<double> lambda;
  std::vector<double> lo;
  std::vector<double> mean;
  std::vector<double> hi;
  double level = 0.0;
};

// lo/hi are the empirical (1-level)/2 and (1+level)/2 quantiles of the member
// predictions at each grid point; mean is their average. `kind` selects the
// model CDF or the derived density.
Envelope ensemble_envelope(const Ensemble& ens, const ThetaPoint& theta,
                           std::span<const double> lambda_grid, double level,
                           CurveKind kind);

}  // namespace cdf2pdf::uq
