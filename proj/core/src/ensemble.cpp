#include "cdf2pdf/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "cdf2pdf/ecdf.hpp"
#include "cdf2pdf/errors.hpp"
#include "cdf2pdf/rng.hpp"

namespace cdf2pdf::uq {

namespace {

data::Dataset resample_rows(const data::Dataset& src, RngStream& rng) {
  const long n = static_cast<long>(src.size());
  data::Dataset out;
  out.meta = src.meta;
  for (long i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(0, n - 1));
    out.append(src.theta1[j], src.theta2[j], src.lambda[j], src.target[j],
               src.group[j]);
  }
  return out;
}

}  // namespace

Ensemble bootstrap_ensemble(const data::Dataset& train_set,
                            const nn::NetworkSpec& spec,
                            const train::TrainConfig& config, long members,
                            std::uint64_t seed, int workers,
                            bool shared_init) {
  if (members < 1) throw ConfigError("bootstrap_ensemble: members must be >= 1");
  if (train_set.size() == 0)
    throw ShapeError("bootstrap_ensemble: empty training set");

  Ensemble ens;
  ens.source = EnsembleSource::bootstrap;
  ens.seed = seed;
  ens.members.resize(static_cast<std::size_t>(members));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(members));

  auto fit_member = [&](long k) {
    const auto idx = static_cast<std::uint64_t>(k);
    RngStream resample_rng(child_seed(seed, "bootstrap-resample", idx));
    const data::Dataset resample = resample_rows(train_set, resample_rng);

    nn::NetworkSpec member_spec = spec;
    if (!shared_init)
      member_spec.init.seed = child_seed(seed, "bootstrap-init", idx);

    train::TrainConfig member_config = config;
    member_config.seed = child_seed(seed, "bootstrap-train", idx);

    train::TrainResult result =
        train::train_regressor(resample, resample, member_spec, member_config);
    ens.members[static_cast<std::size_t>(k)] = std::move(result.net);
  };

  const int threads = static_cast<int>(
      std::min<long>(std::max(workers, 1), members));
  if (threads <= 1) {
    for (long k = 0; k < members; ++k) fit_member(k);
  } else {
    std::atomic<long> next{0};
    auto worker = [&] {
      for (;;) {
        const long k = next.fetch_add(1);
        if (k >= members) return;
        try {
          fit_member(k);
        } catch (...) {
          errors[static_cast<std::size_t>(k)] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return ens;
}

Ensemble weight_fluctuate(const nn::Network& net, double sigma, long copies,
                          std::uint64_t seed) {
  if (copies < 1) throw ConfigError("weight_fluctuate: copies must be >= 1");
  if (sigma < 0.0) throw DomainError("weight_fluctuate: sigma must be >= 0");

  Ensemble ens;
  ens.source = EnsembleSource::weight_fluctuation;
  ens.seed = seed;
  ens.sigma = sigma;
  ens.members.reserve(static_cast<std::size_t>(copies));
  for (long k = 0; k < copies; ++k) {
    RngStream rng(child_seed(seed, "fluctuate", static_cast<std::uint64_t>(k)));
    nn::Network clone = net;
    for (auto& layer : clone.layers) {
      for (double& w : layer.w) w += sigma * rng.normal();
      for (double& b : layer.b) b += sigma * rng.normal();
    }
    ens.members.push_back(std::move(clone));
  }
  return ens;
}

Envelope ensemble_envelope(const Ensemble& ens, const ThetaPoint& theta,
                           std::span<const double> lambda_grid, double level,
                           CurveKind kind) {
  if (ens.members.empty()) throw ShapeError("ensemble_envelope: no members");
  if (lambda_grid.empty()) throw ShapeError("ensemble_envelope: empty grid");
  if (!(level > 0.0 && level < 1.0))
    throw DomainError("ensemble_envelope: level must lie in (0, 1)");

  Envelope env;
  env.level = level;
  env.lambda.assign(lambda_grid.begin(), lambda_grid.end());
  env.lo.resize(lambda_grid.size());
  env.mean.resize(lambda_grid.size());
  env.hi.resize(lambda_grid.size());

  const double p_lo = (1.0 - level) / 2.0;
  const double p_hi = (1.0 + level) / 2.0;
  std::vector<double> values(ens.members.size());
  for (std::size_t g = 0; g < lambda_grid.size(); ++g) {
    double sum = 0.0;
    for (std::size_t k = 0; k < ens.members.size(); ++k) {
      values[k] = kind == CurveKind::cdf
                      ? cdf_eval(ens.members[k], theta, lambda_grid[g])
                      : pdf_eval(ens.members[k], theta, lambda_grid[g]);
      sum += values[k];
    }
    env.lo[g] = stats::empirical_quantile(values, p_lo);
    env.hi[g] = stats::empirical_quantile(values, p_hi);
    env.mean[g] = sum / static_cast<double>(ens.members.size());
  }
  return env;
}

}  // namespace cdf2pdf::uq
