#include "cdf2pdf/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "cdf2pdf/csv.hpp"
#include "cdf2pdf/ecdf.hpp"
#include "cdf2pdf/errors.hpp"
#include "cdf2pdf/onoff.hpp"
#include "cdf2pdf/rng.hpp"

namespace cdf2pdf::data {

using nlohmann::json;

void Dataset::append(double t1, double t2, double lam, double tgt, long grp) {
  theta1.push_back(t1);
  theta2.push_back(t2);
  lambda.push_back(lam);
  target.push_back(tgt);
  group.push_back(grp);
}

std::vector<double> Dataset::feature_matrix() const {
  std::vector<double> x;
  x.reserve(size() * 3);
  for (std::size_t i = 0; i < size(); ++i) {
    x.push_back(theta1[i]);
    x.push_back(theta2[i]);
    x.push_back(lambda[i]);
  }
  return x;
}

namespace {

void check_prior(const PriorBox& prior) {
  if (!(prior.t1_hi >= prior.t1_lo) || !(prior.t2_hi >= prior.t2_lo)) {
    throw DomainError("prior box: upper bound below lower bound");
  }
}

double draw_in(RngStream& rs, double lo, double hi) {
  return lo == hi ? lo : rs.uniform(lo, hi);
}

}  // namespace

Dataset gen_ecdf_onoff(long points, long draws_per_point, const PriorBox& prior,
                       std::uint64_t seed) {
  if (points < 1) throw DomainError("gen_ecdf_onoff: points must be >= 1");
  if (draws_per_point < 1) {
    throw DomainError("gen_ecdf_onoff: draws per point must be >= 1");
  }
  check_prior(prior);

  Dataset ds;
  ds.meta.problem = "onoff";
  ds.meta.generator = "ecdf";
  ds.meta.seed = seed;
  ds.meta.points = points;
  ds.meta.draws_per_point = draws_per_point;
  ds.meta.prior = prior;

  std::vector<double> lams(static_cast<std::size_t>(draws_per_point));
  for (long i = 0; i < points; ++i) {
    RngStream rs(child_seed(seed, "ecdf-onoff-point", static_cast<std::uint64_t>(i)));
    const double mu = draw_in(rs, prior.t1_lo, prior.t1_hi);
    const double nu = draw_in(rs, prior.t2_lo, prior.t2_hi);
    for (long j = 0; j < draws_per_point; ++j) {
      const sim::OnOffObservation obs{rs.poisson(mu + nu), rs.poisson(nu)};
      lams[static_cast<std::size_t>(j)] = sim::onoff_lambda(obs, {mu, nu});
    }
    const std::vector<double> targets = stats::ecdf_targets(lams);
    for (long j = 0; j < draws_per_point; ++j) {
      ds.append(mu, nu, lams[static_cast<std::size_t>(j)],
                targets[static_cast<std::size_t>(j)], i);
    }
  }
  return ds;
}

Dataset gen_alffi_onoff(long records, const PriorBox& prior, std::uint64_t seed) {
  if (records < 1) throw DomainError("gen_alffi_onoff: records must be >= 1");
  check_prior(prior);

  Dataset ds;
  ds.meta.problem = "onoff";
  ds.meta.generator = "alffi";
  ds.meta.seed = seed;
  ds.meta.points = records;
  ds.meta.prior = prior;

  for (long i = 0; i < records; ++i) {
    RngStream rs(child_seed(seed, "alffi-onoff-record", static_cast<std::uint64_t>(i)));
    const double mu = draw_in(rs, prior.t1_lo, prior.t1_hi);
    const double nu = draw_in(rs, prior.t2_lo, prior.t2_hi);
    const sim::OnOffObservation null_obs{rs.poisson(mu + nu), rs.poisson(nu)};
    const double mu2 = draw_in(rs, prior.t1_lo, prior.t1_hi);
    const double nu2 = draw_in(rs, prior.t2_lo, prior.t2_hi);
    const sim::OnOffObservation comp_obs{rs.poisson(mu2 + nu2), rs.poisson(nu2)};
    const double lam_null = sim::onoff_lambda(null_obs, {mu, nu});
    const double lam_comp = sim::onoff_lambda(comp_obs, {mu, nu});
    ds.append(mu, nu, lam_null, lam_null <= lam_comp ? 1.0 : 0.0, i);
  }
  return ds;
}

Dataset gen_ecdf_sir(long points, long draws_per_point, const PriorBox& prior,
                     const SirScenario& scenario, std::uint64_t seed) {
  if (points < 1) throw DomainError("gen_ecdf_sir: points must be >= 1");
  if (draws_per_point < 1) {
    throw DomainError("gen_ecdf_sir: draws per point must be >= 1");
  }
  check_prior(prior);
  if (scenario.population < 1) throw DomainError("gen_ecdf_sir: population must be >= 1");
  if (scenario.initial_infected < 0 ||
      scenario.initial_infected > scenario.population) {
    throw DomainError("gen_ecdf_sir: initial infected outside population");
  }
  if (scenario.horizon < 1) throw DomainError("gen_ecdf_sir: horizon must be >= 1");

  Dataset ds;
  ds.meta.problem = "sir";
  ds.meta.generator = "ecdf";
  ds.meta.seed = seed;
  ds.meta.points = points;
  ds.meta.draws_per_point = draws_per_point;
  ds.meta.prior = prior;
  ds.meta.scenario = scenario;
  ds.meta.has_scenario = true;

  const long s0 = scenario.population - scenario.initial_infected;
  const long i0 = scenario.initial_infected;

  {
    RngStream rs(child_seed(seed, "sir-observed", 0));
    ds.meta.observed = sim::sir_simulate({scenario.truth_alpha, scenario.truth_beta},
                                         s0, i0, 0, scenario.horizon, rs);
  }

  std::vector<double> grid(static_cast<std::size_t>(scenario.horizon));
  for (int d = 1; d <= scenario.horizon; ++d) {
    grid[static_cast<std::size_t>(d - 1)] = static_cast<double>(d);
  }
  const sim::SirState init{static_cast<double>(s0), static_cast<double>(i0), 0.0};

  std::vector<double> lams(static_cast<std::size_t>(draws_per_point));
  for (long i = 0; i < points; ++i) {
    RngStream rs(child_seed(seed, "sir-point", static_cast<std::uint64_t>(i)));
    const double alpha = draw_in(rs, prior.t1_lo, prior.t1_hi);
    const double beta = draw_in(rs, prior.t2_lo, prior.t2_hi);
    const sim::SirParams params{alpha, beta};
    const sim::SirTrajectory means =
        sim::sir_mean_trajectory(params, init, grid, scenario.ode_step);
    for (long j = 0; j < draws_per_point; ++j) {
      const sim::SirTrajectory epi =
          sim::sir_simulate(params, s0, i0, 0, scenario.horizon, rs);
      lams[static_cast<std::size_t>(j)] = sim::sir_lambda(
          std::span<const double>(epi.i).subspan(1), means.i, scenario.floor_mean);
    }
    const std::vector<double> targets = stats::ecdf_targets(lams);
    for (long j = 0; j < draws_per_point; ++j) {
      ds.append(alpha, beta, lams[static_cast<std::size_t>(j)],
                targets[static_cast<std::size_t>(j)], i);
    }
  }
  return ds;
}

namespace {

Dataset take_rows(const Dataset& ds, const std::vector<std::size_t>& idx) {
  Dataset out;
  out.meta = ds.meta;
  out.theta1.reserve(idx.size());
  out.theta2.reserve(idx.size());
  out.lambda.reserve(idx.size());
  out.target.reserve(idx.size());
  out.group.reserve(idx.size());
  for (const std::size_t i : idx) {
    out.append(ds.theta1[i], ds.theta2[i], ds.lambda[i], ds.target[i], ds.group[i]);
  }
  return out;
}

}  // namespace

SplitResult split_dataset(const Dataset& ds, const SplitSpec& spec) {
  if (ds.size() == 0) throw ShapeError("split_dataset: empty dataset");
  const double sum = spec.train + spec.val + spec.calib;
  if (!(spec.train > 0.0) || !(spec.val > 0.0) || !(spec.calib > 0.0)) {
    throw ConfigError("split fractions must all be > 0");
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw ConfigError("split fractions must sum to 1");
  }

  RngStream rs(spec.seed);
  std::vector<std::size_t> train_idx, val_idx, calib_idx;

  if (spec.group_aware) {
    std::vector<long> groups;
    std::unordered_map<long, std::size_t> seen;
    for (const long g : ds.group) {
      if (seen.emplace(g, groups.size()).second) groups.push_back(g);
    }
    const std::size_t ng = groups.size();
    std::vector<std::size_t> order(ng);
    std::iota(order.begin(), order.end(), 0u);
    for (std::size_t k = ng; k > 1; --k) {
      const std::size_t j = static_cast<std::size_t>(
          rs.uniform_int(0, static_cast<long>(k) - 1));
      std::swap(order[k - 1], order[j]);
    }
    const std::size_t n_train = static_cast<std::size_t>(
        std::floor(static_cast<double>(ng) * spec.train));
    const std::size_t n_val = static_cast<std::size_t>(
        std::floor(static_cast<double>(ng) * spec.val));
    const std::size_t n_calib = ng - n_train - n_val;
    if (n_train == 0 || n_val == 0 || n_calib == 0) {
      throw ConfigError("split: a fraction rounds to zero groups");
    }
    // part id per group: 0 train, 1 val, 2 calib
    std::vector<int> part(ng, 2);
    for (std::size_t k = 0; k < n_train; ++k) part[order[k]] = 0;
    for (std::size_t k = n_train; k < n_train + n_val; ++k) part[order[k]] = 1;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const int p = part[seen.at(ds.group[i])];
      (p == 0 ? train_idx : p == 1 ? val_idx : calib_idx).push_back(i);
    }
  } else {
    const std::size_t n = ds.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    for (std::size_t k = n; k > 1; --k) {
      const std::size_t j = static_cast<std::size_t>(
          rs.uniform_int(0, static_cast<long>(k) - 1));
      std::swap(order[k - 1], order[j]);
    }
    const std::size_t n_train = static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * spec.train));
    const std::size_t n_val = static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * spec.val));
    const std::size_t n_calib = n - n_train - n_val;
    if (n_train == 0 || n_val == 0 || n_calib == 0) {
      throw ConfigError("split: a fraction rounds to zero records");
    }
    train_idx.assign(order.begin(), order.begin() + static_cast<long>(n_train));
    val_idx.assign(order.begin() + static_cast<long>(n_train),
                   order.begin() + static_cast<long>(n_train + n_val));
    calib_idx.assign(order.begin() + static_cast<long>(n_train + n_val), order.end());
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(val_idx.begin(), val_idx.end());
    std::sort(calib_idx.begin(), calib_idx.end());
  }

  SplitResult out;
  out.train = take_rows(ds, train_idx);
  out.val = take_rows(ds, val_idx);
  out.calib = take_rows(ds, calib_idx);
  return out;
}

namespace {

json trajectory_to_json(const sim::SirTrajectory& tr) {
  return json{{"t", tr.t}, {"s", tr.s}, {"i", tr.i}, {"r", tr.r}};
}

sim::SirTrajectory trajectory_from_json(const json& j) {
  sim::SirTrajectory tr;
  tr.t = j.at("t").get<std::vector<double>>();
  tr.s = j.at("s").get<std::vector<double>>();
  tr.i = j.at("i").get<std::vector<double>>();
  tr.r = j.at("r").get<std::vector<double>>();
  return tr;
}

std::filesystem::path meta_path(const std::filesystem::path& csv_path) {
  std::filesystem::path p = csv_path;
  p += ".meta.json";
  return p;
}

}  // namespace

void save_dataset(const Dataset& ds, const std::filesystem::path& csv_path) {
  std::vector<double> group_col(ds.group.begin(), ds.group.end());
  write_csv(csv_path, {"theta1", "theta2", "lambda", "target", "group_id"},
            {ds.theta1, ds.theta2, ds.lambda, ds.target, group_col});

  json meta;
  meta["format"] = "cdf2pdf-dataset";
  meta["version"] = 1;
  meta["problem"] = ds.meta.problem;
  meta["generator"] = ds.meta.generator;
  meta["seed"] = ds.meta.seed;
  meta["points"] = ds.meta.points;
  meta["draws_per_point"] = ds.meta.draws_per_point;
  meta["prior"] = {{"t1_lo", ds.meta.prior.t1_lo},
                   {"t1_hi", ds.meta.prior.t1_hi},
                   {"t2_lo", ds.meta.prior.t2_lo},
                   {"t2_hi", ds.meta.prior.t2_hi}};
  if (ds.meta.has_scenario) {
    const SirScenario& sc = ds.meta.scenario;
    meta["scenario"] = {{"population", sc.population},
                        {"initial_infected", sc.initial_infected},
                        {"horizon", sc.horizon},
                        {"ode_step", sc.ode_step},
                        {"truth_alpha", sc.truth_alpha},
                        {"truth_beta", sc.truth_beta},
                        {"floor_mean", sc.floor_mean}};
    meta["observed"] = trajectory_to_json(ds.meta.observed);
  }
  std::ofstream out(meta_path(csv_path));
  if (!out) {
    throw DependencyError("cannot write dataset metadata: " +
                          meta_path(csv_path).string());
  }
  out << meta.dump(1) << '\n';
}

Dataset load_dataset(const std::filesystem::path& csv_path) {
  const CsvTable table =
      read_csv(csv_path, {"theta1", "theta2", "lambda", "target", "group_id"});
  Dataset ds;
  for (const auto& row : table.rows) {
    ds.append(row[0], row[1], row[2], row[3], static_cast<long>(row[4]));
  }

  const std::filesystem::path mp = meta_path(csv_path);
  std::ifstream in(mp);
  if (in) {
    json meta;
    try {
      in >> meta;
      ds.meta.problem = meta.at("problem").get<std::string>();
      ds.meta.generator = meta.at("generator").get<std::string>();
      ds.meta.seed = meta.at("seed").get<std::uint64_t>();
      ds.meta.points = meta.at("points").get<long>();
      ds.meta.draws_per_point = meta.at("draws_per_point").get<long>();
      const json& prior = meta.at("prior");
      ds.meta.prior = {prior.at("t1_lo").get<double>(), prior.at("t1_hi").get<double>(),
                       prior.at("t2_lo").get<double>(), prior.at("t2_hi").get<double>()};
      if (meta.contains("scenario")) {
        const json& sc = meta.at("scenario");
        ds.meta.scenario.population = sc.at("population").get<long>();
        ds.meta.scenario.initial_infected = sc.at("initial_infected").get<long>();
        ds.meta.scenario.horizon = sc.at("horizon").get<int>();
        ds.meta.scenario.ode_step = sc.at("ode_step").get<double>();
        ds.meta.scenario.truth_alpha = sc.at("truth_alpha").get<double>();
        ds.meta.scenario.truth_beta = sc.at("truth_beta").get<double>();
        ds.meta.scenario.floor_mean = sc.at("floor_mean").get<bool>();
        ds.meta.observed = trajectory_from_json(meta.at("observed"));
        ds.meta.has_scenario = true;
      }
    } catch (const json::exception& e) {
      throw ParseError("dataset metadata malformed (" + mp.string() + "): " + e.what());
    }
  } else {
    ds.meta.problem = "unknown";
    ds.meta.generator = "unknown";
  }
  return ds;
}

}  // namespace cdf2pdf::data
