#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <map>
#include <optional>

#include <nlohmann/json.hpp>

#include "artifacts.hpp"
#include "cdf2pdf/conformal.hpp"
#include "cdf2pdf/csv.hpp"
#include "cdf2pdf/dataset.hpp"
#include "cdf2pdf/ecdf.hpp"
#include "cdf2pdf/ensemble.hpp"
#include "cdf2pdf/errors.hpp"
#include "cdf2pdf/histogram.hpp"
#include "cdf2pdf/model_io.hpp"
#include "cdf2pdf/msnn.hpp"
#include "cdf2pdf/residuals.hpp"
#include "cdf2pdf/rng.hpp"
#include "cdf2pdf/sweep.hpp"
#include "cdf2pdf/training.hpp"
#include "manifest.hpp"
#include "svg.hpp"

namespace fs = std::filesystem;

namespace cdf2pdf::cli {
namespace {

constexpr const char* kModelColor = "#c23b3b";
constexpr const char* kBandColor = "#7aa6d9";
constexpr const char* kTruthColor = "#444444";
constexpr const char* kHistColor = "#8fbf8f";
constexpr const char* kBootColor = "#d9863b";
constexpr const char* kFluctColor = "#9b59d0";

std::string num4(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string theta_str(const uq::ThetaPoint& t) {
  return "(" + num4(t.theta1) + ", " + num4(t.theta2) + ")";
}

std::string loss_label(const RunConfig& cfg) {
  return nn::loss_name(cfg.tr.loss.kind) + " loss";
}

data::Dataset load_dataset_artifact(const fs::path& run_dir,
                                    const std::string& rel,
                                    const char* producer) {
  const fs::path p = run_dir / rel;
  if (!fs::exists(p))
    throw DependencyError("missing artifact: " + rel + " (run `cdf2pdf " +
                          std::string(producer) + "` first)");
  return data::load_dataset(p);
}

nn::LoadedModel load_model_artifact(const fs::path& run_dir) {
  const fs::path p = run_dir / "model.json";
  if (!fs::exists(p))
    throw DependencyError(
        "missing artifact: model.json (run `cdf2pdf train` first)");
  return nn::load_model(p);
}

nn::NetworkSpec network_spec(const RunConfig& cfg) {
  nn::NetworkSpec spec;
  spec.widths.push_back(3);
  for (int l = 0; l < cfg.layers; ++l) spec.widths.push_back(cfg.width);
  spec.widths.push_back(1);
  spec.hidden.assign(static_cast<std::size_t>(cfg.layers), cfg.activation);
  spec.output = cfg.output_act;
  spec.init = {child_seed(cfg.seed, "init", 0), cfg.kappa};
  return spec;
}

train::TrainConfig train_config(const RunConfig& cfg) {
  train::TrainConfig tc = cfg.tr;
  tc.seed = child_seed(cfg.seed, "train", 0);
  return tc;
}

void put_dataset(ArtifactWriter& w, const std::string& rel,
                 const data::Dataset& ds) {
  const fs::path tmp = w.tmp_path("dataset.csv");
  data::save_dataset(ds, tmp);
  w.put_file(rel, tmp);
  w.put_file(rel + ".meta.json", fs::path(tmp.string() + ".meta.json"));
}

void put_curve(ArtifactWriter& w, const std::string& rel,
               const uq::PdfCurve& curve) {
  const fs::path tmp = w.tmp_path("curve.csv");
  uq::save_pdf_curve(curve, tmp);
  w.put_file(rel, tmp);
  w.put_file(rel + ".meta.json", fs::path(tmp.string() + ".meta.json"));
}

void put_columns(ArtifactWriter& w, const std::string& rel,
                 const std::vector<std::string>& header,
                 const std::vector<std::span<const double>>& columns) {
  const fs::path tmp = w.tmp_path("table.csv");
  write_csv(tmp, header, columns);
  w.put_file(rel, tmp);
}

std::string curve_rel(int k) {
  return "curves/point_" + std::to_string(k) + ".csv";
}

std::string envelope_rel(const char* source, const char* kind, int k) {
  return std::string("envelope_") + source + "_" + kind + "_p" +
         std::to_string(k) + ".csv";
}

// calibration.json round-trip; the band target travels with the artifact so
// downstream commands do not depend on the current config
struct CalibrationFile {
  std::string target;  // "cdf" | "pdf"
  uq::ConformalCalibration calib;
  std::optional<double> coverage;
};

std::optional<CalibrationFile> load_calibration(const fs::path& run_dir) {
  const fs::path p = run_dir / "calibration.json";
  if (!fs::exists(p)) return std::nullopt;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(p));
    CalibrationFile out;
    out.target = j.at("target").get<std::string>();
    out.calib.alpha = j.at("alpha").get<double>();
    out.calib.q_hat = j.at("q_hat").get<double>();
    out.calib.at_max = j.at("at_max").get<bool>();
    out.calib.scores = j.at("scores").get<std::vector<double>>();
    if (j.contains("coverage"))
      out.coverage = j.at("coverage").get<double>();
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("calibration.json: " + std::string(e.what()));
  }
}

// ---------------------------------------------------------------- commands

void cmd_gen(const RunConfig& cfg, ArtifactWriter& w) {
  data::Dataset ds;
  const std::uint64_t gseed = child_seed(cfg.seed, "gen", 0);
  if (cfg.problem == "onoff" && cfg.generator == "ecdf") {
    ds = data::gen_ecdf_onoff(cfg.points, cfg.draws, cfg.prior, gseed);
  } else if (cfg.problem == "onoff" && cfg.generator == "alffi") {
    ds = data::gen_alffi_onoff(cfg.points, cfg.prior, gseed);
  } else {
    ds = data::gen_ecdf_sir(cfg.points, cfg.draws, cfg.prior, cfg.scenario,
                            gseed);
  }

  data::SplitSpec split;
  split.train = cfg.split_train;
  split.val = cfg.split_val;
  split.calib = cfg.split_calib;
  split.group_aware = cfg.group_aware;
  split.seed = child_seed(cfg.seed, "split", 0);
  const data::SplitResult parts = data::split_dataset(ds, split);

  put_dataset(w, "dataset.csv", ds);
  put_dataset(w, "train.csv", parts.train);
  put_dataset(w, "val.csv", parts.val);
  put_dataset(w, "calib.csv", parts.calib);

  std::cout << "gen: dataset.csv (" << ds.size() << " rows), split "
            << parts.train.size() << "/" << parts.val.size() << "/"
            << parts.calib.size() << " train/val/calib\n";
}

void cmd_train(const RunConfig& cfg, ArtifactWriter& w) {
  const data::Dataset train_set =
      load_dataset_artifact(w.run_dir(), "train.csv", "gen");
  const data::Dataset val_set =
      load_dataset_artifact(w.run_dir(), "val.csv", "gen");

  const train::TrainResult r =
      train::train_regressor(train_set, val_set, network_spec(cfg),
                             train_config(cfg));

  w.put_text("model.json", nn::model_to_string(r.net, cfg.seed));
  std::vector<double> iters(r.curve.iteration.begin(),
                            r.curve.iteration.end());
  put_columns(w, "loss_curve.csv", {"iteration", "train_loss", "val_loss"},
              {iters, r.curve.train_loss, r.curve.val_loss});

  std::cout << "train: best val loss " << format_double(r.best_val_loss)
            << " at iteration " << r.best_iteration << "\n";
}

void cmd_sweep(const RunConfig& cfg, ArtifactWriter& w) {
  const data::Dataset train_set =
      load_dataset_artifact(w.run_dir(), "train.csv", "gen");
  const data::Dataset val_set =
      load_dataset_artifact(w.run_dir(), "val.csv", "gen");

  train::SweepBudget budget;
  budget.loss = cfg.tr.loss;
  budget.iterations = 0;
  budget.epochs = cfg.epochs;
  budget.val_every = cfg.tr.val_every;
  budget.standardize = cfg.tr.standardize;

  const train::SweepResult res =
      train::random_sweep(cfg.space, cfg.trials, train_set, val_set, budget,
                          child_seed(cfg.seed, "sweep", 0), cfg.workers);

  nlohmann::json j;
  j["format"] = "cdf2pdf-sweep";
  j["version"] = 1;
  j["best_index"] = res.best_index;
  auto& trials = j["trials"] = nlohmann::json::array();
  for (const train::SweepTrial& t : res.trials) {
    nlohmann::json e;
    e["index"] = t.index;
    e["layers"] = t.config.layers;
    e["width"] = t.config.width;
    e["optimizer"] = nn::optimizer_name(t.config.optimizer);
    e["lr"] = t.config.lr;
    e["batch"] = t.config.batch;
    e["activation"] = nn::activation_name(t.config.activation);
    if (t.error.empty())
      e["val_loss"] = t.val_loss;
    else
      e["error"] = t.error;
    trials.push_back(std::move(e));
  }
  w.put_text("sweep.json", j.dump(1) + "\n");

  const train::TrialConfig& best = res.trials[static_cast<std::size_t>(
                                                  res.best_index)]
                                       .config;
  std::string ini;
  ini += "# winning sweep trial " + std::to_string(res.best_index) + "\n";
  ini += "[network]\n";
  ini += "layers = " + std::to_string(best.layers) + "\n";
  ini += "width = " + std::to_string(best.width) + "\n";
  ini += "activation = " + nn::activation_name(best.activation) + "\n";
  ini += "\n[train]\n";
  ini += "optimizer = " + nn::optimizer_name(best.optimizer) + "\n";
  ini += "lr = " + format_double(best.lr) + "\n";
  ini += "batch = " + std::to_string(best.batch) + "\n";
  w.put_text("best.ini", ini);

  const train::SweepTrial& bt =
      res.trials[static_cast<std::size_t>(res.best_index)];
  std::cout << "sweep: best trial " << res.best_index << " (val loss "
            << format_double(bt.val_loss) << "), wrote best.ini\n";
}

void cmd_eval(const RunConfig& cfg, ArtifactWriter& w) {
  const nn::LoadedModel model = load_model_artifact(w.run_dir());
  const std::optional<CalibrationFile> calib = load_calibration(w.run_dir());

  const std::vector<uq::ThetaPoint> thetas = eval_grid(cfg);
  const std::vector<double> grid = lambda_grid(cfg);

  double viol = 0.0;
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    uq::PdfCurve curve = uq::build_pdf_curve(model.net, thetas[k], grid);
    if (calib) {
      if (calib->target == "cdf")
        uq::attach_cdf_band(curve, calib->calib);
      else
        uq::attach_pdf_band(curve, calib->calib);
    }
    viol += curve.monotonicity_violation_rate;
    put_curve(w, curve_rel(static_cast<int>(k)), curve);
  }

  std::cout << "eval: " << thetas.size() << " curves, "
            << (calib ? "with " + calib->target + " band" : "no band")
            << ", mean negative-density rate "
            << format_double(viol / static_cast<double>(thetas.size()))
            << "\n";
}

void cmd_conform(const RunConfig& cfg, ArtifactWriter& w) {
  const nn::LoadedModel model = load_model_artifact(w.run_dir());
  const data::Dataset calib_set =
      load_dataset_artifact(w.run_dir(), "calib.csv", "gen");

  uq::ConformalCalibration calib;
  std::optional<double> coverage;
  if (cfg.band == "cdf") {
    calib = uq::conformal_calibrate(model.net, calib_set, cfg.alpha);
    const data::Dataset val_set =
        load_dataset_artifact(w.run_dir(), "val.csv", "gen");
    coverage = uq::coverage_check(model.net, calib, val_set);
  } else {
    // density-space scores: per parameter group, the model density against
    // that group's histogram density
    std::map<long, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < calib_set.size(); ++i)
      groups[calib_set.group[i]].push_back(i);
    std::vector<double> scores;
    scores.reserve(calib_set.size());
    for (const auto& [gid, rows] : groups) {
      if (rows.size() < 2)
        throw ConfigError(
            "[uq] band = pdf needs grouped data (generator = ecdf)");
      std::vector<double> lams;
      lams.reserve(rows.size());
      for (const std::size_t i : rows) lams.push_back(calib_set.lambda[i]);
      const stats::HistogramDensity hist =
          stats::histogram_density(lams, stats::sturges_bins(lams.size()));
      const uq::ThetaPoint theta{calib_set.theta1[rows[0]],
                                 calib_set.theta2[rows[0]]};
      for (const std::size_t i : rows) {
        const double f =
            uq::pdf_eval(model.net, theta, calib_set.lambda[i]);
        scores.push_back(std::fabs(f - hist.eval(calib_set.lambda[i])));
      }
    }
    calib = uq::conformal_calibrate(std::move(scores), cfg.alpha);
  }

  nlohmann::json j;
  j["format"] = "cdf2pdf-calibration";
  j["version"] = 1;
  j["target"] = cfg.band;
  j["alpha"] = calib.alpha;
  j["q_hat"] = calib.q_hat;
  j["at_max"] = calib.at_max;
  j["n"] = calib.scores.size();
  if (coverage) j["coverage"] = *coverage;
  j["scores"] = calib.scores;
  w.put_text("calibration.json", j.dump(1) + "\n");

  std::cout << "conform: " << cfg.band << " band, q_hat "
            << format_double(calib.q_hat);
  if (coverage)
    std::cout << ", holdout coverage " << format_double(*coverage);
  if (calib.at_max)
    std::cout << " (rank beyond the calibration set, radius at max score)";
  std::cout << "\n";
}

void write_envelopes(const RunConfig& cfg, ArtifactWriter& w,
                     const uq::Ensemble& ens, const char* source) {
  const std::vector<uq::ThetaPoint> thetas = eval_grid(cfg);
  const std::vector<double> grid = lambda_grid(cfg);
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    for (const auto kind : {uq::CurveKind::cdf, uq::CurveKind::pdf}) {
      const uq::Envelope env =
          uq::ensemble_envelope(ens, thetas[k], grid, cfg.level, kind);
      put_columns(w,
                  envelope_rel(source,
                               kind == uq::CurveKind::cdf ? "cdf" : "pdf",
                               static_cast<int>(k)),
                  {"lambda", "lo", "mean", "hi"},
                  {env.lambda, env.lo, env.mean, env.hi});
    }
  }
}

void cmd_bootstrap(const RunConfig& cfg, ArtifactWriter& w) {
  const data::Dataset train_set =
      load_dataset_artifact(w.run_dir(), "train.csv", "gen");

  const uq::Ensemble ens = uq::bootstrap_ensemble(
      train_set, network_spec(cfg), train_config(cfg), cfg.boot_members,
      child_seed(cfg.seed, "bootstrap", 0), cfg.workers, cfg.shared_init);

  for (std::size_t k = 0; k < ens.members.size(); ++k) {
    w.put_text("boot_member_" + std::to_string(k) + ".json",
               nn::model_to_string(ens.members[k], cfg.seed));
  }
  write_envelopes(cfg, w, ens, "bootstrap");

  std::cout << "bootstrap: " << ens.size() << " members, envelopes at "
            << eval_grid(cfg).size() << " parameter points\n";
}

void cmd_fluctuate(const RunConfig& cfg, ArtifactWriter& w) {
  const nn::LoadedModel model = load_model_artifact(w.run_dir());
  const uq::Ensemble ens =
      uq::weight_fluctuate(model.net, cfg.sigma, cfg.copies,
                           child_seed(cfg.seed, "fluctuate", 0));
  write_envelopes(cfg, w, ens, "fluctuate");

  std::cout << "fluctuate: sigma " << format_double(cfg.sigma) << ", "
            << ens.size() << " copies, envelopes at "
            << eval_grid(cfg).size() << " parameter points\n";
}

void cmd_msnn(const RunConfig& cfg, ArtifactWriter& w) {
  const data::Dataset train_set =
      load_dataset_artifact(w.run_dir(), "train.csv", "gen");

  std::vector<nn::NetworkSpec> specs;
  std::vector<train::TrainConfig> tcs;
  for (int j = 0; j < cfg.msnn_stages; ++j) {
    nn::NetworkSpec spec;
    if (j == 0) {
      spec = network_spec(cfg);
    } else {
      // refinement stages: sine first layer with a large init scale, tanh
      // elsewhere, linear output so residuals of either sign are reachable
      spec.widths.push_back(3);
      for (int l = 0; l < cfg.msnn_layers; ++l)
        spec.widths.push_back(cfg.msnn_width);
      spec.widths.push_back(1);
      spec.hidden.assign(static_cast<std::size_t>(cfg.msnn_layers),
                         nn::Activation::tanh);
      spec.hidden[0] = nn::Activation::sine;
      spec.output = nn::Activation::linear;
      spec.init.kappa = cfg.msnn_kappa;
    }
    spec.init.seed =
        child_seed(cfg.seed, "msnn-init", static_cast<std::uint64_t>(j));
    specs.push_back(std::move(spec));

    train::TrainConfig tc = cfg.tr;
    tc.iterations = cfg.msnn_iterations;
    tc.seed =
        child_seed(cfg.seed, "msnn-train", static_cast<std::uint64_t>(j));
    tcs.push_back(tc);
  }

  const train::MsnnStack stack = train::msnn_fit(train_set, specs, tcs);

  for (std::size_t j = 0; j < stack.stages.size(); ++j) {
    w.put_text("msnn_stage_" + std::to_string(j) + ".json",
               nn::model_to_string(stack.stages[j], cfg.seed));
  }
  nlohmann::json j;
  j["format"] = "cdf2pdf-msnn";
  j["version"] = 1;
  j["stages"] = stack.stages.size();
  j["scales"] = stack.scales;
  j["residual_rms"] = train::msnn_residual_rms(stack, train_set);
  j["truncated"] = stack.truncated;
  j["notice"] = stack.notice;
  w.put_text("msnn.json", j.dump(1) + "\n");

  std::cout << "msnn: " << stack.stages.size() << " stages, scales";
  for (const double s : stack.scales) std::cout << " " << format_double(s);
  std::cout << ", train residual rms "
            << format_double(train::msnn_residual_rms(stack, train_set))
            << "\n";
}

// --------------------------------------------------------------- reporting

struct GroupRef {
  long id = 0;
  double t1 = 0.0, t2 = 0.0;
  std::vector<double> lambdas;
};

std::vector<GroupRef> collect_groups(const data::Dataset& ds) {
  std::map<long, GroupRef> by_id;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    GroupRef& g = by_id[ds.group[i]];
    if (g.lambdas.empty()) {
      g.id = ds.group[i];
      g.t1 = ds.theta1[i];
      g.t2 = ds.theta2[i];
    }
    g.lambdas.push_back(ds.lambda[i]);
  }
  std::vector<GroupRef> out;
  out.reserve(by_id.size());
  for (auto& [id, g] : by_id) out.push_back(std::move(g));
  return out;
}

const GroupRef& nearest_group(const std::vector<GroupRef>& groups,
                              const uq::ThetaPoint& theta,
                              const data::PriorBox& prior) {
  const double s1 = prior.t1_hi - prior.t1_lo;
  const double s2 = prior.t2_hi - prior.t2_lo;
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const double d1 = (groups[i].t1 - theta.theta1) / s1;
    const double d2 = (groups[i].t2 - theta.theta2) / s2;
    const double d = d1 * d1 + d2 * d2;
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return groups[best];
}

// step-function polyline of the group's empirical cdf across [lo, hi]
void ecdf_steps(const std::vector<double>& lambdas, double lo, double hi,
                std::vector<double>& x, std::vector<double>& y) {
  std::vector<double> s = lambdas;
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  x = {lo};
  y = {0.0};
  for (std::size_t i = 0; i < s.size(); ++i) {
    x.push_back(s[i]);
    y.push_back(static_cast<double>(i) / n);
    x.push_back(s[i]);
    y.push_back(static_cast<double>(i + 1) / n);
  }
  x.push_back(hi);
  y.push_back(1.0);
}

struct EnvelopeTable {
  std::vector<double> lambda, lo, mean, hi;
};

std::optional<EnvelopeTable> load_envelope(const fs::path& run_dir,
                                           const std::string& rel) {
  const fs::path p = run_dir / rel;
  if (!fs::exists(p)) return std::nullopt;
  const CsvTable t = read_csv(p, {"lambda", "lo", "mean", "hi"});
  EnvelopeTable env;
  for (const auto& row : t.rows) {
    env.lambda.push_back(row[0]);
    env.lo.push_back(row[1]);
    env.mean.push_back(row[2]);
    env.hi.push_back(row[3]);
  }
  return env;
}

void overlay_envelopes(const fs::path& run_dir, const char* kind, int k,
                       int level_pct, SvgPlot& plot) {
  if (const auto env = load_envelope(run_dir, envelope_rel("bootstrap", kind,
                                                           k))) {
    plot.line(env->lambda, env->lo, kBootColor, 1.2,
              std::to_string(level_pct) + "% bootstrap envelope", true);
    plot.line(env->lambda, env->hi, kBootColor, 1.2, "", true);
  }
  if (const auto env = load_envelope(run_dir, envelope_rel("fluctuate", kind,
                                                           k))) {
    plot.line(env->lambda, env->lo, kFluctColor, 1.2,
              std::to_string(level_pct) + "% fluctuation envelope", true);
    plot.line(env->lambda, env->hi, kFluctColor, 1.2, "", true);
  }
}

void cmd_report(const RunConfig& cfg, ArtifactWriter& w) {
  const int n_points = cfg.grid * cfg.grid;
  std::vector<uq::PdfCurve> curves;
  for (int k = 0; k < n_points; ++k) {
    const fs::path p = w.run_dir() / curve_rel(k);
    if (!fs::exists(p))
      throw DependencyError("missing artifact: " + curve_rel(k) +
                            " (run `cdf2pdf eval` first)");
    curves.push_back(uq::load_pdf_curve(p));
  }
  if (curves.empty()) throw DomainError("report: empty parameter grid");

  const bool grouped = cfg.generator == "ecdf";
  std::vector<GroupRef> groups;
  std::optional<nn::LoadedModel> model;
  if (grouped) {
    groups = collect_groups(
        load_dataset_artifact(w.run_dir(), "calib.csv", "gen"));
    model = load_model_artifact(w.run_dir());
  }

  const int band_pct =
      curves[0].has_band()
          ? static_cast<int>(std::lround((1.0 - curves[0].alpha) * 100.0))
          : 0;
  const int level_pct = static_cast<int>(std::lround(cfg.level * 100.0));
  const std::string loss_tag = " [" + loss_label(cfg) + "]";

  for (int k = 0; k < n_points; ++k) {
    const uq::PdfCurve& c = curves[static_cast<std::size_t>(k)];
    const GroupRef* group =
        grouped ? &nearest_group(groups, c.theta, cfg.prior) : nullptr;

    {
      SvgPlot plot("cdf at theta=" + theta_str(c.theta) + loss_tag, "lambda",
                   "F");
      if (c.has_band() && c.band_target == "cdf")
        plot.band(c.lambda, c.band_lo, c.band_hi, kBandColor,
                  std::to_string(band_pct) + "% conformal band");
      overlay_envelopes(w.run_dir(), "cdf", k, level_pct, plot);
      if (group) {
        std::vector<double> sx, sy;
        ecdf_steps(group->lambdas, c.lambda.front(), c.lambda.back(), sx, sy);
        plot.line(sx, sy, kTruthColor, 1.2,
                  "empirical cdf (nearest point)");
      }
      plot.line(c.lambda, c.F_hat, kModelColor, 2.0, "model cdf");
      w.put_text("report/cdf_p" + std::to_string(k) + ".svg", plot.render());
    }
    {
      SvgPlot plot("pdf at theta=" + theta_str(c.theta) + loss_tag, "lambda",
                   "f");
      if (c.has_band() && c.band_target == "pdf")
        plot.band(c.lambda, c.band_lo, c.band_hi, kBandColor,
                  std::to_string(band_pct) + "% conformal band");
      if (group) {
        const stats::HistogramDensity hist = stats::histogram_density(
            group->lambdas, stats::sturges_bins(group->lambdas.size()));
        plot.bars(hist.edges, hist.density, kHistColor, "histogram density");
      }
      overlay_envelopes(w.run_dir(), "pdf", k, level_pct, plot);
      plot.line(c.lambda, c.f_hat, kModelColor, 2.0, "model pdf");
      w.put_text("report/pdf_p" + std::to_string(k) + ".svg", plot.render());
    }
  }

  // training curve panel
  bool have_loss_panel = false;
  if (fs::exists(w.run_dir() / "loss_curve.csv")) {
    const CsvTable t = read_csv(w.run_dir() / "loss_curve.csv",
                                {"iteration", "train_loss", "val_loss"});
    std::vector<double> it, lt, lv;
    for (const auto& row : t.rows) {
      it.push_back(row[0]);
      lt.push_back(std::log10(row[1]));
      lv.push_back(std::log10(row[2]));
    }
    SvgPlot plot("training loss" + loss_tag, "iteration", "log10 loss");
    plot.line(it, lt, kModelColor, 1.6, "train");
    plot.line(it, lv, kBandColor, 1.6, "validation");
    w.put_text("report/loss.svg", plot.render());
    have_loss_panel = true;
  }

  // probability-calibration panel: quantile residuals of the model cdf
  // values at each grid point's nearest parameter group
  bool have_residual_panel = false;
  if (grouped && model) {
    static const char* palette[] = {"#c23b3b", "#3b6fc2", "#3ba05a",
                                    "#c2a03b", "#8f5fd0", "#d06fa0",
                                    "#5fb8c2", "#7a7a7a", "#4a4a9a"};
    const std::vector<double> probs = uq::linspace(0.01, 0.99, 99);
    SvgPlot plot("quantile residuals" + loss_tag, "target probability",
                 "model level - target");
    for (int k = 0; k < n_points; ++k) {
      const uq::PdfCurve& c = curves[static_cast<std::size_t>(k)];
      const GroupRef& g = nearest_group(groups, c.theta, cfg.prior);
      std::vector<double> values;
      values.reserve(g.lambdas.size());
      const uq::ThetaPoint theta{g.t1, g.t2};
      for (const double lam : g.lambdas)
        values.push_back(uq::cdf_eval(model->net, theta, lam));
      const std::vector<double> res = stats::quantile_residuals(values, probs);
      plot.line(probs, res, palette[static_cast<std::size_t>(k) % 9], 1.4,
                k < 3 ? "theta=" + theta_str(c.theta) : "");
    }
    w.put_text("report/residuals.svg", plot.render());
    have_residual_panel = true;
  }

  // index document linking every panel
  std::string html;
  html += "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n";
  html += "<title>cdf2pdf report</title>\n";
  html += "<style>body{font-family:sans-serif;margin:2em;max-width:60em;}"
          "li{margin:0.2em 0;}</style>\n</head>\n<body>\n";
  html += "<h1>cdf2pdf report</h1>\n";
  html += "<p>problem=" + cfg.problem + ", generator=" + cfg.generator +
          ", " + loss_label(cfg) + ", alpha=" + format_double(cfg.alpha) +
          ", seed=" + std::to_string(cfg.seed) + ", cdf2pdf " + kToolVersion +
          "</p>\n";
  html += "<h2>Curves</h2>\n<ul>\n";
  for (int k = 0; k < n_points; ++k) {
    const uq::PdfCurve& c = curves[static_cast<std::size_t>(k)];
    html += "<li>point " + std::to_string(k) + ", theta=" +
            xml_escape(theta_str(c.theta)) + ": <a href=\"cdf_p" +
            std::to_string(k) + ".svg\">cdf</a> <a href=\"pdf_p" +
            std::to_string(k) + ".svg\">pdf</a> <a href=\"../" +
            curve_rel(k) + "\">csv</a></li>\n";
  }
  html += "</ul>\n<h2>Training</h2>\n";
  html += have_loss_panel
              ? "<p><a href=\"loss.svg\">loss curve</a></p>\n"
              : "<p>no loss curve artifact</p>\n";
  html += "<h2>Calibration</h2>\n";
  if (have_residual_panel)
    html += "<p><a href=\"residuals.svg\">quantile residuals</a></p>\n";
  if (fs::exists(w.run_dir() / "calibration.json"))
    html += "<p><a href=\"../calibration.json\">conformal calibration</a>"
            "</p>\n";
  if (!have_residual_panel &&
      !fs::exists(w.run_dir() / "calibration.json"))
    html += "<p>no calibration artifacts</p>\n";
  html += "</body>\n</html>\n";
  w.put_text("report/index.html", html);

  std::cout << "report: report/index.html (" << 2 * n_points << " curve panels"
            << (have_loss_panel ? ", loss" : "")
            << (have_residual_panel ? ", residuals" : "") << ")\n";
}

}  // namespace

std::vector<uq::ThetaPoint> eval_grid(const RunConfig& cfg) {
  std::vector<uq::ThetaPoint> out;
  const double g = static_cast<double>(cfg.grid);
  for (int i = 0; i < cfg.grid; ++i) {
    const double f1 = static_cast<double>(i + 1) / (g + 1.0);
    for (int j = 0; j < cfg.grid; ++j) {
      const double f2 = static_cast<double>(j + 1) / (g + 1.0);
      out.push_back({cfg.prior.t1_lo + f1 * (cfg.prior.t1_hi - cfg.prior.t1_lo),
                     cfg.prior.t2_lo +
                         f2 * (cfg.prior.t2_hi - cfg.prior.t2_lo)});
    }
  }
  return out;
}

std::vector<double> lambda_grid(const RunConfig& cfg) {
  return uq::linspace(cfg.lambda_lo, cfg.lambda_hi,
                      static_cast<std::size_t>(cfg.lambda_points));
}

void run_command(const std::string& command, const RunConfig& cfg,
                 const std::string& config_echo) {
  const auto t0 = std::chrono::steady_clock::now();
  ArtifactWriter w(cfg.out);

  if (command == "gen")
    cmd_gen(cfg, w);
  else if (command == "train")
    cmd_train(cfg, w);
  else if (command == "sweep")
    cmd_sweep(cfg, w);
  else if (command == "eval")
    cmd_eval(cfg, w);
  else if (command == "conform")
    cmd_conform(cfg, w);
  else if (command == "bootstrap")
    cmd_bootstrap(cfg, w);
  else if (command == "fluctuate")
    cmd_fluctuate(cfg, w);
  else if (command == "msnn")
    cmd_msnn(cfg, w);
  else if (command == "report")
    cmd_report(cfg, w);
  else
    throw ConfigError("unknown command '" + command + "'");

  Manifest m;
  m.command = command;
  m.tool_version = kToolVersion;
  m.seed = cfg.seed;
  m.workers = cfg.workers;
  m.wall_ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  m.config_text = config_echo;
  m.artifacts = w.written();
  write_manifest(m, w.run_dir());
}

std::string usage_text() {
  return
      "cdf2pdf " + std::string(kToolVersion) +
      " - conditional cdf modeling with exact density recovery\n"
      "\n"
      "usage: cdf2pdf <command> [--config PATH] [--seed N] [--out DIR]\n"
      "               [--workers N]\n"
      "\n"
      "commands:\n"
      "  gen        generate a dataset and its train/val/calib split\n"
      "  train      fit the cdf regressor on the training split\n"
      "  sweep      random hyperparameter search, writes best.ini\n"
      "  eval       cdf/pdf curves on the parameter grid\n"
      "  conform    split conformal calibration of the model\n"
      "  bootstrap  bootstrap ensemble and envelopes\n"
      "  fluctuate  weight-fluctuation ensemble and envelopes\n"
      "  msnn       staged refinement stack on the training split\n"
      "  report     svg panels and an index for the run directory\n"
      "  help       this text\n"
      "  version    print the tool version\n"
      "\n"
      "flags override config-file values; CDF2PDF_OUT sets the default\n"
      "output root when neither --out nor [run] out is given.\n"
      "\n"
      "exit codes: 0 success, 2 configuration error, 3 missing dependency,\n"
      "            4 numeric failure\n";
}

}  // namespace cdf2pdf::cli
