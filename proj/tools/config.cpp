#include "config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cdf2pdf/csv.hpp"
#include "cdf2pdf/errors.hpp"

namespace cdf2pdf::cli {
namespace {

using IniMap = std::map<std::string, std::map<std::string, std::string>>;

// every key the parser accepts; anything else is an error naming the key
const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"run", {"problem", "seed", "out", "workers"}},
      {"data",
       {"generator", "points", "draws", "t1_lo", "t1_hi", "t2_lo", "t2_hi",
        "split_train", "split_val", "split_calib", "group_aware"}},
      {"scenario",
       {"population", "initial_infected", "horizon", "ode_step", "truth_alpha",
        "truth_beta", "floor_mean"}},
      {"network", {"layers", "width", "activation", "output", "kappa"}},
      {"train",
       {"loss", "huber_delta", "optimizer", "lr", "batch", "iterations",
        "val_every", "standardize", "divergence_factor"}},
      {"sweep",
       {"trials", "epochs", "layers_lo", "layers_hi", "width_lo", "width_hi",
        "lr_lo", "lr_hi", "batch_lo", "batch_hi", "optimizers",
        "activations"}},
      {"uq",
       {"alpha", "band", "boot_members", "shared_init", "sigma", "copies",
        "level"}},
      {"eval", {"grid", "lambda_lo", "lambda_hi", "lambda_points"}},
      {"msnn", {"stages", "layers", "width", "kappa", "iterations"}},
  };
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

IniMap parse_ini(const std::string& text, const std::string& origin) {
  IniMap out;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  long line = 0;
  auto fail = [&](const std::string& msg) {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail("malformed section header '" + s + "'");
      section = trim(s.substr(1, s.size() - 2));
      if (!schema().count(section)) fail("unknown section [" + section + "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail("expected key = value, got '" + s + "'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (section.empty()) fail("key '" + key + "' appears before any section");
    if (key.empty()) fail("empty key");
    if (value.empty()) fail("empty value for key '" + key + "'");
    if (!schema().at(section).count(key))
      fail("unknown key '" + key + "' in [" + section + "]");
    if (!out[section].emplace(key, value).second)
      fail("duplicate key '" + key + "' in [" + section + "]");
  }
  return out;
}

struct Range {
  double lo = 0.0, hi = 0.0;
  bool lo_open = false, hi_open = false;

  bool ok(double v) const {
    if (lo_open ? v <= lo : v < lo) return false;
    if (hi_open ? v >= hi : v > hi) return false;
    return true;
  }
  std::string str(bool integer) const {
    auto fmt = [&](double x) {
      return integer ? std::to_string(static_cast<long long>(x))
                     : format_double(x);
    };
    return std::string(lo_open ? "(" : "[") + fmt(lo) + ", " + fmt(hi) +
           (hi_open ? ")" : "]");
  }
};

// typed access with range-checked errors naming section, key, value, range
class Reader {
 public:
  explicit Reader(const IniMap& ini) : ini_(ini) {}

  bool has(const std::string& sec, const std::string& key) const {
    const auto s = ini_.find(sec);
    return s != ini_.end() && s->second.count(key);
  }
  std::string raw(const std::string& sec, const std::string& key) const {
    return ini_.at(sec).at(key);
  }

  std::string str(const std::string& sec, const std::string& key,
                  const std::string& def) const {
    return has(sec, key) ? raw(sec, key) : def;
  }

  double num(const std::string& sec, const std::string& key, double def,
             const Range& r) const {
    if (!has(sec, key)) {
      check(sec, key, def, r, false);
      return def;
    }
    const std::string v = raw(sec, key);
    char* end = nullptr;
    const double parsed = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size() || !std::isfinite(parsed))
      throw ConfigError("[" + sec + "] " + key + " = '" + v +
                        "' is not a number");
    check(sec, key, parsed, r, false);
    return parsed;
  }

  long integer(const std::string& sec, const std::string& key, long def,
               const Range& r) const {
    if (!has(sec, key)) {
      check(sec, key, static_cast<double>(def), r, true);
      return def;
    }
    const std::string v = raw(sec, key);
    char* end = nullptr;
    const long long parsed = std::strtoll(v.c_str(), &end, 10);
    if (end != v.c_str() + v.size())
      throw ConfigError("[" + sec + "] " + key + " = '" + v +
                        "' is not an integer");
    check(sec, key, static_cast<double>(parsed), r, true);
    return static_cast<long>(parsed);
  }

  std::uint64_t seed_value(const std::string& sec, const std::string& key,
                           std::uint64_t def) const {
    if (!has(sec, key)) return def;
    const std::string v = raw(sec, key);
    char* end = nullptr;
    if (!v.empty() && v[0] == '-')
      throw ConfigError("[" + sec + "] " + key + " = '" + v +
                        "' must be a nonnegative integer");
    const unsigned long long parsed = std::strtoull(v.c_str(), &end, 10);
    if (end != v.c_str() + v.size())
      throw ConfigError("[" + sec + "] " + key + " = '" + v +
                        "' is not an integer");
    return parsed;
  }

  bool flag(const std::string& sec, const std::string& key, bool def) const {
    if (!has(sec, key)) return def;
    const std::string v = raw(sec, key);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("[" + sec + "] " + key + " = '" + v +
                      "' is not a boolean (true/false)");
  }

  std::vector<std::string> list(const std::string& sec, const std::string& key,
                                const std::vector<std::string>& def) const {
    if (!has(sec, key)) return def;
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(raw(sec, key));
    while (std::getline(in, item, ',')) {
      const std::string t = trim(item);
      if (!t.empty()) out.push_back(t);
    }
    if (out.empty())
      throw ConfigError("[" + sec + "] " + key + " is an empty list");
    return out;
  }

 private:
  static void check(const std::string& sec, const std::string& key, double v,
                    const Range& r, bool integer) {
    if (!r.ok(v))
      throw ConfigError("[" + sec + "] " + key + " = " + format_double(v) +
                        " out of range " + r.str(integer));
  }

  const IniMap& ini_;
};

nn::Activation activation_key(const Reader& r, const std::string& sec,
                              const std::string& key, nn::Activation def) {
  const std::string name = r.str(sec, key, nn::activation_name(def));
  try {
    return nn::activation_from_name(name);
  } catch (const ParseError&) {
    throw ConfigError("[" + sec + "] " + key + " = '" + name +
                      "' is not an activation (linear, relu, leaky_relu, "
                      "prelu, selu, silu, tanh, sigmoid, sine)");
  }
}

nn::OptimizerKind optimizer_key(const Reader& r, const std::string& sec,
                                const std::string& key,
                                nn::OptimizerKind def) {
  const std::string name = r.str(sec, key, nn::optimizer_name(def));
  try {
    return nn::optimizer_from_name(name);
  } catch (const ParseError&) {
    throw ConfigError("[" + sec + "] " + key + " = '" + name +
                      "' is not an optimizer (sgd, adam, nadam, rmsprop)");
  }
}

RunConfig build_config(const IniMap& ini) {
  const Reader r(ini);
  RunConfig cfg;

  cfg.problem = r.str("run", "problem", "onoff");
  if (cfg.problem != "onoff" && cfg.problem != "sir")
    throw ConfigError("[run] problem = '" + cfg.problem +
                      "' is not a problem (onoff, sir)");
  const bool sir = cfg.problem == "sir";

  cfg.seed = r.seed_value("run", "seed", 13);
  cfg.out = r.str("run", "out", "");  // resolved by the caller
  cfg.workers = static_cast<int>(
      r.integer("run", "workers", 1, {1, 256}));

  cfg.generator = r.str("data", "generator", "ecdf");
  if (cfg.generator != "ecdf" && cfg.generator != "alffi")
    throw ConfigError("[data] generator = '" + cfg.generator +
                      "' is not a generator (ecdf, alffi)");
  if (cfg.generator == "alffi" && sir)
    throw ConfigError(
        "[data] generator = alffi requires problem = onoff");

  cfg.points = r.integer("data", "points", sir ? 250 : 1000, {1, 1e9});
  cfg.draws = r.integer("data", "draws", sir ? 400 : 100, {2, 1e9});

  // onoff parameters are Poisson means (>= 0); sir rates must be positive
  const Range param_range =
      sir ? Range{0.0, 1e9, true, false} : Range{0.0, 1e9, false, false};
  cfg.prior.t1_lo = r.num("data", "t1_lo", sir ? 0.05 : 0.0, param_range);
  cfg.prior.t1_hi = r.num("data", "t1_hi", sir ? 0.5 : 20.0, param_range);
  cfg.prior.t2_lo = r.num("data", "t2_lo", sir ? 1e-4 : 0.0, param_range);
  cfg.prior.t2_hi = r.num("data", "t2_hi", sir ? 1e-3 : 20.0, param_range);
  if (cfg.prior.t1_lo >= cfg.prior.t1_hi)
    throw ConfigError("[data] t1_lo = " + format_double(cfg.prior.t1_lo) +
                      " must be below t1_hi = " +
                      format_double(cfg.prior.t1_hi));
  if (cfg.prior.t2_lo >= cfg.prior.t2_hi)
    throw ConfigError("[data] t2_lo = " + format_double(cfg.prior.t2_lo) +
                      " must be below t2_hi = " +
                      format_double(cfg.prior.t2_hi));

  const Range frac{0.0, 1.0, true, true};
  cfg.split_train = r.num("data", "split_train", 0.8, frac);
  cfg.split_val = r.num("data", "split_val", 0.1, frac);
  cfg.split_calib = r.num("data", "split_calib", 0.1, frac);
  const double fsum = cfg.split_train + cfg.split_val + cfg.split_calib;
  if (std::fabs(fsum - 1.0) > 1e-9)
    throw ConfigError(
        "[data] split_train + split_val + split_calib = " +
        format_double(fsum) + " must sum to 1");
  cfg.group_aware = r.flag("data", "group_aware", true);

  cfg.scenario.population =
      r.integer("scenario", "population", 1000, {1, 1e9});
  cfg.scenario.initial_infected = r.integer(
      "scenario", "initial_infected", 1,
      {1, static_cast<double>(cfg.scenario.population)});
  cfg.scenario.horizon =
      static_cast<int>(r.integer("scenario", "horizon", 50, {1, 100000}));
  cfg.scenario.ode_step =
      r.num("scenario", "ode_step", 0.01, {0.0, 10.0, true, false});
  cfg.scenario.truth_alpha =
      r.num("scenario", "truth_alpha", 0.1, {0.0, 1e9, true, false});
  cfg.scenario.truth_beta =
      r.num("scenario", "truth_beta", 5e-4, {0.0, 1e9, true, false});
  cfg.scenario.floor_mean = r.flag("scenario", "floor_mean", true);

  cfg.layers = static_cast<int>(r.integer("network", "layers", 6, {1, 64}));
  cfg.width = static_cast<int>(r.integer("network", "width", 12, {1, 4096}));
  cfg.activation =
      activation_key(r, "network", "activation", nn::Activation::silu);
  cfg.output_act =
      activation_key(r, "network", "output", nn::Activation::sigmoid);
  cfg.kappa = r.num("network", "kappa", 1.0, {0.0, 1e6, true, false});

  {
    const std::string name = r.str("train", "loss", "mse");
    try {
      cfg.tr.loss.kind = nn::loss_from_name(name);
    } catch (const ParseError&) {
      throw ConfigError("[train] loss = '" + name +
                        "' is not a loss (mse, huber)");
    }
  }
  cfg.tr.loss.huber_delta =
      r.num("train", "huber_delta", 0.7, {0.0, 1e6, true, false});
  cfg.tr.optimizer.kind =
      optimizer_key(r, "train", "optimizer", nn::OptimizerKind::nadam);
  cfg.tr.optimizer.lr = r.num("train", "lr", 1e-3, {0.0, 1e3, true, false});
  cfg.tr.batch = r.integer("train", "batch", 512, {1, 1e9});
  cfg.tr.iterations = r.integer("train", "iterations", 20000, {1, 1e9});
  cfg.tr.val_every = r.integer("train", "val_every", 200, {1, 1e9});
  cfg.tr.standardize = r.flag("train", "standardize", true);
  cfg.tr.divergence_factor =
      r.num("train", "divergence_factor", 10.0, {1.0, 1e12, true, false});

  cfg.trials = static_cast<int>(r.integer("sweep", "trials", 10, {1, 100000}));
  cfg.epochs = r.integer("sweep", "epochs", 5, {1, 1000000});
  cfg.space.layers_lo =
      static_cast<int>(r.integer("sweep", "layers_lo", 1, {1, 64}));
  cfg.space.layers_hi =
      static_cast<int>(r.integer("sweep", "layers_hi", 6, {1, 64}));
  cfg.space.width_lo =
      static_cast<int>(r.integer("sweep", "width_lo", 1, {1, 4096}));
  cfg.space.width_hi =
      static_cast<int>(r.integer("sweep", "width_hi", 64, {1, 4096}));
  cfg.space.lr_lo = r.num("sweep", "lr_lo", 1e-6, {0.0, 1e3, true, false});
  cfg.space.lr_hi = r.num("sweep", "lr_hi", 1e-2, {0.0, 1e3, true, false});
  cfg.space.batch_lo = r.integer("sweep", "batch_lo", 50, {1, 1e9});
  cfg.space.batch_hi = r.integer("sweep", "batch_hi", 30000, {1, 1e9});
  auto ordered = [](const std::string& key, double lo, double hi) {
    if (lo > hi)
      throw ConfigError("[sweep] " + key + "_lo = " + format_double(lo) +
                        " must not exceed " + key + "_hi = " +
                        format_double(hi));
  };
  ordered("layers", cfg.space.layers_lo, cfg.space.layers_hi);
  ordered("width", cfg.space.width_lo, cfg.space.width_hi);
  ordered("lr", cfg.space.lr_lo, cfg.space.lr_hi);
  ordered("batch", static_cast<double>(cfg.space.batch_lo),
          static_cast<double>(cfg.space.batch_hi));

  {
    cfg.space.optimizers.clear();
    for (const std::string& name :
         r.list("sweep", "optimizers", {"adam", "nadam", "rmsprop", "sgd"})) {
      try {
        cfg.space.optimizers.push_back(nn::optimizer_from_name(name));
      } catch (const ParseError&) {
        throw ConfigError("[sweep] optimizers: '" + name +
                          "' is not an optimizer (sgd, adam, nadam, rmsprop)");
      }
    }
    cfg.space.activations.clear();
    for (const std::string& name : r.list(
             "sweep", "activations", {"relu", "leaky_relu", "selu", "prelu"})) {
      try {
        cfg.space.activations.push_back(nn::activation_from_name(name));
      } catch (const ParseError&) {
        throw ConfigError("[sweep] activations: '" + name +
                          "' is not an activation name");
      }
    }
  }

  cfg.alpha = r.num("uq", "alpha", 0.32, {0.0, 1.0, true, true});
  cfg.band = r.str("uq", "band", "cdf");
  if (cfg.band != "cdf" && cfg.band != "pdf")
    throw ConfigError("[uq] band = '" + cfg.band +
                      "' is not a band target (cdf, pdf)");
  cfg.boot_members = r.integer("uq", "boot_members", 20, {2, 10000});
  cfg.shared_init = r.flag("uq", "shared_init", true);
  cfg.sigma = r.num("uq", "sigma", 0.01, {0.0, 1e6});
  cfg.copies = r.integer("uq", "copies", 100, {1, 1e7});
  cfg.level = r.num("uq", "level", 0.68, {0.0, 1.0, true, true});

  cfg.grid = static_cast<int>(r.integer("eval", "grid", 3, {1, 64}));
  cfg.lambda_lo = r.num("eval", "lambda_lo", 0.0, {-1e12, 1e12});
  cfg.lambda_hi = r.num("eval", "lambda_hi", sir ? 0.5 : 25.0, {-1e12, 1e12});
  if (cfg.lambda_lo >= cfg.lambda_hi)
    throw ConfigError("[eval] lambda_lo = " + format_double(cfg.lambda_lo) +
                      " must be below lambda_hi = " +
                      format_double(cfg.lambda_hi));
  cfg.lambda_points = r.integer("eval", "lambda_points", 201, {2, 1e7});

  cfg.msnn_stages = static_cast<int>(r.integer("msnn", "stages", 3, {1, 64}));
  cfg.msnn_layers = static_cast<int>(r.integer("msnn", "layers", 2, {1, 64}));
  cfg.msnn_width =
      static_cast<int>(r.integer("msnn", "width", 32, {1, 4096}));
  cfg.msnn_kappa = r.num("msnn", "kappa", 60.0, {0.0, 1e6, true, false});
  cfg.msnn_iterations = r.integer("msnn", "iterations", 4000, {1, 1e9});

  return cfg;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config file not found: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void append_kv(std::string& s, const std::string& key,
               const std::string& value) {
  s += key;
  s += " = ";
  s += value;
  s += "\n";
}

std::string bool_str(bool v) { return v ? "true" : "false"; }

}  // namespace

CliArgs parse_cli(int argc, const char* const* argv) {
  static const std::set<std::string> commands = {
      "gen",       "train",     "sweep", "eval",   "conform",
      "bootstrap", "fluctuate", "msnn",  "report", "help",
      "version"};
  CliArgs args;
  if (argc < 2)
    throw ConfigError("no command given (see `cdf2pdf help`)");
  std::string cmd = argv[1];
  if (cmd == "--help" || cmd == "-h") cmd = "help";
  if (cmd == "--version") cmd = "version";
  if (!commands.count(cmd))
    throw ConfigError("unknown command '" + cmd + "' (see `cdf2pdf help`)");
  args.command = cmd;

  for (int i = 2; i < argc; ++i) {
    const std::string flag = argv[i];
    auto value = [&]() -> std::string {
      if (i + 1 >= argc)
        throw ConfigError("flag " + flag + " needs a value");
      return argv[++i];
    };
    if (flag == "--config") {
      args.config_path = std::filesystem::path(value());
    } else if (flag == "--seed") {
      const std::string v = value();
      char* end = nullptr;
      if (!v.empty() && v[0] == '-')
        throw ConfigError("--seed must be a nonnegative integer, got '" + v +
                          "'");
      const unsigned long long parsed = std::strtoull(v.c_str(), &end, 10);
      if (end != v.c_str() + v.size() || v.empty())
        throw ConfigError("--seed must be an integer, got '" + v + "'");
      args.seed = parsed;
    } else if (flag == "--out") {
      args.out = std::filesystem::path(value());
    } else if (flag == "--workers") {
      const std::string v = value();
      char* end = nullptr;
      const long parsed = std::strtol(v.c_str(), &end, 10);
      if (end != v.c_str() + v.size() || v.empty() || parsed < 1 ||
          parsed > 256)
        throw ConfigError("--workers must be an integer in [1, 256], got '" +
                          v + "'");
      args.workers = static_cast<int>(parsed);
    } else {
      throw ConfigError("unknown flag '" + flag + "' (see `cdf2pdf help`)");
    }
  }
  return args;
}

RunConfig load_run_config(const CliArgs& args) {
  IniMap ini;
  if (args.config_path) {
    ini = parse_ini(slurp(*args.config_path), args.config_path->string());
  }
  RunConfig cfg = build_config(ini);

  if (args.seed) cfg.seed = *args.seed;
  if (args.workers) cfg.workers = *args.workers;
  if (args.out) {
    cfg.out = *args.out;
  } else if (cfg.out.empty()) {
    const char* env = std::getenv("CDF2PDF_OUT");
    cfg.out = env && *env ? std::filesystem::path(env)
                          : std::filesystem::path("runs");
  }
  if (cfg.out.empty()) throw ConfigError("[run] out must not be empty");
  return cfg;
}

RunConfig config_from_text(const std::string& ini_text) {
  RunConfig cfg = build_config(parse_ini(ini_text, "<snapshot>"));
  if (cfg.out.empty()) throw ConfigError("[run] out must not be empty");
  return cfg;
}

std::string echo_config(const RunConfig& cfg) {
  std::string s;
  s += "# cdf2pdf ";
  s += kToolVersion;
  s += " effective configuration\n";

  s += "[run]\n";
  append_kv(s, "problem", cfg.problem);
  append_kv(s, "seed", std::to_string(cfg.seed));
  append_kv(s, "out", cfg.out.string());
  append_kv(s, "workers", std::to_string(cfg.workers));

  s += "\n[data]\n";
  append_kv(s, "generator", cfg.generator);
  append_kv(s, "points", std::to_string(cfg.points));
  append_kv(s, "draws", std::to_string(cfg.draws));
  append_kv(s, "t1_lo", format_double(cfg.prior.t1_lo));
  append_kv(s, "t1_hi", format_double(cfg.prior.t1_hi));
  append_kv(s, "t2_lo", format_double(cfg.prior.t2_lo));
  append_kv(s, "t2_hi", format_double(cfg.prior.t2_hi));
  append_kv(s, "split_train", format_double(cfg.split_train));
  append_kv(s, "split_val", format_double(cfg.split_val));
  append_kv(s, "split_calib", format_double(cfg.split_calib));
  append_kv(s, "group_aware", bool_str(cfg.group_aware));

  s += "\n[scenario]\n";
  append_kv(s, "population", std::to_string(cfg.scenario.population));
  append_kv(s, "initial_infected",
            std::to_string(cfg.scenario.initial_infected));
  append_kv(s, "horizon", std::to_string(cfg.scenario.horizon));
  append_kv(s, "ode_step", format_double(cfg.scenario.ode_step));
  append_kv(s, "truth_alpha", format_double(cfg.scenario.truth_alpha));
  append_kv(s, "truth_beta", format_double(cfg.scenario.truth_beta));
  append_kv(s, "floor_mean", bool_str(cfg.scenario.floor_mean));

  s += "\n[network]\n";
  append_kv(s, "layers", std::to_string(cfg.layers));
  append_kv(s, "width", std::to_string(cfg.width));
  append_kv(s, "activation", nn::activation_name(cfg.activation));
  append_kv(s, "output", nn::activation_name(cfg.output_act));
  append_kv(s, "kappa", format_double(cfg.kappa));

  s += "\n[train]\n";
  append_kv(s, "loss", nn::loss_name(cfg.tr.loss.kind));
  append_kv(s, "huber_delta", format_double(cfg.tr.loss.huber_delta));
  append_kv(s, "optimizer", nn::optimizer_name(cfg.tr.optimizer.kind));
  append_kv(s, "lr", format_double(cfg.tr.optimizer.lr));
  append_kv(s, "batch", std::to_string(cfg.tr.batch));
  append_kv(s, "iterations", std::to_string(cfg.tr.iterations));
  append_kv(s, "val_every", std::to_string(cfg.tr.val_every));
  append_kv(s, "standardize", bool_str(cfg.tr.standardize));
  append_kv(s, "divergence_factor", format_double(cfg.tr.divergence_factor));

  s += "\n[sweep]\n";
  append_kv(s, "trials", std::to_string(cfg.trials));
  append_kv(s, "epochs", std::to_string(cfg.epochs));
  append_kv(s, "layers_lo", std::to_string(cfg.space.layers_lo));
  append_kv(s, "layers_hi", std::to_string(cfg.space.layers_hi));
  append_kv(s, "width_lo", std::to_string(cfg.space.width_lo));
  append_kv(s, "width_hi", std::to_string(cfg.space.width_hi));
  append_kv(s, "lr_lo", format_double(cfg.space.lr_lo));
  append_kv(s, "lr_hi", format_double(cfg.space.lr_hi));
  append_kv(s, "batch_lo", std::to_string(cfg.space.batch_lo));
  append_kv(s, "batch_hi", std::to_string(cfg.space.batch_hi));
  {
    std::string names;
    for (const auto kind : cfg.space.optimizers) {
      if (!names.empty()) names += ", ";
      names += nn::optimizer_name(kind);
    }
    append_kv(s, "optimizers", names);
    names.clear();
    for (const auto act : cfg.space.activations) {
      if (!names.empty()) names += ", ";
      names += nn::activation_name(act);
    }
    append_kv(s, "activations", names);
  }

  s += "\n[uq]\n";
  append_kv(s, "alpha", format_double(cfg.alpha));
  append_kv(s, "band", cfg.band);
  append_kv(s, "boot_members", std::to_string(cfg.boot_members));
  append_kv(s, "shared_init", bool_str(cfg.shared_init));
  append_kv(s, "sigma", format_double(cfg.sigma));
  append_kv(s, "copies", std::to_string(cfg.copies));
  append_kv(s, "level", format_double(cfg.level));

  s += "\n[eval]\n";
  append_kv(s, "grid", std::to_string(cfg.grid));
  append_kv(s, "lambda_lo", format_double(cfg.lambda_lo));
  append_kv(s, "lambda_hi", format_double(cfg.lambda_hi));
  append_kv(s, "lambda_points", std::to_string(cfg.lambda_points));

  s += "\n[msnn]\n";
  append_kv(s, "stages", std::to_string(cfg.msnn_stages));
  append_kv(s, "layers", std::to_string(cfg.msnn_layers));
  append_kv(s, "width", std::to_string(cfg.msnn_width));
  append_kv(s, "kappa", format_double(cfg.msnn_kappa));
  append_kv(s, "iterations", std::to_string(cfg.msnn_iterations));

  return s;
}

}  // namespace cdf2pdf::cli
