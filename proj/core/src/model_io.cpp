#include "cdf2pdf/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cdf2pdf/errors.hpp"

namespace cdf2pdf::nn {

using nlohmann::json;

std::string model_to_string(const Network& net, std::uint64_t train_seed) {
  json spec;
  spec["widths"] = net.spec.widths;
  json hidden = json::array();
  for (const Activation a : net.spec.hidden) hidden.push_back(activation_name(a));
  spec["hidden"] = hidden;
  spec["output"] = activation_name(net.spec.output);
  spec["init"] = {{"seed", net.spec.init.seed}, {"kappa", net.spec.init.kappa}};

  json layers = json::array();
  for (const Layer& l : net.layers) {
    json jl;
    jl["w"] = l.w;
    jl["b"] = l.b;
    if (activation_has_param(l.act)) jl["slope"] = l.slope;
    layers.push_back(std::move(jl));
  }

  json doc;
  doc["format"] = "cdf2pdf-model";
  doc["version"] = kModelFormatVersion;
  doc["spec"] = std::move(spec);
  doc["input_shift"] = net.in_shift;
  doc["input_scale"] = net.in_scale;
  doc["layers"] = std::move(layers);
  doc["train_seed"] = train_seed;
  return doc.dump(1);
}

void save_model(const Network& net, const std::filesystem::path& path,
                std::uint64_t train_seed) {
  std::ofstream out(path);
  if (!out) throw DependencyError("cannot open model file for writing: " + path.string());
  out << model_to_string(net, train_seed) << '\n';
  if (!out) throw DependencyError("failed writing model file: " + path.string());
}

LoadedModel model_from_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != "cdf2pdf-model") {
      throw ParseError("model file has wrong format tag");
    }
    const int version = doc.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw ParseError("unsupported model format version " + std::to_string(version));
    }
    LoadedModel m;
    const json& spec = doc.at("spec");
    m.net.spec.widths = spec.at("widths").get<std::vector<int>>();
    for (const auto& name : spec.at("hidden")) {
      m.net.spec.hidden.push_back(activation_from_name(name.get<std::string>()));
    }
    m.net.spec.output = activation_from_name(spec.at("output").get<std::string>());
    m.net.spec.init.seed = spec.at("init").at("seed").get<std::uint64_t>();
    m.net.spec.init.kappa = spec.at("init").at("kappa").get<double>();
    m.net.spec.validate();

    m.net.in_shift = doc.at("input_shift").get<std::vector<double>>();
    m.net.in_scale = doc.at("input_scale").get<std::vector<double>>();
    if (m.net.in_shift.size() != static_cast<std::size_t>(m.net.spec.input_width()) ||
        m.net.in_scale.size() != m.net.in_shift.size()) {
      throw ParseError("model file input map size mismatch");
    }

    const json& layers = doc.at("layers");
    const std::size_t n_layers = m.net.spec.widths.size() - 1;
    if (layers.size() != n_layers) {
      throw ParseError("model file layer count does not match spec");
    }
    m.net.layers.resize(n_layers);
    for (std::size_t l = 0; l < n_layers; ++l) {
      Layer& layer = m.net.layers[l];
      layer.in = m.net.spec.widths[l];
      layer.out = m.net.spec.widths[l + 1];
      layer.act = l + 1 == n_layers ? m.net.spec.output : m.net.spec.hidden[l];
      layer.w = layers[l].at("w").get<std::vector<double>>();
      layer.b = layers[l].at("b").get<std::vector<double>>();
      if (layer.w.size() != static_cast<std::size_t>(layer.in) * layer.out ||
          layer.b.size() != static_cast<std::size_t>(layer.out)) {
        throw ParseError("model file layer " + std::to_string(l) + " size mismatch");
      }
      if (activation_has_param(layer.act)) {
        layer.slope = layers[l].at("slope").get<double>();
      }
    }
    m.train_seed = doc.at("train_seed").get<std::uint64_t>();
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("model file missing or malformed field: ") + e.what());
  }
}

LoadedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DependencyError("model file not found: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return model_from_string(ss.str());
}

}  // namespace cdf2pdf::nn
