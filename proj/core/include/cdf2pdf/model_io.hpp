#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "cdf2pdf/network.hpp"

namespace cdf2pdf::nn {

// Model files are versioned JSON: network spec, per-layer row-major weights,
// biases and activation parameters, the fixed input map, and the training
// seed. Doubles are written in shortest round-trip form, so save followed by
// load reproduces every parameter bit for bit.
inline constexpr int kModelFormatVersion = 1;

std::string model_to_string(const Network& net, std::uint64_t train_seed = 0);
void save_model(const Network& net, const std::filesystem::path& path,
                std::uint64_t train_seed = 0);

struct LoadedModel {
  Network net;
  std::uint64_t train_seed = 0;
};

LoadedModel model_from_string(const std::string& text);  // throws ParseError
LoadedModel load_model(const std::filesystem::path& path);  // DependencyError if missing

}  // namespace cdf2pdf::nn
