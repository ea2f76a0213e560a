#include "manifest.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cdf2pdf/errors.hpp"

namespace cdf2pdf::cli {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw DependencyError("cannot read file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;  // offset basis
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;  // prime
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return s;
}

void write_manifest(const Manifest& m, const std::filesystem::path& run_dir) {
  nlohmann::json j;
  j["format"] = "cdf2pdf-manifest";
  j["version"] = 1;
  j["command"] = m.command;
  j["tool_version"] = m.tool_version;
  j["seed"] = m.seed;
  j["workers"] = m.workers;
  j["wall_ms"] = m.wall_ms;
  j["hash_algorithm"] = "fnv1a64";
  j["config"] = m.config_text;
  auto& arts = j["artifacts"] = nlohmann::json::array();
  for (const ArtifactEntry& a : m.artifacts) {
    arts.push_back({{"path", a.path},
                    {"bytes", a.bytes},
                    {"fnv1a64", hash_hex(a.hash)}});
  }

  const std::filesystem::path final_path =
      run_dir / ("manifest_" + m.command + ".json");
  const std::filesystem::path tmp = final_path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw DependencyError("cannot write manifest: " + tmp.string());
    out << j.dump(1) << "\n";
  }
  std::filesystem::rename(tmp, final_path);
}

Manifest load_manifest(const std::filesystem::path& file) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(file));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("manifest " + file.string() + ": " + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "cdf2pdf-manifest")
      throw ParseError("manifest " + file.string() + ": wrong format tag");
    Manifest m;
    m.command = j.at("command").get<std::string>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.workers = j.at("workers").get<int>();
    m.wall_ms = j.at("wall_ms").get<double>();
    m.config_text = j.at("config").get<std::string>();
    for (const auto& a : j.at("artifacts")) {
      ArtifactEntry e;
      e.path = a.at("path").get<std::string>();
      e.bytes = a.at("bytes").get<std::uint64_t>();
      const std::string hex = a.at("fnv1a64").get<std::string>();
      e.hash = std::stoull(hex, nullptr, 16);
      m.artifacts.push_back(std::move(e));
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("manifest " + file.string() + ": " + e.what());
  }
}

std::vector<std::string> verify_manifest(
    const Manifest& m, const std::filesystem::path& run_dir) {
  std::vector<std::string> bad;
  for (const ArtifactEntry& a : m.artifacts) {
    const std::filesystem::path p = run_dir / a.path;
    if (!std::filesystem::exists(p)) {
      bad.push_back(a.path);
      continue;
    }
    const std::string bytes = read_file(p);
    if (bytes.size() != a.bytes || fnv1a64(bytes) != a.hash)
      bad.push_back(a.path);
  }
  return bad;
}

}  // namespace cdf2pdf::cli
