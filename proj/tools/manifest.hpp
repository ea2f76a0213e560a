#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cdf2pdf::cli {

std::uint64_t fnv1a64(std::string_view bytes);
std::string hash_hex(std::uint64_t h);

struct ArtifactEntry {
  std::string path;  // relative to the run directory
  std::uint64_t bytes = 0;
  std::uint64_t hash = 0;  // fnv1a64 of the content
};

// Run record: the effective configuration snapshot plus every artifact the
// command produced (or verified unchanged), with content hashes. Unlike the
// artifacts themselves the manifest carries timings, so reruns replace it
// atomically instead of obeying the write-once rule.
struct Manifest {
  std::string command;
  std::string tool_version;
  std::uint64_t seed = 0;
  int workers = 1;
  double wall_ms = 0.0;
  std::string config_text;  // reparseable INI echo
  std::vector<ArtifactEntry> artifacts;
};

// manifest_<command>.json in the run directory; written to a temp file and
// renamed into place
void write_manifest(const Manifest& m, const std::filesystem::path& run_dir);

Manifest load_manifest(const std::filesystem::path& file);

// re-hashes every listed artifact; returns the paths that no longer match
std::vector<std::string> verify_manifest(const Manifest& m,
                                         const std::filesystem::path& run_dir);

}  // namespace cdf2pdf::cli
