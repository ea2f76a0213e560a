#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "manifest.hpp"

namespace cdf2pdf::cli {

// Write-once artifact store rooted at one run directory. Writing content
// identical to what is already on disk is a no-op (reruns are idempotent);
// writing different content to an existing path is refused, because a run
// directory never mutates an artifact.
class ArtifactWriter {
 public:
  explicit ArtifactWriter(std::filesystem::path run_dir);
  ~ArtifactWriter();

  // rel is the path inside the run directory, forward slashes
  void put_text(const std::string& rel, const std::string& content);

  // route for core writers that only emit files: let them write under
  // tmp_path(), then install the bytes under write-once rules
  std::filesystem::path tmp_path(const std::string& leaf) const;
  void put_file(const std::string& rel, const std::filesystem::path& produced);

  const std::filesystem::path& run_dir() const { return run_dir_; }
  const std::vector<ArtifactEntry>& written() const { return written_; }

 private:
  std::filesystem::path run_dir_;
  std::filesystem::path tmp_dir_;
  std::vector<ArtifactEntry> written_;
};

std::string read_text_file(const std::filesystem::path& path);

}  // namespace cdf2pdf::cli
