#include "artifacts.hpp"

#include <fstream>
#include <sstream>

#include "cdf2pdf/errors.hpp"

namespace cdf2pdf::cli {

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DependencyError("cannot read file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ArtifactWriter::ArtifactWriter(std::filesystem::path run_dir)
    : run_dir_(std::move(run_dir)), tmp_dir_(run_dir_ / ".tmp") {
  std::filesystem::create_directories(run_dir_);
  std::filesystem::create_directories(tmp_dir_);
}

ArtifactWriter::~ArtifactWriter() {
  std::error_code ec;
  std::filesystem::remove_all(tmp_dir_, ec);  // best effort
}

std::filesystem::path ArtifactWriter::tmp_path(const std::string& leaf) const {
  return tmp_dir_ / leaf;
}

void ArtifactWriter::put_text(const std::string& rel,
                              const std::string& content) {
  const std::filesystem::path final_path = run_dir_ / rel;
  if (std::filesystem::exists(final_path)) {
    if (read_text_file(final_path) != content)
      throw ConfigError("artifact already exists with different content: " +
                        rel + " (use a fresh --out directory)");
    // identical rerun, nothing to write
  } else {
    std::filesystem::create_directories(final_path.parent_path());
    const std::filesystem::path tmp = final_path.string() + ".part";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out)
        throw DependencyError("cannot write artifact: " + final_path.string());
      out << content;
      if (!out)
        throw DependencyError("write failed: " + final_path.string());
    }
    std::filesystem::rename(tmp, final_path);
  }
  written_.push_back({rel, content.size(), fnv1a64(content)});
}

void ArtifactWriter::put_file(const std::string& rel,
                              const std::filesystem::path& produced) {
  put_text(rel, read_text_file(produced));
  std::error_code ec;
  std::filesystem::remove(produced, ec);
}

}  // namespace cdf2pdf::cli
