#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace simulate {

/// Failure inside a module during a run; carries the failing analysis.
class RunError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  int workers = 1;
};

struct FileRecord {
  std::string path;  ///< relative to the manifest directory
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct RunManifest {
  std::filesystem::path directory;
  nlohmann::json document;
  std::vector<FileRecord> files;

  std::filesystem::path path() const { return directory / "manifest.json"; }
};

/// preparation -> evolution -> analyses; writes one CSV per analysis (plus
/// auxiliary tables) and manifest.json into the output directory.
RunManifest run(const RunConfig& config, const RunOptions& options = {});

RunManifest load_manifest(const std::filesystem::path& path);

/// Recomputes every content hash and throws RunError on a mismatch.
void audit_manifest(const RunManifest& manifest);

/// One matplotlib script per analysis next to the manifest. Scripts only read
/// the CSVs. Throws ValidationError naming a missing file.
std::vector<std::filesystem::path> make_plots(const RunManifest& manifest);

std::string sha256_file(const std::filesystem::path& path);

}  // namespace simulate
