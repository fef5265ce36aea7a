#pragma once

#include <string>
#include <vector>

#include "ququart/harness/config.hpp"

namespace ququart {

/// Files written by one run, relative to its output directory.
struct RunArtifacts {
  std::string directory;
  std::vector<std::string> files;
};

/// Runs the configured experiment, writes its data files, renders the
/// plots and finally writes manifest.json. Outputs are a pure function of
/// the configuration (the thread count does not change them).
RunArtifacts run_experiment(const RunConfig& cfg);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

/// manifest.json listing every regular file under `dir` (except the
/// manifest) with its size and SHA-256, sorted by relative path.
void write_manifest(const std::string& dir, const RunConfig& cfg);

}  // namespace ququart
