#pragma once

// End-to-end verification suites that compare computed tables with the
// published reference values, plus a pool of cached workspaces shared by the
// command-line front end.

#include "klext/workspace.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace klext {

/// Builds workspaces on demand under a fixed element cap and optionally
/// restores and persists their tables through snapshot files.
class WorkspacePool {
public:
  WorkspacePool(BuildOptions opts, std::optional<std::filesystem::path> cache_dir);

  Workspace& get(const std::string& label);
  /// Writes snapshots for every workspace touched so far (no-op without a cache dir).
  void save_all();

  std::uint64_t largest_order() const { return largest_; }
  const BuildOptions& options() const { return opts_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

private:
  BuildOptions opts_;
  std::optional<std::filesystem::path> cache_dir_;
  std::map<std::string, std::unique_ptr<Workspace>> spaces_;
  std::uint64_t largest_ = 0;
  std::vector<std::string> warnings_;
};

struct Assertion {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<Assertion> assertions;
  double seconds = 0;

  bool passed() const;
};

const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite name.
SuiteReport run_suite(const std::string& name, WorkspacePool& pool, unsigned threads);

} // namespace klext
