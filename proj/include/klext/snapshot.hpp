#pragma once

// On-disk snapshots of filled KL and R columns.
//
// Each table is stored as a pair of files in the cache directory:
//   <type>-<table>-v<code version>.bin   column data
//   <type>-<table>-v<code version>.json  metadata: format, type, order, column count, checksum
// A snapshot is only restored when the metadata matches the current build
// and the checksum of the binary file agrees.

#include "klext/workspace.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace klext {

inline constexpr const char* kCodeVersion = "1.0.0";
inline constexpr int kSnapshotFormat = 1;
inline constexpr const char* kCacheDirEnv = "KLEXT_CACHE_DIR";

enum class TableKind { KL, R };
std::string to_string(TableKind k);

struct SnapshotStats {
  std::uint32_t kl_columns = 0;
  std::uint32_t r_columns = 0;
};

class SnapshotError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::filesystem::path snapshot_path(const std::filesystem::path& dir, const std::string& type_label, TableKind kind,
                                    const std::string& extension);

/// Writes every filled column of both tables. Throws SnapshotError on I/O failure.
SnapshotStats save_snapshot(const Workspace& ws, const std::filesystem::path& dir);

/// Installs columns from matching snapshots; missing, stale or corrupt files
/// are skipped (reported through `warning` when given).
SnapshotStats load_snapshot(Workspace& ws, const std::filesystem::path& dir, std::string* warning = nullptr);

/// Value of KLEXT_CACHE_DIR, if set and nonempty.
std::optional<std::filesystem::path> default_cache_dir();

} // namespace klext
