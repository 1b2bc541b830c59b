#include "klext/snapshot.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

using namespace klext;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("klext-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& data) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  f << data;
}

} // namespace

TEST_CASE("file names") {
  CHECK(snapshot_path("/c", "D4", TableKind::KL, ".bin") == fs::path("/c/D4-kl-v1.0.0.bin"));
  CHECK(snapshot_path("/c", "A3", TableKind::R, ".json") == fs::path("/c/A3-r-v1.0.0.json"));
}

TEST_CASE("save and restore round trip") {
  TempDir dir;
  Workspace a("B3");
  a.kl().fill_all();
  a.r().fill_all();
  const SnapshotStats saved = save_snapshot(a, dir.path);
  CHECK(saved.kl_columns == 48);
  CHECK(saved.r_columns == 48);
  const auto meta = nlohmann::json::parse(slurp(snapshot_path(dir.path, "B3", TableKind::KL, ".json")));
  CHECK(meta.at("format") == kSnapshotFormat);
  CHECK(meta.at("code_version") == kCodeVersion);
  CHECK(meta.at("order") == 48);

  Workspace b("B3");
  std::string warning;
  const SnapshotStats loaded = load_snapshot(b, dir.path, &warning);
  CHECK(warning.empty());
  CHECK(loaded.kl_columns == 48);
  CHECK(loaded.r_columns == 48);
  CHECK(b.kl().filled_columns() == 48);
  for (std::uint32_t x = 0; x < 48; ++x)
    for (std::uint32_t y = 0; y < 48; ++y) {
      CHECK(a.kl().p(x, y) == b.kl().p(x, y));
      CHECK(a.r().r(x, y) == b.r().r(x, y));
    }
}

TEST_CASE("partial tables save only filled columns") {
  TempDir dir;
  Workspace a("A3");
  (void)a.kl().p(0, a.sys().w0());
  const SnapshotStats saved = save_snapshot(a, dir.path);
  CHECK(saved.kl_columns == a.kl().filled_columns());
  CHECK(saved.kl_columns < 24);
  Workspace b("A3");
  CHECK(load_snapshot(b, dir.path).kl_columns == saved.kl_columns);
  CHECK(b.kl().p(0, b.sys().w0()) == a.kl().p(0, a.sys().w0()));
}

TEST_CASE("missing, corrupt and stale snapshots are ignored") {
  TempDir dir;
  Workspace fresh("A3");
  std::string warning;
  CHECK(load_snapshot(fresh, dir.path, &warning).kl_columns == 0);
  CHECK(warning.empty());

  Workspace a("A3");
  a.kl().fill_all();
  a.r().fill_all();
  save_snapshot(a, dir.path);

  const fs::path bin = snapshot_path(dir.path, "A3", TableKind::KL, ".bin");
  std::string data = slurp(bin);
  data[data.size() / 2] ^= 0x5a;
  spit(bin, data);
  Workspace b("A3");
  const SnapshotStats s = load_snapshot(b, dir.path, &warning);
  CHECK(s.kl_columns == 0);
  CHECK(s.r_columns == 24);
  CHECK(warning.find("checksum") != std::string::npos);
  CHECK(b.kl().p(0, b.sys().w0()) == a.kl().p(0, a.sys().w0()));

  const fs::path meta_path = snapshot_path(dir.path, "A3", TableKind::R, ".json");
  auto meta = nlohmann::json::parse(slurp(meta_path));
  meta["code_version"] = "0.0.1";
  spit(meta_path, meta.dump());
  warning.clear();
  Workspace c("A3");
  CHECK(load_snapshot(c, dir.path, &warning).r_columns == 0);
  CHECK(warning.find("does not match") != std::string::npos);

  // a snapshot of another group with the same label never loads
  save_snapshot(a, dir.path);
  fs::rename(snapshot_path(dir.path, "A3", TableKind::KL, ".bin"), snapshot_path(dir.path, "B3", TableKind::KL, ".bin"));
  fs::rename(snapshot_path(dir.path, "A3", TableKind::KL, ".json"), snapshot_path(dir.path, "B3", TableKind::KL, ".json"));
  warning.clear();
  Workspace d("B3");
  CHECK(load_snapshot(d, dir.path, &warning).kl_columns == 0);
  CHECK_FALSE(warning.empty());
}

TEST_CASE("cache directory from the environment") {
  ::setenv(kCacheDirEnv, "/tmp/klext-env-cache", 1);
  CHECK(default_cache_dir() == fs::path("/tmp/klext-env-cache"));
  ::setenv(kCacheDirEnv, "", 1);
  CHECK_FALSE(default_cache_dir());
  ::unsetenv(kCacheDirEnv);
  CHECK_FALSE(default_cache_dir());
}
