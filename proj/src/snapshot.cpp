#include "klext/snapshot.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace klext {

namespace {

using Columns = std::vector<std::pair<std::uint32_t, std::vector<std::pair<std::uint32_t, LaurentPoly>>>>;
constexpr char kMagic[8] = {'K', 'L', 'X', 'S', 'N', 'A', 'P', '\0'};

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

template <class T>
void put(std::string& out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

class Reader {
public:
  explicit Reader(const std::string& data) : data_(data) {}
  template <class T>
  T get() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, data_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::string bytes(std::size_t n) {
    need(n);
    std::string s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == data_.size(); }

private:
  void need(std::size_t n) const {
    if (pos_ + n > data_.size()) throw SnapshotError("truncated snapshot");
  }
  const std::string& data_;
  std::size_t pos_ = 0;
};

std::string encode(std::uint32_t order, const Columns& cols) {
  std::string out(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kSnapshotFormat);
  put<std::uint32_t>(out, order);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(cols.size()));
  for (const auto& [y, entries] : cols) {
    put<std::uint32_t>(out, y);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(entries.size()));
    for (const auto& [x, p] : entries) {
      put<std::uint32_t>(out, x);
      put<std::uint32_t>(out, static_cast<std::uint32_t>(p.term_count()));
      for (const auto& [e, c] : p.terms()) {
        put<std::int32_t>(out, e);
        const std::string digits = c.str();
        put<std::uint16_t>(out, static_cast<std::uint16_t>(digits.size()));
        out += digits;
      }
    }
  }
  return out;
}

Columns decode(const std::string& data, std::uint32_t order) {
  Reader in(data);
  if (in.bytes(sizeof(kMagic)) != std::string(kMagic, sizeof(kMagic))) throw SnapshotError("bad magic");
  if (in.get<std::uint32_t>() != static_cast<std::uint32_t>(kSnapshotFormat)) throw SnapshotError("format mismatch");
  if (in.get<std::uint32_t>() != order) throw SnapshotError("group order mismatch");
  const std::uint32_t ncols = in.get<std::uint32_t>();
  Columns cols;
  for (std::uint32_t i = 0; i < ncols; ++i) {
    const std::uint32_t y = in.get<std::uint32_t>();
    if (y >= order) throw SnapshotError("column index out of range");
    const std::uint32_t n = in.get<std::uint32_t>();
    std::vector<std::pair<std::uint32_t, LaurentPoly>> entries;
    entries.reserve(n);
    for (std::uint32_t k = 0; k < n; ++k) {
      const std::uint32_t x = in.get<std::uint32_t>();
      if (x >= order) throw SnapshotError("entry index out of range");
      const std::uint32_t nt = in.get<std::uint32_t>();
      std::vector<LaurentPoly::Term> terms;
      for (std::uint32_t t = 0; t < nt; ++t) {
        const int e = in.get<std::int32_t>();
        const std::uint16_t len = in.get<std::uint16_t>();
        terms.emplace_back(e, Integer(in.bytes(len)));
      }
      entries.emplace_back(x, LaurentPoly::from_terms(std::move(terms)));
    }
    cols.emplace_back(y, std::move(entries));
  }
  if (!in.done()) throw SnapshotError("trailing bytes");
  return cols;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw SnapshotError("cannot open " + p.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_atomically(const std::filesystem::path& p, const std::string& data) {
  std::filesystem::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw SnapshotError("cannot write " + tmp.string());
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!f) throw SnapshotError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, p, ec);
  if (ec) throw SnapshotError("cannot rename " + tmp.string() + ": " + ec.message());
}

template <class Table>
Columns collect(const Table& t, std::uint32_t order) {
  Columns cols;
  for (std::uint32_t y = 0; y < order; ++y)
    if (t.has_column(y)) cols.emplace_back(y, t.column(y));
  return cols;
}

void save_one(const CoxeterSystem& W, const std::filesystem::path& dir, TableKind kind, const Columns& cols) {
  const std::string data = encode(W.order(), cols);
  nlohmann::ordered_json meta;
  meta["format"] = kSnapshotFormat;
  meta["code_version"] = kCodeVersion;
  meta["type"] = W.type_label();
  meta["table"] = to_string(kind);
  meta["order"] = W.order();
  meta["columns"] = cols.size();
  meta["bytes"] = data.size();
  meta["fnv1a64"] = fnv1a(data);
  write_atomically(snapshot_path(dir, W.type_label(), kind, ".bin"), data);
  write_atomically(snapshot_path(dir, W.type_label(), kind, ".json"), meta.dump(2) + "\n");
}

std::optional<Columns> load_one(const CoxeterSystem& W, const std::filesystem::path& dir, TableKind kind,
                                std::string* warning) {
  const auto meta_path = snapshot_path(dir, W.type_label(), kind, ".json");
  const auto bin_path = snapshot_path(dir, W.type_label(), kind, ".bin");
  if (!std::filesystem::exists(meta_path) || !std::filesystem::exists(bin_path)) return std::nullopt;
  try {
    const auto meta = nlohmann::json::parse(read_file(meta_path));
    if (meta.at("format").get<int>() != kSnapshotFormat || meta.at("code_version").get<std::string>() != kCodeVersion ||
        meta.at("type").get<std::string>() != W.type_label() || meta.at("table").get<std::string>() != to_string(kind) ||
        meta.at("order").get<std::uint32_t>() != W.order())
      throw SnapshotError("metadata does not match this build");
    const std::string data = read_file(bin_path);
    if (meta.at("fnv1a64").get<std::uint64_t>() != fnv1a(data)) throw SnapshotError("checksum mismatch");
    return decode(data, W.order());
  } catch (const std::exception& e) {
    if (warning) {
      if (!warning->empty()) *warning += "; ";
      *warning += "ignored " + bin_path.filename().string() + ": " + e.what();
    }
    return std::nullopt;
  }
}

} // namespace

std::string to_string(TableKind k) { return k == TableKind::KL ? "kl" : "r"; }

std::filesystem::path snapshot_path(const std::filesystem::path& dir, const std::string& type_label, TableKind kind,
                                    const std::string& extension) {
  return dir / (type_label + "-" + to_string(kind) + "-v" + kCodeVersion + extension);
}

SnapshotStats save_snapshot(const Workspace& ws, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw SnapshotError("cannot create " + dir.string() + ": " + ec.message());
  const CoxeterSystem& W = ws.sys();
  const Columns kl = collect(ws.kl(), W.order());
  const Columns r = collect(ws.r(), W.order());
  save_one(W, dir, TableKind::KL, kl);
  save_one(W, dir, TableKind::R, r);
  return {static_cast<std::uint32_t>(kl.size()), static_cast<std::uint32_t>(r.size())};
}

SnapshotStats load_snapshot(Workspace& ws, const std::filesystem::path& dir, std::string* warning) {
  SnapshotStats stats;
  const CoxeterSystem& W = ws.sys();
  if (auto cols = load_one(W, dir, TableKind::KL, warning))
    for (auto& [y, entries] : *cols) {
      ws.kl().install_column(y, std::move(entries));
      ++stats.kl_columns;
    }
  if (auto cols = load_one(W, dir, TableKind::R, warning))
    for (auto& [y, entries] : *cols) {
      ws.r().install_column(y, std::move(entries));
      ++stats.r_columns;
    }
  return stats;
}

std::optional<std::filesystem::path> default_cache_dir() {
  const char* v = std::getenv(kCacheDirEnv);
  if (!v || !*v) return std::nullopt;
  return std::filesystem::path(v);
}

} // namespace klext
