#include "klext/coxeter.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <deque>
#include <map>
#include <mutex>

namespace klext {

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// Cartan matrix with the generator order used for enumeration. Off-diagonal
// entries only matter through their products, which fix the Coxeter matrix.
std::vector<std::vector<int>> cartan_matrix(const CartanType& t) {
  const int n = t.rank;
  std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  auto bond = [&](int i, int j, int mult) {
    c[i][j] = -1;
    c[j][i] = -mult;
  };
  switch (t.family) {
  case 'A':
    for (int i = 0; i + 1 < n; ++i) bond(i, i + 1, 1);
    break;
  case 'B':
  case 'C':
    // s0 = s1 - s2 - ... with the double bond between s0 and s1
    bond(0, 1, 2);
    for (int i = 1; i + 1 < n; ++i) bond(i, i + 1, 1);
    if (t.family == 'C') {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i < j) std::swap(c[i][j], c[j][i]);
    }
    break;
  case 'D':
    for (int i = 0; i + 2 < n; ++i) bond(i, i + 1, 1);
    bond(n - 3, n - 1, 1);
    break;
  case 'E':
    // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4
    bond(0, 2, 1);
    bond(1, 3, 1);
    for (int i = 2; i + 1 < n; ++i) bond(i, i + 1, 1);
    break;
  case 'F':
    bond(0, 1, 1);
    bond(1, 2, 2);
    bond(2, 3, 1);
    break;
  case 'G':
    bond(0, 1, 3);
    break;
  default:
    throw CoxeterError("unsupported Cartan type " + t.label());
  }
  return c;
}

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x + 0x9e3779b9)) * 1099511628211ULL;
    return h;
  }
};

} // namespace

CartanType CartanType::parse(std::string_view text) {
  CartanType t;
  if (text.size() < 2) throw CoxeterError("bad type descriptor '" + std::string(text) + "'");
  t.family = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  std::string_view digits = text.substr(1);
  if (!digits.empty() && (digits[0] == '_' || digits[0] == '-')) digits.remove_prefix(1);
  if (digits.empty() || digits.size() > 2 ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw CoxeterError("bad type descriptor '" + std::string(text) + "'");
  t.rank = std::stoi(std::string(digits));
  t.classical_order(); // validates
  return t;
}

std::uint64_t CartanType::classical_order() const {
  const int n = rank;
  switch (family) {
  case 'A':
    if (n >= 1 && n <= 19) return factorial(n + 1);
    break;
  case 'B':
  case 'C':
    if (n >= 2 && n <= 16) return (std::uint64_t{1} << n) * factorial(n);
    break;
  case 'D':
    if (n >= 4 && n <= 16) return (std::uint64_t{1} << (n - 1)) * factorial(n);
    break;
  case 'E':
    if (n == 6) return 51840;
    if (n == 7) return 2903040;
    if (n == 8) return 696729600;
    break;
  case 'F':
    if (n == 4) return 1152;
    break;
  case 'G':
    if (n == 2) return 12;
    break;
  default:
    break;
  }
  throw CoxeterError("unsupported Cartan type " + label());
}

CapExceeded::CapExceeded(const std::string& label, std::uint64_t order_, std::uint64_t cap_)
    : CoxeterError("type " + label + " has " + std::to_string(order_) + " elements, above the enumeration cap of " +
                   std::to_string(cap_)),
      order(order_), cap(cap_) {}

GenMask mask_of(const std::vector<int>& gens) {
  GenMask m = 0;
  for (int s : gens) m |= GenMask{1} << s;
  return m;
}

std::vector<int> gens_of(GenMask m) {
  std::vector<int> g;
  for (int s = 0; m; ++s, m >>= 1)
    if (m & 1U) g.push_back(s);
  return g;
}

std::shared_ptr<const CoxeterSystem> CoxeterSystem::build(std::string_view label, const BuildOptions& opts) {
  return build(CartanType::parse(label), opts);
}

std::shared_ptr<const CoxeterSystem> CoxeterSystem::build(const CartanType& type, const BuildOptions& opts) {
  const std::uint64_t expected = type.classical_order();
  if (expected > opts.element_cap) throw CapExceeded(type.label(), expected, opts.element_cap);

  std::shared_ptr<CoxeterSystem> sys(new CoxeterSystem());
  sys->type_ = type;
  sys->rank_ = type.rank;
  sys->cartan_ = cartan_matrix(type);
  const bool zero_based = type.family == 'B' || type.family == 'C';
  for (int i = 0; i < type.rank; ++i) sys->names_.push_back("s" + std::to_string(zero_based ? i : i + 1));
  if (type.family == 'A' && type.rank == 1) sys->aliases_ = {"s"};
  if (type.family == 'A' && type.rank == 2) sys->aliases_ = {"s", "t"};
  if (type.family == 'A' && type.rank == 3) sys->aliases_ = {"r", "s", "t"};

  sys->enumerate(opts);
  if (sys->order() != expected)
    throw CoxeterError("enumeration of " + type.label() + " produced " + std::to_string(sys->order()) +
                       " elements, expected " + std::to_string(expected));
  if (sys->order() <= opts.dense_bruhat_limit) sys->build_dense_bruhat();
  return sys;
}

void CoxeterSystem::enumerate(const BuildOptions&) {
  const int n = rank_;
  // w is stored through v_w = w^{-1}(rho) in fundamental-weight coordinates;
  // right multiplication by s acts on v_w by the simple reflection s.
  std::unordered_map<std::vector<int>, std::uint32_t, VecHash> seen;
  std::vector<std::vector<int>> coords;
  coords.emplace_back(n, 1);
  seen.emplace(coords[0], 0);
  parent_.push_back(0);
  last_.push_back(-1);
  length_.push_back(0);

  std::vector<std::vector<std::uint32_t>> right(n);
  for (std::uint32_t w = 0; w < coords.size(); ++w) {
    for (int s = 0; s < n; ++s) {
      std::vector<int> v = coords[w];
      const int vs = v[s];
      for (int j = 0; j < n; ++j) v[j] -= vs * cartan_[s][j];
      auto [it, inserted] = seen.try_emplace(v, static_cast<std::uint32_t>(coords.size()));
      if (inserted) {
        coords.push_back(std::move(v));
        parent_.push_back(w);
        last_.push_back(static_cast<std::int8_t>(s));
        length_.push_back(length_[w] + 1);
      }
      right[s].push_back(it->second);
    }
  }
  right_ = std::move(right);
  const std::uint32_t N = static_cast<std::uint32_t>(coords.size());

  right_desc_.assign(N, 0);
  for (std::uint32_t w = 0; w < N; ++w)
    for (int s = 0; s < n; ++s)
      if (coords[w][s] < 0) right_desc_[w] |= GenMask{1} << s;

  // inverse via reversed canonical word
  inverse_.assign(N, 0);
  for (std::uint32_t w = 0; w < N; ++w) {
    std::uint32_t u = 0;
    for (std::uint32_t x = w; x != 0; x = parent_[x]) u = right_[last_[x]][u];
    inverse_[w] = u;
  }
  left_.assign(n, std::vector<std::uint32_t>(N));
  left_desc_.assign(N, 0);
  for (int s = 0; s < n; ++s)
    for (std::uint32_t w = 0; w < N; ++w) left_[s][w] = inverse_[right_[s][inverse_[w]]];
  for (std::uint32_t w = 0; w < N; ++w) left_desc_[w] = right_desc_[inverse_[w]];

  w0_ = N - 1;
  offsets_.clear();
  for (std::uint32_t w = 0; w < N; ++w)
    while (static_cast<int>(offsets_.size()) <= length_[w]) offsets_.push_back(w);
  offsets_.push_back(N);
}

void CoxeterSystem::build_dense_bruhat() {
  const std::uint32_t N = order();
  words_per_row_ = (N + 63) / 64;
  down_.assign(static_cast<std::size_t>(N) * words_per_row_, 0);
  auto row = [&](std::uint32_t y) { return down_.data() + static_cast<std::size_t>(y) * words_per_row_; };
  row(0)[0] = 1;
  for (std::uint32_t y = 1; y < N; ++y) {
    const int s = std::countr_zero(left_desc_[y]);
    const std::uint32_t sy = left_[s][y];
    std::uint64_t* dst = row(y);
    const std::uint64_t* src = row(sy);
    std::copy(src, src + words_per_row_, dst);
    for (std::uint32_t z = 0; z < N; ++z)
      if ((src[z / 64] >> (z % 64)) & 1U) {
        const std::uint32_t sz = left_[s][z];
        dst[sz / 64] |= std::uint64_t{1} << (sz % 64);
      }
  }
}

int CoxeterSystem::coxeter_m(int s, int t) const {
  if (s == t) return 1;
  switch (cartan_[s][t] * cartan_[t][s]) {
  case 0: return 2;
  case 1: return 3;
  case 2: return 4;
  case 3: return 6;
  default: throw CoxeterError("unexpected Cartan product");
  }
}

std::uint32_t CoxeterSystem::check(Element w) const {
  if (w.owner != this) throw CoxeterError("element belongs to a different Coxeter system");
  if (w.index >= order()) throw CoxeterError("element index out of range");
  return w.index;
}

Element CoxeterSystem::element(std::uint32_t index) const {
  if (index >= order()) throw CoxeterError("element index out of range");
  return {this, index};
}

std::uint32_t CoxeterSystem::multiply(std::uint32_t x, std::uint32_t y) const {
  std::uint32_t r = x;
  for (int s : word(y)) r = right_[s][r];
  return r;
}

Element CoxeterSystem::mult(Element w, int s, Side side) const {
  const std::uint32_t i = check(w);
  if (s < 0 || s >= rank_) throw CoxeterError("generator index out of range");
  return {this, side == Side::Right ? right_[s][i] : left_[s][i]};
}

Element CoxeterSystem::mult(Element x, Element y) const { return {this, multiply(check(x), check(y))}; }

std::vector<int> CoxeterSystem::descents(Element w, Side side) const { return gens_of(descent_mask(check(w), side)); }

std::vector<int> CoxeterSystem::word(std::uint32_t w) const {
  std::vector<int> out(static_cast<std::size_t>(length_[w]));
  for (std::size_t k = out.size(); w != 0; w = parent_[w]) out[--k] = last_[w];
  return out;
}

std::string CoxeterSystem::name(std::uint32_t w) const {
  if (w == 0) return "e";
  std::string s;
  const auto wd = word(w);
  for (std::size_t i = 0; i < wd.size(); ++i) {
    if (!aliases_.empty()) {
      s += aliases_[wd[i]];
    } else {
      if (i) s += '*';
      s += names_[wd[i]];
    }
  }
  return s;
}

int CoxeterSystem::generator_index(std::string_view nm) const {
  for (int i = 0; i < rank_; ++i)
    if (names_[i] == nm) return i;
  for (int i = 0; i < static_cast<int>(aliases_.size()); ++i)
    if (aliases_[i] == nm) return i;
  return -1;
}

Element CoxeterSystem::from_word(const std::vector<int>& wd) const {
  std::uint32_t r = 0;
  for (int s : wd) {
    if (s < 0 || s >= rank_) throw CoxeterError("generator index out of range");
    r = right_[s][r];
  }
  return {this, r};
}

Element CoxeterSystem::parse(std::string_view text) const {
  std::vector<int> wd;
  std::string token;
  auto flush = [&]() {
    if (token.empty()) return;
    if (token == "e" || token == "1") {
      token.clear();
      return;
    }
    if (token == "w0") {
      for (int s : word(w0_)) wd.push_back(s);
      token.clear();
      return;
    }
    // greedy longest match over generator names and aliases
    std::size_t pos = 0;
    while (pos < token.size()) {
      int best = -1;
      std::size_t best_len = 0;
      auto consider = [&](const std::string& nm, int idx) {
        if (nm.size() > best_len && token.compare(pos, nm.size(), nm) == 0) {
          best = idx;
          best_len = nm.size();
        }
      };
      for (int i = 0; i < rank_; ++i) consider(names_[i], i);
      for (int i = 0; i < static_cast<int>(aliases_.size()); ++i) consider(aliases_[i], i);
      if (best < 0)
        throw CoxeterError("cannot parse element '" + std::string(text) + "' in type " + type_label());
      wd.push_back(best);
      pos += best_len;
    }
    token.clear();
  };
  for (char c : text) {
    if (c == '*' || c == '.' || c == ' ' || c == ',') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return from_word(wd);
}

GenMask CoxeterSystem::support(std::uint32_t w) const {
  GenMask m = 0;
  for (; w != 0; w = parent_[w]) m |= GenMask{1} << last_[w];
  return m;
}

bool CoxeterSystem::is_boolean(std::uint32_t w) const { return std::popcount(support(w)) == length_[w]; }
bool CoxeterSystem::is_boolean(Element w) const { return is_boolean(check(w)); }

bool CoxeterSystem::is_bigrassmannian(std::uint32_t w) const {
  return std::popcount(left_desc_[w]) == 1 && std::popcount(right_desc_[w]) == 1;
}
bool CoxeterSystem::is_bigrassmannian(Element w) const { return is_bigrassmannian(check(w)); }

bool CoxeterSystem::bruhat_leq(Element x, Element y) const { return bruhat_leq(check(x), check(y)); }

bool CoxeterSystem::bruhat_leq(std::uint32_t x, std::uint32_t y) const {
  if (!down_.empty())
    return (down_[static_cast<std::size_t>(y) * words_per_row_ + x / 64] >> (x % 64)) & 1U;
  return bruhat_memo(x, y);
}

bool CoxeterSystem::bruhat_memo(std::uint32_t x, std::uint32_t y) const {
  if (x == y || x == 0) return true;
  if (length_[x] >= length_[y]) return false;
  const std::uint64_t key = (static_cast<std::uint64_t>(x) << 32) | y;
  {
    std::shared_lock lock(bruhat_mutex_);
    auto it = bruhat_cache_.find(key);
    if (it != bruhat_cache_.end()) return it->second;
  }
  const int s = std::countr_zero(left_desc_[y]);
  const std::uint32_t sy = left_[s][y];
  const bool r = is_left_descent(x, s) ? bruhat_memo(left_[s][x], sy) : bruhat_memo(x, sy);
  std::unique_lock lock(bruhat_mutex_);
  bruhat_cache_.emplace(key, r);
  return r;
}

std::vector<std::uint32_t> CoxeterSystem::lower_interval(std::uint32_t y) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t z = 0; z < offsets_[length_[y] + 1]; ++z)
    if (bruhat_leq(z, y)) out.push_back(z);
  return out;
}

std::vector<std::uint32_t> CoxeterSystem::interval(std::uint32_t x, std::uint32_t y) const {
  std::vector<std::uint32_t> out;
  if (length_[x] > length_[y]) return out;
  for (std::uint32_t z = offsets_[length_[x]]; z < offsets_[length_[y] + 1]; ++z)
    if (bruhat_leq(x, z) && bruhat_leq(z, y)) out.push_back(z);
  return out;
}

ParabolicSubset CoxeterSystem::parabolic(const std::vector<int>& J) const {
  for (int s : J)
    if (s < 0 || s >= rank_) throw CoxeterError("parabolic generator out of range");
  return parabolic(mask_of(J));
}

ParabolicSubset CoxeterSystem::parabolic(GenMask J) const {
  ParabolicSubset p;
  p.J = J;
  p.generators = gens_of(J);
  for (std::uint32_t w = 0; w < order(); ++w) {
    if ((support(w) & ~J) == 0) {
      p.subgroup.push_back(w);
      if (length_[w] > length_[p.longest]) p.longest = w;
    }
    if ((right_desc_[w] & J) == 0) p.right_reps.push_back(w);
    if ((left_desc_[w] & J) == 0) p.left_reps.push_back(w);
  }
  return p;
}

} // namespace klext
