#include "klext/intervals.hpp"

#include <boost/pending/disjoint_sets.hpp>

#include <algorithm>
#include <functional>

namespace klext {

namespace {
std::uint64_t key(std::uint32_t x, std::uint32_t y) { return (static_cast<std::uint64_t>(x) << 32) | y; }

struct Hasse {
  std::vector<int> rank;
  std::vector<std::vector<char>> cover; // cover[i][j]: i covered by j
  std::vector<int> up, down;
};

Hasse hasse_of(const CoxeterSystem& W, IntervalPair p, std::size_t cap) {
  auto elems = W.interval(p.y, p.x);
  if (elems.size() > cap)
    throw IntervalTooLarge("interval has " + std::to_string(elems.size()) + " elements, above the cap of " +
                           std::to_string(cap));
  const std::size_t n = elems.size();
  Hasse h;
  h.rank.resize(n);
  h.cover.assign(n, std::vector<char>(n, 0));
  h.up.assign(n, 0);
  h.down.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) h.rank[i] = W.length(elems[i]) - W.length(p.y);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (h.rank[j] == h.rank[i] + 1 && W.bruhat_leq(elems[i], elems[j])) {
        h.cover[i][j] = 1;
        ++h.up[i];
        ++h.down[j];
      }
  return h;
}
} // namespace

IntervalPair make_interval(const CoxeterSystem& sys, Element x, Element y) {
  const std::uint32_t xi = sys.check(x), yi = sys.check(y);
  if (!sys.bruhat_leq(yi, xi)) throw std::invalid_argument("interval pair requires x >= y in Bruhat order");
  return {xi, yi};
}

EquivPartition::EquivPartition(SystemPtr sys) : sys_(std::move(sys)) {
  const CoxeterSystem& W = *sys_;
  for (std::uint32_t x = 0; x < W.order(); ++x)
    for (std::uint32_t y : W.lower_interval(x)) {
      index_.emplace(key(x, y), static_cast<std::uint32_t>(pairs_.size()));
      pairs_.push_back({x, y});
    }
  const std::size_t n = pairs_.size();
  std::vector<std::size_t> rank(n), parent(n);
  boost::disjoint_sets<std::size_t*, std::size_t*> ds(rank.data(), parent.data());
  for (std::size_t i = 0; i < n; ++i) ds.make_set(i);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [x, y] = pairs_[i];
    const GenMask right = W.descent_mask(x, Side::Right) & W.descent_mask(y, Side::Right);
    const GenMask left = W.descent_mask(x, Side::Left) & W.descent_mask(y, Side::Left);
    for (int s : gens_of(right)) ds.union_set(i, std::size_t{index_.at(key(W.right_mult(x, s), W.right_mult(y, s)))});
    for (int s : gens_of(left)) ds.union_set(i, std::size_t{index_.at(key(W.left_mult(x, s), W.left_mult(y, s)))});
  }
  // classes numbered by their first member in pair order
  std::unordered_map<std::size_t, std::uint32_t> root_to_class;
  class_id_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = root_to_class.try_emplace(ds.find_set(i), static_cast<std::uint32_t>(classes_.size()));
    if (inserted) classes_.emplace_back();
    class_id_[i] = it->second;
    classes_[it->second].push_back(pairs_[i]);
  }
  boolean_.resize(classes_.size());
  coboolean_.resize(classes_.size());
  for (std::size_t c = 0; c < classes_.size(); ++c)
    for (const auto& p : classes_[c]) {
      if (!boolean_[c] && W.is_boolean(p.x)) boolean_[c] = p;
      if (!coboolean_[c] && W.is_boolean(W.multiply(W.w0(), p.y))) coboolean_[c] = p;
    }
}

std::uint32_t EquivPartition::class_of(std::uint32_t x, std::uint32_t y) const {
  auto it = index_.find(key(x, y));
  if (it == index_.end()) throw std::invalid_argument("pair is not a Bruhat interval (x >= y required)");
  return class_id_[it->second];
}

bool EquivPartition::equivalent(IntervalPair a, IntervalPair b) const {
  return class_of(a.x, a.y) == class_of(b.x, b.y);
}

std::vector<std::size_t> EquivPartition::class_sizes() const {
  std::vector<std::size_t> s;
  for (const auto& c : classes_) s.push_back(c.size());
  std::sort(s.rbegin(), s.rend());
  return s;
}

std::optional<IntervalPair> EquivPartition::boolean_witness(std::uint32_t cls) const { return boolean_[cls]; }
std::optional<IntervalPair> EquivPartition::coboolean_witness(std::uint32_t cls) const { return coboolean_[cls]; }

std::vector<ConstancyViolation> class_r_constancy(const EquivPartition& part, const RTable& r) {
  std::vector<ConstancyViolation> out;
  for (std::uint32_t c = 0; c < part.class_count(); ++c) {
    const auto& m = part.members(c);
    const LaurentPoly& ref = r.r(m[0].x, m[0].y);
    for (std::size_t i = 1; i < m.size(); ++i)
      if (!(r.r(m[i].x, m[i].y) == ref)) out.push_back({c, m[0], m[i]});
  }
  return out;
}

std::optional<BooleanCertificate> boolean_r_determined(const EquivPartition& part, std::uint32_t x, std::uint32_t y) {
  const std::uint32_t c = part.class_of(x, y);
  if (auto w = part.boolean_witness(c)) return BooleanCertificate{BooleanClause::A, *w};
  if (auto w = part.coboolean_witness(c)) return BooleanCertificate{BooleanClause::B, *w};
  return std::nullopt;
}

bool poset_isomorphic(const CoxeterSystem& s1, IntervalPair i1, const CoxeterSystem& s2, IntervalPair i2,
                      std::size_t cap) {
  const Hasse a = hasse_of(s1, i1, cap);
  const Hasse b = hasse_of(s2, i2, cap);
  const std::size_t n = a.rank.size();
  if (n != b.rank.size()) return false;
  auto profile = [](const Hasse& h) {
    std::vector<std::tuple<int, int, int>> p;
    for (std::size_t i = 0; i < h.rank.size(); ++i) p.emplace_back(h.rank[i], h.up[i], h.down[i]);
    std::sort(p.begin(), p.end());
    return p;
  };
  if (profile(a) != profile(b)) return false;

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto p, auto q) { return a.rank[p] < a.rank[q]; });
  std::vector<int> map(n, -1);
  std::vector<char> used(n, 0);

  std::function<bool(std::size_t)> extend = [&](std::size_t k) -> bool {
    if (k == n) return true;
    const std::size_t i = order[k];
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || b.rank[j] != a.rank[i] || b.up[j] != a.up[i] || b.down[j] != a.down[i]) continue;
      bool ok = true;
      for (std::size_t t = 0; t < k && ok; ++t) {
        const std::size_t u = order[t];
        if (a.cover[u][i] != b.cover[map[u]][j]) ok = false;
      }
      if (!ok) continue;
      map[i] = static_cast<int>(j);
      used[j] = 1;
      if (extend(k + 1)) return true;
      used[j] = 0;
      map[i] = -1;
    }
    return false;
  };
  return extend(0);
}

} // namespace klext
