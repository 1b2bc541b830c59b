#include "klext/rpoly.hpp"

#include <algorithm>
#include <bit>

namespace klext {

namespace {
const LaurentPoly kZero;

std::uint64_t pair_key(std::uint32_t x, std::uint32_t y) { return (static_cast<std::uint64_t>(x) << 32) | y; }

int lowest_ascent(const CoxeterSystem& W, std::uint32_t y) {
  const GenMask all = (GenMask{1} << W.rank()) - 1;
  const GenMask asc = all & ~W.descent_mask(y, Side::Right);
  return asc ? std::countr_zero(asc) : -1;
}
} // namespace

RTable::RTable(SystemPtr sys) : sys_(std::move(sys)), cols_(sys_->order()), owned_(sys_->order()) {
  for (auto& c : cols_) c.store(nullptr, std::memory_order_relaxed);
}

RTable::~RTable() = default;

const RTable::Column& RTable::col(std::uint32_t y) const {
  if (const Column* c = cols_[y].load(std::memory_order_acquire)) return *c;
  std::lock_guard lock(write_mutex_);
  return fill_locked(y);
}

const RTable::Column& RTable::fill_locked(std::uint32_t y) const {
  if (const Column* c = cols_[y].load(std::memory_order_acquire)) return *c;
  const CoxeterSystem& W = *sys_;
  auto out = std::make_unique<Column>();
  if (y == W.w0()) {
    out->emplace_back(y, LaurentPoly(1));
  } else {
    const int s = lowest_ascent(W, y);
    const Column& prev = fill_locked(W.right_mult(y, s));
    const LaurentPoly d = v_minus_vinv();
    std::unordered_map<std::uint32_t, LaurentPoly> acc;
    acc.reserve(prev.size() * 2);
    for (const auto& [x, r] : prev) {
      acc[W.right_mult(x, s)] += r;
      if (W.is_right_descent(x, s)) acc[x] += d * r;
    }
    for (auto& [x, r] : acc)
      if (!r.is_zero()) out->emplace_back(x, std::move(r));
    std::sort(out->begin(), out->end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  owned_[y] = std::move(out);
  cols_[y].store(owned_[y].get(), std::memory_order_release);
  filled_.fetch_add(1, std::memory_order_relaxed);
  return *owned_[y];
}

void RTable::install_column(std::uint32_t y, std::vector<std::pair<std::uint32_t, LaurentPoly>> c) {
  std::lock_guard lock(write_mutex_);
  if (cols_[y].load(std::memory_order_acquire)) return;
  owned_[y] = std::make_unique<Column>(std::move(c));
  cols_[y].store(owned_[y].get(), std::memory_order_release);
  filled_.fetch_add(1, std::memory_order_relaxed);
}

const std::vector<std::pair<std::uint32_t, LaurentPoly>>& RTable::column(std::uint32_t y) const { return col(y); }

void RTable::fill_all() const {
  for (std::uint32_t y = sys_->order(); y-- > 0;) col(y);
}

const LaurentPoly& RTable::r(std::uint32_t x, std::uint32_t y) const {
  if (x == y) {
    static const LaurentPoly one(1);
    return one;
  }
  if (sys_->length(x) <= sys_->length(y)) return kZero;
  const Column& c = col(y);
  auto it = std::lower_bound(c.begin(), c.end(), x, [](const auto& t, std::uint32_t k) { return t.first < k; });
  return (it != c.end() && it->first == x) ? it->second : kZero;
}

LaurentPoly RTable::r_poly(Element x, Element y) const { return r(sys_->check(x), sys_->check(y)); }

std::vector<Integer> RTable::coeff_list(Element x, Element y) const {
  const std::uint32_t xi = sys_->check(x), yi = sys_->check(y);
  if (!sys_->bruhat_leq(yi, xi))
    throw std::invalid_argument("coefficient list requires x >= y in Bruhat order");
  const int d = sys_->length(xi) - sys_->length(yi);
  const LaurentPoly& p = r(xi, yi);
  std::vector<Integer> out;
  for (int k = -d; k <= d; k += 2) out.push_back(p.coeff(k));
  return out;
}

bool RTable::delorme_check(std::uint32_t x, std::uint32_t y) const {
  return r(x, y).eval_at_one() == (x == y ? 1 : 0);
}

std::vector<int> RTable::sign_compatibility(std::uint32_t x, std::uint32_t y) const {
  if (!sys_->bruhat_leq(y, x)) throw std::invalid_argument("sign compatibility requires x >= y in Bruhat order");
  const int d = sys_->length(x) - sys_->length(y);
  std::vector<int> bad;
  for (const auto& [k, c] : r(x, y).terms()) {
    const bool want_positive = ((d - k) / 2) % 2 == 0;
    if ((c > 0) != want_positive) bad.push_back(k);
  }
  return bad;
}

std::vector<int> RTable::sign_compatibility(Element x, Element y) const {
  return sign_compatibility(sys_->check(x), sys_->check(y));
}

LaurentPoly r_poly_random_ascent(const CoxeterSystem& W, std::uint32_t x, std::uint32_t y, std::mt19937_64& rng) {
  if (x == y) return 1;
  if (W.length(x) <= W.length(y)) return {};
  std::vector<int> asc;
  for (int s = 0; s < W.rank(); ++s)
    if (!W.is_right_descent(y, s)) asc.push_back(s);
  const int s = asc[std::uniform_int_distribution<std::size_t>(0, asc.size() - 1)(rng)];
  const std::uint32_t ys = W.right_mult(y, s);
  LaurentPoly out = r_poly_random_ascent(W, W.right_mult(x, s), ys, rng);
  if (W.is_right_descent(x, s)) out += v_minus_vinv() * r_poly_random_ascent(W, x, ys, rng);
  return out;
}

SingularRTable::SingularRTable(const RTable& r, GenMask J)
    : r_(r), par_(r.system().parabolic(J)), is_rep_(r.system().order(), false) {
  for (auto w : par_.right_reps) is_rep_[w] = true;
}

bool SingularRTable::is_rep(std::uint32_t x) const { return x < is_rep_.size() && is_rep_[x]; }

LaurentPoly SingularRTable::sr(std::uint32_t x, std::uint32_t y) const {
  if (!is_rep(x) || !is_rep(y))
    throw RepresentativeError("singular R-polynomial arguments must be minimal representatives of W/W_J");
  const std::uint64_t key = pair_key(x, y);
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  const CoxeterSystem& W = r_.system();
  const int top = W.length(par_.longest);
  LaurentPoly out;
  for (std::uint32_t w : par_.subgroup) out.add_scaled(r_.r(W.multiply(x, w), y), 1, W.length(w) - 2 * top);
  std::unique_lock lock(mutex_);
  return memo_.emplace(key, std::move(out)).first->second;
}

ParabolicRTable::ParabolicRTable(SystemPtr sys, GenMask J)
    : sys_(std::move(sys)), par_(sys_->parabolic(J)), is_rep_(sys_->order(), false) {
  for (auto w : par_.left_reps) is_rep_[w] = true;
  top_ = sys_->multiply(par_.longest, sys_->w0());
}

bool ParabolicRTable::is_rep(std::uint32_t x) const { return x < is_rep_.size() && is_rep_[x]; }

LaurentPoly ParabolicRTable::pr(std::uint32_t x, std::uint32_t y) const {
  if (!is_rep(x) || !is_rep(y))
    throw RepresentativeError("parabolic R-polynomial arguments must be minimal representatives of W_J\\W");
  return compute(x, y);
}

LaurentPoly ParabolicRTable::compute(std::uint32_t x, std::uint32_t y) const {
  if (y == top_) return x == top_ ? LaurentPoly(1) : LaurentPoly();
  const std::uint64_t key = pair_key(x, y);
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  const CoxeterSystem& W = *sys_;
  int s = -1;
  for (int t = 0; t < W.rank() && s < 0; ++t)
    if (!W.is_right_descent(y, t) && is_rep(W.right_mult(y, t))) s = t;
  if (s < 0) throw std::logic_error("no admissible ascent for a non-maximal parabolic representative");
  const std::uint32_t ys = W.right_mult(y, s);
  const std::uint32_t xs = W.right_mult(x, s);
  LaurentPoly out;
  if (!is_rep(xs)) {
    out = compute(x, ys).shifted(-1);
    out = -out;
  } else if (!W.is_right_descent(x, s)) {
    out = compute(xs, ys);
  } else {
    out = compute(xs, ys) + v_minus_vinv() * compute(x, ys);
  }
  std::unique_lock lock(mutex_);
  return memo_.emplace(key, std::move(out)).first->second;
}

} // namespace klext
