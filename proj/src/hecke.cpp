#include "klext/hecke.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace klext {

namespace {
const LaurentPoly kZero;
}

HeckeElement HeckeElement::standard(const CoxeterSystem& sys, std::uint32_t w, LaurentPoly c) {
  HeckeElement h(&sys);
  h.add(w, c);
  return h;
}

LaurentPoly HeckeElement::coeff(std::uint32_t w) const {
  auto it = coeffs_.find(w);
  return it == coeffs_.end() ? LaurentPoly() : it->second;
}

void HeckeElement::add(std::uint32_t w, const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

HeckeElement HeckeElement::mult_by_gen(int s, Side side) const {
  HeckeElement out(owner_);
  const LaurentPoly q = LaurentPoly::from_terms({{-1, 1}, {1, -1}}); // v^-1 - v
  for (const auto& [w, c] : coeffs_) {
    const bool descent = side == Side::Right ? owner_->is_right_descent(w, s) : owner_->is_left_descent(w, s);
    const std::uint32_t ws = side == Side::Right ? owner_->right_mult(w, s) : owner_->left_mult(w, s);
    out.add(ws, c);
    if (descent) out.add(w, c * q);
  }
  return out;
}

HeckeElement HeckeElement::mult_by_kl_gen(int s, Side side) const {
  HeckeElement out = mult_by_gen(s, side);
  out += scaled(LaurentPoly::monomial(1));
  return out;
}

HeckeElement HeckeElement::operator*(const HeckeElement& other) const {
  HeckeElement out(owner_);
  for (const auto& [w, c] : other.coeffs_) {
    HeckeElement t = scaled(c);
    for (int s : owner_->word(w)) t = t.mult_by_gen(s, Side::Right);
    out += t;
  }
  return out;
}

HeckeElement& HeckeElement::operator+=(const HeckeElement& other) {
  if (!owner_) owner_ = other.owner_;
  for (const auto& [w, c] : other.coeffs_) add(w, c);
  return *this;
}

HeckeElement& HeckeElement::operator-=(const HeckeElement& other) {
  if (!owner_) owner_ = other.owner_;
  for (const auto& [w, c] : other.coeffs_) add(w, -c);
  return *this;
}

HeckeElement HeckeElement::scaled(const LaurentPoly& c) const {
  HeckeElement out(owner_);
  if (c.is_zero()) return out;
  for (const auto& [w, a] : coeffs_) out.add(w, a * c);
  return out;
}

HeckeElement HeckeElement::bar() const {
  HeckeElement out(owner_);
  const LaurentPoly d = v_minus_vinv();
  for (const auto& [w, c] : coeffs_) {
    HeckeElement x = standard(*owner_, 0, c.bar());
    for (int s : owner_->word(w)) {
      HeckeElement next = x.mult_by_gen(s, Side::Right);
      next += x.scaled(d);
      x = std::move(next);
    }
    out += x;
  }
  return out;
}

std::string HeckeElement::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string s;
  for (const auto& [w, c] : coeffs_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.to_string() + ")H[" + owner_->name(w) + "]";
  }
  return s;
}

KLTable::KLTable(SystemPtr sys) : sys_(std::move(sys)), cols_(sys_->order()), owned_(sys_->order()) {
  for (auto& c : cols_) c.store(nullptr, std::memory_order_relaxed);
}

KLTable::~KLTable() = default;

const KLTable::Column& KLTable::col(std::uint32_t y) const {
  if (const Column* c = cols_[y].load(std::memory_order_acquire)) return *c;
  std::lock_guard lock(write_mutex_);
  return fill_locked(y);
}

void KLTable::publish(std::uint32_t y, std::unique_ptr<Column> c) const {
  owned_[y] = std::move(c);
  cols_[y].store(owned_[y].get(), std::memory_order_release);
  filled_.fetch_add(1, std::memory_order_relaxed);
}

const KLTable::Column& KLTable::fill_locked(std::uint32_t y) const {
  if (const Column* c = cols_[y].load(std::memory_order_acquire)) return *c;
  const CoxeterSystem& W = *sys_;
  auto out = std::make_unique<Column>();
  if (y == 0) {
    out->entries.emplace_back(0, LaurentPoly(1));
    publish(y, std::move(out));
    return *owned_[y];
  }
  const int s = std::countr_zero(W.descent_mask(y, Side::Right));
  const std::uint32_t yp = W.right_mult(y, s);
  const Column& prev = fill_locked(yp);

  std::unordered_map<std::uint32_t, LaurentPoly> acc;
  acc.reserve(prev.entries.size() * 2);
  for (const auto& [x, p] : prev.entries) {
    const std::uint32_t xs = W.right_mult(x, s);
    acc[x].add_scaled(p, 1, W.is_right_descent(x, s) ? -1 : 1);
    acc[xs] += p;
  }
  for (const auto& [z, m] : prev.mu) {
    if (!W.is_right_descent(z, s)) continue;
    const Column& cz = fill_locked(z);
    for (const auto& [x, p] : cz.entries) acc[x].add_scaled(p, -m, 0);
  }
  for (auto& [x, p] : acc)
    if (!p.is_zero()) out->entries.emplace_back(x, std::move(p));
  std::sort(out->entries.begin(), out->entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [x, p] : out->entries) {
    if (x == y) continue;
    Integer m = p.coeff(1);
    if (m != 0) out->mu.emplace_back(x, std::move(m));
  }
  publish(y, std::move(out));
  return *owned_[y];
}

void KLTable::install_column(std::uint32_t y, std::vector<std::pair<std::uint32_t, LaurentPoly>> entries) {
  std::lock_guard lock(write_mutex_);
  if (cols_[y].load(std::memory_order_acquire)) return;
  auto c = std::make_unique<Column>();
  c->entries = std::move(entries);
  for (const auto& [x, p] : c->entries) {
    if (x == y) continue;
    Integer m = p.coeff(1);
    if (m != 0) c->mu.emplace_back(x, std::move(m));
  }
  publish(y, std::move(c));
}

const std::vector<std::pair<std::uint32_t, LaurentPoly>>& KLTable::column(std::uint32_t y) const {
  return col(y).entries;
}

const LaurentPoly& KLTable::p(std::uint32_t x, std::uint32_t y) const {
  if (x == y) {
    static const LaurentPoly one(1);
    return one;
  }
  if (sys_->length(x) >= sys_->length(y)) return kZero;
  const auto& e = col(y).entries;
  auto it = std::lower_bound(e.begin(), e.end(), x, [](const auto& t, std::uint32_t k) { return t.first < k; });
  return (it != e.end() && it->first == x) ? it->second : kZero;
}

LaurentPoly KLTable::kl_poly(Element x, Element y) const { return p(sys_->check(x), sys_->check(y)); }

Integer KLTable::p_coeff(std::uint32_t x, std::uint32_t y, int k) const { return p(x, y).coeff(k); }

Integer KLTable::mu(std::uint32_t x, std::uint32_t y) const { return x == y ? Integer(0) : p(x, y).coeff(1); }
Integer KLTable::mu(Element x, Element y) const { return mu(sys_->check(x), sys_->check(y)); }

bool KLTable::is_trivial(std::uint32_t x, std::uint32_t y) const {
  return p(x, y) == LaurentPoly::monomial(sys_->length(y) - sys_->length(x));
}

HeckeElement KLTable::kl_element(Element w) const {
  HeckeElement h(sys_.get());
  for (const auto& [x, p] : column(sys_->check(w))) h.add(x, p);
  return h;
}

HeckeElement KLTable::standard_in_kl_basis(Element w) const {
  const std::uint32_t wi = sys_->check(w);
  auto below = sys_->lower_interval(wi);
  std::map<std::uint32_t, LaurentPoly> q;
  q[wi] = 1;
  for (auto it = below.rbegin(); it != below.rend(); ++it) {
    const std::uint32_t x = *it;
    if (x == wi) continue;
    LaurentPoly acc;
    for (const auto& [z, qz] : q)
      if (z != x) acc -= p(x, z) * qz;
    if (!acc.is_zero()) q[x] = std::move(acc);
  }
  HeckeElement h(sys_.get());
  for (const auto& [x, c] : q) h.add(x, c);
  return h;
}

std::vector<std::pair<std::uint32_t, LaurentPoly>> KLTable::nontrivial_kl_from(std::uint32_t x) const {
  std::vector<std::pair<std::uint32_t, LaurentPoly>> out;
  for (std::uint32_t y = 0; y < sys_->order(); ++y) {
    if (!sys_->bruhat_leq(x, y)) continue;
    if (!is_trivial(x, y)) out.emplace_back(y, p(x, y));
  }
  return out;
}

void KLTable::fill_all() const {
  for (std::uint32_t y = 0; y < sys_->order(); ++y) col(y);
}

} // namespace klext
