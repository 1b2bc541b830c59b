#include "klext/typea.hpp"

#include <algorithm>
#include <bit>

namespace klext {

int symmetric_degree(const CoxeterSystem& sys) {
  if (sys.type().family != 'A') throw TypeAError("penultimate-cell combinatorics requires a system of type A");
  return sys.rank() + 1;
}

int q_index(int n, int i, int j) { return std::min({n - 1 - i, n - 1 - j, i - 1, j - 1}); }

namespace {

void check_range(int n, int i, int j) {
  if (i < 1 || i > n - 1 || j < 1 || j > n - 1)
    throw TypeAError("indices must lie in 1.." + std::to_string(n - 1));
}

std::uint32_t w_hat(const CoxeterSystem& sys, int i, int j) {
  std::vector<int> word;
  if (j <= i)
    for (int k = i; k >= j; --k) word.push_back(k - 1);
  else
    for (int k = i; k <= j; ++k) word.push_back(k - 1);
  return sys.from_word(word).index;
}

} // namespace

PenultimateIndex penultimate_element(const CoxeterSystem& sys, int i, int j) {
  const int n = symmetric_degree(sys);
  check_range(n, i, j);
  PenultimateIndex p;
  p.n = n;
  p.i = i;
  p.j = j;
  p.w_hat = w_hat(sys, i, j);
  p.w_pen = sys.multiply(w_hat(sys, i, n - j), sys.w0());
  p.q = q_index(n, i, j);
  return p;
}

std::vector<std::uint32_t> bigrassmannian_chain(const CoxeterSystem& sys, int i, int j) {
  check_range(symmetric_degree(sys), i, j);
  const GenMask li = GenMask{1} << (i - 1), rj = GenMask{1} << (j - 1);
  std::vector<std::uint32_t> out;
  for (std::uint32_t w = 1; w < sys.order(); ++w)
    if (sys.descent_mask(w, Side::Left) == li && sys.descent_mask(w, Side::Right) == rj) out.push_back(w);
  // index order already refines length
  return out;
}

int phi(const CoxeterSystem& sys, int i, int j, std::uint32_t u) {
  const auto chain = bigrassmannian_chain(sys, i, j);
  auto it = std::find(chain.begin(), chain.end(), u);
  if (it == chain.end()) throw TypeAError("element is not in the bigrassmannian chain for (" + std::to_string(i) + "," + std::to_string(j) + ")");
  const PenultimateIndex p = penultimate_element(sys, i, j);
  const int t = static_cast<int>(it - chain.begin()) + 1;
  return sys.length(p.w_pen) - 2 * p.q + 2 * (t - 1);
}

std::vector<std::uint32_t> bm_set(const CoxeterSystem& sys, std::uint32_t w) {
  symmetric_degree(sys);
  std::vector<std::uint32_t> below;
  for (std::uint32_t u = 1; u <= w; ++u)
    if (sys.is_bigrassmannian(u) && sys.bruhat_leq(u, w)) below.push_back(u);
  std::vector<std::uint32_t> out;
  for (std::uint32_t u : below) {
    const bool dominated = std::any_of(below.begin(), below.end(), [&](std::uint32_t v) {
      return v != u && sys.bruhat_leq(u, v);
    });
    if (!dominated) out.push_back(u);
  }
  return out;
}

std::vector<PredictionRecord> predict_ext1(const Workspace& ws, std::uint32_t w) {
  const CoxeterSystem& sys = ws.sys();
  symmetric_degree(sys);
  std::vector<PredictionRecord> out;
  for (std::uint32_t u : bm_set(sys, w)) {
    const int i = std::countr_zero(sys.descent_mask(u, Side::Left)) + 1;
    const int j = std::countr_zero(sys.descent_mask(u, Side::Right)) + 1;
    const PenultimateIndex p = penultimate_element(sys, i, j);
    if (!sys.bruhat_leq(w, p.w_pen)) continue;
    const auto chain = bigrassmannian_chain(sys, i, j);
    PredictionRecord rec;
    rec.w = w;
    rec.u = u;
    rec.i = i;
    rec.j = j;
    rec.chain_position = static_cast<int>(std::find(chain.begin(), chain.end(), u) - chain.begin()) + 1;
    rec.degree = phi(sys, i, j, u);
    rec.shift = sys.length(w) - rec.degree;
    const int d = sys.length(p.w_pen) - sys.length(w);
    rec.expected_shift = 2 - d;
    rec.expected = rec.shift == rec.expected_shift;
    rec.source = p.w_pen;
    rec.expected_part_dim = abs(ws.r().r(p.w_pen, w).coeff(d - 2));
    out.push_back(rec);
  }
  return out;
}

} // namespace klext
