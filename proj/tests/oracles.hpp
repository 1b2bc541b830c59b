#pragma once

// Slow, independent reference implementations used only by tests.

#include "klext/workspace.hpp"

#include <set>
#include <vector>

namespace oracle {

using klext::CoxeterSystem;
using klext::LaurentPoly;

/// Bruhat order by the subword property: {x : x is a subword product of a reduced word of y}.
inline std::vector<bool> subword_products(const CoxeterSystem& W, std::uint32_t y) {
  const auto word = W.word(y);
  std::vector<bool> below(W.order(), false);
  const std::size_t n = word.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::uint32_t w = 0;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1U) w = W.right_mult(w, word[i]);
    below[w] = true;
  }
  return below;
}

/// Every reduced word of w, found by peeling right descents.
inline void reduced_words_into(const CoxeterSystem& W, std::uint32_t w, std::vector<int>& suffix,
                               std::vector<std::vector<int>>& out) {
  if (w == 0) {
    out.emplace_back(suffix.rbegin(), suffix.rend());
    return;
  }
  for (int s = 0; s < W.rank(); ++s)
    if (W.right_mult(w, s) != w && W.length(W.right_mult(w, s)) < W.length(w)) {
      suffix.push_back(s);
      reduced_words_into(W, W.right_mult(w, s), suffix, out);
      suffix.pop_back();
    }
}

inline std::vector<std::vector<int>> reduced_words(const CoxeterSystem& W, std::uint32_t w) {
  std::vector<std::vector<int>> out;
  std::vector<int> suffix;
  reduced_words_into(W, w, suffix, out);
  return out;
}

inline bool has_multiplicity_free_word(const CoxeterSystem& W, std::uint32_t w) {
  for (const auto& word : reduced_words(W, w))
    if (std::set<int>(word.begin(), word.end()).size() == word.size()) return true;
  return false;
}

/// R-polynomials from the KL matrix alone: invert P = (p_{y,z}) by a
/// triangular solve, bar the inverse, and multiply back. Never touches the
/// R recursion.
class RMatrixOracle {
public:
  explicit RMatrixOracle(const klext::Workspace& ws) : ws_(ws), n_(ws.sys().order()), q_(n_ * n_) {
    const CoxeterSystem& W = ws.sys();
    for (std::uint32_t x = 0; x < n_; ++x) {
      q(x, x) = 1;
      for (std::uint32_t z = x; z-- > 0;) {
        if (!W.bruhat_leq(z, x)) continue;
        LaurentPoly acc;
        for (std::uint32_t w = z + 1; w <= x; ++w)
          if (!q(w, x).is_zero() && W.bruhat_leq(z, w)) acc += ws.kl().p(z, w) * q(w, x);
        q(z, x) = -acc;
      }
    }
  }

  /// Coefficient of H_y in the dual of H_x.
  LaurentPoly r(std::uint32_t x, std::uint32_t y) const {
    LaurentPoly out;
    for (std::uint32_t z = 0; z < n_; ++z)
      if (!q_[z * n_ + x].is_zero()) out += q_[z * n_ + x].bar() * ws_.kl().p(y, z);
    return out;
  }

  /// Entry of the inverse KL matrix: H_x = sum_z q(z,x) C_z.
  const LaurentPoly& inverse(std::uint32_t z, std::uint32_t x) const { return q_[z * n_ + x]; }

private:
  LaurentPoly& q(std::uint32_t z, std::uint32_t x) { return q_[z * n_ + x]; }
  const klext::Workspace& ws_;
  std::uint32_t n_;
  std::vector<LaurentPoly> q_;
};

} // namespace oracle
