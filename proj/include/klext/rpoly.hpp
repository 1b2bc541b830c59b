#pragma once

// R-polynomials r_{x,y}, nonzero only for x >= y, with r_{x,x} = 1 and
// r_{x,w0} = delta. For y < w0 and the lowest s with ys > y:
//   r_{x,y} = r_{xs,ys}                          if xs > x
//   r_{x,y} = r_{xs,ys} + (v - v^-1) r_{x,ys}    if xs < x
//
// Singular (sr) and parabolic (pr) variants live on minimal coset
// representatives for W/W_J and W_J\W respectively.

#include "klext/coxeter.hpp"
#include "klext/poly.hpp"

#include <atomic>
#include <memory>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace klext {

class RTable {
public:
  explicit RTable(SystemPtr sys);
  ~RTable();
  RTable(const RTable&) = delete;
  RTable& operator=(const RTable&) = delete;

  const CoxeterSystem& system() const { return *sys_; }

  const LaurentPoly& r(std::uint32_t x, std::uint32_t y) const;
  LaurentPoly r_poly(Element x, Element y) const;

  /// Coefficients at exponents -d, -d+2, ..., d. Throws unless x >= y.
  std::vector<Integer> coeff_list(Element x, Element y) const;
  bool delorme_check(std::uint32_t x, std::uint32_t y) const;
  /// Exponents k whose coefficient has sign different from (-1)^{(d-k)/2}.
  std::vector<int> sign_compatibility(std::uint32_t x, std::uint32_t y) const;
  std::vector<int> sign_compatibility(Element x, Element y) const;

  /// Column r_{-,y} as (x, r_{x,y}) for all x >= y, ascending x.
  const std::vector<std::pair<std::uint32_t, LaurentPoly>>& column(std::uint32_t y) const;
  void fill_all() const;
  std::uint32_t filled_columns() const { return filled_.load(std::memory_order_relaxed); }
  bool has_column(std::uint32_t y) const { return cols_[y].load(std::memory_order_acquire) != nullptr; }
  void install_column(std::uint32_t y, std::vector<std::pair<std::uint32_t, LaurentPoly>> col);

private:
  using Column = std::vector<std::pair<std::uint32_t, LaurentPoly>>;
  const Column& col(std::uint32_t y) const;
  const Column& fill_locked(std::uint32_t y) const;

  SystemPtr sys_;
  mutable std::mutex write_mutex_;
  mutable std::vector<std::atomic<const Column*>> cols_;
  mutable std::vector<std::unique_ptr<Column>> owned_;
  mutable std::atomic<std::uint32_t> filled_{0};
};

/// Recomputes r_{x,y} from scratch choosing a random ascent at every step.
LaurentPoly r_poly_random_ascent(const CoxeterSystem& sys, std::uint32_t x, std::uint32_t y, std::mt19937_64& rng);

class RepresentativeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Singular R-polynomials on minimal representatives of W/W_J.
class SingularRTable {
public:
  SingularRTable(const RTable& r, GenMask J);
  const ParabolicSubset& parabolic() const { return par_; }
  const std::vector<std::uint32_t>& reps() const { return par_.right_reps; }
  bool is_rep(std::uint32_t x) const;
  LaurentPoly sr(std::uint32_t x, std::uint32_t y) const;

private:
  const RTable& r_;
  ParabolicSubset par_;
  std::vector<bool> is_rep_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<std::uint64_t, LaurentPoly> memo_;
};

/// Parabolic R-polynomials on minimal representatives of W_J\W.
class ParabolicRTable {
public:
  ParabolicRTable(SystemPtr sys, GenMask J);
  const ParabolicSubset& parabolic() const { return par_; }
  const std::vector<std::uint32_t>& reps() const { return par_.left_reps; }
  bool is_rep(std::uint32_t x) const;
  /// w0^J w0, the longest representative.
  std::uint32_t top() const { return top_; }
  LaurentPoly pr(std::uint32_t x, std::uint32_t y) const;

private:
  LaurentPoly compute(std::uint32_t x, std::uint32_t y) const;

  SystemPtr sys_;
  ParabolicSubset par_;
  std::vector<bool> is_rep_;
  std::uint32_t top_ = 0;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<std::uint64_t, LaurentPoly> memo_;
};

} // namespace klext
