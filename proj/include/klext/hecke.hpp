#pragma once

// Hecke algebra in Soergel's normalization:
//   H_w H_s = H_{ws}                      if ws > w
//   H_w H_s = H_{ws} + (v^-1 - v) H_w     if ws < w
// with KL basis element C_w = sum_x p_{x,w} H_x, p_{x,w} in Z>=0[v].

#include "klext/coxeter.hpp"
#include "klext/poly.hpp"

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace klext {

class HeckeElement {
public:
  explicit HeckeElement(const CoxeterSystem* owner = nullptr) : owner_(owner) {}
  static HeckeElement standard(const CoxeterSystem& sys, std::uint32_t w, LaurentPoly c = 1);

  const CoxeterSystem* owner() const { return owner_; }
  const std::map<std::uint32_t, LaurentPoly>& coeffs() const { return coeffs_; }
  LaurentPoly coeff(std::uint32_t w) const;
  void add(std::uint32_t w, const LaurentPoly& c);
  bool is_zero() const { return coeffs_.empty(); }

  HeckeElement mult_by_gen(int s, Side side) const;
  /// Multiplication by C_s = H_s + v H_e.
  HeckeElement mult_by_kl_gen(int s, Side side) const;
  HeckeElement operator*(const HeckeElement& other) const;
  HeckeElement& operator+=(const HeckeElement& other);
  HeckeElement& operator-=(const HeckeElement& other);
  HeckeElement scaled(const LaurentPoly& c) const;
  /// The bar involution: v -> v^-1, H_w -> (H_{w^-1})^-1.
  HeckeElement bar() const;

  friend bool operator==(const HeckeElement& a, const HeckeElement& b) {
    return a.owner_ == b.owner_ && a.coeffs_ == b.coeffs_;
  }
  std::string to_string() const;

private:
  const CoxeterSystem* owner_;
  std::map<std::uint32_t, LaurentPoly> coeffs_;
};

/// Memoized KL polynomials. Columns p_{-,y} are filled on demand by a single
/// writer; published columns are read without locking.
class KLTable {
public:
  explicit KLTable(SystemPtr sys);
  ~KLTable();
  KLTable(const KLTable&) = delete;
  KLTable& operator=(const KLTable&) = delete;

  const CoxeterSystem& system() const { return *sys_; }
  const SystemPtr& system_ptr() const { return sys_; }

  const LaurentPoly& p(std::uint32_t x, std::uint32_t y) const;
  LaurentPoly kl_poly(Element x, Element y) const;
  /// k-th coefficient p^{(k)}_{x,y}.
  Integer p_coeff(std::uint32_t x, std::uint32_t y, int k) const;
  Integer mu(std::uint32_t x, std::uint32_t y) const;
  Integer mu(Element x, Element y) const;
  bool is_trivial(std::uint32_t x, std::uint32_t y) const;

  HeckeElement kl_element(Element w) const;
  /// H_w expanded in the KL basis: coefficients q with H_w = sum_x q_x C_x.
  HeckeElement standard_in_kl_basis(Element w) const;

  /// All y >= x with p_{x,y} != v^{l(y)-l(x)}, index order.
  std::vector<std::pair<std::uint32_t, LaurentPoly>> nontrivial_kl_from(std::uint32_t x) const;

  /// Column y as (x, p_{x,y}) for all x <= y, ascending x.
  const std::vector<std::pair<std::uint32_t, LaurentPoly>>& column(std::uint32_t y) const;

  void fill_all() const;
  std::uint32_t filled_columns() const { return filled_.load(std::memory_order_relaxed); }
  bool has_column(std::uint32_t y) const { return cols_[y].load(std::memory_order_acquire) != nullptr; }

  /// Restores a column from a snapshot; ignored when already present.
  void install_column(std::uint32_t y, std::vector<std::pair<std::uint32_t, LaurentPoly>> col);

private:
  struct Column {
    std::vector<std::pair<std::uint32_t, LaurentPoly>> entries;
    std::vector<std::pair<std::uint32_t, Integer>> mu; // z < y with mu(z,y) != 0
  };
  const Column& col(std::uint32_t y) const;
  const Column& fill_locked(std::uint32_t y) const;
  void publish(std::uint32_t y, std::unique_ptr<Column> c) const;

  SystemPtr sys_;
  mutable std::mutex write_mutex_;
  mutable std::vector<std::atomic<const Column*>> cols_;
  mutable std::vector<std::unique_ptr<Column>> owned_;
  mutable std::atomic<std::uint32_t> filled_{0};
};

} // namespace klext
