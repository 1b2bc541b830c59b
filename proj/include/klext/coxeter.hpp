#pragma once

// Finite crystallographic Coxeter systems, fully enumerated.
//
// Elements are dense indices 0..order-1 assigned in ShortLex order of their
// canonical reduced words, so index 0 is the identity and indices refine length.

#include <cstdint>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace klext {

enum class Side { Left, Right };

struct CartanType {
  char family = 'A'; // A B C D E F G
  int rank = 1;

  std::string label() const { return std::string(1, family) + std::to_string(rank); }
  static CartanType parse(std::string_view text);
  /// Classical group order; throws for unsupported types.
  std::uint64_t classical_order() const;
  friend bool operator==(const CartanType&, const CartanType&) = default;
};

class CoxeterError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when the classical order exceeds the enumeration cap.
class CapExceeded : public CoxeterError {
public:
  CapExceeded(const std::string& label, std::uint64_t order, std::uint64_t cap);
  std::uint64_t order;
  std::uint64_t cap;
};

struct BuildOptions {
  std::uint64_t element_cap = 500000;
  /// Dense Bruhat bitsets are built when order <= this bound.
  std::uint64_t dense_bruhat_limit = 1024;
};

class CoxeterSystem;

struct Element {
  const CoxeterSystem* owner = nullptr;
  std::uint32_t index = 0;

  friend bool operator==(const Element& a, const Element& b) { return a.owner == b.owner && a.index == b.index; }
  friend bool operator<(const Element& a, const Element& b) { return a.index < b.index; }
};

using GenMask = std::uint32_t;

struct ParabolicSubset {
  GenMask J = 0;
  std::vector<int> generators;
  std::uint32_t longest = 0;            // w0^J
  std::vector<std::uint32_t> subgroup;  // W_J, index order
  std::vector<std::uint32_t> right_reps; // minimal reps of W/W_J (no right descent in J)
  std::vector<std::uint32_t> left_reps;  // minimal reps of W_J\W (no left descent in J)
};

class CoxeterSystem {
public:
  static std::shared_ptr<const CoxeterSystem> build(const CartanType& type, const BuildOptions& opts = {});
  static std::shared_ptr<const CoxeterSystem> build(std::string_view label, const BuildOptions& opts = {});

  const CartanType& type() const { return type_; }
  std::string type_label() const { return type_.label(); }
  int rank() const { return rank_; }
  std::uint32_t order() const { return static_cast<std::uint32_t>(length_.size()); }
  const std::vector<std::string>& generator_names() const { return aliases_.empty() ? names_ : aliases_; }
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }
  /// Coxeter matrix entry m(s,t).
  int coxeter_m(int s, int t) const;

  Element identity() const { return {this, 0}; }
  Element longest() const { return {this, w0_}; }
  Element element(std::uint32_t index) const;
  Element generator(int s) const { return {this, right_[s][0]}; }

  int length(std::uint32_t w) const { return length_[w]; }
  int length(Element w) const { return length_[check(w)]; }
  int max_length() const { return length_[w0_]; }
  std::uint32_t w0() const { return w0_; }

  std::uint32_t right_mult(std::uint32_t w, int s) const { return right_[s][w]; }
  std::uint32_t left_mult(std::uint32_t w, int s) const { return left_[s][w]; }
  std::uint32_t inverse(std::uint32_t w) const { return inverse_[w]; }
  std::uint32_t multiply(std::uint32_t x, std::uint32_t y) const;

  Element mult(Element w, int s, Side side) const;
  Element mult(Element x, Element y) const;
  Element inverse(Element w) const { return {this, inverse_[check(w)]}; }

  GenMask descent_mask(std::uint32_t w, Side side) const {
    return side == Side::Right ? right_desc_[w] : left_desc_[w];
  }
  std::vector<int> descents(Element w, Side side) const;
  bool is_right_descent(std::uint32_t w, int s) const { return (right_desc_[w] >> s) & 1U; }
  bool is_left_descent(std::uint32_t w, int s) const { return (left_desc_[w] >> s) & 1U; }

  /// ShortLex-minimal reduced word as generator indices.
  std::vector<int> word(std::uint32_t w) const;
  std::vector<int> word(Element w) const { return word(check(w)); }
  /// Canonical display name: "e", juxtaposed aliases for A1..A3, else "s1*s2".
  std::string name(std::uint32_t w) const;
  std::string name(Element w) const { return name(check(w)); }
  /// Accepts "e", "w0", "s1*s2*s1", "s1s2s1" and alias words such as "srts".
  /// The word need not be reduced.
  Element parse(std::string_view text) const;
  Element from_word(const std::vector<int>& word) const;
  int generator_index(std::string_view name) const;

  GenMask support(std::uint32_t w) const;
  bool is_boolean(Element w) const;
  bool is_boolean(std::uint32_t w) const;
  bool is_bigrassmannian(Element w) const;
  bool is_bigrassmannian(std::uint32_t w) const;

  bool bruhat_leq(Element x, Element y) const;
  bool bruhat_leq(std::uint32_t x, std::uint32_t y) const;
  bool has_dense_bruhat() const { return !down_.empty(); }
  /// All z with z <= y, index order.
  std::vector<std::uint32_t> lower_interval(std::uint32_t y) const;
  /// All z with x <= z <= y, index order.
  std::vector<std::uint32_t> interval(std::uint32_t x, std::uint32_t y) const;

  ParabolicSubset parabolic(GenMask J) const;
  ParabolicSubset parabolic(const std::vector<int>& J) const;

  /// First index of each length stratum plus a final sentinel equal to order().
  const std::vector<std::uint32_t>& length_offsets() const { return offsets_; }

  std::uint32_t check(Element w) const;

private:
  CoxeterSystem() = default;
  void enumerate(const BuildOptions& opts);
  void build_dense_bruhat();
  bool bruhat_memo(std::uint32_t x, std::uint32_t y) const;

  CartanType type_;
  int rank_ = 0;
  std::vector<std::string> names_;
  std::vector<std::string> aliases_;
  std::vector<std::vector<int>> cartan_;

  std::vector<std::vector<std::uint32_t>> right_, left_;
  std::vector<int> length_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::int8_t> last_;
  std::vector<std::uint32_t> inverse_;
  std::vector<GenMask> right_desc_, left_desc_;
  std::vector<std::uint32_t> offsets_;
  std::uint32_t w0_ = 0;

  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> down_; // row y: bitset of {z <= y}

  mutable std::shared_mutex bruhat_mutex_;
  mutable std::unordered_map<std::uint64_t, bool> bruhat_cache_;
};

using SystemPtr = std::shared_ptr<const CoxeterSystem>;

/// Mask with bit s set for each generator in the list.
GenMask mask_of(const std::vector<int>& gens);
std::vector<int> gens_of(GenMask m);

} // namespace klext
