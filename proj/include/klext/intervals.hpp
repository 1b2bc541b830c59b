#pragma once

// Equivalence classes of Bruhat pairs (x >= y) generated by simultaneous
// descents on one side, plus the boolean/coboolean classifier and a graded
// poset isomorphism test for small intervals.

#include "klext/coxeter.hpp"
#include "klext/rpoly.hpp"

#include <optional>
#include <unordered_map>
#include <vector>

namespace klext {

struct IntervalPair {
  std::uint32_t x = 0; // top
  std::uint32_t y = 0; // bottom
  friend bool operator==(const IntervalPair&, const IntervalPair&) = default;
};

IntervalPair make_interval(const CoxeterSystem& sys, Element x, Element y);

class EquivPartition {
public:
  explicit EquivPartition(SystemPtr sys);

  const CoxeterSystem& system() const { return *sys_; }
  std::size_t pair_count() const { return pairs_.size(); }
  std::size_t class_count() const { return classes_.size(); }
  /// Class index of (x,y); throws unless x >= y.
  std::uint32_t class_of(std::uint32_t x, std::uint32_t y) const;
  const std::vector<IntervalPair>& members(std::uint32_t cls) const { return classes_[cls]; }
  bool equivalent(IntervalPair a, IntervalPair b) const;
  /// Sorted class sizes, largest first.
  std::vector<std::size_t> class_sizes() const;

  /// Member with a boolean top element, if any.
  std::optional<IntervalPair> boolean_witness(std::uint32_t cls) const;
  /// Member (x', y') with w0 y' boolean, if any.
  std::optional<IntervalPair> coboolean_witness(std::uint32_t cls) const;

private:
  SystemPtr sys_;
  std::vector<IntervalPair> pairs_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::vector<std::uint32_t> class_id_;
  std::vector<std::vector<IntervalPair>> classes_;
  std::vector<std::optional<IntervalPair>> boolean_, coboolean_;
};

struct ConstancyViolation {
  std::uint32_t cls;
  IntervalPair first;
  IntervalPair other;
};

/// Checks that r_{x,y} is constant on every class.
std::vector<ConstancyViolation> class_r_constancy(const EquivPartition& part, const RTable& r);

enum class BooleanClause { A, B };

struct BooleanCertificate {
  BooleanClause clause;
  IntervalPair witness;
};

std::optional<BooleanCertificate> boolean_r_determined(const EquivPartition& part, std::uint32_t x, std::uint32_t y);

class IntervalTooLarge : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Graded poset isomorphism of [y1,x1] and [y2,x2] (which may live in
/// different systems).
bool poset_isomorphic(const CoxeterSystem& s1, IntervalPair i1, const CoxeterSystem& s2, IntervalPair i2,
                      std::size_t cap = 64);

} // namespace klext
