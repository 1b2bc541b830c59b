#pragma once

// Exact sparse polynomials with arbitrary-precision integer coefficients.
//
// LaurentPoly lives in Z[v, v^-1]; BiPoly lives in Z[u^{+-1}, v^{+-1}] and is
// used for two-variable generating functions of bigraded dimensions.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace klext {

using Integer = boost::multiprecision::cpp_int;

class LaurentPoly {
public:
  using Term = std::pair<int, Integer>;

  LaurentPoly() = default;
  LaurentPoly(int constant); // NOLINT: implicit constants read naturally in formulas

  static LaurentPoly monomial(int exponent, Integer coefficient = 1);
  /// Builds a canonical polynomial from arbitrary (exponent, coefficient)
  /// pairs; repeated exponents are summed and zeros dropped.
  static LaurentPoly from_terms(std::vector<Term> terms);
  /// Dense coefficient list for exponents lo, lo+step, ...
  static LaurentPoly from_coefficients(int lo, int step, const std::vector<Integer>& coeffs);

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  Integer coeff(int exponent) const;
  std::vector<int> support() const;
  /// (min, max) exponent; nullopt for the zero polynomial.
  std::optional<std::pair<int, int>> degree_span() const;

  /// Multiplication by v^k.
  LaurentPoly shifted(int k) const;
  /// v -> v^-1
  LaurentPoly bar() const;
  /// v -> -v^-1
  LaurentPoly subst_neg_inv() const;
  Integer eval_at_one() const;
  bool has_nonnegative_coefficients() const;

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const LaurentPoly& other);
  /// this += coefficient * v^shift * other, without temporaries.
  LaurentPoly& add_scaled(const LaurentPoly& other, const Integer& coefficient, int shift = 0);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(LaurentPoly a);

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// Human-readable form with descending exponents, e.g. "v^3-2v+2v^-1-v^-3".
  std::string to_string(std::string_view var = "v") const;

private:
  std::vector<Term> terms_; // ascending exponent, no zero coefficients
};

/// v - v^-1, the factor appearing in R-polynomial recursions.
LaurentPoly v_minus_vinv();

class BiPoly {
public:
  using Key = std::pair<int, int>; // (u exponent, v exponent)

  BiPoly() = default;

  static BiPoly monomial(int u_exp, int v_exp, Integer coefficient = 1);
  /// f(u) * g(v)
  static BiPoly product(const LaurentPoly& in_u, const LaurentPoly& in_v);

  bool is_zero() const { return terms_.empty(); }
  const std::map<Key, Integer>& terms() const { return terms_; }
  Integer coeff(int u_exp, int v_exp) const;
  void add_term(int u_exp, int v_exp, const Integer& coefficient);

  BiPoly& operator+=(const BiPoly& other);
  BiPoly& operator-=(const BiPoly& other);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend bool operator==(const BiPoly&, const BiPoly&) = default;

  /// f(u, v) -> f(v, u)
  BiPoly swapped() const;
  /// Coefficient-wise comparison: every coefficient of *this is <= that of other.
  bool coefficientwise_leq(const BiPoly& other) const;
  /// Max u-degree, max v-degree, max total degree (nullopt when zero).
  std::optional<int> degree_u() const;
  std::optional<int> degree_v() const;
  std::optional<int> total_degree() const;

  std::string to_string() const;

private:
  std::map<Key, Integer> terms_;
};

// JSON forms. These are emitted by hand so the output is byte-stable:
//   {"var":"v","terms":[[exp,coeff],...]}
//   {"vars":["u","v"],"terms":[[uExp,vExp,coeff],...]}
std::string to_json(const LaurentPoly& p);
std::string to_json(const BiPoly& p);
LaurentPoly laurent_from_json(std::string_view text);
BiPoly bipoly_from_json(std::string_view text);

/// Compact terms array only, e.g. [[-1,-1],[1,1]]
std::string terms_json(const LaurentPoly& p);

} // namespace klext
