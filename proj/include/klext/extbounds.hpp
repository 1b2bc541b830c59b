#pragma once

// Bookkeeping for graded extensions between Verma modules.
//
// Coordinates: a is the homological degree, b the internal shift. For a pair
// x >= y with d = l(x) - l(y) the region of possible extensions is
//   0 <= a <= d,  2a - d <= b <= a,  b = d (mod 2)
// minus the open edges a = 0 (except the south vertex (0,-d)) and b = a
// (except the east vertex (d,d)). The solid edge b = 2a - d carries the
// expected extensions; the coefficient r^{(k)} of r_{x,y} lives on b = -k.
// Two-variable generating functions use u^{a-b} v^a.

#include "klext/intervals.hpp"
#include "klext/poly.hpp"
#include "klext/workspace.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace klext {

enum class PointKind { SouthVertex, EastVertex, ExpectedEdge, Interior };
std::string to_string(PointKind k);

struct TrianglePoint {
  int a = 0;
  int b = 0;
  PointKind kind = PointKind::Interior;
  friend bool operator==(const TrianglePoint&, const TrianglePoint&) = default;
};

struct TriangleRegion {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  int d = 0;
  std::vector<TrianglePoint> points; // ascending (a, b)

  bool contains(int a, int b) const;
  std::vector<TrianglePoint> interior() const;
  std::vector<TrianglePoint> expected_edge() const;
};

/// Region for a length gap d (no group needed).
TriangleRegion triangle_region_for_gap(int d);
TriangleRegion triangle_region(const CoxeterSystem& sys, std::uint32_t x, std::uint32_t y);

enum class GridMeaning { HomToTiltingComplex, KLBound, RefinedBound, ExpectedDims };
std::string to_string(GridMeaning m);

struct ExtGrid {
  std::uint32_t source = 0;
  std::uint32_t target = 0;
  GridMeaning meaning = GridMeaning::HomToTiltingComplex;
  std::map<std::pair<int, int>, Integer> cells; // (a, b) -> value, zeros omitted
  /// Cells whose value comes from a coefficient of the wrong sign.
  std::vector<std::pair<int, int>> untrusted;

  Integer at(int a, int b) const;
  bool trusted() const { return untrusted.empty(); }
  /// Sum of value * u^{a-b} v^a.
  BiPoly to_bipoly() const;
};

/// sum_z p_{y w0, z w0}(u) p_{x,z}(v) for target x and source y.
BiPoly kl_bound_poly(const Workspace& ws, std::uint32_t x_target, std::uint32_t y_source);
/// grid(a,b) = sum_z p^{(a)}_{target,z} p^{(a-b)}_{source w0, z w0}.
ExtGrid hom_grid(const Workspace& ws, std::uint32_t target, std::uint32_t source);

class GuardViolation : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Improved bound at an off-edge cell (a,b) for the pair x >= y; never negative.
Integer refined_bound(const Workspace& ws, std::uint32_t x, std::uint32_t y, int a, int b);

/// |r^{(d-2a)}_{x,y}| at (a, 2a-d); cells where (-1)^a r^{(d-2a)} < 0 are marked untrusted.
ExtGrid expected_dims(const Workspace& ws, std::uint32_t x, std::uint32_t y);

enum class CertificateKind {
  Rank2,
  SmallLengthGap,
  TrivialKL,
  KLBoundVanishes,
  RefinedBoundVanishes,
  BooleanClass,
  CobooleanClass,
  TheoremA3,
  Unknown,
};
std::string to_string(CertificateKind k);

struct Certificate {
  CertificateKind kind = CertificateKind::Unknown;
  /// Exponents k for which dim ext = |r^{(k)}| is known.
  std::vector<int> determined_exponents;
  std::optional<IntervalPair> witness;
  std::vector<int> sign_violations;

  bool full() const { return kind != CertificateKind::Unknown; }
};

/// Whether p_{y,w} and p_{e, w0 w} are trivial for every w >= y.
bool trivial_kl_above(const Workspace& ws, std::uint32_t y);

Certificate r_determined(const Workspace& ws, std::uint32_t x, std::uint32_t y);

struct AllExpectedReport {
  bool consistent = false;
  /// True when a classification theorem backs the conclusion homologically.
  bool theorem_backed = false;
  std::size_t pairs = 0;
  std::map<CertificateKind, std::size_t> counts;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> violating;   // sign pattern fails
  std::vector<std::pair<std::uint32_t, std::uint32_t>> undetermined; // no certificate
  std::string citation;
};

AllExpectedReport all_expected_predicate(const Workspace& ws, unsigned threads = 1);

} // namespace klext
