#include "klext/extbounds.hpp"

#include "klext/parallel.hpp"

#include <algorithm>

namespace klext {

std::string to_string(PointKind k) {
  switch (k) {
  case PointKind::SouthVertex: return "south-vertex";
  case PointKind::EastVertex: return "east-vertex";
  case PointKind::ExpectedEdge: return "expected-edge";
  case PointKind::Interior: return "interior";
  }
  return "?";
}

std::string to_string(GridMeaning m) {
  switch (m) {
  case GridMeaning::HomToTiltingComplex: return "hom-to-tilting-complex";
  case GridMeaning::KLBound: return "kl-bound";
  case GridMeaning::RefinedBound: return "refined-bound";
  case GridMeaning::ExpectedDims: return "expected-dims";
  }
  return "?";
}

std::string to_string(CertificateKind k) {
  switch (k) {
  case CertificateKind::Rank2: return "rank-2";
  case CertificateKind::SmallLengthGap: return "small-length-gap";
  case CertificateKind::TrivialKL: return "trivial-kl";
  case CertificateKind::KLBoundVanishes: return "kl-bound-vanishes";
  case CertificateKind::RefinedBoundVanishes: return "refined-bound-vanishes";
  case CertificateKind::BooleanClass: return "boolean-class";
  case CertificateKind::CobooleanClass: return "coboolean-class";
  case CertificateKind::TheoremA3: return "type-A3-theorem";
  case CertificateKind::Unknown: return "unknown";
  }
  return "?";
}

bool TriangleRegion::contains(int a, int b) const {
  return std::any_of(points.begin(), points.end(), [&](const TrianglePoint& p) { return p.a == a && p.b == b; });
}

std::vector<TrianglePoint> TriangleRegion::interior() const {
  std::vector<TrianglePoint> out;
  for (const auto& p : points)
    if (p.kind == PointKind::Interior) out.push_back(p);
  return out;
}

std::vector<TrianglePoint> TriangleRegion::expected_edge() const {
  std::vector<TrianglePoint> out;
  for (const auto& p : points)
    if (p.kind != PointKind::Interior) out.push_back(p);
  return out;
}

TriangleRegion triangle_region_for_gap(int d) {
  if (d < 0) throw std::invalid_argument("triangle region requires a nonnegative length gap");
  TriangleRegion t;
  t.d = d;
  for (int a = 0; a <= d; ++a)
    for (int b = 2 * a - d; b <= a; ++b) {
      if (((b - d) % 2 + 2) % 2 != 0) continue;
      if (a == 0 && b != -d) continue;
      if (b == a && a != d) continue;
      PointKind k = PointKind::Interior;
      if (a == 0 && b == -d) k = PointKind::SouthVertex;
      else if (a == d && b == d) k = PointKind::EastVertex;
      else if (b == 2 * a - d) k = PointKind::ExpectedEdge;
      t.points.push_back({a, b, k});
    }
  return t;
}

TriangleRegion triangle_region(const CoxeterSystem& sys, std::uint32_t x, std::uint32_t y) {
  if (!sys.bruhat_leq(y, x)) throw std::invalid_argument("triangle region requires x >= y in Bruhat order");
  TriangleRegion t = triangle_region_for_gap(sys.length(x) - sys.length(y));
  t.x = x;
  t.y = y;
  return t;
}

Integer ExtGrid::at(int a, int b) const {
  auto it = cells.find({a, b});
  return it == cells.end() ? Integer(0) : it->second;
}

BiPoly ExtGrid::to_bipoly() const {
  BiPoly p;
  for (const auto& [ab, c] : cells) p.add_term(ab.first - ab.second, ab.first, c);
  return p;
}

BiPoly kl_bound_poly(const Workspace& ws, std::uint32_t x, std::uint32_t y) {
  const CoxeterSystem& W = ws.sys();
  BiPoly out;
  if (!W.bruhat_leq(x, y)) return out;
  const std::uint32_t yw0 = W.multiply(y, W.w0());
  for (std::uint32_t z : W.interval(x, y))
    out += BiPoly::product(ws.kl().p(yw0, W.multiply(z, W.w0())), ws.kl().p(x, z));
  return out;
}

ExtGrid hom_grid(const Workspace& ws, std::uint32_t target, std::uint32_t source) {
  ExtGrid g;
  g.source = source;
  g.target = target;
  g.meaning = GridMeaning::HomToTiltingComplex;
  const BiPoly poly = kl_bound_poly(ws, target, source);
  for (const auto& [key, c] : poly.terms()) {
    const int a = key.second;
    g.cells[{a, a - key.first}] += c;
  }
  return g;
}

Integer refined_bound(const Workspace& ws, std::uint32_t x, std::uint32_t y, int a, int b) {
  const CoxeterSystem& W = ws.sys();
  if (!W.bruhat_leq(y, x)) throw std::invalid_argument("refined bound requires x >= y in Bruhat order");
  const int d = W.length(x) - W.length(y);
  if (b == 2 * a - d) throw GuardViolation("refined bound is not defined on the expected edge");
  const Integer total = hom_grid(ws, y, x).at(a, b);
  Integer best = 0;
  const int target_len = W.length(y) + a;
  if (target_len >= 0 && target_len <= W.max_length()) {
    const auto& off = W.length_offsets();
    const std::uint32_t w0x = W.multiply(W.w0(), x);
    for (std::uint32_t w = off[target_len]; w < off[target_len + 1]; ++w) {
      if (!W.bruhat_leq(y, w)) continue;
      best = std::max(best, ws.kl().p_coeff(w0x, W.multiply(W.w0(), w), a - b));
    }
  }
  const Integer v = total - best;
  return v > 0 ? v : Integer(0);
}

ExtGrid expected_dims(const Workspace& ws, std::uint32_t x, std::uint32_t y) {
  const CoxeterSystem& W = ws.sys();
  if (!W.bruhat_leq(y, x)) throw std::invalid_argument("expected dimensions require x >= y in Bruhat order");
  const int d = W.length(x) - W.length(y);
  ExtGrid g;
  g.source = x;
  g.target = y;
  g.meaning = GridMeaning::ExpectedDims;
  const LaurentPoly& r = ws.r().r(x, y);
  for (int a = 0; a <= d; ++a) {
    Integer c = r.coeff(d - 2 * a);
    if (c == 0) continue;
    if (a % 2) c = -c;
    if (c < 0) {
      g.untrusted.emplace_back(a, 2 * a - d);
      c = -c;
    }
    g.cells[{a, 2 * a - d}] = c;
  }
  return g;
}

bool trivial_kl_above(const Workspace& ws, std::uint32_t y) {
  const CoxeterSystem& W = ws.sys();
  for (std::uint32_t w = 0; w < W.order(); ++w) {
    if (!W.bruhat_leq(y, w)) continue;
    if (!ws.kl().is_trivial(y, w)) return false;
    if (!ws.kl().is_trivial(0, W.multiply(W.w0(), w))) return false;
  }
  return true;
}

namespace {

std::vector<int> all_exponents(int d) {
  std::vector<int> v;
  for (int k = -d; k <= d; k += 2) v.push_back(k);
  return v;
}

std::vector<int> corner_exponents(int d) {
  std::vector<int> v{d, d - 2, 2 - d, -d};
  v.erase(std::remove_if(v.begin(), v.end(), [d](int k) { return k < -d || k > d; }), v.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Certificate certify(const Workspace& ws, std::uint32_t x, std::uint32_t y, const std::vector<char>* trivial_cache) {
  const CoxeterSystem& W = ws.sys();
  if (!W.bruhat_leq(y, x)) throw std::invalid_argument("certificate requires x >= y in Bruhat order");
  const int d = W.length(x) - W.length(y);
  Certificate c;
  c.sign_violations = ws.r().sign_compatibility(x, y);
  auto done = [&](CertificateKind k) {
    c.kind = k;
    c.determined_exponents = all_exponents(d);
    return c;
  };
  if (W.rank() <= 2) return done(CertificateKind::Rank2);
  if (d <= 3) return done(CertificateKind::SmallLengthGap);
  if (trivial_cache ? (*trivial_cache)[y] != 0 : trivial_kl_above(ws, y)) return done(CertificateKind::TrivialKL);

  const TriangleRegion region = triangle_region_for_gap(d);
  const ExtGrid grid = hom_grid(ws, y, x);
  bool kl_zero = true;
  for (const auto& p : region.interior())
    if (grid.at(p.a, p.b) != 0) kl_zero = false;
  if (kl_zero) return done(CertificateKind::KLBoundVanishes);

  bool refined_zero = true;
  for (const auto& p : region.interior())
    if (grid.at(p.a, p.b) != 0 && refined_bound(ws, x, y, p.a, p.b) != 0) refined_zero = false;
  if (refined_zero) return done(CertificateKind::RefinedBoundVanishes);

  if (auto b = boolean_r_determined(ws.partition(), x, y)) {
    c.witness = b->witness;
    return done(b->clause == BooleanClause::A ? CertificateKind::BooleanClass : CertificateKind::CobooleanClass);
  }
  if (W.type() == CartanType{'A', 3}) return done(CertificateKind::TheoremA3);
  c.kind = CertificateKind::Unknown;
  c.determined_exponents = corner_exponents(d);
  return c;
}

} // namespace

Certificate r_determined(const Workspace& ws, std::uint32_t x, std::uint32_t y) { return certify(ws, x, y, nullptr); }

AllExpectedReport all_expected_predicate(const Workspace& ws, unsigned threads) {
  const CoxeterSystem& W = ws.sys();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t x = 0; x < W.order(); ++x)
    for (std::uint32_t y : W.lower_interval(x)) pairs.emplace_back(x, y);

  // Warm the shared caches once so workers only read.
  ws.kl().fill_all();
  ws.r().fill_all();
  if (W.rank() > 2) ws.partition();
  std::vector<char> trivial(W.order(), 0);
  if (W.rank() > 2)
    parallel_for(W.order(), threads, [&](std::size_t y) { trivial[y] = trivial_kl_above(ws, static_cast<std::uint32_t>(y)); });

  std::vector<Certificate> certs(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) { certs[i] = certify(ws, pairs[i].first, pairs[i].second, &trivial); });

  AllExpectedReport rep;
  rep.pairs = pairs.size();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    ++rep.counts[certs[i].kind];
    if (!certs[i].sign_violations.empty()) rep.violating.push_back(pairs[i]);
    if (!certs[i].full()) rep.undetermined.push_back(pairs[i]);
  }
  rep.consistent = rep.violating.empty() && rep.undetermined.empty();
  if (rep.consistent) {
    if (W.rank() <= 2) {
      rep.theorem_backed = true;
      rep.citation = "rank 2: all KL polynomials are trivial";
    } else if (rep.counts.count(CertificateKind::TheoremA3)) {
      rep.theorem_backed = true;
      rep.citation = "type A3 classification: all extensions between Verma modules are expected";
    } else {
      rep.citation = "every pair certified by combinatorial criteria";
    }
  }
  return rep;
}

} // namespace klext
