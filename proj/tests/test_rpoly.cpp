#include "klext/reference_data.hpp"
#include "klext/rpoly.hpp"
#include "klext/workspace.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace klext;

TEST_CASE("matrix oracle reproduces the A2 table") {
  Workspace ws("A2");
  const CoxeterSystem& W = ws.sys();
  const oracle::RMatrixOracle o(ws);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      const std::uint32_t x = W.parse(reference::kA2Order[i]).index, y = W.parse(reference::kA2Order[j]).index;
      CAPTURE(i);
      CAPTURE(j);
      CHECK(o.r(x, y) == reference::parse_laurent(reference::kA2RTable[i][j]));
    }
}

TEST_CASE("recursion agrees with the matrix oracle") {
  for (const char* label : {"A2", "A3", "B3", "G2"}) {
    CAPTURE(label);
    Workspace ws(label);
    const oracle::RMatrixOracle o(ws);
    for (std::uint32_t x = 0; x < ws.sys().order(); ++x)
      for (std::uint32_t y = 0; y < ws.sys().order(); ++y) CHECK(ws.r().r(x, y) == o.r(x, y));
  }
}

TEST_CASE("recursion agrees with the Hecke bar involution") {
  Workspace ws("A3");
  const CoxeterSystem& W = ws.sys();
  for (std::uint32_t x = 0; x < W.order(); ++x) {
    const HeckeElement dual = HeckeElement::standard(W, x).bar();
    for (std::uint32_t y = 0; y < W.order(); ++y) CHECK(ws.r().r(x, y) == dual.coeff(y));
  }
}

TEST_CASE("boundary values") {
  Workspace ws("B3");
  const CoxeterSystem& W = ws.sys();
  for (std::uint32_t x = 0; x < W.order(); ++x) {
    CHECK(ws.r().r(x, x) == 1);
    CHECK(ws.r().r(x, W.w0()) == (x == W.w0() ? LaurentPoly(1) : LaurentPoly()));
    for (int s = 0; s < W.rank(); ++s) {
      const std::uint32_t xs = W.right_mult(x, s);
      if (W.length(xs) < W.length(x)) CHECK(ws.r().r(x, xs) == v_minus_vinv());
    }
  }
}

TEST_CASE("endpoint coefficients, Delorme identity and bar symmetry") {
  for (const char* label : {"A3", "B3", "D4"}) {
    CAPTURE(label);
    Workspace ws(label);
    const CoxeterSystem& W = ws.sys();
    for (std::uint32_t x = 0; x < W.order(); ++x)
      for (std::uint32_t y = 0; y < W.order(); ++y) {
        const LaurentPoly& r = ws.r().r(x, y);
        if (!W.bruhat_leq(y, x)) {
          CHECK(r.is_zero());
          continue;
        }
        const int d = W.length(x) - W.length(y);
        CHECK(r.coeff(d) == 1);
        CHECK(r.coeff(-d) == (d % 2 ? -1 : 1));
        CHECK(ws.r().delorme_check(x, y));
        CHECK(r.bar() == (d % 2 ? -r : r));
        for (const auto& [e, c] : r.terms()) CHECK((d - e) % 2 == 0);
      }
  }
}

TEST_CASE("ascent choice does not matter (1000 random replays)") {
  std::mt19937_64 rng(20240601);
  std::vector<std::unique_ptr<Workspace>> spaces;
  for (const char* label : {"A3", "B3", "D4", "G2"}) spaces.push_back(std::make_unique<Workspace>(label));
  for (int i = 0; i < 1000; ++i) {
    const Workspace& ws = *spaces[i % spaces.size()];
    const CoxeterSystem& W = ws.sys();
    std::uniform_int_distribution<std::uint32_t> pick(0, W.order() - 1);
    const std::uint32_t x = pick(rng), y = pick(rng);
    CHECK(r_poly_random_ascent(W, x, y, rng) == ws.r().r(x, y));
  }
}

TEST_CASE("D4 coefficient list and sign pattern") {
  Workspace ws("D4");
  const CoxeterSystem& W = ws.sys();
  const auto list = ws.r().coeff_list(W.longest(), W.identity());
  REQUIRE(list.size() == reference::kD4LongestToIdentity.size());
  for (std::size_t i = 0; i < list.size(); ++i) CHECK(list[i] == reference::kD4LongestToIdentity[i]);
  CHECK(ws.r().sign_compatibility(W.longest(), W.identity()) == std::vector<int>{0});
  CHECK_THROWS(ws.r().coeff_list(W.identity(), W.longest()));
}

TEST_CASE("sign pattern holds everywhere in A3 and B3") {
  for (const char* label : {"A3", "B3"}) {
    Workspace ws(label);
    for (std::uint32_t x = 0; x < ws.sys().order(); ++x)
      for (std::uint32_t y : ws.sys().lower_interval(x)) CHECK(ws.r().sign_compatibility(x, y).empty());
  }
}

TEST_CASE("E7 reference list is well formed") {
  const auto& list = reference::kE7LongestToIdentity;
  REQUIRE(list.size() == 64);
  CHECK(list.front() == -1);
  CHECK(list.back() == 1);
  long sum = 0;
  for (int c : list) sum += c;
  CHECK(sum == 0);
  for (std::size_t i = 0; i < list.size(); ++i) CHECK(list[i] == -list[list.size() - 1 - i]);
}

TEST_CASE("singular and parabolic R-polynomials on A3") {
  Workspace ws("A3");
  const CoxeterSystem& W = ws.sys();
  for (GenMask J = 0; J < 8; ++J) {
    CAPTURE(J);
    const SingularRTable st(ws.r(), J);
    const ParabolicRTable pt(ws.sys_ptr(), J);
    CHECK(st.reps().size() == pt.reps().size());
    CHECK(W.length(pt.top()) == W.max_length() - W.length(W.parabolic(J).longest));
    for (std::uint32_t x : pt.reps()) {
      CHECK(pt.pr(x, pt.top()) == (x == pt.top() ? LaurentPoly(1) : LaurentPoly()));
      for (std::uint32_t y : pt.reps()) {
        const LaurentPoly p = pt.pr(x, y);
        CHECK(p == st.sr(W.inverse(x), W.inverse(y)).subst_neg_inv());
        CHECK(p.eval_at_one() == (x == y ? 1 : 0));
        if (!W.bruhat_leq(y, x)) CHECK(p.is_zero());
      }
    }
  }
  const SingularRTable empty(ws.r(), 0);
  for (std::uint32_t x = 0; x < W.order(); ++x)
    for (std::uint32_t y = 0; y < W.order(); ++y) CHECK(empty.sr(x, y) == ws.r().r(x, y));
  const SingularRTable st(ws.r(), GenMask{1});
  CHECK_THROWS_AS(st.sr(W.parse("r").index, 0), RepresentativeError);
}
