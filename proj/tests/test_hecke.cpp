#include "klext/hecke.hpp"
#include "klext/parallel.hpp"
#include "klext/workspace.hpp"

#include <doctest.h>

using namespace klext;

namespace {

HeckeElement hs(const CoxeterSystem& W, const char* w) { return HeckeElement::standard(W, W.parse(w).index); }

} // namespace

TEST_CASE("quadratic relation and braid relation") {
  const auto W = CoxeterSystem::build("A2");
  const HeckeElement s = hs(*W, "s"), t = hs(*W, "t"), e = hs(*W, "e");
  HeckeElement lhs = s * s;
  HeckeElement rhs = e;
  rhs += s.scaled(LaurentPoly::monomial(-1) - LaurentPoly::monomial(1));
  CHECK(lhs == rhs);
  CHECK(s * t * s == t * s * t);
  CHECK(s * t == hs(*W, "st"));
}

TEST_CASE("multiplication is associative") {
  const auto W = CoxeterSystem::build("B3");
  const std::vector<const char*> ws{"s0", "s1s0", "s2s1s0", "s0s1s0s1", "w0"};
  for (const char* a : ws)
    for (const char* b : ws)
      for (const char* c : ws) CHECK((hs(*W, a) * hs(*W, b)) * hs(*W, c) == hs(*W, a) * (hs(*W, b) * hs(*W, c)));
}

TEST_CASE("bar involution") {
  const auto W = CoxeterSystem::build("A3");
  const HeckeElement s = hs(*W, "s");
  HeckeElement want = s;
  want += HeckeElement::standard(*W, 0, v_minus_vinv());
  CHECK(s.bar() == want);
  for (std::uint32_t w = 0; w < W->order(); ++w) {
    const HeckeElement h = HeckeElement::standard(*W, w);
    CHECK(h.bar().bar() == h);
    CHECK((h * s).bar() == h.bar() * s.bar());
  }
}

TEST_CASE("KL basis is bar invariant and matches C_s products for boolean elements") {
  Workspace ws("A3");
  const CoxeterSystem& W = ws.sys();
  for (std::uint32_t w = 0; w < W.order(); ++w) {
    const HeckeElement c = ws.kl().kl_element(W.element(w));
    CHECK(c.bar() == c);
    CHECK(c.coeff(w) == 1);
  }
  const HeckeElement prod = HeckeElement::standard(W, 0).mult_by_kl_gen(0, Side::Right).mult_by_kl_gen(1, Side::Right)
                                .mult_by_kl_gen(2, Side::Right);
  CHECK(prod == ws.kl().kl_element(W.parse("rst")));
  for (std::uint32_t x : W.lower_interval(W.parse("rts").index))
    CHECK(ws.kl().p(x, W.parse("rts").index) == LaurentPoly::monomial(3 - W.length(x)));
}

TEST_CASE("KL positivity, degree and parity") {
  for (const char* label : {"A3", "B3", "D4"}) {
    CAPTURE(label);
    Workspace ws(label);
    const CoxeterSystem& W = ws.sys();
    for (std::uint32_t y = 0; y < W.order(); ++y)
      for (std::uint32_t x = 0; x < W.order(); ++x) {
        const LaurentPoly& p = ws.kl().p(x, y);
        if (!W.bruhat_leq(x, y)) {
          CHECK(p.is_zero());
          continue;
        }
        const int d = W.length(y) - W.length(x);
        CHECK(p.has_nonnegative_coefficients());
        CHECK(p.coeff(d) == 1);
        for (const auto& [e, c] : p.terms()) {
          CHECK(e <= d);
          CHECK((d - e) % 2 == 0);
          if (x != y) CHECK(e >= 1);
        }
      }
  }
}

TEST_CASE("KL symmetries") {
  Workspace ws("B3");
  const CoxeterSystem& W = ws.sys();
  for (std::uint32_t y = 0; y < W.order(); ++y)
    for (std::uint32_t x : W.lower_interval(y)) {
      CHECK(ws.kl().p(x, y) == ws.kl().p(W.inverse(x), W.inverse(y)));
      const std::uint32_t x2 = W.multiply(W.multiply(W.w0(), x), W.w0());
      const std::uint32_t y2 = W.multiply(W.multiply(W.w0(), y), W.w0());
      CHECK(ws.kl().p(x, y) == ws.kl().p(x2, y2));
      for (int s = 0; s < W.rank(); ++s)
        if (W.is_right_descent(y, s)) CHECK(ws.kl().p(x, y) == ws.kl().p(W.right_mult(x, s), y) * (W.is_right_descent(x, s) ? LaurentPoly::monomial(-1) : LaurentPoly::monomial(1)));
    }
}

TEST_CASE("A3 nontrivial KL polynomials") {
  Workspace ws("A3");
  const CoxeterSystem& W = ws.sys();
  const auto rows = ws.kl().nontrivial_kl_from(0);
  REQUIRE(rows.size() == 2);
  CHECK(W.name(rows[0].first) == "srts");
  CHECK(rows[0].second == LaurentPoly::monomial(2) + LaurentPoly::monomial(4));
  CHECK(W.name(rows[1].first) == "rstsr");
  CHECK(rows[1].second == LaurentPoly::monomial(3) + LaurentPoly::monomial(5));
  CHECK(ws.kl().mu(W.parse("s"), W.parse("srts")) == 1);
  std::size_t nontrivial = 0;
  for (std::uint32_t x = 0; x < W.order(); ++x) nontrivial += ws.kl().nontrivial_kl_from(x).size();
  CHECK(nontrivial == 6);
}

TEST_CASE("KL inversion: H_w expanded in the KL basis and back") {
  Workspace ws("A3");
  const CoxeterSystem& W = ws.sys();
  for (std::uint32_t w = 0; w < W.order(); ++w) {
    const HeckeElement q = ws.kl().standard_in_kl_basis(W.element(w));
    HeckeElement back(&W);
    for (const auto& [z, c] : q.coeffs()) back += ws.kl().kl_element(W.element(z)).scaled(c);
    CHECK(back == HeckeElement::standard(W, w));
  }
}

TEST_CASE("concurrent readers see the same columns") {
  Workspace ws("D4");
  const CoxeterSystem& W = ws.sys();
  std::vector<std::size_t> terms(W.order());
  parallel_for(W.order(), 8, [&](std::size_t y) {
    std::size_t n = 0;
    for (std::uint32_t x = 0; x < W.order(); ++x) n += ws.kl().p(x, static_cast<std::uint32_t>(y)).term_count();
    terms[y] = n;
  });
  Workspace serial("D4");
  for (std::uint32_t y = 0; y < W.order(); ++y) {
    std::size_t n = 0;
    for (std::uint32_t x = 0; x < W.order(); ++x) n += serial.kl().p(x, y).term_count();
    CHECK(terms[y] == n);
  }
  CHECK(ws.kl().filled_columns() == W.order());
}

TEST_CASE("installed columns are used as given") {
  Workspace a("A3"), b("A3");
  a.kl().fill_all();
  for (std::uint32_t y = 0; y < a.sys().order(); ++y) b.kl().install_column(y, a.kl().column(y));
  CHECK(b.kl().filled_columns() == a.sys().order());
  CHECK(b.kl().mu(b.sys().parse("s"), b.sys().parse("srts")) == 1);
  for (std::uint32_t y = 0; y < a.sys().order(); ++y)
    for (std::uint32_t x = 0; x < a.sys().order(); ++x) CHECK(a.kl().p(x, y) == b.kl().p(x, y));
}
