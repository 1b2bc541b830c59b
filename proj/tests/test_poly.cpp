#include "klext/poly.hpp"
#include "klext/reference_data.hpp"

#include <doctest.h>

#include <random>

using namespace klext;

namespace {

LaurentPoly random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_terms(0, 5), exp(-6, 6), coeff(-9, 9);
  std::vector<LaurentPoly::Term> t;
  for (int i = n_terms(rng); i > 0; --i) t.emplace_back(exp(rng), coeff(rng));
  return LaurentPoly::from_terms(std::move(t));
}

BiPoly random_bipoly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_terms(0, 4), exp(-3, 3), coeff(-5, 5);
  BiPoly p;
  for (int i = n_terms(rng); i > 0; --i) p.add_term(exp(rng), exp(rng), coeff(rng));
  return p;
}

} // namespace

TEST_CASE("canonical form drops zeros and merges exponents") {
  const LaurentPoly p = LaurentPoly::from_terms({{2, 3}, {-1, 1}, {2, -3}, {0, 0}, {-1, 1}});
  CHECK(p.term_count() == 1);
  CHECK(p.coeff(-1) == 2);
  CHECK(p.coeff(2) == 0);
  CHECK(LaurentPoly(0).is_zero());
  CHECK(LaurentPoly().degree_span() == std::nullopt);
  CHECK(LaurentPoly::from_coefficients(-2, 2, {1, 0, -1}) == LaurentPoly::monomial(-2) - LaurentPoly::monomial(2));
}

TEST_CASE("display form") {
  CHECK(v_minus_vinv().to_string() == "v-v^-1");
  CHECK((v_minus_vinv() * v_minus_vinv()).to_string() == "v^2-2+v^-2");
  CHECK(LaurentPoly().to_string() == "0");
  CHECK(LaurentPoly::monomial(1, -1).to_string() == "-v");
  CHECK(LaurentPoly::monomial(3, 2).to_string("u") == "2u^3");
  CHECK((BiPoly::monomial(2, 0) + BiPoly::monomial(1, 1, 2) + BiPoly::monomial(0, 2)).to_string() == "u^2+2uv+v^2");
}

TEST_CASE("display form parses back") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const LaurentPoly p = random_poly(rng);
    CHECK(reference::parse_laurent(p.to_string()) == p);
    const BiPoly b = random_bipoly(rng);
    CHECK(reference::parse_bipoly(b.to_string()) == b);
  }
  CHECK_THROWS(reference::parse_laurent("v^"));
  CHECK_THROWS(reference::parse_laurent(""));
  CHECK_THROWS(reference::parse_laurent("2w"));
}

TEST_CASE("ring axioms on random inputs") {
  std::mt19937_64 rng(12345);
  for (int i = 0; i < 300; ++i) {
    const LaurentPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == LaurentPoly());
    CHECK(a * LaurentPoly(1) == a);
    CHECK((a * b).bar() == a.bar() * b.bar());
    CHECK(a.bar().bar() == a);
    CHECK(a.subst_neg_inv().subst_neg_inv() == a);
    CHECK((a * b).eval_at_one() == a.eval_at_one() * b.eval_at_one());
    LaurentPoly d = a;
    d.add_scaled(b, 3, 2);
    CHECK(d == a + LaurentPoly::monomial(2, 3) * b);
  }
  for (int i = 0; i < 100; ++i) {
    const BiPoly a = random_bipoly(rng), b = random_bipoly(rng), c = random_bipoly(rng);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b).swapped() == a.swapped() * b.swapped());
    CHECK(a - a == BiPoly());
  }
}

TEST_CASE("big coefficients stay exact") {
  LaurentPoly p = 1 + LaurentPoly::monomial(1);
  LaurentPoly q = 1;
  for (int i = 0; i < 200; ++i) q *= p;
  CHECK(q.coeff(100) == Integer("90548514656103281165404177077484163874504589675413336841320"));
  CHECK(laurent_from_json(to_json(q)) == q);
}

TEST_CASE("JSON forms round-trip") {
  CHECK(to_json(LaurentPoly::from_terms({{-3, -1}, {-1, 2}, {1, -2}, {3, 1}})) ==
        R"({"var":"v","terms":[[-3,-1],[-1,2],[1,-2],[3,1]]})");
  CHECK(to_json(LaurentPoly()) == R"({"var":"v","terms":[]})");
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const LaurentPoly p = random_poly(rng);
    CHECK(laurent_from_json(to_json(p)) == p);
    const BiPoly b = random_bipoly(rng);
    CHECK(bipoly_from_json(to_json(b)) == b);
  }
  CHECK_THROWS(laurent_from_json(R"({"var":"u","terms":[]})"));
  CHECK_THROWS(laurent_from_json(R"({"var":"v","terms":[[1,2,3]]})"));
}

TEST_CASE("substitutions and predicates") {
  const LaurentPoly p = LaurentPoly::from_terms({{2, 1}, {1, -3}, {-1, 5}});
  CHECK(p.bar() == LaurentPoly::from_terms({{-2, 1}, {-1, -3}, {1, 5}}));
  CHECK(p.subst_neg_inv() == LaurentPoly::from_terms({{-2, 1}, {-1, 3}, {1, -5}}));
  CHECK(p.shifted(3) == LaurentPoly::monomial(3) * p);
  CHECK(p.eval_at_one() == 3);
  CHECK_FALSE(p.has_nonnegative_coefficients());
  CHECK(p.support() == std::vector<int>{-1, 1, 2});
  CHECK(p.degree_span() == std::make_pair(-1, 2));
}

TEST_CASE("two-variable helpers") {
  const BiPoly f = BiPoly::product(LaurentPoly::monomial(2) + 1, LaurentPoly::monomial(1, 3));
  CHECK(f.coeff(2, 1) == 3);
  CHECK(f.coeff(0, 1) == 3);
  CHECK(f.degree_u() == 2);
  CHECK(f.degree_v() == 1);
  CHECK(f.total_degree() == 3);
  CHECK(f.swapped().coeff(1, 2) == 3);
  CHECK(BiPoly::monomial(1, 1).coefficientwise_leq(f + BiPoly::monomial(1, 1)));
  CHECK_FALSE(f.coefficientwise_leq(BiPoly()));
}
