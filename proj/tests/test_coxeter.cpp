#include "klext/coxeter.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace klext;

TEST_CASE("group orders and longest lengths") {
  struct Case {
    const char* label;
    std::uint32_t order;
    int longest;
  };
  for (const Case c : {Case{"A1", 2, 1}, Case{"A2", 6, 3}, Case{"A3", 24, 6}, Case{"B3", 48, 9}, Case{"C3", 48, 9},
                       Case{"D4", 192, 12}, Case{"G2", 12, 6}, Case{"F4", 1152, 24}, Case{"A5", 720, 15}}) {
    CAPTURE(c.label);
    const auto W = CoxeterSystem::build(c.label);
    CHECK(W->order() == c.order);
    CHECK(W->max_length() == c.longest);
    CHECK(W->w0() == W->order() - 1);
    CHECK(W->order() == W->type().classical_order());
  }
}

TEST_CASE("element cap is checked before enumeration") {
  CHECK_THROWS_AS(CoxeterSystem::build("E7"), CapExceeded);
  CHECK_THROWS_AS(CoxeterSystem::build("A5", BuildOptions{100}), CapExceeded);
  try {
    CoxeterSystem::build("E7");
  } catch (const CapExceeded& e) {
    CHECK(e.order == 2903040);
  }
  CHECK_THROWS(CartanType::parse("H3"));
  CHECK_THROWS(CartanType::parse("D2"));
}

TEST_CASE("names and parsing") {
  const auto A3 = CoxeterSystem::build("A3");
  CHECK(A3->generator_names() == std::vector<std::string>{"r", "s", "t"});
  CHECK(A3->name(A3->w0()) == "rsrtsr");
  CHECK(A3->parse("w0").index == A3->w0());
  CHECK(A3->parse("e").index == 0);
  CHECK(A3->parse("s1*s2*s3") == A3->parse("rst"));
  CHECK(A3->parse("r s t") == A3->parse("r.s.t"));
  CHECK(A3->parse("rr").index == 0);
  CHECK_THROWS(A3->parse("q"));
  const auto B3 = CoxeterSystem::build("B3");
  CHECK(B3->generator_names() == std::vector<std::string>{"s0", "s1", "s2"});
  CHECK(B3->coxeter_m(0, 1) == 4);
  CHECK(B3->coxeter_m(1, 2) == 3);
  CHECK(B3->coxeter_m(0, 2) == 2);
  CHECK(B3->parse("s0s1") == B3->parse("s0*s1"));
  const auto D4 = CoxeterSystem::build("D4");
  CHECK(D4->coxeter_m(1, 2) == 3);
  CHECK(D4->coxeter_m(1, 3) == 3);
  CHECK(D4->coxeter_m(2, 3) == 2);
  for (std::uint32_t w = 0; w < D4->order(); ++w) CHECK(D4->parse(D4->name(w)).index == w);
}

TEST_CASE("words, lengths, inverses and descents agree") {
  for (const char* label : {"A3", "B3", "G2", "D4"}) {
    CAPTURE(label);
    const auto W = CoxeterSystem::build(label);
    for (std::uint32_t w = 0; w < W->order(); ++w) {
      const auto word = W->word(w);
      CHECK(static_cast<int>(word.size()) == W->length(w));
      CHECK(W->from_word(word).index == w);
      CHECK(W->multiply(w, W->inverse(w)) == 0);
      CHECK(W->length(W->inverse(w)) == W->length(w));
      CHECK(W->length(W->multiply(W->w0(), w)) == W->max_length() - W->length(w));
      for (int s = 0; s < W->rank(); ++s) {
        CHECK(W->is_right_descent(w, s) == (W->length(W->right_mult(w, s)) < W->length(w)));
        CHECK(W->is_left_descent(w, s) == (W->length(W->left_mult(w, s)) < W->length(w)));
        CHECK(W->left_mult(w, s) == W->multiply(W->generator(s).index, w));
      }
      if (w > 0) CHECK(W->length(w - 1) <= W->length(w));
    }
  }
}

TEST_CASE("Bruhat order matches the subword property") {
  for (const char* label : {"A3", "B3", "G2", "D4"}) {
    CAPTURE(label);
    const auto W = CoxeterSystem::build(label);
    for (std::uint32_t y = 0; y < W->order(); ++y) {
      const auto below = oracle::subword_products(*W, y);
      for (std::uint32_t x = 0; x < W->order(); ++x) CHECK(W->bruhat_leq(x, y) == below[x]);
    }
  }
}

TEST_CASE("sparse Bruhat path agrees with dense bitsets") {
  const auto dense = CoxeterSystem::build("B3");
  const auto sparse = CoxeterSystem::build("B3", BuildOptions{500000, 1});
  CHECK(dense->has_dense_bruhat());
  CHECK_FALSE(sparse->has_dense_bruhat());
  for (std::uint32_t x = 0; x < dense->order(); ++x)
    for (std::uint32_t y = 0; y < dense->order(); ++y) CHECK(dense->bruhat_leq(x, y) == sparse->bruhat_leq(x, y));
}

TEST_CASE("intervals") {
  const auto W = CoxeterSystem::build("A3");
  CHECK(W->lower_interval(W->w0()).size() == 24);
  CHECK(W->interval(0, W->parse("rts").index).size() == 8);
  CHECK(W->interval(W->parse("s").index, W->parse("srts").index).size() == 10);
  for (std::uint32_t y = 0; y < W->order(); ++y) {
    const auto below = oracle::subword_products(*W, y);
    for (std::uint32_t x = 0; x <= y; ++x) {
      if (!below[x]) continue;
      std::size_t n = 0;
      for (std::uint32_t z = 0; z < W->order(); ++z) n += below[z] && oracle::subword_products(*W, z)[x];
      CHECK(W->interval(x, y).size() == n);
    }
  }
  CHECK(W->interval(W->parse("r").index, W->parse("t").index).empty());
}

TEST_CASE("boolean criterion agrees with multiplicity-free reduced words") {
  for (const char* label : {"A3", "B3"}) {
    CAPTURE(label);
    const auto W = CoxeterSystem::build(label);
    for (std::uint32_t w = 0; w < W->order(); ++w) CHECK(W->is_boolean(w) == oracle::has_multiplicity_free_word(*W, w));
  }
  const auto A3 = CoxeterSystem::build("A3");
  CHECK(A3->is_boolean(A3->parse("rts")));
  CHECK_FALSE(A3->is_boolean(A3->parse("srts")));
}

TEST_CASE("bigrassmannian elements") {
  const auto W = CoxeterSystem::build("A3");
  std::size_t count = 0;
  for (std::uint32_t w = 1; w < W->order(); ++w)
    if (W->is_bigrassmannian(w)) {
      ++count;
      CHECK(W->descents(W->element(w), Side::Left).size() == 1);
      CHECK(W->descents(W->element(w), Side::Right).size() == 1);
    }
  // S_n has n(n^2-1)/6 bigrassmannians
  CHECK(count == 10);
  CHECK_FALSE(W->is_bigrassmannian(std::uint32_t{0}));
}

TEST_CASE("parabolic subsets") {
  const auto W = CoxeterSystem::build("A3");
  const ParabolicSubset P = W->parabolic(std::vector<int>{0, 1});
  CHECK(P.subgroup.size() == 6);
  CHECK(W->length(P.longest) == 3);
  CHECK(P.right_reps.size() == 4);
  CHECK(P.left_reps.size() == 4);
  std::set<std::uint32_t> cosets;
  for (auto x : P.right_reps)
    for (auto u : P.subgroup) cosets.insert(W->multiply(x, u));
  CHECK(cosets.size() == 24);
  for (auto x : P.left_reps) CHECK((W->descent_mask(x, Side::Left) & P.J) == 0);
  const ParabolicSubset E = W->parabolic(GenMask{0});
  CHECK(E.right_reps.size() == 24);
  CHECK(E.longest == 0);
}

TEST_CASE("foreign elements are rejected") {
  const auto A = CoxeterSystem::build("A2");
  const auto B = CoxeterSystem::build("A2");
  CHECK_THROWS(A->length(B->longest()));
  CHECK_THROWS(A->element(6));
}
