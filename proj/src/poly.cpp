#include "klext/poly.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace klext {

namespace {

void canonicalize(std::vector<LaurentPoly::Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<LaurentPoly::Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      if (!out.empty() && out.back().second == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().second == 0) out.pop_back();
  terms = std::move(out);
}

// Merge b*coef*v^shift into a. Both inputs sorted ascending.
std::vector<LaurentPoly::Term> merge(const std::vector<LaurentPoly::Term>& a,
                                     const std::vector<LaurentPoly::Term>& b,
                                     const Integer& coef, int shift) {
  std::vector<LaurentPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first + shift)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first + shift < a[i].first) {
      out.emplace_back(b[j].first + shift, b[j].second * coef);
      ++j;
    } else {
      Integer c = a[i].second + b[j].second * coef;
      if (c != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

std::string monomial_string(const Integer& c, bool first, const std::string& body) {
  std::string s;
  if (c < 0) {
    s += '-';
  } else if (!first) {
    s += '+';
  }
  Integer a = abs(c);
  if (body.empty()) {
    s += a.str();
  } else {
    if (a != 1) s += a.str();
    s += body;
  }
  return s;
}

std::string power(std::string_view var, int e) {
  if (e == 0) return {};
  std::string s(var);
  if (e != 1) s += "^" + std::to_string(e);
  return s;
}

// Collects the "terms" array of a polynomial document with exact integers.
// nlohmann hands overflowing integers to number_float together with the
// original token, which is what makes arbitrary precision possible here.
class TermsCollector : public nlohmann::json_sax<nlohmann::json> {
public:
  std::vector<std::vector<Integer>> rows;
  std::vector<std::string> vars;
  std::string var;

  bool null() override { return fail("null"); }
  bool boolean(bool) override { return fail("boolean"); }
  bool number_integer(number_integer_t v) override { return number(Integer(v)); }
  bool number_unsigned(number_unsigned_t v) override { return number(Integer(v)); }
  bool number_float(number_float_t, const string_t& s) override {
    if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos)
      return fail("non-integer number");
    return number(Integer(s));
  }
  bool string(string_t& s) override {
    if (key_ == "var" && depth_ == 1) {
      var = s;
      return true;
    }
    if (key_ == "vars" && depth_ == 2) {
      vars.push_back(s);
      return true;
    }
    return fail("unexpected string");
  }
  bool binary(binary_t&) override { return fail("binary"); }
  bool start_object(std::size_t) override {
    if (depth_ != 0) return fail("nested object");
    ++depth_;
    return true;
  }
  bool key(string_t& k) override {
    key_ = k;
    return true;
  }
  bool end_object() override {
    --depth_;
    return true;
  }
  bool start_array(std::size_t) override {
    ++depth_;
    if (key_ == "terms" && depth_ == 3) rows.emplace_back();
    return depth_ <= 3 ? true : fail("array too deep");
  }
  bool end_array() override {
    --depth_;
    return true;
  }
  bool parse_error(std::size_t pos, const std::string&, const nlohmann::detail::exception& ex) override {
    throw std::invalid_argument("polynomial JSON parse error at " + std::to_string(pos) + ": " +
                                ex.what());
  }

private:
  bool number(Integer v) {
    if (key_ != "terms" || depth_ != 3) return fail("number outside terms");
    rows.back().push_back(std::move(v));
    return true;
  }
  bool fail(const char* what) { throw std::invalid_argument(std::string("polynomial JSON: ") + what); }

  std::string key_;
  int depth_ = 0;
};

int to_exponent(const Integer& v) {
  if (v > 1000000 || v < -1000000) throw std::invalid_argument("polynomial JSON: exponent out of range");
  return v.convert_to<int>();
}

} // namespace

LaurentPoly::LaurentPoly(int constant) {
  if (constant != 0) terms_.emplace_back(0, Integer(constant));
}

LaurentPoly LaurentPoly::monomial(int exponent, Integer coefficient) {
  LaurentPoly p;
  if (coefficient != 0) p.terms_.emplace_back(exponent, std::move(coefficient));
  return p;
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
  LaurentPoly p;
  canonicalize(terms);
  p.terms_ = std::move(terms);
  return p;
}

LaurentPoly LaurentPoly::from_coefficients(int lo, int step, const std::vector<Integer>& coeffs) {
  std::vector<Term> t;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    t.emplace_back(lo + step * static_cast<int>(i), coeffs[i]);
  return from_terms(std::move(t));
}

Integer LaurentPoly::coeff(int exponent) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                             [](const Term& t, int e) { return t.first < e; });
  if (it != terms_.end() && it->first == exponent) return it->second;
  return 0;
}

std::vector<int> LaurentPoly::support() const {
  std::vector<int> s;
  s.reserve(terms_.size());
  for (const auto& t : terms_) s.push_back(t.first);
  return s;
}

std::optional<std::pair<int, int>> LaurentPoly::degree_span() const {
  if (terms_.empty()) return std::nullopt;
  return std::make_pair(terms_.front().first, terms_.back().first);
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly p = *this;
  for (auto& t : p.terms_) t.first += k;
  return p;
}

LaurentPoly LaurentPoly::bar() const {
  LaurentPoly p;
  p.terms_.reserve(terms_.size());
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) p.terms_.emplace_back(-it->first, it->second);
  return p;
}

LaurentPoly LaurentPoly::subst_neg_inv() const {
  LaurentPoly p = bar();
  for (auto& t : p.terms_)
    if (t.first % 2 != 0) t.second = -t.second;
  return p;
}

Integer LaurentPoly::eval_at_one() const {
  Integer s = 0;
  for (const auto& t : terms_) s += t.second;
  return s;
}

bool LaurentPoly::has_nonnegative_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second > 0; });
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) { return add_scaled(other, 1, 0); }
LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) { return add_scaled(other, -1, 0); }

LaurentPoly& LaurentPoly::add_scaled(const LaurentPoly& other, const Integer& coefficient, int shift) {
  if (other.terms_.empty() || coefficient == 0) return *this;
  terms_ = merge(terms_, other.terms_, coefficient, shift);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const LaurentPoly& small = a.terms_.size() <= b.terms_.size() ? a : b;
  const LaurentPoly& large = &small == &a ? b : a;
  LaurentPoly out;
  for (const auto& [e, c] : small.terms_) out.add_scaled(large, c, e);
  return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) {
  *this = *this * other;
  return *this;
}

LaurentPoly operator-(LaurentPoly a) {
  for (auto& t : a.terms_) t.second = -t.second;
  return a;
}

std::string LaurentPoly::to_string(std::string_view var) const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    s += monomial_string(it->second, first, power(var, it->first));
    first = false;
  }
  return s;
}

LaurentPoly v_minus_vinv() { return LaurentPoly::from_terms({{-1, -1}, {1, 1}}); }

BiPoly BiPoly::monomial(int u_exp, int v_exp, Integer coefficient) {
  BiPoly p;
  p.add_term(u_exp, v_exp, coefficient);
  return p;
}

BiPoly BiPoly::product(const LaurentPoly& in_u, const LaurentPoly& in_v) {
  BiPoly p;
  for (const auto& [eu, cu] : in_u.terms())
    for (const auto& [ev, cv] : in_v.terms()) p.add_term(eu, ev, cu * cv);
  return p;
}

Integer BiPoly::coeff(int u_exp, int v_exp) const {
  auto it = terms_.find({u_exp, v_exp});
  return it == terms_.end() ? Integer(0) : it->second;
}

void BiPoly::add_term(int u_exp, int v_exp, const Integer& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace({u_exp, v_exp}, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

BiPoly& BiPoly::operator+=(const BiPoly& other) {
  for (const auto& [k, c] : other.terms_) add_term(k.first, k.second, c);
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& other) {
  for (const auto& [k, c] : other.terms_) add_term(k.first, k.second, -c);
  return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return out;
}

BiPoly BiPoly::swapped() const {
  BiPoly p;
  for (const auto& [k, c] : terms_) p.terms_.emplace(Key{k.second, k.first}, c);
  return p;
}

bool BiPoly::coefficientwise_leq(const BiPoly& other) const {
  for (const auto& [k, c] : terms_)
    if (c > other.coeff(k.first, k.second)) return false;
  for (const auto& [k, c] : other.terms_)
    if (c < 0 && !terms_.count(k)) return false;
  return true;
}

std::optional<int> BiPoly::degree_u() const {
  if (terms_.empty()) return std::nullopt;
  int m = terms_.begin()->first.first;
  for (const auto& [k, c] : terms_) m = std::max(m, k.first);
  return m;
}

std::optional<int> BiPoly::degree_v() const {
  if (terms_.empty()) return std::nullopt;
  int m = terms_.begin()->first.second;
  for (const auto& [k, c] : terms_) m = std::max(m, k.second);
  return m;
}

std::optional<int> BiPoly::total_degree() const {
  if (terms_.empty()) return std::nullopt;
  int m = terms_.begin()->first.first + terms_.begin()->first.second;
  for (const auto& [k, c] : terms_) m = std::max(m, k.first + k.second);
  return m;
}

std::string BiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    std::string body = power("u", it->first.first) + power("v", it->first.second);
    s += monomial_string(it->second, first, body);
    first = false;
  }
  return s;
}

std::string terms_json(const LaurentPoly& p) {
  std::string s = "[";
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) s += ',';
    first = false;
    s += '[' + std::to_string(e) + ',' + c.str() + ']';
  }
  return s + ']';
}

std::string to_json(const LaurentPoly& p) { return "{\"var\":\"v\",\"terms\":" + terms_json(p) + "}"; }

std::string to_json(const BiPoly& p) {
  std::string s = "{\"vars\":[\"u\",\"v\"],\"terms\":[";
  bool first = true;
  for (const auto& [k, c] : p.terms()) {
    if (!first) s += ',';
    first = false;
    s += '[' + std::to_string(k.first) + ',' + std::to_string(k.second) + ',' + c.str() + ']';
  }
  return s + "]}";
}

LaurentPoly laurent_from_json(std::string_view text) {
  TermsCollector c;
  nlohmann::json::sax_parse(text.begin(), text.end(), &c);
  if (c.var != "v") throw std::invalid_argument("polynomial JSON: expected \"var\":\"v\"");
  std::vector<LaurentPoly::Term> terms;
  for (auto& row : c.rows) {
    if (row.size() != 2) throw std::invalid_argument("polynomial JSON: term must be [exp,coeff]");
    terms.emplace_back(to_exponent(row[0]), std::move(row[1]));
  }
  return LaurentPoly::from_terms(std::move(terms));
}

BiPoly bipoly_from_json(std::string_view text) {
  TermsCollector c;
  nlohmann::json::sax_parse(text.begin(), text.end(), &c);
  if (c.vars != std::vector<std::string>{"u", "v"})
    throw std::invalid_argument("polynomial JSON: expected \"vars\":[\"u\",\"v\"]");
  BiPoly p;
  for (auto& row : c.rows) {
    if (row.size() != 3) throw std::invalid_argument("polynomial JSON: term must be [uExp,vExp,coeff]");
    p.add_term(to_exponent(row[0]), to_exponent(row[1]), row[2]);
  }
  return p;
}

} // namespace klext
