#include "klext/reference_data.hpp"

#include <cctype>
#include <stdexcept>

namespace klext::reference {

namespace {

// term := [+-] [digits] (var [^ [-] digits])*
template <class Add>
void parse_terms(const std::string& text, const std::string& vars, Add add) {
  std::size_t i = 0;
  auto fail = [&](const char* what) {
    throw std::invalid_argument(std::string(what) + " in polynomial '" + text + "' at offset " + std::to_string(i));
  };
  auto read_int = [&]() {
    const std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) fail("expected digits");
    return text.substr(start, i - start);
  };
  if (text.empty()) fail("empty input");
  while (i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      fail("expected sign");
    }
    Integer c = 1;
    bool explicit_coeff = false;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      c = Integer(read_int());
      explicit_coeff = true;
    }
    std::vector<int> exps(vars.size(), 0);
    bool any_var = false;
    while (i < text.size() && vars.find(text[i]) != std::string::npos) {
      const std::size_t which = vars.find(text[i]);
      ++i;
      int e = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        int esign = 1;
        if (i < text.size() && text[i] == '-') {
          esign = -1;
          ++i;
        }
        e = esign * std::stoi(read_int());
      }
      exps[which] += e;
      any_var = true;
    }
    if (!explicit_coeff && !any_var) fail("empty term");
    add(exps, sign < 0 ? Integer(-c) : c);
  }
}

} // namespace

LaurentPoly parse_laurent(const std::string& text) {
  std::vector<LaurentPoly::Term> terms;
  parse_terms(text, "v", [&](const std::vector<int>& e, const Integer& c) { terms.emplace_back(e[0], c); });
  return LaurentPoly::from_terms(std::move(terms));
}

BiPoly parse_bipoly(const std::string& text) {
  BiPoly p;
  parse_terms(text, "uv", [&](const std::vector<int>& e, const Integer& c) { p.add_term(e[0], e[1], c); });
  return p;
}

} // namespace klext::reference
