// Acceptance runner: one PASS/FAIL line per criterion.
// Usage: acceptance [--allow-fail N]...

#include "klext/cli.hpp"
#include "klext/extbounds.hpp"
#include "klext/intervals.hpp"
#include "klext/reference_data.hpp"
#include "klext/rpoly.hpp"
#include "klext/typea.hpp"
#include "klext/verify.hpp"
#include "oracles.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace klext;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> run;
};

Outcome from_suites(std::initializer_list<const char*> suites) {
  WorkspacePool pool(BuildOptions{}, std::nullopt);
  Outcome o{true, ""};
  for (const char* s : suites) {
    const SuiteReport rep = run_suite(s, pool, 4);
    std::size_t ok = 0;
    for (const auto& a : rep.assertions) {
      if (a.pass) {
        ++ok;
      } else {
        o.pass = false;
        o.detail += std::string(o.detail.empty() ? "" : "; ") + s + ": " + a.name + " [" + a.detail + "]";
      }
    }
    if (ok == rep.assertions.size())
      o.detail += std::string(o.detail.empty() ? "" : "; ") + s + " " + std::to_string(ok) + "/" +
                  std::to_string(rep.assertions.size());
  }
  return o;
}

Outcome oracle_agreement() {
  std::ostringstream d;
  bool pass = true;
  for (const char* label : {"A2", "A3"}) {
    Workspace ws(label);
    const oracle::RMatrixOracle o(ws);
    std::size_t bad = 0, n = 0;
    for (std::uint32_t x = 0; x < ws.sys().order(); ++x)
      for (std::uint32_t y = 0; y < ws.sys().order(); ++y, ++n)
        if (!(ws.r().r(x, y) == o.r(x, y))) ++bad;
    pass = pass && bad == 0;
    d << (label[1] == '2' ? "" : "; ") << label << " " << n << " cells, " << bad << " mismatches";
  }
  return {pass, d.str()};
}

Outcome intervals() {
  Outcome o = from_suites({"intervals-a3"});
  Workspace a3("A3"), b3("B3");
  const bool counts = a3.partition().class_count() == 14 && a3.partition().pair_count() == 213 &&
                      b3.partition().class_count() == 74 && b3.partition().pair_count() == 847;
  o.pass = o.pass && counts;
  o.detail += "; A3 " + std::to_string(a3.partition().class_count()) + " classes / " +
              std::to_string(a3.partition().pair_count()) + " pairs, B3 " +
              std::to_string(b3.partition().class_count()) + " / " + std::to_string(b3.partition().pair_count());
  return o;
}

Outcome type_a() {
  Outcome o = from_suites({"typea-s6"});
  Workspace s4("A3");
  const CoxeterSystem& W = s4.sys();
  std::size_t additional = 0;
  for (std::uint32_t w = 0; w < W.order(); ++w)
    for (const auto& r : predict_ext1(s4, w))
      if (!r.expected) ++additional;
  if (additional) o.pass = false;
  o.detail += "; S4 additional records " + std::to_string(additional);

  // certificates restricted to rank 2, small gap, trivial KL and boolean classes
  std::map<std::string, std::size_t> outside;
  std::vector<std::string> theorem_pairs;
  std::size_t pairs = 0;
  for (std::uint32_t x = 0; x < W.order(); ++x)
    for (std::uint32_t y : W.lower_interval(x)) {
      ++pairs;
      const int d = W.length(x) - W.length(y);
      if (W.rank() <= 2 || d <= 3 || trivial_kl_above(s4, y) || boolean_r_determined(s4.partition(), x, y)) continue;
      const Certificate c = r_determined(s4, x, y);
      ++outside[to_string(c.kind)];
      if (c.kind == CertificateKind::TheoremA3) theorem_pairs.push_back("(" + W.name(x) + "," + W.name(y) + ")");
    }
  std::size_t total = 0;
  std::string why;
  for (const auto& [k, n] : outside) {
    total += n;
    why += (why.empty() ? "" : ", ") + k + " " + std::to_string(n);
  }
  if (total) {
    o.pass = false;
    o.detail += "; " + std::to_string(total) + " of " + std::to_string(pairs) +
                " S4 pairs need certificates outside the restricted clauses (" + why +
                "); pairs covered only by the A3 classification:";
    for (const auto& p : theorem_pairs) o.detail += " " + p;
  } else {
    o.detail += "; restricted clauses cover all " + std::to_string(pairs) + " S4 pairs";
  }
  return o;
}

Outcome properties() {
  std::size_t checks = 0, failures = 0;
  auto expect = [&](bool ok) {
    ++checks;
    if (!ok) ++failures;
  };
  for (const char* label : {"A3", "B3", "D4"}) {
    Workspace ws(label);
    const CoxeterSystem& W = ws.sys();
    for (std::uint32_t y = 0; y < W.order(); ++y)
      for (std::uint32_t x : W.lower_interval(y)) {
        const LaurentPoly& p = ws.kl().p(x, y);
        const int d = W.length(y) - W.length(x);
        expect(p.has_nonnegative_coefficients() && p.coeff(d) == 1);
        for (const auto& [e, c] : p.terms()) expect(e <= d && (d - e) % 2 == 0 && (x == y || e >= 1));
        const LaurentPoly& r = ws.r().r(y, x);
        expect(r.coeff(d) == 1 && r.coeff(-d) == (d % 2 ? -1 : 1));
        if (label[0] != 'D') {
          const BiPoly b = kl_bound_poly(ws, x, y);
          expect(b.total_degree() == d && b.coeff(d, 0) == 1 && b.coeff(0, d) == 1);
          for (const auto& [k, c] : b.terms()) expect((k.first + k.second - d) % 2 == 0 && c > 0);
        }
      }
  }
  std::mt19937_64 rng(1000);
  std::size_t replay_fail = 0;
  std::vector<std::unique_ptr<Workspace>> spaces;
  for (const char* label : {"A3", "B3", "D4", "G2"}) spaces.push_back(std::make_unique<Workspace>(label));
  for (int i = 0; i < 1000; ++i) {
    const Workspace& ws = *spaces[i % spaces.size()];
    std::uniform_int_distribution<std::uint32_t> pick(0, ws.sys().order() - 1);
    const std::uint32_t x = pick(rng), y = pick(rng);
    if (!(r_poly_random_ascent(ws.sys(), x, y, rng) == ws.r().r(x, y))) ++replay_fail;
  }
  return {failures == 0 && replay_fail == 0, std::to_string(checks) + " property checks, " + std::to_string(failures) +
                                                 " failures; 1000 random ascent replays, " +
                                                 std::to_string(replay_fail) + " mismatches"};
}

Outcome e7_display_only() {
  Outcome o{true, ""};
  try {
    CoxeterSystem::build("E7");
    o.pass = false;
    o.detail = "E7 was enumerated";
  } catch (const CapExceeded& e) {
    o.detail = "E7 build refused (" + std::to_string(e.order) + " > cap)";
  }
  const auto& list = reference::kE7LongestToIdentity;
  long sum = 0;
  bool anti = list.size() == 64;
  for (std::size_t i = 0; i < list.size(); ++i) {
    sum += list[i];
    if (list[i] != -list[list.size() - 1 - i]) anti = false;
  }
  o.pass = o.pass && anti && sum == 0;
  o.detail += "; reference list " + std::to_string(list.size()) + " entries, antisymmetric " + (anti ? "yes" : "no");

  WorkspacePool pool(BuildOptions{}, std::nullopt);
  bool suites_ok = true;
  for (const auto& s : suite_names()) suites_ok = run_suite(s, pool, 4).passed() && suites_ok;
  const bool under = pool.largest_order() < pool.options().element_cap;
  o.pass = o.pass && suites_ok && under;
  o.detail += "; verify largest group " + std::to_string(pool.largest_order()) + " elements";

  std::ostringstream out, err;
  const int code = cli::run({"rpoly", "--type", "E7", "--reference", "--format", "json"}, out, err);
  o.pass = o.pass && code == 0 && out.str().find("\"recomputed\":false") != std::string::npos;
  return o;
}

} // namespace

int main(int argc, char** argv) {
  std::set<int> allowed;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--allow-fail" && i + 1 < argc) {
      allowed.insert(std::stoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--allow-fail N]...\n";
      return 2;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "A2 R-table and expected table", 1, [] { return from_suites({"a2-tables"}); }},
      {2, "A1 expected table and ext^1(Delta_s<1>, Delta_e) = 1", 1, [] { return from_suites({"a1-tables"}); }},
      {3, "A3 nontrivial KL polynomials from e", 1, [] { return from_suites({"a3-kl"}); }},
      {4, "A3 figure grid", 5, [] { return from_suites({"a3-figure"}); }},
      {5, "D4 coefficient list, violations {0}, Delorme on all pairs", 60, [] { return from_suites({"d4-boe"}); }},
      {6, "B3 grid values and cellwise inequality", 5, [] { return from_suites({"b3-example"}); }},
      {7, "pr/sr identity and Delorme on A3 for all J", 30, [] { return from_suites({"parabolic-a3"}); }},
      {8, "R-polynomials equal the inverse-KL matrix oracle on A2 and A3", 10, oracle_agreement},
      {9, "interval equivalence, class constancy, non-isomorphic posets", 30, intervals},
      {10, "S6 record, S4 without additional records, restricted certificates on S4", 120, type_a},
      {11, "property suites", 120, properties},
      {12, "E7 reference display only, never recomputed", 60, e7_display_only},
  };

  int unexpected = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_s) {
      o.pass = false;
      o.detail += "; exceeded time limit " + std::to_string(c.limit_s) + " s";
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << std::setw(2) << c.id << "] " << c.name << " (" << std::fixed
              << std::setprecision(2) << secs << " s): " << o.detail << "\n";
    if (!o.pass && !allowed.count(c.id)) ++unexpected;
  }
  std::cout << (unexpected ? "acceptance: unexpected failures\n" : "acceptance: done\n");
  return unexpected ? 1 : 0;
}
