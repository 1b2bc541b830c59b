#include "klext/cli.hpp"

#include "klext/extbounds.hpp"
#include "klext/reference_data.hpp"
#include "klext/snapshot.hpp"
#include "klext/typea.hpp"
#include "klext/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

namespace klext::cli {

namespace {

enum class Format { Text, Csv, Json, Markdown };

class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct Common {
  std::string type;
  Format format = Format::Text;
  std::string output;
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  std::string cache_dir;
  std::uint64_t cap = BuildOptions{}.element_cap;
  std::uint64_t table_cap = 1200;
};

struct Args {
  Common common;
  std::string from, to, parabolic, w, nontrivial_from, gap, kind = "hom", a, b;
  std::vector<std::string> suites;
  bool table = false, coeffs = false, list = false, all = false, reference = false, list_suites = false;
};

std::string jstr(const std::string& s) { return nlohmann::json(s).dump(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string s;
  for (std::size_t i = 0; i < fields.size(); ++i) s += (i ? "," : "") + csv_field(fields[i]);
  return s + "\n";
}

std::string md_row(const std::vector<std::string>& fields) {
  std::string s = "|";
  for (const auto& f : fields) s += " " + f + " |";
  return s + "\n";
}

std::string md_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::string s = md_row(header);
  s += "|";
  for (std::size_t i = 0; i < header.size(); ++i) s += "---|";
  s += "\n";
  for (const auto& r : rows) s += md_row(r);
  return s;
}

std::string json_list(const std::vector<std::string>& items) {
  std::string s = "[";
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? "," : "") + items[i];
  return s + "]";
}

std::string json_names(const CoxeterSystem& W, const std::vector<int>& gens) {
  std::vector<std::string> v;
  for (int s : gens) v.push_back(jstr(W.generator_names()[s]));
  return json_list(v);
}

std::string text_names(const CoxeterSystem& W, const std::vector<int>& gens) {
  std::string s;
  for (int g : gens) s += (s.empty() ? "" : " ") + W.generator_names()[g];
  return s.empty() ? "-" : s;
}

// --- session --------------------------------------------------------------

class Session {
public:
  explicit Session(const Common& c) : common_(c), pool_(BuildOptions{c.cap, BuildOptions{}.dense_bruhat_limit}, cache()) {}

  Workspace& ws() {
    if (common_.type.empty()) throw UsageError("--type is required for this command");
    return pool_.get(common_.type);
  }
  WorkspacePool& pool() { return pool_; }
  void finish(std::ostream& err) {
    pool_.save_all();
    for (const auto& w : pool_.warnings()) err << "warning: " << w << "\n";
  }
  const Common& common() const { return common_; }

  std::uint32_t element(const std::string& text, const char* flag) {
    if (text.empty()) throw UsageError(std::string("missing ") + flag);
    return ws().sys().parse(text).index;
  }

  void check_table_cap(std::size_t n) const {
    if (n > common_.table_cap)
      throw UsageError("full table over " + std::to_string(n) + " elements exceeds --table-cap " +
                       std::to_string(common_.table_cap));
  }

private:
  std::optional<std::filesystem::path> cache() const {
    if (!common_.cache_dir.empty()) return std::filesystem::path(common_.cache_dir);
    return default_cache_dir();
  }
  Common common_;
  WorkspacePool pool_;
};

GenMask parse_subset(const CoxeterSystem& W, const std::string& text) {
  GenMask m = 0;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    token.erase(0, token.find_first_not_of(' '));
    token.erase(token.find_last_not_of(' ') + 1);
    if (token.empty() || token == "none") continue;
    const int g = W.generator_index(token);
    if (g >= 0) m |= GenMask{1} << g;
    else m |= W.support(W.parse(token).index);
  }
  return m;
}

// --- polynomial listings ----------------------------------------------------

struct PolyRow {
  std::uint32_t x;
  std::uint32_t y;
  LaurentPoly p;
};

void emit_single(std::ostream& out, Format f, const CoxeterSystem& W, const std::string& label, const PolyRow& row) {
  switch (f) {
  case Format::Json: out << to_json(row.p) << "\n"; break;
  case Format::Csv: out << csv_row({"x", "y", "terms"}) << csv_row({W.name(row.x), W.name(row.y), terms_json(row.p)}); break;
  case Format::Markdown:
    out << md_table({"x", "y", label}, {{W.name(row.x), W.name(row.y), row.p.to_string()}});
    break;
  case Format::Text: out << label << "(" << W.name(row.x) << "," << W.name(row.y) << ") = " << row.p.to_string() << "\n"; break;
  }
}

void emit_rows(std::ostream& out, Format f, const CoxeterSystem& W, const std::string& label,
               const std::vector<PolyRow>& rows) {
  switch (f) {
  case Format::Json: {
    std::vector<std::string> items;
    for (const auto& r : rows)
      items.push_back("{\"x\":" + jstr(W.name(r.x)) + ",\"y\":" + jstr(W.name(r.y)) + ",\"poly\":" + to_json(r.p) + "}");
    out << "{\"kind\":" << jstr(label) << ",\"type\":" << jstr(W.type_label()) << ",\"entries\":" << json_list(items)
        << "}\n";
    break;
  }
  case Format::Csv:
    out << csv_row({"x", "y", "terms"});
    for (const auto& r : rows) out << csv_row({W.name(r.x), W.name(r.y), terms_json(r.p)});
    break;
  case Format::Markdown: {
    std::vector<std::vector<std::string>> body;
    for (const auto& r : rows) body.push_back({W.name(r.x), W.name(r.y), r.p.to_string()});
    out << md_table({"x", "y", label}, body);
    break;
  }
  case Format::Text:
    for (const auto& r : rows) out << label << "(" << W.name(r.x) << "," << W.name(r.y) << ") = " << r.p.to_string() << "\n";
    break;
  }
}

/// Full matrix over `elems` x `elems`; `get(x, y)` returns the entry.
template <class Get>
void emit_matrix(std::ostream& out, Format f, const CoxeterSystem& W, const std::string& label,
                 const std::vector<std::uint32_t>& elems, Get get) {
  if (f == Format::Markdown) {
    std::vector<std::string> header{"x \\ y"};
    for (auto y : elems) header.push_back(W.name(y));
    std::vector<std::vector<std::string>> body;
    for (auto x : elems) {
      std::vector<std::string> row{W.name(x)};
      for (auto y : elems) row.push_back(get(x, y).to_string());
      body.push_back(std::move(row));
    }
    out << md_table(header, body);
    return;
  }
  std::vector<PolyRow> rows;
  for (auto x : elems)
    for (auto y : elems) {
      LaurentPoly p = get(x, y);
      if (!p.is_zero()) rows.push_back({x, y, std::move(p)});
    }
  if (f == Format::Json) {
    std::vector<std::string> names;
    for (auto e : elems) names.push_back(jstr(W.name(e)));
    std::vector<std::string> items;
    for (const auto& r : rows)
      items.push_back("{\"x\":" + jstr(W.name(r.x)) + ",\"y\":" + jstr(W.name(r.y)) + ",\"poly\":" + to_json(r.p) + "}");
    out << "{\"kind\":" << jstr(label) << ",\"type\":" << jstr(W.type_label()) << ",\"elements\":" << json_list(names)
        << ",\"entries\":" << json_list(items) << "}\n";
    return;
  }
  emit_rows(out, f, W, label, rows);
}

std::vector<std::uint32_t> all_elements(const CoxeterSystem& W) {
  std::vector<std::uint32_t> v(W.order());
  for (std::uint32_t i = 0; i < W.order(); ++i) v[i] = i;
  return v;
}

// --- commands ---------------------------------------------------------------

int cmd_group(Session& s, const Args& a, std::ostream& out) {
  const CoxeterSystem& W = s.ws().sys();
  const Format f = s.common().format;
  std::vector<int> gens;
  for (int g = 0; g < W.rank(); ++g) gens.push_back(g);
  auto elem_fields = [&](std::uint32_t w) {
    return std::vector<std::string>{std::to_string(w), W.name(w), std::to_string(W.length(w)),
                                    text_names(W, gens_of(W.descent_mask(w, Side::Left))),
                                    text_names(W, gens_of(W.descent_mask(w, Side::Right)))};
  };
  const std::vector<std::string> header{"index", "name", "length", "left_descents", "right_descents"};
  switch (f) {
  case Format::Json: {
    out << "{\"type\":" << jstr(W.type_label()) << ",\"order\":" << W.order() << ",\"rank\":" << W.rank()
        << ",\"generators\":" << json_names(W, gens) << ",\"longest\":{\"name\":" << jstr(W.name(W.w0()))
        << ",\"length\":" << W.max_length() << "}";
    if (a.list) {
      std::vector<std::string> items;
      for (std::uint32_t w = 0; w < W.order(); ++w)
        items.push_back("{\"index\":" + std::to_string(w) + ",\"name\":" + jstr(W.name(w)) + ",\"length\":" +
                        std::to_string(W.length(w)) + ",\"left_descents\":" +
                        json_names(W, gens_of(W.descent_mask(w, Side::Left))) + ",\"right_descents\":" +
                        json_names(W, gens_of(W.descent_mask(w, Side::Right))) + "}");
      out << ",\"elements\":" << json_list(items);
    }
    out << "}\n";
    break;
  }
  case Format::Csv:
    out << csv_row(header);
    for (std::uint32_t w = 0; w < W.order(); ++w) out << csv_row(elem_fields(w));
    break;
  case Format::Markdown: {
    std::vector<std::vector<std::string>> body;
    for (std::uint32_t w = 0; w < W.order(); ++w) body.push_back(elem_fields(w));
    out << md_table(header, body);
    break;
  }
  case Format::Text:
    out << "type " << W.type_label() << "\norder " << W.order() << "\nrank " << W.rank() << "\ngenerators "
        << text_names(W, gens) << "\nlongest " << W.name(W.w0()) << " (length " << W.max_length() << ")\n";
    if (a.list)
      for (std::uint32_t w = 0; w < W.order(); ++w) {
        const auto fields = elem_fields(w);
        out << std::setw(6) << fields[0] << "  " << fields[1] << "  len " << fields[2] << "  L " << fields[3] << "  R "
            << fields[4] << "\n";
      }
    break;
  }
  return 0;
}

int cmd_kl(Session& s, const Args& a, std::ostream& out) {
  Workspace& ws = s.ws();
  const CoxeterSystem& W = ws.sys();
  const Format f = s.common().format;
  if (a.table) {
    s.check_table_cap(W.order());
    emit_matrix(out, f, W, "p", all_elements(W), [&](auto x, auto y) { return ws.kl().p(x, y); });
    return 0;
  }
  if (!a.nontrivial_from.empty()) {
    const std::uint32_t x = s.element(a.nontrivial_from, "--nontrivial-from");
    std::vector<PolyRow> rows;
    for (auto& [y, p] : ws.kl().nontrivial_kl_from(x)) rows.push_back({x, y, p});
    emit_rows(out, f, W, "p", rows);
    return 0;
  }
  const std::uint32_t x = s.element(a.from, "--from"), y = s.element(a.to, "--to");
  emit_single(out, f, W, "p", {x, y, ws.kl().p(x, y)});
  return 0;
}

void emit_reference(std::ostream& out, Format f, const std::string& type) {
  const std::vector<int>* list = nullptr;
  if (type == "E7") list = &reference::kE7LongestToIdentity;
  if (type == "D4") list = &reference::kD4LongestToIdentity;
  if (!list) throw UsageError("no reference coefficient list for type " + type);
  const int d = static_cast<int>(list->size()) - 1;
  std::vector<std::string> coeffs;
  for (int c : *list) coeffs.push_back(std::to_string(c));
  switch (f) {
  case Format::Json:
    out << "{\"type\":" << jstr(type) << ",\"x\":\"w0\",\"y\":\"e\",\"source\":\"reference\",\"recomputed\":false,"
        << "\"lowest_exponent\":" << -d << ",\"coefficients\":" << json_list(coeffs) << "}\n";
    break;
  case Format::Csv:
    out << csv_row({"exponent", "coefficient"});
    for (int i = 0; i <= d; ++i) out << csv_row({std::to_string(2 * i - d), coeffs[i]});
    break;
  case Format::Markdown: {
    std::vector<std::vector<std::string>> body;
    for (int i = 0; i <= d; ++i) body.push_back({std::to_string(2 * i - d), coeffs[i]});
    out << md_table({"exponent", "coefficient"}, body);
    break;
  }
  case Format::Text:
    out << "reference r(w0,e) for " << type << " (display only, not recomputed), exponents " << -d << ".." << d
        << " step 2:\n"
        << json_list(coeffs) << "\n";
    break;
  }
}

int cmd_rpoly(Session& s, const Args& a, std::ostream& out) {
  const Format f = s.common().format;
  if (a.reference) {
    emit_reference(out, f, CartanType::parse(s.common().type).label());
    return 0;
  }
  Workspace& ws = s.ws();
  const CoxeterSystem& W = ws.sys();
  if (a.table) {
    s.check_table_cap(W.order());
    emit_matrix(out, f, W, "r", all_elements(W), [&](auto x, auto y) { return ws.r().r(x, y); });
    return 0;
  }
  const std::uint32_t x = s.element(a.from, "--from"), y = s.element(a.to, "--to");
  if (!a.coeffs) {
    emit_single(out, f, W, "r", {x, y, ws.r().r(x, y)});
    return 0;
  }
  const auto list = ws.r().coeff_list(W.element(x), W.element(y));
  const auto bad = ws.r().sign_compatibility(x, y);
  const int d = W.length(x) - W.length(y);
  std::vector<std::string> coeffs, viol;
  for (const auto& c : list) coeffs.push_back(c.str());
  for (int k : bad) viol.push_back(std::to_string(k));
  switch (f) {
  case Format::Json:
    out << "{\"x\":" << jstr(W.name(x)) << ",\"y\":" << jstr(W.name(y)) << ",\"lowest_exponent\":" << -d
        << ",\"coefficients\":" << json_list(coeffs) << ",\"sign_violations\":" << json_list(viol)
        << ",\"delorme\":" << (ws.r().delorme_check(x, y) ? "true" : "false") << "}\n";
    break;
  case Format::Csv:
    out << csv_row({"exponent", "coefficient", "sign_ok"});
    for (std::size_t i = 0; i < list.size(); ++i) {
      const int k = 2 * static_cast<int>(i) - d;
      out << csv_row({std::to_string(k), coeffs[i], std::find(bad.begin(), bad.end(), k) == bad.end() ? "1" : "0"});
    }
    break;
  case Format::Markdown: {
    std::vector<std::vector<std::string>> body;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const int k = 2 * static_cast<int>(i) - d;
      body.push_back({std::to_string(k), coeffs[i], std::find(bad.begin(), bad.end(), k) == bad.end() ? "yes" : "no"});
    }
    out << md_table({"exponent", "coefficient", "sign ok"}, body);
    break;
  }
  case Format::Text:
    out << "r(" << W.name(x) << "," << W.name(y) << ") coefficients at " << -d << ".." << d << ": "
        << json_list(coeffs) << "\nsign violations: {" << [&] {
             std::string t;
             for (std::size_t i = 0; i < viol.size(); ++i) t += (i ? "," : "") + viol[i];
             return t;
           }() << "}\ndelorme: "
        << (ws.r().delorme_check(x, y) ? "ok" : "FAILED") << "\n";
    break;
  }
  return 0;
}

int cmd_parabolic(Session& s, const Args& a, std::ostream& out, bool singular) {
  Workspace& ws = s.ws();
  const CoxeterSystem& W = ws.sys();
  const GenMask J = parse_subset(W, a.parabolic);
  const std::string label = singular ? "sr" : "pr";
  std::unique_ptr<SingularRTable> st;
  std::unique_ptr<ParabolicRTable> pt;
  if (singular) st = std::make_unique<SingularRTable>(ws.r(), J);
  else pt = std::make_unique<ParabolicRTable>(ws.sys_ptr(), J);
  auto get = [&](std::uint32_t x, std::uint32_t y) { return singular ? st->sr(x, y) : pt->pr(x, y); };
  const auto& reps = singular ? st->reps() : pt->reps();
  if (a.table || a.from.empty()) {
    s.check_table_cap(reps.size());
    emit_matrix(out, s.common().format, W, label, reps, get);
    return 0;
  }
  const std::uint32_t x = s.element(a.from, "--from"), y = s.element(a.to, "--to");
  emit_single(out, s.common().format, W, label, {x, y, get(x, y)});
  return 0;
}

int cmd_bound(Session& s, const Args& a, std::ostream& out) {
  Workspace& ws = s.ws();
  const CoxeterSystem& W = ws.sys();
  const std::uint32_t x = s.element(a.from, "--from"), y = s.element(a.to, "--to");
  if (!W.bruhat_leq(y, x)) throw UsageError("bound requires --from to be above --to in Bruhat order");
  const BiPoly poly = kl_bound_poly(ws, y, x);
  const ExtGrid grid = hom_grid(ws, y, x);
  const TriangleRegion region = triangle_region(W, x, y);
  struct Cell {
    int a, b;
    Integer kl, refined;
    std::string status;
  };
  std::vector<Cell> cells;
  for (const auto& p : region.interior()) {
    Cell c{p.a, p.b, grid.at(p.a, p.b), 0, ""};
    c.refined = c.kl == 0 ? Integer(0) : refined_bound(ws, x, y, p.a, p.b);
    c.status = c.kl == 0 || c.refined == 0 ? "0" : "unknown";
    cells.push_back(c);
  }
  const Format f = s.common().format;
  switch (f) {
  case Format::Json: {
    std::vector<std::string> items;
    for (const auto& c : cells)
      items.push_back("{\"a\":" + std::to_string(c.a) + ",\"b\":" + std::to_string(c.b) + ",\"kl_bound\":" +
                      c.kl.str() + ",\"refined_bound\":" + c.refined.str() + ",\"status\":" + jstr(c.status) + "}");
    out << "{\"source\":" << jstr(W.name(x)) << ",\"target\":" << jstr(W.name(y)) << ",\"d\":" << region.d
        << ",\"bound\":" << to_json(poly) << ",\"interior\":" << json_list(items) << "}\n";
    break;
  }
  case Format::Csv:
    out << csv_row({"a", "b", "kl_bound", "refined_bound", "status"});
    for (const auto& c : cells)
      out << csv_row({std::to_string(c.a), std::to_string(c.b), c.kl.str(), c.refined.str(), c.status});
    break;
  case Format::Markdown: {
    std::vector<std::vector<std::string>> body;
    for (const auto& c : cells) body.push_back({std::to_string(c.a), std::to_string(c.b), c.kl.str(), c.refined.str(), c.status});
    out << "bound(u,v) = " << poly.to_string() << "\n\n" << md_table({"a", "b", "kl bound", "refined bound", "status"}, body);
    break;
  }
  case Format::Text:
    out << "source " << W.name(x) << ", target " << W.name(y) << ", d = " << region.d << "\nbound(u,v) = "
        << poly.to_string() << "\ninterior cells (a, b): kl-bound refined-bound status\n";
    for (const auto& c : cells)
      out << "  (" << c.a << ", " << c.b << "): " << c.kl << " " << c.refined << " " << c.status << "\n";
    break;
  }
  return 0;
}

int cmd_grid(Session& s, const Args& a, std::ostream& out) {
  Workspace& ws = s.ws();
  const CoxeterSystem& W = ws.sys();
  const std::uint32_t x = s.element(a.from, "--from"), y = s.element(a.to, "--to");
  if (!W.bruhat_leq(y, x)) throw UsageError("grid requires --from to be above --to in Bruhat order");
  ExtGrid g;
  if (a.kind == "hom") g = hom_grid(ws, y, x);
  else if (a.kind == "expected") g = expected_dims(ws, x, y);
  else throw UsageError("--kind must be hom or expected");
  const int d = W.length(x) - W.length(y);
  const Format f = s.common().format;
  switch (f) {
  case Format::Json: {
    std::vector<std::string> cells, untrusted;
    for (const auto& [ab, c] : g.cells)
      cells.push_back("[" + std::to_string(ab.first) + "," + std::to_string(ab.second) + "," + c.str() + "]");
    for (const auto& [ga, gb] : g.untrusted) untrusted.push_back("[" + std::to_string(ga) + "," + std::to_string(gb) + "]");
    out << "{\"source\":" << jstr(W.name(x)) << ",\"target\":" << jstr(W.name(y)) << ",\"meaning\":"
        << jstr(to_string(g.meaning)) << ",\"cells\":" << json_list(cells) << ",\"untrusted\":" << json_list(untrusted)
        << ",\"generating_function\":" << to_json(g.to_bipoly()) << "}\n";
    break;
  }
  case Format::Csv:
    out << csv_row({"a", "b", "value"});
    for (const auto& [ab, c] : g.cells) out << csv_row({std::to_string(ab.first), std::to_string(ab.second), c.str()});
    break;
  case Format::Markdown:
  case Format::Text: {
    std::vector<std::string> header{"a \\ b"};
    for (int b = -d; b <= d; ++b) header.push_back(std::to_string(b));
    std::vector<std::vector<std::string>> body;
    for (int ga = 0; ga <= d; ++ga) {
      std::vector<std::string> row{std::to_string(ga)};
      for (int b = -d; b <= d; ++b) {
        const Integer v = g.at(ga, b);
        row.push_back(v == 0 ? "." : v.str());
      }
      body.push_back(std::move(row));
    }
    if (f == Format::Markdown) {
      out << md_table(header, body);
    } else {
      out << to_string(g.meaning) << " grid, source " << W.name(x) << ", target " << W.name(y) << "\n";
      for (const auto& h : header) out << std::setw(6) << h;
      out << "\n";
      for (const auto& row : body) {
        for (const auto& c : row) out << std::setw(6) << c;
        out << "\n";
      }
      if (!g.trusted()) out << "untrusted cells: " << g.untrusted.size() << "\n";
    }
    break;
  }
  }
  return 0;
}

int cmd_triangle(Session& s, const Args& a, std::ostream& out) {
  TriangleRegion t;
  std::string head;
  if (!a.gap.empty()) {
    int d = 0;
    try {
      d = std::stoi(a.gap);
    } catch (const std::exception&) {
      throw UsageError("--gap must be an integer");
    }
    t = triangle_region_for_gap(d);
    head = "gap " + std::to_string(d);
  } else {
    const CoxeterSystem& W = s.ws().sys();
    const std::uint32_t x = s.element(a.from, "--from"), y = s.element(a.to, "--to");
    t = triangle_region(W, x, y);
    head = "pair (" + W.name(x) + "," + W.name(y) + "), gap " + std::to_string(t.d);
  }
  switch (s.common().format) {
  case Format::Json: {
    std::vector<std::string> items;
    for (const auto& p : t.points)
      items.push_back("{\"a\":" + std::to_string(p.a) + ",\"b\":" + std::to_string(p.b) + ",\"kind\":" +
                      jstr(to_string(p.kind)) + "}");
    out << "{\"d\":" << t.d << ",\"points\":" << json_list(items) << "}\n";
    break;
  }
  case Format::Csv:
    out << csv_row({"a", "b", "kind"});
    for (const auto& p : t.points) out << csv_row({std::to_string(p.a), std::to_string(p.b), to_string(p.kind)});
    break;
  case Format::Markdown: {
    std::vector<std::vector<std::string>> body;
    for (const auto& p : t.points) body.push_back({std::to_string(p.a), std::to_string(p.b), to_string(p.kind)});
    out << md_table({"a", "b", "kind"}, body);
    break;
  }
  case Format::Text:
    out << "triangle region for " << head << ": " << t.points.size() << " points\n";
    for (const auto& p : t.points) out << "  (" << p.a << ", " << p.b << ") " << to_string(p.kind) << "\n";
    break;
  }
  return 0;
}

std::string exps_text(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

int cmd_scan(Session& s, const Args& a, std::ostream& out) {
  Workspace& ws = s.ws();
  const CoxeterSystem& W = ws.sys();
  const Format f = s.common().format;
  if (!a.from.empty() || !a.to.empty()) {
    const std::uint32_t x = s.element(a.from, "--from"), y = s.element(a.to, "--to");
    const Certificate c = r_determined(ws, x, y);
    const std::string witness = c.witness ? "(" + W.name(c.witness->x) + "," + W.name(c.witness->y) + ")" : "";
    switch (f) {
    case Format::Json: {
      std::vector<std::string> det, viol;
      for (int k : c.determined_exponents) det.push_back(std::to_string(k));
      for (int k : c.sign_violations) viol.push_back(std::to_string(k));
      out << "{\"x\":" << jstr(W.name(x)) << ",\"y\":" << jstr(W.name(y)) << ",\"certificate\":"
          << jstr(to_string(c.kind)) << ",\"determined_exponents\":" << json_list(det)
          << ",\"sign_violations\":" << json_list(viol) << ",\"witness\":" << (witness.empty() ? "null" : jstr(witness))
          << "}\n";
      break;
    }
    case Format::Csv:
      out << csv_row({"x", "y", "certificate", "determined_exponents", "sign_violations"})
          << csv_row({W.name(x), W.name(y), to_string(c.kind), exps_text(c.determined_exponents), exps_text(c.sign_violations)});
      break;
    case Format::Markdown:
      out << md_table({"x", "y", "certificate", "determined exponents", "sign violations"},
                      {{W.name(x), W.name(y), to_string(c.kind), exps_text(c.determined_exponents), exps_text(c.sign_violations)}});
      break;
    case Format::Text:
      out << "pair (" << W.name(x) << "," << W.name(y) << "): " << to_string(c.kind)
          << (witness.empty() ? "" : " witness " + witness) << "\ndetermined exponents " << exps_text(c.determined_exponents)
          << "\nsign violations " << exps_text(c.sign_violations) << "\n";
      break;
    }
    return 0;
  }
  const AllExpectedReport rep = all_expected_predicate(ws, s.common().threads);
  auto pair_name = [&](const std::pair<std::uint32_t, std::uint32_t>& p) {
    return "(" + W.name(p.first) + "," + W.name(p.second) + ")";
  };
  switch (f) {
  case Format::Json: {
    std::vector<std::string> counts, viol, und;
    for (const auto& [k, n] : rep.counts) counts.push_back(jstr(to_string(k)) + ":" + std::to_string(n));
    for (const auto& p : rep.violating) viol.push_back("[" + jstr(W.name(p.first)) + "," + jstr(W.name(p.second)) + "]");
    for (const auto& p : rep.undetermined) und.push_back("[" + jstr(W.name(p.first)) + "," + jstr(W.name(p.second)) + "]");
    std::string cmap = "{";
    for (std::size_t i = 0; i < counts.size(); ++i) cmap += (i ? "," : "") + counts[i];
    cmap += "}";
    out << "{\"type\":" << jstr(W.type_label()) << ",\"pairs\":" << rep.pairs << ",\"consistent\":"
        << (rep.consistent ? "true" : "false") << ",\"theorem_backed\":" << (rep.theorem_backed ? "true" : "false")
        << ",\"citation\":" << jstr(rep.citation) << ",\"certificates\":" << cmap << ",\"violating\":" << json_list(viol)
        << ",\"undetermined\":" << json_list(und) << "}\n";
    break;
  }
  case Format::Csv:
    out << csv_row({"x", "y", "status"});
    for (const auto& p : rep.violating) out << csv_row({W.name(p.first), W.name(p.second), "sign-violation"});
    for (const auto& p : rep.undetermined) out << csv_row({W.name(p.first), W.name(p.second), "undetermined"});
    break;
  case Format::Markdown: {
    std::vector<std::vector<std::string>> body;
    for (const auto& [k, n] : rep.counts) body.push_back({to_string(k), std::to_string(n)});
    out << md_table({"certificate", "pairs"}, body);
    break;
  }
  case Format::Text:
    out << "type " << W.type_label() << ": " << rep.pairs << " pairs\n";
    for (const auto& [k, n] : rep.counts) out << "  " << to_string(k) << ": " << n << "\n";
    out << "sign violations: " << rep.violating.size() << "\nundetermined: " << rep.undetermined.size() << "\n";
    if (a.list) {
      for (const auto& p : rep.violating) out << "  violating " << pair_name(p) << "\n";
      for (const auto& p : rep.undetermined) out << "  undetermined " << pair_name(p) << "\n";
    }
    out << (rep.consistent ? "consistent with all extensions expected" : "not consistent with all extensions expected");
    if (rep.theorem_backed) out << " (theorem backed)";
    if (!rep.citation.empty()) out << ": " << rep.citation;
    out << "\n";
    break;
  }
  return 0;
}

int cmd_predict(Session& s, const Args& a, std::ostream& out) {
  Workspace& ws = s.ws();
  const CoxeterSystem& W = ws.sys();
  std::vector<std::uint32_t> targets;
  if (a.all) targets = all_elements(W);
  else targets.push_back(s.element(a.w, "--w"));
  std::vector<PredictionRecord> recs;
  for (auto w : targets)
    for (auto& r : predict_ext1(ws, w)) recs.push_back(r);
  const std::vector<std::string> header{"w", "u", "i", "j", "chain_position", "degree", "shift", "expected_shift",
                                        "expected", "source", "expected_part_dim"};
  auto fields = [&](const PredictionRecord& r) {
    return std::vector<std::string>{W.name(r.w), W.name(r.u), std::to_string(r.i), std::to_string(r.j),
                                    std::to_string(r.chain_position), std::to_string(r.degree), std::to_string(r.shift),
                                    std::to_string(r.expected_shift), r.expected ? "expected" : "additional",
                                    W.name(r.source), r.expected_part_dim.str()};
  };
  switch (s.common().format) {
  case Format::Json: {
    std::vector<std::string> items;
    for (const auto& r : recs) {
      const auto v = fields(r);
      items.push_back("{\"w\":" + jstr(v[0]) + ",\"u\":" + jstr(v[1]) + ",\"i\":" + v[2] + ",\"j\":" + v[3] +
                      ",\"chain_position\":" + v[4] + ",\"degree\":" + v[5] + ",\"shift\":" + v[6] +
                      ",\"expected_shift\":" + v[7] + ",\"expected\":" + (r.expected ? "true" : "false") +
                      ",\"source\":" + jstr(v[9]) + ",\"expected_part_dim\":" + v[10] + "}");
    }
    out << "{\"type\":" << jstr(W.type_label()) << ",\"records\":" << json_list(items) << "}\n";
    break;
  }
  case Format::Csv:
    out << csv_row(header);
    for (const auto& r : recs) out << csv_row(fields(r));
    break;
  case Format::Markdown: {
    std::vector<std::vector<std::string>> body;
    for (const auto& r : recs) body.push_back(fields(r));
    out << md_table(header, body);
    break;
  }
  case Format::Text:
    out << recs.size() << " record(s)\n";
    for (const auto& r : recs)
      out << "w " << W.name(r.w) << ": witness " << W.name(r.u) << " (i,j)=(" << r.i << "," << r.j << ") position "
          << r.chain_position << ", degree " << r.degree << ", shift " << r.shift << " (expected " << r.expected_shift
          << ") " << (r.expected ? "expected" : "additional") << ", source " << W.name(r.source)
          << ", expected part dim " << r.expected_part_dim << "\n";
    break;
  }
  return 0;
}

int cmd_classes(Session& s, const Args& a, std::ostream& out) {
  Workspace& ws = s.ws();
  const CoxeterSystem& W = ws.sys();
  const EquivPartition& part = ws.partition();
  const Format f = s.common().format;
  std::vector<std::uint32_t> shown;
  if (!a.from.empty() || !a.to.empty()) shown.push_back(part.class_of(s.element(a.from, "--from"), s.element(a.to, "--to")));
  else if (a.list)
    for (std::uint32_t c = 0; c < part.class_count(); ++c) shown.push_back(c);
  auto witness = [&](std::uint32_t c) {
    if (auto w = part.boolean_witness(c)) return "boolean (" + W.name(w->x) + "," + W.name(w->y) + ")";
    if (auto w = part.coboolean_witness(c)) return "coboolean (" + W.name(w->x) + "," + W.name(w->y) + ")";
    return std::string("none");
  };
  switch (f) {
  case Format::Json: {
    std::vector<std::string> items;
    for (auto c : shown) {
      std::vector<std::string> mem;
      for (const auto& p : part.members(c)) mem.push_back("[" + jstr(W.name(p.x)) + "," + jstr(W.name(p.y)) + "]");
      items.push_back("{\"class\":" + std::to_string(c) + ",\"witness\":" + jstr(witness(c)) +
                      ",\"r\":" + to_json(ws.r().r(part.members(c)[0].x, part.members(c)[0].y)) +
                      ",\"members\":" + json_list(mem) + "}");
    }
    out << "{\"type\":" << jstr(W.type_label()) << ",\"pairs\":" << part.pair_count()
        << ",\"classes\":" << part.class_count() << ",\"shown\":" << json_list(items) << "}\n";
    break;
  }
  case Format::Csv:
    out << csv_row({"class", "x", "y"});
    for (auto c : shown)
      for (const auto& p : part.members(c)) out << csv_row({std::to_string(c), W.name(p.x), W.name(p.y)});
    break;
  case Format::Markdown: {
    std::vector<std::vector<std::string>> body;
    for (auto c : shown) body.push_back({std::to_string(c), std::to_string(part.members(c).size()), witness(c)});
    out << md_table({"class", "size", "witness"}, body);
    break;
  }
  case Format::Text: {
    out << "type " << W.type_label() << ": " << part.pair_count() << " pairs in " << part.class_count() << " classes\n";
    const auto sizes = part.class_sizes();
    std::map<std::size_t, std::size_t, std::greater<>> hist;
    for (auto n : sizes) ++hist[n];
    out << "class sizes:";
    for (const auto& [n, k] : hist) out << " " << n << "x" << k;
    out << "\n";
    for (auto c : shown) {
      out << "class " << c << " (" << part.members(c).size() << " pairs, witness " << witness(c) << "):";
      for (const auto& p : part.members(c)) out << " (" << W.name(p.x) << "," << W.name(p.y) << ")";
      out << "\n";
    }
    break;
  }
  }
  return 0;
}

int cmd_verify(Session& s, const Args& a, std::ostream& out) {
  const Format f = s.common().format;
  if (a.list_suites) {
    for (const auto& n : suite_names()) out << n << "\n";
    return 0;
  }
  std::vector<std::string> names;
  for (const auto& n : a.suites) {
    if (n == "all") names.insert(names.end(), suite_names().begin(), suite_names().end());
    else if (std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end())
      throw UsageError("unknown verify suite '" + n + "'");
    else names.push_back(n);
  }
  if (names.empty()) throw UsageError("verify requires --suite (or --list-suites)");
  std::vector<SuiteReport> reports;
  for (const auto& n : names) reports.push_back(run_suite(n, s.pool(), s.common().threads));
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const SuiteReport& r) { return r.passed(); });
  const std::uint64_t largest = s.pool().largest_order();
  switch (f) {
  case Format::Json: {
    std::vector<std::string> items;
    for (const auto& r : reports) {
      std::vector<std::string> as;
      for (const auto& x : r.assertions)
        as.push_back("{\"name\":" + jstr(x.name) + ",\"pass\":" + (x.pass ? "true" : "false") + ",\"detail\":" +
                     jstr(x.detail) + "}");
      items.push_back("{\"suite\":" + jstr(r.suite) + ",\"pass\":" + (r.passed() ? "true" : "false") +
                      ",\"assertions\":" + json_list(as) + "}");
    }
    out << "{\"pass\":" << (ok ? "true" : "false") << ",\"largest_group_order\":" << largest
        << ",\"element_cap\":" << s.pool().options().element_cap << ",\"suites\":" << json_list(items) << "}\n";
    break;
  }
  case Format::Csv:
    out << csv_row({"suite", "assertion", "pass", "detail"});
    for (const auto& r : reports)
      for (const auto& x : r.assertions) out << csv_row({r.suite, x.name, x.pass ? "1" : "0", x.detail});
    break;
  case Format::Markdown: {
    std::vector<std::vector<std::string>> body;
    for (const auto& r : reports)
      for (const auto& x : r.assertions) body.push_back({r.suite, x.name, x.pass ? "PASS" : "FAIL", x.detail});
    out << md_table({"suite", "assertion", "result", "detail"}, body);
    break;
  }
  case Format::Text:
    for (const auto& r : reports) {
      out << "suite " << r.suite << "\n";
      for (const auto& x : r.assertions)
        out << "  " << (x.pass ? "PASS" : "FAIL") << " " << x.name << (x.detail.empty() ? "" : ": " + x.detail) << "\n";
      out << "  " << (r.passed() ? "PASS" : "FAIL") << " (" << std::fixed << std::setprecision(2) << r.seconds
          << " s)\n";
    }
    out << "largest group enumerated: " << largest << " elements (cap " << s.pool().options().element_cap << ")\n"
        << (ok ? "all suites passed" : "verification FAILED") << "\n";
    break;
  }
  return ok ? 0 : 1;
}

void add_common(CLI::App* sub, Common& c, bool needs_type) {
  auto* t = sub->add_option("--type", c.type, "Cartan type, e.g. A3, B3, D4");
  if (needs_type) t->required();
  const std::map<std::string, Format> formats{
      {"text", Format::Text}, {"csv", Format::Csv}, {"json", Format::Json}, {"markdown", Format::Markdown}};
  sub->add_option("--format", c.format, "Output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  sub->add_option("--output,-o", c.output, "Write output to a file instead of stdout");
  sub->add_option("--threads", c.threads, "Worker threads for pair scans")->check(CLI::Range(1U, 1024U));
  sub->add_option("--cache-dir", c.cache_dir, std::string("Snapshot directory (default: $") + kCacheDirEnv + ")");
  sub->add_option("--cap", c.cap, "Largest group order that may be enumerated")->check(CLI::PositiveNumber);
  sub->add_option("--table-cap", c.table_cap, "Largest element set for full-table output")->check(CLI::PositiveNumber);
}

void add_pair(CLI::App* sub, Args& a) {
  sub->add_option("--from", a.from, "First (upper) element x");
  sub->add_option("--to", a.to, "Second (lower) element y");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kazhdan-Lusztig and R-polynomial toolkit for graded extensions between Verma modules", "klext"};
  app.require_subcommand(1);
  Args a;

  auto* group = app.add_subcommand("group", "Group summary and element listing");
  add_common(group, a.common, true);
  group->add_flag("--list", a.list, "List every element");

  auto* kl = app.add_subcommand("kl", "Kazhdan-Lusztig polynomials p(x,y), x <= y");
  add_common(kl, a.common, true);
  add_pair(kl, a);
  kl->add_option("--nontrivial-from", a.nontrivial_from, "All y >= x with nontrivial p(x,y)");
  kl->add_flag("--table", a.table, "Full table");

  auto* rpoly = app.add_subcommand("rpoly", "R-polynomials r(x,y), x >= y");
  add_common(rpoly, a.common, true);
  add_pair(rpoly, a);
  rpoly->add_flag("--table", a.table, "Full table");
  rpoly->add_flag("--coeffs", a.coeffs, "Coefficient list with sign check");
  rpoly->add_flag("--reference", a.reference, "Show the stored reference list for (w0,e) without computing");

  auto* prpoly = app.add_subcommand("prpoly", "Parabolic R-polynomials on W_J\\W representatives");
  add_common(prpoly, a.common, true);
  add_pair(prpoly, a);
  prpoly->add_option("--parabolic,-J", a.parabolic, "Generators of J, comma separated")->required();
  prpoly->add_flag("--table", a.table, "Full table over representatives");

  auto* srpoly = app.add_subcommand("srpoly", "Singular R-polynomials on W/W_J representatives");
  add_common(srpoly, a.common, true);
  add_pair(srpoly, a);
  srpoly->add_option("--parabolic,-J", a.parabolic, "Generators of J, comma separated")->required();
  srpoly->add_flag("--table", a.table, "Full table over representatives");

  auto* bound = app.add_subcommand("bound", "KL-product bound and refined bounds on interior cells");
  add_common(bound, a.common, true);
  add_pair(bound, a);

  auto* grid = app.add_subcommand("grid", "Bigraded grid for a pair (hom grid or expected dimensions)");
  add_common(grid, a.common, true);
  add_pair(grid, a);
  grid->add_option("--kind", a.kind, "hom or expected")->check(CLI::IsMember({"hom", "expected"}));

  auto* triangle = app.add_subcommand("triangle", "Triangle region of possible extensions");
  add_common(triangle, a.common, false);
  add_pair(triangle, a);
  triangle->add_option("--gap", a.gap, "Length gap d (no group needed)");

  auto* scan = app.add_subcommand("scan", "Certificates and the all-expected predicate");
  add_common(scan, a.common, true);
  add_pair(scan, a);
  scan->add_flag("--list", a.list, "List violating and undetermined pairs");

  auto* predict = app.add_subcommand("predict", "First-extension predictor in type A");
  add_common(predict, a.common, true);
  predict->add_option("--w", a.w, "Element w");
  predict->add_flag("--all", a.all, "Every element of the group");

  auto* classes = app.add_subcommand("classes", "Equivalence classes of Bruhat pairs");
  add_common(classes, a.common, true);
  add_pair(classes, a);
  classes->add_flag("--list", a.list, "List every class");

  auto* verify = app.add_subcommand("verify", "Reproduce the reference tables");
  add_common(verify, a.common, false);
  verify->add_option("--suite", a.suites, "Suite name or 'all' (repeatable)");
  verify->add_flag("--list-suites", a.list_suites, "List suite names");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  std::ostringstream buffer;
  int code = 0;
  try {
    Session s(a.common);
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "group") code = cmd_group(s, a, buffer);
    else if (name == "kl") code = cmd_kl(s, a, buffer);
    else if (name == "rpoly") code = cmd_rpoly(s, a, buffer);
    else if (name == "prpoly") code = cmd_parabolic(s, a, buffer, false);
    else if (name == "srpoly") code = cmd_parabolic(s, a, buffer, true);
    else if (name == "bound") code = cmd_bound(s, a, buffer);
    else if (name == "grid") code = cmd_grid(s, a, buffer);
    else if (name == "triangle") code = cmd_triangle(s, a, buffer);
    else if (name == "scan") code = cmd_scan(s, a, buffer);
    else if (name == "predict") code = cmd_predict(s, a, buffer);
    else if (name == "classes") code = cmd_classes(s, a, buffer);
    else if (name == "verify") code = cmd_verify(s, a, buffer);
    s.finish(err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CoxeterError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (a.common.output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(a.common.output, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot write " << a.common.output << "\n";
      return 2;
    }
    file << buffer.str();
  }
  return code;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

} // namespace klext::cli
