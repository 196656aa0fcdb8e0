#include "trimcx/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "trimcx/detfacet.hpp"
#include "trimcx/oracle.hpp"

namespace trimcx {

namespace {

using nlohmann::json;

// Usage problems that survive argument parsing.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kMaxPfaffianSize = 13;
inline constexpr int kMaxMinorEntries = 48;

struct Config {
  std::string preset = "pfaffian";
  std::string custom;
  int size = 5;
  int rows = 2, cols = 4;
  std::string remove;
  std::string remove_sets;
  std::string a_ideal;
  std::string field = "gf:32003";
  std::optional<std::uint64_t> seed;
  int dmax = -1;
  std::string json_path, csv_path;
  bool inject_fault = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (cur.find_first_not_of(" \t") != std::string::npos) out.push_back(cur);
  return out;
}

std::vector<IndexSet> sigmas_of(const Config& c, int n) {
  if (c.remove_sets.empty()) {
    IndexSet s;
    for (int k = 1; k <= n; ++k) s.push_back(k);
    return {s};
  }
  return parse_index_sets(c.remove_sets);
}

std::vector<std::size_t> removed_columns(const Config& c, std::size_t ngens) {
  std::string spec = c.remove.empty() ? "1" : c.remove;
  std::vector<std::size_t> cols;
  for (int k : parse_index_list(spec)) {
    if (k < 1 || static_cast<std::size_t>(k) > ngens)
      throw UsageError("--remove index " + std::to_string(k) + " outside 1.." + std::to_string(ngens));
    cols.push_back(static_cast<std::size_t>(k - 1));
  }
  return cols;
}

struct Pipeline {
  RingPtr ring;
  GradedFreeComplex f;
  std::vector<std::size_t> removed;
  std::vector<std::vector<Polynomial>> a_override;
  std::optional<BettiTable> closed;
};

Pipeline build_input(const Config& c) {
  Pipeline p;
  if (!c.custom.empty() || c.preset == "custom") {
    if (c.custom.empty()) throw UsageError("--preset custom needs --custom <file>");
    std::ifstream in(c.custom);
    if (!in) throw UsageError("cannot open " + c.custom);
    auto x = read_skew(in);
    if (x.size() % 2 == 0 || x.size() < 3) throw UsageError("custom skew matrix must have odd size >= 3");
    p.f = pfaffian_resolution(x);
    p.ring = p.f.ring();
    p.removed = removed_columns(c, p.f.module(1).rank());
  } else if (c.preset == "pfaffian") {
    if (c.size < 3 || c.size % 2 == 0) throw UsageError("--size must be odd and at least 3");
    if (c.size > kMaxPfaffianSize)
      throw SizeGuardError("pfaffian pipeline limited to --size <= " + std::to_string(kMaxPfaffianSize));
    p.f = pfaffian_resolution(generic_skew(c.size, Field::parse(c.field)));
    p.ring = p.f.ring();
    p.removed = removed_columns(c, p.f.module(1).rank());
    if (p.removed.size() == 1 && c.size >= 5 && c.a_ideal.empty()) p.closed = betti_pfaffian_trim(c.size);
  } else if (c.preset == "minors") {
    if (c.rows < 1 || c.rows > c.cols) throw UsageError("need 1 <= --rows <= --cols");
    if (c.rows * c.cols > kMaxMinorEntries)
      throw SizeGuardError("minors pipeline limited to rows*cols <= " + std::to_string(kMaxMinorEntries));
    auto m = generic_matrix(c.rows, c.cols, Field::parse(c.field));
    auto sigmas = sigmas_of(c, c.rows);
    check_sigmas(c.rows, c.cols, sigmas);
    p.f = eagon_northcott(m);
    p.ring = p.f.ring();
    if (p.f.length() < 2) throw UsageError("a square matrix has a single minor; nothing to trim");
    for (const auto& s : sigmas) p.removed.push_back(subset_rank(s, c.cols));
    if (c.a_ideal.empty()) p.closed = betti_multi_minor(c.rows, c.cols, sigmas);
  } else {
    throw UsageError("unknown preset '" + c.preset + "'");
  }
  if (!c.a_ideal.empty()) {
    std::vector<Polynomial> a;
    for (const auto& s : split(c.a_ideal, ',')) a.push_back(Polynomial::parse(s, p.ring));
    p.a_override.assign(p.removed.size(), a);
  }
  if (c.inject_fault) {
    // Negative control: perturb d_2 homogeneously so that d_1 d_2 != 0.
    PolyMatrix d2 = p.f.differential(2);
    int deg = p.f.module(2).degrees[0] - p.f.module(1).degrees[0];
    Polynomial bump = Polynomial::constant(p.ring, 1);
    for (int k = 0; k < deg; ++k) bump *= Polynomial::variable(p.ring, 0);
    d2(0, 0) += bump;
    p.f.set_differential(2, d2);
  }
  return p;
}

struct Run {
  Pipeline in;
  TrimSetup setup;
  LiftFamily lifts;
  GradedFreeComplex cone;
  BettiTable betti;
};

Run run_pipeline(const Config& c, Pipeline in) {
  Run r{std::move(in), {}, {}, {}, {}};
  r.setup = make_trim_setup(r.in.f, r.in.removed, r.in.a_override);
  r.lifts = lift_q(r.setup, LiftOptions{c.seed});
  r.cone = trimming_complex(r.setup, r.lifts);
  bool minimal = is_minimal(r.setup.f);
  for (const auto& g : r.setup.g) minimal = minimal && is_minimal(g);
  r.betti = minimal ? trimmed_betti(r.setup, r.lifts) : betti_from_resolution(r.cone);
  return r;
}

void emit_table(const Config& c, const BettiDocument& doc, std::ostream& out) {
  std::string js = betti_to_json(doc);
  out << js << "\n";
  if (!c.json_path.empty()) {
    std::ofstream f(c.json_path);
    if (!f) throw UsageError("cannot write " + c.json_path);
    f << js << "\n";
  }
  if (!c.csv_path.empty()) {
    std::ofstream f(c.csv_path);
    if (!f) throw UsageError("cannot write " + c.csv_path);
    f << betti_to_csv(doc.table);
  }
}

int max_degree(const std::vector<Polynomial>& gens) {
  int d = 0;
  for (const auto& g : gens)
    if (!g.is_zero()) d = std::max(d, *g.homogeneous_degree());
  return d;
}

int cmd_betti(const Config& c, std::ostream& out) {
  auto r = run_pipeline(c, build_input(c));
  emit_table(c, {r.betti, r.in.ring->field().to_string(), r.in.ring->nvars()}, out);
  return kExitOk;
}

int cmd_closed_form(const Config& c, std::ostream& out) {
  BettiDocument doc;
  doc.field = Field::parse(c.field).to_string();
  if (c.preset == "pfaffian") {
    if (c.size < 5 || c.size % 2 == 0) throw UsageError("closed-form pfaffian needs odd --size >= 5");
    doc.table = betti_pfaffian_trim(c.size);
    doc.vars = static_cast<std::size_t>(c.size) * (c.size - 1) / 2;
  } else if (c.preset == "minors") {
    if (c.rows < 1 || c.rows > c.cols) throw UsageError("need 1 <= --rows <= --cols");
    doc.table = betti_multi_minor(c.rows, c.cols, sigmas_of(c, c.rows));
    doc.vars = static_cast<std::size_t>(c.rows) * c.cols;
  } else {
    throw UsageError("closed-form supports --preset pfaffian or minors");
  }
  emit_table(c, doc, out);
  return kExitOk;
}

int cmd_verify(const Config& c, std::ostream& out) {
  Pipeline in = build_input(c);
  json checks = json::array();
  bool ok = true;
  auto record = [&](const std::string& name, bool pass, json extra = json::object()) {
    extra["name"] = name;
    extra["pass"] = pass;
    checks.push_back(extra);
    ok = ok && pass;
  };
  json report;
  report["ring"] = {{"field", in.ring->field().to_string()}, {"vars", in.ring->nvars()}};
  bool f_ok = verify_complex(in.f);
  record("complex_F", f_ok);
  if (!f_ok) {
    report["checks"] = checks;
    report["ok"] = false;
    out << report.dump(2) << "\n";
    return kExitVerify;
  }
  std::optional<BettiTable> closed = in.closed;
  Run r = run_pipeline(c, std::move(in));
  bool g_ok = true;
  for (const auto& g : r.setup.g) g_ok = g_ok && verify_complex(g);
  record("complex_G", g_ok);
  record("lifts", verify_lifts(r.setup, r.lifts));
  record("complex_cone", verify_complex(r.cone));
  std::uint64_t seed = c.seed.value_or(1);
  record("acyclicity_seed_a", rank_acyclicity_evidence(r.cone, seed));
  record("acyclicity_seed_b", rank_acyclicity_evidence(r.cone, seed + 7919));
  auto jgens = trimmed_ideal_generators(r.setup);
  int dmax = c.dmax >= 0 ? c.dmax : max_degree(jgens) + 3;
  record("h0_ideal", ideal_equal_upto(h0_generators(r.cone), jgens, dmax), {{"dmax", dmax}});
  record("rank_formula_vs_cone", r.betti == betti_from_resolution(r.cone));
  if (closed) record("closed_form", r.betti == *closed);
  int imax = 0, jmax = 0;
  for (const auto& [k, v] : r.betti) {
    imax = std::max(imax, k.first);
    jmax = std::max(jmax, k.second);
  }
  if (r.in.ring->nvars() <= kKoszulMaxVariables && jmax + 1 <= kKoszulMaxDegree)
    record("koszul_oracle", koszul_betti(jgens, imax, jmax + 1) == r.betti, {{"dmax", jmax + 1}});
  for (std::size_t i = 0; i < r.setup.t(); ++i) {
    auto rep = colon_contained_upto(ideal_without(r.setup.f, r.setup.summands[i]),
                                    r.setup.f.differential(1)(0, r.setup.summands[i]), r.setup.a[i], dmax);
    record("colon_in_a_" + std::to_string(r.setup.summands[i] + 1), rep.contained,
           {{"checked_through", rep.checked_through}, {"complete", rep.complete}});
  }
  report["checks"] = checks;
  report["cone_minimal"] = is_minimal(r.cone);
  report["betti"] = json::parse(betti_to_json({r.betti, r.in.ring->field().to_string(), r.in.ring->nvars()}))["betti"];
  report["ok"] = ok;
  out << report.dump(2) << "\n";
  if (!c.json_path.empty()) {
    std::ofstream f(c.json_path);
    f << report.dump(2) << "\n";
  }
  return ok ? kExitOk : kExitVerify;
}

int cmd_fvector(const Config& c, std::ostream& out) {
  int n = c.rows, m = c.cols;
  if (n < 1 || n > m) throw UsageError("need 1 <= --rows <= --cols");
  auto removed = parse_index_sets(c.remove_sets);
  check_sigmas(n, m, removed);
  auto enumerated = clique_fvector_enumerate(clutter_removed(n, m, removed));
  int r = static_cast<int>(removed.size());
  auto printed = clique_fvector_formula(n, m, r, IndexConvention::as_printed);
  auto shifted = clique_fvector_formula(n, m, r, IndexConvention::shifted);
  auto to_json = [](const std::vector<mpz_class>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_ui());
    return a;
  };
  json mp = json::array(), ms = json::array();
  for (std::size_t l = 0; l < printed.size(); ++l) {
    const auto& e = enumerated[n - 1 + l];
    mp.push_back(printed[l] != e);
    ms.push_back(shifted[l] != e);
  }
  json doc;
  doc["n"] = n;
  doc["m"] = m;
  doc["r"] = r;
  doc["enumerated"] = to_json(enumerated);
  doc["as_printed"] = to_json(printed);
  doc["shifted"] = to_json(shifted);
  doc["mismatch_as_printed"] = mp;
  doc["mismatch_shifted"] = ms;
  doc["first_index"] = n - 1;
  out << doc.dump() << "\n";
  if (!c.json_path.empty()) std::ofstream(c.json_path) << doc.dump() << "\n";
  return kExitOk;
}

const char* kDemoSkew = R"(ring x,y,z over QQ
skew 5
0,0,0,-x^2,-z^2
0,0,-x^2,-z^2,-y^2
0,x^2,0,-y^2,0
x^2,z^2,y^2,0,0
z^2,y^2,0,0,0
)";

std::string matrix_text(const PolyMatrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << "  [";
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).to_string();
    os << "]\n";
  }
  return os.str();
}

int cmd_demo(const Config& c, std::ostream& out) {
  std::istringstream in(kDemoSkew);
  auto x = read_skew(in);
  auto f = pfaffian_resolution(x);
  auto ring = f.ring();
  std::vector<Polynomial> a{Polynomial::variable(ring, 0), Polynomial::variable(ring, 1),
                            Polynomial::variable(ring, 2)};
  auto setup = make_trim_setup(f, {0, 1}, {a, a});
  auto lifts = lift_q(setup, LiftOptions{c.seed});
  out << "d_1 =\n" << matrix_text(f.differential(1));
  for (std::size_t i = 0; i < setup.t(); ++i)
    for (std::size_t k = 0; k < lifts.q[i].size(); ++k)
      out << "q^" << i + 1 << "_" << k + 1 << " =\n" << matrix_text(lifts.q[i][k]);
  auto cone = trimming_complex(setup, lifts);
  auto table = trimmed_betti(setup, lifts);
  out << "cone minimal: " << (is_minimal(cone) ? "yes" : "no") << "\n";
  out << format_betti_table(table);
  if (!c.json_path.empty())
    std::ofstream(c.json_path) << betti_to_json({table, ring->field().to_string(), ring->nvars()}) << "\n";
  return verify_lifts(setup, lifts) && verify_complex(cone) ? kExitOk : kExitVerify;
}

void add_common(CLI::App* sub, Config& c) {
  sub->add_option("--preset", c.preset, "pfaffian | minors | custom")
      ->check(CLI::IsMember({"pfaffian", "minors", "custom"}));
  sub->add_option("--custom", c.custom, "skew-matrix file (implies --preset custom)");
  sub->add_option("--size", c.size, "pfaffian matrix size (odd)");
  sub->add_option("--rows", c.rows, "rows n of the generic matrix");
  sub->add_option("--cols", c.cols, "columns m of the generic matrix");
  sub->add_option("--remove", c.remove, "generators to remove, 1-based, e.g. 1,2");
  sub->add_option("--remove-sets", c.remove_sets, "column sets to remove, e.g. 1,2;3,4");
  sub->add_option("--a-ideal", c.a_ideal, "override generators of a, e.g. x,y,z");
  sub->add_option("--field", c.field, "QQ or gf:<p>");
  sub->add_option("--seed", c.seed, "randomize lifts with this seed");
  sub->add_option("--dmax", c.dmax, "truncation degree for ideal checks");
  sub->add_option("--json", c.json_path, "also write JSON here");
  sub->add_option("--csv", c.csv_path, "write the table as CSV here");
  sub->add_flag("--inject-fault", c.inject_fault, "")->group("");
}

}  // namespace

std::string betti_to_json(const BettiDocument& doc) {
  std::ostringstream os;
  os << "{\"betti\":[";
  bool first = true;
  for (const auto& [k, v] : doc.table) {
    if (v == 0) continue;
    os << (first ? "" : ",") << "{\"i\":" << k.first << ",\"j\":" << k.second << ",\"v\":" << v.get_str() << "}";
    first = false;
  }
  os << "],\"ring\":{\"field\":" << json(doc.field).dump() << ",\"vars\":" << doc.vars << "}}";
  return os.str();
}

namespace {

// Collects the raw text of every number so large counts survive parsing.
// Numbers are stored as "#<digits>" strings in the DOM.
struct RawNumbers : nlohmann::json_sax<json> {
  json dom;
  nlohmann::detail::json_sax_dom_parser<json> inner{dom};

  bool raw(std::string s) {
    s.insert(0, "#");
    return inner.string(s);
  }
  bool null() override { return inner.null(); }
  bool boolean(bool v) override { return inner.boolean(v); }
  bool number_integer(number_integer_t v) override { return raw(std::to_string(v)); }
  bool number_unsigned(number_unsigned_t v) override { return raw(std::to_string(v)); }
  bool number_float(number_float_t, const string_t& s) override { return raw(s); }
  bool string(string_t& v) override { return inner.string(v); }
  bool binary(binary_t& v) override { return inner.binary(v); }
  bool start_object(std::size_t n) override { return inner.start_object(n); }
  bool key(string_t& v) override { return inner.key(v); }
  bool end_object() override { return inner.end_object(); }
  bool start_array(std::size_t n) override { return inner.start_array(n); }
  bool end_array() override { return inner.end_array(); }
  bool parse_error(std::size_t pos, const std::string& tok, const nlohmann::detail::exception& e) override {
    throw std::invalid_argument("bad Betti JSON at " + std::to_string(pos) + " near '" + tok + "': " + e.what());
  }
};

mpz_class raw_int(const json& j, const char* what) {
  if (!j.is_string() || j.get<std::string>().empty() || j.get<std::string>()[0] != '#')
    throw std::invalid_argument(std::string("Betti JSON field ") + what + " must be a number");
  mpz_class v;
  if (v.set_str(j.get<std::string>().substr(1), 10) != 0)
    throw std::invalid_argument(std::string("Betti JSON field ") + what + " must be an integer");
  return v;
}

}  // namespace

BettiDocument betti_from_json(const std::string& text) {
  RawNumbers sax;
  json::sax_parse(text, &sax);
  const json& d = sax.dom;
  BettiDocument doc;
  if (!d.is_object() || !d.contains("betti") || !d.contains("ring"))
    throw std::invalid_argument("Betti JSON needs betti and ring");
  for (const auto& e : d.at("betti")) {
    mpz_class i = raw_int(e.at("i"), "i"), j = raw_int(e.at("j"), "j"), v = raw_int(e.at("v"), "v");
    if (v <= 0) throw std::invalid_argument("Betti JSON counts must be positive");
    doc.table[{static_cast<int>(i.get_si()), static_cast<int>(j.get_si())}] = v;
  }
  doc.field = d.at("ring").at("field").get<std::string>();
  doc.vars = raw_int(d.at("ring").at("vars"), "vars").get_ui();
  return doc;
}

std::string betti_to_csv(const BettiTable& t) {
  std::ostringstream os;
  os << "i,j,v\n";
  for (const auto& [k, v] : t)
    if (v != 0) os << k.first << "," << k.second << "," << v.get_str() << "\n";
  return os.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"trimcx: trimming complexes and Betti tables of trimmed ideals"};
  app.require_subcommand(1);
  Config c;
  auto* betti = app.add_subcommand("betti", "Betti table of the trimmed ideal from the pipeline");
  auto* closed = app.add_subcommand("closed-form", "Betti table from the closed formulas only");
  auto* verify = app.add_subcommand("verify", "run the pipeline and every available cross-check");
  auto* fvec = app.add_subcommand("fvector", "f-vector of a clique complex: formula and enumeration");
  auto* demo = app.add_subcommand("demo", "the 5x5 pfaffian example over QQ, end to end");
  for (auto* s : {betti, closed, verify, fvec, demo}) add_common(s, c);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    if (betti->parsed()) return cmd_betti(c, out);
    if (closed->parsed()) return cmd_closed_form(c, out);
    if (verify->parsed()) return cmd_verify(c, out);
    if (fvec->parsed()) return cmd_fvector(c, out);
    if (demo->parsed()) return cmd_demo(c, out);
  } catch (const SizeGuardError& e) {
    err << "size guard: " << e.what() << "\n";
    return kExitGuard;
  } catch (const LiftError& e) {
    err << "lift failed: " << e.what() << "\n";
    return kExitVerify;
  } catch (const ComplexError& e) {
    err << "complex check failed: " << e.what() << "\n";
    return kExitVerify;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kExitVerify;
  }
  return kExitUsage;
}

}  // namespace trimcx
