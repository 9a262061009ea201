#include "moonlie/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "moonlie/cartan.hpp"
#include "moonlie/eta.hpp"
#include "moonlie/freelie.hpp"
#include "moonlie/io.hpp"
#include "moonlie/lambda.hpp"
#include "moonlie/roots.hpp"

namespace moonlie {

namespace {

using ojson = nlohmann::ordered_json;

struct CommandConfig {
  std::string class_label;
  std::string class_file;
  std::string pick;  // label inside a multi-class file
  int order = kDefaultOrder;
  std::vector<int> box;
  int maxdeg = 0;
  std::string out_path;
  std::string format = "tsv";
  // subcommand extras
  std::string route = "product";
  std::string adams_file;
  std::string matrix;
  std::vector<int> j;
  bool j_given = false;
  int random_cases = 0;
  std::uint64_t seed = 1;
};

int default_order() {
  const char* env = std::getenv(kOrderEnv);
  if (env == nullptr || *env == '\0') return kDefaultOrder;
  try {
    std::size_t used = 0;
    const int v = std::stoi(env, &used);
    if (used != std::string(env).size() || v < 1) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw InputError(std::string(kOrderEnv) + " must be a positive integer");
  }
}

std::pair<int, int> box_or(const CommandConfig& cfg, int m, int q) {
  if (cfg.box.empty()) return {m, q};
  if (cfg.box[0] < 1 || cfg.box[1] < 1) throw InputError("--box bounds must be positive");
  return {cfg.box[0], cfg.box[1]};
}

MoonshineClass load_class(const CommandConfig& cfg, int min_order) {
  const bool by_label = !cfg.class_label.empty(), by_file = !cfg.class_file.empty();
  if (by_label == by_file) throw InputError("give exactly one of --class or --class-file");
  if (cfg.order < 1) throw InputError("--order must be positive");
  const int order = std::max(cfg.order, min_order);
  if (by_label) {
    auto eq = builtin_quotient(cfg.class_label);
    if (!eq) {
      std::string known;
      for (const auto& l : builtin_labels()) known += " " + l;
      throw InputError("unknown class '" + cfg.class_label + "' (built in:" + known + ")");
    }
    return build_class(cfg.class_label, *eq, order);
  }
  const auto specs = parse_class_file(read_text_file(cfg.class_file));
  if (cfg.pick.empty()) {
    if (specs.size() != 1) throw InputError("class file holds several classes; choose one with --label");
    return realize(specs.front(), order);
  }
  for (const auto& s : specs) {
    if (s.label == cfg.pick) return realize(s, order);
  }
  throw InputError("class file has no class labelled '" + cfg.pick + "'");
}

void emit(const CommandConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary | std::ios::trunc);
  if (!f || !(f << text) || !f.flush()) throw InputError("cannot write " + cfg.out_path);
}

std::string eta_string(const MoonshineClass& cls) {
  return cls.quotient ? cls.quotient->to_string() : std::string("-");
}

// ---- expand ---------------------------------------------------------------

int cmd_expand(const CommandConfig& cfg, std::ostream& out) {
  const MoonshineClass cls = load_class(cfg, 1);
  const int order = std::max(cfg.order, 1);
  std::ostringstream os;
  if (cfg.format == "json") {
    ojson j;
    j["class"] = cls.label;
    j["N"] = cls.level;
    j["ell"] = cls.ell;
    j["prefactor"] = cls.prefactor.get_str();
    j["eta"] = eta_string(cls);
    auto cm0 = ojson::array(), c1n = ojson::array();
    for (int m = 1; m <= order; ++m) cm0.push_back(cls.c_axis(m).get_str());
    for (int n = 1; n <= order; ++n) c1n.push_back(cls.c_column(n).get_str());
    j["cm0"] = std::move(cm0);
    j["c1n"] = std::move(c1n);
    os << j.dump(2) << '\n';
  } else {
    os << "class\tN\tell\tprefactor\teta\n";
    os << cls.label << '\t' << cls.level << '\t' << cls.ell << '\t' << cls.prefactor.get_str() << '\t'
       << eta_string(cls) << "\n\n";
    os << "m\tc(m,0)\n";
    for (int m = 1; m <= order; ++m) os << m << '\t' << cls.c_axis(m).get_str() << '\n';
    os << "\nn\tc(1,n/N)\n";
    for (int n = 1; n <= order; ++n) os << n << '\t' << cls.c_column(n).get_str() << '\n';
  }
  emit(cfg, os.str(), out);
  return kExitOk;
}

// ---- fricke ---------------------------------------------------------------

int cmd_fricke(const CommandConfig& cfg, std::ostream& out) {
  const MoonshineClass cls = load_class(cfg, 1);
  if (!cls.quotient) throw InputError("fricke needs a class given by an eta quotient");
  const FrickeData fr = fricke_transform(*cls.quotient, cfg.order);
  std::ostringstream os;
  if (cfg.format == "json") {
    ojson j;
    j["class"] = cls.label;
    j["N"] = fr.level;
    j["prefactor"] = fr.prefactor.get_str();
    auto rows = ojson::array();
    for (int n = 1; n <= cfg.order; ++n) rows.push_back({n, fr.series.coeff(n).get_str()});
    j["coefficients"] = std::move(rows);
    os << j.dump(2) << '\n';
  } else {
    os << "class\tN\tprefactor\n";
    os << cls.label << '\t' << fr.level << '\t' << fr.prefactor.get_str() << "\n\n";
    os << "n\tcoeff(q^(n/N))\n";
    for (int n = 1; n <= cfg.order; ++n) os << n << '\t' << fr.series.coeff(n).get_str() << '\n';
  }
  emit(cfg, os.str(), out);
  return kExitOk;
}

// ---- cartan ---------------------------------------------------------------

int cmd_cartan(const CommandConfig& cfg, std::ostream& out) {
  const auto [mmax, nmax] = box_or(cfg, 4, 4);
  const MoonshineClass cls = load_class(cfg, std::max(mmax, nmax));
  const CartanView view(cls, mmax, nmax);
  const AxiomReport ax = validate_axioms(view);
  const RowRelationReport rows = row_relations(view);
  std::ostringstream os;
  os << render_blocks(view) << '\n';
  os << "check\tresult\n";
  os << "symmetric\t" << (ax.symmetric ? "PASS" : "FAIL") << '\n';
  os << "offdiagonal_nonpositive\t" << (ax.offdiagonal_nonpositive ? "PASS" : "FAIL") << '\n';
  os << "diagonal_nonpositive\t" << (ax.diagonal_nonpositive ? "PASS" : "FAIL") << '\n';
  os << "zero_pattern\t" << (ax.zero_pattern ? "PASS" : "FAIL") << '\n';
  os << "row_relations\t" << (rows.holds ? "PASS" : "FAIL") << '\n';
  os << "rank\t" << rows.rank << '\n';
  for (const auto& v : ax.violations) os << "# " << v << '\n';
  for (const auto& f : rows.failures) os << "# " << f << '\n';
  emit(cfg, os.str(), out);
  return ax.ok() && rows.holds ? kExitOk : kExitCheckFailed;
}

// ---- mults ----------------------------------------------------------------

int cmd_mults(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto [mmax, qmax] = box_or(cfg, 6, 6);
  const MoonshineClass cls = load_class(cfg, std::max(mmax, qmax));
  RootTable table;
  int code = kExitOk;
  if (cfg.route == "structure") {
    table = mults_from_structure(cls, mmax, qmax);
  } else {
    table = mults_from_product(cls, mmax, qmax);
    if (cfg.route == "both") {
      const auto diff = compare(table, mults_from_structure(cls, mmax, qmax));
      if (!diff.empty()) {
        const auto& d = diff.front();
        err << "routes disagree at (" << d.m << "," << d.n << "): product " << d.first.get_str()
            << ", structure " << d.second.get_str() << '\n';
        code = kExitCheckFailed;
      }
    }
  }
  emit(cfg, cfg.format == "json" ? to_json(table) : to_tsv(table), out);
  return code;
}

// ---- verify ---------------------------------------------------------------

struct CheckResult {
  std::string name;
  std::string status;  // PASS, FAIL, SKIP
  std::string detail;
};

CheckResult run_check(const std::string& name, const std::function<CheckResult()>& body) {
  try {
    CheckResult r = body();
    r.name = name;
    return r;
  } catch (const std::exception& e) {
    return {name, "FAIL", std::string("error: ") + e.what()};
  }
}

CheckResult pass_fail(bool ok, std::string detail) {
  return {"", ok ? "PASS" : "FAIL", std::move(detail)};
}

std::string point(int m, int n) { return "(" + std::to_string(m) + "," + std::to_string(n) + ")"; }

// A few generators of g(A_g): two minus-side copies at level ell when present,
// and one plus-side generator at level 1.
std::pair<IntMatrix, std::vector<int>> principal_block(const MoonshineClass& cls, int mmax) {
  const CartanView view(cls, std::max(mmax, 1), 1);
  std::vector<SimpleRootIndex> idx;
  if (cls.ell >= 1 && cls.ell <= mmax) {
    for (long c = 1; c <= 2; ++c) {
      SimpleRootIndex i{Side::Minus, cls.ell, c};
      if (view.contains(i)) idx.push_back(i);
    }
  }
  idx.push_back({Side::Plus, 1, 1});
  IntMatrix a(idx.size(), std::vector<long>(idx.size()));
  std::vector<int> j;
  for (std::size_t r = 0; r < idx.size(); ++r) {
    if (idx[r].side == Side::Minus) j.push_back(static_cast<int>(r));
    for (std::size_t c = 0; c < idx.size(); ++c) a[r][c] = view.entry(idx[r], idx[c]);
  }
  return {a, j};
}

const IntMatrix kFixedExample = {{0, -1}, {-1, -2}};

int cmd_verify(const CommandConfig& cfg, std::ostream& out) {
  const auto [mmax, qmax] = box_or(cfg, 8, 8);
  const int maxdeg = cfg.maxdeg > 0 ? cfg.maxdeg : 5;
  const MoonshineClass cls = load_class(cfg, std::max(mmax, qmax));
  std::optional<AdamsFamily> extra_family;
  if (!cfg.adams_file.empty()) extra_family = parse_adams_file(read_text_file(cfg.adams_file));

  std::vector<CheckResult> results;
  std::optional<RootTable> product;

  results.push_back(run_check("sequences", [&] {
    for (int m = 1; m <= mmax; ++m) cls.c_axis(m);
    for (int n = 1; n <= qmax; ++n) cls.c_column(n);
    return pass_fail(cls.ell >= 1, "N=" + std::to_string(cls.level) + " ell=" + std::to_string(cls.ell) +
                                       " prefactor=" + cls.prefactor.get_str());
  }));

  results.push_back(run_check("fricke_routes", [&]() -> CheckResult {
    if (!cls.quotient) return {"", "SKIP", "no eta quotient"};
    const FrickeData fr = fricke_transform(*cls.quotient, std::max(qmax, 1));
    for (int n = 1; n <= qmax; ++n) {
      if (fr.series.coeff(n) != mpq_class(cls.c_column(n))) {
        return pass_fail(false, "c(1," + std::to_string(n) + "/N) differs from the transformed series");
      }
    }
    return pass_fail(fr.level == cls.level, "N=" + std::to_string(fr.level));
  }));

  const int cm = std::min(mmax, 6), cn = std::min(qmax, 6);
  results.push_back(run_check("cartan_axioms", [&] {
    const AxiomReport r = validate_axioms(CartanView(cls, cm, cn));
    return pass_fail(r.ok(), r.ok() ? "box " + point(cm, cn) : r.violations.front());
  }));

  results.push_back(run_check("row_relations", [&] {
    const RowRelationReport r = row_relations(CartanView(cls, cm, cn));
    return pass_fail(r.holds, r.holds ? "rank " + std::to_string(r.rank) : r.failures.front());
  }));

  results.push_back(run_check("root_tables", [&] {
    product = mults_from_product(cls, mmax, qmax);
    const auto diff = compare(*product, mults_from_structure(cls, mmax, qmax));
    if (diff.empty()) return pass_fail(true, "box " + point(mmax, qmax));
    const auto& d = diff.front();
    return pass_fail(false, "first disagreement at " + point(d.m, d.n) + ": product=" +
                                d.first.get_str() + " structure=" + d.second.get_str());
  }));

  results.push_back(run_check("elimination", [&] {
    const auto [a, j] = principal_block(cls, mmax);
    for (const auto& [mat, jj] : {std::pair{a, j}, std::pair{kFixedExample, std::vector<int>{0}}}) {
      const EliminationReport r = elimination_check(mat, jj, maxdeg);
      if (!r.ok()) return pass_fail(false, r.mismatches.empty() ? "mismatch" : r.mismatches.front());
    }
    return pass_fail(true, "maxdeg " + std::to_string(maxdeg));
  }));

  results.push_back(run_check("twisted_identity", [&] {
    const AdamsFamily fam = AdamsFamily::identity(cls, mmax, mmax, qmax);
    const TwistedIdentity t = twisted_identity_check(fam, mmax, qmax);
    if (!t.equal) return pass_fail(false, "sides differ");
    if (!product) return pass_fail(false, "no product table to compare");
    for (int m = 1; m <= mmax; ++m) {
      for (int n = 1; n <= qmax; ++n) {
        Coef tr = 0;
        if (auto it = t.traces.find({m, n}); it != t.traces.end() && it->second.count(1)) {
          tr = it->second.at(1);
        }
        if (tr != mpq_class(product->at(m, n))) {
          return pass_fail(false, "trace at " + point(m, n) + " is " + tr.get_str() +
                                      ", product table has " + product->at(m, n).get_str());
        }
      }
    }
    return pass_fail(true, "h=id box " + point(mmax, qmax));
  }));

  if (extra_family) {
    results.push_back(run_check("twisted_identity_family", [&] {
      const int fm = std::min(mmax, extra_family->kmax);
      const TwistedIdentity t = twisted_identity_check(*extra_family, fm, std::min(qmax, fm));
      return pass_fail(t.equal, t.equal ? "equal" : "sides differ");
    }));
  }

  bool all = true;
  int passed = 0;
  for (const auto& r : results) {
    if (r.status == "FAIL") all = false;
    else ++passed;
  }
  std::ostringstream os;
  if (cfg.format == "json") {
    ojson j;
    j["class"] = cls.label;
    j["box"] = {mmax, qmax};
    auto arr = ojson::array();
    for (const auto& r : results) {
      ojson e;
      e["check"] = r.name;
      e["result"] = r.status;
      e["detail"] = r.detail;
      arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    j["result"] = all ? "PASS" : "FAIL";
    os << j.dump(2) << '\n';
  } else {
    os << "check\tresult\tdetail\n";
    for (const auto& r : results) os << r.name << '\t' << r.status << '\t' << r.detail << '\n';
    os << "verify\t" << (all ? "PASS" : "FAIL") << '\t' << passed << "/" << results.size() << '\n';
  }
  emit(cfg, os.str(), out);
  return all ? kExitOk : kExitCheckFailed;
}

// ---- freelie-oracle ---------------------------------------------------------

IntMatrix parse_matrix(const std::string& text) {
  IntMatrix a;
  std::stringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::vector<long> r;
    std::stringstream cells(row);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        r.push_back(std::stol(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw InputError("bad matrix entry '" + cell + "'");
      }
    }
    a.push_back(std::move(r));
  }
  if (a.empty()) throw InputError("empty matrix");
  return a;
}

std::string matrix_string(const IntMatrix& a) {
  std::string s;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (r) s += ';';
    for (std::size_t c = 0; c < a[r].size(); ++c) {
      if (c) s += ',';
      s += std::to_string(a[r][c]);
    }
  }
  return s;
}

std::string list_string(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s.empty() ? "-" : s;
}

int cmd_freelie(const CommandConfig& cfg, std::ostream& out) {
  const int maxdeg = cfg.maxdeg > 0 ? cfg.maxdeg : 6;
  std::vector<std::pair<IntMatrix, std::vector<int>>> cases;
  const IntMatrix a = cfg.matrix.empty() ? kFixedExample : parse_matrix(cfg.matrix);
  std::vector<int> j = cfg.j;
  if (!cfg.j_given) {
    j.clear();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].size() > i && a[i][i] == 0) j.push_back(static_cast<int>(i));
    }
  }
  std::string why;
  if (!admissible_zero_block(a, j, &why)) throw InputError("matrix is not admissible: " + why);
  cases.emplace_back(a, j);
  if (cfg.random_cases < 0) throw InputError("--random must be nonnegative");
  std::mt19937_64 rng(cfg.seed);
  for (int i = 0; i < cfg.random_cases; ++i) cases.push_back(random_admissible(rng, 3));

  bool all = true;
  std::ostringstream os;
  os << "case\tmatrix\tJ\tresult\tdetail\n";
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const EliminationReport r = elimination_check(cases[c].first, cases[c].second, maxdeg);
    all = all && r.ok();
    std::string detail = r.ok() ? "degrees=" + std::to_string(r.quotient.size())
                                : (r.mismatches.empty() ? "mismatch" : r.mismatches.front());
    os << c << '\t' << matrix_string(cases[c].first) << '\t' << list_string(cases[c].second) << '\t'
       << (r.ok() ? "PASS" : "FAIL") << '\t' << detail << '\n';
  }
  if (cases.size() == 1) {
    const EliminationReport r = elimination_check(cases[0].first, cases[0].second, maxdeg);
    os << "\ndegree\tquotient\theisenberg\tfree_part\n";
    auto get = [](const GradedDimTable& t, const Multidegree& d) {
      auto it = t.find(d);
      return it == t.end() ? std::string("0") : it->second.get_str();
    };
    for (const auto& [d, v] : r.quotient) {
      os << to_string(d) << '\t' << v.get_str() << '\t' << get(r.heisenberg, d) << '\t'
         << get(r.free_part, d) << '\n';
    }
  }
  emit(cfg, os.str(), out);
  return all ? kExitOk : kExitCheckFailed;
}

// ---- plot -----------------------------------------------------------------

int cmd_plot(const CommandConfig& cfg, std::ostream& out) {
  const auto [mmax, qmax] = box_or(cfg, 7, 4);
  const MoonshineClass cls = load_class(cfg, std::max(mmax, qmax));
  emit(cfg, render_svg(mults_from_product(cls, mmax, qmax)), out);
  return kExitOk;
}

void class_options(CLI::App* sub, CommandConfig& cfg) {
  auto* label = sub->add_option("--class", cfg.class_label, "built-in class label (2B, 4D)");
  auto* file = sub->add_option("--class-file", cfg.class_file, "JSON class definition file");
  label->excludes(file);
  sub->add_option("--label", cfg.pick, "class to use from a multi-class file")->needs(file);
  sub->add_option("--order", cfg.order, "truncation order")->check(CLI::PositiveNumber);
}

void out_options(CLI::App* sub, CommandConfig& cfg) {
  sub->add_option("--out", cfg.out_path, "write output to this file");
  sub->add_option("--format", cfg.format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));
}

void box_option(CLI::App* sub, CommandConfig& cfg) {
  sub->add_option("--box", cfg.box, "bounds M Q (m <= M, numerator n <= Q)")->expected(2);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CommandConfig cfg;
  try {
    cfg.order = default_order();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }

  CLI::App app{"Root multiplicities of Borcherds algebras attached to non-Fricke classes", "moonlie"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "moonlie 0.1.0");

  auto* expand = app.add_subcommand("expand", "c(m,0) and c(1,n/N) tables of a class");
  class_options(expand, cfg);
  out_options(expand, cfg);

  auto* fricke = app.add_subcommand("fricke", "expansion of T(-1/tau), checked by two routes");
  class_options(fricke, cfg);
  out_options(fricke, cfg);

  auto* cartan = app.add_subcommand("cartan", "block structure and checks of a Cartan truncation");
  class_options(cartan, cfg);
  out_options(cartan, cfg);
  box_option(cartan, cfg);

  auto* mults = app.add_subcommand("mults", "root multiplicity table");
  class_options(mults, cfg);
  out_options(mults, cfg);
  box_option(mults, cfg);
  mults->add_option("--route", cfg.route, "product, structure or both")
      ->check(CLI::IsMember({"product", "structure", "both"}));

  auto* verify = app.add_subcommand("verify", "run every consistency check on a class");
  class_options(verify, cfg);
  out_options(verify, cfg);
  box_option(verify, cfg);
  verify->add_option("--maxdeg", cfg.maxdeg, "degree bound of the elimination check")
      ->check(CLI::PositiveNumber);
  verify->add_option("--adams-file", cfg.adams_file, "also check the twisted identity for this family");

  auto* oracle = app.add_subcommand("freelie-oracle", "zero-block quotient versus elimination");
  out_options(oracle, cfg);
  oracle->add_option("--matrix", cfg.matrix, "rows separated by ';', entries by ','");
  oracle->add_option("--j", cfg.j, "zero-block indices (0-based)")->delimiter(',');
  oracle->add_option("--maxdeg", cfg.maxdeg, "total degree bound")->check(CLI::PositiveNumber);
  oracle->add_option("--random", cfg.random_cases, "additional random admissible cases");
  oracle->add_option("--seed", cfg.seed, "seed for --random");

  auto* plot = app.add_subcommand("plot", "SVG of the positive root lattice");
  class_options(plot, cfg);
  box_option(plot, cfg);
  plot->add_option("--out", cfg.out_path, "write the SVG to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitBadInput;
  }
  cfg.j_given = oracle->count("--j") > 0;

  try {
    if (*expand) return cmd_expand(cfg, out);
    if (*fricke) return cmd_fricke(cfg, out);
    if (*cartan) return cmd_cartan(cfg, out);
    if (*mults) return cmd_mults(cfg, out, err);
    if (*verify) return cmd_verify(cfg, out);
    if (*oracle) return cmd_freelie(cfg, out);
    if (*plot) return cmd_plot(cfg, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {  // includes EtaError
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const TruncationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "internal check failed: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitBadInput;
}

}  // namespace moonlie
