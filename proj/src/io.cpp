#include "moonlie/io.hpp"

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

namespace moonlie {

using nlohmann::json;

namespace {

long as_long(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw InputError(what + " must be an integer");
  return v.get<long>();
}

mpz_class as_big(const json& v, const std::string& what) {
  if (v.is_number_integer()) return mpz_class(std::to_string(v.get<long long>()));
  if (v.is_string()) {
    mpz_class z;
    if (z.set_str(v.get<std::string>(), 10) != 0) throw InputError(what + " is not an integer");
    return z;
  }
  throw InputError(what + " must be an integer or a decimal string");
}

std::vector<mpz_class> big_list(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) throw InputError(what + " must be a nonempty array");
  std::vector<mpz_class> out;
  for (const auto& x : v) out.push_back(as_big(x, what));
  return out;
}

std::map<int, mpz_class> overrides(const json& v, const std::string& what) {
  std::map<int, mpz_class> out;
  if (!v.is_object()) throw InputError(what + " overrides must be an object");
  for (const auto& [key, val] : v.items()) {
    int idx = 0;
    try {
      std::size_t used = 0;
      idx = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw InputError(what + " override index '" + key + "' is not an integer");
    }
    if (idx < 1) throw InputError(what + " override index must be positive");
    out[idx] = as_big(val, what + " override");
  }
  return out;
}

ClassSpec parse_one(const json& obj) {
  if (!obj.is_object()) throw InputError("class entry must be an object");
  ClassSpec s;
  if (!obj.contains("label") || !obj["label"].is_string()) {
    throw InputError("class entry needs a string label");
  }
  s.label = obj["label"].get<std::string>();
  if (s.label.empty()) throw InputError("class label is empty");

  const bool has_factors = obj.contains("factors");
  const bool has_tables = obj.contains("cm0") || obj.contains("c1n") || obj.contains("level");
  if (has_factors == has_tables) {
    throw InputError("class '" + s.label + "' needs either factors or level/cm0/c1n tables");
  }
  if (has_factors) {
    const json& f = obj["factors"];
    if (!f.is_array() || f.empty()) throw InputError("factors must be a nonempty array");
    std::vector<EtaFactor> factors;
    std::set<long> scales;
    for (const auto& pair : f) {
      if (!pair.is_array() || pair.size() != 2) throw InputError("each factor is [scale, exponent]");
      const long a = as_long(pair[0], "factor scale");
      const long b = as_long(pair[1], "factor exponent");
      if (a < 1) throw InputError("factor scale must be positive");
      if (b == 0) throw InputError("factor exponent must be nonzero");
      if (!scales.insert(a).second) throw InputError("duplicate factor scale " + std::to_string(a));
      factors.push_back({static_cast<int>(a), static_cast<int>(b)});
    }
    try {
      s.quotient = EtaQuotient(std::move(factors));
    } catch (const EtaError& e) {
      throw InputError(std::string("bad eta quotient: ") + e.what());
    }
  } else {
    if (!obj.contains("level") || !obj.contains("cm0") || !obj.contains("c1n")) {
      throw InputError("table class '" + s.label + "' needs level, cm0 and c1n");
    }
    const long n = as_long(obj["level"], "level");
    if (n < 1) throw InputError("level must be positive");
    s.level = static_cast<int>(n);
    s.cm0 = big_list(obj["cm0"], "cm0");
    s.c1n = big_list(obj["c1n"], "c1n");
  }
  if (obj.contains("overrides")) {
    const json& o = obj["overrides"];
    if (!o.is_object()) throw InputError("overrides must be an object");
    for (const auto& [key, val] : o.items()) {
      if (key == "cm0") s.cm0_override = overrides(val, "cm0");
      else if (key == "c1n") s.c1n_override = overrides(val, "c1n");
      else throw InputError("unknown override table '" + key + "'");
    }
  }
  return s;
}

json parse_json(const std::string& text, const std::string& what) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw InputError(what + " is empty");
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(what + " is not valid JSON: " + e.what());
  }
}

Coef ratio(const json& num, const json& den) {
  const mpz_class n = as_big(num, "numerator"), d = as_big(den, "denominator");
  if (d == 0) throw InputError("zero denominator in Adams file");
  Coef c(n, d);
  c.canonicalize();
  return c;
}

void read_traces(const json& v, const std::string& what, int kmax,
                 std::map<int, std::map<int, Coef>>& dst) {
  if (!v.is_array()) throw InputError(what + " must be an array of [k, index, num, den]");
  for (const auto& row : v) {
    if (!row.is_array() || row.size() != 4) throw InputError(what + " rows are [k, index, num, den]");
    const long k = as_long(row[0], what + " k");
    const long i = as_long(row[1], what + " index");
    if (k < 1 || k > kmax) throw InputError(what + " k out of range 1..kmax");
    if (i < 1) throw InputError(what + " index must be positive");
    auto& slot = dst[static_cast<int>(k)];
    if (slot.count(static_cast<int>(i))) throw InputError(what + " has a duplicate entry");
    slot[static_cast<int>(i)] = ratio(row[2], row[3]);
  }
}

void apply(std::vector<mpz_class>& table, const std::map<int, mpz_class>& ov, const std::string& what) {
  for (const auto& [i, v] : ov) {
    if (static_cast<std::size_t>(i) > table.size()) {
      throw InputError(what + " override index " + std::to_string(i) + " is past the computed order");
    }
    table[static_cast<std::size_t>(i - 1)] = v;
  }
}

}  // namespace

std::vector<ClassSpec> parse_class_file(const std::string& text) {
  const json doc = parse_json(text, "class file");
  std::vector<ClassSpec> out;
  if (doc.is_array()) {
    if (doc.empty()) throw InputError("class file has no classes");
    for (const auto& o : doc) out.push_back(parse_one(o));
  } else {
    out.push_back(parse_one(doc));
  }
  std::set<std::string> labels;
  for (const auto& s : out) {
    if (!labels.insert(s.label).second) throw InputError("duplicate class label " + s.label);
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

MoonshineClass realize(const ClassSpec& spec, int order) {
  MoonshineClass cls;
  try {
    if (spec.quotient) {
      cls = build_class(spec.label, *spec.quotient, order);
    } else {
      std::vector<mpz_class> cm0 = spec.cm0, c1n = spec.c1n;
      if (cm0.size() > static_cast<std::size_t>(order)) cm0.resize(static_cast<std::size_t>(order));
      if (c1n.size() > static_cast<std::size_t>(order)) c1n.resize(static_cast<std::size_t>(order));
      cls = class_from_tables(spec.label, spec.level, std::move(cm0), std::move(c1n));
    }
  } catch (const EtaError& e) {
    throw InputError("class " + spec.label + ": " + e.what());
  }
  if (spec.cm0_override.empty() && spec.c1n_override.empty()) return cls;
  apply(cls.cm0, spec.cm0_override, "cm0");
  apply(cls.c1n, spec.c1n_override, "c1n");
  try {
    MoonshineClass edited = class_from_tables(cls.label, cls.level, cls.cm0, cls.c1n);
    edited.quotient = cls.quotient;
    return edited;
  } catch (const EtaError& e) {
    throw InputError("class " + spec.label + " after overrides: " + e.what());
  }
}

AdamsFamily parse_adams_file(const std::string& text) {
  const json doc = parse_json(text, "Adams file");
  if (!doc.is_object()) throw InputError("Adams file must be an object");
  for (const char* key : {"N", "kmax"}) {
    if (!doc.contains(key)) throw InputError(std::string("Adams file needs ") + key);
  }
  AdamsFamily fam;
  const long n = as_long(doc["N"], "N"), kmax = as_long(doc["kmax"], "kmax");
  if (n < 1 || kmax < 1) throw InputError("N and kmax must be positive");
  fam.level = static_cast<int>(n);
  fam.kmax = static_cast<int>(kmax);
  if (doc.contains("axis")) read_traces(doc["axis"], "axis", fam.kmax, fam.axis);
  if (doc.contains("column")) read_traces(doc["column"], "column", fam.kmax, fam.column);
  return fam;
}

std::string to_json(const AdamsFamily& fam) {
  nlohmann::ordered_json j;
  j["N"] = fam.level;
  j["kmax"] = fam.kmax;
  auto rows = [](const std::map<int, std::map<int, Coef>>& t) {
    auto a = nlohmann::ordered_json::array();
    for (const auto& [k, row] : t) {
      for (const auto& [i, c] : row) {
        a.push_back({k, i, c.get_num().get_str(), c.get_den().get_str()});
      }
    }
    return a;
  };
  j["axis"] = rows(fam.axis);
  j["column"] = rows(fam.column);
  return j.dump(2) + "\n";
}

std::string render_svg(const RootTable& t) {
  constexpr int cell = 48, margin = 56, radius = 9;
  const int cols = std::max(t.mmax, 1), rows = t.qmax;
  const int width = 2 * margin + cols * cell;
  const int height = 2 * margin + (rows + 1) * cell;
  auto x_of = [&](int m) { return margin + m * cell - cell / 2; };
  auto y_of = [&](int n) { return height - margin - n * cell - cell / 2; };
  const int x0 = margin, y0 = height - margin;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<title>positive roots of " << t.label << ", N=" << t.level << "</title>\n";
  os << "<style>\n"
        ".axis{stroke:#000;stroke-width:1.5;fill:none}\n"
        ".tick{font-family:sans-serif;font-size:11px;text-anchor:middle}\n"
        ".label{font-family:sans-serif;font-size:14px;font-style:italic;text-anchor:middle}\n"
        ".simple_plus{fill:#1a1a1a;stroke:#000}\n"
        ".simple_minus{fill:#7f7f7f;stroke:#000}\n"
        ".nonsimple{fill:#d9d9d9;stroke:#000}\n"
        "</style>\n";
  os << "<g id=\"axes\">\n";
  os << "<line class=\"axis\" x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << width - margin / 2
     << "\" y2=\"" << y0 << "\"/>\n";
  os << "<line class=\"axis\" x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\""
     << margin / 2 << "\"/>\n";
  for (int m = 1; m <= t.mmax; ++m) {
    os << "<text class=\"tick\" x=\"" << x_of(m) << "\" y=\"" << y0 + 16 << "\">" << m << "</text>\n";
  }
  for (int n = 0; n <= t.qmax; ++n) {
    mpq_class v(n, t.level);
    v.canonicalize();
    os << "<text class=\"tick\" x=\"" << x0 - 18 << "\" y=\"" << y_of(n) + 4 << "\">" << v.get_str()
       << "</text>\n";
  }
  os << "<text class=\"label\" x=\"" << width - margin / 2 << "\" y=\"" << y0 + 34 << "\">m</text>\n";
  os << "<text class=\"label\" x=\"" << x0 << "\" y=\"" << margin / 2 - 8 << "\">n/N</text>\n";
  os << "</g>\n<g id=\"roots\">\n";
  for (const auto& pt : export_lattice(t)) {
    os << "<circle class=\"" << to_string(pt.kind) << "\" cx=\"" << x_of(pt.m) << "\" cy=\""
       << y_of(pt.n) << "\" r=\"" << radius << "\" data-m=\"" << pt.m << "\" data-n=\"" << pt.n
       << "\" data-mult=\"" << pt.multiplicity.get_str() << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace moonlie
