#include "moonlie/roots.hpp"

#include <numeric>
#include <sstream>

#include <json.hpp>

#include "moonlie/series.hpp"

namespace moonlie {

mpz_class RootTable::at(int m, int n) const {
  if (!in_box(m, n)) {
    throw TruncationError("lattice point (" + std::to_string(m) + "," + std::to_string(n) +
                          ") outside the table box");
  }
  auto it = mult.find({m, n});
  return it == mult.end() ? mpz_class(0) : it->second;
}

namespace {

void require_box(int mmax, int qmax) {
  if (mmax < 1 || qmax < 0) throw std::invalid_argument("root box must have mmax >= 1, qmax >= 0");
}

// p*T(p) through p^mmax as an integer-exponent series.
QSeries shifted_axis_series(const MoonshineClass& cls, int mmax) {
  if (cls.quotient) {
    QSeries t = expand_eta_quotient(*cls.quotient, mmax);
    if (t.denom() != 1) t = t.regridded(1);
    return t * QSeries::monomial(1, 1);
  }
  return reconstruct_from_cm0(cls.cm0, mmax) * QSeries::monomial(1, 1);
}

// T(-1/tau) through q^{qmax/N}.
QSeries fricke_series(const MoonshineClass& cls, int qmax) {
  if (cls.quotient) {
    FrickeData fr = fricke_direct(*cls.quotient, std::max(qmax, 1));
    if (fr.level != cls.level) throw RootError("class level disagrees with its eta quotient");
    return fr.series.truncated(qmax);
  }
  QSeries::Terms t;
  for (int n = 1; n <= qmax; ++n) t.emplace(n, mpq_class(cls.c_column(n)));
  return QSeries(std::move(t), cls.level, qmax);
}

}  // namespace

RootTable mults_from_product(const MoonshineClass& cls, int mmax, int qmax) {
  require_box(mmax, qmax);
  const PQSeries axis = PQSeries::embed_p(shifted_axis_series(cls, mmax));
  const PQSeries column = PQSeries::embed_q(fricke_series(cls, qmax));
  const PQSeries f = (axis - PQSeries::monomial(1, 1, 0) * column).truncated(mmax, qmax);
  if (f.pmax() != mmax || f.qmax() != qmax) {
    throw RootError("denominator series does not cover the requested box");
  }
  if (f.coeff(0, 0) != 1) throw RootError("denominator series must have constant term 1");
  const PQSeries neg_log = -log1(f);

  RootTable t{cls.label, f.qdenom(), mmax, qmax, {}};
  if (t.level != cls.level) throw RootError("denominator series is on an unexpected q-grid");
  for (int m = 1; m <= mmax; ++m) {
    for (int n = 0; n <= qmax; ++n) {
      const int g = std::gcd(m, n);  // gcd(m, 0) = m
      Coef c = 0;
      for (int k = 1; k <= g; ++k) {
        if (g % k != 0) continue;
        const int mu = moebius(k);
        if (mu != 0) c += Coef(mu) * neg_log.coeff(m / k, n / k) / k;
      }
      if (!is_integer(c) || c < 0) {
        throw RootError("exponent at (" + std::to_string(m) + "," + std::to_string(n) +
                        ") is " + c.get_str() + ", not a nonnegative integer");
      }
      if (c != 0) t.mult[{m, n}] = c.get_num();
    }
  }
  return t;
}

GradedDimTable vplus_dims(const MoonshineClass& cls, int mmax, int qmax) {
  require_box(mmax, qmax);
  // prod_{m} (1 - p^m)^{-c(m,0)} through p^{mmax-1}
  const int top = mmax - 1;
  std::vector<mpz_class> sym(static_cast<std::size_t>(top + 1));
  sym[0] = 1;
  for (int m = 1; m <= top; ++m) {
    const mpz_class& c = cls.c_axis(m);
    if (c == 0) continue;
    // multiply by sum_j binom(c+j-1, j) p^{mj}
    std::vector<mpz_class> next(sym.size());
    for (int i = 0; i <= top; ++i) {
      if (sym[i] == 0) continue;
      mpz_class b = 1;
      for (int j = 0; i + m * j <= top; ++j) {
        if (j > 0) b = b * (c + j - 1) / j;
        next[i + m * j] += sym[i] * b;
      }
    }
    sym.swap(next);
  }
  GradedDimTable out;
  for (int k = 0; k <= top; ++k) {
    if (sym[k] == 0) continue;
    for (int n = 1; n <= qmax; ++n) {
      const mpz_class d = sym[k] * cls.c_column(n);
      if (d != 0) out[{1 + k, n}] = d;
    }
  }
  return out;
}

RootTable mults_from_structure(const MoonshineClass& cls, int mmax, int qmax) {
  require_box(mmax, qmax);
  RootTable t{cls.label, cls.level, mmax, qmax, {}};
  for (int m = 1; m <= mmax; ++m) {
    const mpz_class& c = cls.c_axis(m);
    if (c != 0) t.mult[{m, 0}] = c;
  }
  const auto free_dims = witt_dims(vplus_dims(cls, mmax, qmax), DegreeBound::by_box({mmax, qmax}));
  for (const auto& [d, v] : free_dims) {
    if (v < 0) throw RootError("negative free Lie dimension at " + to_string(d));
    t.mult[{d[0], d[1]}] = v;
  }
  return t;
}

std::vector<RootDiff> compare(const RootTable& a, const RootTable& b) {
  if (a.label != b.label || a.level != b.level) {
    throw std::invalid_argument("compare: tables belong to different classes");
  }
  if (a.mmax != b.mmax || a.qmax != b.qmax) {
    throw std::invalid_argument("compare: tables have different boxes");
  }
  std::vector<RootDiff> out;
  for (int m = 1; m <= a.mmax; ++m) {
    for (int n = 0; n <= a.qmax; ++n) {
      mpz_class x = a.at(m, n), y = b.at(m, n);
      if (x != y) out.push_back({m, n, x, y});
    }
  }
  return out;
}

const char* to_string(RootKind k) {
  switch (k) {
    case RootKind::SimpleMinus: return "simple_minus";
    case RootKind::SimplePlus: return "simple_plus";
    case RootKind::Nonsimple: return "nonsimple";
  }
  return "?";
}

std::vector<LatticePoint> export_lattice(const RootTable& t) {
  std::vector<LatticePoint> out;
  for (const auto& [key, v] : t.mult) {  // map order is row-major
    if (v == 0) continue;
    const auto [m, n] = key;
    const RootKind kind = n == 0   ? RootKind::SimpleMinus
                          : m == 1 ? RootKind::SimplePlus
                                   : RootKind::Nonsimple;
    out.push_back({m, n, v, kind});
  }
  return out;
}

std::string to_tsv(const RootTable& t) {
  std::ostringstream os;
  os << "m\tn\tN\tmult\n";
  for (int m = 1; m <= t.mmax; ++m) {
    for (int n = 0; n <= t.qmax; ++n) {
      os << m << '\t' << n << '\t' << t.level << '\t' << t.at(m, n).get_str() << '\n';
    }
  }
  return os.str();
}

std::string to_json(const RootTable& t) {
  nlohmann::ordered_json j;
  j["class"] = t.label;
  j["N"] = t.level;
  j["box"] = {t.mmax, t.qmax};
  auto rows = nlohmann::json::array();
  for (int m = 1; m <= t.mmax; ++m) {
    for (int n = 0; n <= t.qmax; ++n) rows.push_back({m, n, t.at(m, n).get_str()});
  }
  j["mult"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace moonlie
