#include "moonlie/eta.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace moonlie {

namespace {

// prod_{n>=1, n*step<=order} (1 - x^{n*step})^b as an integer series in x.
std::vector<mpz_class> eta_core(int step, int b, int order) {
  std::vector<mpz_class> out(static_cast<std::size_t>(order + 1));
  out[0] = 1;
  for (int base = step; base <= order; base += step) {
    // multiply in place by (1 - x^base)^b
    if (b > 0) {
      for (int rep = 0; rep < b; ++rep) {
        for (int i = order; i >= base; --i) out[i] -= out[i - base];
      }
    } else {
      for (int rep = 0; rep < -b; ++rep) {
        for (int i = base; i <= order; ++i) out[i] += out[i - base];
      }
    }
  }
  return out;
}

// prod_i prod_n (1 - x^{n*steps_i})^{b_i} through x^order.
std::vector<mpz_class> eta_product(const std::vector<std::pair<int, int>>& steps,
                                   int order) {
  std::vector<mpz_class> acc(static_cast<std::size_t>(order + 1));
  acc[0] = 1;
  for (const auto& [step, b] : steps) {
    auto f = eta_core(step, b, order);
    std::vector<mpz_class> next(acc.size());
    for (int i = 0; i <= order; ++i) {
      if (acc[i] == 0) continue;
      for (int j = 0; i + j <= order; ++j) next[i + j] += acc[i] * f[j];
    }
    acc.swap(next);
  }
  return acc;
}

mpq_class reduced(mpq_class x) {
  x.canonicalize();
  return x;
}

void require_order(int order) {
  if (order < 1) throw std::invalid_argument("truncation order must be at least 1");
}

}  // namespace

EtaQuotient::EtaQuotient(std::vector<EtaFactor> factors) : factors_(std::move(factors)) {
  std::set<int> scales;
  for (const auto& f : factors_) {
    if (f.scale < 1) {
      throw EtaError(EtaError::Kind::Malformed, "eta scale must be positive");
    }
    if (f.exponent == 0) {
      throw EtaError(EtaError::Kind::Malformed, "eta exponent must be nonzero");
    }
    if (!scales.insert(f.scale).second) {
      throw EtaError(EtaError::Kind::Malformed,
                     "duplicate eta scale " + std::to_string(f.scale));
    }
  }
}

int EtaQuotient::weight_twice() const {
  int w = 0;
  for (const auto& f : factors_) w += f.exponent;
  return w;
}

std::string EtaQuotient::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << " ";
    os << "eta(";
    if (factors_[i].scale != 1) os << factors_[i].scale;
    os << "tau)^" << factors_[i].exponent;
  }
  return factors_.empty() ? "1" : os.str();
}

QSeries expand_eta_quotient(const EtaQuotient& eq, int order) {
  require_order(order);
  if (eq.empty()) return QSeries::constant(1);
  mpq_class lead = 0;
  std::vector<std::pair<int, int>> steps;
  for (const auto& f : eq.factors()) {
    lead += rational(f.scale * f.exponent, 24);
    steps.emplace_back(f.scale, f.exponent);
  }
  lead = reduced(lead);
  const int denom = static_cast<int>(lead.get_den().get_si());
  const Exp lead_num = lead.get_num().get_si();
  const auto core = eta_product(steps, order);
  QSeries::Terms t;
  for (int j = 0; j <= order; ++j) {
    if (core[j] != 0) t.emplace(lead_num + Exp(j) * denom, mpq_class(core[j]));
  }
  return QSeries(std::move(t), denom, lead_num + Exp(order) * denom);
}

std::vector<mpz_class> extract_cm0(const QSeries& t, int order) {
  require_order(order);
  if (t.is_zero() || t.valuation() != -Exp(t.denom()) ||
      t.terms().begin()->second != 1) {
    throw EtaError(EtaError::Kind::NonConforming,
                   "series must begin with 1*q^-1");
  }
  QSeries u = t * QSeries::monomial(1, 1);
  if (u.order() != kExact && u.order() < Exp(order) * u.denom()) {
    throw TruncationError("extract_cm0: series known only through q^" +
                          std::to_string(u.order() / u.denom() - 1) +
                          ", need q^" + std::to_string(order - 1));
  }
  // Work on the integer grid through q^order.
  std::vector<mpq_class> r(static_cast<std::size_t>(order + 1));
  for (const auto& [e, c] : u.terms()) {
    if (e % u.denom() != 0) {
      throw EtaError(EtaError::Kind::NonConforming,
                     "series has non-integral exponents");
    }
    const Exp m = e / u.denom();
    if (m <= order) r[m] = c;
  }
  std::vector<mpz_class> cm0;
  cm0.reserve(static_cast<std::size_t>(order));
  for (int m = 1; m <= order; ++m) {
    const mpq_class c = -r[m];
    if (!is_integer(c) || c < 0) {
      throw EtaError(EtaError::Kind::NonConforming,
                     "c(" + std::to_string(m) + ",0) = " + c.get_str() +
                         " is not a nonnegative integer");
    }
    const mpz_class ci = c.get_num();
    cm0.push_back(ci);
    if (ci == 0) continue;
    // r *= (1 - q^m)^{-c}: divide by (1 - q^m) c times
    const unsigned long reps = ci.get_ui();
    for (unsigned long rep = 0; rep < reps; ++rep) {
      for (int i = m; i <= order; ++i) r[i] += r[i - m];
    }
  }
  // Reconstruction: the recovered product reproduces the input.
  const QSeries back = reconstruct_from_cm0(cm0, order);
  for (int e = -1; e < order; ++e) {
    if (back.coeff(Exp(e)) != t.coeff(mpq_class(e))) {
      throw EtaError(EtaError::Kind::NonConforming,
                     "reconstruction mismatch at q^" + std::to_string(e));
    }
  }
  return cm0;
}

QSeries reconstruct_from_cm0(const std::vector<mpz_class>& cm0, int order) {
  require_order(order);
  if (static_cast<int>(cm0.size()) < order - 1) {
    throw TruncationError("reconstruct_from_cm0: sequence too short");
  }
  std::vector<mpz_class> acc(static_cast<std::size_t>(order + 1));
  acc[0] = 1;
  for (int m = 1; m <= order && m <= static_cast<int>(cm0.size()); ++m) {
    const unsigned long reps = cm0[m - 1].get_ui();
    for (unsigned long rep = 0; rep < reps; ++rep) {
      for (int i = order; i >= m; --i) acc[i] -= acc[i - m];
    }
  }
  QSeries::Terms t;
  for (int i = 0; i <= order; ++i) {
    if (acc[i] != 0) t.emplace(i - 1, mpq_class(acc[i]));
  }
  return QSeries(std::move(t), 1, order - 1);
}

namespace {

struct FrickeShape {
  int level;
  mpz_class prefactor;
  int scale_lcm;
};

FrickeShape fricke_shape(const EtaQuotient& eq) {
  if (eq.empty()) {
    throw EtaError(EtaError::Kind::Malformed, "empty eta quotient");
  }
  if (eq.weight_twice() != 0) {
    throw EtaError(EtaError::Kind::NonzeroWeight,
                   "eta quotient has nonzero weight (sum of exponents " +
                       std::to_string(eq.weight_twice()) + ")");
  }
  mpq_class lead = 0;
  mpq_class product = 1;
  int l = 1;
  for (const auto& f : eq.factors()) {
    lead += rational(f.exponent, 24 * f.scale);
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), mpz_class(f.scale).get_mpz_t(),
               static_cast<unsigned long>(std::abs(f.exponent)));
    product *= f.exponent > 0 ? mpq_class(pw) : mpq_class(1) / pw;
    l = std::lcm(l, f.scale);
  }
  lead = reduced(lead);
  product = reduced(product);
  if (lead <= 0 || lead.get_num() != 1) {
    throw EtaError(EtaError::Kind::NonIntegralLevel,
                   "leading exponent of T(-1/tau) is " + lead.get_str() +
                       ", not 1/N for a positive integer N");
  }
  const int level = static_cast<int>(lead.get_den().get_si());
  // prefactor^2 = 1 / product
  if (product.get_num() != 1 || mpz_perfect_square_p(product.get_den().get_mpz_t()) == 0) {
    throw EtaError(EtaError::Kind::BadPrefactor,
                   "(prod a^b)^(-1/2) = (" + product.get_str() +
                       ")^(-1/2) is not a positive integer");
  }
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), product.get_den().get_mpz_t());
  if (level % l != 0) {
    throw EtaError(EtaError::Kind::NonConforming,
                   "T(-1/tau) does not live on the 1/N grid (lcm of scales " +
                       std::to_string(l) + " does not divide N=" +
                       std::to_string(level) + ")");
  }
  return {level, root, l};
}

}  // namespace

FrickeData fricke_direct(const EtaQuotient& eq, int order) {
  require_order(order);
  const FrickeShape shape = fricke_shape(eq);
  const int n = shape.level;
  const int l = shape.scale_lcm;
  const int stride = n / l;  // one step of q^{1/L} in units of q^{1/N}
  // eta(tau/a) = q^{1/(24a)} prod (1 - q^{k/a}); in x = q^{1/L}, (1 - x^{kL/a}).
  std::vector<std::pair<int, int>> steps;
  for (const auto& f : eq.factors()) steps.emplace_back(l / f.scale, f.exponent);
  const int xorder = (order - 1) / stride;
  const auto core = eta_product(steps, xorder);
  QSeries::Terms t;
  for (int j = 0; j <= xorder; ++j) {
    if (core[j] != 0) t.emplace(1 + Exp(j) * stride, mpq_class(core[j] * shape.prefactor));
  }
  return {n, shape.prefactor, QSeries(std::move(t), n, order)};
}

QSeries fricke_from_cm0(const mpz_class& prefactor, int level,
                        const std::vector<mpz_class>& cm0, int order) {
  require_order(order);
  if (static_cast<int>(cm0.size()) < order - 1) {
    throw TruncationError("fricke_from_cm0: c(m,0) sequence too short");
  }
  // Coefficients of prod (1 - x^m)^{-c(m)} in x = q^{1/N}, x-degree < order.
  const int xorder = order - 1;
  std::vector<mpz_class> acc(static_cast<std::size_t>(xorder + 1));
  acc[0] = 1;
  for (int m = 1; m <= xorder; ++m) {
    const unsigned long reps = cm0[m - 1].get_ui();
    for (unsigned long rep = 0; rep < reps; ++rep) {
      for (int i = m; i <= xorder; ++i) acc[i] += acc[i - m];
    }
  }
  QSeries::Terms t;
  for (int j = 0; j <= xorder; ++j) {
    if (acc[j] != 0) t.emplace(1 + j, mpq_class(acc[j] * prefactor));
  }
  return QSeries(std::move(t), level, order);
}

FrickeData fricke_transform(const EtaQuotient& eq, int order) {
  FrickeData direct = fricke_direct(eq, order);
  const auto cm0 = extract_cm0(expand_eta_quotient(eq, order), order);
  const QSeries product = fricke_from_cm0(direct.prefactor, direct.level, cm0, order);
  if (!(product == direct.series)) {
    throw EtaError(EtaError::Kind::NonConforming,
                   "Fricke transform: direct expansion and product formula disagree");
  }
  return direct;
}

const mpz_class& MoonshineClass::c_axis(int m) const {
  if (m < 1 || m > static_cast<int>(cm0.size())) {
    throw TruncationError("c(" + std::to_string(m) + ",0) beyond computed order " +
                          std::to_string(cm0.size()) + " of class " + label);
  }
  return cm0[static_cast<std::size_t>(m - 1)];
}

const mpz_class& MoonshineClass::c_column(int n) const {
  if (n < 1 || n > static_cast<int>(c1n.size())) {
    throw TruncationError("c(1," + std::to_string(n) + "/N) beyond computed order " +
                          std::to_string(c1n.size()) + " of class " + label);
  }
  return c1n[static_cast<std::size_t>(n - 1)];
}

MoonshineClass class_from_tables(const std::string& label, int level,
                                 std::vector<mpz_class> cm0,
                                 std::vector<mpz_class> c1n) {
  if (level < 1) throw std::invalid_argument("class level N must be positive");
  MoonshineClass cls;
  cls.label = label;
  cls.level = level;
  for (std::size_t i = 0; i < cm0.size(); ++i) {
    if (cm0[i] < 0) {
      throw EtaError(EtaError::Kind::NonConforming,
                     "negative c(" + std::to_string(i + 1) + ",0)");
    }
  }
  for (std::size_t i = 0; i < c1n.size(); ++i) {
    if (c1n[i] < 0) {
      throw EtaError(EtaError::Kind::NonConforming,
                     "negative c(1," + std::to_string(i + 1) + "/N)");
    }
  }
  if (c1n.empty() || c1n[0] == 0) {
    throw EtaError(EtaError::Kind::NonConforming, "c(1,1/N) must be nonzero");
  }
  auto first = std::find_if(cm0.begin(), cm0.end(), [](const mpz_class& c) { return c != 0; });
  cls.ell = first == cm0.end() ? 0 : static_cast<int>(first - cm0.begin()) + 1;
  cls.prefactor = c1n[0];
  cls.cm0 = std::move(cm0);
  cls.c1n = std::move(c1n);
  return cls;
}

MoonshineClass build_class(const std::string& label, const EtaQuotient& eq, int order) {
  require_order(order);
  const FrickeData fr = fricke_transform(eq, order);
  const auto cm0 = extract_cm0(expand_eta_quotient(eq, order), order);
  std::vector<mpz_class> c1n;
  for (int n = 1; n <= order; ++n) {
    c1n.push_back(to_integer(fr.series.coeff(Exp(n)), "c(1," + std::to_string(n) + "/N)"));
  }
  MoonshineClass cls = class_from_tables(label, fr.level, cm0, std::move(c1n));
  if (cls.ell == 0) {
    throw EtaError(EtaError::Kind::NonConforming,
                   "no nonzero c(m,0) with m <= " + std::to_string(order));
  }
  if (cls.prefactor != fr.prefactor) {
    throw EtaError(EtaError::Kind::NonConforming, "c(1,1/N) differs from the prefactor");
  }
  cls.quotient = eq;
  return cls;
}

std::optional<EtaQuotient> builtin_quotient(const std::string& label) {
  if (label == "2B") return EtaQuotient(std::vector<EtaFactor>{{1, 24}, {2, -24}});
  if (label == "4D") return EtaQuotient(std::vector<EtaFactor>{{2, 12}, {4, -12}});
  return std::nullopt;
}

std::vector<std::string> builtin_labels() { return {"2B", "4D"}; }

}  // namespace moonlie
