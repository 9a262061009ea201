#include "moonlie/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

namespace moonlie {

Coef rational(Exp n, Exp d) {
  if (d == 0) throw SeriesError("zero denominator");
  Coef r{mpz_class(n), mpz_class(d)};
  r.canonicalize();
  return r;
}

bool is_integer(const Coef& c) { return c.get_den() == 1; }

mpz_class to_integer(const Coef& c, const std::string& what) {
  if (!is_integer(c)) {
    throw SeriesError(what + ": expected an integer, got " + c.get_str());
  }
  return c.get_num();
}

int moebius(Exp n) {
  if (n < 1) throw SeriesError("moebius: argument must be positive");
  int result = 1;
  for (Exp p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

namespace detail {

Exp sat_add(Exp a, Exp b) {
  if (a == kExact || b == kExact) return kExact;
  return a + b;
}

Exp sat_mul(Exp a, Exp b) {
  if (a == kExact || b == kExact) return kExact;
  return a * b;
}

}  // namespace detail

using detail::sat_add;
using detail::sat_mul;

namespace {

// Bound after refining a grid by `factor`: the points strictly between the
// old bound and the next old grid point are known zeros.
Exp refine_bound(Exp bound, Exp factor) {
  if (bound == kExact) return kExact;
  return bound * factor + (factor - 1);
}

std::string exponent_str(Exp num, int denom) {
  return rational(num, denom).get_str();
}

void require_positive_denom(int denom) {
  if (denom < 1) throw SeriesError("series denominator must be positive");
}

}  // namespace

// ---------------------------------------------------------------- QSeries

QSeries::QSeries(int denom, Exp order) : denom_(denom), order_(order) {
  require_positive_denom(denom);
}

QSeries::QSeries(Terms terms, int denom, Exp order)
    : terms_(std::move(terms)), denom_(denom), order_(order) {
  require_positive_denom(denom);
  normalize();
}

QSeries QSeries::constant(const Coef& c, int denom, Exp order) {
  return monomial(c, 0, denom, order);
}

QSeries QSeries::monomial(const Coef& c, Exp numerator, int denom, Exp order) {
  Terms t;
  t.emplace(numerator, c);
  return QSeries(std::move(t), denom, order);
}

QSeries QSeries::polynomial(std::initializer_list<long> coeffs, Exp order) {
  Terms t;
  Exp i = 0;
  for (long c : coeffs) t.emplace(i++, Coef(c));
  return QSeries(std::move(t), 1, order);
}

void QSeries::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0 || it->first > order_) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

Exp QSeries::valuation() const {
  if (!terms_.empty()) return terms_.begin()->first;
  if (order_ == kExact) {
    throw SeriesError("valuation of the exact zero series");
  }
  return order_ + 1;
}

Coef QSeries::coeff(Exp numerator) const {
  if (numerator > order_) {
    throw TruncationError("coefficient of q^" +
                          exponent_str(numerator, denom_) +
                          " lies beyond the truncation order q^" +
                          exponent_str(order_, denom_));
  }
  auto it = terms_.find(numerator);
  return it == terms_.end() ? Coef(0) : it->second;
}

Coef QSeries::coeff(const mpq_class& exponent) const {
  mpq_class scaled = exponent * denom_;
  if (scaled.get_den() == 1) return coeff(scaled.get_num().get_si());
  if (order_ != kExact && exponent > rational(order_, denom_)) {
    throw TruncationError("coefficient of q^" + exponent.get_str() +
                          " lies beyond the truncation order");
  }
  return 0;
}

QSeries QSeries::lifted(int factor) const {
  if (factor < 1) throw SeriesError("lift factor must be positive");
  if (factor == 1) return *this;
  Terms t;
  for (const auto& [e, c] : terms_) t.emplace(e * factor, c);
  return QSeries(std::move(t), denom_ * factor, refine_bound(order_, factor));
}

QSeries QSeries::truncated(Exp order) const {
  return QSeries(terms_, denom_, std::min(order, order_));
}

QSeries QSeries::regridded(int new_denom) const {
  require_positive_denom(new_denom);
  if (denom_ % new_denom != 0) {
    throw SeriesError("regrid: new denominator must divide the old one");
  }
  const Exp f = denom_ / new_denom;
  Terms t;
  for (const auto& [e, c] : terms_) {
    if (e % f != 0) throw SeriesError("regrid: term off the coarser grid");
    t.emplace(e / f, c);
  }
  Exp order = order_;
  if (order != kExact) {
    // floor division for possibly negative bounds
    order = order >= 0 ? order / f : -((-order + f - 1) / f);
  }
  return QSeries(std::move(t), new_denom, order);
}

QSeries QSeries::operator-() const {
  QSeries r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

QSeries& QSeries::operator*=(const Coef& c) {
  for (auto& [e, v] : terms_) v *= c;
  normalize();
  return *this;
}

namespace {

std::pair<QSeries, QSeries> common_grid(const QSeries& a, const QSeries& b) {
  const int l = std::lcm(a.denom(), b.denom());
  return {a.lifted(l / a.denom()), b.lifted(l / b.denom())};
}

}  // namespace

QSeries operator+(const QSeries& a, const QSeries& b) {
  auto [x, y] = common_grid(a, b);
  QSeries::Terms t = x.terms();
  for (const auto& [e, c] : y.terms()) t[e] += c;
  return QSeries(std::move(t), x.denom(), std::min(x.order(), y.order()));
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const QSeries& a, const QSeries& b) {
  auto [x, y] = common_grid(a, b);
  if ((x.is_zero() && x.exact()) || (y.is_zero() && y.exact())) {
    return QSeries(x.denom(), kExact);
  }
  const Exp order = std::min(sat_add(x.order(), y.valuation()),
                             sat_add(y.order(), x.valuation()));
  QSeries::Terms t;
  for (const auto& [ea, ca] : x.terms()) {
    for (const auto& [eb, cb] : y.terms()) {
      if (ea + eb > order) break;
      t[ea + eb] += ca * cb;
    }
  }
  return QSeries(std::move(t), x.denom(), order);
}

bool operator==(const QSeries& a, const QSeries& b) {
  auto [x, y] = common_grid(a, b);
  return x.order() == y.order() && x.terms() == y.terms();
}

std::string QSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    if (e != 0) os << "*q^(" << exponent_str(e, denom_) << ")";
  }
  if (first) os << "0";
  if (order_ != kExact) os << " + O(q^(" << exponent_str(order_ + 1, denom_) << "))";
  return os.str();
}

namespace {

QSeries inverse(const QSeries& s) {
  if (s.is_zero()) throw SeriesError("cannot invert the zero series");
  const Exp v = s.valuation();
  const Coef lead = s.terms().begin()->second;
  if (s.terms().size() == 1) {
    return QSeries::monomial(1 / lead, -v, s.denom(),
                             s.exact() ? kExact : s.order() - 2 * v);
  }
  if (s.exact()) {
    throw SeriesError("inverse of a polynomial needs a truncation bound");
  }
  // s = lead * q^v * (1 + t); u = (1 + t)^{-1} to relative order r
  const Exp r = s.order() - v;
  std::vector<std::pair<Exp, Coef>> t;
  for (const auto& [e, c] : s.terms()) {
    if (e > v) t.emplace_back(e - v, c / lead);
  }
  std::vector<Coef> u(static_cast<std::size_t>(r + 1));
  u[0] = 1;
  for (Exp n = 1; n <= r; ++n) {
    Coef acc = 0;
    for (const auto& [j, c] : t) {
      if (j > n) break;
      acc -= c * u[n - j];
    }
    u[n] = acc;
  }
  QSeries::Terms out;
  const Coef inv_lead = 1 / lead;
  for (Exp n = 0; n <= r; ++n) {
    if (u[n] != 0) out.emplace(n - v, u[n] * inv_lead);
  }
  return QSeries(std::move(out), s.denom(), r - v);
}

void require_power_series(const QSeries& s, const char* what) {
  if (!s.is_zero() && s.terms().begin()->first < 0) {
    throw SeriesError(std::string(what) + ": negative exponents present");
  }
}

}  // namespace

QSeries pow_int(const QSeries& s, long e) {
  if (e == 0) return QSeries::constant(1, s.denom());
  if (e < 0) {
    if (s.is_zero()) throw SeriesError("negative power of the zero series");
    return pow_int(inverse(s), -e);
  }
  QSeries result = QSeries::constant(1, s.denom());
  QSeries base = s;
  for (long k = e;;) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k == 0) break;
    base = base * base;
  }
  return result;
}

QSeries log1(const QSeries& s) {
  require_power_series(s, "log1");
  if (s.coeff(0) != 1) throw SeriesError("log1: constant term must be 1");
  if (s.exact()) {
    if (s.terms().size() == 1) return QSeries(s.denom(), kExact);
    throw SeriesError("log1 of a polynomial needs a truncation bound");
  }
  const Exp order = s.order();
  std::vector<Coef> scaled(static_cast<std::size_t>(std::max<Exp>(order, 0) + 1));
  // n*l_n = n*s_n - sum_{j<n} s_{n-j} * j*l_j, with scaled[j] = j*l_j
  for (Exp n = 1; n <= order; ++n) {
    Coef acc = n * s.coeff(n);
    for (const auto& [e, c] : s.terms()) {
      if (e == 0) continue;
      if (e >= n) break;
      acc -= c * scaled[n - e];
    }
    scaled[n] = acc;
  }
  QSeries::Terms out;
  for (Exp n = 1; n <= order; ++n) {
    if (scaled[n] != 0) out.emplace(n, scaled[n] / n);
  }
  return QSeries(std::move(out), s.denom(), order);
}

QSeries exp0(const QSeries& s) {
  require_power_series(s, "exp0");
  if (s.coeff(0) != 0) throw SeriesError("exp0: constant term must be 0");
  if (s.exact()) {
    if (s.is_zero()) return QSeries::constant(1, s.denom());
    throw SeriesError("exp0 of a polynomial needs a truncation bound");
  }
  const Exp order = s.order();
  std::vector<Coef> e(static_cast<std::size_t>(std::max<Exp>(order, 0) + 1));
  e[0] = 1;
  for (Exp n = 1; n <= order; ++n) {
    Coef acc = 0;
    for (const auto& [j, c] : s.terms()) {
      if (j > n) break;
      acc += j * c * e[n - j];
    }
    e[n] = acc / n;
  }
  QSeries::Terms out;
  for (Exp n = 0; n <= order; ++n) {
    if (e[n] != 0) out.emplace(n, e[n]);
  }
  return QSeries(std::move(out), s.denom(), order);
}

QSeries adams_sub(const QSeries& s, int k) {
  if (k < 1) throw SeriesError("adams_sub: k must be positive");
  QSeries::Terms t;
  for (const auto& [e, c] : s.terms()) t.emplace(e * k, c);
  return QSeries(std::move(t), s.denom(), refine_bound(s.order(), k));
}

// ---------------------------------------------------------------- PQSeries

PQSeries::PQSeries(int qdenom, Exp pmax, Exp qmax, Exp plow)
    : qdenom_(qdenom), pmax_(pmax), qmax_(qmax), plow_(plow) {
  require_positive_denom(qdenom);
  normalize();
}

PQSeries::PQSeries(Terms terms, int qdenom, Exp pmax, Exp qmax, Exp plow)
    : terms_(std::move(terms)),
      qdenom_(qdenom),
      pmax_(pmax),
      qmax_(qmax),
      plow_(plow) {
  require_positive_denom(qdenom);
  normalize();
}

void PQSeries::normalize() {
  if (plow_ < -1) throw SeriesError("p-exponents below -1 are not supported");
  for (auto it = terms_.begin(); it != terms_.end();) {
    const auto [i, j] = it->first;
    if (i < plow_ || j < 0) {
      throw SeriesError("PQSeries term outside its support (p^" +
                        std::to_string(i) + ", q-numerator " +
                        std::to_string(j) + ")");
    }
    if (it->second == 0 || i > pmax_ || j > qmax_) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

PQSeries PQSeries::constant(const Coef& c, int qdenom) {
  return monomial(c, 0, 0, qdenom);
}

PQSeries PQSeries::monomial(const Coef& c, Exp pexp, Exp qnum, int qdenom) {
  Terms t;
  t.emplace(Key{pexp, qnum}, c);
  return PQSeries(std::move(t), qdenom, kExact, kExact, std::min<Exp>(pexp, 0));
}

PQSeries PQSeries::embed_q(const QSeries& s) {
  Terms t;
  for (const auto& [e, c] : s.terms()) {
    if (e < 0) throw SeriesError("embed_q: negative q-exponent");
    t.emplace(Key{0, e}, c);
  }
  return PQSeries(std::move(t), s.denom(), kExact, s.order(), 0);
}

PQSeries PQSeries::embed_p(const QSeries& s) {
  if (s.denom() != 1) throw SeriesError("embed_p: p-exponents must be integral");
  Terms t;
  Exp plow = 0;
  for (const auto& [e, c] : s.terms()) {
    t.emplace(Key{e, 0}, c);
    plow = std::min(plow, e);
  }
  return PQSeries(std::move(t), 1, s.order(), kExact, plow);
}

Coef PQSeries::coeff(Exp pexp, Exp qnum) const {
  if (pexp > pmax_ || qnum > qmax_) {
    throw TruncationError("coefficient of p^" + std::to_string(pexp) + " q^" +
                          exponent_str(qnum, qdenom_) +
                          " lies outside the truncation box");
  }
  auto it = terms_.find(Key{pexp, qnum});
  return it == terms_.end() ? Coef(0) : it->second;
}

PQSeries PQSeries::lifted(int factor) const {
  if (factor < 1) throw SeriesError("lift factor must be positive");
  if (factor == 1) return *this;
  Terms t;
  for (const auto& [k, c] : terms_) t.emplace(Key{k.first, k.second * factor}, c);
  return PQSeries(std::move(t), qdenom_ * factor, pmax_,
                  refine_bound(qmax_, factor), plow_);
}

PQSeries PQSeries::truncated(Exp pmax, Exp qmax) const {
  return PQSeries(terms_, qdenom_, std::min(pmax, pmax_), std::min(qmax, qmax_),
                  plow_);
}

PQSeries PQSeries::operator-() const {
  PQSeries r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

PQSeries& PQSeries::operator*=(const Coef& c) {
  for (auto& [k, v] : terms_) v *= c;
  normalize();
  return *this;
}

namespace {

std::pair<PQSeries, PQSeries> common_grid(const PQSeries& a, const PQSeries& b) {
  const int l = std::lcm(a.qdenom(), b.qdenom());
  return {a.lifted(l / a.qdenom()), b.lifted(l / b.qdenom())};
}

}  // namespace

PQSeries operator+(const PQSeries& a, const PQSeries& b) {
  auto [x, y] = common_grid(a, b);
  PQSeries::Terms t = x.terms();
  for (const auto& [k, c] : y.terms()) t[k] += c;
  return PQSeries(std::move(t), x.qdenom(), std::min(x.pmax(), y.pmax()),
                  std::min(x.qmax(), y.qmax()), std::min(x.plow(), y.plow()));
}

PQSeries operator-(const PQSeries& a, const PQSeries& b) { return a + (-b); }

PQSeries operator*(const PQSeries& a, const PQSeries& b) {
  auto [x, y] = common_grid(a, b);
  const Exp plow = x.plow() + y.plow();
  if (plow < -1) throw SeriesError("product would carry p-exponents below -1");
  const Exp pmax = std::min(sat_add(x.pmax(), y.plow()), sat_add(y.pmax(), x.plow()));
  const Exp qmax = std::min(x.qmax(), y.qmax());
  PQSeries::Terms t;
  for (const auto& [ka, ca] : x.terms()) {
    for (const auto& [kb, cb] : y.terms()) {
      const Exp i = ka.first + kb.first;
      const Exp j = ka.second + kb.second;
      if (i > pmax || j > qmax) continue;
      t[PQSeries::Key{i, j}] += ca * cb;
    }
  }
  return PQSeries(std::move(t), x.qdenom(), pmax, qmax, plow);
}

bool operator==(const PQSeries& a, const PQSeries& b) {
  auto [x, y] = common_grid(a, b);
  return x.pmax() == y.pmax() && x.qmax() == y.qmax() && x.terms() == y.terms();
}

std::string PQSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    if (k.first != 0) os << "*p^" << k.first;
    if (k.second != 0) os << "*q^(" << exponent_str(k.second, qdenom_) << ")";
  }
  if (first) os << "0";
  return os.str();
}

namespace {

// Dense working grid over the box [0, P] x [0, Q].
class Grid {
 public:
  Grid(Exp p, Exp q)
      : p_(p), q_(q), cells_(static_cast<std::size_t>((p + 1) * (q + 1))) {}
  Coef& at(Exp i, Exp j) { return cells_[static_cast<std::size_t>(i * (q_ + 1) + j)]; }
  PQSeries::Terms terms() const {
    PQSeries::Terms t;
    for (Exp i = 0; i <= p_; ++i) {
      for (Exp j = 0; j <= q_; ++j) {
        const Coef& c = cells_[static_cast<std::size_t>(i * (q_ + 1) + j)];
        if (c != 0) t.emplace(PQSeries::Key{i, j}, c);
      }
    }
    return t;
  }

 private:
  Exp p_, q_;
  std::vector<Coef> cells_;
};

void require_finite_box(const PQSeries& s, const char* what) {
  if (s.pmax() == kExact || s.qmax() == kExact) {
    throw SeriesError(std::string(what) + " needs a finite truncation box");
  }
}

PQSeries inverse(const PQSeries& s) {
  if (s.is_zero()) throw SeriesError("cannot invert the zero series");
  const Exp v = s.terms().begin()->first.first;
  if (v != s.plow()) {
    throw SeriesError("inverse: leading p-power is not at the support bound");
  }
  const auto lead_it = s.terms().find(PQSeries::Key{v, 0});
  if (lead_it == s.terms().end()) {
    throw SeriesError("inverse: lowest-order term is not an invertible monomial");
  }
  const Coef lead = lead_it->second;
  if (-v < -1) throw SeriesError("inverse would carry p-exponents below -1");
  if (s.terms().size() == 1) {
    return PQSeries::monomial(1 / lead, -v, 0, s.qdenom());
  }
  require_finite_box(s, "inverse");
  const Exp pbox = s.pmax() - v;
  const Exp qbox = s.qmax();
  std::vector<std::pair<PQSeries::Key, Coef>> t;
  for (const auto& [k, c] : s.terms()) {
    if (k.first == v && k.second == 0) continue;
    t.emplace_back(PQSeries::Key{k.first - v, k.second}, c / lead);
  }
  Grid u(pbox, qbox);
  for (Exp i = 0; i <= pbox; ++i) {
    for (Exp j = 0; j <= qbox; ++j) {
      if (i == 0 && j == 0) {
        u.at(0, 0) = 1;
        continue;
      }
      Coef acc = 0;
      for (const auto& [k, c] : t) {
        if (k.first <= i && k.second <= j) acc -= c * u.at(i - k.first, j - k.second);
      }
      u.at(i, j) = acc;
    }
  }
  PQSeries::Terms out;
  const Coef inv_lead = 1 / lead;
  for (auto& [k, c] : u.terms()) out.emplace(PQSeries::Key{k.first - v, k.second}, c * inv_lead);
  return PQSeries(std::move(out), s.qdenom(), pbox - v, qbox, -v);
}

void require_nonnegative_p(const PQSeries& s, const char* what) {
  if (s.plow() < 0) {
    throw SeriesError(std::string(what) + ": series may carry negative p-exponents");
  }
}

}  // namespace

PQSeries pow_int(const PQSeries& s, long e) {
  if (e == 0) return PQSeries::constant(1, s.qdenom());
  if (e < 0) {
    if (s.is_zero()) throw SeriesError("negative power of the zero series");
    return pow_int(inverse(s), -e);
  }
  PQSeries result = PQSeries::constant(1, s.qdenom());
  PQSeries base = s;
  for (long k = e;;) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k == 0) break;
    base = base * base;
  }
  return result;
}

// Both recursions use the Euler operator with weight i + j, which is positive
// away from the origin.
PQSeries log1(const PQSeries& s) {
  require_nonnegative_p(s, "log1");
  if (s.coeff(0, 0) != 1) throw SeriesError("log1: constant term must be 1");
  if (s.terms().size() == 1) return PQSeries(s.qdenom(), s.pmax(), s.qmax());
  require_finite_box(s, "log1");
  const Exp pb = s.pmax();
  const Exp qb = s.qmax();
  Grid scaled(pb, qb);
  for (Exp i = 0; i <= pb; ++i) {
    for (Exp j = 0; j <= qb; ++j) {
      if (i == 0 && j == 0) continue;
      Coef acc = (i + j) * s.coeff(i, j);
      for (const auto& [k, c] : s.terms()) {
        if (k.first == 0 && k.second == 0) continue;
        if (k.first > i || k.second > j || (k.first == i && k.second == j)) continue;
        acc -= c * scaled.at(i - k.first, j - k.second);
      }
      scaled.at(i, j) = acc;
    }
  }
  PQSeries::Terms out;
  for (auto& [k, c] : scaled.terms()) out.emplace(k, c / (k.first + k.second));
  return PQSeries(std::move(out), s.qdenom(), pb, qb);
}

PQSeries exp0(const PQSeries& s) {
  require_nonnegative_p(s, "exp0");
  if (s.coeff(0, 0) != 0) throw SeriesError("exp0: constant term must be 0");
  if (s.is_zero()) return PQSeries(PQSeries::Terms{{{0, 0}, Coef(1)}}, s.qdenom(), s.pmax(), s.qmax());
  require_finite_box(s, "exp0");
  const Exp pb = s.pmax();
  const Exp qb = s.qmax();
  Grid e(pb, qb);
  e.at(0, 0) = 1;
  for (Exp i = 0; i <= pb; ++i) {
    for (Exp j = 0; j <= qb; ++j) {
      if (i == 0 && j == 0) continue;
      Coef acc = 0;
      for (const auto& [k, c] : s.terms()) {
        if (k.first > i || k.second > j) continue;
        acc += (k.first + k.second) * c * e.at(i - k.first, j - k.second);
      }
      e.at(i, j) = acc / (i + j);
    }
  }
  return PQSeries(e.terms(), s.qdenom(), pb, qb);
}

PQSeries adams_sub(const PQSeries& s, int k) {
  if (k < 1) throw SeriesError("adams_sub: k must be positive");
  if (s.plow() * k < -1) {
    throw SeriesError("adams_sub: p^-1 terms would leave the supported range");
  }
  PQSeries::Terms t;
  for (const auto& [key, c] : s.terms()) t.emplace(PQSeries::Key{key.first * k, key.second * k}, c);
  return PQSeries(std::move(t), s.qdenom(), refine_bound(s.pmax(), k),
                  refine_bound(s.qmax(), k), s.plow() * k);
}

}  // namespace moonlie
