#pragma once

// Exact truncated series in one variable (q, fractional exponents) and two
// variables (p, q).  Coefficients are arbitrary-precision rationals.
//
// Exponents are stored as integer numerators over a per-series denominator.
// Every term of the underlying infinite series, known or not, lies on that
// grid; the truncation bound says which part of it is known.

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace moonlie {

using Coef = mpq_class;
using Exp = std::int64_t;

/// Truncation bound of a series that is known exactly (a polynomial).
inline constexpr Exp kExact = std::numeric_limits<Exp>::max();

/// A coefficient was requested beyond the truncation bound.
class TruncationError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Violated precondition of a series operation.
class SeriesError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Canonicalized n/d.
Coef rational(Exp n, Exp d);

bool is_integer(const Coef& c);
/// Converts to an integer or throws SeriesError naming `what`.
mpz_class to_integer(const Coef& c, const std::string& what);

/// Classical Moebius function.
int moebius(Exp n);

namespace detail {
Exp sat_add(Exp a, Exp b);
Exp sat_mul(Exp a, Exp b);
}  // namespace detail

/// Truncated series in q with exponents in (1/denom)Z.  Terms with numerator
/// greater than order() are unknown.
class QSeries {
 public:
  using Terms = std::map<Exp, Coef>;

  QSeries() = default;
  QSeries(int denom, Exp order);
  QSeries(Terms terms, int denom, Exp order);

  static QSeries constant(const Coef& c, int denom = 1, Exp order = kExact);
  static QSeries monomial(const Coef& c, Exp numerator, int denom = 1,
                          Exp order = kExact);
  /// Dense integer polynomial sum_i coeffs[i] q^i.
  static QSeries polynomial(std::initializer_list<long> coeffs,
                            Exp order = kExact);

  int denom() const { return denom_; }
  Exp order() const { return order_; }
  bool exact() const { return order_ == kExact; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Lowest stored numerator, or order()+1 for a series with no known terms.
  Exp valuation() const;

  /// Coefficient of q^{numerator/denom()}.
  Coef coeff(Exp numerator) const;
  /// Coefficient of q^{exponent} for a rational exponent.
  Coef coeff(const mpq_class& exponent) const;

  /// Same series on the finer grid 1/(denom*factor).
  QSeries lifted(int factor) const;
  QSeries truncated(Exp order) const;
  /// Coarsens the grid to 1/new_denom.  Every stored numerator must be a
  /// multiple of denom()/new_denom, and the caller vouches for the tail.
  QSeries regridded(int new_denom) const;

  QSeries operator-() const;
  QSeries& operator*=(const Coef& c);

  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const Coef& c, QSeries s) { return s *= c; }

  /// Same known part on a common grid and the same truncation bound.
  friend bool operator==(const QSeries& a, const QSeries& b);

  std::string to_string() const;

 private:
  void normalize();

  Terms terms_;
  int denom_ = 1;
  Exp order_ = kExact;
};

QSeries pow_int(const QSeries& s, long e);
QSeries log1(const QSeries& s);
QSeries exp0(const QSeries& s);
QSeries adams_sub(const QSeries& s, int k);

/// Truncated series in p and q.  p has integer exponents, at least plow()
/// (which is -1 or more); q exponents are nonnegative multiples of
/// 1/qdenom().  Known terms are those with p-exponent <= pmax() and
/// q-numerator <= qmax().
class PQSeries {
 public:
  using Key = std::pair<Exp, Exp>;
  using Terms = std::map<Key, Coef>;

  PQSeries() = default;
  PQSeries(int qdenom, Exp pmax, Exp qmax, Exp plow = 0);
  PQSeries(Terms terms, int qdenom, Exp pmax, Exp qmax, Exp plow = 0);

  static PQSeries constant(const Coef& c, int qdenom = 1);
  static PQSeries monomial(const Coef& c, Exp pexp, Exp qnum, int qdenom = 1);

  /// q-series viewed as a series in q alone (exact in p).
  static PQSeries embed_q(const QSeries& s);
  /// Integer-exponent q-series reinterpreted in the variable p (exact in q).
  static PQSeries embed_p(const QSeries& s);

  int qdenom() const { return qdenom_; }
  Exp pmax() const { return pmax_; }
  Exp qmax() const { return qmax_; }
  Exp plow() const { return plow_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Coef coeff(Exp pexp, Exp qnum) const;

  PQSeries lifted(int factor) const;
  PQSeries truncated(Exp pmax, Exp qmax) const;

  PQSeries operator-() const;
  PQSeries& operator*=(const Coef& c);

  friend PQSeries operator+(const PQSeries& a, const PQSeries& b);
  friend PQSeries operator-(const PQSeries& a, const PQSeries& b);
  friend PQSeries operator*(const PQSeries& a, const PQSeries& b);
  friend PQSeries operator*(const Coef& c, PQSeries s) { return s *= c; }
  friend bool operator==(const PQSeries& a, const PQSeries& b);

  std::string to_string() const;

 private:
  void normalize();

  Terms terms_;
  int qdenom_ = 1;
  Exp pmax_ = kExact;
  Exp qmax_ = kExact;
  Exp plow_ = 0;
};

PQSeries pow_int(const PQSeries& s, long e);
PQSeries log1(const PQSeries& s);
PQSeries exp0(const PQSeries& s);
PQSeries adams_sub(const PQSeries& s, int k);

}  // namespace moonlie
