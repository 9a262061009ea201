#pragma once

// Dedekind eta quotients, their Fricke transforms, and the simple-root
// multiplicity sequences c(m,0) and c(1,n/N) of a non-Fricke class.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "moonlie/series.hpp"

namespace moonlie {

class EtaError : public std::invalid_argument {
 public:
  enum class Kind {
    Malformed,         // bad factor list
    NonzeroWeight,     // sum of exponents is not zero
    NonIntegralLevel,  // leading exponent of T(-1/tau) is not 1/N
    BadPrefactor,      // (prod a^b)^(-1/2) is not a positive integer
    NonConforming,     // series does not have the expected product shape
  };

  EtaError(Kind kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct EtaFactor {
  int scale;     // a: eta(a*tau)
  int exponent;  // b
};

/// prod_i eta(a_i tau)^{b_i}; scales distinct and positive, exponents nonzero.
class EtaQuotient {
 public:
  EtaQuotient() = default;
  explicit EtaQuotient(std::vector<EtaFactor> factors);

  const std::vector<EtaFactor>& factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }
  int weight_twice() const;  // sum of exponents
  std::string to_string() const;

 private:
  std::vector<EtaFactor> factors_;
};

/// q-expansion of the quotient through exponent (leading exponent + order).
QSeries expand_eta_quotient(const EtaQuotient& eq, int order);

/// The unique c(1..order) with T = q^{-1} prod (1 - q^m)^{c(m)} through
/// q^{order-1}.  Element m-1 holds c(m,0).
std::vector<mpz_class> extract_cm0(const QSeries& t, int order);

/// q^{-1} prod_{m<=order} (1 - q^m)^{cm0(m)} through q^{order-1}.
QSeries reconstruct_from_cm0(const std::vector<mpz_class>& cm0, int order);

struct FrickeData {
  int level;            // N
  mpz_class prefactor;  // (prod a^b)^(-1/2)
  QSeries series;       // T(-1/tau) on the 1/N grid through q^{order/N}
};

/// Fricke transform, cross-checked between direct expansion of
/// prod eta(tau/a)^b and the product over c(m,0).
FrickeData fricke_transform(const EtaQuotient& eq, int order);

/// T(-1/tau) from prod eta(tau/a_i)^{b_i}, without the c(m,0) sequence.
FrickeData fricke_direct(const EtaQuotient& eq, int order);

/// prefactor q^{1/N} prod_m (1 - q^{m/N})^{-cm0(m)} through q^{order/N}.
QSeries fricke_from_cm0(const mpz_class& prefactor, int level,
                        const std::vector<mpz_class>& cm0, int order);

/// Everything the root computations need about one non-Fricke class.
struct MoonshineClass {
  std::string label;
  std::optional<EtaQuotient> quotient;  // absent for table-only classes
  int level = 1;                        // N
  int ell = 1;
  mpz_class prefactor;
  std::vector<mpz_class> cm0;  // cm0[m-1] = c(m,0)
  std::vector<mpz_class> c1n;  // c1n[n-1] = c(1,n/N)

  int order() const { return static_cast<int>(std::min(cm0.size(), c1n.size())); }
  /// c(m,0); throws TruncationError past the computed order.
  const mpz_class& c_axis(int m) const;
  /// c(1,n/N); throws TruncationError past the computed order.
  const mpz_class& c_column(int n) const;
};

inline constexpr int kDefaultOrder = 24;

MoonshineClass build_class(const std::string& label, const EtaQuotient& eq,
                           int order = kDefaultOrder);

/// Class assembled directly from multiplicity tables (no eta quotient).
/// Checks the table invariants only.
MoonshineClass class_from_tables(const std::string& label, int level,
                                 std::vector<mpz_class> cm0,
                                 std::vector<mpz_class> c1n);

/// Classes printed as eta quotients: "2B" and "4D".
std::optional<EtaQuotient> builtin_quotient(const std::string& label);
std::vector<std::string> builtin_labels();

}  // namespace moonlie
