#pragma once

// Root multiplicities c(m, n/N) of a non-Fricke class on a finite box, by two
// independent routes:
//
//  * product route: read the exponents of the denominator product off
//    p*(T(p) - T(-1/tau)(q)) by logarithm and Moebius inversion;
//  * structure route: axis = c(m,0), off-axis = graded dimensions of the
//    free Lie algebra on V+, whose dimensions come from the symmetric
//    algebra on the axis times the c(1,n/N) column.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "moonlie/eta.hpp"
#include "moonlie/freelie.hpp"

namespace moonlie {

class RootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Multiplicities on 1 <= m <= mmax, 0 <= n <= qmax, keyed by (m, n) where n
/// is the numerator of the q-exponent n/N.  Zeros are not stored.
struct RootTable {
  std::string label;
  int level = 1;
  int mmax = 0;
  int qmax = 0;
  std::map<std::pair<int, int>, mpz_class> mult;

  mpz_class at(int m, int n) const;
  bool in_box(int m, int n) const { return m >= 1 && m <= mmax && n >= 0 && n <= qmax; }
};

RootTable mults_from_product(const MoonshineClass& cls, int mmax, int qmax);
RootTable mults_from_structure(const MoonshineClass& cls, int mmax, int qmax);

/// dim V+ at (m, n), 1 <= m <= mmax, 1 <= n <= qmax.
GradedDimTable vplus_dims(const MoonshineClass& cls, int mmax, int qmax);

struct RootDiff {
  int m;
  int n;
  mpz_class first;
  mpz_class second;
};

/// Lattice points where the tables differ, row-major.  Throws
/// std::invalid_argument when class or box differ.
std::vector<RootDiff> compare(const RootTable& a, const RootTable& b);

enum class RootKind { SimpleMinus, SimplePlus, Nonsimple };

struct LatticePoint {
  int m;
  int n;
  mpz_class multiplicity;
  RootKind kind;
};

const char* to_string(RootKind k);

/// One record per nonzero multiplicity, row-major (m, then n).
std::vector<LatticePoint> export_lattice(const RootTable& t);

/// Header line then one row "m<TAB>n<TAB>N<TAB>mult" per box point, row-major.
std::string to_tsv(const RootTable& t);
/// Same content as JSON; multiplicities as decimal strings.
std::string to_json(const RootTable& t);

}  // namespace moonlie
