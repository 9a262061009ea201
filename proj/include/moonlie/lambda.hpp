#pragma once

// Graded traces of an automorphism h and its powers: the V+ character from
// symmetric powers of the axis, the free Lie character of u+ by Adams-level
// logarithm inversion, and both sides of the twisted denominator identity.

#include <map>
#include <stdexcept>
#include <utility>

#include "moonlie/eta.hpp"
#include "moonlie/series.hpp"

namespace moonlie {

class LambdaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tr(h^k | g_{m,0}) and Tr(h^k | g_{1,n/N}) for k = 1..kmax.  Absent
/// entries at a level k <= kmax are zero.
struct AdamsFamily {
  int level = 1;  // N
  int kmax = 1;
  std::map<int, std::map<int, Coef>> axis;    // k -> m -> trace
  std::map<int, std::map<int, Coef>> column;  // k -> n -> trace

  Coef axis_trace(int k, int m) const;
  Coef column_trace(int k, int n) const;

  /// h = id: every trace is a dimension.
  static AdamsFamily identity(const MoonshineClass& cls, int kmax, int mmax, int qmax);
};

/// Tr(h^k | V+) in its natural grading, on the box (mmax, qmax).
PQSeries vplus_trace(const AdamsFamily& fam, int k, int mmax, int qmax);

/// Psi^k applied to the h-graded character of V+: Tr(h^k | V+_{a}) x^{k a},
/// truncated to the box.
PQSeries vplus_character(const AdamsFamily& fam, int k, int mmax, int qmax);

/// (m, n) -> (k -> Tr(h^k | g_{m,n/N})) for n >= 1, wherever k*(m, n) lies
/// in the box.  Zero traces are omitted.
using AdamsTraces = std::map<std::pair<int, int>, std::map<int, Coef>>;

AdamsTraces free_lie_adams(const AdamsFamily& fam, int mmax, int qmax);

struct TwistedIdentity {
  PQSeries lhs;
  PQSeries rhs;
  bool equal = false;
  AdamsTraces traces;
};

TwistedIdentity twisted_identity_check(const AdamsFamily& fam, int mmax, int qmax);

}  // namespace moonlie
