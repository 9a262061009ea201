#include "moonlie/lambda.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace moonlie {

namespace {

void require_level(const AdamsFamily& fam, int k) {
  if (k < 1 || k > fam.kmax) {
    throw LambdaError("Adams data for h^" + std::to_string(k) + " is not available (kmax = " +
                      std::to_string(fam.kmax) + ")");
  }
}

void require_box(int mmax, int qmax) {
  if (mmax < 1 || qmax < 1) throw std::invalid_argument("character box must have mmax, qmax >= 1");
}

Coef lookup(const std::map<int, std::map<int, Coef>>& table, int k, int i) {
  auto row = table.find(k);
  if (row == table.end()) return 0;
  auto it = row->second.find(i);
  return it == row->second.end() ? Coef(0) : it->second;
}

// sign * sum_{m*l <= top} (1/l) axis(k*l)(m) p^{m*l}
QSeries axis_log(const AdamsFamily& fam, int k, int top, int sign) {
  QSeries::Terms t;
  for (int l = 1; l <= top; ++l) {
    for (int m = 1; m * l <= top; ++m) {
      const Coef c = fam.axis_trace(k * l, m);
      if (c != 0) t[Exp(m) * l] += Coef(sign) * c / l;
    }
  }
  return QSeries(std::move(t), 1, top);
}

// sum_{n <= qmax} column(k)(n) p q^{n/N}
PQSeries column_series(const AdamsFamily& fam, int k, int qmax) {
  PQSeries::Terms t;
  for (int n = 1; n <= qmax; ++n) {
    const Coef c = fam.column_trace(k, n);
    if (c != 0) t[{1, n}] = c;
  }
  return PQSeries(std::move(t), fam.level, kExact, qmax, 1);
}

}  // namespace

Coef AdamsFamily::axis_trace(int k, int m) const {
  require_level(*this, k);
  return lookup(axis, k, m);
}

Coef AdamsFamily::column_trace(int k, int n) const {
  require_level(*this, k);
  return lookup(column, k, n);
}

AdamsFamily AdamsFamily::identity(const MoonshineClass& cls, int kmax, int mmax, int qmax) {
  AdamsFamily fam;
  fam.level = cls.level;
  fam.kmax = kmax;
  for (int k = 1; k <= kmax; ++k) {
    for (int m = 1; m <= mmax; ++m) {
      if (cls.c_axis(m) != 0) fam.axis[k][m] = cls.c_axis(m);
    }
    for (int n = 1; n <= qmax; ++n) {
      if (cls.c_column(n) != 0) fam.column[k][n] = cls.c_column(n);
    }
  }
  return fam;
}

PQSeries vplus_trace(const AdamsFamily& fam, int k, int mmax, int qmax) {
  require_box(mmax, qmax);
  require_level(fam, k);
  const QSeries sym = exp0(axis_log(fam, k, mmax - 1, 1));
  return (PQSeries::embed_p(sym) * column_series(fam, k, qmax)).truncated(mmax, qmax);
}

PQSeries vplus_character(const AdamsFamily& fam, int k, int mmax, int qmax) {
  require_box(mmax, qmax);
  if (k < 1) throw std::invalid_argument("Adams index must be positive");
  // V+ lives at n >= 1, so a box below k in q carries nothing after scaling.
  if (mmax < k || qmax < k) return PQSeries(fam.level, mmax, qmax);
  return adams_sub(vplus_trace(fam, k, mmax / k, qmax / k), k).truncated(mmax, qmax);
}

AdamsTraces free_lie_adams(const AdamsFamily& fam, int mmax, int qmax) {
  require_box(mmax, qmax);
  const int jmax = std::min(mmax, qmax);
  AdamsTraces out;
  // Largest j first: t_j needs t_{jk} for k > 1.
  for (int j = jmax; j >= 1; --j) {
    const int mj = mmax / j, qj = qmax / j;
    const PQSeries tj = vplus_trace(fam, j, mj, qj);
    const PQSeries fj = -log1(PQSeries::constant(1, fam.level) - tj);
    for (int m = 1; m <= mj; ++m) {
      for (int n = 1; n <= qj; ++n) {
        Coef c = fj.coeff(m, n);
        const int g = std::gcd(m, n);
        for (int d = 2; d <= g; ++d) {
          if (g % d != 0) continue;
          auto it = out.find({m / d, n / d});
          if (it == out.end()) continue;
          auto jt = it->second.find(j * d);
          if (jt != it->second.end()) c -= jt->second / d;
        }
        if (c != 0) out[{m, n}][j] = c;
      }
    }
  }
  return out;
}

TwistedIdentity twisted_identity_check(const AdamsFamily& fam, int mmax, int qmax) {
  require_box(mmax, qmax);
  TwistedIdentity r;
  r.traces = free_lie_adams(fam, mmax, qmax);

  const QSeries axis_part = exp0(axis_log(fam, 1, mmax, -1));
  r.lhs = (PQSeries::embed_p(axis_part) - column_series(fam, 1, qmax)).truncated(mmax, qmax);

  PQSeries::Terms expo;
  for (int l = 1; l <= mmax; ++l) {
    for (int m = 1; m * l <= mmax; ++m) {
      const Coef c = fam.axis_trace(l, m);
      if (c != 0) expo[{Exp(m) * l, 0}] -= c / l;
    }
  }
  for (const auto& [key, by_k] : r.traces) {
    for (const auto& [k, c] : by_k) {
      const Exp pm = Exp(key.first) * k, qn = Exp(key.second) * k;
      if (pm <= mmax && qn <= qmax) expo[{pm, qn}] -= c / k;
    }
  }
  r.rhs = exp0(PQSeries(std::move(expo), fam.level, mmax, qmax));
  r.equal = r.lhs == r.rhs;
  return r;
}

}  // namespace moonlie
