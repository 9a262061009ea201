#include <doctest.h>

#include <random>
#include <vector>

#include "moonlie/series.hpp"

using namespace moonlie;

namespace {

using Dense = std::vector<Coef>;

Dense dense_mul(const Dense& a, const Dense& b, std::size_t len) {
  Dense out(len);
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

QSeries from_dense(const Dense& d, int denom = 1) {
  QSeries::Terms t;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] != 0) t[static_cast<Exp>(i)] = d[i];
  }
  return QSeries(std::move(t), denom, static_cast<Exp>(d.size()) - 1);
}

Dense random_dense(std::mt19937_64& rng, std::size_t len, bool zero_constant = false) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  Dense d(len);
  for (auto& c : d) {
    c = Coef(num(rng), den(rng));
    c.canonicalize();
  }
  if (zero_constant) d[0] = 0;
  return d;
}

PQSeries random_pq(std::mt19937_64& rng, int qdenom, Exp pmax, Exp qmax, bool zero_constant) {
  std::uniform_int_distribution<int> num(-4, 4), keep(0, 2);
  PQSeries::Terms t;
  for (Exp i = 0; i <= pmax; ++i) {
    for (Exp j = 0; j <= qmax; ++j) {
      if (keep(rng) == 0) continue;
      if (zero_constant && i == 0 && j == 0) continue;
      const int v = num(rng);
      if (v != 0) t[{i, j}] = v;
    }
  }
  return PQSeries(std::move(t), qdenom, pmax, qmax);
}

}  // namespace

TEST_CASE("rational and moebius helpers") {
  CHECK(rational(6, -4) == Coef(-3, 2));
  CHECK(is_integer(rational(8, 4)));
  CHECK_FALSE(is_integer(rational(1, 3)));
  CHECK_THROWS_AS(to_integer(rational(1, 3), "x"), SeriesError);
  const int expected[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
  for (int n = 1; n <= 12; ++n) CHECK(moebius(n) == expected[n - 1]);
  for (int n = 1; n <= 60; ++n) {
    int s = 0;
    for (int d = 1; d <= n; ++d) {
      if (n % d == 0) s += moebius(d);
    }
    CHECK(s == (n == 1 ? 1 : 0));
  }
  CHECK_THROWS(moebius(0));
}

TEST_CASE("pentagonal product") {
  QSeries p = QSeries::constant(1, 1, 16);
  for (int n = 1; n <= 16; ++n) p = p * (QSeries::constant(1) - QSeries::monomial(1, n));
  const long expected[] = {1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1, 0};
  for (int i = 0; i <= 16; ++i) CHECK(p.coeff(i) == expected[i]);
  CHECK(p.order() == 16);
  CHECK_THROWS_AS(p.coeff(17), TruncationError);
}

TEST_CASE("multiplication matches a dense oracle") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    const Dense a = random_dense(rng, 9), b = random_dense(rng, 7);
    const QSeries prod = from_dense(a) * from_dense(b);
    CHECK(prod.order() >= 6);
    const Dense ref = dense_mul(a, b, 7);
    for (int i = 0; i <= 6; ++i) CHECK(prod.coeff(i) == ref[static_cast<std::size_t>(i)]);
  }
}

TEST_CASE("truncation bound follows valuations") {
  // q^2 (1 + O(q^3)) times q^{-1} (1 + O(q^4)): known through q^{4}
  const QSeries a = QSeries(QSeries::Terms{{2, 1}}, 1, 4);
  const QSeries b = QSeries(QSeries::Terms{{-1, 1}}, 1, 3);
  const QSeries c = a * b;
  CHECK(c.order() == std::min<Exp>(4 - 1, 3 + 2));
  CHECK(c.coeff(1) == 1);
  // exact polynomial times truncated series
  const QSeries d = QSeries::polynomial({1, 1}) * QSeries(QSeries::Terms{{0, 1}}, 1, 5);
  CHECK(d.order() == 5);
}

TEST_CASE("ring laws on random series") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const QSeries a = from_dense(random_dense(rng, 8)), b = from_dense(random_dense(rng, 8)),
                  c = from_dense(random_dense(rng, 8));
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == QSeries(1, 7));
    CHECK(-(-a) == a);
  }
}

TEST_CASE("mixed grids combine on the common refinement") {
  const QSeries half = QSeries::monomial(1, 1, 2, 5);  // q^{1/2}, order 5/2
  const QSeries third = QSeries::monomial(1, 1, 3, 6); // q^{1/3}, order 2
  const QSeries s = half * third;
  CHECK(s.denom() == 6);
  CHECK(s.coeff(mpq_class(5, 6)) == 1);
  CHECK(s.coeff(mpq_class(1, 2)) == 0);
  CHECK(s.coeff(mpq_class(1, 7)) == 0);  // off the grid
}

TEST_CASE("pow_int and inverses") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    Dense d = random_dense(rng, 8);
    if (d[0] == 0) d[0] = 1;
    const QSeries s = from_dense(d);
    CHECK(pow_int(s, 3) == s * s * s);
    CHECK(pow_int(s, 0) == QSeries::constant(1));
    CHECK(pow_int(s, -2) * pow_int(s, 2) == QSeries::constant(1, 1, 7));
  }
  CHECK_THROWS_AS(pow_int(QSeries(1, 5), -1), SeriesError);
  // monomials invert exactly
  CHECK(pow_int(QSeries::monomial(2, 3), -1) == QSeries::monomial(Coef(1, 2), -3));
}

TEST_CASE("exp and log are inverse") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    const QSeries x = from_dense(random_dense(rng, 9, true));
    const QSeries e = exp0(x);
    CHECK(e.coeff(0) == 1);
    CHECK(log1(e) == x);
    CHECK(exp0(log1(QSeries::constant(1, 1, 8) + x)) == QSeries::constant(1, 1, 8) + x);
  }
  // log(1 - q) = -sum q^n / n
  const QSeries l = log1(QSeries::polynomial({1, -1}, 10));
  for (int n = 1; n <= 10; ++n) CHECK(l.coeff(n) == Coef(-1, n));
  CHECK_THROWS_AS(log1(QSeries::polynomial({2, 1}, 5)), SeriesError);
  CHECK_THROWS_AS(exp0(QSeries::polynomial({1, 1}, 5)), SeriesError);
}

TEST_CASE("adams substitution") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const QSeries s = from_dense(random_dense(rng, 6));
    for (int a = 1; a <= 3; ++a) {
      for (int b = 1; b <= 3; ++b) {
        CHECK(adams_sub(adams_sub(s, a), b) == adams_sub(s, a * b));
      }
    }
    const QSeries t = adams_sub(s, 2);
    CHECK(t.coeff(4) == s.coeff(2));
    CHECK(t.coeff(3) == 0);
    // every grid point up to 2*5+1 is known: odd exponents vanish
    CHECK(t.order() == 11);
  }
  CHECK_THROWS(adams_sub(QSeries::constant(1), 0));
}

TEST_CASE("regridding and lifting") {
  const QSeries s = QSeries(QSeries::Terms{{0, 1}, {4, 3}}, 2, 7);
  const QSeries coarse = s.regridded(1);
  CHECK(coarse.coeff(2) == 3);
  CHECK(s.lifted(3).coeff(mpq_class(2)) == 3);
  CHECK_THROWS_AS(QSeries(QSeries::Terms{{1, 1}}, 2, 3).regridded(1), SeriesError);
}

TEST_CASE("two-variable arithmetic") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const PQSeries a = random_pq(rng, 2, 4, 5, false), b = random_pq(rng, 2, 4, 5, false),
                   c = random_pq(rng, 2, 4, 5, false);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    // coefficient of the product against direct convolution
    const PQSeries ab = a * b;
    for (Exp i = 0; i <= 4; ++i) {
      for (Exp j = 0; j <= 5; ++j) {
        Coef ref = 0;
        for (Exp i2 = 0; i2 <= i; ++i2) {
          for (Exp j2 = 0; j2 <= j; ++j2) ref += a.coeff(i2, j2) * b.coeff(i - i2, j - j2);
        }
        CHECK(ab.coeff(i, j) == ref);
      }
    }
  }
}

TEST_CASE("two-variable exp and log") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const PQSeries x = random_pq(rng, 3, 3, 4, true);
    CHECK(log1(exp0(x)) == x);
  }
  // -log(1 - p q^{1/2}) = sum (p q^{1/2})^k / k
  const PQSeries f = PQSeries::constant(1, 2) - PQSeries::monomial(1, 1, 1, 2);
  const PQSeries l = -log1(f.truncated(4, 6));
  for (int k = 1; k <= 4; ++k) CHECK(l.coeff(k, k) == Coef(1, k));
  CHECK(l.coeff(2, 1) == 0);
}

TEST_CASE("two-variable adams and embeddings") {
  const QSeries t = QSeries::polynomial({1, 2, 3}, 2);
  const PQSeries p = PQSeries::embed_p(t);
  CHECK(p.coeff(2, 0) == 3);
  CHECK(p.pmax() == 2);
  const PQSeries q = PQSeries::embed_q(QSeries::monomial(5, 1, 4, 3));
  CHECK(q.coeff(0, 1) == 5);
  CHECK(q.qdenom() == 4);
  const PQSeries a = adams_sub(p * q, 2);
  CHECK(a.coeff(4, 2) == 15);
  CHECK(a.pmax() == 5);
  CHECK(adams_sub(adams_sub(p * q, 2), 3) == adams_sub(p * q, 6));
}

TEST_CASE("p^{-1} leading term") {
  const PQSeries x = PQSeries::monomial(1, -1, 0) + PQSeries::monomial(-1, 0, 1, 2);
  CHECK(x.plow() == -1);
  const PQSeries y = x * PQSeries::monomial(1, 1, 0);
  CHECK(y.coeff(0, 0) == 1);
  CHECK(y.coeff(1, 1) == -1);
  CHECK_THROWS_AS(x * x, SeriesError);
}

TEST_CASE("documented examples") {
  CHECK(QSeries::polynomial({1, 1}) * QSeries::polynomial({1, -1}) == QSeries::polynomial({1, 0, -1}));
  const QSeries s = QSeries::polynomial({3, 0, -2}, 6);
  CHECK(s * QSeries::constant(1) == s);
  const QSeries halves(QSeries::Terms{{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}}, 2, kExact);
  const QSeries sum = halves + QSeries::polynomial({1, 1, 1});
  CHECK(sum.denom() == 2);
  CHECK(sum.coeff(mpq_class(1)) == 2);

  const QSeries geo = pow_int(QSeries::polynomial({1, -1}, 8), -1);
  for (int n = 0; n <= 8; ++n) CHECK(geo.coeff(n) == 1);
  CHECK(pow_int(QSeries::polynomial({1, -1}), 24).coeff(2) == 276);
  CHECK(pow_int(QSeries::polynomial({1, -1}, 5), -24).coeff(1) == 24);
  CHECK(pow_int(s, 0) == QSeries::constant(1));

  CHECK(exp0(QSeries(1, 5)) == QSeries::constant(1, 1, 5));
  const QSeries cubic = QSeries::polynomial({1, -3, 0, 1}, 9);
  CHECK(exp0(log1(cubic)) == cubic);

  CHECK(adams_sub(QSeries::polynomial({1, 1}), 2) == QSeries::polynomial({1, 0, 1}));
  CHECK(adams_sub(s, 1) == s);
  CHECK(adams_sub(PQSeries::monomial(1, 1, 1, 2), 3) == PQSeries::monomial(1, 3, 3, 2));
  CHECK(QSeries::polynomial({1, 24}).coeff(1) == 24);
  CHECK(moebius(1) == 1);
  CHECK(moebius(4) == 0);
  CHECK(moebius(6) == 1);
}
