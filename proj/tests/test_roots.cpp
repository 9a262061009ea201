#include <doctest.h>

#include <set>

#include "moonlie/roots.hpp"

using namespace moonlie;

namespace {

MoonshineClass cls(const char* label, int order = 16) {
  return build_class(label, *builtin_quotient(label), order);
}

// Frozen from tests/oracles/oracle.py: coefficient matching of the product
// one lattice point at a time, no logarithms.
struct Frozen {
  int m, n;
  const char* value;
};

const Frozen k2B[] = {{1, 0, "24"},
                      {2, 0, "0"},
                      {1, 1, "4096"},
                      {2, 1, "98304"},
                      {2, 2, "10745856"},
                      {3, 1, "1228800"},
                      {3, 2, "432144384"},
                      {4, 4, "200745440641024"},
                      {10, 10, "7290799226607509998510059814194006016"}};

const Frozen k4D[] = {{2, 0, "12"},     {1, 1, "64"},       {2, 2, "2016"},
                      {3, 1, "768"},    {3, 3, "96576"},    {4, 2, "49152"},
                      {9, 9, "7160273438485056"}, {10, 10, "520271697601780000"}};

}  // namespace

TEST_CASE("2B product route against the frozen oracle") {
  const RootTable t = mults_from_product(cls("2B"), 10, 10);
  CHECK(t.level == 2);
  for (const auto& f : k2B) CHECK(t.at(f.m, f.n) == mpz_class(f.value));
}

TEST_CASE("4D product route against the frozen oracle") {
  const RootTable t = mults_from_product(cls("4D"), 10, 10);
  CHECK(t.level == 8);
  for (const auto& f : k4D) CHECK(t.at(f.m, f.n) == mpz_class(f.value));
}

TEST_CASE("product and structure routes agree") {
  for (const char* label : {"2B", "4D"}) {
    const MoonshineClass c = cls(label);
    for (auto [mm, qq] : {std::pair{1, 1}, std::pair{3, 7}, std::pair{7, 3}, std::pair{10, 10}}) {
      const RootTable a = mults_from_product(c, mm, qq), b = mults_from_structure(c, mm, qq);
      CHECK(compare(a, b).empty());
      CHECK(a.mult == b.mult);
    }
  }
}

TEST_CASE("table invariants") {
  for (const char* label : {"2B", "4D"}) {
    const MoonshineClass c = cls(label);
    const RootTable t = mults_from_product(c, 8, 8);
    for (int m = 1; m <= 8; ++m) CHECK(t.at(m, 0) == c.c_axis(m));
    for (int n = 1; n <= 8; ++n) CHECK(t.at(1, n) == c.c_column(n));
    for (const auto& [k, v] : t.mult) CHECK(v > 0);
  }
}

TEST_CASE("a larger box does not change inner values") {
  const MoonshineClass c = cls("4D");
  const RootTable small = mults_from_product(c, 5, 5), big = mults_from_product(c, 7, 7);
  for (int m = 1; m <= 5; ++m) {
    for (int n = 0; n <= 5; ++n) CHECK(small.at(m, n) == big.at(m, n));
  }
}

TEST_CASE("V+ dimensions") {
  const GradedDimTable v = vplus_dims(cls("2B"), 4, 3);
  CHECK(v.at({1, 1}) == 4096);
  CHECK(v.at({2, 1}) == 24 * 4096);
  // p^2 coefficient of prod_{odd m} (1-p^m)^{-24} is binom(25, 2)
  CHECK(v.at({3, 2}) == 300 * 98304);
  for (int n = 1; n <= 3; ++n) CHECK(v.at({1, n}) == cls("2B").c_column(n));
}

TEST_CASE("single plus-side column") {
  // One generator at (1,1), nothing on the axis: only (1,1) is a root.
  const MoonshineClass c = class_from_tables("one", 1, {0, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0});
  const RootTable s = mults_from_structure(c, 6, 6);
  CHECK(s.at(1, 1) == 1);
  for (int t = 2; t <= 6; ++t) CHECK(s.at(t, t) == 0);
  CHECK(s.mult.size() == 1);
  CHECK(compare(s, mults_from_product(c, 6, 6)).empty());
}

TEST_CASE("compare reports perturbed points") {
  const MoonshineClass c = cls("2B");
  const RootTable a = mults_from_product(c, 4, 4);
  CHECK(compare(a, a).empty());
  RootTable b = a;
  b.mult[{3, 2}] += 1;
  const auto d = compare(a, b);
  REQUIRE(d.size() == 1);
  CHECK(d[0].m == 3);
  CHECK(d[0].n == 2);
  RootTable other = a;
  other.qmax = 3;
  CHECK_THROWS_AS(compare(a, other), std::invalid_argument);
  other = a;
  other.label = "4D";
  CHECK_THROWS_AS(compare(a, other), std::invalid_argument);
}

TEST_CASE("lattice export") {
  const RootTable t = mults_from_product(cls("4D"), 7, 4);
  const auto pts = export_lattice(t);
  std::set<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    if (i) CHECK(std::pair{pts[i - 1].m, pts[i - 1].n} < std::pair{p.m, p.n});
    seen.insert({p.m, p.n});
    CHECK(p.multiplicity > 0);
    if (p.n == 0) CHECK(p.kind == RootKind::SimpleMinus);
    else if (p.m == 1) CHECK(p.kind == RootKind::SimplePlus);
    else CHECK(p.kind == RootKind::Nonsimple);
  }
  CHECK(seen.count({2, 2}));
  CHECK_FALSE(seen.count({2, 1}));
  CHECK(std::string(to_string(RootKind::Nonsimple)) == "nonsimple");
}

TEST_CASE("text exports") {
  const RootTable t = mults_from_product(cls("2B"), 2, 1);
  CHECK(to_tsv(t) == "m\tn\tN\tmult\n1\t0\t2\t24\n1\t1\t2\t4096\n2\t0\t2\t0\n2\t1\t2\t98304\n");
  const std::string j = to_json(t);
  CHECK(j.find("\"98304\"") != std::string::npos);
  CHECK(to_json(t) == j);
}

TEST_CASE("box validation and truncation") {
  const MoonshineClass c = cls("2B", 4);
  CHECK_THROWS_AS(mults_from_product(c, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(mults_from_structure(c, 9, 9), TruncationError);
  CHECK_THROWS_AS(mults_from_product(c, 3, 3).at(4, 0), TruncationError);
}
