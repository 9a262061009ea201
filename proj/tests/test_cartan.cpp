#include <doctest.h>

#include "moonlie/cartan.hpp"

using namespace moonlie;

namespace {

MoonshineClass cls(const char* label) { return build_class(label, *builtin_quotient(label), 12); }

// Signed level: -m for minus side, n for plus side.
long oracle_entry(long a, long b) {
  if (a < 0 && b < 0) return 0;
  if (a < 0 || b < 0) return a * b;  // -m * n with one sign negative
  return -(a + b);
}

long signed_level(const SimpleRootIndex& i) { return i.side == Side::Minus ? -i.level : i.level; }

}  // namespace

TEST_CASE("entries by level") {
  CHECK(CartanView::level_entry(Side::Minus, 3, Side::Minus, 5) == 0);
  CHECK(CartanView::level_entry(Side::Minus, 3, Side::Plus, 5) == -15);
  CHECK(CartanView::level_entry(Side::Plus, 3, Side::Minus, 5) == -15);
  CHECK(CartanView::level_entry(Side::Plus, 3, Side::Plus, 5) == -8);
}

TEST_CASE("entries over a small index set") {
  const MoonshineClass c = cls("4D");
  const CartanView v(c, 2, 3);
  const auto idx = v.index_set();
  // 12 copies at -2, 64 at 1, none at 2, 768 at 3
  CHECK(idx.size() == 12 + 64 + 768);
  CHECK(idx.front().side == Side::Minus);
  CHECK(idx.back().side == Side::Plus);
  CHECK(std::is_sorted(idx.begin(), idx.end()));
  for (std::size_t r = 0; r < idx.size(); r += 97) {
    for (std::size_t s = 0; s < idx.size(); s += 89) {
      CHECK(v.entry(idx[r], idx[s]) == oracle_entry(signed_level(idx[r]), signed_level(idx[s])));
    }
  }
  CHECK_THROWS_AS(v.entry({Side::Minus, 1, 1}, {Side::Plus, 1, 1}), std::out_of_range);
  CHECK_THROWS_AS(v.entry({Side::Plus, 1, 65}, {Side::Plus, 1, 1}), std::out_of_range);
  CHECK_THROWS_AS(v.index_set(100), std::length_error);
}

TEST_CASE("blocks and level matrix") {
  const MoonshineClass c = cls("2B");
  const CartanView v(c, 4, 2);
  const auto b = v.blocks();
  REQUIRE(b.size() == 4);  // -1, -3, 1, 2
  CHECK(b[0].level == 1);
  CHECK(b[1].level == 3);
  CHECK(b[2].side == Side::Plus);
  CHECK(b[3].copies == 98304);
  const IntMatrix m = v.level_matrix();
  CHECK(m[0][1] == 0);
  CHECK(m[0][2] == -1);
  CHECK(m[1][3] == -6);
  CHECK(m[3][3] == -4);
  CHECK(!render_blocks(v).empty());
}

TEST_CASE("axioms hold for both classes") {
  for (const char* label : {"2B", "4D"}) {
    const MoonshineClass c = cls(label);
    for (int mm = 1; mm <= 6; ++mm) {
      for (int nn = 1; nn <= 6; ++nn) {
        const AxiomReport r = validate_axioms(CartanView(c, mm, nn));
        CHECK(r.ok());
        CHECK(r.violations.empty());
      }
    }
  }
}

TEST_CASE("axiom violations are reported") {
  const AxiomReport asym = validate_axioms(IntMatrix{{0, -1}, {-2, -2}});
  CHECK_FALSE(asym.symmetric);
  const AxiomReport pos = validate_axioms(IntMatrix{{-2, 1}, {1, -2}});
  CHECK_FALSE(pos.offdiagonal_nonpositive);
  const AxiomReport real = validate_axioms(IntMatrix{{2, -1}, {-1, -2}});
  CHECK_FALSE(real.diagonal_nonpositive);
  // zero off the J x J block
  const AxiomReport zero = validate_axioms(IntMatrix{{0, 0}, {0, -2}});
  CHECK_FALSE(zero.zero_pattern);
  CHECK(validate_axioms(IntMatrix{{0, -1}, {-1, -2}}).ok());
}

TEST_CASE("row relations") {
  for (const char* label : {"2B", "4D"}) {
    const MoonshineClass c = cls(label);
    for (int mm = 1; mm <= 6; ++mm) {
      for (int nn = 1; nn <= 6; ++nn) {
        const RowRelationReport r = row_relations(CartanView(c, mm, nn));
        CHECK(r.holds);
        CHECK(r.rank <= 2);
      }
    }
  }
  // rank exactly two once both sides are present
  CHECK(row_relations(CartanView(cls("4D"), 2, 3)).rank == 2);
}

TEST_CASE("row relation oracle with ell = 2") {
  // r_(-m) = (m/2) r_(-2) and r_(n) = ((1-n)/2) r_(-2) + n r_(1), checked
  // entrywise against the level formula with rationals.
  for (long col : {-6L, -2L, 1L, 3L, 5L}) {
    for (long m : {2L, 6L}) {
      CHECK(2 * oracle_entry(-m, col) == m * oracle_entry(-2, col));
    }
    for (long n : {1L, 3L, 5L}) {
      CHECK(2 * oracle_entry(n, col) == (1 - n) * oracle_entry(-2, col) + 2 * n * oracle_entry(1, col));
    }
  }
}

TEST_CASE("index formatting") {
  CHECK(to_string(SimpleRootIndex{Side::Minus, 2, 3}) == "(-2,3)");
  CHECK(to_string(SimpleRootIndex{Side::Plus, 1, 1}) == "(1,1)");
}
