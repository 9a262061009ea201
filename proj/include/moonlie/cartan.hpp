#pragma once

// The Borcherds Cartan matrix of a non-Fricke class, evaluated lazily over
// its index set.  Entries depend only on the levels of the two indices, so
// everything here iterates over level blocks rather than copies.

#include <compare>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "moonlie/eta.hpp"
#include "moonlie/linalg.hpp"

namespace moonlie {

enum class Side { Minus, Plus };

/// (-m, j) on the minus side or (n, k) on the plus side.
struct SimpleRootIndex {
  Side side;
  int level;
  long copy;

  friend auto operator<=>(const SimpleRootIndex&, const SimpleRootIndex&) = default;
};

std::string to_string(const SimpleRootIndex& i);

/// One block of identical rows: every copy at (side, level).
struct LevelBlock {
  Side side;
  int level;
  mpz_class copies;
};

class CartanView {
 public:
  /// Minus-side levels 1..mmax, plus-side levels 1..nmax.
  CartanView(const MoonshineClass& cls, int mmax, int nmax);

  const MoonshineClass& moonshine_class() const { return *cls_; }
  int mmax() const { return mmax_; }
  int nmax() const { return nmax_; }

  /// Number of copies at a level (0 when the level does not occur).
  const mpz_class& copies(Side side, int level) const;
  bool contains(const SimpleRootIndex& i) const;

  /// Nonempty blocks in canonical order: minus side then plus side, each by
  /// increasing level.
  std::vector<LevelBlock> blocks() const;

  /// Entry by level alone: 0, -mn, or -(m+n).
  static long level_entry(Side a, int m, Side b, int n);

  long entry(const SimpleRootIndex& i, const SimpleRootIndex& j) const;

  /// Every index in canonical order (level, then copy; minus side first).
  /// Throws std::length_error above `limit` indices.
  std::vector<SimpleRootIndex> index_set(std::size_t limit = 10'000'000) const;

  /// The block-level matrix (one row/column per nonempty block).
  IntMatrix level_matrix() const;

 private:
  const MoonshineClass* cls_;
  int mmax_;
  int nmax_;
  std::vector<mpz_class> minus_;
  std::vector<mpz_class> plus_;
};

struct AxiomReport {
  bool symmetric = true;
  bool offdiagonal_nonpositive = true;
  bool diagonal_nonpositive = true;  // no real simple roots
  bool zero_pattern = true;          // a_ij = 0 exactly on J x J
  std::vector<std::string> violations;

  bool ok() const {
    return symmetric && offdiagonal_nonpositive && diagonal_nonpositive && zero_pattern;
  }
};

AxiomReport validate_axioms(const CartanView& view);
/// Explicit matrix; J is the set of indices with zero diagonal entry.
AxiomReport validate_axioms(const IntMatrix& a);

struct RowRelationReport {
  bool holds = true;
  std::size_t rank = 0;  // rank of the truncated matrix
  std::vector<std::string> failures;
};

/// Checks r_(-m) = (m/ell) r_(-ell) and r_(n) = ((1-n)/ell) r_(-ell) + n r_(1)
/// on every row of the truncation, in exact rational arithmetic.
RowRelationReport row_relations(const CartanView& view);

/// Aligned block table (rows and columns labelled by level and block size).
std::string render_blocks(const CartanView& view);

}  // namespace moonlie
