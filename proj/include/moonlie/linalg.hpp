#pragma once

// Exact rational linear algebra for the desk-scale checks.

#include <cstddef>
#include <map>
#include <vector>

#include <gmpxx.h>

namespace moonlie {

using IntMatrix = std::vector<std::vector<long>>;
using SparseVector = std::map<std::size_t, mpq_class>;

/// Rank of a dense rational matrix by fraction-exact elimination.
std::size_t rank(std::vector<std::vector<mpq_class>> rows);

/// Incrementally grown row-echelon basis of a subspace of Q^n.
class EchelonBasis {
 public:
  /// Adds v; returns true if it was independent of the current span.
  bool insert(SparseVector v);
  std::size_t size() const { return rows_.size(); }
  bool contains(SparseVector v) const;

 private:
  void reduce(SparseVector& v) const;

  std::map<std::size_t, SparseVector> rows_;  // keyed by pivot column, pivot = 1
};

}  // namespace moonlie
