#pragma once

// Free Lie algebras at desk scale: Lyndon-word dimension counts, Witt-type
// inversion of generating dimensions, quotients by a zero block of
// commutation relations, and the elimination decomposition check.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "moonlie/linalg.hpp"

namespace moonlie {

using Multidegree = std::vector<int>;
using GradedDimTable = std::map<Multidegree, mpz_class>;

int total_degree(const Multidegree& d);

/// Which multidegrees a computation covers: total degree at most `total`,
/// and/or componentwise at most `box`.
struct DegreeBound {
  std::optional<int> total;
  std::vector<int> box;

  static DegreeBound by_total(int maxdeg) { return {maxdeg, {}}; }
  static DegreeBound by_box(std::vector<int> box) { return {std::nullopt, std::move(box)}; }
  bool admits(const Multidegree& d) const;
};

/// Letters of a free Lie algebra with their multidegrees.  Letters built by
/// standard() carry unit degrees and a flag for membership in J.
class GeneratorAlphabet {
 public:
  GeneratorAlphabet(std::vector<Multidegree> degrees, std::vector<bool> in_j);
  static GeneratorAlphabet standard(int rank, const std::vector<int>& j = {});

  std::size_t size() const { return degrees_.size(); }
  std::size_t rank() const { return degrees_.empty() ? 0 : degrees_.front().size(); }
  const Multidegree& degree(std::size_t letter) const { return degrees_[letter]; }
  bool in_j(std::size_t letter) const { return in_j_[letter]; }

 private:
  std::vector<Multidegree> degrees_;
  std::vector<bool> in_j_;
};

/// All Lyndon words of length 1..maxlen over {0..letters-1}, in lex order.
std::vector<std::vector<int>> lyndon_words(int letters, int maxlen);

/// Graded dimensions of the free Lie algebra, counting Lyndon words whose
/// multidegree has total degree <= maxdeg.
GradedDimTable lyndon_dims(const GeneratorAlphabet& alphabet, int maxdeg);

/// Graded dimensions of the free Lie algebra L(V) on a graded space V, from
/// prod (1 - x^a)^{dim L(V)_a} = 1 - ch V.  Nonzero entries only.
GradedDimTable witt_dims(const GradedDimTable& generators, const DegreeBound& bound);
GradedDimTable witt_dims(const GradedDimTable& generators, int maxdeg);

/// Dimensions of the free Lie algebra on e_1..e_r modulo the ideal generated
/// by [e_i, e_j] for i, j in J (0-based), computed degree by degree.
/// A must be symmetric with a_ii <= 0 and zeros exactly on J x J.
GradedDimTable zero_block_quotient_dims(const IntMatrix& a, const std::vector<int>& j,
                                        int maxdeg);

/// Whether A and J satisfy the zero-block hypothesis.
bool admissible_zero_block(const IntMatrix& a, const std::vector<int>& j,
                           std::string* why = nullptr);

struct EliminationReport {
  GradedDimTable quotient;     // n+ computed by linear algebra
  GradedDimTable heisenberg;   // g_J^+: unit degrees in J
  GradedDimTable u_generators; // degrees of the generating set of u+
  GradedDimTable free_part;    // witt_dims(u_generators)
  bool decomposition_holds = false;
  bool root_support_holds = false;
  std::vector<std::string> mismatches;

  bool ok() const { return decomposition_holds && root_support_holds; }
};

/// A random admissible (A, J) with 1..max_size indices and entries in -3..-1
/// off the zero block.
std::pair<IntMatrix, std::vector<int>> random_admissible(std::mt19937_64& rng, int max_size);

EliminationReport elimination_check(const IntMatrix& a, const std::vector<int>& j, int maxdeg);

std::string to_string(const Multidegree& d);

}  // namespace moonlie
