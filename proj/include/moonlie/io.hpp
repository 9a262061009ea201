#pragma once

// File formats: class definitions and Adams families (JSON text), and the
// SVG root-lattice figure.
//
// Class file: one object or an array of objects.
//   {"label": "2B", "factors": [[1, 24], [2, -24]],
//    "overrides": {"cm0": {"1": 25}, "c1n": {"3": 0}}}
// or a table-only class
//   {"label": "X", "level": 2, "cm0": [24, 0, ...], "c1n": [4096, ...]}
// Overrides replace single table entries after the class is built; the eta
// quotient itself is unchanged.
//
// Adams file:
//   {"N": 2, "kmax": 4, "axis": [[k, m, num, den], ...],
//    "column": [[k, n, num, den], ...]}

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "moonlie/eta.hpp"
#include "moonlie/lambda.hpp"
#include "moonlie/roots.hpp"

namespace moonlie {

/// Malformed or unreadable input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ClassSpec {
  std::string label;
  std::optional<EtaQuotient> quotient;
  int level = 0;  // table-only classes
  std::vector<mpz_class> cm0;
  std::vector<mpz_class> c1n;
  std::map<int, mpz_class> cm0_override;
  std::map<int, mpz_class> c1n_override;
};

std::vector<ClassSpec> parse_class_file(const std::string& text);
std::string read_text_file(const std::string& path);

/// Builds the class to the given order and applies overrides.
MoonshineClass realize(const ClassSpec& spec, int order);

AdamsFamily parse_adams_file(const std::string& text);
std::string to_json(const AdamsFamily& fam);

/// Root lattice on the table box: dark nodes for plus-side simple roots,
/// medium for minus-side simple roots on the axis, light for the rest.
std::string render_svg(const RootTable& t);

}  // namespace moonlie
