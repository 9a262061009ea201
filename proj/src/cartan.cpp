#include "moonlie/cartan.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace moonlie {

namespace {

const mpz_class kZero = 0;

std::string block_name(Side side, int level) {
  return side == Side::Minus ? "(-" + std::to_string(level) + ")"
                             : "(" + std::to_string(level) + ")";
}

}  // namespace

std::string to_string(const SimpleRootIndex& i) {
  const std::string lvl = i.side == Side::Minus ? "-" + std::to_string(i.level)
                                                : std::to_string(i.level);
  return "(" + lvl + "," + std::to_string(i.copy) + ")";
}

CartanView::CartanView(const MoonshineClass& cls, int mmax, int nmax)
    : cls_(&cls), mmax_(mmax), nmax_(nmax) {
  if (mmax < 0 || nmax < 0) throw std::invalid_argument("negative truncation bound");
  for (int m = 1; m <= mmax; ++m) minus_.push_back(cls.c_axis(m));
  for (int n = 1; n <= nmax; ++n) plus_.push_back(cls.c_column(n));
}

const mpz_class& CartanView::copies(Side side, int level) const {
  const auto& v = side == Side::Minus ? minus_ : plus_;
  if (level < 1 || level > static_cast<int>(v.size())) return kZero;
  return v[static_cast<std::size_t>(level - 1)];
}

bool CartanView::contains(const SimpleRootIndex& i) const {
  return i.copy >= 1 && copies(i.side, i.level) >= i.copy;
}

std::vector<LevelBlock> CartanView::blocks() const {
  std::vector<LevelBlock> out;
  for (int m = 1; m <= mmax_; ++m) {
    if (minus_[m - 1] != 0) out.push_back({Side::Minus, m, minus_[m - 1]});
  }
  for (int n = 1; n <= nmax_; ++n) {
    if (plus_[n - 1] != 0) out.push_back({Side::Plus, n, plus_[n - 1]});
  }
  return out;
}

long CartanView::level_entry(Side a, int m, Side b, int n) {
  if (a == Side::Minus && b == Side::Minus) return 0;
  if (a == Side::Plus && b == Side::Plus) return -(long(m) + n);
  return -long(m) * n;
}

long CartanView::entry(const SimpleRootIndex& i, const SimpleRootIndex& j) const {
  if (!contains(i)) throw std::out_of_range("no simple root index " + to_string(i));
  if (!contains(j)) throw std::out_of_range("no simple root index " + to_string(j));
  return level_entry(i.side, i.level, j.side, j.level);
}

std::vector<SimpleRootIndex> CartanView::index_set(std::size_t limit) const {
  mpz_class total = 0;
  for (const auto& b : blocks()) total += b.copies;
  if (total > limit) {
    throw std::length_error("index set has " + total.get_str() +
                            " elements, above the limit " + std::to_string(limit));
  }
  std::vector<SimpleRootIndex> out;
  out.reserve(total.get_ui());
  for (const auto& b : blocks()) {
    const long n = b.copies.get_si();
    for (long k = 1; k <= n; ++k) out.push_back({b.side, b.level, k});
  }
  return out;
}

IntMatrix CartanView::level_matrix() const {
  const auto bs = blocks();
  IntMatrix a(bs.size(), std::vector<long>(bs.size()));
  for (std::size_t i = 0; i < bs.size(); ++i) {
    for (std::size_t j = 0; j < bs.size(); ++j) {
      a[i][j] = level_entry(bs[i].side, bs[i].level, bs[j].side, bs[j].level);
    }
  }
  return a;
}

namespace {

// Shared checks over a list of "blocks"; in_j marks zero-diagonal blocks and
// self_pairs says whether a block has more than one copy (so its diagonal
// value also appears off the diagonal).
AxiomReport check_matrix(const IntMatrix& a, const std::vector<bool>& in_j,
                         const std::vector<bool>& multi_copy,
                         const std::vector<std::string>& names) {
  AxiomReport r;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("matrix is not square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i][i] > 0) {
      r.diagonal_nonpositive = false;
      r.violations.push_back("positive diagonal entry at " + names[i]);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][j] != a[j][i]) {
        r.symmetric = false;
        r.violations.push_back("asymmetry at " + names[i] + "," + names[j]);
      }
      const bool off_diagonal = i != j || multi_copy[i];
      if (off_diagonal && a[i][j] > 0) {
        r.offdiagonal_nonpositive = false;
        r.violations.push_back("positive off-diagonal entry at " + names[i] + "," + names[j]);
      }
      const bool zero_expected = in_j[i] && in_j[j];
      if ((a[i][j] == 0) != zero_expected) {
        r.zero_pattern = false;
        r.violations.push_back((zero_expected ? "nonzero entry in the zero block at "
                                              : "zero entry outside the zero block at ") +
                               names[i] + "," + names[j]);
      }
    }
  }
  return r;
}

}  // namespace

AxiomReport validate_axioms(const CartanView& view) {
  const auto bs = view.blocks();
  std::vector<bool> in_j, multi;
  std::vector<std::string> names;
  for (const auto& b : bs) {
    in_j.push_back(b.side == Side::Minus);
    multi.push_back(b.copies > 1);
    names.push_back(block_name(b.side, b.level));
  }
  return check_matrix(view.level_matrix(), in_j, multi, names);
}

AxiomReport validate_axioms(const IntMatrix& a) {
  std::vector<bool> in_j, multi(a.size(), false);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != a.size()) throw std::invalid_argument("matrix is not square");
    in_j.push_back(a[i][i] == 0);
    names.push_back(std::to_string(i + 1));
  }
  return check_matrix(a, in_j, multi, names);
}

RowRelationReport row_relations(const CartanView& view) {
  RowRelationReport r;
  const MoonshineClass& cls = view.moonshine_class();
  const int ell = cls.ell;
  const auto bs = view.blocks();
  // The basis rows are rows of the full matrix, restricted to the truncated
  // columns; they need not lie inside the truncation themselves.
  if (ell < 1) {
    r.holds = false;
    r.failures.push_back("class has no minus-side simple root");
    return r;
  }
  auto row = [&](Side s, int level) {
    std::vector<mpq_class> out;
    for (const auto& b : bs) out.emplace_back(CartanView::level_entry(s, level, b.side, b.level));
    return out;
  };
  const auto base_minus = row(Side::Minus, ell);
  const auto base_plus = row(Side::Plus, 1);
  std::vector<std::vector<mpq_class>> rows;
  for (const auto& b : bs) {
    const auto actual = row(b.side, b.level);
    rows.push_back(actual);
    mpq_class cm, cp;
    if (b.side == Side::Minus) {
      cm = rational(b.level, ell);
      cp = 0;
    } else {
      cm = rational(1 - b.level, ell);
      cp = b.level;
    }
    for (std::size_t j = 0; j < bs.size(); ++j) {
      if (actual[j] != cm * base_minus[j] + cp * base_plus[j]) {
        r.holds = false;
        r.failures.push_back("row " + block_name(b.side, b.level) + " column " +
                             block_name(bs[j].side, bs[j].level));
      }
    }
  }
  r.rank = rank(std::move(rows));
  return r;
}

std::string render_blocks(const CartanView& view) {
  const auto bs = view.blocks();
  std::vector<std::string> labels;
  for (const auto& b : bs) labels.push_back(block_name(b.side, b.level) + "x" + b.copies.get_str());
  std::size_t width = 6;
  for (const auto& l : labels) width = std::max(width, l.size() + 1);
  std::ostringstream os;
  os << std::setw(static_cast<int>(width)) << "";
  for (const auto& l : labels) os << std::setw(static_cast<int>(width)) << l;
  os << "\n";
  const auto a = view.level_matrix();
  for (std::size_t i = 0; i < bs.size(); ++i) {
    os << std::setw(static_cast<int>(width)) << labels[i];
    for (std::size_t j = 0; j < bs.size(); ++j) os << std::setw(static_cast<int>(width)) << a[i][j];
    os << "\n";
  }
  return os.str();
}

}  // namespace moonlie
