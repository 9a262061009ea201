#include "moonlie/linalg.hpp"

#include <utility>

namespace moonlie {

std::size_t rank(std::vector<std::vector<mpq_class>> rows) {
  std::size_t r = 0;
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const mpq_class f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

void EchelonBasis::reduce(SparseVector& v) const {
  // Pivots are increasing; eliminating pivot p only touches columns > p.
  auto it = v.begin();
  while (it != v.end()) {
    auto row = rows_.find(it->first);
    if (row == rows_.end()) {
      ++it;
      continue;
    }
    const mpq_class f = it->second;
    const std::size_t col = it->first;
    for (const auto& [c, x] : row->second) {
      auto& slot = v[c];
      slot -= f * x;
    }
    for (auto jt = v.begin(); jt != v.end();) {
      if (jt->second == 0) {
        jt = v.erase(jt);
      } else {
        ++jt;
      }
    }
    it = v.upper_bound(col);
  }
}

bool EchelonBasis::insert(SparseVector v) {
  reduce(v);
  if (v.empty()) return false;
  const std::size_t pivot = v.begin()->first;
  const mpq_class lead = v.begin()->second;
  for (auto& [c, x] : v) x /= lead;
  // keep rows reduced against the new pivot
  for (auto& [p, row] : rows_) {
    auto hit = row.find(pivot);
    if (hit == row.end()) continue;
    const mpq_class f = hit->second;
    for (const auto& [c, x] : v) row[c] -= f * x;
    for (auto jt = row.begin(); jt != row.end();) {
      if (jt->second == 0) {
        jt = row.erase(jt);
      } else {
        ++jt;
      }
    }
  }
  rows_.emplace(pivot, std::move(v));
  return true;
}

bool EchelonBasis::contains(SparseVector v) const {
  reduce(v);
  return v.empty();
}

}  // namespace moonlie
