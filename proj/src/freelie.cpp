#include "moonlie/freelie.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "moonlie/series.hpp"

namespace moonlie {

int total_degree(const Multidegree& d) { return std::accumulate(d.begin(), d.end(), 0); }

std::string to_string(const Multidegree& d) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << ")";
  return os.str();
}

bool DegreeBound::admits(const Multidegree& d) const {
  if (total && total_degree(d) > *total) return false;
  if (!box.empty()) {
    if (box.size() != d.size()) throw std::invalid_argument("degree bound rank mismatch");
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] > box[i]) return false;
    }
  }
  return true;
}

GeneratorAlphabet::GeneratorAlphabet(std::vector<Multidegree> degrees, std::vector<bool> in_j)
    : degrees_(std::move(degrees)), in_j_(std::move(in_j)) {
  if (in_j_.size() != degrees_.size()) throw std::invalid_argument("J-flag count mismatch");
  for (const auto& d : degrees_) {
    if (d.size() != degrees_.front().size()) throw std::invalid_argument("mixed degree ranks");
    if (total_degree(d) <= 0 || std::any_of(d.begin(), d.end(), [](int x) { return x < 0; })) {
      throw std::invalid_argument("letter degrees must be nonzero and nonnegative");
    }
  }
}

GeneratorAlphabet GeneratorAlphabet::standard(int rank, const std::vector<int>& j) {
  std::vector<Multidegree> degrees;
  std::vector<bool> in_j(static_cast<std::size_t>(rank), false);
  for (int i = 0; i < rank; ++i) {
    Multidegree d(static_cast<std::size_t>(rank), 0);
    d[i] = 1;
    degrees.push_back(d);
  }
  for (int x : j) {
    if (x < 0 || x >= rank) throw std::invalid_argument("J index out of range");
    in_j[x] = true;
  }
  return GeneratorAlphabet(std::move(degrees), std::move(in_j));
}

std::vector<std::vector<int>> lyndon_words(int letters, int maxlen) {
  std::vector<std::vector<int>> out;
  if (letters < 1 || maxlen < 1) return out;
  // Duval's generation in lexicographic order
  std::vector<int> w{-1};
  while (!w.empty()) {
    ++w.back();
    out.push_back(w);
    const std::size_t m = w.size();
    while (w.size() < static_cast<std::size_t>(maxlen)) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == letters - 1) w.pop_back();
  }
  return out;
}

GradedDimTable lyndon_dims(const GeneratorAlphabet& alphabet, int maxdeg) {
  GradedDimTable out;
  for (const auto& word : lyndon_words(static_cast<int>(alphabet.size()), maxdeg)) {
    Multidegree d(alphabet.rank(), 0);
    for (int letter : word) {
      const auto& ld = alphabet.degree(static_cast<std::size_t>(letter));
      for (std::size_t i = 0; i < d.size(); ++i) d[i] += ld[i];
    }
    if (total_degree(d) <= maxdeg) out[d] += 1;
  }
  return out;
}

GradedDimTable witt_dims(const GradedDimTable& generators, const DegreeBound& bound) {
  std::vector<std::pair<Multidegree, mpq_class>> gens;
  for (const auto& [d, dim] : generators) {
    if (dim == 0) continue;
    if (total_degree(d) <= 0 || std::any_of(d.begin(), d.end(), [](int x) { return x < 0; })) {
      throw std::invalid_argument("witt_dims: generator degree " + to_string(d) +
                                  " is not positive");
    }
    if (!gens.empty() && gens.front().first.size() != d.size()) {
      throw std::invalid_argument("witt_dims: mixed degree ranks");
    }
    if (bound.admits(d)) gens.emplace_back(d, mpq_class(dim));
  }
  if (gens.empty()) return {};
  const std::size_t r = gens.front().first.size();

  // Degrees reachable as sums of generator degrees inside the bound.
  std::set<Multidegree> reach;
  std::vector<Multidegree> frontier;
  for (const auto& [d, v] : gens) {
    if (reach.insert(d).second) frontier.push_back(d);
  }
  while (!frontier.empty()) {
    std::vector<Multidegree> next;
    for (const auto& a : frontier) {
      for (const auto& [g, v] : gens) {
        Multidegree s(r);
        for (std::size_t i = 0; i < r; ++i) s[i] = a[i] + g[i];
        if (bound.admits(s) && reach.insert(s).second) next.push_back(s);
      }
    }
    frontier.swap(next);
  }
  std::vector<Multidegree> order(reach.begin(), reach.end());
  std::stable_sort(order.begin(), order.end(), [](const Multidegree& a, const Multidegree& b) {
    return total_degree(a) < total_degree(b);
  });

  // l = -log(1 - V) via (w l)_b = w(b) V_b + sum_g V_g (w l)_{b-g}, w = total degree
  std::map<Multidegree, mpq_class> gen_dim(gens.begin(), gens.end());
  std::map<Multidegree, mpq_class> wl;
  for (const auto& b : order) {
    const int w = total_degree(b);
    mpq_class acc = 0;
    if (auto it = gen_dim.find(b); it != gen_dim.end()) acc += w * it->second;
    for (const auto& [g, v] : gens) {
      Multidegree rest(r);
      bool ok = true;
      for (std::size_t i = 0; i < r && ok; ++i) {
        rest[i] = b[i] - g[i];
        ok = rest[i] >= 0;
      }
      if (!ok || total_degree(rest) == 0) continue;
      if (auto it = wl.find(rest); it != wl.end()) acc += v * it->second;
    }
    wl[b] = acc;
  }

  GradedDimTable out;
  for (const auto& b : order) {
    int g = 0;
    for (int x : b) g = std::gcd(g, x);
    mpq_class d = 0;
    for (int k = 1; k <= g; ++k) {
      if (g % k != 0) continue;
      const int mu = moebius(k);
      if (mu == 0) continue;
      Multidegree sub(r);
      for (std::size_t i = 0; i < r; ++i) sub[i] = b[i] / k;
      auto it = wl.find(sub);
      if (it == wl.end()) continue;
      // l_sub = wl_sub / w(sub)
      d += mpq_class(mu) * it->second / (mpq_class(k) * total_degree(sub));
    }
    if (d.get_den() != 1) {
      throw SeriesError("witt_dims: non-integral dimension " + d.get_str() + " at " +
                        to_string(b));
    }
    if (d != 0) out[b] = d.get_num();
  }
  return out;
}

GradedDimTable witt_dims(const GradedDimTable& generators, int maxdeg) {
  return witt_dims(generators, DegreeBound::by_total(maxdeg));
}

bool admissible_zero_block(const IntMatrix& a, const std::vector<int>& j, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  const std::size_t n = a.size();
  std::vector<bool> in_j(n, false);
  for (int x : j) {
    if (x < 0 || static_cast<std::size_t>(x) >= n) return fail("J index out of range");
    in_j[static_cast<std::size_t>(x)] = true;
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (a[r].size() != n) return fail("matrix is not square");
    if (a[r][r] > 0) return fail("positive diagonal entry");
    for (std::size_t c = 0; c < n; ++c) {
      if (a[r][c] != a[c][r]) return fail("matrix is not symmetric");
      if (r != c && a[r][c] > 0) return fail("positive off-diagonal entry");
      if ((a[r][c] == 0) != (in_j[r] && in_j[c])) return fail("zero pattern is not J x J");
    }
  }
  return true;
}

namespace {

using Word = std::string;
using LieElement = std::map<Word, mpz_class>;

LieElement bracket_letter(char letter, const LieElement& y) {
  LieElement out;
  for (const auto& [w, c] : y) {
    out[letter + w] += c;
    out[w + letter] -= c;
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second == 0 ? out.erase(it) : std::next(it);
  }
  return out;
}

// All multidegrees of rank r with total degree 1..maxdeg, by increasing total.
std::vector<Multidegree> degrees_up_to(std::size_t r, int maxdeg) {
  std::vector<Multidegree> out;
  Multidegree d(r, 0);
  std::vector<std::vector<Multidegree>> by_total(static_cast<std::size_t>(maxdeg + 1));
  // odometer over [0, maxdeg]^r filtered by total
  while (true) {
    const int t = total_degree(d);
    if (t >= 1 && t <= maxdeg) by_total[t].push_back(d);
    std::size_t i = 0;
    while (i < r) {
      if (d[i] < maxdeg) {
        ++d[i];
        break;
      }
      d[i] = 0;
      ++i;
    }
    if (i == r) break;
  }
  for (auto& v : by_total) out.insert(out.end(), v.begin(), v.end());
  return out;
}

class WordIndex {
 public:
  std::size_t operator()(const Word& w) {
    auto [it, inserted] = index_.emplace(w, index_.size());
    return it->second;
  }

 private:
  std::map<Word, std::size_t> index_;
};

SparseVector coordinates(const LieElement& x, WordIndex& idx) {
  SparseVector v;
  for (const auto& [w, c] : x) v[idx(w)] = mpq_class(c);
  return v;
}

}  // namespace

GradedDimTable zero_block_quotient_dims(const IntMatrix& a, const std::vector<int>& j,
                                        int maxdeg) {
  std::string why;
  if (!admissible_zero_block(a, j, &why)) {
    throw std::invalid_argument("zero_block_quotient_dims: " + why);
  }
  const std::size_t r = a.size();
  if (r == 0 || maxdeg < 1) return {};
  if (r > 26) throw std::invalid_argument("zero_block_quotient_dims: too many generators");
  const GradedDimTable free_dims = lyndon_dims(GeneratorAlphabet::standard(static_cast<int>(r)), maxdeg);

  std::map<Multidegree, std::vector<LieElement>> ideal;
  GradedDimTable out;
  for (const auto& alpha : degrees_up_to(r, maxdeg)) {
    auto fit = free_dims.find(alpha);
    const mpz_class free_dim = fit == free_dims.end() ? mpz_class(0) : fit->second;
    if (free_dim == 0) continue;

    std::vector<LieElement> candidates;
    if (total_degree(alpha) == 2) {
      for (std::size_t x = 0; x < j.size(); ++x) {
        for (std::size_t y = x + 1; y < j.size(); ++y) {
          Multidegree d(r, 0);
          d[j[x]] += 1;
          d[j[y]] += 1;
          if (d != alpha) continue;
          const char lx = static_cast<char>('a' + j[x]);
          const char ly = static_cast<char>('a' + j[y]);
          candidates.push_back(bracket_letter(lx, LieElement{{Word(1, ly), 1}}));
        }
      }
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (alpha[i] == 0) continue;
      Multidegree lower = alpha;
      --lower[i];
      auto it = ideal.find(lower);
      if (it == ideal.end()) continue;
      for (const auto& y : it->second) {
        candidates.push_back(bracket_letter(static_cast<char>('a' + i), y));
      }
    }

    WordIndex idx;
    EchelonBasis basis;
    std::vector<LieElement> kept;
    for (auto& c : candidates) {
      if (c.empty()) continue;
      if (basis.insert(coordinates(c, idx))) kept.push_back(std::move(c));
    }
    const mpz_class dim = free_dim - static_cast<unsigned long>(basis.size());
    if (dim < 0) throw std::logic_error("ideal larger than the free Lie algebra");
    if (dim != 0) out[alpha] = dim;
    if (!kept.empty()) ideal[alpha] = std::move(kept);
  }
  return out;
}

EliminationReport elimination_check(const IntMatrix& a, const std::vector<int>& j, int maxdeg) {
  EliminationReport rep;
  rep.quotient = zero_block_quotient_dims(a, j, maxdeg);
  const std::size_t r = a.size();
  std::vector<bool> in_j(r, false);
  for (int x : j) in_j[static_cast<std::size_t>(x)] = true;

  for (std::size_t i = 0; i < r; ++i) {
    if (!in_j[i]) continue;
    Multidegree d(r, 0);
    d[i] = 1;
    rep.heisenberg[d] = 1;
  }
  // ad(e_j1)^l1 ... ad(e_jn)^ln e_i: one generator per i outside J and per
  // multiset of J letters.
  for (const auto& d : degrees_up_to(r, maxdeg)) {
    int outside_total = 0;
    for (std::size_t i = 0; i < r; ++i) {
      if (!in_j[i]) outside_total += d[i];
    }
    if (outside_total == 1) rep.u_generators[d] = 1;
  }
  rep.free_part = witt_dims(rep.u_generators, maxdeg);

  GradedDimTable expected = rep.heisenberg;
  for (const auto& [d, v] : rep.free_part) expected[d] += v;
  rep.decomposition_holds = expected == rep.quotient;
  if (!rep.decomposition_holds) {
    std::set<Multidegree> keys;
    for (const auto& [d, v] : expected) keys.insert(d);
    for (const auto& [d, v] : rep.quotient) keys.insert(d);
    for (const auto& d : keys) {
      const mpz_class e = expected.count(d) ? expected.at(d) : mpz_class(0);
      const mpz_class q = rep.quotient.count(d) ? rep.quotient.at(d) : mpz_class(0);
      if (e != q) {
        rep.mismatches.push_back("degree " + to_string(d) + ": quotient " + q.get_str() +
                                 ", decomposition " + e.get_str());
      }
    }
  }

  // Positive roots: unit J degrees, plus everything touching I - J except
  // multiples t*alpha_i (t >= 2) of a single outside letter.
  std::set<Multidegree> predicted;
  for (const auto& d : degrees_up_to(r, maxdeg)) {
    int outside_total = 0;
    int outside_letters = 0;
    int j_total = 0;
    for (std::size_t i = 0; i < r; ++i) {
      if (in_j[i]) {
        j_total += d[i];
      } else {
        outside_total += d[i];
        outside_letters += d[i] > 0;
      }
    }
    if (outside_total == 0) {
      if (j_total == 1) predicted.insert(d);
      continue;
    }
    const bool single_multiple = outside_letters == 1 && j_total == 0 && outside_total >= 2;
    if (!single_multiple) predicted.insert(d);
  }
  std::set<Multidegree> support;
  for (const auto& [d, v] : rep.quotient) support.insert(d);
  rep.root_support_holds = predicted == support;
  if (!rep.root_support_holds) {
    for (const auto& d : predicted) {
      if (!support.count(d)) rep.mismatches.push_back("predicted root missing: " + to_string(d));
    }
    for (const auto& d : support) {
      if (!predicted.count(d)) rep.mismatches.push_back("unexpected root: " + to_string(d));
    }
  }
  return rep;
}

std::pair<IntMatrix, std::vector<int>> random_admissible(std::mt19937_64& rng, int max_size) {
  if (max_size < 1) throw std::invalid_argument("random_admissible: max_size must be positive");
  std::uniform_int_distribution<int> size_dist(1, max_size);
  const int n = size_dist(rng);
  std::uniform_int_distribution<int> j_dist(0, n);
  const int jn = j_dist(rng);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> j(order.begin(), order.begin() + jn);
  std::sort(j.begin(), j.end());
  std::vector<bool> in_j(static_cast<std::size_t>(n), false);
  for (int x : j) in_j[static_cast<std::size_t>(x)] = true;

  std::uniform_int_distribution<int> entry(-3, -1);
  IntMatrix a(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n), 0));
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c = r; c < a.size(); ++c) {
      const long v = in_j[r] && in_j[c] ? 0 : entry(rng);
      a[r][c] = a[c][r] = v;
    }
  }
  return {a, j};
}

}  // namespace moonlie
