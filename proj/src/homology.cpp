#include "hda/homology.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hda/errors.hpp"

namespace hda {

FinitePoset open_interval_poset(int n) {
  if (n < 2) throw UserError("open_interval_poset requires n >= 2");
  if (n > 20) throw ResourceError("open_interval_poset: n too large");
  FinitePoset p;
  const std::uint32_t top = (1u << n) - 1;
  std::vector<std::uint32_t> elems;
  for (std::uint32_t m = 1; m < top; ++m) elems.push_back(m);
  p.n = elems.size();
  p.lt.assign(p.n, std::vector<bool>(p.n, false));
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t j = 0; j < p.n; ++j)
      p.lt[i][j] = elems[i] != elems[j] && (elems[i] & ~elems[j]) == 0;
  return p;
}

SimplicialComplex order_complex(const FinitePoset& p) {
  // Enumerate strict chains along a linear extension so each chain is seen
  // exactly once, in order.
  std::vector<std::size_t> topo;
  {
    std::vector<std::size_t> below(p.n, 0);
    for (std::size_t i = 0; i < p.n; ++i)
      for (std::size_t j = 0; j < p.n; ++j)
        if (p.less(j, i)) ++below[i];
    topo.resize(p.n);
    for (std::size_t i = 0; i < p.n; ++i) topo[i] = i;
    std::sort(topo.begin(), topo.end(),
              [&](std::size_t a, std::size_t b) { return below[a] != below[b] ? below[a] < below[b] : a < b; });
  }
  SimplicialComplex c;
  std::vector<int> chain;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    const int d = static_cast<int>(chain.size()) - 1;
    if (static_cast<std::size_t>(d) >= c.simplices.size()) c.simplices.resize(d + 1);
    c.simplices[static_cast<std::size_t>(d)].push_back(chain);
    for (std::size_t pos = from; pos < p.n; ++pos) {
      const std::size_t next = topo[pos];
      if (!p.less(static_cast<std::size_t>(chain.back()), next)) continue;
      chain.push_back(static_cast<int>(next));
      grow(pos + 1);
      chain.pop_back();
    }
  };
  for (std::size_t pos = 0; pos < p.n; ++pos) {
    chain.push_back(static_cast<int>(topo[pos]));
    grow(pos + 1);
    chain.pop_back();
  }
  return c;
}

SimplicialComplex complex_from_simplices(const std::vector<std::vector<int>>& top) {
  std::set<std::vector<int>> closed;
  std::function<void(std::vector<int>)> close = [&](std::vector<int> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty() || !closed.insert(s).second) return;
    if (s.size() == 1) return;
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::vector<int> f = s;
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
      close(std::move(f));
    }
  };
  for (const auto& s : top) close(s);
  SimplicialComplex c;
  for (const auto& s : closed) {
    const int d = static_cast<int>(s.size()) - 1;
    if (static_cast<std::size_t>(d) >= c.simplices.size()) c.simplices.resize(d + 1);
    c.simplices[static_cast<std::size_t>(d)].push_back(s);
  }
  return c;
}

std::vector<std::vector<BigInt>> boundary_matrix(const SimplicialComplex& c, int d) {
  if (d == 0) {
    // Augmentation: every vertex maps to the generator of the empty degree.
    return {std::vector<BigInt>(c.count(0), BigInt(1))};
  }
  const auto& rows_simplices = c.simplices[static_cast<std::size_t>(d - 1)];
  const auto& cols_simplices = c.simplices[static_cast<std::size_t>(d)];
  std::map<std::vector<int>, std::size_t> row_index;
  for (std::size_t i = 0; i < rows_simplices.size(); ++i) row_index[rows_simplices[i]] = i;
  std::vector<std::vector<BigInt>> m(rows_simplices.size(),
                                     std::vector<BigInt>(cols_simplices.size(), BigInt(0)));
  for (std::size_t j = 0; j < cols_simplices.size(); ++j) {
    const auto& s = cols_simplices[j];
    for (std::size_t i = 0; i <= static_cast<std::size_t>(d); ++i) {
      std::vector<int> f = s;
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
      m[row_index.at(f)][j] = (i % 2 == 0) ? BigInt(1) : BigInt(-1);
    }
  }
  return m;
}

std::vector<BigInt> smith_invariant_factors(std::vector<std::vector<BigInt>> m) {
  std::vector<BigInt> factors;
  if (m.empty() || m[0].empty()) return factors;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0, c = 0;
  while (r < rows && c < cols) {
    // Pivot: least nonzero absolute value in the remaining block.
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = r; i < rows; ++i)
      for (std::size_t j = c; j < cols; ++j)
        if (!m[i][j].is_zero() &&
            (pi == rows || m[i][j].abs() < m[pi][pj].abs()))
          pi = i, pj = j;
    if (pi == rows) break;
    std::swap(m[r], m[pi]);
    for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][c], m[i][pj]);

    bool reduced = false;
    while (!reduced) {
      reduced = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (m[i][c].is_zero()) continue;
        const BigInt q = m[i][c] / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[i][j] -= q * m[r][j];
        if (!m[i][c].is_zero()) {
          std::swap(m[r], m[i]);  // strictly smaller remainder becomes pivot
          reduced = false;
        }
      }
      for (std::size_t j = c + 1; j < cols; ++j) {
        if (m[r][j].is_zero()) continue;
        const BigInt q = m[r][j] / m[r][c];
        for (std::size_t i = r; i < rows; ++i) m[i][j] -= q * m[i][c];
        if (!m[r][j].is_zero()) {
          for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][c], m[i][j]);
          reduced = false;
        }
      }
    }
    factors.push_back(m[r][c].abs());
    ++r;
    ++c;
  }
  // Normalize divisibility d1 | d2 | ... via pairwise gcd/lcm exchanges.
  auto gcd = [](BigInt a, BigInt b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
      BigInt t = a % b;
      a = b;
      b = t;
    }
    return a;
  };
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = i + 1; j < factors.size(); ++j) {
      const BigInt g = gcd(factors[i], factors[j]);
      if (g == factors[i]) continue;
      const BigInt l = factors[i] / g * factors[j];
      factors[i] = g;
      factors[j] = l;
    }
  std::sort(factors.begin(), factors.end());
  return factors;
}

std::string HomologyGroup::to_string() const {
  std::ostringstream out;
  bool first = true;
  if (free_rank == 1) {
    out << "Z";
    first = false;
  } else if (free_rank > 1) {
    out << "Z^" << free_rank;
    first = false;
  }
  for (const auto& t : torsion) {
    if (!first) out << " + ";
    out << "Z/" << t.to_string();
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

std::vector<HomologyGroup> reduced_homology(const SimplicialComplex& c) {
  std::vector<HomologyGroup> groups;
  const int top = c.dim();
  if (top < 0) return groups;

  // rank and invariant factors per boundary map; index d = map from C_d.
  std::vector<std::vector<BigInt>> factors(static_cast<std::size_t>(top) + 2);
  for (int d = 0; d <= top; ++d)
    factors[static_cast<std::size_t>(d)] = smith_invariant_factors(boundary_matrix(c, d));
  // factors[top+1] stays empty: no (top+1)-simplices.

  for (int d = 0; d <= top; ++d) {
    const auto n_d = static_cast<long long>(c.count(d));
    const auto rank_d = static_cast<long long>(factors[static_cast<std::size_t>(d)].size());
    const auto rank_up = static_cast<long long>(factors[static_cast<std::size_t>(d) + 1].size());
    HomologyGroup g;
    g.free_rank = n_d - rank_d - rank_up;
    for (const auto& f : factors[static_cast<std::size_t>(d) + 1])
      if (f > BigInt(1)) g.torsion.push_back(f);
    groups.push_back(std::move(g));
  }
  return groups;
}

long long euler_characteristic(const SimplicialComplex& c) {
  long long chi = 0;
  for (int d = 0; d <= c.dim(); ++d)
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(c.count(d));
  return chi;
}

}  // namespace hda
