#ifndef HDA_HOMOLOGY_HPP
#define HDA_HOMOLOGY_HPP

#include <string>
#include <vector>

#include "hda/bigint.hpp"

namespace hda {

struct FinitePoset {
  std::size_t n = 0;
  std::vector<std::vector<bool>> lt;  // strict order, transitively closed

  bool less(std::size_t a, std::size_t b) const { return lt[a][b]; }
};

// {0,1}^n minus bottom and top, product order. Elements are bitmasks
// 1..2^n-2 in increasing order.
FinitePoset open_interval_poset(int n);

// Simplices graded by dimension; a k-simplex is a strict chain of k+1
// poset elements (or abstract vertex ids for loaded complexes).
struct SimplicialComplex {
  std::vector<std::vector<std::vector<int>>> simplices;

  int dim() const { return static_cast<int>(simplices.size()) - 1; }
  std::size_t count(int d) const {
    return d >= 0 && d <= dim() ? simplices[static_cast<std::size_t>(d)].size() : 0;
  }
};

SimplicialComplex order_complex(const FinitePoset& p);

// Closure of an explicit list of top simplices (vertex id lists).
SimplicialComplex complex_from_simplices(const std::vector<std::vector<int>>& top);

struct HomologyGroup {
  long long free_rank = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1

  std::string to_string() const;
};

// Reduced integer homology via Smith normal form of the boundary matrices
// (augmented in degree 0). Exact arithmetic throughout.
std::vector<HomologyGroup> reduced_homology(const SimplicialComplex& c);

// Exposed for direct testing: invariant factors (nonzero diagonal of the
// Smith normal form) of an integer matrix.
std::vector<BigInt> smith_invariant_factors(std::vector<std::vector<BigInt>> m);

// Integer boundary matrix from degree d to d-1 (augmentation row for d = 0).
std::vector<std::vector<BigInt>> boundary_matrix(const SimplicialComplex& c, int d);

long long euler_characteristic(const SimplicialComplex& c);

}  // namespace hda

#endif
