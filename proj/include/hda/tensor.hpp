#ifndef HDA_TENSOR_HPP
#define HDA_TENSOR_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hda/pcset.hpp"
#include "hda/sync_algebra.hpp"

namespace hda {

struct ProductResult {
  LabelledPCSet pcset;
  // Per product vertex id: (left 0-cube id, right 0-cube id).
  std::vector<std::pair<CubeId, CubeId>> vertex_pairs;
};

// Synchronized product of 1-dimensional labelled precubical sets: vertices
// K_0 x L_0; side moves of asynchronous-capable edges; synchronized
// diagonals (x,y) with sync(l(x), l(y)) != bot. Inputs of dimension > 1 are
// rejected.
ProductResult product1(const SyncAlgebra& alg, const LabelledPCSet& k, const LabelledPCSet& l);

// A non-twisted labelled shell awaiting its (n+1)-cube. roles[i] describes
// target coordinate i+1: kConst0/kConst1 or a shell direction 0..n.
struct NonTwistedShell {
  static constexpr int kConst0 = -1;
  static constexpr int kConst1 = -2;
  std::vector<int> roles;
  std::vector<std::string> labels;                 // the filling (n+1)-tuple
  std::vector<std::array<CubeId, 2>> faces;        // boundary cubes, (direction, alpha)
};

// All non-twisted sigma-labelled n-shells of `filled`, whose vertex set must
// be identified with {0,1}^m via vertex_coords (bitmask per 0-cube in dim-0
// list order). The filling tuple ranges over asynchronous-capable labels.
std::vector<NonTwistedShell> enumerate_shells(const SyncAlgebra& alg,
                                              const LabelledPCSet& filled,
                                              std::span<const std::uint32_t> vertex_coords,
                                              int m, int n);

// Directed coskeleton: iteratively fill every non-twisted shell, one cube
// per shell, until no shells remain. Input must be at most 1-dimensional
// with vertex set {0,1}^m.
LabelledPCSet cosk_dir(const SyncAlgebra& alg, const LabelledPCSet& k,
                       std::span<const std::uint32_t> vertex_coords, int m);

// Number of sigma-labelled 1-shells of a 1-dimensional pcset without the
// non-twisted restriction (twisted and degenerate squares included); the
// 2-cube layer of the plain labelled coskeleton.
std::size_t undirected_square_shell_count(const SyncAlgebra& alg, const LabelledPCSet& k);

// Standard-cube tensor by closed-form descriptor enumeration over
// partitions (A, B, C-, C+) with a synchronization pairing. Vertex id =
// corner bitmask (left coordinates in low bits).
LabelledPCSet cube_tensor(const SyncAlgebra& alg, std::span<const std::string> left_labels,
                          std::span<const std::string> right_labels);

struct TensorResult {
  LabelledPCSet pcset;
  std::vector<std::pair<CubeId, CubeId>> vertex_pairs;
};

inline constexpr std::size_t kDefaultTensorGuard = 1000000;

// Synchronized tensor product: vertex set K_0 x L_0; every valid descriptor
// of every cube pair instantiated through the pair's vertex maps, with
// structural dedup realizing the colimit gluing.
TensorResult tensor(const SyncAlgebra& alg, const LabelledPCSet& k, const LabelledPCSet& l,
                    std::size_t cube_guard = kDefaultTensorGuard);

// Identification of a standard cube's skeleton vertices with {0,1}^n
// (vertex ids are already corner masks; exposed for cosk_dir calls).
std::vector<std::uint32_t> identity_coords(const LabelledPCSet& k);

}  // namespace hda

#endif
