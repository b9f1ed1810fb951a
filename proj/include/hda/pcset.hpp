#ifndef HDA_PCSET_HPP
#define HDA_PCSET_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hda/process.hpp"
#include "hda/sync_algebra.hpp"

namespace hda {

using CubeId = std::uint32_t;
inline constexpr CubeId kNoCube = 0xFFFFFFFFu;

// An n-cube: 2n faces of dimension n-1 (faces[i][alpha] is the face with
// direction i+1 fixed to alpha) and an n-tuple of action labels.
struct Cube {
  int dim = 0;
  std::vector<std::array<CubeId, 2>> faces;
  std::vector<std::string> labels;
};

// Graded cube store with global ids, structural dedup, optional initial
// state, and process-name decorations on 0-cubes. Construction is
// single-writer; completed values are immutable and shareable.
class LabelledPCSet {
 public:
  CubeId add_vertex();
  // Checks cubical relations and label coherence of the faces; collapses
  // structurally equal cubes (same labels, same face tuple).
  CubeId add_cube(std::vector<std::array<CubeId, 2>> faces, std::vector<std::string> labels);
  // No dedup, no coherence checks: for file loading and hand-built
  // counterexamples. validate() reports problems afterwards.
  CubeId add_cube_raw(std::vector<std::array<CubeId, 2>> faces, std::vector<std::string> labels);

  std::size_t size() const { return cubes_.size(); }
  int max_dim() const { return static_cast<int>(by_dim_.size()) - 1; }
  std::size_t dim_count(int d) const {
    return d >= 0 && d <= max_dim() ? by_dim_[static_cast<std::size_t>(d)].size() : 0;
  }
  const std::vector<CubeId>& cubes_of_dim(int d) const;
  const Cube& cube(CubeId id) const { return cubes_.at(id); }
  std::vector<std::size_t> census() const;  // cube counts per dimension

  std::optional<CubeId> initial() const { return initial_; }
  void set_initial(CubeId v);
  void clear_initial() { initial_.reset(); }

  void set_decoration(CubeId v, ProcPtr term);
  const ProcPtr* decoration(CubeId v) const;
  const std::map<CubeId, ProcPtr>& decorations() const { return decorations_; }

  CubeId edge_source(CubeId e) const { return cube(e).faces[0][0]; }
  CubeId edge_target(CubeId e) const { return cube(e).faces[0][1]; }

  // Corner of a cube at eps in {0,1}^dim (bit i-1 = coordinate i), via
  // iterated faces; well-defined by the cubical relations.
  CubeId corner(CubeId id, std::uint32_t eps) const;
  std::vector<CubeId> corners(CubeId id) const;  // all 2^dim, eps-lex order

  // Existing cube with the given structural key, if any.
  std::optional<CubeId> find_cube(const std::vector<std::array<CubeId, 2>>& faces,
                                  const std::vector<std::string>& labels) const;

 private:
  void index_cube(CubeId id);
  std::string structural_key(const std::vector<std::array<CubeId, 2>>& faces,
                             const std::vector<std::string>& labels) const;

  std::vector<Cube> cubes_;
  std::vector<std::vector<CubeId>> by_dim_;
  std::unordered_map<std::string, CubeId> dedup_;
  std::optional<CubeId> initial_;
  std::map<CubeId, ProcPtr> decorations_;
};

struct PCSetViolation {
  std::string kind;  // face-dimension, cubical-relation, label-coherence, asynchrony, initial, decoration
  std::string detail;
};

struct PCSetReport {
  bool ok = true;
  std::vector<PCSetViolation> violations;
  std::string to_string() const;
};

// All type invariants: resolving faces, cubical relations, label coherence,
// asynchrony of labels on cubes of dimension >= 2 (dimension-1 diagonals are
// exempt), initial-state shape, decorations only on vertices.
PCSetReport validate(const LabelledPCSet& k, const SyncAlgebra& alg);

// Labelled standard cube: 3^n cubes, one per face word over {0,1,*}; vertex
// ids are the corner bitmasks in increasing order.
LabelledPCSet standard_cube(std::span<const std::string> labels, const SyncAlgebra& alg);

// Boundary of a standard cube; the empty pcset for the 0-cube.
LabelledPCSet boundary(const LabelledPCSet& standard);

struct Rebuilt {
  LabelledPCSet pcset;
  std::vector<CubeId> cube_map;  // old id -> new id, kNoCube if dropped
};

Rebuilt skeleton(const LabelledPCSet& k, int n);

// Keeps exactly the cubes whose labels all satisfy keep(); vertices always
// stay. The kept set is face-closed since face labels are sub-tuples.
Rebuilt filter_by_labels(const LabelledPCSet& k,
                         const std::function<bool(const std::string&)>& keep);

// Quotient by identifying vertex pairs. Face references are rewritten and
// structurally equal cubes collapse. Throws UserError if the merged
// 1-skeleton acquires a directed cycle. Decorations survive when unambiguous.
Rebuilt merge_vertices(const LabelledPCSet& k,
                       std::span<const std::pair<CubeId, CubeId>> pairs);

struct Isomorphism {
  std::vector<CubeId> cube_map;  // K cube id -> L cube id
};

inline constexpr std::size_t kDefaultIsoGuard = 10000;

// Label-, face- and initial-state-preserving bijection (decorations are not
// compared). Backtracking over vertex classes refined by degree/label
// signatures. Throws ResourceError past the size guard.
std::optional<Isomorphism> iso_check(const LabelledPCSet& k, const LabelledPCSet& l,
                                     std::size_t size_guard = kDefaultIsoGuard);

// Checks that a given vertex bijection (indexed by position in the dim-0
// lists) extends to a full isomorphism, and returns it.
std::optional<Isomorphism> extend_vertex_bijection(const LabelledPCSet& k,
                                                   const LabelledPCSet& l,
                                                   std::span<const std::uint32_t> vertex_map);

// Equality along a vertex bijection up to per-cube direction permutations:
// cubes are compared by their unordered (label, face, face) triples grounded
// at mapped vertices. Strict precubical morphisms cannot permute directions,
// so this is the right notion for the symmetry of the synchronized tensor,
// whose swap transposes left and right coordinates.
bool symmetric_equal(const LabelledPCSet& k, const LabelledPCSet& l,
                     std::span<const std::uint32_t> vertex_map);

}  // namespace hda

#endif
