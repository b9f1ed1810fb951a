#ifndef HDA_SEMANTICS_HPP
#define HDA_SEMANTICS_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "hda/pcset.hpp"
#include "hda/process.hpp"
#include "hda/sos.hpp"
#include "hda/sync_algebra.hpp"
#include "hda/tensor.hpp"

namespace hda {

inline constexpr int kDefaultDepthBound = 16;

struct Interpretation {
  LabelledPCSet pcset;  // initial state set; every vertex decorated
  // Depth grading: prefixes consumed from the root along any path.
  std::unordered_map<CubeId, int> vertex_depth;
  int depth_bound = kDefaultDepthBound;
  bool stabilized = false;  // recursion unfolding closed up before the bound
  bool truncated = false;   // some recursion was cut at the bound
};

// Denotational semantics: nil and the truncation marker are points, prefix
// glues an edge, sum is the coproduct with matching (term, depth) states
// identified across the two branches, restriction filters labels, parallel
// is the synchronized tensor, recursion is the bounded colimit of syntactic
// unfoldings with decorations folded back to the rec term.
Interpretation interp(const SyncAlgebra& alg, const ProcPtr& term, int depth_bound,
                      std::size_t cube_guard = kDefaultTensorGuard);

struct ParadigmViolation {
  int dim = 0;                     // dimension of the doubled fillers
  std::vector<CubeId> fillers;     // >= 2 cubes over one shell
  std::vector<std::string> labels;
};

struct ParadigmReport {
  bool ok = true;
  std::vector<ParadigmViolation> violations;
  std::string to_string() const;
};

// HDA paradigm: every labelled shell has at most one filler, i.e. no two
// distinct cubes share a boundary and a label tuple.
ParadigmReport verify_paradigm(const LabelledPCSet& k, const SyncAlgebra& alg);

struct Restrict1Report {
  bool ok = true;
  std::size_t pcset_states = 0, pcset_edges = 0;
  std::size_t lts_states = 0, lts_edges = 0;
  std::vector<std::string> mismatches;
  std::string to_string() const;
};

// Dimension-1 soundness: the (decoration, depth) quotient of the
// interpretation's reachable 1-skeleton equals the operational LTS, and
// every reachable vertex below the bound steps exactly as the rules say.
Restrict1Report verify_restrict1(const SyncAlgebra& alg, const ProcPtr& term,
                                 const Interpretation& interp_result);

}  // namespace hda

#endif
