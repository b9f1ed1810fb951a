#ifndef HDA_SOS_HPP
#define HDA_SOS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hda/process.hpp"
#include "hda/sync_algebra.hpp"

namespace hda {

// One derivable transition. weight counts the prefixes consumed by the
// derivation: 1 for a plain action, the sum of both premises for a
// synchronization. The depth grading of states adds weights along paths.
struct Transition {
  std::string action;
  ProcPtr target;
  int weight = 1;
};

// All derivable one-step transitions, with the parallel lifts gated by
// asynchronous(mu). Set semantics: duplicates (same action, target, weight)
// collapse. Deterministic order.
std::vector<Transition> step(const SyncAlgebra& alg, const ProcPtr& term);

struct LtsState {
  ProcPtr decoration;
  std::string text;  // canonical term text
  int depth = 0;
};

struct LtsTransition {
  std::uint32_t src = 0, dst = 0;
  std::string action;
};

struct DecoratedLTS {
  std::vector<LtsState> states;
  std::uint32_t initial = 0;
  std::vector<LtsTransition> transitions;
  bool truncated = false;  // some frontier state at the bound still had steps
};

inline constexpr std::size_t kDefaultStateGuard = 1000000;

// Breadth-first unfolding; states keyed by (canonical term text, depth).
// Transitions whose target depth would exceed depth_bound are dropped.
DecoratedLTS build_lts(const SyncAlgebra& alg, const ProcPtr& term, int depth_bound,
                       std::size_t state_guard = kDefaultStateGuard);

}  // namespace hda

#endif
