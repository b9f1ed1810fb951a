#ifndef HDA_FLOWS_HPP
#define HDA_FLOWS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hda/pcset.hpp"
#include "hda/sync_algebra.hpp"

namespace hda {

inline constexpr std::size_t kDefaultPathGuard = 1000000;

// The path data of the discrete realization of a loopless precubical set:
// the free category on the 1-skeleton modulo one commutation relation per
// 2-cube, with congruence classes computed by context saturation.
class PathCategory {
 public:
  // Paths are nonempty composable 1-cube sequences; finite by acyclicity.
  std::size_t path_count() const { return paths_.size(); }
  const std::vector<CubeId>& path(std::size_t id) const { return paths_[id]; }
  CubeId path_source(std::size_t id) const { return sources_[id]; }
  CubeId path_target(std::size_t id) const { return targets_[id]; }

  std::size_t class_count(CubeId from, CubeId to) const;
  // One least path id per congruence class from `from` to `to`.
  std::vector<std::size_t> class_representatives(CubeId from, CubeId to) const;
  std::size_t class_of(std::size_t path_id) const;
  std::vector<std::size_t> paths_between(CubeId from, CubeId to) const;

 private:
  friend PathCategory bad_realization(const LabelledPCSet&, std::size_t);
  std::vector<std::vector<CubeId>> paths_;
  std::vector<CubeId> sources_, targets_;
  mutable std::vector<std::size_t> parent_;  // union-find with path compression
  std::size_t find(std::size_t x) const;
};

PathCategory bad_realization(const LabelledPCSet& k,
                             std::size_t path_guard = kDefaultPathGuard);

std::size_t path_class_counts(const PathCategory& pc, CubeId from, CubeId to);

// Word of edge labels along a path of the 1-skeleton.
std::vector<std::string> path_label(const LabelledPCSet& k, const std::vector<CubeId>& path);

// Lexicographically least word (letter order = declared alphabet order)
// reachable by swapping adjacent letters that may both run asynchronously.
// Nonempty words only: the trace monoid has no unit.
std::vector<std::string> trace_normal_form(const SyncAlgebra& alg,
                                           const std::vector<std::string>& word);

}  // namespace hda

#endif
