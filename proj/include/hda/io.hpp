#ifndef HDA_IO_HPP
#define HDA_IO_HPP

#include <map>
#include <string>

#include "hda/homology.hpp"
#include "hda/pcset.hpp"
#include "hda/semantics.hpp"
#include "hda/sos.hpp"
#include "hda/sync_algebra.hpp"

namespace hda {

inline constexpr const char* kFormatTag = "hda-sem/1";

// {"alphabet": [...], "entries": [{"x":..,"y":..,"r":..}, ...]}
SyncAlgebra algebra_from_json(const std::string& text);
std::string algebra_to_json(const SyncAlgebra& alg);

// {"format":"hda-sem/1","cubes":[{"id":..,"dim":..,"labels":[..],"faces":[[..,..],..]},...],
//  "initial":..,"decorations":{"id":"term",...}}
std::string pcset_to_json(const LabelledPCSet& k);
// File ids may be sparse; file_ids (when given) receives file id -> cube id.
LabelledPCSet pcset_from_json(const std::string& text, const SyncAlgebra* alg_for_decorations,
                              std::map<long long, CubeId>* file_ids = nullptr);

std::string lts_to_json(const DecoratedLTS& lts);
std::string lts_to_dot(const DecoratedLTS& lts, const std::string& command_line);

// 1-skeleton with labelled edges; 2-cubes listed as comments.
std::string pcset_to_dot(const LabelledPCSet& k, const std::string& command_line);

std::string census_line(const LabelledPCSet& k);

}  // namespace hda

#endif
