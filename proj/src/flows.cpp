#include "hda/flows.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "hda/errors.hpp"

namespace hda {

std::size_t PathCategory::find(std::size_t x) const {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

std::size_t PathCategory::class_of(std::size_t path_id) const { return find(path_id); }

std::vector<std::size_t> PathCategory::paths_between(CubeId from, CubeId to) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < paths_.size(); ++i)
    if (sources_[i] == from && targets_[i] == to) out.push_back(i);
  return out;
}

std::size_t PathCategory::class_count(CubeId from, CubeId to) const {
  std::set<std::size_t> roots;
  for (std::size_t i : paths_between(from, to)) roots.insert(find(i));
  return roots.size();
}

std::vector<std::size_t> PathCategory::class_representatives(CubeId from, CubeId to) const {
  std::map<std::size_t, std::size_t> least;
  for (std::size_t i : paths_between(from, to)) {
    auto [it, fresh] = least.try_emplace(find(i), i);
    if (!fresh && i < it->second) it->second = i;
  }
  std::vector<std::size_t> out;
  for (const auto& [root, rep] : least) out.push_back(rep);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct PathKeyHash {
  std::size_t operator()(const std::vector<CubeId>& p) const {
    std::size_t h = p.size();
    for (CubeId e : p) h ^= e + 0x9e3779b9u + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace

PathCategory bad_realization(const LabelledPCSet& k, std::size_t path_guard) {
  path_guard = resource_guard(path_guard);
  PathCategory pc;

  std::vector<std::vector<CubeId>> out_edges(k.size());
  for (CubeId e : k.cubes_of_dim(1)) out_edges[k.edge_source(e)].push_back(e);

  // Enumerate all nonempty directed paths; the 1-skeleton is acyclic.
  std::unordered_map<std::vector<CubeId>, std::size_t, PathKeyHash> path_id;
  std::vector<CubeId> current;
  auto emit = [&](CubeId source) {
    if (pc.paths_.size() >= path_guard)
      throw ResourceError("path guard exceeded (" + std::to_string(path_guard) + ")");
    const std::size_t id = pc.paths_.size();
    pc.paths_.push_back(current);
    pc.sources_.push_back(source);
    pc.targets_.push_back(k.edge_target(current.back()));
    path_id.emplace(current, id);
  };
  std::function<void(CubeId, CubeId)> extend = [&](CubeId source, CubeId at) {
    for (CubeId e : out_edges[at]) {
      current.push_back(e);
      emit(source);
      extend(source, k.edge_target(e));
      current.pop_back();
    }
  };
  for (CubeId v : k.cubes_of_dim(0)) extend(v, v);

  pc.parent_.resize(pc.paths_.size());
  for (std::size_t i = 0; i < pc.parent_.size(); ++i) pc.parent_[i] = i;
  auto unite = [&](std::size_t a, std::size_t b) {
    a = pc.find(a);
    b = pc.find(b);
    if (a != b) pc.parent_[std::max(a, b)] = std::min(a, b);
  };

  // One relation per 2-cube: d_1^0 then d_2^1 equals d_2^0 then d_1^1,
  // saturated by every left/right path context that exists.
  std::vector<std::vector<std::size_t>> ending(k.size()), starting(k.size());
  for (std::size_t i = 0; i < pc.paths_.size(); ++i) {
    ending[pc.targets_[i]].push_back(i);
    starting[pc.sources_[i]].push_back(i);
  }

  std::vector<CubeId> probe;
  auto lookup = [&](const std::vector<CubeId>& p) {
    auto it = path_id.find(p);
    return it == path_id.end() ? static_cast<std::size_t>(-1) : it->second;
  };

  for (CubeId c : k.cubes_of_dim(2)) {
    const auto& faces = k.cube(c).faces;
    const std::array<CubeId, 2> u = {faces[0][0], faces[1][1]};  // (0,*) then (*,1)
    const std::array<CubeId, 2> v = {faces[1][0], faces[0][1]};  // (*,0) then (1,*)
    const CubeId s = k.edge_source(u[0]);
    const CubeId t = k.edge_target(u[1]);

    auto relate = [&](const std::vector<CubeId>& left, const std::vector<CubeId>& right) {
      probe.clear();
      probe.insert(probe.end(), left.begin(), left.end());
      probe.insert(probe.end(), u.begin(), u.end());
      probe.insert(probe.end(), right.begin(), right.end());
      const std::size_t pu = lookup(probe);
      probe.clear();
      probe.insert(probe.end(), left.begin(), left.end());
      probe.insert(probe.end(), v.begin(), v.end());
      probe.insert(probe.end(), right.begin(), right.end());
      const std::size_t pv = lookup(probe);
      if (pu != static_cast<std::size_t>(-1) && pv != static_cast<std::size_t>(-1)) unite(pu, pv);
    };

    static const std::vector<CubeId> empty;
    relate(empty, empty);
    for (std::size_t l : ending[s]) relate(pc.paths_[l], empty);
    for (std::size_t r : starting[t]) relate(empty, pc.paths_[r]);
    for (std::size_t l : ending[s])
      for (std::size_t r : starting[t]) relate(pc.paths_[l], pc.paths_[r]);
  }
  return pc;
}

std::size_t path_class_counts(const PathCategory& pc, CubeId from, CubeId to) {
  return pc.class_count(from, to);
}

std::vector<std::string> path_label(const LabelledPCSet& k, const std::vector<CubeId>& path) {
  std::vector<std::string> word;
  word.reserve(path.size());
  for (CubeId e : path) word.push_back(k.cube(e).labels[0]);
  return word;
}

std::vector<std::string> trace_normal_form(const SyncAlgebra& alg,
                                           const std::vector<std::string>& word) {
  if (word.empty()) throw UserError("the trace monoid has no unit: empty word rejected");
  const std::size_t n = word.size();
  std::vector<int> order(n);
  std::vector<bool> async(n);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = alg.action_index(word[i]);
    async[i] = alg.asynchronous(word[i]);
  }
  auto independent = [&](std::size_t i, std::size_t j) { return async[i] && async[j]; };

  // Dependence order of occurrences; the normal form is its least
  // lexicographic linearization (greedy over minimal occurrences).
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indeg(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!independent(i, j)) {
        succ[i].push_back(j);
        ++indeg[j];
      }
  std::vector<std::string> out;
  std::vector<bool> used(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i] || indeg[i] != 0) continue;
      if (best == n || order[i] < order[best]) best = i;
    }
    used[best] = true;
    indeg[best] = 1;  // retire
    out.push_back(word[best]);
    for (std::size_t j : succ[best]) --indeg[j];
  }
  return out;
}

}  // namespace hda
