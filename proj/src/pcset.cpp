#include "hda/pcset.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "hda/errors.hpp"

namespace hda {

namespace {

std::string join_labels(const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ",";
    out += labels[i];
  }
  return out;
}

}  // namespace

CubeId LabelledPCSet::add_vertex() {
  const auto id = static_cast<CubeId>(cubes_.size());
  cubes_.push_back(Cube{0, {}, {}});
  index_cube(id);
  return id;
}

std::string LabelledPCSet::structural_key(const std::vector<std::array<CubeId, 2>>& faces,
                                          const std::vector<std::string>& labels) const {
  std::string key = join_labels(labels);
  key += '|';
  for (const auto& f : faces) {
    key += std::to_string(f[0]);
    key += ',';
    key += std::to_string(f[1]);
    key += ';';
  }
  return key;
}

CubeId LabelledPCSet::add_cube(std::vector<std::array<CubeId, 2>> faces,
                               std::vector<std::string> labels) {
  const int dim = static_cast<int>(faces.size());
  if (dim == 0 || labels.size() != faces.size())
    throw std::logic_error("add_cube: need n faces pairs and n labels, n >= 1");
  for (const auto& f : faces)
    for (int a = 0; a < 2; ++a) {
      if (f[a] >= cubes_.size() || cubes_[f[a]].dim != dim - 1)
        throw std::logic_error("add_cube: face of wrong dimension");
    }
  // Label coherence: faces[i] must carry labels with entry i deleted.
  for (int i = 0; i < dim; ++i)
    for (int a = 0; a < 2; ++a) {
      const auto& fl = cubes_[faces[i][a]].labels;
      if (static_cast<int>(fl.size()) != dim - 1) throw std::logic_error("face label arity");
      for (int j = 0, src = 0; j < dim - 1; ++j, ++src) {
        if (src == i) ++src;
        if (fl[j] != labels[src])
          throw std::logic_error("add_cube: label coherence violated at direction " +
                                 std::to_string(i + 1));
      }
    }
  // Cubical relations: d_i^a d_j^b = d_{j-1}^b d_i^a for i<j (1-based).
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          if (dim == 1) break;
          const CubeId lhs = cubes_[faces[j][b]].faces[i][a];
          const CubeId rhs = cubes_[faces[i][a]].faces[j - 1][b];
          if (lhs != rhs)
            throw std::logic_error("add_cube: cubical relation violated at (" +
                                   std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        }

  const std::string key = structural_key(faces, labels);
  if (auto it = dedup_.find(key); it != dedup_.end()) return it->second;
  const auto id = static_cast<CubeId>(cubes_.size());
  cubes_.push_back(Cube{dim, std::move(faces), std::move(labels)});
  index_cube(id);
  dedup_.emplace(key, id);
  return id;
}

CubeId LabelledPCSet::add_cube_raw(std::vector<std::array<CubeId, 2>> faces,
                                   std::vector<std::string> labels) {
  const int dim = static_cast<int>(faces.size());
  const auto id = static_cast<CubeId>(cubes_.size());
  cubes_.push_back(Cube{dim, std::move(faces), std::move(labels)});
  index_cube(id);
  return id;
}

void LabelledPCSet::index_cube(CubeId id) {
  const int dim = cubes_[id].dim;
  if (static_cast<std::size_t>(dim) >= by_dim_.size()) by_dim_.resize(dim + 1);
  by_dim_[static_cast<std::size_t>(dim)].push_back(id);
}

const std::vector<CubeId>& LabelledPCSet::cubes_of_dim(int d) const {
  static const std::vector<CubeId> empty;
  if (d < 0 || d > max_dim()) return empty;
  return by_dim_[static_cast<std::size_t>(d)];
}

std::vector<std::size_t> LabelledPCSet::census() const {
  std::vector<std::size_t> c;
  for (int d = 0; d <= max_dim(); ++d) c.push_back(dim_count(d));
  return c;
}

void LabelledPCSet::set_initial(CubeId v) {
  if (v >= cubes_.size() || cubes_[v].dim != 0)
    throw std::logic_error("initial state must be a 0-cube");
  initial_ = v;
}

void LabelledPCSet::set_decoration(CubeId v, ProcPtr term) {
  if (v >= cubes_.size() || cubes_[v].dim != 0)
    throw std::logic_error("decorations live on 0-cubes");
  decorations_[v] = std::move(term);
}

const ProcPtr* LabelledPCSet::decoration(CubeId v) const {
  auto it = decorations_.find(v);
  return it == decorations_.end() ? nullptr : &it->second;
}

CubeId LabelledPCSet::corner(CubeId id, std::uint32_t eps) const {
  CubeId cur = id;
  int bit = 0;
  while (cubes_[cur].dim > 0) {
    cur = cubes_[cur].faces[0][(eps >> bit) & 1u];
    ++bit;
  }
  return cur;
}

std::vector<CubeId> LabelledPCSet::corners(CubeId id) const {
  const int d = cubes_[id].dim;
  std::vector<CubeId> out;
  out.reserve(1u << d);
  for (std::uint32_t eps = 0; eps < (1u << d); ++eps) out.push_back(corner(id, eps));
  return out;
}

std::optional<CubeId> LabelledPCSet::find_cube(const std::vector<std::array<CubeId, 2>>& faces,
                                               const std::vector<std::string>& labels) const {
  auto it = dedup_.find(structural_key(faces, labels));
  if (it == dedup_.end()) return std::nullopt;
  return it->second;
}

std::string PCSetReport::to_string() const {
  std::ostringstream out;
  if (ok) {
    out << "ok\n";
  } else {
    out << "invalid (" << violations.size() << " violation(s))\n";
    for (const auto& v : violations) out << "  " << v.kind << ": " << v.detail << "\n";
  }
  return out.str();
}

PCSetReport validate(const LabelledPCSet& k, const SyncAlgebra& alg) {
  PCSetReport rep;
  auto bad = [&](std::string kind, std::string detail) {
    rep.violations.push_back({std::move(kind), std::move(detail)});
  };

  for (int d = 1; d <= k.max_dim(); ++d) {
    for (CubeId id : k.cubes_of_dim(d)) {
      const Cube& c = k.cube(id);
      if (static_cast<int>(c.labels.size()) != d) {
        bad("label-coherence", "cube " + std::to_string(id) + " has wrong label arity");
        continue;
      }
      bool faces_ok = true;
      for (int i = 0; i < d; ++i)
        for (int a = 0; a < 2; ++a) {
          if (c.faces[i][a] >= k.size() || k.cube(c.faces[i][a]).dim != d - 1) {
            bad("face-dimension", "cube " + std::to_string(id) + " face (" +
                                      std::to_string(i + 1) + "," + std::to_string(a) + ")");
            faces_ok = false;
          }
        }
      if (!faces_ok) continue;
      for (int i = 0; i < d; ++i)
        for (int a = 0; a < 2; ++a) {
          const auto& fl = k.cube(c.faces[i][a]).labels;
          for (int j = 0, src = 0; j < d - 1; ++j, ++src) {
            if (src == i) ++src;
            if (fl[j] != c.labels[src])
              bad("label-coherence", "cube " + std::to_string(id) + " direction " +
                                         std::to_string(i + 1) + " face " + std::to_string(a));
          }
        }
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
              const CubeId lhs = k.cube(c.faces[j][b]).faces[i][a];
              const CubeId rhs = k.cube(c.faces[i][a]).faces[j - 1][b];
              if (lhs != rhs)
                bad("cubical-relation", "cube " + std::to_string(id) + " at (" +
                                            std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                            "," + std::to_string(a) + "," + std::to_string(b) + ")");
            }
      // Labels of dimension >= 2 cubes factor through the asynchronous
      // sub-precubical set of labels; 1-cubes may carry synchronization
      // products (the dimension-1 exception).
      if (d >= 2) {
        for (const auto& lbl : c.labels) {
          if (!alg.has_action(lbl))
            bad("asynchrony", "cube " + std::to_string(id) + " label '" + lbl + "' unknown");
          else if (!alg.asynchronous(lbl))
            bad("asynchrony",
                "cube " + std::to_string(id) + " label '" + lbl + "' not asynchronous-capable");
        }
      } else {
        for (const auto& lbl : c.labels)
          if (!alg.has_action(lbl))
            bad("asynchrony", "cube " + std::to_string(id) + " label '" + lbl + "' unknown");
      }
    }
  }

  if (k.initial()) {
    const CubeId init = *k.initial();
    if (init >= k.size() || k.cube(init).dim != 0) {
      bad("initial", "initial id is not a 0-cube");
    } else {
      for (CubeId e : k.cubes_of_dim(1))
        if (k.edge_target(e) == init)
          bad("initial", "initial state is the target of edge " + std::to_string(e));
    }
  }
  for (const auto& [v, term] : k.decorations()) {
    if (v >= k.size() || k.cube(v).dim != 0)
      bad("decoration", "decoration on non-vertex " + std::to_string(v));
    (void)term;
  }

  rep.ok = rep.violations.empty();
  return rep;
}

LabelledPCSet standard_cube(std::span<const std::string> labels, const SyncAlgebra& alg) {
  const int n = static_cast<int>(labels.size());
  if (n >= 1) {
    for (const auto& l : labels)
      if (!alg.asynchronous(l))
        throw UserError("label '" + l + "' is not asynchronous-capable; no standard cube");
  }
  LabelledPCSet k;
  // Face words over {0,1,*}; the cube of a word has one direction per '*'.
  // Dimension-graded insertion; vertices first, in bitmask order.
  std::map<std::string, CubeId> word_id;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::string w(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) w[static_cast<std::size_t>(i)] = '1';
    word_id[w] = k.add_vertex();
  }
  for (int d = 1; d <= n; ++d) {
    // All words with exactly d stars, in lexicographic order ('*' > '1').
    std::vector<int> star_positions(static_cast<std::size_t>(d));
    std::iota(star_positions.begin(), star_positions.end(), 0);
    std::vector<std::string> words;
    std::function<void(std::string&, int, int)> gen = [&](std::string& w, int pos, int stars_left) {
      if (pos == n) {
        if (stars_left == 0) words.push_back(w);
        return;
      }
      if (n - pos <= stars_left) {  // must place stars in all remaining slots
        w[static_cast<std::size_t>(pos)] = '*';
        gen(w, pos + 1, stars_left - 1);
        w[static_cast<std::size_t>(pos)] = '0';
        return;
      }
      for (char c : {'0', '1'}) {
        w[static_cast<std::size_t>(pos)] = c;
        gen(w, pos + 1, stars_left);
      }
      if (stars_left > 0) {
        w[static_cast<std::size_t>(pos)] = '*';
        gen(w, pos + 1, stars_left - 1);
      }
      w[static_cast<std::size_t>(pos)] = '0';
    };
    std::string w(static_cast<std::size_t>(n), '0');
    gen(w, 0, d);
    for (const auto& word : words) {
      std::vector<std::array<CubeId, 2>> faces;
      std::vector<std::string> cube_labels;
      for (int i = 0; i < n; ++i)
        if (word[static_cast<std::size_t>(i)] == '*') cube_labels.push_back(labels[i]);
      for (int i = 0; i < n; ++i) {
        if (word[static_cast<std::size_t>(i)] != '*') continue;
        std::string w0 = word, w1 = word;
        w0[static_cast<std::size_t>(i)] = '0';
        w1[static_cast<std::size_t>(i)] = '1';
        faces.push_back({word_id.at(w0), word_id.at(w1)});
      }
      word_id[word] = k.add_cube(std::move(faces), std::move(cube_labels));
    }
  }
  if (n >= 0) k.set_initial(0);
  return k;
}

LabelledPCSet boundary(const LabelledPCSet& standard) {
  const int n = standard.max_dim();
  std::size_t expected = 1;
  for (int i = 0; i < n; ++i) expected *= 3;
  if (standard.size() != expected || standard.dim_count(n) != 1)
    throw UserError("boundary expects a standard cube");
  if (n == 0) return LabelledPCSet{};  // boundary of the point is empty
  return skeleton(standard, n - 1).pcset;
}

namespace {

Rebuilt rebuild(const LabelledPCSet& k, const std::function<bool(CubeId)>& keep,
                const std::vector<CubeId>* vertex_repr) {
  Rebuilt out;
  out.cube_map.assign(k.size(), kNoCube);
  // Vertices: one per representative class, in first-seen order.
  for (CubeId v : k.cubes_of_dim(0)) {
    if (!keep(v)) continue;
    const CubeId repr = vertex_repr ? (*vertex_repr)[v] : v;
    if (vertex_repr && out.cube_map[repr] != kNoCube) {
      out.cube_map[v] = out.cube_map[repr];
      continue;
    }
    const CubeId nv = out.pcset.add_vertex();
    out.cube_map[repr] = nv;
    out.cube_map[v] = nv;
  }
  for (int d = 1; d <= k.max_dim(); ++d) {
    for (CubeId id : k.cubes_of_dim(d)) {
      if (!keep(id)) continue;
      const Cube& c = k.cube(id);
      std::vector<std::array<CubeId, 2>> faces(c.faces.size());
      bool all = true;
      for (std::size_t i = 0; i < c.faces.size() && all; ++i)
        for (int a = 0; a < 2; ++a) {
          const CubeId f = out.cube_map[c.faces[i][a]];
          if (f == kNoCube) {
            all = false;
            break;
          }
          faces[i][a] = f;
        }
      if (!all) continue;  // face dropped: drop the cube too
      out.cube_map[id] = out.pcset.add_cube(std::move(faces), c.labels);
    }
  }
  if (k.initial() && out.cube_map[*k.initial()] != kNoCube)
    out.pcset.set_initial(out.cube_map[*k.initial()]);
  // Decorations: keep when unambiguous under the vertex identification.
  std::map<CubeId, std::vector<ProcPtr>> cand;
  for (const auto& [v, term] : k.decorations()) {
    const CubeId nv = out.cube_map[v];
    if (nv != kNoCube) cand[nv].push_back(term);
  }
  for (auto& [nv, terms] : cand) {
    bool unambiguous = true;
    for (const auto& t : terms)
      if (!equal(t, terms.front())) unambiguous = false;
    if (unambiguous) out.pcset.set_decoration(nv, terms.front());
  }
  return out;
}

}  // namespace

Rebuilt skeleton(const LabelledPCSet& k, int n) {
  return rebuild(
      k, [&](CubeId id) { return k.cube(id).dim <= n; }, nullptr);
}

Rebuilt filter_by_labels(const LabelledPCSet& k,
                         const std::function<bool(const std::string&)>& keep) {
  return rebuild(
      k,
      [&](CubeId id) {
        for (const auto& l : k.cube(id).labels)
          if (!keep(l)) return false;
        return true;
      },
      nullptr);
}

Rebuilt merge_vertices(const LabelledPCSet& k,
                       std::span<const std::pair<CubeId, CubeId>> pairs) {
  // Union-find over vertex ids, representative = least id in class.
  std::vector<CubeId> parent(k.size());
  std::iota(parent.begin(), parent.end(), 0u);
  std::function<CubeId(CubeId)> find = [&](CubeId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& [a, b] : pairs) {
    if (a >= k.size() || b >= k.size() || k.cube(a).dim != 0 || k.cube(b).dim != 0)
      throw UserError("merge_vertices: ids must be 0-cubes");
    CubeId ra = find(a), rb = find(b);
    if (ra == rb) continue;
    if (ra > rb) std::swap(ra, rb);
    parent[rb] = ra;
  }
  std::vector<CubeId> repr(k.size(), kNoCube);
  for (CubeId v : k.cubes_of_dim(0)) repr[v] = find(v);

  Rebuilt out = rebuild(
      k, [](CubeId) { return true; }, &repr);

  // Looplessness: the merged 1-skeleton must stay acyclic.
  const auto& p = out.pcset;
  const std::size_t nv = p.dim_count(0);
  std::vector<std::vector<CubeId>> adj(nv);
  for (CubeId e : p.cubes_of_dim(1)) {
    if (p.edge_source(e) == p.edge_target(e))
      throw UserError("merge_vertices would create a loop");
    adj[p.edge_source(e)].push_back(p.edge_target(e));
  }
  std::vector<int> state(nv, 0);
  std::function<void(CubeId)> dfs = [&](CubeId v) {
    state[v] = 1;
    for (CubeId w : adj[v]) {
      if (state[w] == 1) throw UserError("merge_vertices would create a directed cycle");
      if (state[w] == 0) dfs(w);
    }
    state[v] = 2;
  };
  for (CubeId v = 0; v < nv; ++v)
    if (state[v] == 0) dfs(v);
  return out;
}

namespace {

// Vertex signatures: iterative refinement over the labelled 1-skeleton.
struct VertexSig {
  std::vector<std::uint64_t> color;  // per vertex index
};

std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

struct SkeletonView {
  // per vertex index: (label, neighbor index) out/in lists
  std::vector<std::vector<std::pair<std::string, std::uint32_t>>> out, in;
  std::vector<std::uint32_t> vertex_index;  // cube id -> index in dim-0 list
  std::vector<CubeId> vertices;
  std::optional<std::uint32_t> initial;
};

SkeletonView view_of(const LabelledPCSet& k) {
  SkeletonView v;
  v.vertices = k.cubes_of_dim(0);
  v.vertex_index.assign(k.size(), 0);
  for (std::uint32_t i = 0; i < v.vertices.size(); ++i) v.vertex_index[v.vertices[i]] = i;
  v.out.resize(v.vertices.size());
  v.in.resize(v.vertices.size());
  for (CubeId e : k.cubes_of_dim(1)) {
    const auto s = v.vertex_index[k.edge_source(e)];
    const auto t = v.vertex_index[k.edge_target(e)];
    v.out[s].push_back({k.cube(e).labels[0], t});
    v.in[t].push_back({k.cube(e).labels[0], s});
  }
  if (k.initial()) v.initial = v.vertex_index[*k.initial()];
  return v;
}

std::vector<std::uint64_t> refine_colors(const SkeletonView& sv) {
  const std::size_t n = sv.out.size();
  std::vector<std::uint64_t> color(n);
  std::hash<std::string> shash;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t h = sv.initial && *sv.initial == i ? 0x12345 : 1;
    std::vector<std::uint64_t> outs, ins;
    for (const auto& [l, t] : sv.out[i]) outs.push_back(shash(l));
    for (const auto& [l, t] : sv.in[i]) ins.push_back(shash(l));
    std::sort(outs.begin(), outs.end());
    std::sort(ins.begin(), ins.end());
    h = hash_mix(h, outs.size() * 2654435761u);
    for (auto o : outs) h = hash_mix(h, o);
    h = hash_mix(h, ins.size() * 40503u);
    for (auto o : ins) h = hash_mix(h, o);
    color[i] = h;
  }
  for (int round = 0; round < 8; ++round) {
    std::vector<std::uint64_t> next(n);
    std::hash<std::string> sh;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t h = color[i];
      std::vector<std::uint64_t> outs, ins;
      for (const auto& [l, t] : sv.out[i]) outs.push_back(hash_mix(sh(l), color[t]));
      for (const auto& [l, t] : sv.in[i]) ins.push_back(hash_mix(sh(l) ^ 0xabcdu, color[t]));
      std::sort(outs.begin(), outs.end());
      std::sort(ins.begin(), ins.end());
      for (auto o : outs) h = hash_mix(h, o);
      h = hash_mix(h, 0x5151);
      for (auto o : ins) h = hash_mix(h, o);
      next[i] = h;
    }
    if (next == color) break;
    color = std::move(next);
  }
  return color;
}

// Extends a full vertex assignment (K vertex index -> L vertex index) to all
// cubes, or returns nullopt.
std::optional<Isomorphism> extend_map(const LabelledPCSet& k, const LabelledPCSet& l,
                                      const std::vector<std::uint32_t>& vmap) {
  if (k.max_dim() != l.max_dim()) return std::nullopt;
  for (int d = 0; d <= k.max_dim(); ++d)
    if (k.dim_count(d) != l.dim_count(d)) return std::nullopt;

  Isomorphism iso;
  iso.cube_map.assign(k.size(), kNoCube);
  const auto& kverts = k.cubes_of_dim(0);
  const auto& lverts = l.cubes_of_dim(0);
  for (std::uint32_t i = 0; i < kverts.size(); ++i) iso.cube_map[kverts[i]] = lverts[vmap[i]];

  // Group L cubes by structural key of mapped faces; raw-loaded sets can hold
  // duplicate keys, so match multisets per key.
  for (int d = 1; d <= k.max_dim(); ++d) {
    std::map<std::string, std::vector<CubeId>> lbuckets;
    for (CubeId lid : l.cubes_of_dim(d)) {
      const Cube& c = l.cube(lid);
      std::string key = join_labels(c.labels);
      key += '|';
      for (const auto& f : c.faces) {
        key += std::to_string(f[0]) + "," + std::to_string(f[1]) + ";";
      }
      lbuckets[key].push_back(lid);
    }
    for (CubeId kid : k.cubes_of_dim(d)) {
      const Cube& c = k.cube(kid);
      std::string key = join_labels(c.labels);
      key += '|';
      bool ok = true;
      for (const auto& f : c.faces) {
        const CubeId f0 = iso.cube_map[f[0]], f1 = iso.cube_map[f[1]];
        if (f0 == kNoCube || f1 == kNoCube) {
          ok = false;
          break;
        }
        key += std::to_string(f0) + "," + std::to_string(f1) + ";";
      }
      if (!ok) return std::nullopt;
      auto it = lbuckets.find(key);
      if (it == lbuckets.end() || it->second.empty()) return std::nullopt;
      iso.cube_map[kid] = it->second.back();
      it->second.pop_back();
    }
  }
  // Initial state must correspond.
  if (k.initial().has_value() != l.initial().has_value()) return std::nullopt;
  if (k.initial() && iso.cube_map[*k.initial()] != *l.initial()) return std::nullopt;
  return iso;
}

}  // namespace

std::optional<Isomorphism> extend_vertex_bijection(const LabelledPCSet& k,
                                                   const LabelledPCSet& l,
                                                   std::span<const std::uint32_t> vertex_map) {
  if (vertex_map.size() != k.dim_count(0) || k.dim_count(0) != l.dim_count(0))
    return std::nullopt;
  std::vector<std::uint32_t> vmap(vertex_map.begin(), vertex_map.end());
  return extend_map(k, l, vmap);
}

bool symmetric_equal(const LabelledPCSet& k, const LabelledPCSet& l,
                     std::span<const std::uint32_t> vertex_map) {
  if (vertex_map.size() != k.dim_count(0) || k.dim_count(0) != l.dim_count(0)) return false;
  if (k.max_dim() != l.max_dim()) return false;
  for (int d = 0; d <= k.max_dim(); ++d)
    if (k.dim_count(d) != l.dim_count(d)) return false;
  if (k.initial().has_value() != l.initial().has_value()) return false;

  // Recursive direction-insensitive keys, grounded in L-side vertex ids.
  auto keys_of = [](const LabelledPCSet& p,
                    const std::function<std::string(CubeId)>& vertex_key) {
    std::vector<std::string> key(p.size());
    for (CubeId v : p.cubes_of_dim(0)) key[v] = vertex_key(v);
    std::vector<std::multiset<std::string>> per_dim;
    per_dim.emplace_back();
    for (CubeId v : p.cubes_of_dim(0)) per_dim[0].insert(key[v]);
    for (int d = 1; d <= p.max_dim(); ++d) {
      per_dim.emplace_back();
      for (CubeId id : p.cubes_of_dim(d)) {
        const Cube& c = p.cube(id);
        std::vector<std::string> dirs;
        for (int i = 0; i < d; ++i)
          dirs.push_back("(" + c.labels[static_cast<std::size_t>(i)] + "|" +
                         key[c.faces[static_cast<std::size_t>(i)][0]] + "|" +
                         key[c.faces[static_cast<std::size_t>(i)][1]] + ")");
        std::sort(dirs.begin(), dirs.end());
        std::string s = "[";
        for (const auto& t : dirs) s += t;
        s += "]";
        key[id] = s;
        per_dim[static_cast<std::size_t>(d)].insert(std::move(s));
      }
    }
    return per_dim;
  };

  const auto& kverts = k.cubes_of_dim(0);
  std::vector<std::uint32_t> kindex(k.size(), 0);
  for (std::uint32_t i = 0; i < kverts.size(); ++i) kindex[kverts[i]] = i;
  const auto& lverts = l.cubes_of_dim(0);
  const auto kkeys = keys_of(k, [&](CubeId v) {
    return "v" + std::to_string(lverts[vertex_map[kindex[v]]]);
  });
  const auto lkeys = keys_of(l, [](CubeId v) { return "v" + std::to_string(v); });
  if (k.initial() &&
      lverts[vertex_map[kindex[*k.initial()]]] != *l.initial())
    return false;
  return kkeys == lkeys;
}

std::optional<Isomorphism> iso_check(const LabelledPCSet& k, const LabelledPCSet& l,
                                     std::size_t size_guard) {
  size_guard = resource_guard(size_guard);
  if (k.size() > size_guard || l.size() > size_guard)
    throw ResourceError("iso_check size guard exceeded (" + std::to_string(size_guard) + ")");
  if (k.max_dim() != l.max_dim()) return std::nullopt;
  for (int d = 0; d <= k.max_dim(); ++d)
    if (k.dim_count(d) != l.dim_count(d)) return std::nullopt;
  if (k.initial().has_value() != l.initial().has_value()) return std::nullopt;
  if (k.dim_count(0) == 0) return Isomorphism{};

  const SkeletonView kv = view_of(k), lv = view_of(l);
  const auto kcol = refine_colors(kv), lcol = refine_colors(lv);
  {
    auto ks = kcol;
    auto ls = lcol;
    std::sort(ks.begin(), ks.end());
    std::sort(ls.begin(), ls.end());
    if (ks != ls) return std::nullopt;
  }

  const std::size_t n = kv.vertices.size();
  std::map<std::uint64_t, std::vector<std::uint32_t>> lclass;
  for (std::uint32_t j = 0; j < n; ++j) lclass[lcol[j]].push_back(j);

  // Most-constrained first: vertices in the smallest color classes.
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::map<std::uint64_t, std::size_t> class_size;
  for (auto c : kcol) class_size[c]++;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (class_size[kcol[a]] != class_size[kcol[b]]) return class_size[kcol[a]] < class_size[kcol[b]];
    return a < b;
  });

  std::vector<std::uint32_t> assign(n, kNoCube);
  std::vector<bool> used(n, false);
  std::size_t steps = 0;
  const std::size_t step_guard = resource_guard(20000000);

  // Multiset of labels between an ordered vertex pair must be preserved.
  auto edges_between = [](const SkeletonView& sv, std::uint32_t a, std::uint32_t b) {
    std::vector<std::string> labels;
    for (const auto& [l, t] : sv.out[a])
      if (t == b) labels.push_back(l);
    std::sort(labels.begin(), labels.end());
    return labels;
  };

  std::function<bool(std::size_t)> search = [&](std::size_t idx) -> bool {
    if (++steps > step_guard) throw ResourceError("iso_check backtracking guard exceeded");
    if (idx == n) {
      std::vector<std::uint32_t> vmap(n);
      for (std::uint32_t i = 0; i < n; ++i) vmap[i] = assign[i];
      return extend_map(k, l, vmap).has_value();
    }
    const std::uint32_t u = order[idx];
    for (std::uint32_t cand : lclass[kcol[u]]) {
      if (used[cand]) continue;
      bool consistent = true;
      for (std::size_t prev = 0; prev < idx && consistent; ++prev) {
        const std::uint32_t w = order[prev];
        if (edges_between(kv, u, w) != edges_between(lv, cand, assign[w])) consistent = false;
        if (consistent && edges_between(kv, w, u) != edges_between(lv, assign[w], cand))
          consistent = false;
      }
      if (!consistent) continue;
      assign[u] = cand;
      used[cand] = true;
      if (search(idx + 1)) return true;
      assign[u] = kNoCube;
      used[cand] = false;
    }
    return false;
  };

  if (kv.initial) {
    // Pin the initial state first.
    const std::uint32_t ki = *kv.initial, li = *lv.initial;
    if (kcol[ki] != lcol[li]) return std::nullopt;
    auto it = std::find(order.begin(), order.end(), ki);
    std::rotate(order.begin(), it, it + 1);
    assign[ki] = li;
    used[li] = true;
    if (!search(1)) return std::nullopt;
  } else if (!search(0)) {
    return std::nullopt;
  }

  std::vector<std::uint32_t> vmap(n);
  for (std::uint32_t i = 0; i < n; ++i) vmap[i] = assign[i];
  return extend_map(k, l, vmap);
}

}  // namespace hda
