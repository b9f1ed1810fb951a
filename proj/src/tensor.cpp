#include "hda/tensor.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

#include "hda/errors.hpp"

namespace hda {

ProductResult product1(const SyncAlgebra& alg, const LabelledPCSet& k, const LabelledPCSet& l) {
  if (k.max_dim() > 1 || l.max_dim() > 1)
    throw UserError("product1 expects inputs of dimension at most 1");
  ProductResult out;
  const auto& kv = k.cubes_of_dim(0);
  const auto& lv = l.cubes_of_dim(0);
  std::vector<std::uint32_t> kindex(k.size(), 0), lindex(l.size(), 0);
  for (std::uint32_t i = 0; i < kv.size(); ++i) kindex[kv[i]] = i;
  for (std::uint32_t i = 0; i < lv.size(); ++i) lindex[lv[i]] = i;
  auto pid = [&](CubeId u, CubeId v) {
    return static_cast<CubeId>(kindex[u] * lv.size() + lindex[v]);
  };
  for (CubeId u : kv)
    for (CubeId v : lv) {
      out.pcset.add_vertex();
      out.vertex_pairs.emplace_back(u, v);
    }
  // Left moves, gated by asynchrony of the label.
  for (CubeId x : k.cubes_of_dim(1)) {
    const std::string& a = k.cube(x).labels[0];
    if (!alg.asynchronous(a)) continue;
    for (CubeId v : lv)
      out.pcset.add_cube({{pid(k.edge_source(x), v), pid(k.edge_target(x), v)}}, {a});
  }
  // Right moves.
  for (CubeId u : kv)
    for (CubeId y : l.cubes_of_dim(1)) {
      const std::string& b = l.cube(y).labels[0];
      if (!alg.asynchronous(b)) continue;
      out.pcset.add_cube({{pid(u, l.edge_source(y)), pid(u, l.edge_target(y))}}, {b});
    }
  // Synchronized diagonals.
  for (CubeId x : k.cubes_of_dim(1))
    for (CubeId y : l.cubes_of_dim(1)) {
      const Label s = alg.sync_actions(k.cube(x).labels[0], l.cube(y).labels[0]);
      if (s.is_bot()) continue;
      out.pcset.add_cube({{pid(k.edge_source(x), l.edge_source(y)),
                           pid(k.edge_target(x), l.edge_target(y))}},
                         {s.name()});
    }
  if (k.initial() && l.initial()) out.pcset.set_initial(pid(*k.initial(), *l.initial()));
  return out;
}

std::vector<std::uint32_t> identity_coords(const LabelledPCSet& k) {
  std::vector<std::uint32_t> coords(k.dim_count(0));
  for (std::uint32_t i = 0; i < coords.size(); ++i) coords[i] = i;
  return coords;
}

namespace {

struct VertexGrid {
  int m = 0;
  std::vector<CubeId> vid_of_mask;       // bitmask -> 0-cube id
  std::vector<std::uint32_t> mask_of;    // 0-cube id -> bitmask (indexed by id)
};

VertexGrid make_grid(const LabelledPCSet& k, std::span<const std::uint32_t> coords, int m) {
  VertexGrid g;
  g.m = m;
  const auto& verts = k.cubes_of_dim(0);
  if (coords.size() != verts.size() || verts.size() != (std::size_t{1} << m))
    throw UserError("vertex set is not of the form {0,1}^m");
  g.vid_of_mask.assign(std::size_t{1} << m, kNoCube);
  g.mask_of.assign(k.size(), 0);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const std::uint32_t mask = coords[i];
    if (mask >= (std::uint32_t{1} << m) || g.vid_of_mask[mask] != kNoCube)
      throw UserError("vertex coordinates are not a bijection onto {0,1}^m");
    g.vid_of_mask[mask] = verts[i];
    g.mask_of[verts[i]] = mask;
  }
  return g;
}

// Corner signature of an existing cube: vertex ids at eps = 0..2^d-1.
using CornerSig = std::vector<CubeId>;

std::map<CornerSig, std::vector<CubeId>> corner_index(const LabelledPCSet& k, int dim) {
  std::map<CornerSig, std::vector<CubeId>> index;
  for (CubeId id : k.cubes_of_dim(dim)) index[k.corners(id)].push_back(id);
  return index;
}

}  // namespace

std::vector<NonTwistedShell> enumerate_shells(const SyncAlgebra& alg,
                                              const LabelledPCSet& filled,
                                              std::span<const std::uint32_t> vertex_coords,
                                              int m, int n) {
  const VertexGrid grid = make_grid(filled, vertex_coords, m);
  std::vector<NonTwistedShell> shells;
  if (n + 1 > m) return shells;  // injective vertex maps need 2^(n+1) corners

  const auto faces_index = corner_index(filled, n);

  // roles[i]: kConst0, kConst1 or a direction 0..n; directions must all
  // occur and first occurrences appear in increasing order (non-twisted).
  std::vector<int> roles(static_cast<std::size_t>(m), NonTwistedShell::kConst0);

  auto eval_mask = [&](const std::vector<int>& rs, std::uint32_t eps) {
    std::uint32_t mask = 0;
    for (int i = 0; i < m; ++i) {
      const int r = rs[static_cast<std::size_t>(i)];
      const bool bit = r == NonTwistedShell::kConst1 ||
                       (r >= 0 && ((eps >> r) & 1u) != 0);
      if (bit) mask |= 1u << i;
    }
    return mask;
  };

  auto try_assignment = [&](const std::vector<int>& rs) {
    // Faces of the candidate (n+1)-cube: direction j fixed to alpha; the
    // remaining directions renumber order-preservingly.
    struct Slot {
      std::vector<CubeId> candidates;  // dim-n cubes with the right corners
    };
    std::vector<std::array<CornerSig, 2>> face_corners(static_cast<std::size_t>(n + 1));
    for (int j = 0; j <= n; ++j)
      for (int a = 0; a < 2; ++a) {
        CornerSig sig(std::size_t{1} << n);
        for (std::uint32_t eps = 0; eps < (1u << n); ++eps) {
          // Insert alpha at direction j: coordinates < j keep their bit,
          // >= j shift up by one.
          std::uint32_t full = (eps & ((1u << j) - 1)) |
                               (static_cast<std::uint32_t>(a) << j) |
                               ((eps >> j) << (j + 1));
          sig[eps] = grid.vid_of_mask[eval_mask(rs, full)];
        }
        face_corners[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)] = std::move(sig);
      }

    // Candidate label tuples from the two faces that between them see every
    // coordinate: direction 1 faces miss label 1, direction 2 faces miss 2.
    std::vector<std::vector<std::string>> tuples;
    auto it10 = faces_index.find(face_corners[0][0]);
    auto it20 = faces_index.find(face_corners[1][0]);
    if (it10 == faces_index.end() || it20 == faces_index.end()) return;
    for (CubeId c1 : it10->second)
      for (CubeId c2 : it20->second) {
        const auto& l1 = filled.cube(c1).labels;  // (a_2 .. a_{n+1})
        const auto& l2 = filled.cube(c2).labels;  // (a_1, a_3 .. a_{n+1})
        bool agree = true;
        for (int t = 1; t < n && agree; ++t)
          if (l1[static_cast<std::size_t>(t)] != l2[static_cast<std::size_t>(t)]) agree = false;
        if (!agree) continue;
        std::vector<std::string> tuple;
        tuple.push_back(l2[0]);
        for (const auto& s : l1) tuple.push_back(s);
        if (std::find(tuples.begin(), tuples.end(), tuple) == tuples.end())
          tuples.push_back(std::move(tuple));
      }

    for (const auto& tuple : tuples) {
      // The filling tuple must land in the asynchronous label precubical set.
      bool async_ok = true;
      for (const auto& a : tuple)
        if (!alg.has_action(a) || !alg.asynchronous(a)) async_ok = false;
      if (!async_ok) continue;

      // Candidate cubes per face slot with matching labels.
      std::vector<std::array<std::vector<CubeId>, 2>> slot(static_cast<std::size_t>(n + 1));
      bool feasible = true;
      for (int j = 0; j <= n && feasible; ++j) {
        std::vector<std::string> want;
        for (int t = 0; t <= n; ++t)
          if (t != j) want.push_back(tuple[static_cast<std::size_t>(t)]);
        for (int a = 0; a < 2; ++a) {
          auto it = faces_index.find(face_corners[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)]);
          if (it == faces_index.end()) {
            feasible = false;
            break;
          }
          for (CubeId c : it->second)
            if (filled.cube(c).labels == want)
              slot[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)].push_back(c);
          if (slot[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)].empty()) {
            feasible = false;
            break;
          }
        }
      }
      if (!feasible) continue;

      // Choose one cube per slot so that shared boundaries glue:
      // d_i^a(face(j,b)) == d_{j-1}^b(face(i,a)) for i < j.
      std::vector<std::array<CubeId, 2>> chosen(static_cast<std::size_t>(n + 1));
      std::function<void(int)> pick = [&](int idx) {
        if (idx == 2 * (n + 1)) {
          shells.push_back({roles, tuple, chosen});
          return;
        }
        const int j = idx / 2, a = idx % 2;
        for (CubeId c : slot[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)]) {
          bool glue = true;
          for (int prev = 0; prev < idx && glue; ++prev) {
            const int i = prev / 2, b = prev % 2;
            if (i == j) continue;
            // i < j always here; shared face of directions i and j.
            if (n == 0) continue;
            const CubeId via_j = filled.cube(c).faces[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)];
            const CubeId via_i =
                filled.cube(chosen[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)])
                    .faces[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(a)];
            if (via_j != via_i) glue = false;
          }
          if (!glue) continue;
          chosen[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)] = c;
          pick(idx + 1);
        }
      };
      pick(0);
    }
    // `roles` is captured by reference into shells; copies were taken above.
  };

  // Enumerate role assignments with ordered first occurrences.
  std::function<void(int, int)> gen = [&](int pos, int next_new) {
    if (m - pos < (n + 1) - next_new) return;  // cannot place remaining directions
    if (pos == m) {
      if (next_new == n + 1) try_assignment(roles);
      return;
    }
    roles[static_cast<std::size_t>(pos)] = NonTwistedShell::kConst0;
    gen(pos + 1, next_new);
    roles[static_cast<std::size_t>(pos)] = NonTwistedShell::kConst1;
    gen(pos + 1, next_new);
    for (int d = 0; d < next_new; ++d) {
      roles[static_cast<std::size_t>(pos)] = d;
      gen(pos + 1, next_new);
    }
    if (next_new <= n) {
      roles[static_cast<std::size_t>(pos)] = next_new;
      gen(pos + 1, next_new + 1);
    }
    roles[static_cast<std::size_t>(pos)] = NonTwistedShell::kConst0;
  };
  gen(0, 0);
  return shells;
}

LabelledPCSet cosk_dir(const SyncAlgebra& alg, const LabelledPCSet& k,
                       std::span<const std::uint32_t> vertex_coords, int m) {
  if (k.max_dim() > 1) throw UserError("cosk_dir expects a 1-dimensional input");
  LabelledPCSet filled = k;
  for (int n = 1; n + 1 <= m; ++n) {
    auto shells = enumerate_shells(alg, filled, vertex_coords, m, n);
    if (shells.empty()) break;
    for (const auto& s : shells) filled.add_cube(s.faces, s.labels);
  }
  return filled;
}

std::size_t undirected_square_shell_count(const SyncAlgebra& alg, const LabelledPCSet& k) {
  if (k.max_dim() > 1) throw UserError("undirected shell count expects a 1-dimensional input");
  // All commutative squares of edges whose labelling factors through a
  // single asynchronous pair (a1, a2): opposite edges share labels. No
  // injectivity or orientation-order requirement.
  std::size_t count = 0;
  const auto& edges = k.cubes_of_dim(1);
  for (CubeId e10 : edges)          // direction 2 at eps_1 = 0
    for (CubeId e20 : edges) {      // direction 1 at eps_2 = 0
      if (k.edge_source(e10) != k.edge_source(e20)) continue;
      const std::string& a2 = k.cube(e10).labels[0];
      const std::string& a1 = k.cube(e20).labels[0];
      if (!alg.asynchronous(a1) || !alg.asynchronous(a2)) continue;
      for (CubeId e21 : edges) {    // direction 1 at eps_2 = 1
        if (k.edge_source(e21) != k.edge_target(e10)) continue;
        if (k.cube(e21).labels[0] != a1) continue;
        for (CubeId e11 : edges) {  // direction 2 at eps_1 = 1
          if (k.edge_source(e11) != k.edge_target(e20)) continue;
          if (k.edge_target(e11) != k.edge_target(e21)) continue;
          if (k.cube(e11).labels[0] != a2) continue;
          ++count;
        }
      }
    }
  return count;
}

namespace {

// Descriptor of one cube of a tensor pair: which coordinates execute alone
// (A), which synchronize in left/right pairs (B, with pairing f), which are
// not yet started (C-) and which are finished (C+).
struct Descriptor {
  std::uint32_t a_mask = 0;
  std::uint32_t c_plus = 0;    // remaining positions split: c_minus implied
  std::vector<std::pair<int, int>> pairs;  // (left pos, right pos), sorted by left

  auto key() const { return std::tie(a_mask, c_plus, pairs); }
  bool operator<(const Descriptor& o) const { return key() < o.key(); }
};

struct PairContext {
  int p = 0, q = 0;
  std::vector<std::string> labels;  // p left then q right labels
};

int descriptor_dim(const Descriptor& d) {
  return __builtin_popcount(d.a_mask) + static_cast<int>(d.pairs.size());
}

// Positions of A u (B n left), sorted: the cube's directions.
std::vector<int> direction_positions(const Descriptor& d) {
  std::vector<int> js;
  for (int i = 0; i < 32; ++i)
    if (d.a_mask & (1u << i)) js.push_back(i);
  for (const auto& [l, r] : d.pairs) js.push_back(l);
  std::sort(js.begin(), js.end());
  return js;
}

std::vector<std::string> descriptor_labels(const SyncAlgebra& alg, const PairContext& ctx,
                                           const Descriptor& d) {
  std::vector<std::string> out;
  for (int j : direction_positions(d)) {
    if (d.a_mask & (1u << j)) {
      out.push_back(ctx.labels[static_cast<std::size_t>(j)]);
    } else {
      auto it = std::find_if(d.pairs.begin(), d.pairs.end(),
                             [&](const auto& pr) { return pr.first == j; });
      out.push_back(alg
                        .sync_actions(ctx.labels[static_cast<std::size_t>(it->first)],
                                      ctx.labels[static_cast<std::size_t>(it->second)])
                        .name());
    }
  }
  return out;
}

// The face in direction k (1-based among the sorted directions) at alpha
// re-homes that coordinate (and its partner) into C^alpha.
Descriptor descriptor_face(const Descriptor& d, int k, int alpha) {
  Descriptor f = d;
  const int j = direction_positions(d)[static_cast<std::size_t>(k - 1)];
  if (f.a_mask & (1u << j)) {
    f.a_mask &= ~(1u << j);
    if (alpha) f.c_plus |= 1u << j;
  } else {
    auto it = std::find_if(f.pairs.begin(), f.pairs.end(),
                           [&](const auto& pr) { return pr.first == j; });
    const int partner = it->second;
    f.pairs.erase(it);
    if (alpha) f.c_plus |= (1u << j) | (1u << partner);
  }
  return f;
}

// All valid descriptors for labelled dimensions (p, q), grouped by dimension.
std::vector<Descriptor> enumerate_descriptors(const SyncAlgebra& alg, const PairContext& ctx) {
  const int total = ctx.p + ctx.q;
  std::vector<Descriptor> out;

  // Choose the synchronization matching first.
  std::vector<std::pair<int, int>> pairs;
  std::uint32_t used_right = 0;

  std::function<void(int)> choose_pairs = [&](int left_from) {
    // With the matching fixed, distribute the remaining positions over
    // A / C- / C+.
    {
      std::uint32_t taken = used_right;
      for (const auto& [l, r] : pairs) taken |= 1u << l;
      std::vector<int> rest;
      for (int i = 0; i < total; ++i)
        if (!(taken & (1u << i))) rest.push_back(i);
      const auto nrest = static_cast<std::uint32_t>(rest.size());
      for (std::uint32_t pick = 0; pick < (1u << nrest); ++pick) {
        Descriptor d;
        d.pairs = pairs;
        for (std::uint32_t t = 0; t < nrest; ++t)
          if (pick & (1u << t)) d.a_mask |= 1u << rest[t];
        const int r = descriptor_dim(d);
        if (r >= 2) {
          bool ok = true;
          for (const auto& lbl : descriptor_labels(alg, ctx, d))
            if (!alg.asynchronous(lbl)) ok = false;
          if (!ok) continue;
        }
        std::uint32_t cmask = 0;
        for (std::uint32_t t = 0; t < nrest; ++t)
          if (!(pick & (1u << t))) cmask |= 1u << rest[t];
        // Split C into not-yet-started / finished.
        std::vector<int> cpos;
        for (int i = 0; i < total; ++i)
          if (cmask & (1u << i)) cpos.push_back(i);
        for (std::uint32_t split = 0; split < (1u << cpos.size()); ++split) {
          Descriptor e = d;
          for (std::size_t t = 0; t < cpos.size(); ++t)
            if (split & (1u << t)) e.c_plus |= 1u << cpos[t];
          out.push_back(std::move(e));
        }
      }
    }
    for (int l = left_from; l < ctx.p; ++l) {
      for (int r = ctx.p; r < total; ++r) {
        if (used_right & (1u << r)) continue;
        if (alg.sync_actions(ctx.labels[static_cast<std::size_t>(l)],
                             ctx.labels[static_cast<std::size_t>(r)])
                .is_bot())
          continue;
        pairs.emplace_back(l, r);
        used_right |= 1u << r;
        choose_pairs(l + 1);
        used_right &= ~(1u << r);
        pairs.pop_back();
      }
    }
  };
  choose_pairs(0);

  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

LabelledPCSet cube_tensor(const SyncAlgebra& alg, std::span<const std::string> left_labels,
                          std::span<const std::string> right_labels) {
  const int p = static_cast<int>(left_labels.size());
  const int q = static_cast<int>(right_labels.size());
  PairContext ctx{p, q, {}};
  for (const auto& a : left_labels) {
    if (!alg.asynchronous(a)) throw UserError("label '" + a + "' is not asynchronous-capable");
    ctx.labels.push_back(a);
  }
  for (const auto& a : right_labels) {
    if (!alg.asynchronous(a)) throw UserError("label '" + a + "' is not asynchronous-capable");
    ctx.labels.push_back(a);
  }

  LabelledPCSet out;
  for (std::uint32_t mask = 0; mask < (1u << (p + q)); ++mask) out.add_vertex();

  auto vertex_of = [&](const Descriptor& d) -> CubeId { return d.c_plus; };

  auto descriptors = enumerate_descriptors(alg, ctx);
  std::map<Descriptor, CubeId> ids;
  std::stable_sort(descriptors.begin(), descriptors.end(),
                   [](const Descriptor& a, const Descriptor& b) {
                     return descriptor_dim(a) < descriptor_dim(b);
                   });
  for (const auto& d : descriptors) {
    const int r = descriptor_dim(d);
    if (r == 0) {
      ids[d] = vertex_of(d);
      continue;
    }
    std::vector<std::array<CubeId, 2>> faces(static_cast<std::size_t>(r));
    for (int k = 1; k <= r; ++k)
      for (int a = 0; a < 2; ++a)
        faces[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(a)] =
            ids.at(descriptor_face(d, k, a));
    ids[d] = out.add_cube(std::move(faces), descriptor_labels(alg, ctx, d));
  }
  out.set_initial(0);
  return out;
}

TensorResult tensor(const SyncAlgebra& alg, const LabelledPCSet& k, const LabelledPCSet& l,
                    std::size_t cube_guard) {
  cube_guard = resource_guard(cube_guard);
  TensorResult out;
  const auto& kv = k.cubes_of_dim(0);
  const auto& lv = l.cubes_of_dim(0);
  std::vector<std::uint32_t> kindex(k.size(), 0), lindex(l.size(), 0);
  for (std::uint32_t i = 0; i < kv.size(); ++i) kindex[kv[i]] = i;
  for (std::uint32_t i = 0; i < lv.size(); ++i) lindex[lv[i]] = i;
  auto pid = [&](CubeId u, CubeId v) {
    return static_cast<CubeId>(kindex[u] * lv.size() + lindex[v]);
  };
  for (CubeId u : kv)
    for (CubeId v : lv) {
      out.pcset.add_vertex();
      out.vertex_pairs.emplace_back(u, v);
    }

  for (int dx = 0; dx <= k.max_dim(); ++dx)
    for (CubeId x : k.cubes_of_dim(dx))
      for (int dy = 0; dy <= l.max_dim(); ++dy)
        for (CubeId y : l.cubes_of_dim(dy)) {
          PairContext ctx{dx, dy, {}};
          ctx.labels = k.cube(x).labels;
          ctx.labels.insert(ctx.labels.end(), l.cube(y).labels.begin(), l.cube(y).labels.end());

          // Corner of the pair at a C+ bitmask: left bits feed x's vertex
          // map, right bits (shifted) feed y's.
          auto vertex_of = [&](std::uint32_t c_plus) {
            const std::uint32_t left = c_plus & ((1u << dx) - 1);
            const std::uint32_t right = c_plus >> dx;
            return pid(k.corner(x, left), l.corner(y, right));
          };

          auto descriptors = enumerate_descriptors(alg, ctx);
          std::stable_sort(descriptors.begin(), descriptors.end(),
                           [](const Descriptor& a, const Descriptor& b) {
                             return descriptor_dim(a) < descriptor_dim(b);
                           });
          std::map<Descriptor, CubeId> ids;
          for (const auto& d : descriptors) {
            const int r = descriptor_dim(d);
            if (r == 0) {
              ids[d] = vertex_of(d.c_plus);
              continue;
            }
            std::vector<std::array<CubeId, 2>> faces(static_cast<std::size_t>(r));
            for (int kk = 1; kk <= r; ++kk)
              for (int a = 0; a < 2; ++a)
                faces[static_cast<std::size_t>(kk - 1)][static_cast<std::size_t>(a)] =
                    ids.at(descriptor_face(d, kk, a));
            ids[d] = out.pcset.add_cube(std::move(faces), descriptor_labels(alg, ctx, d));
            if (out.pcset.size() > cube_guard)
              throw ResourceError("tensor cube guard exceeded (" + std::to_string(cube_guard) + ")");
          }
        }

  if (k.initial() && l.initial()) out.pcset.set_initial(pid(*k.initial(), *l.initial()));
  return out;
}

}  // namespace hda
