#include "hda/semantics.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "hda/errors.hpp"

namespace hda {

namespace {

bool is_marker(const std::string& name) { return !name.empty() && name[0] == '@'; }

bool closed_up_to_marker(const ProcPtr& t) {
  std::vector<std::string> fv;
  free_vars(t, fv);
  for (const auto& v : fv)
    if (!is_marker(v)) return false;
  return true;
}

// Structure-only copy of src appended to dst; returns old id -> new id.
std::vector<CubeId> append_pcset(LabelledPCSet& dst, const LabelledPCSet& src) {
  std::vector<CubeId> map(src.size(), kNoCube);
  for (CubeId v : src.cubes_of_dim(0)) map[v] = dst.add_vertex();
  for (int d = 1; d <= src.max_dim(); ++d)
    for (CubeId id : src.cubes_of_dim(d)) {
      const Cube& c = src.cube(id);
      std::vector<std::array<CubeId, 2>> faces(c.faces.size());
      for (std::size_t i = 0; i < c.faces.size(); ++i)
        for (int a = 0; a < 2; ++a) faces[i][a] = map[c.faces[i][a]];
      map[id] = dst.add_cube(std::move(faces), c.labels);
    }
  return map;
}

struct InterpBuilder {
  const SyncAlgebra& alg;
  int depth_bound;
  std::size_t cube_guard;
  // Every rec unfolding gets its own truncation marker so nested
  // recursions never capture each other's cut points when folding.
  int marker_counter = 0;

  Interpretation run(const ProcPtr& term) {
    switch (term->kind()) {
      case ProcKind::Nil:
      case ProcKind::Var: {
        // nil and the truncation marker: one initial point.
        Interpretation out;
        const CubeId v = out.pcset.add_vertex();
        out.pcset.set_initial(v);
        out.pcset.set_decoration(v, term);
        out.vertex_depth[v] = 0;
        out.depth_bound = depth_bound;
        return out;
      }
      case ProcKind::Prefix: return run_prefix(term);
      case ProcKind::Sum: return run_sum(term);
      case ProcKind::Par: return run_par(term);
      case ProcKind::Restrict: return run_restrict(term);
      case ProcKind::Rec: return run_rec(term);
    }
    throw std::logic_error("unreachable");
  }

  Interpretation run_prefix(const ProcPtr& term) {
    Interpretation body = run(term->left());
    Interpretation out;
    out.depth_bound = depth_bound;
    out.stabilized = body.stabilized;
    out.truncated = body.truncated;
    const CubeId init = out.pcset.add_vertex();
    const auto map = append_pcset(out.pcset, body.pcset);
    out.pcset.add_cube({{init, map[*body.pcset.initial()]}}, {term->name()});
    out.pcset.set_initial(init);
    out.pcset.set_decoration(init, term);
    out.vertex_depth[init] = 0;
    for (const auto& [v, d] : body.vertex_depth) out.vertex_depth[map[v]] = d + 1;
    for (const auto& [v, deco] : body.pcset.decorations()) out.pcset.set_decoration(map[v], deco);
    return out;
  }

  Interpretation run_sum(const ProcPtr& term) {
    Interpretation l = run(term->left());
    Interpretation r = run(term->right());
    LabelledPCSet un;
    const auto lmap = append_pcset(un, l.pcset);
    const auto rmap = append_pcset(un, r.pcset);

    // Identify the initial states, and every (decoration, depth) key held by
    // exactly one vertex of each branch, closing diamonds of shared residuals.
    std::map<std::pair<std::string, int>, std::pair<std::vector<CubeId>, std::vector<CubeId>>>
        groups;
    for (const auto& [v, deco] : l.pcset.decorations())
      groups[{format(deco), l.vertex_depth.at(v)}].first.push_back(lmap[v]);
    for (const auto& [v, deco] : r.pcset.decorations())
      groups[{format(deco), r.vertex_depth.at(v)}].second.push_back(rmap[v]);
    std::vector<std::pair<CubeId, CubeId>> pairs;
    pairs.emplace_back(lmap[*l.pcset.initial()], rmap[*r.pcset.initial()]);
    for (const auto& [key, g] : groups)
      if (g.first.size() == 1 && g.second.size() == 1)
        pairs.emplace_back(g.first.front(), g.second.front());

    Rebuilt merged = merge_vertices(un, pairs);
    Interpretation out;
    out.depth_bound = depth_bound;
    out.stabilized = l.stabilized || r.stabilized;
    out.truncated = l.truncated || r.truncated;
    out.pcset = std::move(merged.pcset);
    const CubeId init = merged.cube_map[lmap[*l.pcset.initial()]];
    out.pcset.set_initial(init);
    for (const auto& [v, deco] : l.pcset.decorations())
      out.pcset.set_decoration(merged.cube_map[lmap[v]], deco);
    for (const auto& [v, deco] : r.pcset.decorations())
      out.pcset.set_decoration(merged.cube_map[rmap[v]], deco);
    out.pcset.set_decoration(init, term);
    for (const auto& [v, d] : l.vertex_depth) out.vertex_depth[merged.cube_map[lmap[v]]] = d;
    for (const auto& [v, d] : r.vertex_depth) out.vertex_depth[merged.cube_map[rmap[v]]] = d;
    return out;
  }

  Interpretation run_par(const ProcPtr& term) {
    Interpretation l = run(term->left());
    Interpretation r = run(term->right());
    TensorResult t = tensor(alg, l.pcset, r.pcset, cube_guard);
    Interpretation out;
    out.depth_bound = depth_bound;
    out.stabilized = l.stabilized || r.stabilized;
    out.truncated = l.truncated || r.truncated;
    out.pcset = std::move(t.pcset);
    for (CubeId v : out.pcset.cubes_of_dim(0)) {
      const auto& [u, w] = t.vertex_pairs[v];
      out.pcset.set_decoration(v, ProcTerm::par(*l.pcset.decoration(u), *r.pcset.decoration(w)));
      out.vertex_depth[v] = l.vertex_depth.at(u) + r.vertex_depth.at(w);
    }
    return out;
  }

  Interpretation run_restrict(const ProcPtr& term) {
    Interpretation body = run(term->left());
    const Label a = Label::action(term->name());
    Rebuilt kept = filter_by_labels(body.pcset, [&](const std::string& lbl) {
      if (lbl == term->name()) return false;
      return alg.sync(Label::action(lbl), a).is_bot();
    });
    Interpretation out;
    out.depth_bound = depth_bound;
    out.stabilized = body.stabilized;
    out.truncated = body.truncated;
    out.pcset = std::move(kept.pcset);
    out.pcset.set_initial(kept.cube_map[*body.pcset.initial()]);
    for (const auto& [v, deco] : body.pcset.decorations())
      out.pcset.set_decoration(kept.cube_map[v], ProcTerm::restrict(term->name(), deco));
    for (const auto& [v, d] : body.vertex_depth) out.vertex_depth[kept.cube_map[v]] = d;
    return out;
  }

  Interpretation run_rec(const ProcPtr& term) {
    const std::string& x = term->name();
    const ProcPtr& body = term->left();

    std::vector<ProcPtr> stages;  // stage j unfolding around this rec's marker
    stages.push_back(ProcTerm::var("@" + std::to_string(marker_counter++)));
    Interpretation prev = run(stages[0]);
    bool stabilized = false;
    for (int j = 1; j <= depth_bound; ++j) {
      stages.push_back(substitute(body, x, stages.back()));
      Interpretation cur = run(stages.back());
      bool same = false;
      try {
        same = iso_check(cur.pcset, prev.pcset).has_value();
      } catch (const ResourceError&) {
        same = false;  // too big to compare: keep unfolding
      }
      prev = std::move(cur);
      if (same) {
        stabilized = true;
        break;
      }
    }
    prev.stabilized = stabilized;
    if (!stabilized) prev.truncated = true;
    prev.depth_bound = depth_bound;

    // Fold decorations: any subterm equal to a stage unfolding (largest
    // first; the marker itself is stage 0) reads as the rec term again.
    std::set<std::string> stage_texts;
    for (const auto& s : stages) stage_texts.insert(format(s));
    std::map<const ProcTerm*, ProcPtr> memo;
    std::function<ProcPtr(const ProcPtr&)> fold = [&](const ProcPtr& t) -> ProcPtr {
      auto it = memo.find(t.get());
      if (it != memo.end()) return it->second;
      ProcPtr result;
      if (stage_texts.count(format(t))) {
        result = term;
      } else {
        switch (t->kind()) {
          case ProcKind::Nil:
          case ProcKind::Var: result = t; break;
          case ProcKind::Prefix: result = ProcTerm::prefix(t->name(), fold(t->left())); break;
          case ProcKind::Sum: result = ProcTerm::sum(fold(t->left()), fold(t->right())); break;
          case ProcKind::Par: result = ProcTerm::par(fold(t->left()), fold(t->right())); break;
          case ProcKind::Restrict:
            result = ProcTerm::restrict(t->name(), fold(t->left()));
            break;
          case ProcKind::Rec: result = ProcTerm::rec(t->name(), fold(t->left())); break;
        }
      }
      memo.emplace(t.get(), result);
      return result;
    };
    std::vector<std::pair<CubeId, ProcPtr>> folded;
    for (const auto& [v, deco] : prev.pcset.decorations()) folded.emplace_back(v, fold(deco));
    for (auto& [v, deco] : folded) prev.pcset.set_decoration(v, deco);
    return prev;
  }
};

}  // namespace

Interpretation interp(const SyncAlgebra& alg, const ProcPtr& term, int depth_bound,
                      std::size_t cube_guard) {
  if (!closed_up_to_marker(term)) throw UserError("cannot interpret an open term");
  if (!is_guarded(term)) throw UserError("cannot interpret an unguarded term");
  if (depth_bound < 0) throw UserError("depth bound must be nonnegative");
  InterpBuilder b{alg, depth_bound, resource_guard(cube_guard)};
  return b.run(term);
}

std::string ParadigmReport::to_string() const {
  std::ostringstream out;
  if (ok) {
    out << "paradigm: ok\n";
  } else {
    out << "paradigm: " << violations.size() << " doubled shell(s)\n";
    for (const auto& v : violations) {
      out << "  dim " << v.dim << " labels (";
      for (std::size_t i = 0; i < v.labels.size(); ++i)
        out << (i ? "," : "") << v.labels[i];
      out << ") filled by cubes";
      for (CubeId c : v.fillers) out << " " << c;
      out << "\n";
    }
  }
  return out.str();
}

ParadigmReport verify_paradigm(const LabelledPCSet& k, const SyncAlgebra&) {
  ParadigmReport rep;
  for (int d = 2; d <= k.max_dim(); ++d) {
    std::map<std::string, std::vector<CubeId>> by_shell;
    for (CubeId id : k.cubes_of_dim(d)) {
      const Cube& c = k.cube(id);
      std::string key;
      for (const auto& l : c.labels) key += l + ",";
      key += "|";
      for (const auto& f : c.faces)
        key += std::to_string(f[0]) + "," + std::to_string(f[1]) + ";";
      by_shell[key].push_back(id);
    }
    for (auto& [key, ids] : by_shell)
      if (ids.size() > 1)
        rep.violations.push_back({d, ids, k.cube(ids.front()).labels});
  }
  rep.ok = rep.violations.empty();
  return rep;
}

std::string Restrict1Report::to_string() const {
  std::ostringstream out;
  out << "restrict1: " << (ok ? "ok" : "FAILED") << " (pcset " << pcset_states << " states / "
      << pcset_edges << " edges, lts " << lts_states << " states / " << lts_edges << " edges)\n";
  for (const auto& m : mismatches) out << "  " << m << "\n";
  return out.str();
}

Restrict1Report verify_restrict1(const SyncAlgebra& alg, const ProcPtr& term,
                                 const Interpretation& it) {
  Restrict1Report rep;
  const int d = it.depth_bound;
  const LabelledPCSet& k = it.pcset;

  // Vertices reachable from the initial state through edges staying within
  // the depth bound, mirroring the LTS exploration.
  std::vector<std::vector<std::pair<CubeId, CubeId>>> out_edges(k.size());
  for (CubeId e : k.cubes_of_dim(1))
    out_edges[k.edge_source(e)].emplace_back(e, k.edge_target(e));
  std::set<CubeId> reachable;
  std::deque<CubeId> frontier{*k.initial()};
  reachable.insert(*k.initial());
  while (!frontier.empty()) {
    const CubeId v = frontier.front();
    frontier.pop_front();
    for (const auto& [e, w] : out_edges[v]) {
      if (it.vertex_depth.at(w) > d) continue;
      if (reachable.insert(w).second) frontier.push_back(w);
    }
  }

  auto key_of = [&](CubeId v) {
    return std::pair<std::string, int>{format(*k.decoration(v)), it.vertex_depth.at(v)};
  };

  // Quotient of the reachable 1-skeleton by (decoration, depth).
  std::set<std::pair<std::string, int>> pcset_states;
  std::set<std::tuple<std::string, int, std::string, std::string, int>> pcset_edges;
  for (CubeId v : reachable) {
    pcset_states.insert(key_of(v));
    for (const auto& [e, w] : out_edges[v]) {
      if (it.vertex_depth.at(w) > d) continue;
      const auto [st, sd] = key_of(v);
      const auto [tt, td] = key_of(w);
      pcset_edges.insert({st, sd, k.cube(e).labels[0], tt, td});
    }
  }

  DecoratedLTS lts = build_lts(alg, term, d);
  std::set<std::pair<std::string, int>> lts_states;
  for (const auto& s : lts.states) lts_states.insert({s.text, s.depth});
  std::set<std::tuple<std::string, int, std::string, std::string, int>> lts_edges;
  for (const auto& t : lts.transitions)
    lts_edges.insert({lts.states[t.src].text, lts.states[t.src].depth, t.action,
                      lts.states[t.dst].text, lts.states[t.dst].depth});

  rep.pcset_states = pcset_states.size();
  rep.pcset_edges = pcset_edges.size();
  rep.lts_states = lts_states.size();
  rep.lts_edges = lts_edges.size();

  for (const auto& s : pcset_states)
    if (!lts_states.count(s))
      rep.mismatches.push_back("state (" + s.first + ", " + std::to_string(s.second) +
                               ") has no LTS counterpart");
  for (const auto& s : lts_states)
    if (!pcset_states.count(s))
      rep.mismatches.push_back("LTS state (" + s.first + ", " + std::to_string(s.second) +
                               ") missing from the interpretation");
  for (const auto& e : pcset_edges)
    if (!lts_edges.count(e))
      rep.mismatches.push_back("edge " + std::get<2>(e) + " from (" + std::get<0>(e) +
                               ") has no LTS counterpart");
  for (const auto& e : lts_edges)
    if (!pcset_edges.count(e))
      rep.mismatches.push_back("LTS transition " + std::get<2>(e) + " from (" + std::get<0>(e) +
                               ") missing from the interpretation");

  // Local soundness: below the bound, every reachable vertex steps exactly
  // as the operational rules prescribe.
  for (CubeId v : reachable) {
    if (it.vertex_depth.at(v) >= d) continue;
    std::multiset<std::pair<std::string, std::string>> have, want;
    for (const auto& [e, w] : out_edges[v])
      have.insert({k.cube(e).labels[0], format(*k.decoration(w))});
    for (const auto& t : step(alg, *k.decoration(v))) want.insert({t.action, format(t.target)});
    if (have != want)
      rep.mismatches.push_back("vertex decorated " + format(*k.decoration(v)) + " at depth " +
                               std::to_string(it.vertex_depth.at(v)) +
                               " does not step like the SOS");
  }

  rep.ok = rep.mismatches.empty();
  return rep;
}

}  // namespace hda
