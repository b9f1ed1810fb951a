#include "hda/sos.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "hda/errors.hpp"

namespace hda {

namespace {

void step_into(const SyncAlgebra& alg, const ProcPtr& term, std::vector<Transition>& out) {
  switch (term->kind()) {
    case ProcKind::Nil:
      break;
    case ProcKind::Var:
      // The internal truncation marker behaves like nil; genuine free
      // variables are rejected by the caller.
      break;
    case ProcKind::Prefix:
      out.push_back({term->name(), term->left(), 1});
      break;
    case ProcKind::Sum: {
      step_into(alg, term->left(), out);
      step_into(alg, term->right(), out);
      break;
    }
    case ProcKind::Restrict: {
      std::vector<Transition> body;
      step_into(alg, term->left(), body);
      const Label a = Label::action(term->name());
      for (auto& t : body) {
        if (t.action == term->name()) continue;
        if (!alg.sync(Label::action(t.action), a).is_bot()) continue;
        out.push_back({t.action, ProcTerm::restrict(term->name(), t.target), t.weight});
      }
      break;
    }
    case ProcKind::Par: {
      std::vector<Transition> ls, rs;
      step_into(alg, term->left(), ls);
      step_into(alg, term->right(), rs);
      for (const auto& t : ls)
        if (alg.asynchronous(t.action))
          out.push_back({t.action, ProcTerm::par(t.target, term->right()), t.weight});
      for (const auto& t : rs)
        if (alg.asynchronous(t.action))
          out.push_back({t.action, ProcTerm::par(term->left(), t.target), t.weight});
      for (const auto& l : ls)
        for (const auto& r : rs) {
          const Label s = alg.sync(Label::action(l.action), Label::action(r.action));
          if (s.is_bot()) continue;
          out.push_back({s.name(), ProcTerm::par(l.target, r.target), l.weight + r.weight});
        }
      break;
    }
    case ProcKind::Rec: {
      // One-step unfolding P(rec(x)P(x)); guardedness makes this terminate.
      step_into(alg, substitute(term->left(), term->name(), term), out);
      break;
    }
  }
}

}  // namespace

std::vector<Transition> step(const SyncAlgebra& alg, const ProcPtr& term) {
  {
    std::vector<std::string> fv;
    free_vars(term, fv);
    for (const auto& v : fv)
      if (v.empty() || v[0] != '@')
        throw UserError("cannot step open term (free variable '" + v + "')");
    if (!is_guarded(term)) throw UserError("cannot step an unguarded term");
  }
  std::vector<Transition> raw;
  step_into(alg, term, raw);
  // Set semantics with a deterministic order.
  std::map<std::tuple<std::string, std::string, int>, Transition> dedup;
  for (auto& t : raw) dedup.emplace(std::tuple{t.action, format(t.target), t.weight}, t);
  std::vector<Transition> out;
  out.reserve(dedup.size());
  for (auto& [k, t] : dedup) out.push_back(std::move(t));
  return out;
}

DecoratedLTS build_lts(const SyncAlgebra& alg, const ProcPtr& term, int depth_bound,
                       std::size_t state_guard) {
  state_guard = resource_guard(state_guard);
  DecoratedLTS lts;
  std::map<std::pair<std::string, int>, std::uint32_t> key_to_state;

  auto intern = [&](const ProcPtr& t, const std::string& text, int depth) {
    auto it = key_to_state.find({text, depth});
    if (it != key_to_state.end()) return it->second;
    if (lts.states.size() >= state_guard)
      throw ResourceError("lts state guard exceeded (" + std::to_string(state_guard) + ")");
    const auto id = static_cast<std::uint32_t>(lts.states.size());
    lts.states.push_back({t, text, depth});
    key_to_state.emplace(std::pair{text, depth}, id);
    return id;
  };

  lts.initial = intern(term, format(term), 0);
  std::deque<std::uint32_t> frontier{lts.initial};
  std::set<std::tuple<std::uint32_t, std::string, std::uint32_t>> seen_edges;

  while (!frontier.empty()) {
    const auto src = frontier.front();
    frontier.pop_front();
    const int depth = lts.states[src].depth;
    const ProcPtr src_term = lts.states[src].decoration;
    auto ts = step(alg, src_term);
    if (depth >= depth_bound) {
      if (!ts.empty()) lts.truncated = true;
      continue;
    }
    for (const auto& t : ts) {
      const int target_depth = depth + t.weight;
      if (target_depth > depth_bound) {
        lts.truncated = true;
        continue;
      }
      const std::string text = format(t.target);
      const bool fresh = key_to_state.find({text, target_depth}) == key_to_state.end();
      const auto dst = intern(t.target, text, target_depth);
      if (fresh) frontier.push_back(dst);
      if (seen_edges.insert({src, t.action, dst}).second)
        lts.transitions.push_back({src, dst, t.action});
    }
  }
  return lts;
}

}  // namespace hda
