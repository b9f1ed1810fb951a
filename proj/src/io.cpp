#include "hda/io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

#include "hda/errors.hpp"

namespace hda {

using ordered_json = nlohmann::ordered_json;

SyncAlgebra algebra_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw UserError(std::string("bad algebra JSON: ") + e.what());
  }
  if (!j.contains("alphabet") || !j["alphabet"].is_array())
    throw UserError("algebra JSON needs an \"alphabet\" array");
  std::vector<std::string> alphabet;
  for (const auto& a : j["alphabet"]) alphabet.push_back(a.get<std::string>());
  std::vector<TableEntry> entries;
  if (j.contains("entries")) {
    for (const auto& e : j["entries"])
      entries.push_back({e.at("x").get<std::string>(), e.at("y").get<std::string>(),
                         e.at("r").get<std::string>()});
  }
  return SyncAlgebra::from_entries(std::move(alphabet), entries);
}

std::string algebra_to_json(const SyncAlgebra& alg) {
  ordered_json j;
  j["format"] = kFormatTag;
  j["alphabet"] = alg.alphabet();
  ordered_json entries = ordered_json::array();
  std::vector<Label> labels{Label::idle(), Label::bot()};
  for (const auto& a : alg.alphabet()) labels.push_back(Label::action(a));
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t k = i; k < labels.size(); ++k) {
      const Label r = alg.sync(labels[i], labels[k]);
      // Omitted pairs read back as bot, except sync(a, 0) which must stay
      // explicit even when it is bot (asynchrony is meaningful data).
      const bool required_gap = (labels[i].is_idle() && labels[k].is_action()) ||
                                (labels[i].is_action() && labels[k].is_idle());
      if (r.is_bot() && !required_gap) continue;
      entries.push_back({{"x", labels[i].to_string()},
                         {"y", labels[k].to_string()},
                         {"r", r.to_string()}});
    }
  j["entries"] = entries;
  return j.dump(2) + "\n";
}

std::string pcset_to_json(const LabelledPCSet& k) {
  ordered_json j;
  j["format"] = kFormatTag;
  ordered_json cubes = ordered_json::array();
  for (int d = 0; d <= k.max_dim(); ++d)
    for (CubeId id : k.cubes_of_dim(d)) {
      ordered_json c;
      c["id"] = id;
      c["dim"] = d;
      if (d > 0) {
        c["labels"] = k.cube(id).labels;
        ordered_json faces = ordered_json::array();
        for (const auto& f : k.cube(id).faces) faces.push_back({f[0], f[1]});
        c["faces"] = faces;
      }
      cubes.push_back(c);
    }
  j["cubes"] = cubes;
  if (k.initial()) j["initial"] = *k.initial();
  if (!k.decorations().empty()) {
    ordered_json deco = ordered_json::object();
    for (const auto& [v, term] : k.decorations()) deco[std::to_string(v)] = format(term);
    j["decorations"] = deco;
  }
  return j.dump(2) + "\n";
}

LabelledPCSet pcset_from_json(const std::string& text, const SyncAlgebra* alg_for_decorations,
                              std::map<long long, CubeId>* file_ids) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw UserError(std::string("bad pcset JSON: ") + e.what());
  }
  if (!j.contains("cubes") || !j["cubes"].is_array())
    throw UserError("pcset JSON needs a \"cubes\" array");

  struct Raw {
    long long id;
    int dim;
    std::vector<std::string> labels;
    std::vector<std::array<long long, 2>> faces;
  };
  std::vector<Raw> raws;
  for (const auto& c : j["cubes"]) {
    Raw r;
    r.id = c.at("id").get<long long>();
    r.dim = c.at("dim").get<int>();
    if (r.dim > 0) {
      for (const auto& l : c.at("labels")) r.labels.push_back(l.get<std::string>());
      for (const auto& f : c.at("faces"))
        r.faces.push_back({f.at(0).get<long long>(), f.at(1).get<long long>()});
      if (static_cast<int>(r.labels.size()) != r.dim ||
          static_cast<int>(r.faces.size()) != r.dim)
        throw UserError("cube " + std::to_string(r.id) + ": labels/faces arity mismatch");
    }
    raws.push_back(std::move(r));
  }
  std::stable_sort(raws.begin(), raws.end(), [](const Raw& a, const Raw& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.id < b.id;
  });
  LabelledPCSet k;
  std::map<long long, CubeId> id_map;
  for (const auto& r : raws) {
    if (id_map.count(r.id)) throw UserError("duplicate cube id " + std::to_string(r.id));
    if (r.dim == 0) {
      id_map[r.id] = k.add_vertex();
    } else {
      std::vector<std::array<CubeId, 2>> faces;
      for (const auto& f : r.faces) {
        auto i0 = id_map.find(f[0]), i1 = id_map.find(f[1]);
        if (i0 == id_map.end() || i1 == id_map.end())
          throw UserError("cube " + std::to_string(r.id) + " references an unknown face");
        faces.push_back({i0->second, i1->second});
      }
      id_map[r.id] = k.add_cube_raw(std::move(faces), r.labels);
    }
  }
  if (j.contains("initial")) {
    auto it = id_map.find(j["initial"].get<long long>());
    if (it == id_map.end()) throw UserError("initial references an unknown cube");
    k.set_initial(it->second);
  }
  if (j.contains("decorations")) {
    for (const auto& [key, value] : j["decorations"].items()) {
      auto it = id_map.find(std::stoll(key));
      if (it == id_map.end()) throw UserError("decoration on unknown cube " + key);
      if (alg_for_decorations)
        k.set_decoration(it->second, parse(value.get<std::string>(), *alg_for_decorations));
    }
  }
  if (file_ids) *file_ids = id_map;
  return k;
}

std::string lts_to_json(const DecoratedLTS& lts) {
  ordered_json j;
  j["format"] = kFormatTag;
  ordered_json states = ordered_json::array();
  for (std::size_t i = 0; i < lts.states.size(); ++i)
    states.push_back({{"id", i}, {"decoration", lts.states[i].text}, {"depth", lts.states[i].depth}});
  j["states"] = states;
  j["initial"] = lts.initial;
  ordered_json transitions = ordered_json::array();
  for (const auto& t : lts.transitions)
    transitions.push_back({{"src", t.src}, {"label", t.action}, {"dst", t.dst}});
  j["transitions"] = transitions;
  j["truncated"] = lts.truncated;
  return j.dump(2) + "\n";
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string lts_to_dot(const DecoratedLTS& lts, const std::string& command_line) {
  std::ostringstream out;
  out << "// " << command_line << "\n";
  out << "digraph lts {\n  rankdir=TB;\n";
  for (std::size_t i = 0; i < lts.states.size(); ++i)
    out << "  n" << i << " [label=\"" << dot_escape(lts.states[i].text) << "\"];\n";
  for (const auto& t : lts.transitions)
    out << "  n" << t.src << " -> n" << t.dst << " [label=\"" << dot_escape(t.action) << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string pcset_to_dot(const LabelledPCSet& k, const std::string& command_line) {
  std::ostringstream out;
  out << "// " << command_line << "\n";
  out << "digraph pcset {\n  rankdir=TB;\n";
  for (CubeId v : k.cubes_of_dim(0)) {
    out << "  n" << v << " [label=\"";
    if (const ProcPtr* d = k.decoration(v))
      out << dot_escape(format(*d));
    else
      out << v;
    out << "\"";
    if (k.initial() && *k.initial() == v) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (CubeId e : k.cubes_of_dim(1))
    out << "  n" << k.edge_source(e) << " -> n" << k.edge_target(e) << " [label=\""
        << dot_escape(k.cube(e).labels[0]) << "\"];\n";
  for (CubeId c : k.cubes_of_dim(2)) {
    const auto& f = k.cube(c).faces;
    out << "  // 2-cube " << c << " boundary edges " << f[0][0] << " " << f[0][1] << " " << f[1][0]
        << " " << f[1][1] << "\n";
  }
  out << "}\n";
  return out.str();
}

std::string census_line(const LabelledPCSet& k) {
  std::ostringstream out;
  const auto c = k.census();
  for (std::size_t d = 0; d < c.size(); ++d) {
    if (d) out << " ";
    out << "dim" << d << ":" << c[d];
  }
  if (c.empty()) out << "empty";
  return out.str();
}

}  // namespace hda
