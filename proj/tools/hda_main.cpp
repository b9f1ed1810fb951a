#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hda/errors.hpp"
#include "hda/flows.hpp"
#include "hda/homology.hpp"
#include "hda/io.hpp"
#include "hda/semantics.hpp"
#include "hda/sos.hpp"
#include "hda/tensor.hpp"

namespace {

using namespace hda;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UserError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw UserError("cannot write '" + path + "'");
  out << content;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct AlgebraChoice {
  std::string source = "trivial";  // builtin name or JSON path
  std::string alphabet_csv;
  std::size_t max_alphabet = SyncAlgebra::kMaxAlphabet;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--algebra", source,
                    "synchronization algebra: trivial|ccs|tcsp or a JSON table file");
    cmd->add_option("--alphabet", alphabet_csv, "comma-separated action names for builtins");
    cmd->add_option("--max-alphabet", max_alphabet, "cap on the alphabet size");
  }

  SyncAlgebra resolve() const {
    SyncAlgebra alg = [&] {
      if (source == "trivial" || source == "ccs" || source == "tcsp") {
        std::vector<std::string> alphabet = split_csv(alphabet_csv);
        if (alphabet.empty()) {
          if (source == "trivial") alphabet = {"a", "b", "c"};
          if (source == "ccs") alphabet = {"a", "coa", "b", "cob", "tau"};
          if (source == "tcsp") alphabet = {"a", "b", "tau"};
        }
        if (source == "trivial") return SyncAlgebra::trivial(alphabet);
        if (source == "ccs") return SyncAlgebra::ccs(alphabet);
        return SyncAlgebra::tcsp(alphabet);
      }
      return algebra_from_json(read_file(source));
    }();
    if (alg.alphabet().size() > max_alphabet)
      throw UserError("alphabet exceeds --max-alphabet (" + std::to_string(max_alphabet) + ")");
    return alg;
  }
};

std::string term_from_args(const std::string& positional, const std::string& file) {
  if (!file.empty()) return read_file(file);
  if (positional.empty()) throw UserError("no process term given");
  return positional;
}

std::string command_line_of(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += " ";
    s += argv[i];
  }
  return s;
}

int run(int argc, char** argv) {
  CLI::App app{"labelled precubical set semantics of process algebra"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_errors = false;
  app.add_flag("--json-errors", json_errors, "machine-readable errors on stderr");
  const std::string cmdline = command_line_of(argc, argv);

  // lts
  auto* lts_cmd = app.add_subcommand("lts", "operational transition system of a term");
  AlgebraChoice lts_alg;
  std::string lts_term, lts_file, lts_format = "json", lts_out;
  int lts_depth = kDefaultDepthBound;
  lts_cmd->add_option("term", lts_term, "process term");
  lts_cmd->add_option("--file", lts_file, "read the term from a file");
  lts_alg.add_options(lts_cmd);
  lts_cmd->add_option("--depth", lts_depth, "unfolding depth bound");
  lts_cmd->add_option("--format", lts_format, "json|dot")->check(CLI::IsMember({"json", "dot"}));
  lts_cmd->add_option("--out", lts_out, "output path (default stdout)");

  // hda
  auto* hda_cmd = app.add_subcommand("hda", "denotational precubical-set semantics of a term");
  AlgebraChoice hda_alg;
  std::string hda_term, hda_file, hda_out, hda_dot;
  int hda_depth = kDefaultDepthBound;
  bool hda_census = false;
  hda_cmd->add_option("term", hda_term, "process term");
  hda_cmd->add_option("--file", hda_file, "read the term from a file");
  hda_alg.add_options(hda_cmd);
  hda_cmd->add_option("--depth", hda_depth, "recursion unfolding bound");
  hda_cmd->add_option("--out", hda_out, "pcset JSON output path");
  hda_cmd->add_option("--dot", hda_dot, "1-skeleton DOT output path");
  hda_cmd->add_flag("--census", hda_census, "print cube counts per dimension");

  // tensor
  auto* tensor_cmd = app.add_subcommand("tensor", "synchronized tensor product of pcset files");
  AlgebraChoice tensor_alg;
  std::string tensor_left, tensor_right, tensor_out;
  bool tensor_census = false, tensor_undirected = false;
  tensor_cmd->add_option("--left", tensor_left, "left pcset JSON")->required();
  tensor_cmd->add_option("--right", tensor_right, "right pcset JSON");
  tensor_alg.add_options(tensor_cmd);
  tensor_cmd->add_option("--out", tensor_out, "output path (default stdout)");
  tensor_cmd->add_flag("--census", tensor_census, "print cube counts per dimension");
  tensor_cmd->add_flag("--undirected", tensor_undirected,
                       "compare directed against undirected shell counts of --left");

  // cube
  auto* cube_cmd = app.add_subcommand("cube", "standard labelled cube as pcset JSON");
  AlgebraChoice cube_alg;
  std::string cube_labels, cube_out;
  int cube_skeleton = -1;
  bool cube_boundary = false;
  cube_cmd->add_option("--labels", cube_labels, "comma-separated action labels")->required();
  cube_alg.add_options(cube_cmd);
  cube_cmd->add_option("--skeleton", cube_skeleton, "truncate to this dimension");
  cube_cmd->add_flag("--boundary", cube_boundary, "drop the top cube");
  cube_cmd->add_option("--out", cube_out, "output path (default stdout)");

  // paths
  auto* paths_cmd = app.add_subcommand("paths", "path-category classes of a pcset");
  AlgebraChoice paths_alg;
  std::string paths_file;
  long long paths_from = -1, paths_to = -1;
  paths_cmd->add_option("pcset", paths_file, "pcset JSON")->required();
  paths_alg.add_options(paths_cmd);
  paths_cmd->add_option("--from", paths_from, "source vertex id")->required();
  paths_cmd->add_option("--to", paths_to, "target vertex id")->required();

  // homology
  auto* hom_cmd = app.add_subcommand("homology", "reduced integer homology of order complexes");
  int hom_cube = 0;
  std::string hom_complex;
  hom_cmd->add_option("--boundary-cube", hom_cube,
                      "order complex of the open interval poset of the n-cube");
  hom_cmd->add_option("--complex", hom_complex, "explicit simplex list JSON");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "structural property checks on a term");
  AlgebraChoice verify_alg;
  std::string verify_term, verify_file, verify_checks = "paradigm,restrict1";
  int verify_depth = kDefaultDepthBound;
  verify_cmd->add_option("term", verify_term, "process term");
  verify_cmd->add_option("--file", verify_file, "read the term from a file");
  verify_alg.add_options(verify_cmd);
  verify_cmd->add_option("--depth", verify_depth, "recursion unfolding bound");
  verify_cmd->add_option("--checks", verify_checks, "paradigm,restrict1,unit,comm,assoc");

  // check-algebra
  auto* check_cmd = app.add_subcommand("check-algebra", "validate a synchronization algebra");
  AlgebraChoice check_alg;
  check_alg.add_options(check_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits 0, usage errors exit 2
  }

  if (lts_cmd->parsed()) {
    const SyncAlgebra alg = lts_alg.resolve();
    const ProcPtr term = parse(term_from_args(lts_term, lts_file), alg);
    const DecoratedLTS lts = build_lts(alg, term, lts_depth);
    const std::string text = lts_format == "dot" ? lts_to_dot(lts, cmdline) : lts_to_json(lts);
    if (lts_out.empty())
      std::cout << text;
    else
      write_file(lts_out, text);
    return 0;
  }

  if (hda_cmd->parsed()) {
    const SyncAlgebra alg = hda_alg.resolve();
    const ProcPtr term = parse(term_from_args(hda_term, hda_file), alg);
    const Interpretation it = interp(alg, term, hda_depth);
    if (hda_census) std::cout << "census " << census_line(it.pcset) << "\n";
    if (!hda_out.empty()) write_file(hda_out, pcset_to_json(it.pcset));
    if (!hda_dot.empty()) write_file(hda_dot, pcset_to_dot(it.pcset, cmdline));
    if (!hda_census && hda_out.empty() && hda_dot.empty()) std::cout << pcset_to_json(it.pcset);
    return 0;
  }

  if (tensor_cmd->parsed()) {
    const SyncAlgebra alg = tensor_alg.resolve();
    LabelledPCSet left = pcset_from_json(read_file(tensor_left), &alg);
    {
      const PCSetReport rep = validate(left, alg);
      if (!rep.ok) throw UserError("--left is not a valid pcset:\n" + rep.to_string());
    }
    if (tensor_undirected) {
      if (left.max_dim() > 1) throw UserError("--undirected expects a 1-dimensional --left");
      const std::size_t nv = left.dim_count(0);
      int m = 0;
      while ((std::size_t{1} << m) < nv) ++m;
      if ((std::size_t{1} << m) != nv)
        throw UserError("--undirected expects a vertex set of size 2^m");
      const auto coords = identity_coords(left);
      const auto directed = enumerate_shells(alg, left, coords, m, 1).size();
      const auto undirected = undirected_square_shell_count(alg, left);
      std::cout << "directed 2-cubes: " << directed << "\n"
                << "undirected shells: " << undirected << "\n";
      return 0;
    }
    if (tensor_right.empty()) throw UserError("tensor needs --right (or --undirected)");
    LabelledPCSet right = pcset_from_json(read_file(tensor_right), &alg);
    {
      const PCSetReport rep = validate(right, alg);
      if (!rep.ok) throw UserError("--right is not a valid pcset:\n" + rep.to_string());
    }
    const TensorResult t = tensor(alg, left, right);
    if (tensor_census) std::cout << "census " << census_line(t.pcset) << "\n";
    const std::string text = pcset_to_json(t.pcset);
    if (!tensor_out.empty())
      write_file(tensor_out, text);
    else if (!tensor_census)
      std::cout << text;
    return 0;
  }

  if (cube_cmd->parsed()) {
    const SyncAlgebra alg = cube_alg.resolve();
    LabelledPCSet k = standard_cube(split_csv(cube_labels), alg);
    if (cube_boundary) k = boundary(k);
    if (cube_skeleton >= 0) k = skeleton(k, cube_skeleton).pcset;
    const std::string text = pcset_to_json(k);
    if (cube_out.empty())
      std::cout << text;
    else
      write_file(cube_out, text);
    return 0;
  }

  if (paths_cmd->parsed()) {
    const SyncAlgebra alg = paths_alg.resolve();
    std::map<long long, CubeId> file_ids;
    LabelledPCSet k = pcset_from_json(read_file(paths_file), &alg, &file_ids);
    const PCSetReport rep = validate(k, alg);
    if (!rep.ok) throw UserError("input is not a valid pcset:\n" + rep.to_string());
    auto vertex_of = [&](long long file_id, const char* flag) {
      auto it = file_ids.find(file_id);
      if (it == file_ids.end() || k.cube(it->second).dim != 0)
        throw UserError(std::string(flag) + " must name a vertex id of the input file");
      return it->second;
    };
    const PathCategory pc = bad_realization(k);
    const auto reps = pc.class_representatives(vertex_of(paths_from, "--from"),
                                               vertex_of(paths_to, "--to"));
    std::vector<long long> file_id_of(k.size(), -1);
    for (const auto& [fid, cid] : file_ids) file_id_of[cid] = fid;
    std::cout << "classes: " << reps.size() << "\n";
    for (std::size_t r : reps) {
      const auto word = path_label(k, pc.path(r));
      const auto nf = trace_normal_form(alg, word);
      std::cout << "  path";
      for (CubeId e : pc.path(r)) std::cout << " " << file_id_of[e];
      std::cout << "  label";
      for (const auto& w : word) std::cout << " " << w;
      std::cout << "  normal-form";
      for (const auto& w : nf) std::cout << " " << w;
      std::cout << "\n";
    }
    return 0;
  }

  if (hom_cmd->parsed()) {
    SimplicialComplex complex;
    if (!hom_complex.empty()) {
      nlohmann::json j = nlohmann::json::parse(read_file(hom_complex));
      std::vector<std::vector<int>> top;
      for (const auto& s : j.at("simplices")) top.push_back(s.get<std::vector<int>>());
      complex = complex_from_simplices(top);
    } else if (hom_cube >= 2) {
      complex = order_complex(open_interval_poset(hom_cube));
    } else {
      throw UserError("homology needs --boundary-cube n (n >= 2) or --complex file");
    }
    const auto groups = reduced_homology(complex);
    for (std::size_t d = 0; d < groups.size(); ++d)
      std::cout << "H~" << d << " = " << groups[d].to_string() << "\n";
    return 0;
  }

  if (verify_cmd->parsed()) {
    const SyncAlgebra alg = verify_alg.resolve();
    const ProcPtr term = parse(term_from_args(verify_term, verify_file), alg);
    const Interpretation it = interp(alg, term, verify_depth);
    bool all_ok = true;
    for (const std::string& check : split_csv(verify_checks)) {
      bool ok = true;
      std::string detail;
      if (check == "paradigm") {
        const auto rep = verify_paradigm(it.pcset, alg);
        ok = rep.ok;
        if (!ok) detail = rep.to_string();
      } else if (check == "restrict1") {
        const auto rep = verify_restrict1(alg, term, it);
        ok = rep.ok;
        if (!ok) detail = rep.to_string();
      } else if (check == "unit") {
        const Interpretation unit = interp(alg, ProcTerm::par(term, ProcTerm::nil()), verify_depth);
        std::vector<std::uint32_t> identity(it.pcset.dim_count(0));
        for (std::uint32_t v = 0; v < identity.size(); ++v) identity[v] = v;
        ok = extend_vertex_bijection(unit.pcset, it.pcset, identity).has_value();
      } else if (check == "comm") {
        if (term->kind() != ProcKind::Par) {
          std::cout << "[skip] comm: term is not a parallel composition\n";
          continue;
        }
        const Interpretation sw =
            interp(alg, ProcTerm::par(term->right(), term->left()), verify_depth);
        // the swap transposes left and right coordinates of every cube
        const std::size_t np = interp(alg, term->left(), verify_depth).pcset.dim_count(0);
        const std::size_t nq = interp(alg, term->right(), verify_depth).pcset.dim_count(0);
        std::vector<std::uint32_t> swap(np * nq);
        for (std::uint32_t u = 0; u < np; ++u)
          for (std::uint32_t v = 0; v < nq; ++v) swap[u * nq + v] = v * np + u;
        ok = symmetric_equal(it.pcset, sw.pcset, swap);
      } else if (check == "assoc") {
        if (term->kind() != ProcKind::Par || term->left()->kind() != ProcKind::Par) {
          std::cout << "[skip] assoc: term is not of the shape (P || Q) || R\n";
          continue;
        }
        const ProcPtr re = ProcTerm::par(
            term->left()->left(), ProcTerm::par(term->left()->right(), term->right()));
        const Interpretation ra = interp(alg, re, verify_depth);
        std::vector<std::uint32_t> identity(it.pcset.dim_count(0));
        for (std::uint32_t v = 0; v < identity.size(); ++v) identity[v] = v;
        ok = extend_vertex_bijection(it.pcset, ra.pcset, identity).has_value();
      } else {
        throw UserError("unknown check '" + check + "'");
      }
      std::cout << (ok ? "[pass] " : "[FAIL] ") << check << "\n";
      if (!ok && !detail.empty()) std::cout << detail;
      all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
  }

  if (check_cmd->parsed()) {
    const SyncAlgebra alg = check_alg.resolve();
    const ValidationReport rep = alg.validate();
    std::cout << rep.to_string();
    return rep.ok ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  bool json_errors = false;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--json-errors") json_errors = true;
  auto report = [&](const char* kind, const std::string& what) {
    if (json_errors) {
      nlohmann::json j{{"error", kind}, {"message", what}};
      std::cerr << j.dump() << "\n";
    } else {
      std::cerr << "error (" << kind << "): " << what << "\n";
    }
  };
  try {
    return run(argc, argv);
  } catch (const hda::UserError& e) {
    report("input", e.what());
    return 2;
  } catch (const hda::ResourceError& e) {
    report("resource", e.what());
    return 2;
  } catch (const std::exception& e) {
    report("internal", e.what());
    return 2;
  }
}
