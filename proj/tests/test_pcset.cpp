#include <doctest.h>

#include <map>
#include <random>

#include "generators.hpp"
#include "hda/errors.hpp"
#include "hda/io.hpp"
#include "hda/pcset.hpp"

using namespace hda;

namespace {
const SyncAlgebra& triv() {
  static SyncAlgebra a = SyncAlgebra::trivial({"a", "b", "c"});
  return a;
}

std::vector<std::string> labels(std::initializer_list<const char*> ls) {
  std::vector<std::string> out;
  for (const char* l : ls) out.emplace_back(l);
  return out;
}
}  // namespace

TEST_CASE("standard cubes have one cube per face word") {
  auto point = standard_cube(labels({}), triv());
  CHECK(point.census() == std::vector<std::size_t>{1});

  auto square = standard_cube(labels({"a", "b"}), triv());
  CHECK(square.census() == std::vector<std::size_t>{4, 4, 1});
  CHECK(validate(square, triv()).ok);
  CHECK(square.cube(*square.cubes_of_dim(2).begin()).labels == labels({"a", "b"}));

  auto cube3 = standard_cube(labels({"a", "b", "c"}), triv());
  CHECK(cube3.census() == std::vector<std::size_t>{8, 12, 6, 1});
  CHECK(validate(cube3, triv()).ok);

  auto tcsp = SyncAlgebra::tcsp({"a", "tau"});
  CHECK_THROWS_AS(standard_cube(labels({"a"}), tcsp), UserError);
}

TEST_CASE("boundary and skeleton") {
  CHECK(boundary(standard_cube(labels({}), triv())).size() == 0);
  auto b2 = boundary(standard_cube(labels({"a", "b"}), triv()));
  CHECK(b2.census() == std::vector<std::size_t>{4, 4});
  auto b3 = boundary(standard_cube(labels({"a", "b", "c"}), triv()));
  CHECK(b3.size() == 26);

  auto full = standard_cube(labels({"a", "b"}), triv());
  auto skel = skeleton(full, 1).pcset;
  CHECK(iso_check(skel, b2).has_value());
  CHECK(skeleton(full, 5).pcset.census() == full.census());
  CHECK(iso_check(skeleton(skel, 1).pcset, skel).has_value());  // idempotent
  auto s31 = skeleton(standard_cube(labels({"a", "b", "c"}), triv()), 1).pcset;
  CHECK(s31.census() == std::vector<std::size_t>{8, 12});
}

TEST_CASE("vertex maps are coherent along any face path") {
  auto cube3 = standard_cube(labels({"a", "b", "c"}), triv());
  for (int d = 1; d <= 3; ++d)
    for (CubeId id : cube3.cubes_of_dim(d)) {
      const Cube& c = cube3.cube(id);
      for (int i = 0; i < d; ++i)
        for (int a = 0; a < 2; ++a)
          for (std::uint32_t eps = 0; eps < (1u << (d - 1)); ++eps) {
            // corner of the face = corner of the cube at the inserted bit
            std::uint32_t full = (eps & ((1u << i) - 1)) |
                                 (static_cast<std::uint32_t>(a) << i) | ((eps >> i) << (i + 1));
            CHECK(cube3.corner(c.faces[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)],
                               eps) == cube3.corner(id, full));
          }
    }
}

TEST_CASE("insertion rejects incoherent cubes") {
  LabelledPCSet k;
  auto v0 = k.add_vertex(), v1 = k.add_vertex(), v2 = k.add_vertex(), v3 = k.add_vertex();
  auto e_a0 = k.add_cube({{v0, v1}}, {"a"});
  auto e_a1 = k.add_cube({{v2, v3}}, {"a"});
  auto e_b0 = k.add_cube({{v0, v2}}, {"b"});
  auto e_b1 = k.add_cube({{v1, v3}}, {"b"});
  // direction 1 carries label b, faces in direction 1 are the a-edges
  CHECK_NOTHROW(k.add_cube({{e_a0, e_a1}, {e_b0, e_b1}}, {"b", "a"}));
  CHECK_THROWS_AS(k.add_cube({{e_a0, e_a1}, {e_b0, e_b1}}, {"a", "b"}), std::logic_error);
  CHECK_THROWS_AS(k.add_cube({{e_a1, e_a0}, {e_b0, e_b1}}, {"b", "a"}), std::logic_error);
}

TEST_CASE("validate reports label and relation violations on raw data") {
  // two opposite a-edges given different labels
  LabelledPCSet k;
  auto v0 = k.add_vertex(), v1 = k.add_vertex(), v2 = k.add_vertex(), v3 = k.add_vertex();
  auto e1 = k.add_cube_raw({{v0, v1}}, {"a"});
  auto e2 = k.add_cube_raw({{v2, v3}}, {"c"});
  auto e3 = k.add_cube_raw({{v0, v2}}, {"b"});
  auto e4 = k.add_cube_raw({{v1, v3}}, {"b"});
  k.add_cube_raw({{e1, e2}, {e3, e4}}, {"b", "a"});
  auto rep = validate(k, triv());
  CHECK_FALSE(rep.ok);
  bool label_violation = false;
  for (const auto& v : rep.violations)
    if (v.kind == "label-coherence") label_violation = true;
  CHECK(label_violation);

  // corner mismatch between the two lower faces
  LabelledPCSet m;
  std::vector<CubeId> vs;
  for (int i = 0; i < 6; ++i) vs.push_back(m.add_vertex());
  auto f1 = m.add_cube_raw({{vs[0], vs[1]}}, {"a"});
  auto f2 = m.add_cube_raw({{vs[2], vs[3]}}, {"a"});
  auto f3 = m.add_cube_raw({{vs[4], vs[2]}}, {"b"});  // does not share corners with f1
  auto f4 = m.add_cube_raw({{vs[1], vs[3]}}, {"b"});
  m.add_cube_raw({{f1, f2}, {f3, f4}}, {"b", "a"});
  auto rep2 = validate(m, triv());
  CHECK_FALSE(rep2.ok);
  bool relation_violation = false;
  for (const auto& v : rep2.violations)
    if (v.kind == "cubical-relation") relation_violation = true;
  CHECK(relation_violation);
}

TEST_CASE("asynchrony is required from dimension 2 up, exempt at dimension 1") {
  auto tcsp = SyncAlgebra::tcsp({"a", "b", "tau"});
  LabelledPCSet k;
  auto v0 = k.add_vertex(), v1 = k.add_vertex();
  k.add_cube({{v0, v1}}, {"a"});  // a synchronization-product edge
  CHECK(validate(k, tcsp).ok);
}

TEST_CASE("merge_vertices quotients and refuses cycles") {
  // two edges, merge the sources: a fork
  LabelledPCSet k;
  auto a0 = k.add_vertex(), a1 = k.add_vertex(), b0 = k.add_vertex(), b1 = k.add_vertex();
  k.add_cube({{a0, a1}}, {"a"});
  k.add_cube({{b0, b1}}, {"b"});
  auto fork = merge_vertices(k, std::vector<std::pair<CubeId, CubeId>>{{a0, b0}});
  CHECK(fork.pcset.dim_count(0) == 3);
  CHECK(fork.pcset.dim_count(1) == 2);

  // chain: target of a glued to source of b
  auto chain = merge_vertices(k, std::vector<std::pair<CubeId, CubeId>>{{a1, b0}});
  CHECK(chain.pcset.dim_count(0) == 3);
  CHECK(chain.pcset.dim_count(1) == 2);

  // loop
  CHECK_THROWS_AS(merge_vertices(k, std::vector<std::pair<CubeId, CubeId>>{{a0, a1}}), UserError);

  // structurally equal edges collapse after merging
  LabelledPCSet p;
  auto u0 = p.add_vertex(), u1 = p.add_vertex(), u2 = p.add_vertex();
  p.add_cube({{u0, u1}}, {"a"});
  p.add_cube({{u0, u2}}, {"a"});
  auto merged = merge_vertices(p, std::vector<std::pair<CubeId, CubeId>>{{u1, u2}});
  CHECK(merged.pcset.dim_count(1) == 1);
}

TEST_CASE("iso_check distinguishes labels, counts and initial states") {
  auto sq_ab = standard_cube(labels({"a", "b"}), triv());
  auto sq_ab2 = standard_cube(labels({"a", "b"}), triv());
  CHECK(iso_check(sq_ab, sq_ab2).has_value());

  auto sq_ac = standard_cube(labels({"a", "c"}), triv());
  CHECK_FALSE(iso_check(sq_ab, sq_ac).has_value());

  CHECK_FALSE(iso_check(sq_ab, boundary(sq_ab)).has_value());

  // initial placement matters
  LabelledPCSet e1, e2;
  auto x0 = e1.add_vertex(), x1 = e1.add_vertex();
  e1.add_cube({{x0, x1}}, {"a"});
  e1.set_initial(x0);
  auto y0 = e2.add_vertex(), y1 = e2.add_vertex();
  e2.add_cube({{y1, y0}}, {"a"});
  e2.set_initial(y0);
  CHECK_FALSE(iso_check(e1, e2).has_value());
}

TEST_CASE("pcset JSON round-trip preserves structure") {
  std::mt19937 rng(99);
  for (int i = 0; i < 10; ++i) {
    auto k = testgen::random_operand(rng, triv());
    auto back = pcset_from_json(pcset_to_json(k), &triv());
    CHECK(iso_check(k, back).has_value());
  }
}

TEST_CASE("malformed pcset files are rejected, not crashed on") {
  CHECK_THROWS_AS(pcset_from_json("not json", &triv()), UserError);
  CHECK_THROWS_AS(pcset_from_json(R"({"cubes": 3})", &triv()), UserError);
  // dangling face reference
  CHECK_THROWS_AS(
      pcset_from_json(
          R"({"cubes":[{"id":0,"dim":0},{"id":1,"dim":1,"labels":["a"],"faces":[[0,9]]}]})",
          &triv()),
      UserError);
  // arity mismatch
  CHECK_THROWS_AS(
      pcset_from_json(
          R"({"cubes":[{"id":0,"dim":0},{"id":1,"dim":2,"labels":["a"],"faces":[[0,0]]}]})",
          &triv()),
      UserError);
  // duplicate ids
  CHECK_THROWS_AS(pcset_from_json(R"({"cubes":[{"id":0,"dim":0},{"id":0,"dim":0}]})", &triv()),
                  UserError);
  // sparse ids are fine and reported through the file-id map
  std::map<long long, CubeId> ids;
  auto k = pcset_from_json(
      R"({"cubes":[{"id":10,"dim":0},{"id":20,"dim":0},{"id":30,"dim":1,"labels":["a"],"faces":[[10,20]]}],"initial":10})",
      &triv(), &ids);
  CHECK(k.dim_count(1) == 1);
  CHECK(ids.at(30) == k.cubes_of_dim(1)[0]);
  CHECK(*k.initial() == ids.at(10));
}
