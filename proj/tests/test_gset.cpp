#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>

#include "gshv/gen.hpp"
#include "gshv/gset.hpp"

using namespace gshv;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.code();
  }
  FAIL("expected a validation error");
  return Errc::SchemaError;
}

}  // namespace

TEST_CASE("validate_group accepts the trivial group and C2") {
  auto t = validate_group({{0}});
  CHECK(t->order() == 1);
  auto c2 = validate_group({{0, 1}, {1, 0}});
  CHECK(c2->order() == 2);
  CHECK(c2->mul(1, 1) == 0);
  CHECK(c2->inv(1) == 1);
}

TEST_CASE("validate_group rejects broken tables with the right code") {
  CHECK(code_of([] { validate_group({{0, 1}, {1, 1}}); }) ==
        Errc::NotLatinSquare);
  // a Latin square whose identity is not element 0
  CHECK(code_of([] { validate_group({{1, 0}, {0, 1}}); }) == Errc::NoIdentity);
  CHECK(code_of([] { validate_group({{0, 1}, {1, 2}}); }) ==
        Errc::IdOutOfRange);
  // smallest nonassociative loop (order 5)
  CHECK(code_of([] {
          validate_group({{0, 1, 2, 3, 4},
                          {1, 0, 3, 4, 2},
                          {2, 3, 4, 0, 1},
                          {3, 4, 1, 2, 0},
                          {4, 2, 0, 1, 3}});
        }) == Errc::NotAssociative);
}

TEST_CASE("subgroup_generated") {
  auto c2 = FiniteGroup::cyclic(2);
  CHECK(subgroup_generated(*c2, {}).elements == std::vector<int>{0});
  CHECK(subgroup_generated(*c2, {1}).elements == std::vector<int>{0, 1});

  auto s3 = FiniteGroup::symmetric3();
  CHECK(s3->order() == 6);
  int transposition = -1;
  for (int g = 1; g < 6; ++g)
    if (s3->mul(g, g) == 0) transposition = g;
  REQUIRE(transposition > 0);
  CHECK(subgroup_generated(*s3, {transposition}).size() == 2);

  CHECK(code_of([&] { subgroup_generated(*c2, {7}); }) == Errc::IdOutOfRange);
}

TEST_CASE("is_normal") {
  auto s3 = FiniteGroup::symmetric3();
  CHECK(is_normal(*s3, trivial_subgroup()));
  CHECK(is_normal(*s3, full_subgroup(*s3)));
  for (const auto& h : all_subgroups(*s3)) {
    if (h.size() == 2) CHECK_FALSE(is_normal(*s3, h));
    if (h.size() == 3) CHECK(is_normal(*s3, h));
  }
}

TEST_CASE("orbits, fixed points, quotient on the three-point C2 set") {
  auto c2 = FiniteGroup::cyclic(2);
  GAction y;
  y.group = c2;
  y.labels = {"x", "y", "z"};
  y.act = {{0, 1, 2}, {1, 0, 2}};  // the nontrivial element swaps x and y
  validate_action(y);

  auto os = orbits(y);
  REQUIRE(os.size() == 2);
  CHECK(os[0] == std::vector<int>{0, 1});
  CHECK(os[1] == std::vector<int>{2});

  CHECK(fixed_points(y, trivial_subgroup()) == std::vector<int>{0, 1, 2});
  CHECK(fixed_points(y, full_subgroup(*c2)) == std::vector<int>{2});

  GAction reg = regular_action(c2);
  CHECK(fixed_points(reg, full_subgroup(*c2)).empty());
  CHECK(orbits(reg).size() == 1);

  QuotientAction q = quotient(y);
  CHECK(q.action.size() == 2);
  CHECK(q.action.labels == std::vector<std::string>{"x", "z"});
  CHECK(q.projection == std::vector<int>{0, 0, 1});
  QuotientAction qt = quotient(trivial_gset(c2, {"a", "b"}));
  CHECK(qt.action.size() == 2);
  CHECK(qt.projection == std::vector<int>{0, 1});
  CHECK(quotient(reg).action.size() == 1);
}

TEST_CASE("injective_on_orbits") {
  auto c2 = FiniteGroup::cyclic(2);
  GAction reg = regular_action(c2);

  EquivariantMap id{reg, reg, {0, 1}};
  validate_equivariant(id);
  CHECK(injective_on_orbits(id));

  GAction point = trivial_gset(c2, {"*"});
  EquivariantMap collapse{reg, point, {0, 0}};
  validate_equivariant(collapse);
  CHECK_FALSE(injective_on_orbits(collapse));

  GAction two = trivial_gset(c2, {"a", "b"});
  EquivariantMap from_trivial{two, point, {0, 0}};
  CHECK(injective_on_orbits(from_trivial));
}

TEST_CASE("equivariant map enumeration counts via orbit bases") {
  auto c2 = FiniteGroup::cyclic(2);
  GAction reg = regular_action(c2);
  GAction point = trivial_gset(c2, {"*"});
  CHECK(equivariant_maps(reg, reg).size() == 2);
  CHECK(equivariant_maps(reg, point).size() == 1);
  CHECK(equivariant_maps(point, reg).empty());
  CHECK(equivariant_maps(point, point).size() == 1);
  for (const auto& m : equivariant_maps(reg, reg))
    validate_equivariant({reg, reg, m});
}

TEST_CASE("gset_isomorphic distinguishes free and trivial actions") {
  auto c2 = FiniteGroup::cyclic(2);
  CHECK(gset_isomorphic(regular_action(c2), regular_action(c2)));
  CHECK_FALSE(gset_isomorphic(regular_action(c2), trivial_gset(c2, {"a", "b"})));
  CHECK(gset_isomorphic(empty_gset(c2), empty_gset(c2)));
}

TEST_CASE("coset spaces") {
  auto s3 = FiniteGroup::symmetric3();
  for (const auto& h : all_subgroups(*s3)) {
    GAction cs = coset_action(s3, h);
    CHECK(cs.size() * static_cast<int>(h.size()) == 6);
    validate_action(cs);
  }
  CHECK(all_subgroups(*s3).size() == 6);
  CHECK(normal_subgroups(*s3).size() == 3);
}

TEST_CASE("properties on seeded random stalks") {
  for (int k = 0; k < 60; ++k) {
    Instance inst = gen_instance(1000 + k, GenBounds{});
    for (const auto& stalk : inst.sheaf.stalks) {
      // orbits partition and obey Lagrange
      std::size_t covered = 0;
      for (const auto& orbit : orbits(stalk)) {
        covered += orbit.size();
        CHECK(inst.ctx.group->order() % orbit.size() == 0);
      }
      CHECK(covered == static_cast<std::size_t>(stalk.size()));
      // fixed points of a normal subgroup are G-stable
      for (const auto& h : normal_subgroups(*inst.ctx.group)) {
        auto fp = fixed_points(stalk, h);
        for (int g = 0; g < inst.ctx.group->order(); ++g)
          for (int x : fp)
            CHECK(std::binary_search(fp.begin(), fp.end(), stalk.act[g][x]));
      }
    }
  }
}
