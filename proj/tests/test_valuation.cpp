#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "gshv/gen.hpp"

#include "fixtures.hpp"

using namespace gshv;

TEST_CASE("chain_to_sheaf on a punctual chain is a single G-set") {
  auto c2 = FiniteGroup::cyclic(2);
  ChainModel m = make_chain_model(c2, {trivial_subgroup()});
  ChainPresheaf cp = make_chain_presheaf(m, {regular_action(c2)}, {});
  auto [ctx, d] = chain_to_sheaf(cp);
  CHECK(ctx.site->size() == 1);
  CHECK(gset_isomorphic(d.stalks[0], regular_action(c2)));
  CHECK(classify(ctx, d).is_star);
}

TEST_CASE("dvr_to_chain composes with chain_to_sheaf") {
  DVRDatum datum = fixtures::c2_collapse_datum();
  ChainPresheaf cp = dvr_to_chain(datum);
  CHECK(cp.model.n == 2);
  auto [ctx, d] = chain_to_sheaf(cp);
  CHECK(d.stalks[0].size() == 1);
  CHECK(d.stalks[1].size() == 2);
  CHECK(classify(ctx, d).is_star);
}

TEST_CASE("star holds by construction on generated chains") {
  for (int k = 0; k < 50; ++k) {
    ChainPresheaf cp = gen_chain(40000 + k, GenBounds{});
    auto [ctx, d] = chain_to_sheaf(cp);
    CHECK(is_star(ctx, d));
  }
}

TEST_CASE("dvr constructors") {
  auto c2 = FiniteGroup::cyclic(2);
  // I = G, special stalk the fixed points of the generic stalk
  GAction generic = regular_action(c2);
  GAction special = empty_gset(c2);
  DVRDatum datum =
      make_dvr(c2, full_subgroup(*c2), special, generic, {});
  ChainPresheaf cp = dvr_to_chain(datum);
  auto [ctx, d] = chain_to_sheaf(cp);
  CHECK(sheaf_isomorphic(d, star_constant(ctx, generic)));

  // B_s empty gives a sheaf supported at eta
  CHECK(support(d).members == std::vector<int>{0});

  // identity on a trivial G-set gives a constant sheaf
  GAction one = trivial_gset(c2, {"t"});
  DVRDatum idd = make_dvr(c2, trivial_subgroup(), one, one, {0});
  auto [ctx2, d2] = chain_to_sheaf(dvr_to_chain(idd));
  CHECK(sheaf_isomorphic(d2, constant_sheaf(ctx2, one)));

  // the inertia subgroup must fix the special stalk
  CHECK_THROWS_AS(
      make_dvr(c2, full_subgroup(*c2), regular_action(c2), regular_action(c2),
               {0, 1}),
      ValidationError);
}

TEST_CASE("summary functors on the double origin chain") {
  auto g = FiniteGroup::trivial();
  ChainModel m = make_chain_model(g, {trivial_subgroup(), trivial_subgroup()});
  ChainPresheaf cp = make_chain_presheaf(
      m, {trivial_gset(g, {"x"}), trivial_gset(g, {"a", "b"})}, {{0, 0}});
  SummaryFunctors sf = summary_functors(cp);

  // et keeps both branches, set collapses them
  CHECK(sf.et.value[1].size() == 2);
  CHECK(sf.set.value[1].labels == std::vector<std::string>{"x"});
  CHECK(sf.set.value[0].labels == std::vector<std::string>{"x"});
  // trivial group: loc is the identity on points
  CHECK(sf.loc.value[1].size() == 2);
}

TEST_CASE("summary functors: injective localizations leave set unchanged") {
  auto c2 = FiniteGroup::cyclic(2);
  ChainModel m = make_chain_model(c2, {trivial_subgroup(), trivial_subgroup()});
  GAction reg = regular_action(c2);
  ChainPresheaf cp = make_chain_presheaf(m, {reg, reg}, {{0, 1}});
  SummaryFunctors sf = summary_functors(cp);
  CHECK(gset_isomorphic(sf.set.value[1], reg));
  // regular values with identity locs: loc has singleton values
  CHECK(sf.loc.value[0].size() == 1);
  CHECK(sf.loc.value[1].size() == 1);
}

TEST_CASE("summary agrees with the star module on random chains") {
  for (int k = 0; k < 60; ++k) {
    ChainPresheaf cp = gen_chain(41000 + k, GenBounds{});
    auto [ctx, d] = chain_to_sheaf(cp);
    SummaryFunctors sf = summary_functors(cp);
    CHECK(sheaf_isomorphic(chain_to_sheaf(sf.set).second,
                           set_image(d).sheaf));
    CHECK(sheaf_isomorphic(chain_to_sheaf(sf.loc).second,
                           quotient_sheaf(d).sheaf));
    CHECK(sheaf_isomorphic(chain_to_sheaf(sf.et).second, et_image(d).sheaf));
  }
}

TEST_CASE("dvr_classify") {
  auto g = FiniteGroup::trivial();
  GAction one = trivial_gset(g, {"x"});

  DVRDatum injective = make_dvr(g, trivial_subgroup(), one, one, {0});
  CHECK(dvr_classify(injective).representable);
  CHECK(dvr_classify(injective).separated);

  // the double origin collapse: representable but not separated
  DVRDatum dorigin = make_dvr(g, trivial_subgroup(),
                              trivial_gset(g, {"a", "b"}), one, {0, 0});
  CHECK(dvr_classify(dorigin).representable);
  CHECK_FALSE(dvr_classify(dorigin).separated);

  DVRDatum collapse = fixtures::c2_collapse_datum();
  CHECK_FALSE(dvr_classify(collapse).representable);
}

TEST_CASE("dvr_classify agrees with classify through the chain model") {
  for (int k = 0; k < 60; ++k) {
    ChainPresheaf cp = gen_chain(42000 + k, GenBounds{2, 8, 6});
    if (cp.model.n != 2) continue;
    DVRDatum datum;
    datum.group = cp.model.group;
    datum.inertia = cp.model.inertia[1];
    datum.special_stalk = cp.value[1];
    datum.generic_stalk = cp.value[0];
    datum.ell = cp.loc[0];
    auto [ctx, d] = chain_to_sheaf(cp);
    ClassificationReport r = classify(ctx, d);
    DvrClassification dc = dvr_classify(datum);
    CHECK(dc.representable == r.is_et);
    CHECK(dc.separated == r.is_set);
  }
}
