#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <set>

#include "gshv/adjunctions.hpp"
#include "gshv/gen.hpp"

#include "fixtures.hpp"

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

// chain of length 2 over C2 with I(s) = C2 and the constant regular sheaf:
// the star condition fails at s.
std::pair<StarContext, GSheaf> ramified_regular() {
  StarContext ctx = fixtures::dvr_c2_context();
  GAction reg = regular_action(ctx.group);
  GSheaf d = constant_sheaf(ctx, reg);
  return {ctx, d};
}

}  // namespace

TEST_CASE("is_star") {
  auto [ctx0, d0] = fixtures::double_origin();
  CHECK(is_star(ctx0, d0));  // trivial inertia

  auto [ctx, d] = ramified_regular();
  CHECK_FALSE(is_star(ctx, d));

  // fixed point at s over a stalk with a fixed point at eta
  GAction eta;
  eta.group = ctx.group;
  eta.labels = {"x", "p", "q"};
  eta.act = {{0, 1, 2}, {0, 2, 1}};
  GAction s = trivial_gset(ctx.group, {"a"});
  GSheaf ok = make_sheaf(ctx.site, ctx.group, {eta, s}, {{{1, 0}, {0}}});
  CHECK(is_star(ctx, ok));
}

TEST_CASE("star_part and smI_part") {
  auto [ctx, d] = ramified_regular();
  GSheaf sp = star_part(ctx, d);
  CHECK(sp.stalks[0].size() == 2);  // eta untouched
  CHECK(sp.stalks[1].size() == 0);  // free C2 action has no fixed points

  GSheaf smi = smI_part(ctx, d);
  for (int s = 0; s < ctx.site->size(); ++s)
    CHECK(gset_isomorphic(smi.stalks[s], sp.stalks[s]));

  // trivial inertia: both are the identity
  auto [ctx0, d0] = fixtures::double_origin();
  CHECK(sheaf_isomorphic(star_part(ctx0, d0), d0));
  CHECK(sheaf_isomorphic(smI_part(ctx0, d0), d0));

  // idempotent
  CHECK(sheaf_isomorphic(star_part(ctx, sp), sp));
}

TEST_CASE("fixed subsheaf and quotient sheaf") {
  auto c2 = FiniteGroup::cyclic(2);
  auto two = chain_site(2);
  StarContext ctx =
      make_context(two, c2, {trivial_subgroup(), trivial_subgroup()});
  GAction mixed;
  mixed.group = c2;
  mixed.labels = {"x", "y", "z"};
  mixed.act = {{0, 1, 2}, {1, 0, 2}};
  GSheaf d = constant_sheaf(ctx, mixed);

  GSheaf fixed = fixed_subsheaf(d);
  CHECK(fixed.stalks[0].labels == std::vector<std::string>{"z"});
  SheafMorphism counit = fixed_subsheaf_counit(d);
  CHECK(is_mono(counit));

  UnitImage q = quotient_sheaf(d);
  CHECK(q.sheaf.stalks[0].size() == 2);
  CHECK(q.sheaf.stalks[0].labels == std::vector<std::string>{"x", "z"});
  CHECK(is_epi(q.unit));

  GSheaf reg = constant_sheaf(ctx, regular_action(c2));
  CHECK(fixed_subsheaf(reg).total_elements() == 0);
  CHECK(quotient_sheaf(reg).sheaf.stalks[0].size() == 1);

  auto [ctx0, d0] = fixtures::double_origin();
  CHECK(sheaf_isomorphic(quotient_sheaf(d0).sheaf, d0));
}

TEST_CASE("constant and star-constant sheaves") {
  StarContext ctx = fixtures::dvr_c2_context();
  GAction reg = regular_action(ctx.group);

  GSheaf empty_const = constant_sheaf(ctx, empty_gset(ctx.group));
  CHECK(empty_const.total_elements() == 0);

  GSheaf xs = star_constant(ctx, reg);
  CHECK(xs.stalks[0].size() == 2);
  CHECK(xs.stalks[1].size() == 0);

  // with trivial inertia the two constructions agree
  StarContext triv = make_context(ctx.site, ctx.group,
                                  {trivial_subgroup(), trivial_subgroup()});
  CHECK(sheaf_isomorphic(star_constant(triv, reg), constant_sheaf(triv, reg)));

  // the counit (X_S^star)_eta -> X is an isomorphism
  CHECK(gset_isomorphic(generic_stalk(xs), reg));
}

TEST_CASE("set and et parts of the double origin") {
  auto [ctx, d] = fixtures::double_origin();
  UnitImage set = set_part(ctx, d);
  CHECK(set.sheaf.stalks[0].size() == 1);
  CHECK(set.sheaf.stalks[1].size() == 1);
  CHECK(is_epi(set.unit));

  UnitImage et = et_part(ctx, d);
  CHECK(sheaf_isomorphic(et.sheaf, d));  // (x,a) and (x,b) stay distinct

  // idempotence
  CHECK(is_isomorphism(set_image(set.sheaf).unit));
  CHECK(is_isomorphism(et_image(et.sheaf).unit));

  // NotStar is enforced
  auto ramified = ramified_regular();
  const StarContext& rctx = ramified.first;
  const GSheaf& rd = ramified.second;
  CHECK(code_of([&] { set_part(rctx, rd); }) == Errc::NotStar);
  CHECK(code_of([&] { et_part(rctx, rd); }) == Errc::NotStar);
}

TEST_CASE("intro formulas for a DVR datum") {
  // ell_set = Im(B_s -> B_eta) included in B_eta;
  // ell_et = Im(B_s -> B_eta x G\B_s) projected to B_eta
  DVRDatum datum = fixtures::c2_collapse_datum();
  auto [ctx, d] = chain_to_sheaf(dvr_to_chain(datum));
  UnitImage set = set_image(d);
  CHECK(set.sheaf.stalks[1].labels == std::vector<std::string>{"z"});
  UnitImage et = et_image(d);
  // the free orbit {p,q} collapses: one pair (z, orbit) survives
  CHECK(et.sheaf.stalks[1].size() == 1);
  DvrClassification dc = dvr_classify(datum);
  CHECK_FALSE(dc.representable);
  CHECK_FALSE(dc.separated);
}

TEST_CASE("support") {
  auto [ctx, d] = fixtures::double_origin();
  CHECK(support(d).members == std::vector<int>{0, 1});
  CHECK(support(initial_sheaf(ctx.site, ctx.group)).empty());
  GSheaf at_eta = j_shriek(
      ctx.site, make_open(*ctx.site, {0}),
      terminal_sheaf(chain_site(1), ctx.group));
  CHECK(support(at_eta).members == std::vector<int>{0});
}

TEST_CASE("pi0, components, decomposition") {
  auto pair = fixtures::double_origin();
  const StarContext& ctx = pair.first;
  const GSheaf& d = pair.second;
  auto components = pi0(d);
  REQUIRE(components.size() == 1);
  GSheaf c = component(d, components[0].front());
  CHECK(sheaf_isomorphic(c, d));
  CHECK(code_of([&] { component(d, 99); }) == Errc::UnknownComponent);

  CHECK(pi0(initial_sheaf(ctx.site, ctx.group)).empty());

  StarContext triv = make_context(chain_site(2), FiniteGroup::cyclic(2),
                                  {trivial_subgroup(), trivial_subgroup()});
  GSheaf creg = constant_sheaf(triv, regular_action(triv.group));
  CHECK(pi0(creg).size() == 1);

  // disjoint union decomposes back into its pieces
  GSheaf u = disjoint_union(ctx.site, ctx.group, {d, d});
  auto parts = decompose(u);
  REQUIRE(parts.size() == 2);
  CHECK(sheaf_isomorphic(disjoint_union(ctx.site, ctx.group, parts), u));
  for (const auto& p : parts) CHECK(sheaf_isomorphic(p, d));
}

TEST_CASE("orbit sections of the double origin") {
  auto [ctx, d] = fixtures::double_origin();
  auto all = orbit_sections(d);
  CHECK(all.size() == 3);  // ({eta},{x}), (whole,{(x,a)}), (whole,{(x,b)})
  auto maximal = maximal_orbit_sections(d);
  REQUIRE(maximal.size() == 2);
  for (const auto& os : maximal) CHECK(os.open.size() == 2);

  // terminal on the punctual site
  auto punctual = chain_site(1);
  GSheaf t = terminal_sheaf(punctual, ctx.group);
  auto mt = maximal_orbit_sections(t);
  REQUIRE(mt.size() == 1);
  CHECK(mt[0].open.members == std::vector<int>{0});

  // star-constant with an empty stalk at s has its maximal pair at {eta}
  StarContext rctx = fixtures::dvr_c2_context();
  GSheaf xs = star_constant(rctx, regular_action(rctx.group));
  auto mx = maximal_orbit_sections(xs);
  REQUIRE(mx.size() == 1);
  CHECK(mx[0].open.members == std::vector<int>{0});
}

TEST_CASE("j_shriek and j_restrict") {
  auto [ctx, d] = fixtures::double_origin();
  Open whole = whole_space(*ctx.site);

  GSheaf back = j_shriek(ctx.site, whole, j_restrict(d, whole));
  CHECK(sheaf_isomorphic(back, d));

  Open at_eta = make_open(*ctx.site, {0});
  GSheaf e = j_restrict(d, at_eta);
  GSheaf extended = j_shriek(ctx.site, at_eta, e);
  CHECK(extended.stalks[0].size() == 1);
  CHECK(extended.stalks[1].size() == 0);

  // unit: restrict(shriek(E)) is isomorphic to E
  CHECK(sheaf_isomorphic(j_restrict(extended, at_eta), e));
}

TEST_CASE("orbit section morphisms and the covering morphism") {
  auto [ctx, d] = fixtures::double_origin();
  auto maximal = maximal_orbit_sections(d);
  for (const auto& os : maximal) {
    SheafMorphism m = orbit_section_morphism(d, os);
    CHECK(is_mono(m));  // picks one branch
  }
  SheafMorphism cov = covering_morphism(d);
  CHECK(is_epi(cov));

  // punctual terminal: iso onto the terminal sheaf
  auto punctual = chain_site(1);
  GSheaf t = terminal_sheaf(punctual, ctx.group);
  auto mt = maximal_orbit_sections(t);
  SheafMorphism onto = orbit_section_morphism(t, mt[0]);
  CHECK(is_isomorphism(onto));
}

TEST_CASE("ladders on the double origin") {
  auto [ctx, d] = fixtures::double_origin();
  Ladder3 l3 = ladder3(ctx, d);
  CHECK(l3.agree());
  CHECK(l3.value());
  Ladder4 l4 = ladder4(ctx, d);
  CHECK(l4.agree());
  CHECK_FALSE(l4.value());
}

TEST_CASE("ladders on a free orbit collapsing to a fixed point") {
  // g swaps x and y at s, both localize to the fixed z at eta
  auto c2 = FiniteGroup::cyclic(2);
  auto two = chain_site(2);
  StarContext ctx =
      make_context(two, c2, {trivial_subgroup(), trivial_subgroup()});
  GAction eta = trivial_gset(c2, {"z"});
  GAction s = regular_action(c2);
  GSheaf d = make_sheaf(two, c2, {eta, s}, {{{1, 0}, {0, 0}}});

  Ladder3 l3 = ladder3(ctx, d);
  CHECK(l3.agree());
  CHECK_FALSE(l3.value());
  Ladder4 l4 = ladder4(ctx, d);
  CHECK(l4.agree());
  CHECK_FALSE(l4.value());
}

TEST_CASE("classify") {
  auto [ctx, d] = fixtures::double_origin();
  ClassificationReport r = classify(ctx, d);
  CHECK(r.is_star);
  CHECK(r.is_et);
  CHECK_FALSE(r.is_set);
  CHECK(r.is_loc);
  CHECK(r.pi0_size == 1);

  ClassificationReport ri = classify(ctx, initial_sheaf(ctx.site, ctx.group));
  CHECK(ri.is_star);
  CHECK(ri.is_et);
  CHECK(ri.is_set);
  CHECK(ri.is_loc);
  CHECK(ri.pi0_size == 0);

  // star-constant sheaves are set sheaves
  StarContext rctx = fixtures::dvr_c2_context();
  GSheaf xs = star_constant(rctx, regular_action(rctx.group));
  ClassificationReport rx = classify(rctx, xs);
  CHECK(rx.is_star);
  CHECK(rx.is_set);
  CHECK_FALSE(rx.is_loc);

  // a star sheaf that is not et: the C2 collapse
  auto [cctx, cd] = chain_to_sheaf(dvr_to_chain(fixtures::c2_collapse_datum()));
  ClassificationReport rc = classify(cctx, cd);
  CHECK(rc.is_star);
  CHECK_FALSE(rc.is_et);
  CHECK_FALSE(rc.is_set);
}

TEST_CASE("properties_of_et") {
  auto [ctx, d] = fixtures::double_origin();
  CHECK(properties_of_et(ctx, d));

  // an et fixture with nontrivial inertia
  StarContext rctx = fixtures::dvr_c2_context();
  GSheaf xs = star_constant(rctx, regular_action(rctx.group));
  REQUIRE(classify(rctx, xs).is_et);
  CHECK(properties_of_et(rctx, xs));
}

TEST_CASE("pullback and pushforward") {
  StarContext ctx = fixtures::dvr_c2_context();
  GAction reg = regular_action(ctx.group);
  GAction mixed;
  mixed.group = ctx.group;
  mixed.labels = {"x", "p", "q"};
  mixed.act = {{0, 1, 2}, {0, 2, 1}};
  GSheaf d = make_sheaf(ctx.site, ctx.group,
                        {mixed, trivial_gset(ctx.group, {"a"})},
                        {{{1, 0}, {0}}});

  // identity
  SiteMap id = validate_site_map(ctx.inertia, ctx.inertia, {0, 1});
  CHECK(sheaf_isomorphic(pullback(id, d), d));
  CHECK(sheaf_isomorphic(pushforward_et(id, d), d));

  // pullback along an open inclusion is restriction
  Open at_eta = make_open(*ctx.site, {0});
  std::vector<int> idx;
  auto sub = restrict_site(*ctx.site, at_eta, &idx);
  InertiaProfile sub_profile =
      make_profile(sub, ctx.group, {trivial_subgroup()});
  SiteMap iota = validate_site_map(sub_profile, ctx.inertia, {0});
  CHECK(sheaf_isomorphic(pullback(iota, d), j_restrict(d, at_eta)));

  // pushforward along the generic point inclusion is the star-constant
  GSheaf point_sheaf = make_sheaf(sub, ctx.group, {reg}, {});
  GSheaf pushed = pushforward_et(iota, point_sheaf);
  CHECK(sheaf_isomorphic(pushed, star_constant(ctx, reg)));
}

TEST_CASE("pullback of a star sheaf is star on the source") {
  for (int k = 0; k < 30; ++k) {
    Instance inst = gen_instance(60000 + k, GenBounds{});
    Open supp = support(inst.sheaf);
    if (supp.empty()) continue;
    std::vector<int> idx;
    auto sub = restrict_site(*inst.ctx.site, supp, &idx);
    std::vector<Subgroup> sub_inertia;
    for (int s : supp.members)
      sub_inertia.push_back(inst.ctx.inertia.inertia[s]);
    StarContext sctx = make_context(sub, inst.ctx.group, sub_inertia);
    std::vector<int> incl(supp.members.begin(), supp.members.end());
    SiteMap ju = validate_site_map(sctx.inertia, inst.ctx.inertia, incl);
    CHECK(is_star(sctx, pullback(ju, inst.sheaf)));
  }
}

TEST_CASE("pushforward along a collapsing map takes global sections") {
  // chain with trivial inertia collapsed onto the punctual site
  auto g = FiniteGroup::cyclic(2);
  auto two = chain_site(2);
  StarContext src =
      make_context(two, g, {trivial_subgroup(), trivial_subgroup()});
  auto punctual = chain_site(1);
  StarContext tgt = make_context(punctual, g, {trivial_subgroup()});
  SiteMap collapse = validate_site_map(src.inertia, tgt.inertia, {0, 0});

  // double-origin shape over C2 with everything trivial
  GAction one = trivial_gset(g, {"x"});
  GAction twotriv = trivial_gset(g, {"a", "b"});
  GSheaf e = make_sheaf(two, g, {one, twotriv}, {{{1, 0}, {0, 0}}});
  GSheaf pushed = pushforward_et(collapse, e);
  SectionSet global = sections(e, whole_space(*two));
  CHECK(pushed.stalks[0].size() == static_cast<int>(global.families.size()));
  CHECK(gset_isomorphic(pushed.stalks[0], global.action));
}

TEST_CASE("espace etale") {
  auto [ctx, d] = fixtures::double_origin();
  EtaleSpace x = espace_etale(d);
  CHECK(x.points.size() == 3);
  CHECK(x.local_iso());
  // two closed points above s, one generic point above eta
  int over_eta = 0, over_s = 0;
  for (int p : x.projection) (p == 0 ? over_eta : over_s)++;
  CHECK(over_eta == 1);
  CHECK(over_s == 2);

  GSheaf t = terminal_sheaf(ctx.site, ctx.group);
  EtaleSpace xt = espace_etale(t);
  CHECK(xt.points.size() == 2);
  CHECK(xt.local_iso());

  // extension by the empty sheaf: total space is the open itself
  Open at_eta = make_open(*ctx.site, {0});
  GSheaf ext = j_shriek(ctx.site, at_eta,
                        terminal_sheaf(chain_site(1), ctx.group));
  EtaleSpace xe = espace_etale(ext);
  CHECK(xe.points.size() == 1);
  CHECK(xe.local_iso());
  CHECK(xe.projection == std::vector<int>{0});

  // sections of the projection match sections of the sheaf
  for (const auto& u : opens(*ctx.site)) {
    if (u.empty()) continue;
    CHECK(espace_sections(x, u).size() == sections(d, u).families.size());
  }

  StarContext rctx = fixtures::dvr_c2_context();
  GSheaf reg_const = constant_sheaf(rctx, regular_action(rctx.group));
  CHECK(code_of([&] { espace_etale(reg_const); }) == Errc::NontrivialAction);
}

TEST_CASE("pi0 brute force oracle") {
  auto [ctx, d] = fixtures::double_origin();
  auto brute = pi0_bruteforce(d);
  REQUIRE(brute.size() == 1);  // both branches meet the generic stalk
  CHECK(sheaf_isomorphic(brute[0], d));

  GSheaf t = terminal_sheaf(ctx.site, ctx.group);
  auto bt = pi0_bruteforce(t);
  REQUIRE(bt.size() == 1);
  CHECK(sheaf_isomorphic(bt[0], t));

  GSheaf u = disjoint_union(ctx.site, ctx.group, {d, t});
  auto bu = pi0_bruteforce(u);
  REQUIRE(bu.size() == 2);
}

TEST_CASE("essential image of the star-constant functor") {
  StarContext ctx = fixtures::dvr_c2_context();
  GAction reg = regular_action(ctx.group);
  GSheaf xs = star_constant(ctx, reg);
  const int eta = ctx.site->generic();

  // all three predicates true on a star-constant sheaf
  CHECK(sheaf_isomorphic(xs, star_constant(ctx, xs.stalks[eta])));
  for (int s = 0; s < ctx.site->size(); ++s) {
    auto fp = fixed_points(xs.stalks[eta], ctx.inertia.inertia[s]);
    const auto& m = xs.loc_map(s, eta);
    CHECK(is_injective_map(m));
    CHECK(std::set<int>(m.begin(), m.end()) ==
          std::set<int>(fp.begin(), fp.end()));
  }

  // and all three false on the double origin
  auto [ctx0, d0] = fixtures::double_origin();
  CHECK_FALSE(sheaf_isomorphic(d0, star_constant(ctx0, d0.stalks[0])));
}

TEST_CASE("ladders stay coherent on a diamond-shaped site") {
  // two incomparable middle points under a common closed point; the
  // generator only draws trees, so this shape needs its own coverage
  auto g = FiniteGroup::cyclic(2);
  auto diamond = validate_site(
      {"eta", "a", "b", "c"},
      {{"a", "eta"}, {"b", "eta"}, {"c", "a"}, {"c", "b"}}, "eta");
  StarContext ctx = make_context(
      diamond, g,
      {trivial_subgroup(), trivial_subgroup(), trivial_subgroup(),
       full_subgroup(*g)});

  GAction two;
  two.group = g;
  two.labels = {"x", "y"};
  two.act = {{0, 1}, {1, 0}};
  GSheaf d = make_sheaf(diamond, g, {two, two, two, empty_gset(g)},
                        {{{1, 0}, {0, 1}},
                         {{2, 0}, {0, 1}},
                         {{3, 1}, {}},
                         {{3, 2}, {}}});
  CHECK(is_star(ctx, d));
  ClassificationReport r = classify(ctx, d);
  CHECK(r.is_et);
  CHECK(r.is_set);
  CHECK(r.support.members == std::vector<int>{0, 1, 2});

  // collapsing two closed-point elements onto one section: et, not set
  GAction twotriv = trivial_gset(g, {"p", "q"});
  GAction onetriv = trivial_gset(g, {"r"});
  StarContext triv = make_context(
      diamond, g,
      {trivial_subgroup(), trivial_subgroup(), trivial_subgroup(),
       trivial_subgroup()});
  GSheaf d3 = make_sheaf(diamond, g, {onetriv, onetriv, onetriv, twotriv},
                         {{{1, 0}, {0}},
                          {{2, 0}, {0}},
                          {{3, 1}, {0, 0}},
                          {{3, 2}, {0, 0}}});
  ClassificationReport r3 = classify(triv, d3);
  CHECK(r3.is_et);
  CHECK_FALSE(r3.is_set);
  CHECK(is_epi(covering_morphism(d3)));
}

TEST_CASE("adjunction checks on fixtures") {
  auto [ctx, d] = fixtures::double_origin();
  GSheaf e_loc = quotient_sheaf(d).sheaf;
  CHECK(check_adjunction_quotient(d, e_loc).ok());
  CHECK(check_adjunction_fixed(e_loc, d).ok());
  CHECK(check_adjunction_star_constant(ctx, d, generic_stalk(d)).ok());
  CHECK(check_adjunction_et(ctx, d, et_image(d).sheaf).ok());
  CHECK(check_adjunction_set(ctx, d, set_image(d).sheaf).ok());

  StarContext rctx = fixtures::dvr_c2_context();
  GAction mixed;
  mixed.group = rctx.group;
  mixed.labels = {"x", "p", "q"};
  mixed.act = {{0, 1, 2}, {0, 2, 1}};
  GSheaf sd = make_sheaf(rctx.site, rctx.group,
                         {mixed, trivial_gset(rctx.group, {"a"})},
                         {{{1, 0}, {0}}});
  GSheaf plain = constant_sheaf(rctx, regular_action(rctx.group));
  CHECK(check_adjunction_smI(rctx, sd, plain).ok());
}
