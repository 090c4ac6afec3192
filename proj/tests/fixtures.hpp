#pragma once

#include "gshv/valuation.hpp"

namespace fixtures {

using namespace gshv;

// Two closed points glued along one generic point: trivial group,
// D_s = {a, b}, D_eta = {x}, both branches localize to x.
inline std::pair<StarContext, GSheaf> double_origin() {
  auto group = FiniteGroup::trivial();
  auto site = chain_site(2);
  StarContext ctx =
      make_context(site, group, {trivial_subgroup(), trivial_subgroup()});
  GAction eta = trivial_gset(group, {"x"});
  GAction s = trivial_gset(group, {"a", "b"});
  GSheaf d = make_sheaf(site, group, {eta, s}, {{{1, 0}, {0, 0}}});
  return {ctx, d};
}

// eta under two incomparable closed points a and b.
inline std::shared_ptr<const FiniteSite> v_site() {
  return validate_site({"eta", "a", "b"}, {{"a", "eta"}, {"b", "eta"}}, "eta");
}

// chain of length 2 with full inertia C2 at the closed point
inline StarContext dvr_c2_context() {
  auto group = FiniteGroup::cyclic(2);
  auto site = chain_site(2);
  return make_context(site, group, {trivial_subgroup(), full_subgroup(*group)});
}

// C2 datum whose localization collapses a free orbit: not representable.
inline DVRDatum c2_collapse_datum() {
  auto group = FiniteGroup::cyclic(2);
  GAction special;
  special.group = group;
  special.labels = {"p", "q"};
  special.act = {{0, 1}, {1, 0}};
  GAction generic = trivial_gset(group, {"z"});
  return make_dvr(group, trivial_subgroup(), special, generic, {0, 0});
}

}  // namespace fixtures
