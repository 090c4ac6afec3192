#include "gshv/star.hpp"

#include <algorithm>
#include <set>

namespace gshv {

StarContext make_context(std::shared_ptr<const FiniteSite> site,
                         std::shared_ptr<const FiniteGroup> group,
                         std::vector<Subgroup> inertia) {
  StarContext ctx;
  ctx.site = site;
  ctx.group = group;
  ctx.inertia = make_profile(site, group, std::move(inertia));
  return ctx;
}

bool is_star(const StarContext& ctx, const GSheaf& d) {
  for (int s = 0; s < ctx.site->size(); ++s)
    if (static_cast<int>(fixed_points(d.stalks[s], ctx.inertia.inertia[s])
                             .size()) != d.stalks[s].size())
      return false;
  return true;
}

GSheaf star_part(const StarContext& ctx, const GSheaf& d) {
  std::vector<std::vector<int>> subsets;
  for (int s = 0; s < ctx.site->size(); ++s)
    subsets.push_back(fixed_points(d.stalks[s], ctx.inertia.inertia[s]));
  return subsheaf_from(d, subsets);
}

GSheaf smI_part(const StarContext& ctx, const GSheaf& d) {
  // Section route: I(U_s)-fixed families over the minimal open of s,
  // transported to the stalk by evaluation at s.
  std::vector<std::vector<int>> subsets(ctx.site->size());
  for (int s = 0; s < ctx.site->size(); ++s) {
    Open us = minimal_open(*ctx.site, s);
    SectionSet secs = sections(d, us);
    Subgroup k = inertia_of_open(ctx.inertia, us).subgroup;
    std::vector<int> fixed = fixed_points(secs.action, k);
    auto at_s = localization_map(secs, s);
    std::set<int> sub;
    for (int i : fixed) sub.insert(at_s[i]);
    subsets[s].assign(sub.begin(), sub.end());
  }
  return subsheaf_from(d, subsets);
}

GSheaf fixed_subsheaf(const GSheaf& d) {
  std::vector<std::vector<int>> subsets;
  Subgroup g = full_subgroup(*d.group);
  for (const auto& st : d.stalks) subsets.push_back(fixed_points(st, g));
  return subsheaf_from(d, subsets);
}

SheafMorphism fixed_subsheaf_counit(const GSheaf& d) {
  std::vector<std::vector<int>> subsets;
  Subgroup g = full_subgroup(*d.group);
  for (const auto& st : d.stalks) subsets.push_back(fixed_points(st, g));
  return subsheaf_inclusion(d, subsets);
}

UnitImage quotient_sheaf(const GSheaf& d) {
  std::vector<GAction> stalks;
  std::vector<std::vector<int>> projections;
  for (const auto& st : d.stalks) {
    QuotientAction q = quotient(st);
    stalks.push_back(q.action);
    projections.push_back(q.projection);
  }
  std::map<std::pair<int, int>, std::vector<int>> loc;
  for (const auto& [a, b] : d.site->hasse()) {
    std::vector<int> m(stalks[a].size(), -1);
    for (int x = 0; x < d.stalks[a].size(); ++x)
      m[projections[a][x]] = projections[b][d.loc.at({a, b})[x]];
    loc[{a, b}] = std::move(m);
  }
  UnitImage out;
  out.sheaf = make_sheaf(d.site, d.group, std::move(stalks), std::move(loc));
  out.unit = make_morphism(d, out.sheaf, std::move(projections));
  return out;
}

namespace {

GSheaf constant_on(std::shared_ptr<const FiniteSite> site,
                   std::shared_ptr<const FiniteGroup> group, const GAction& x) {
  std::vector<GAction> stalks(site->size(), x);
  std::map<std::pair<int, int>, std::vector<int>> loc;
  std::vector<int> id(x.size());
  for (int i = 0; i < x.size(); ++i) id[i] = i;
  for (const auto& e : site->hasse()) loc[e] = id;
  return make_sheaf(site, group, std::move(stalks), std::move(loc));
}

}  // namespace

GSheaf constant_sheaf(const StarContext& ctx, const GAction& x) {
  return constant_on(ctx.site, ctx.group, x);
}

GSheaf star_constant(const StarContext& ctx, const GAction& x) {
  GSheaf c = constant_on(ctx.site, ctx.group, x);
  return star_part(ctx, c);
}

GAction generic_stalk(const GSheaf& d) { return d.stalks[d.site->generic()]; }

UnitImage set_image(const GSheaf& d) {
  const int eta = d.site->generic();
  GSheaf c = constant_on(d.site, d.group, d.stalks[eta]);
  std::vector<std::vector<int>> comp;
  for (int s = 0; s < d.site->size(); ++s) comp.push_back(d.loc_map(s, eta));
  SheafMorphism to_const = make_morphism(d, c, std::move(comp));
  ImageFactorization f = image(to_const);
  return UnitImage{f.image, f.epi};
}

UnitImage et_image(const GSheaf& d) {
  const int eta = d.site->generic();
  GSheaf c = constant_on(d.site, d.group, d.stalks[eta]);
  UnitImage q = quotient_sheaf(d);
  GSheaf p = product_sheaf(c, q.sheaf);
  std::vector<std::vector<int>> comp;
  for (int s = 0; s < d.site->size(); ++s) {
    std::vector<int> m(d.stalks[s].size());
    for (int x = 0; x < d.stalks[s].size(); ++x)
      m[x] = pair_index(q.sheaf.stalks[s], d.loc_map(s, eta)[x],
                        q.unit.comp[s][x]);
    comp.push_back(std::move(m));
  }
  SheafMorphism to_prod = make_morphism(d, p, std::move(comp));
  ImageFactorization f = image(to_prod);
  return UnitImage{f.image, f.epi};
}

UnitImage set_part(const StarContext& ctx, const GSheaf& d) {
  if (!is_star(ctx, d)) fail(Errc::NotStar, "set part requires a star sheaf");
  return set_image(d);
}

UnitImage et_part(const StarContext& ctx, const GSheaf& d) {
  if (!is_star(ctx, d)) fail(Errc::NotStar, "et part requires a star sheaf");
  return et_image(d);
}

Open support(const GSheaf& d) {
  std::vector<int> members;
  for (int s = 0; s < d.site->size(); ++s)
    if (d.stalks[s].size() > 0) members.push_back(s);
  return make_open(*d.site, std::move(members));
}

std::vector<std::vector<int>> pi0(const GSheaf& d) {
  return orbits(d.stalks[d.site->generic()]);
}

GSheaf component(const GSheaf& d, int orbit_label) {
  for (const auto& c : pi0(d)) {
    if (c.front() != orbit_label) continue;
    const int eta = d.site->generic();
    std::vector<std::vector<int>> subsets(d.site->size());
    for (int s = 0; s < d.site->size(); ++s)
      for (int x = 0; x < d.stalks[s].size(); ++x)
        if (std::binary_search(c.begin(), c.end(), d.loc_map(s, eta)[x]))
          subsets[s].push_back(x);
    return subsheaf_from(d, subsets);
  }
  fail(Errc::UnknownComponent, "no component labeled " +
                                   std::to_string(orbit_label));
}

std::vector<GSheaf> decompose(const GSheaf& d) {
  std::vector<GSheaf> out;
  for (const auto& c : pi0(d)) out.push_back(component(d, c.front()));
  return out;
}

std::vector<OrbitSection> orbit_sections(const GSheaf& d) {
  std::vector<OrbitSection> out;
  for (const auto& u : opens(*d.site)) {
    if (u.empty()) continue;
    SectionSet secs = sections(d, u);
    for (const auto& orbit : orbits(secs.action)) {
      OrbitSection os;
      os.open = u;
      for (int i : orbit) os.families.push_back(secs.families[i]);
      std::sort(os.families.begin(), os.families.end());
      out.push_back(std::move(os));
    }
  }
  return out;
}

bool orbit_section_leq(const GSheaf& d, const OrbitSection& a,
                       const OrbitSection& b) {
  if (!a.open.subset_of(b.open)) return false;
  std::set<std::vector<int>> restricted;
  for (const auto& fam : b.families) {
    std::vector<int> r;
    for (std::size_t p = 0; p < b.open.members.size(); ++p)
      if (a.open.contains(b.open.members[p])) r.push_back(fam[p]);
    restricted.insert(std::move(r));
  }
  std::set<std::vector<int>> mine(a.families.begin(), a.families.end());
  (void)d;
  return restricted == mine;
}

std::vector<OrbitSection> maximal_orbit_sections(const GSheaf& d) {
  auto all = orbit_sections(d);
  std::vector<OrbitSection> out;
  for (const auto& a : all) {
    bool maximal = true;
    for (const auto& b : all) {
      if (&a == &b) continue;
      if (orbit_section_leq(d, a, b) &&
          !(a.open == b.open && a.families == b.families))
        maximal = false;
    }
    if (maximal) out.push_back(a);
  }
  std::sort(out.begin(), out.end(),
            [](const OrbitSection& x, const OrbitSection& y) {
              if (x.open.size() != y.open.size())
                return x.open.size() > y.open.size();
              if (!(x.open == y.open)) return x.open.members < y.open.members;
              return x.families < y.families;
            });
  return out;
}

GSheaf j_shriek(std::shared_ptr<const FiniteSite> site, const Open& u,
                const GSheaf& e) {
  std::vector<int> idx;
  auto sub = restrict_site(*site, u, &idx);
  if (e.site->labels() != sub->labels())
    fail(Errc::SiteMismatch, "sheaf does not live on the open's site");
  std::vector<GAction> stalks;
  for (int s = 0; s < site->size(); ++s)
    stalks.push_back(idx[s] >= 0 ? e.stalks[idx[s]] : empty_gset(e.group));
  std::map<std::pair<int, int>, std::vector<int>> loc;
  for (const auto& [a, b] : site->hasse()) {
    if (idx[a] >= 0)
      loc[{a, b}] = e.loc.at({idx[a], idx[b]});
    else
      loc[{a, b}] = {};
  }
  return make_sheaf(site, e.group, std::move(stalks), std::move(loc));
}

GSheaf j_restrict(const GSheaf& d, const Open& u) {
  std::vector<int> idx;
  auto sub = restrict_site(*d.site, u, &idx);
  std::vector<GAction> stalks;
  for (int s : u.members) stalks.push_back(d.stalks[s]);
  std::map<std::pair<int, int>, std::vector<int>> loc;
  for (const auto& [a, b] : sub->hasse())
    loc[{a, b}] = d.loc.at({u.members[a], u.members[b]});
  return make_sheaf(sub, d.group, std::move(stalks), std::move(loc));
}

namespace {

GAction orbit_gaction(const GSheaf& d, const OrbitSection& os) {
  // The orbit as a G-set of section families over os.open.
  GAction a;
  a.group = d.group;
  for (const auto& fam : os.families) {
    if (os.open.members.size() == 1) {
      a.labels.push_back(d.stalks[os.open.members[0]].labels[fam[0]]);
    } else {
      std::string l = "(";
      for (std::size_t p = 0; p < fam.size(); ++p) {
        if (p) l += ",";
        l += d.stalks[os.open.members[p]].labels[fam[p]];
      }
      l += ")";
      a.labels.push_back(l);
    }
  }
  a.act.assign(d.group->order(), std::vector<int>(os.families.size()));
  for (int g = 0; g < d.group->order(); ++g)
    for (std::size_t i = 0; i < os.families.size(); ++i) {
      std::vector<int> moved(os.families[i].size());
      for (std::size_t p = 0; p < moved.size(); ++p)
        moved[p] = d.stalks[os.open.members[p]].act[g][os.families[i][p]];
      auto it = std::lower_bound(os.families.begin(), os.families.end(), moved);
      a.act[g][i] = static_cast<int>(it - os.families.begin());
    }
  return a;
}

}  // namespace

SheafMorphism orbit_section_morphism(const GSheaf& d, const OrbitSection& os) {
  std::vector<int> idx;
  auto sub = restrict_site(*d.site, os.open, &idx);
  GAction gamma = orbit_gaction(d, os);
  GSheaf gamma_u = constant_on(sub, d.group, gamma);
  GSheaf source = j_shriek(d.site, os.open, gamma_u);
  std::vector<std::vector<int>> comp(d.site->size());
  for (int s = 0; s < d.site->size(); ++s) {
    if (idx[s] < 0) continue;  // empty stalk, empty component
    int pos = static_cast<int>(
        std::lower_bound(os.open.members.begin(), os.open.members.end(), s) -
        os.open.members.begin());
    comp[s].resize(os.families.size());
    for (std::size_t i = 0; i < os.families.size(); ++i)
      comp[s][i] = os.families[i][pos];
  }
  return make_morphism(source, d, std::move(comp));
}

SheafMorphism covering_morphism(const GSheaf& d) {
  auto maximal = maximal_orbit_sections(d);
  std::vector<GSheaf> parts;
  std::vector<SheafMorphism> arrows;
  for (const auto& os : maximal) {
    arrows.push_back(orbit_section_morphism(d, os));
    parts.push_back(arrows.back().source);
  }
  GSheaf source = disjoint_union(d.site, d.group, parts);
  std::vector<std::vector<int>> comp(d.site->size());
  for (int s = 0; s < d.site->size(); ++s)
    for (const auto& arrow : arrows)
      comp[s].insert(comp[s].end(), arrow.comp[s].begin(),
                     arrow.comp[s].end());
  return make_morphism(source, d, std::move(comp));
}

std::vector<int> maximal_to_pi0(const GSheaf& d) {
  auto maximal = maximal_orbit_sections(d);
  auto components = pi0(d);
  const int eta = d.site->generic();
  std::vector<int> out;
  for (const auto& os : maximal) {
    int pos = static_cast<int>(
        std::lower_bound(os.open.members.begin(), os.open.members.end(), eta) -
        os.open.members.begin());
    int elem = os.families.front()[pos];
    for (std::size_t c = 0; c < components.size(); ++c)
      if (std::binary_search(components[c].begin(), components[c].end(), elem))
        out.push_back(static_cast<int>(c));
  }
  return out;
}

bool Ladder3::agree() const {
  return restrictions == to_generic && to_generic == stalk_maps &&
         stalk_maps == maximal_monos && maximal_monos == unit_iso;
}

bool Ladder4::agree() const {
  return restrictions == to_generic && to_generic == stalk_maps &&
         stalk_maps == max_bijective && max_bijective == coproduct_iso &&
         coproduct_iso == unit_iso;
}

namespace {

struct LadderInputs {
  std::vector<Open> nonempty_opens;
  std::vector<SectionSet> section_sets;
};

LadderInputs ladder_inputs(const GSheaf& d) {
  LadderInputs in;
  for (const auto& u : opens(*d.site)) {
    if (u.empty()) continue;
    in.nonempty_opens.push_back(u);
    in.section_sets.push_back(sections(d, u));
  }
  return in;
}

bool check_restrictions(const GSheaf& d, const LadderInputs& in,
                        bool on_orbits) {
  for (std::size_t i = 0; i < in.nonempty_opens.size(); ++i)
    for (std::size_t j = 0; j < in.nonempty_opens.size(); ++j) {
      if (!in.nonempty_opens[j].subset_of(in.nonempty_opens[i])) continue;
      auto m = restriction_map(d, in.section_sets[i], in.section_sets[j]);
      if (on_orbits ? !injective_on_orbits(in.section_sets[i].action, m)
                    : !is_injective_map(m))
        return false;
    }
  return true;
}

bool check_to_generic(const GSheaf& d, const LadderInputs& in,
                      bool on_orbits) {
  const int eta = d.site->generic();
  for (const auto& secs : in.section_sets) {
    auto m = localization_map(secs, eta);
    if (on_orbits ? !injective_on_orbits(secs.action, m)
                  : !is_injective_map(m))
      return false;
  }
  return true;
}

bool check_stalk_maps(const GSheaf& d, bool on_orbits) {
  for (int s = 0; s < d.site->size(); ++s)
    for (int t = 0; t < d.site->size(); ++t) {
      if (s == t || !d.site->leq(t, s)) continue;
      if (on_orbits ? !injective_on_orbits(d.stalks[s], d.loc_map(s, t))
                    : !is_injective_map(d.loc_map(s, t)))
        return false;
    }
  return true;
}

}  // namespace

Ladder3 ladder3(const StarContext& ctx, const GSheaf& d) {
  (void)ctx;
  LadderInputs in = ladder_inputs(d);
  Ladder3 l;
  l.restrictions = check_restrictions(d, in, true);
  l.to_generic = check_to_generic(d, in, true);
  l.stalk_maps = check_stalk_maps(d, true);
  l.maximal_monos = true;
  for (const auto& os : maximal_orbit_sections(d))
    if (!is_mono(orbit_section_morphism(d, os))) l.maximal_monos = false;
  l.unit_iso = is_isomorphism(et_image(d).unit);
  return l;
}

Ladder4 ladder4(const StarContext& ctx, const GSheaf& d) {
  (void)ctx;
  LadderInputs in = ladder_inputs(d);
  Ladder4 l;
  l.restrictions = check_restrictions(d, in, false);
  l.to_generic = check_to_generic(d, in, false);
  l.stalk_maps = check_stalk_maps(d, false);

  // (f): the et conditions (stalk form) plus bijectivity onto pi0.
  bool et_holds = check_stalk_maps(d, true);
  auto to_pi0 = maximal_to_pi0(d);
  std::set<int> hit(to_pi0.begin(), to_pi0.end());
  l.max_bijective = et_holds && hit.size() == pi0(d).size() &&
                    to_pi0.size() == pi0(d).size();

  l.coproduct_iso = is_isomorphism(covering_morphism(d));
  l.unit_iso = is_isomorphism(set_image(d).unit);
  return l;
}

ClassificationReport classify(const StarContext& ctx, const GSheaf& d) {
  ClassificationReport r;
  r.is_star = is_star(ctx, d);
  r.ladder3 = ladder3(ctx, d);
  r.ladder4 = ladder4(ctx, d);
  if (!r.ladder3.agree())
    fail(Errc::LadderDisagreement, "orbit-injectivity ladder disagrees");
  if (!r.ladder4.agree())
    fail(Errc::LadderDisagreement, "injectivity ladder disagrees");
  r.is_et = r.is_star && r.ladder3.value();
  r.is_set = r.is_star && r.ladder4.value();
  r.is_loc = true;
  for (const auto& st : d.stalks)
    if (static_cast<int>(fixed_points(st, full_subgroup(*d.group)).size()) !=
        st.size())
      r.is_loc = false;
  r.pi0_size = pi0(d).size();
  r.support = support(d);
  return r;
}

bool properties_of_et(const StarContext& ctx, const GSheaf& d) {
  for (const auto& u : opens(*ctx.site)) {
    if (u.empty()) continue;
    SectionSet secs = sections(d, u);
    Subgroup k = inertia_of_open(ctx.inertia, u).subgroup;
    if (static_cast<int>(fixed_points(secs.action, k).size()) !=
        secs.action.size())
      return false;
  }
  return true;
}

GSheaf pullback(const SiteMap& f, const GSheaf& d) {
  if (d.site->labels() != f.target->labels())
    fail(Errc::SiteMismatch, "sheaf does not live on the map's target");
  std::vector<GAction> stalks;
  for (int s = 0; s < f.source->size(); ++s)
    stalks.push_back(d.stalks[f.map[s]]);
  std::map<std::pair<int, int>, std::vector<int>> loc;
  for (const auto& [a, b] : f.source->hasse())
    loc[{a, b}] = d.loc_map(f.map[a], f.map[b]);
  return make_sheaf(f.source, d.group, std::move(stalks), std::move(loc));
}

PushforwardData pushforward_et_data(const SiteMap& f, const GSheaf& e) {
  if (e.site->labels() != f.source->labels())
    fail(Errc::SiteMismatch, "sheaf does not live on the map's source");
  PushforwardData out;
  for (int s = 0; s < f.target->size(); ++s) {
    Open us = minimal_open(*f.target, s);
    std::vector<int> members;
    for (int t = 0; t < f.source->size(); ++t)
      if (us.contains(f.map[t])) members.push_back(t);
    out.sections.push_back(sections(e, make_open(*f.source,
                                                 std::move(members))));
  }
  std::vector<GAction> stalks;
  for (const auto& s : out.sections) stalks.push_back(s.action);
  std::map<std::pair<int, int>, std::vector<int>> loc;
  for (const auto& [a, b] : f.target->hasse())
    loc[{a, b}] = restriction_map(e, out.sections[a], out.sections[b]);
  GSheaf raw = make_sheaf(f.target, e.group, std::move(stalks),
                          std::move(loc));
  for (int s = 0; s < f.target->size(); ++s)
    out.fixed.push_back(
        fixed_points(raw.stalks[s], f.target_profile.inertia[s]));
  out.sheaf = subsheaf_from(raw, out.fixed);
  return out;
}

GSheaf pushforward_et(const SiteMap& f, const GSheaf& e) {
  return pushforward_et_data(f, e).sheaf;
}

bool EtaleSpace::local_iso() const {
  for (std::size_t p = 0; p < points.size(); ++p) {
    std::set<int> below;
    std::size_t count = 0;
    for (std::size_t q = 0; q < points.size(); ++q)
      if (leq[q][p]) {
        below.insert(projection[q]);
        ++count;
      }
    std::set<int> base_below;
    for (int t = 0; t < base->size(); ++t)
      if (base->leq(t, projection[p])) base_below.insert(t);
    if (below != base_below || count != base_below.size()) return false;
  }
  return true;
}

EtaleSpace espace_etale(const GSheaf& d) {
  for (const auto& st : d.stalks)
    if (static_cast<int>(fixed_points(st, full_subgroup(*d.group)).size()) !=
        st.size())
      fail(Errc::NontrivialAction, "espace etale needs a trivial action");
  EtaleSpace x;
  x.base = d.site;
  for (int s = 0; s < d.site->size(); ++s)
    for (int e = 0; e < d.stalks[s].size(); ++e) {
      x.points.emplace_back(s, e);
      x.labels.push_back(d.site->label(s) + ":" + d.stalks[s].labels[e]);
      x.projection.push_back(s);
    }
  const std::size_t n = x.points.size();
  x.leq.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto [t, y] = x.points[i];
      auto [s, e] = x.points[j];
      x.leq[i][j] = d.site->leq(t, s) && d.loc_map(s, t)[e] == y;
    }
  return x;
}

std::vector<std::vector<int>> espace_sections(const EtaleSpace& x,
                                              const Open& u) {
  // A continuous section over U assigns to each s in U a total point over s,
  // monotonically for generization.
  std::vector<std::vector<int>> fibers(u.members.size());
  for (std::size_t p = 0; p < u.members.size(); ++p)
    for (std::size_t q = 0; q < x.points.size(); ++q)
      if (x.projection[q] == u.members[p]) fibers[p].push_back(
          static_cast<int>(q));
  std::vector<std::vector<int>> out;
  if (u.empty()) {
    out.push_back({});
    return out;
  }
  for (const auto& f : fibers)
    if (f.empty()) return out;
  std::vector<std::size_t> idx(u.members.size(), 0);
  while (true) {
    std::vector<int> pick(u.members.size());
    for (std::size_t p = 0; p < idx.size(); ++p) pick[p] = fibers[p][idx[p]];
    bool ok = true;
    for (std::size_t p = 0; p < idx.size() && ok; ++p)
      for (std::size_t q = 0; q < idx.size() && ok; ++q)
        if (x.base->leq(u.members[p], u.members[q]) &&
            !x.leq[pick[p]][pick[q]])
          ok = false;
    if (ok) out.push_back(pick);
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == fibers[k].size()) {
      idx[k] = 0;
      ++k;
    }
    if (k == idx.size()) break;
  }
  return out;
}

std::vector<GSheaf> pi0_bruteforce(const GSheaf& d) {
  auto subsets_list = subsheaf_subsets(d);
  auto total = [](const std::vector<std::vector<int>>& subsets) {
    std::size_t n = 0;
    for (const auto& v : subsets) n += v.size();
    return n;
  };
  auto complement_of = [&](const std::vector<std::vector<int>>& subsets) {
    std::vector<std::vector<int>> c(subsets.size());
    for (std::size_t s = 0; s < subsets.size(); ++s)
      for (int x = 0; x < d.stalks[s].size(); ++x)
        if (!std::binary_search(subsets[s].begin(), subsets[s].end(), x))
          c[s].push_back(x);
    return c;
  };
  std::set<std::vector<std::vector<int>>> pool(subsets_list.begin(),
                                               subsets_list.end());
  std::vector<std::vector<std::vector<int>>> complemented;
  for (const auto& subsets : subsets_list) {
    if (total(subsets) == 0) continue;
    if (pool.count(complement_of(subsets))) complemented.push_back(subsets);
  }
  auto contained = [](const std::vector<std::vector<int>>& a,
                      const std::vector<std::vector<int>>& b) {
    for (std::size_t s = 0; s < a.size(); ++s)
      if (!std::includes(b[s].begin(), b[s].end(), a[s].begin(), a[s].end()))
        return false;
    return true;
  };
  std::vector<GSheaf> out;
  for (const auto& a : complemented) {
    bool minimal = true;
    for (const auto& b : complemented)
      if (&a != &b && contained(b, a) && !(a == b)) minimal = false;
    if (minimal) out.push_back(subsheaf_from(d, a));
  }
  return out;
}

}  // namespace gshv
