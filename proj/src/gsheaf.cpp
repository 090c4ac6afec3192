#include "gshv/gsheaf.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>

namespace gshv {

namespace {

std::string point_key(const GSheaf& d, int s) { return d.site->label(s); }

std::vector<int> identity_map(int n) {
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  return id;
}

// Points ordered from generic to special: by number of strict generizations.
std::vector<int> topological_points(const FiniteSite& site) {
  std::vector<int> order(site.size());
  std::iota(order.begin(), order.end(), 0);
  auto depth = [&](int s) {
    int d = 0;
    for (int t = 0; t < site.size(); ++t)
      if (t != s && site.leq(t, s)) ++d;
    return d;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return depth(a) < depth(b); });
  return order;
}

}  // namespace

const std::vector<int>& GSheaf::loc_map(int s, int s2) const {
  return derived[s][s2];
}

int GSheaf::total_elements() const {
  int n = 0;
  for (const auto& st : stalks) n += st.size();
  return n;
}

GSheaf make_sheaf(std::shared_ptr<const FiniteSite> site,
                  std::shared_ptr<const FiniteGroup> group,
                  std::vector<GAction> stalks,
                  std::map<std::pair<int, int>, std::vector<int>> loc) {
  GSheaf d;
  d.site = std::move(site);
  d.group = std::move(group);
  d.stalks = std::move(stalks);
  d.loc = std::move(loc);

  const int n = d.site->size();
  if (static_cast<int>(d.stalks.size()) != n)
    fail(Errc::SchemaError, "one stalk per point required");
  for (int s = 0; s < n; ++s) {
    if (d.stalks[s].group->raw_table() != d.group->raw_table())
      fail(Errc::SiteMismatch, "stalk at " + point_key(d, s) +
                                   " over a different group");
    validate_action(d.stalks[s]);
  }

  for (const auto& [edge, map] : d.loc) {
    if (std::find(d.site->hasse().begin(), d.site->hasse().end(), edge) ==
        d.site->hasse().end())
      fail(Errc::UnknownPoint, "localization on a non-Hasse edge (" +
                                   std::to_string(edge.first) + "," +
                                   std::to_string(edge.second) + ")");
  }
  for (const auto& edge : d.site->hasse()) {
    auto it = d.loc.find(edge);
    if (it == d.loc.end())
      fail(Errc::SchemaError, "missing localization map on edge " +
                                  point_key(d, edge.first) + " -> " +
                                  point_key(d, edge.second));
    const auto& [s, t] = edge;
    const auto& map = it->second;
    if (static_cast<int>(map.size()) != d.stalks[s].size())
      fail(Errc::SchemaError, "localization map on " + point_key(d, s) +
                                  " -> " + point_key(d, t) + " has wrong size");
    for (int v : map)
      if (v < 0 || v >= d.stalks[t].size())
        fail(Errc::SchemaError, "localization into " + point_key(d, t) +
                                    " out of range (empty or missing target "
                                    "stalk violates reachability)");
    for (int g = 0; g < d.group->order(); ++g)
      for (int x = 0; x < d.stalks[s].size(); ++x)
        if (map[d.stalks[s].act[g][x]] != d.stalks[t].act[g][map[x]])
          fail(Errc::NotEquivariant,
               "edge " + point_key(d, s) + " -> " + point_key(d, t) +
                   " at (g,x)=(" + std::to_string(g) + "," +
                   d.stalks[s].labels[x] + ")");
  }

  // Derived localizations along Hasse paths; all paths must agree.
  d.derived.assign(n, std::vector<std::vector<int>>(n));
  std::vector<std::vector<bool>> known(n, std::vector<bool>(n, false));
  for (int s = 0; s < n; ++s) {
    d.derived[s][s] = identity_map(d.stalks[s].size());
    known[s][s] = true;
  }
  for (int pass = 0; pass < n; ++pass) {
    for (const auto& [a, b] : d.site->hasse()) {
      const auto& edge_map = d.loc.at({a, b});
      for (int s = 0; s < n; ++s) {
        if (!known[s][a]) continue;
        std::vector<int> composite(d.stalks[s].size());
        for (int x = 0; x < d.stalks[s].size(); ++x)
          composite[x] = edge_map[d.derived[s][a][x]];
        if (!known[s][b]) {
          d.derived[s][b] = std::move(composite);
          known[s][b] = true;
        } else if (d.derived[s][b] != composite) {
          std::string witness;
          for (int x = 0; x < d.stalks[s].size(); ++x)
            if (d.derived[s][b][x] != composite[x]) {
              witness = d.stalks[s].labels[x] + " -> " +
                        d.stalks[b].labels[d.derived[s][b][x]] + " vs " +
                        d.stalks[b].labels[composite[x]];
              break;
            }
          fail(Errc::PathIncoherent,
               "two composites " + point_key(d, s) + " -> " + point_key(d, b) +
                   " disagree at " + witness);
        }
      }
    }
  }
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      if (d.site->leq(t, s) && !known[s][t])
        fail(Errc::PathIncoherent, "no path realizes " + point_key(d, s) +
                                       " -> " + point_key(d, t));
  return d;
}

GSheaf initial_sheaf(std::shared_ptr<const FiniteSite> site,
                     std::shared_ptr<const FiniteGroup> group) {
  std::vector<GAction> stalks(site->size(), empty_gset(group));
  std::map<std::pair<int, int>, std::vector<int>> loc;
  for (const auto& e : site->hasse()) loc[e] = {};
  return make_sheaf(site, group, std::move(stalks), std::move(loc));
}

GSheaf terminal_sheaf(std::shared_ptr<const FiniteSite> site,
                      std::shared_ptr<const FiniteGroup> group) {
  std::vector<GAction> stalks(site->size(), trivial_gset(group, {"*"}));
  std::map<std::pair<int, int>, std::vector<int>> loc;
  for (const auto& e : site->hasse()) loc[e] = {0};
  return make_sheaf(site, group, std::move(stalks), std::move(loc));
}

SheafMorphism make_morphism(GSheaf source, GSheaf target,
                            std::vector<std::vector<int>> comp) {
  if (source.site->labels() != target.site->labels() ||
      source.group->raw_table() != target.group->raw_table())
    fail(Errc::SiteMismatch, "morphism across different sites or groups");
  const int n = source.site->size();
  if (static_cast<int>(comp.size()) != n)
    fail(Errc::SchemaError, "one component per point required");
  for (int s = 0; s < n; ++s) {
    const auto& m = comp[s];
    if (static_cast<int>(m.size()) != source.stalks[s].size())
      fail(Errc::SchemaError, "component at " + source.site->label(s) +
                                  " has wrong size");
    for (int v : m)
      if (v < 0 || v >= target.stalks[s].size())
        fail(Errc::IdOutOfRange, "component value at " + source.site->label(s));
    for (int g = 0; g < source.group->order(); ++g)
      for (int x = 0; x < source.stalks[s].size(); ++x)
        if (m[source.stalks[s].act[g][x]] != target.stalks[s].act[g][m[x]])
          fail(Errc::NotEquivariant, "component at " + source.site->label(s));
  }
  for (const auto& [a, b] : source.site->hasse())
    for (int x = 0; x < source.stalks[a].size(); ++x)
      if (comp[b][source.loc.at({a, b})[x]] !=
          target.loc.at({a, b})[comp[a][x]])
        fail(Errc::NotNatural, "edge " + source.site->label(a) + " -> " +
                                   source.site->label(b));
  SheafMorphism f;
  f.source = std::move(source);
  f.target = std::move(target);
  f.comp = std::move(comp);
  return f;
}

SheafMorphism identity_morphism(const GSheaf& d) {
  std::vector<std::vector<int>> comp;
  for (const auto& st : d.stalks) comp.push_back(identity_map(st.size()));
  return make_morphism(d, d, std::move(comp));
}

SheafMorphism compose(const SheafMorphism& g, const SheafMorphism& f) {
  std::vector<std::vector<int>> comp;
  for (std::size_t s = 0; s < f.comp.size(); ++s) {
    std::vector<int> m(f.comp[s].size());
    for (std::size_t x = 0; x < m.size(); ++x) m[x] = g.comp[s][f.comp[s][x]];
    comp.push_back(std::move(m));
  }
  return make_morphism(f.source, g.target, std::move(comp));
}

bool same_morphism(const SheafMorphism& a, const SheafMorphism& b) {
  return a.comp == b.comp;
}

int SectionSet::index_of(const std::vector<int>& family) const {
  auto it = std::lower_bound(families.begin(), families.end(), family);
  if (it == families.end() || *it != family) return -1;
  return static_cast<int>(it - families.begin());
}

int SectionSet::position_of_point(int s) const {
  auto it = std::lower_bound(points.begin(), points.end(), s);
  if (it == points.end() || *it != s) return -1;
  return static_cast<int>(it - points.begin());
}

SectionSet sections(const GSheaf& d, const Open& u) {
  SectionSet out;
  out.open = u;
  out.points = u.members;
  if (u.empty()) {
    out.families = {{}};
    out.action = trivial_gset(d.group, {"*"});
    return out;
  }

  // A compatible family is determined by its values at the maximal points
  // of U; the remaining values are forced by localization and must agree
  // where the down-sets of two maximal points overlap.
  std::vector<int> maximal;
  for (int s : u.members) {
    bool is_max = true;
    for (int t : u.members)
      if (t != s && d.site->leq(s, t)) is_max = false;
    if (is_max) maximal.push_back(s);
  }

  std::vector<std::vector<int>> families;
  std::vector<int> choice(maximal.size(), 0);
  bool nonempty = true;
  for (int m : maximal)
    if (d.stalks[m].size() == 0) nonempty = false;
  if (nonempty) {
    while (true) {
      std::vector<int> family(u.members.size(), -1);
      bool ok = true;
      for (std::size_t k = 0; k < maximal.size() && ok; ++k) {
        for (std::size_t p = 0; p < u.members.size() && ok; ++p) {
          int t = u.members[p];
          if (!d.site->leq(t, maximal[k])) continue;
          int v = d.locate(maximal[k], t, choice[k]);
          if (family[p] == -1)
            family[p] = v;
          else if (family[p] != v)
            ok = false;
        }
      }
      if (ok) families.push_back(std::move(family));
      std::size_t k = 0;
      while (k < choice.size() &&
             ++choice[k] == d.stalks[maximal[k]].size()) {
        choice[k] = 0;
        ++k;
      }
      if (k == choice.size()) break;
    }
  }
  std::sort(families.begin(), families.end());
  out.families = std::move(families);

  GAction act;
  act.group = d.group;
  for (const auto& fam : out.families) {
    if (u.members.size() == 1) {
      act.labels.push_back(d.stalks[u.members[0]].labels[fam[0]]);
    } else {
      std::string l = "(";
      for (std::size_t p = 0; p < fam.size(); ++p) {
        if (p) l += ",";
        l += d.stalks[u.members[p]].labels[fam[p]];
      }
      l += ")";
      act.labels.push_back(l);
    }
  }
  act.act.assign(d.group->order(), std::vector<int>(out.families.size()));
  for (int g = 0; g < d.group->order(); ++g)
    for (std::size_t i = 0; i < out.families.size(); ++i) {
      std::vector<int> moved(out.families[i].size());
      for (std::size_t p = 0; p < moved.size(); ++p)
        moved[p] = d.stalks[u.members[p]].act[g][out.families[i][p]];
      int j = static_cast<int>(
          std::lower_bound(out.families.begin(), out.families.end(), moved) -
          out.families.begin());
      act.act[g][i] = j;
    }
  out.action = std::move(act);
  return out;
}

std::vector<int> restriction_map(const GSheaf& d, const SectionSet& su,
                                 const SectionSet& sv) {
  (void)d;
  if (!sv.open.subset_of(su.open))
    fail(Errc::SchemaError, "restriction target is not a subopen");
  std::vector<int> out(su.families.size());
  for (std::size_t i = 0; i < su.families.size(); ++i) {
    std::vector<int> restricted(sv.points.size());
    for (std::size_t p = 0; p < sv.points.size(); ++p)
      restricted[p] = su.families[i][su.position_of_point(sv.points[p])];
    int j = sv.index_of(restricted);
    if (j < 0) fail(Errc::SchemaError, "restricted family is not a section");
    out[i] = j;
  }
  return out;
}

std::vector<int> localization_map(const SectionSet& su, int s) {
  int pos = su.position_of_point(s);
  if (pos < 0) fail(Errc::UnknownPoint, "point not in open");
  std::vector<int> out(su.families.size());
  for (std::size_t i = 0; i < su.families.size(); ++i)
    out[i] = su.families[i][pos];
  return out;
}

bool is_mono(const SheafMorphism& f) {
  for (const auto& m : f.comp)
    if (!is_injective_map(m)) return false;
  return true;
}

bool is_epi(const SheafMorphism& f) {
  for (std::size_t s = 0; s < f.comp.size(); ++s) {
    std::vector<bool> hit(f.target.stalks[s].size(), false);
    for (int v : f.comp[s]) hit[v] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) return false;
  }
  return true;
}

bool is_isomorphism(const SheafMorphism& f) { return is_mono(f) && is_epi(f); }

GSheaf product_sheaf(const GSheaf& d, const GSheaf& e) {
  if (d.site->labels() != e.site->labels() ||
      d.group->raw_table() != e.group->raw_table())
    fail(Errc::SiteMismatch, "product across different sites or groups");
  std::vector<GAction> stalks;
  for (int s = 0; s < d.site->size(); ++s)
    stalks.push_back(product_action(d.stalks[s], e.stalks[s]));
  std::map<std::pair<int, int>, std::vector<int>> loc;
  for (const auto& [a, b] : d.site->hasse()) {
    std::vector<int> m(stalks[a].size());
    for (int i = 0; i < d.stalks[a].size(); ++i)
      for (int j = 0; j < e.stalks[a].size(); ++j)
        m[pair_index(e.stalks[a], i, j)] =
            pair_index(e.stalks[b], d.loc.at({a, b})[i], e.loc.at({a, b})[j]);
    loc[{a, b}] = std::move(m);
  }
  return make_sheaf(d.site, d.group, std::move(stalks), std::move(loc));
}

SheafMorphism product_projection(const GSheaf& d, const GSheaf& e, int which) {
  GSheaf p = product_sheaf(d, e);
  std::vector<std::vector<int>> comp;
  for (int s = 0; s < d.site->size(); ++s) {
    std::vector<int> m(p.stalks[s].size());
    for (int i = 0; i < d.stalks[s].size(); ++i)
      for (int j = 0; j < e.stalks[s].size(); ++j)
        m[pair_index(e.stalks[s], i, j)] = which == 0 ? i : j;
    comp.push_back(std::move(m));
  }
  return make_morphism(p, which == 0 ? d : e, std::move(comp));
}

ImageFactorization image(const SheafMorphism& f) {
  const GSheaf& d = f.source;
  const GSheaf& e = f.target;
  std::vector<std::vector<int>> subsets(e.stalks.size());
  for (std::size_t s = 0; s < e.stalks.size(); ++s) {
    std::set<int> im(f.comp[s].begin(), f.comp[s].end());
    subsets[s].assign(im.begin(), im.end());
  }
  ImageFactorization out;
  out.image = subsheaf_from(e, subsets);
  out.mono = subsheaf_inclusion(e, subsets);
  std::vector<std::vector<int>> epi_comp(e.stalks.size());
  for (std::size_t s = 0; s < e.stalks.size(); ++s) {
    epi_comp[s].resize(d.stalks[s].size());
    for (int x = 0; x < d.stalks[s].size(); ++x)
      epi_comp[s][x] = static_cast<int>(
          std::lower_bound(subsets[s].begin(), subsets[s].end(),
                           f.comp[s][x]) -
          subsets[s].begin());
  }
  out.epi = make_morphism(d, out.image, std::move(epi_comp));
  return out;
}

GSheaf subsheaf_from(const GSheaf& d,
                     const std::vector<std::vector<int>>& subsets) {
  std::vector<GAction> stalks;
  for (std::size_t s = 0; s < d.stalks.size(); ++s)
    stalks.push_back(subaction(d.stalks[s], subsets[s]));
  std::map<std::pair<int, int>, std::vector<int>> loc;
  for (const auto& [a, b] : d.site->hasse()) {
    std::vector<int> m(subsets[a].size());
    for (std::size_t i = 0; i < subsets[a].size(); ++i) {
      int img = d.loc.at({a, b})[subsets[a][i]];
      auto it = std::lower_bound(subsets[b].begin(), subsets[b].end(), img);
      if (it == subsets[b].end() || *it != img)
        fail(Errc::SchemaError, "subsets not localization-stable on edge " +
                                    d.site->label(a) + " -> " +
                                    d.site->label(b));
      m[i] = static_cast<int>(it - subsets[b].begin());
    }
    loc[{a, b}] = std::move(m);
  }
  return make_sheaf(d.site, d.group, std::move(stalks), std::move(loc));
}

SheafMorphism subsheaf_inclusion(const GSheaf& d,
                                 const std::vector<std::vector<int>>& subsets) {
  GSheaf sub = subsheaf_from(d, subsets);
  std::vector<std::vector<int>> comp;
  for (const auto& s : subsets) comp.push_back(s);
  return make_morphism(sub, d, std::move(comp));
}

GSheaf disjoint_union(std::shared_ptr<const FiniteSite> site,
                      std::shared_ptr<const FiniteGroup> group,
                      const std::vector<GSheaf>& parts) {
  for (const auto& p : parts)
    if (p.site->labels() != site->labels() ||
        p.group->raw_table() != group->raw_table())
      fail(Errc::SiteMismatch, "disjoint union across different sites");
  std::vector<GAction> stalks;
  for (int s = 0; s < site->size(); ++s) {
    GAction st;
    st.group = group;
    st.act.assign(group->order(), {});
    for (std::size_t k = 0; k < parts.size(); ++k) {
      int offset = st.size();
      for (const auto& l : parts[k].stalks[s].labels)
        st.labels.push_back(std::to_string(k) + ":" + l);
      for (int g = 0; g < group->order(); ++g)
        for (int x = 0; x < parts[k].stalks[s].size(); ++x)
          st.act[g].push_back(parts[k].stalks[s].act[g][x] + offset);
    }
    stalks.push_back(std::move(st));
  }
  std::map<std::pair<int, int>, std::vector<int>> loc;
  for (const auto& [a, b] : site->hasse()) {
    std::vector<int> m;
    int offset_b = 0;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      for (int x = 0; x < parts[k].stalks[a].size(); ++x)
        m.push_back(parts[k].loc.at({a, b})[x] + offset_b);
      offset_b += parts[k].stalks[b].size();
    }
    loc[{a, b}] = std::move(m);
  }
  return make_sheaf(site, group, std::move(stalks), std::move(loc));
}

std::vector<std::vector<std::vector<int>>> subsheaf_subsets(const GSheaf& d) {
  if (d.total_elements() > 16)
    fail(Errc::TooLarge, "subsheaf enumeration beyond 16 stalk elements");
  const int n = d.site->size();
  std::vector<std::vector<std::vector<int>>> stalk_orbits;
  for (int s = 0; s < n; ++s) stalk_orbits.push_back(orbits(d.stalks[s]));

  std::vector<std::vector<std::vector<int>>> all;  // chosen subsets per point
  std::vector<std::vector<int>> current(n);
  std::function<void(int)> go = [&](int s) {
    if (s == n) {
      for (const auto& [a, b] : d.site->hasse())
        for (int x : current[a])
          if (!std::binary_search(current[b].begin(), current[b].end(),
                                  d.loc.at({a, b})[x]))
            return;
      all.push_back(current);
      return;
    }
    const auto& os = stalk_orbits[s];
    for (std::uint32_t mask = 0; mask < (1u << os.size()); ++mask) {
      current[s].clear();
      for (std::size_t k = 0; k < os.size(); ++k)
        if (mask & (1u << k))
          current[s].insert(current[s].end(), os[k].begin(), os[k].end());
      std::sort(current[s].begin(), current[s].end());
      go(s + 1);
    }
    current[s].clear();
  };
  go(0);

  std::sort(all.begin(), all.end(),
            [](const std::vector<std::vector<int>>& a,
               const std::vector<std::vector<int>>& b) {
              std::size_t na = 0, nb = 0;
              for (const auto& v : a) na += v.size();
              for (const auto& v : b) nb += v.size();
              if (na != nb) return na < nb;
              return a < b;
            });
  return all;
}

std::vector<GSheaf> subsheaves(const GSheaf& d) {
  std::vector<GSheaf> out;
  for (const auto& subsets : subsheaf_subsets(d))
    out.push_back(subsheaf_from(d, subsets));
  return out;
}

namespace {

struct MorphismSearch {
  const GSheaf& d;
  const GSheaf& e;
  bool bijective_only;
  bool first_only;
  std::vector<int> order;
  std::vector<std::vector<std::vector<int>>> candidates;  // per order slot
  std::vector<std::vector<int>> chosen;                    // per point
  std::vector<bool> assigned;
  std::vector<SheafMorphism>* out;
  bool found = false;

  bool natural_with_assigned(int s, const std::vector<int>& m) {
    for (const auto& [a, b] : d.site->hasse()) {
      if (a != s && b != s) continue;
      const std::vector<int>* ma = nullptr;
      const std::vector<int>* mb = nullptr;
      if (a == s) {
        if (!assigned[b]) continue;
        ma = &m;
        mb = &chosen[b];
      } else {
        if (!assigned[a]) continue;
        mb = &m;
        ma = &chosen[a];
      }
      for (int x = 0; x < d.stalks[a].size(); ++x)
        if ((*mb)[d.loc.at({a, b})[x]] != e.loc.at({a, b})[(*ma)[x]])
          return false;
    }
    return true;
  }

  void go(std::size_t k) {
    if (found && first_only) return;
    if (k == order.size()) {
      std::vector<std::vector<int>> comp(d.site->size());
      for (int s = 0; s < d.site->size(); ++s) comp[s] = chosen[s];
      out->push_back(make_morphism(d, e, std::move(comp)));
      found = true;
      return;
    }
    int s = order[k];
    for (const auto& m : candidates[k]) {
      if (bijective_only && !is_injective_map(m)) continue;
      if (!natural_with_assigned(s, m)) continue;
      assigned[s] = true;
      chosen[s] = m;
      go(k + 1);
      assigned[s] = false;
      chosen[s].clear();
      if (found && first_only) return;
    }
  }
};

std::vector<SheafMorphism> search_morphisms(const GSheaf& d, const GSheaf& e,
                                            bool bijective_only,
                                            bool first_only) {
  if (d.site->labels() != e.site->labels() ||
      d.group->raw_table() != e.group->raw_table())
    fail(Errc::SiteMismatch, "hom-set across different sites or groups");
  std::vector<SheafMorphism> out;
  MorphismSearch ms{d, e, bijective_only, first_only, {}, {}, {}, {}, &out};
  ms.order = topological_points(*d.site);
  ms.chosen.assign(d.site->size(), {});
  ms.assigned.assign(d.site->size(), false);
  for (int s : ms.order) {
    auto maps = equivariant_maps(d.stalks[s], e.stalks[s]);
    if (bijective_only && d.stalks[s].size() != e.stalks[s].size()) return out;
    ms.candidates.push_back(std::move(maps));
  }
  ms.go(0);
  return out;
}

}  // namespace

std::vector<SheafMorphism> enumerate_morphisms(const GSheaf& d,
                                               const GSheaf& e) {
  return search_morphisms(d, e, false, false);
}

std::size_t count_morphisms(const GSheaf& d, const GSheaf& e) {
  return search_morphisms(d, e, false, false).size();
}

bool sheaf_isomorphic(const GSheaf& d, const GSheaf& e) {
  if (d.site->labels() != e.site->labels()) return false;
  for (int s = 0; s < d.site->size(); ++s) {
    if (d.stalks[s].size() != e.stalks[s].size()) return false;
    auto sizes = [](const GAction& a) {
      std::vector<std::size_t> v;
      for (const auto& o : orbits(a)) v.push_back(o.size());
      std::sort(v.begin(), v.end());
      return v;
    };
    if (sizes(d.stalks[s]) != sizes(e.stalks[s])) return false;
  }
  return !search_morphisms(d, e, true, true).empty();
}

}  // namespace gshv
