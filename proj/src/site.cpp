#include "gshv/site.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <set>

namespace gshv {

int FiniteSite::index_of(const std::string& l) const {
  for (int i = 0; i < size(); ++i)
    if (labels_[i] == l) return i;
  return -1;
}

bool Open::contains(int p) const {
  return std::binary_search(members.begin(), members.end(), p);
}

bool Open::subset_of(const Open& o) const {
  return std::includes(o.members.begin(), o.members.end(), members.begin(),
                       members.end());
}

std::shared_ptr<const FiniteSite> validate_site(
    const std::vector<std::string>& points,
    const std::vector<std::pair<std::string, std::string>>& edges,
    const std::string& generic) {
  auto site = std::shared_ptr<FiniteSite>(new FiniteSite());
  {
    std::set<std::string> seen;
    for (const auto& p : points)
      if (!seen.insert(p).second) fail(Errc::DuplicatePoint, p);
  }
  site->labels_ = points;
  const int n = site->size();
  site->generic_ = site->index_of(generic);
  if (site->generic_ < 0) fail(Errc::UnknownPoint, "generic point " + generic);

  // transitive closure of the given generization edges, reflexive
  auto& leq = site->leq_;
  leq.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  for (const auto& [from, to] : edges) {
    int f = site->index_of(from);
    int t = site->index_of(to);
    if (f < 0) fail(Errc::UnknownPoint, from);
    if (t < 0) fail(Errc::UnknownPoint, to);
    leq[t][f] = true;  // "to" generizes "from"
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && leq[i][j] && leq[j][i])
        fail(Errc::CycleDetected,
             site->labels_[i] + " and " + site->labels_[j]);
  for (int i = 0; i < n; ++i)
    if (!leq[site->generic_][i])
      fail(Errc::GenericNotMinimal,
           generic + " does not generize " + site->labels_[i]);

  // Hasse diagram: covering pairs of the closure
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (s == t || !leq[t][s]) continue;  // t < s required
      bool covering = true;
      for (int m = 0; m < n; ++m)
        if (m != s && m != t && leq[t][m] && leq[m][s]) covering = false;
      if (covering) site->hasse_.emplace_back(s, t);
    }
  std::sort(site->hasse_.begin(), site->hasse_.end());
  return site;
}

std::shared_ptr<const FiniteSite> chain_site(int n) {
  if (n < 1) fail(Errc::SchemaError, "chain needs at least one point");
  std::vector<std::string> points{"eta"};
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 1; i < n; ++i) {
    points.push_back("s" + std::to_string(i));
    edges.emplace_back(points[i], points[i - 1]);
  }
  return validate_site(points, edges, "eta");
}

std::vector<Open> opens(const FiniteSite& site) {
  const int n = site.size();
  if (n > 20) fail(Errc::TooLarge, "open enumeration beyond 20 points");
  std::vector<Open> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool closed = true;
    for (int s = 0; s < n && closed; ++s) {
      if (!(mask & (1u << s))) continue;
      for (int t = 0; t < n; ++t)
        if (site.leq(t, s) && !(mask & (1u << t))) closed = false;
    }
    if (!closed) continue;
    Open u;
    for (int s = 0; s < n; ++s)
      if (mask & (1u << s)) u.members.push_back(s);
    out.push_back(std::move(u));
  }
  std::sort(out.begin(), out.end(), [](const Open& a, const Open& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members < b.members;
  });
  return out;
}

Open minimal_open(const FiniteSite& site, int s) {
  Open u;
  for (int t = 0; t < site.size(); ++t)
    if (site.leq(t, s)) u.members.push_back(t);
  return u;
}

Open whole_space(const FiniteSite& site) {
  Open u;
  u.members.resize(site.size());
  for (int i = 0; i < site.size(); ++i) u.members[i] = i;
  return u;
}

Open make_open(const FiniteSite& site, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (int s : members) {
    if (s < 0 || s >= site.size()) fail(Errc::UnknownPoint, std::to_string(s));
    for (int t = 0; t < site.size(); ++t)
      if (site.leq(t, s) &&
          !std::binary_search(members.begin(), members.end(), t))
        fail(Errc::NotOpen, "missing generization " + site.label(t) + " of " +
                                site.label(s));
  }
  return Open{std::move(members)};
}

Open intersect(const Open& a, const Open& b) {
  Open out;
  std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(),
                        b.members.end(), std::back_inserter(out.members));
  return out;
}

Open unite(const Open& a, const Open& b) {
  Open out;
  std::set_union(a.members.begin(), a.members.end(), b.members.begin(),
                 b.members.end(), std::back_inserter(out.members));
  return out;
}

OpenInertia inertia_of_open(const InertiaProfile& profile, const Open& u) {
  if (u.empty()) return {trivial_subgroup(), true};
  std::vector<int> gens;
  for (int s : u.members)
    gens.insert(gens.end(), profile.inertia[s].elements.begin(),
                profile.inertia[s].elements.end());
  return {subgroup_generated(*profile.group, gens), false};
}

InertiaProfile make_profile(std::shared_ptr<const FiniteSite> site,
                            std::shared_ptr<const FiniteGroup> group,
                            std::vector<Subgroup> inertia) {
  InertiaProfile p{std::move(site), std::move(group), std::move(inertia)};
  validate_profile(p);
  return p;
}

void validate_profile(const InertiaProfile& p) {
  if (static_cast<int>(p.inertia.size()) != p.site->size())
    fail(Errc::SchemaError, "inertia profile has wrong number of points");
  for (int s = 0; s < p.site->size(); ++s) {
    validate_subgroup(*p.group, p.inertia[s]);
    if (!is_normal(*p.group, p.inertia[s]))
      fail(Errc::InertiaNotNormal, "I(" + p.site->label(s) + ")");
  }
  if (p.inertia[p.site->generic()].size() != 1)
    fail(Errc::InertiaGenericNotTrivial,
         "I(" + p.site->label(p.site->generic()) + ")");
  for (int a = 0; a < p.site->size(); ++a)
    for (int b = 0; b < p.site->size(); ++b)
      if (p.site->leq(a, b) && !p.inertia[a].subset_of(p.inertia[b]))
        fail(Errc::InertiaNotMonotone, "I(" + p.site->label(a) +
                                           ") not inside I(" +
                                           p.site->label(b) + ")");
}

SiteMap validate_site_map(const InertiaProfile& source,
                          const InertiaProfile& target,
                          const std::vector<int>& map) {
  if (source.group->raw_table() != target.group->raw_table())
    fail(Errc::SiteMismatch, "site map across different groups");
  if (static_cast<int>(map.size()) != source.site->size())
    fail(Errc::SchemaError, "point map has wrong size");
  for (int v : map)
    if (v < 0 || v >= target.site->size())
      fail(Errc::UnknownPoint, std::to_string(v));
  for (int a = 0; a < source.site->size(); ++a)
    for (int b = 0; b < source.site->size(); ++b)
      if (source.site->leq(a, b) && !target.site->leq(map[a], map[b]))
        fail(Errc::NotMonotone,
             source.site->label(a) + " <= " + source.site->label(b));
  if (map[source.site->generic()] != target.site->generic())
    fail(Errc::GenericNotPreserved,
         "image of " + source.site->label(source.site->generic()));
  for (int s = 0; s < source.site->size(); ++s)
    if (!source.inertia[s].subset_of(target.inertia[map[s]]))
      fail(Errc::InertiaIncompatible, "at " + source.site->label(s));
  return SiteMap{source.site, target.site, source, target, map};
}

std::shared_ptr<const FiniteSite> restrict_site(const FiniteSite& site,
                                                const Open& u,
                                                std::vector<int>* point_index) {
  if (u.empty()) fail(Errc::SchemaError, "cannot restrict to the empty open");
  std::vector<std::string> points;
  for (int s : u.members) points.push_back(site.label(s));
  std::vector<std::pair<std::string, std::string>> edges;
  for (int a : u.members)
    for (int b : u.members)
      if (a != b && site.leq(b, a)) edges.emplace_back(site.label(a),
                                                       site.label(b));
  auto sub = validate_site(points, edges, site.label(site.generic()));
  if (point_index) {
    point_index->assign(site.size(), -1);
    for (std::size_t i = 0; i < u.members.size(); ++i)
      (*point_index)[u.members[i]] = static_cast<int>(i);
  }
  return sub;
}

}  // namespace gshv
