#include "gshv/gset.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace gshv {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotLatinSquare: return "NotLatinSquare";
    case Errc::NotAssociative: return "NotAssociative";
    case Errc::NoIdentity: return "NoIdentity";
    case Errc::NoInverse: return "NoInverse";
    case Errc::IdOutOfRange: return "IdOutOfRange";
    case Errc::NotEquivariantAction: return "NotEquivariantAction";
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::GenericNotMinimal: return "GenericNotMinimal";
    case Errc::DuplicatePoint: return "DuplicatePoint";
    case Errc::NotOpen: return "NotOpen";
    case Errc::InertiaNotNormal: return "InertiaNotNormal";
    case Errc::InertiaNotMonotone: return "InertiaNotMonotone";
    case Errc::InertiaGenericNotTrivial: return "InertiaGenericNotTrivial";
    case Errc::NotMonotone: return "NotMonotone";
    case Errc::GenericNotPreserved: return "GenericNotPreserved";
    case Errc::InertiaIncompatible: return "InertiaIncompatible";
    case Errc::NotEquivariant: return "NotEquivariant";
    case Errc::PathIncoherent: return "PathIncoherent";
    case Errc::UnknownPoint: return "UnknownPoint";
    case Errc::NotNatural: return "NotNatural";
    case Errc::SiteMismatch: return "SiteMismatch";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NotStar: return "NotStar";
    case Errc::NontrivialAction: return "NontrivialAction";
    case Errc::UnknownComponent: return "UnknownComponent";
    case Errc::LadderDisagreement: return "LadderDisagreement";
    case Errc::ParseError: return "ParseError";
    case Errc::SchemaError: return "SchemaError";
    case Errc::BoundsExceeded: return "BoundsExceeded";
  }
  return "UnknownError";
}

FiniteGroup::FiniteGroup(int order, std::vector<int> table)
    : order_(order), table_(std::move(table)), inverse_(order) {
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) {
      if (mul(a, b) == 0) inverse_[a] = b;
    }
  }
}

std::vector<AxiomViolation> group_violations(
    const std::vector<std::vector<int>>& table) {
  std::vector<AxiomViolation> out;
  const int n = static_cast<int>(table.size());
  if (n == 0) {
    out.push_back({Errc::NotLatinSquare, "empty table"});
    return out;
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n) {
      out.push_back({Errc::NotLatinSquare,
                     "row " + std::to_string(i) + " has wrong length"});
      return out;
    }
    for (int j = 0; j < n; ++j) {
      if (table[i][j] < 0 || table[i][j] >= n) {
        out.push_back({Errc::IdOutOfRange,
                       "entry (" + std::to_string(i) + "," + std::to_string(j) +
                           ") = " + std::to_string(table[i][j])});
        return out;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    std::vector<bool> row(n, false), col(n, false);
    for (int j = 0; j < n; ++j) {
      if (row[table[i][j]]) {
        out.push_back({Errc::NotLatinSquare,
                       "row " + std::to_string(i) + " repeats id " +
                           std::to_string(table[i][j])});
        break;
      }
      row[table[i][j]] = true;
    }
    for (int j = 0; j < n; ++j) {
      if (col[table[j][i]]) {
        out.push_back({Errc::NotLatinSquare,
                       "column " + std::to_string(i) + " repeats id " +
                           std::to_string(table[j][i])});
        break;
      }
      col[table[j][i]] = true;
    }
    if (!out.empty()) return out;
  }
  for (int x = 0; x < n; ++x) {
    if (table[0][x] != x || table[x][0] != x) {
      out.push_back({Errc::NoIdentity,
                     "id 0 is not a two-sided identity at element " +
                         std::to_string(x)});
      return out;
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          out.push_back({Errc::NotAssociative,
                         "triple (" + std::to_string(a) + "," +
                             std::to_string(b) + "," + std::to_string(c) + ")"});
          return out;
        }
  for (int a = 0; a < n; ++a) {
    bool has = false;
    for (int b = 0; b < n; ++b)
      if (table[a][b] == 0 && table[b][a] == 0) has = true;
    if (!has) {
      out.push_back({Errc::NoInverse, "element " + std::to_string(a)});
      return out;
    }
  }
  return out;
}

std::shared_ptr<const FiniteGroup> validate_group(
    const std::vector<std::vector<int>>& table) {
  auto violations = group_violations(table);
  if (!violations.empty())
    fail(violations.front().code, violations.front().detail);
  const int n = static_cast<int>(table.size());
  std::vector<int> flat(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) flat[i * n + j] = table[i][j];
  return std::shared_ptr<const FiniteGroup>(new FiniteGroup(n, std::move(flat)));
}

std::shared_ptr<const FiniteGroup> FiniteGroup::trivial() { return cyclic(1); }

std::shared_ptr<const FiniteGroup> FiniteGroup::cyclic(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return validate_group(t);
}

std::shared_ptr<const FiniteGroup> FiniteGroup::direct_product(
    const FiniteGroup& a, const FiniteGroup& b) {
  const int n = a.order() * b.order();
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  auto enc = [&](int x, int y) { return x * b.order() + y; };
  for (int x1 = 0; x1 < a.order(); ++x1)
    for (int y1 = 0; y1 < b.order(); ++y1)
      for (int x2 = 0; x2 < a.order(); ++x2)
        for (int y2 = 0; y2 < b.order(); ++y2)
          t[enc(x1, y1)][enc(x2, y2)] = enc(a.mul(x1, x2), b.mul(y1, y2));
  return validate_group(t);
}

namespace {

// Builds a Cayley table from permutation generators acting on themselves.
std::shared_ptr<const FiniteGroup> from_permutations(
    const std::vector<std::vector<int>>& gens) {
  std::vector<std::vector<int>> elems;
  const int deg = static_cast<int>(gens.front().size());
  std::vector<int> id(deg);
  std::iota(id.begin(), id.end(), 0);
  elems.push_back(id);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens) {
      std::vector<int> prod(deg);
      for (int k = 0; k < deg; ++k) prod[k] = g[elems[i][k]];
      if (std::find(elems.begin(), elems.end(), prod) == elems.end())
        elems.push_back(prod);
    }
  }
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> prod(deg);
      for (int k = 0; k < deg; ++k) prod[k] = elems[i][elems[j][k]];
      t[i][j] = static_cast<int>(
          std::find(elems.begin(), elems.end(), prod) - elems.begin());
    }
  return validate_group(t);
}

}  // namespace

std::shared_ptr<const FiniteGroup> FiniteGroup::symmetric3() {
  return from_permutations({{1, 2, 0}, {1, 0, 2}});
}

std::shared_ptr<const FiniteGroup> FiniteGroup::dihedral4() {
  // symmetries of the square, acting on its 4 corners
  return from_permutations({{1, 2, 3, 0}, {1, 0, 3, 2}});
}

std::shared_ptr<const FiniteGroup> FiniteGroup::quaternion8() {
  // regular representation of Q8 via i, j acting on {1,-1,i,-i,j,-j,k,-k}
  return from_permutations(
      {{2, 3, 1, 0, 6, 7, 5, 4}, {4, 5, 7, 6, 1, 0, 2, 3}});
}

bool Subgroup::contains(int g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

bool Subgroup::subset_of(const Subgroup& o) const {
  return std::includes(o.elements.begin(), o.elements.end(), elements.begin(),
                       elements.end());
}

Subgroup trivial_subgroup() { return Subgroup{{0}}; }

Subgroup full_subgroup(const FiniteGroup& g) {
  Subgroup h;
  h.elements.resize(g.order());
  std::iota(h.elements.begin(), h.elements.end(), 0);
  return h;
}

Subgroup GAction::stabilizer(int x) const {
  Subgroup h;
  for (int g = 0; g < group->order(); ++g)
    if (act[g][x] == x) h.elements.push_back(g);
  return h;
}

int GAction::index_of_label(const std::string& l) const {
  for (int i = 0; i < size(); ++i)
    if (labels[i] == l) return i;
  return -1;
}

void validate_subgroup(const FiniteGroup& g, const Subgroup& h) {
  for (int x : h.elements)
    if (x < 0 || x >= g.order())
      fail(Errc::IdOutOfRange, "subgroup element " + std::to_string(x));
  if (!std::is_sorted(h.elements.begin(), h.elements.end()))
    fail(Errc::SchemaError, "subgroup elements not sorted");
  if (!is_subgroup(g, h.elements))
    fail(Errc::SchemaError, "set is not closed under product/inverse");
}

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& elems) {
  std::set<int> s(elems.begin(), elems.end());
  if (!s.count(0)) return false;
  for (int a : s)
    for (int b : s)
      if (!s.count(g.mul(a, b))) return false;
  for (int a : s)
    if (!s.count(g.inv(a))) return false;
  return true;
}

Subgroup subgroup_generated(const FiniteGroup& g, const std::vector<int>& gens) {
  for (int x : gens)
    if (x < 0 || x >= g.order())
      fail(Errc::IdOutOfRange, "generator " + std::to_string(x));
  std::set<int> s{0};
  std::vector<int> todo{0};
  for (int x : gens)
    if (s.insert(x).second) todo.push_back(x);
  while (!todo.empty()) {
    int a = todo.back();
    todo.pop_back();
    for (int b : std::vector<int>(s.begin(), s.end())) {
      for (int p : {g.mul(a, b), g.mul(b, a)})
        if (s.insert(p).second) todo.push_back(p);
    }
    if (s.insert(g.inv(a)).second) todo.push_back(g.inv(a));
  }
  return Subgroup{std::vector<int>(s.begin(), s.end())};
}

bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  for (int x = 0; x < g.order(); ++x)
    for (int a : h.elements)
      if (!h.contains(g.mul(g.mul(x, a), g.inv(x)))) return false;
  return true;
}

void validate_action(const GAction& a) {
  const int n = a.size();
  const int m = a.group->order();
  if (static_cast<int>(a.act.size()) != m)
    fail(Errc::SchemaError, "action table has wrong group dimension");
  for (int g = 0; g < m; ++g) {
    if (static_cast<int>(a.act[g].size()) != n)
      fail(Errc::SchemaError, "action row " + std::to_string(g) + " wrong size");
    for (int x = 0; x < n; ++x)
      if (a.act[g][x] < 0 || a.act[g][x] >= n)
        fail(Errc::IdOutOfRange, "action value at (" + std::to_string(g) + "," +
                                     std::to_string(x) + ")");
  }
  for (int x = 0; x < n; ++x)
    if (a.act.empty() || a.act[0][x] != x)
      fail(Errc::NotEquivariantAction,
           "identity moves point " + (x < n ? a.labels[x] : std::to_string(x)));
  for (int g = 0; g < m; ++g)
    for (int h = 0; h < m; ++h)
      for (int x = 0; x < n; ++x)
        if (a.act[g][a.act[h][x]] != a.act[a.group->mul(g, h)][x])
          fail(Errc::NotEquivariantAction,
               "action not compatible at (g,h,x)=(" + std::to_string(g) + "," +
                   std::to_string(h) + "," + a.labels[x] + ")");
}

void validate_equivariant(const EquivariantMap& f) {
  if (f.source.group->raw_table() != f.target.group->raw_table())
    fail(Errc::SiteMismatch, "equivariant map across different groups");
  if (static_cast<int>(f.map.size()) != f.source.size())
    fail(Errc::SchemaError, "map has wrong size");
  for (int x : f.map)
    if (x < 0 || x >= f.target.size())
      fail(Errc::IdOutOfRange, "map value " + std::to_string(x));
  for (int g = 0; g < f.source.group->order(); ++g)
    for (int x = 0; x < f.source.size(); ++x)
      if (f.map[f.source.act[g][x]] != f.target.act[g][f.map[x]])
        fail(Errc::NotEquivariant, "at (g,x)=(" + std::to_string(g) + "," +
                                       f.source.labels[x] + ")");
}

std::vector<std::vector<int>> orbits(const GAction& a) {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(a.size(), false);
  for (int x = 0; x < a.size(); ++x) {
    if (seen[x]) continue;
    std::set<int> orbit;
    for (int g = 0; g < a.group->order(); ++g) orbit.insert(a.act[g][x]);
    for (int y : orbit) seen[y] = true;
    out.emplace_back(orbit.begin(), orbit.end());
  }
  return out;
}

std::vector<int> fixed_points(const GAction& a, const Subgroup& h) {
  std::vector<int> out;
  for (int x = 0; x < a.size(); ++x) {
    bool fixed = true;
    for (int g : h.elements)
      if (a.act[g][x] != x) {
        fixed = false;
        break;
      }
    if (fixed) out.push_back(x);
  }
  return out;
}

QuotientAction quotient(const GAction& a) {
  auto os = orbits(a);
  QuotientAction q;
  std::vector<std::string> labels;
  q.projection.assign(a.size(), -1);
  for (std::size_t i = 0; i < os.size(); ++i) {
    labels.push_back(a.labels[os[i].front()]);
    for (int x : os[i]) q.projection[x] = static_cast<int>(i);
  }
  q.action = trivial_gset(a.group, std::move(labels));
  return q;
}

bool injective_on_orbits(const GAction& src, const std::vector<int>& map) {
  for (int x = 0; x < src.size(); ++x)
    for (int g = 0; g < src.group->order(); ++g) {
      int gx = src.act[g][x];
      if (map[gx] == map[x] && gx != x) return false;
    }
  return true;
}

bool injective_on_orbits(const EquivariantMap& f) {
  return injective_on_orbits(f.source, f.map);
}

bool is_injective_map(const std::vector<int>& map) {
  std::set<int> seen;
  for (int x : map)
    if (!seen.insert(x).second) return false;
  return true;
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<Subgroup> out;
  if (n > 16) fail(Errc::TooLarge, "subgroup enumeration beyond order 16");
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (!(mask & 1u)) continue;  // must contain the identity
    std::vector<int> elems;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) elems.push_back(i);
    if (n % static_cast<int>(elems.size()) != 0) continue;  // Lagrange
    if (is_subgroup(g, elems)) out.push_back(Subgroup{elems});
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements < b.elements;
  });
  return out;
}

std::vector<Subgroup> normal_subgroups(const FiniteGroup& g) {
  std::vector<Subgroup> out;
  for (auto& h : all_subgroups(g))
    if (is_normal(g, h)) out.push_back(h);
  return out;
}

GAction coset_action(std::shared_ptr<const FiniteGroup> g, const Subgroup& h,
                     std::vector<int>* reps_out) {
  const int n = g->order();
  std::vector<int> coset_of(n, -1);
  std::vector<int> reps;
  for (int x = 0; x < n; ++x) {
    if (coset_of[x] != -1) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int a : h.elements) coset_of[g->mul(x, a)] = c;
  }
  GAction out;
  out.group = g;
  for (int r : reps) out.labels.push_back("g" + std::to_string(r));
  out.act.assign(n, std::vector<int>(reps.size()));
  for (int gg = 0; gg < n; ++gg)
    for (std::size_t c = 0; c < reps.size(); ++c)
      out.act[gg][c] = coset_of[g->mul(gg, reps[c])];
  if (reps_out) *reps_out = reps;
  return out;
}

GAction trivial_gset(std::shared_ptr<const FiniteGroup> g,
                     std::vector<std::string> labels) {
  GAction out;
  out.group = std::move(g);
  out.labels = std::move(labels);
  std::vector<int> id(out.labels.size());
  std::iota(id.begin(), id.end(), 0);
  out.act.assign(out.group->order(), id);
  return out;
}

GAction empty_gset(std::shared_ptr<const FiniteGroup> g) {
  return trivial_gset(std::move(g), {});
}

GAction regular_action(std::shared_ptr<const FiniteGroup> g) {
  GAction out;
  out.group = g;
  for (int i = 0; i < g->order(); ++i)
    out.labels.push_back("g" + std::to_string(i));
  out.act.assign(g->order(), std::vector<int>(g->order()));
  for (int a = 0; a < g->order(); ++a)
    for (int x = 0; x < g->order(); ++x) out.act[a][x] = g->mul(a, x);
  return out;
}

GAction subaction(const GAction& a, const std::vector<int>& subset) {
  std::vector<int> newindex(a.size(), -1);
  for (std::size_t i = 0; i < subset.size(); ++i)
    newindex[subset[i]] = static_cast<int>(i);
  GAction out;
  out.group = a.group;
  for (int x : subset) out.labels.push_back(a.labels[x]);
  out.act.assign(a.group->order(), std::vector<int>(subset.size()));
  for (int g = 0; g < a.group->order(); ++g)
    for (std::size_t i = 0; i < subset.size(); ++i) {
      int img = newindex[a.act[g][subset[i]]];
      if (img < 0)
        fail(Errc::SchemaError, "subset not G-stable at " + a.labels[subset[i]]);
      out.act[g][i] = img;
    }
  return out;
}

int pair_index(const GAction& b, int i, int j) { return i * b.size() + j; }

GAction product_action(const GAction& a, const GAction& b) {
  GAction out;
  out.group = a.group;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j)
      out.labels.push_back("(" + a.labels[i] + "," + b.labels[j] + ")");
  out.act.assign(a.group->order(), std::vector<int>(a.size() * b.size()));
  for (int g = 0; g < a.group->order(); ++g)
    for (int i = 0; i < a.size(); ++i)
      for (int j = 0; j < b.size(); ++j)
        out.act[g][pair_index(b, i, j)] =
            pair_index(b, a.act[g][i], b.act[g][j]);
  return out;
}

namespace {

// Orbit-wise skeleton for map enumeration: a map is fixed by the images of
// the orbit base points, which must have at least the base's stabilizer.
struct OrbitSkeleton {
  std::vector<int> bases;
  std::vector<std::vector<int>> candidates;  // per base, valid target points
};

OrbitSkeleton map_skeleton(const GAction& source, const GAction& target) {
  OrbitSkeleton sk;
  for (const auto& orbit : orbits(source)) {
    int base = orbit.front();
    Subgroup stab = source.stabilizer(base);
    std::vector<int> cands;
    for (int y = 0; y < target.size(); ++y) {
      bool ok = true;
      for (int g : stab.elements)
        if (target.act[g][y] != y) {
          ok = false;
          break;
        }
      if (ok) cands.push_back(y);
    }
    sk.bases.push_back(base);
    sk.candidates.push_back(std::move(cands));
  }
  return sk;
}

std::vector<int> realize_map(const GAction& source, const GAction& target,
                             const std::vector<int>& bases,
                             const std::vector<int>& images) {
  std::vector<int> map(source.size(), -1);
  for (std::size_t k = 0; k < bases.size(); ++k)
    for (int g = 0; g < source.group->order(); ++g)
      map[source.act[g][bases[k]]] = target.act[g][images[k]];
  return map;
}

}  // namespace

std::vector<std::vector<int>> equivariant_maps(const GAction& source,
                                               const GAction& target) {
  std::vector<std::vector<int>> out;
  if (source.size() == 0) {
    out.push_back({});
    return out;
  }
  auto sk = map_skeleton(source, target);
  for (const auto& c : sk.candidates)
    if (c.empty()) return out;
  std::vector<int> images(sk.bases.size(), 0);
  std::vector<std::size_t> idx(sk.bases.size(), 0);
  while (true) {
    for (std::size_t k = 0; k < sk.bases.size(); ++k)
      images[k] = sk.candidates[k][idx[k]];
    out.push_back(realize_map(source, target, sk.bases, images));
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == sk.candidates[k].size()) {
      idx[k] = 0;
      ++k;
    }
    if (k == idx.size()) break;
  }
  return out;
}

std::size_t count_equivariant_maps(const GAction& source,
                                   const GAction& target) {
  if (source.size() == 0) return 1;
  auto sk = map_skeleton(source, target);
  std::size_t total = 1;
  for (const auto& c : sk.candidates) total *= c.size();
  return total;
}

bool gset_isomorphic(const GAction& a, const GAction& b) {
  if (a.size() != b.size()) return false;
  if (a.size() == 0) return true;
  auto sk = map_skeleton(a, b);
  std::vector<bool> used(b.size(), false);
  auto orbit_of = [](const GAction& x, int base) {
    std::set<int> o;
    for (int g = 0; g < x.group->order(); ++g) o.insert(x.act[g][base]);
    return o;
  };

  std::vector<std::set<int>> source_orbits;
  for (int base : sk.bases) source_orbits.push_back(orbit_of(a, base));

  std::function<bool(std::size_t)> go = [&](std::size_t k) -> bool {
    if (k == sk.bases.size()) return true;
    for (int y : sk.candidates[k]) {
      if (used[y]) continue;
      auto target_orbit = orbit_of(b, y);
      if (target_orbit.size() != source_orbits[k].size()) continue;
      bool clash = false;
      for (int t : target_orbit)
        if (used[t]) clash = true;
      if (clash) continue;
      for (int t : target_orbit) used[t] = true;
      if (go(k + 1)) return true;
      for (int t : target_orbit) used[t] = false;
    }
    return false;
  };
  return go(0);
}

}  // namespace gshv
