#include "gshv/gen.hpp"

#include <algorithm>

namespace gshv {

std::shared_ptr<const FiniteGroup> catalog_group(std::uint64_t index,
                                                 int max_order) {
  static const std::vector<std::shared_ptr<const FiniteGroup>> catalog = [] {
    std::vector<std::shared_ptr<const FiniteGroup>> c;
    c.push_back(FiniteGroup::trivial());
    c.push_back(FiniteGroup::cyclic(2));
    c.push_back(FiniteGroup::cyclic(3));
    c.push_back(FiniteGroup::cyclic(4));
    c.push_back(FiniteGroup::direct_product(*FiniteGroup::cyclic(2),
                                            *FiniteGroup::cyclic(2)));
    c.push_back(FiniteGroup::cyclic(5));
    c.push_back(FiniteGroup::cyclic(6));
    c.push_back(FiniteGroup::symmetric3());
    c.push_back(FiniteGroup::cyclic(7));
    c.push_back(FiniteGroup::cyclic(8));
    c.push_back(FiniteGroup::direct_product(*FiniteGroup::cyclic(4),
                                            *FiniteGroup::cyclic(2)));
    c.push_back(FiniteGroup::direct_product(
        *FiniteGroup::cyclic(2),
        *FiniteGroup::direct_product(*FiniteGroup::cyclic(2),
                                     *FiniteGroup::cyclic(2))));
    c.push_back(FiniteGroup::dihedral4());
    c.push_back(FiniteGroup::quaternion8());
    return c;
  }();
  std::vector<std::shared_ptr<const FiniteGroup>> eligible;
  for (const auto& g : catalog)
    if (g->order() <= max_order) eligible.push_back(g);
  return eligible[index % eligible.size()];
}

namespace {

void check_bounds(const GenBounds& b) {
  if (b.max_points < 1 || b.max_points > 6)
    fail(Errc::BoundsExceeded, "points must be within 1..6");
  if (b.max_group_order < 1 || b.max_group_order > 8)
    fail(Errc::BoundsExceeded, "group order must be within 1..8");
  if (b.max_stalk < 1 || b.max_stalk > 8)
    fail(Errc::BoundsExceeded, "stalk size must be within 1..8");
}

struct StalkBuild {
  GAction action;
  std::vector<int> to_parent;  // localization into the parent stalk
};

// Appends coset orbits of G/H with H between requirement and the stabilizer
// of a chosen parent element; empty when no candidate remains.
StalkBuild build_stalk(SplitMix64& rng, std::shared_ptr<const FiniteGroup> g,
                       const std::vector<Subgroup>& subgroups,
                       const Subgroup& required, const GAction* parent,
                       int max_stalk) {
  StalkBuild out;
  out.action.group = g;
  out.action.act.assign(g->order(), {});

  int target_orbits = 1 + static_cast<int>(rng.below(3));
  for (int k = 0; k < target_orbits; ++k) {
    int room = max_stalk - out.action.size();
    if (room <= 0) break;

    // candidate (parent element, subgroup) pairs
    std::vector<std::pair<int, const Subgroup*>> candidates;
    if (parent) {
      for (int y = 0; y < parent->size(); ++y) {
        Subgroup stab = parent->stabilizer(y);
        for (const auto& h : subgroups) {
          if (!required.subset_of(h) || !h.subset_of(stab)) continue;
          if (g->order() / static_cast<int>(h.size()) > room) continue;
          candidates.emplace_back(y, &h);
        }
      }
    } else {
      for (const auto& h : subgroups) {
        if (!required.subset_of(h)) continue;
        if (g->order() / static_cast<int>(h.size()) > room) continue;
        candidates.emplace_back(-1, &h);
      }
    }
    if (candidates.empty()) break;
    auto [y, h] = candidates[rng.below(candidates.size())];

    std::vector<int> reps;
    GAction orbit = coset_action(g, *h, &reps);
    int offset = out.action.size();
    for (int i = 0; i < orbit.size(); ++i)
      out.action.labels.push_back("e" + std::to_string(offset + i));
    for (int gg = 0; gg < g->order(); ++gg)
      for (int i = 0; i < orbit.size(); ++i)
        out.action.act[gg].push_back(orbit.act[gg][i] + offset);
    if (parent) {
      for (int i = 0; i < orbit.size(); ++i)
        out.to_parent.push_back(parent->act[reps[i]][y]);
    }
  }
  return out;
}

}  // namespace

Instance gen_instance(std::uint64_t seed, const GenBounds& bounds,
                      bool enforce_star, bool force_chain) {
  check_bounds(bounds);
  SplitMix64 rng(seed);
  auto group = catalog_group(rng.next(), bounds.max_group_order);

  const int n = 1 + static_cast<int>(rng.below(bounds.max_points));
  std::vector<int> parent(n, -1);
  for (int i = 1; i < n; ++i)
    parent[i] = force_chain ? i - 1 : static_cast<int>(rng.below(i));

  std::vector<std::string> labels{"eta"};
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 1; i < n; ++i) {
    labels.push_back("s" + std::to_string(i));
    edges.emplace_back(labels[i], labels[parent[i]]);
  }
  auto site = validate_site(labels, edges, "eta");

  auto normals = normal_subgroups(*group);
  std::vector<Subgroup> inertia(n, trivial_subgroup());
  for (int i = 1; i < n; ++i) {
    std::vector<const Subgroup*> candidates;
    for (const auto& h : normals)
      if (inertia[parent[i]].subset_of(h)) candidates.push_back(&h);
    inertia[i] = *candidates[rng.below(candidates.size())];
  }
  StarContext ctx = make_context(site, group, inertia);

  auto subgroups = all_subgroups(*group);
  std::vector<GAction> stalks(n, empty_gset(group));
  std::map<std::pair<int, int>, std::vector<int>> loc;
  std::vector<bool> empty(n, false);
  for (int i = 0; i < n; ++i) {
    const Subgroup& required = enforce_star ? inertia[i] : trivial_subgroup();
    if (i == 0) {
      StalkBuild b = build_stalk(rng, group, subgroups, required, nullptr,
                                 bounds.max_stalk);
      stalks[0] = std::move(b.action);
      empty[0] = stalks[0].size() == 0;
      continue;
    }
    if (empty[parent[i]] || rng.below(6) == 0) {
      empty[i] = true;
      loc[{i, parent[i]}] = {};
      continue;
    }
    StalkBuild b = build_stalk(rng, group, subgroups, required,
                               &stalks[parent[i]], bounds.max_stalk);
    empty[i] = b.action.size() == 0;
    stalks[i] = std::move(b.action);
    loc[{i, parent[i]}] = std::move(b.to_parent);
  }

  GSheaf sheaf = make_sheaf(site, group, std::move(stalks), std::move(loc));
  return Instance{std::move(ctx), std::move(sheaf)};
}

ChainPresheaf gen_chain(std::uint64_t seed, const GenBounds& bounds) {
  Instance inst = gen_instance(seed, bounds, true, true);
  const int n = inst.ctx.site->size();
  ChainModel model =
      make_chain_model(inst.ctx.group, inst.ctx.inertia.inertia);
  std::vector<std::vector<int>> locs;
  for (int i = 0; i + 1 < n; ++i) locs.push_back(inst.sheaf.loc.at({i + 1, i}));
  return make_chain_presheaf(std::move(model), inst.sheaf.stalks,
                             std::move(locs));
}

nlohmann::json gen_instance_json(std::uint64_t seed, const GenBounds& bounds) {
  return emit_instance(gen_instance(seed, bounds));
}

}  // namespace gshv
