#include "gshv/valuation.hpp"

#include <algorithm>
#include <set>

namespace gshv {

ChainModel make_chain_model(std::shared_ptr<const FiniteGroup> group,
                            std::vector<Subgroup> inertia) {
  ChainModel m;
  m.n = static_cast<int>(inertia.size());
  m.group = std::move(group);
  m.inertia = std::move(inertia);
  if (m.n < 1) fail(Errc::SchemaError, "chain needs at least one point");
  for (const auto& h : m.inertia) {
    validate_subgroup(*m.group, h);
    if (!is_normal(*m.group, h))
      fail(Errc::InertiaNotNormal, "chain inertia subgroup");
  }
  if (m.inertia[0].size() != 1)
    fail(Errc::InertiaGenericNotTrivial, "inertia at the generic end");
  for (int i = 0; i + 1 < m.n; ++i)
    if (!m.inertia[i].subset_of(m.inertia[i + 1]))
      fail(Errc::InertiaNotMonotone, "chain position " + std::to_string(i));
  return m;
}

ChainPresheaf make_chain_presheaf(ChainModel model, std::vector<GAction> value,
                                  std::vector<std::vector<int>> loc) {
  ChainPresheaf cp;
  cp.model = std::move(model);
  cp.value = std::move(value);
  cp.loc = std::move(loc);
  if (static_cast<int>(cp.value.size()) != cp.model.n)
    fail(Errc::SchemaError, "one value per special point required");
  if (static_cast<int>(cp.loc.size()) != cp.model.n - 1)
    fail(Errc::SchemaError, "one localization per consecutive pair required");
  for (int i = 0; i < cp.model.n; ++i) {
    validate_action(cp.value[i]);
    if (static_cast<int>(
            fixed_points(cp.value[i], cp.model.inertia[i]).size()) !=
        cp.value[i].size())
      fail(Errc::NotStar, "inertia moves a value at chain position " +
                              std::to_string(i));
  }
  for (int i = 0; i + 1 < cp.model.n; ++i)
    validate_equivariant({cp.value[i + 1], cp.value[i], cp.loc[i]});
  return cp;
}

DVRDatum make_dvr(std::shared_ptr<const FiniteGroup> group, Subgroup inertia,
                  GAction special_stalk, GAction generic_stalk,
                  std::vector<int> ell) {
  DVRDatum d;
  d.group = std::move(group);
  d.inertia = std::move(inertia);
  d.special_stalk = std::move(special_stalk);
  d.generic_stalk = std::move(generic_stalk);
  d.ell = std::move(ell);
  validate_subgroup(*d.group, d.inertia);
  if (!is_normal(*d.group, d.inertia))
    fail(Errc::InertiaNotNormal, "dvr inertia subgroup");
  validate_action(d.special_stalk);
  validate_action(d.generic_stalk);
  if (static_cast<int>(fixed_points(d.special_stalk, d.inertia).size()) !=
      d.special_stalk.size())
    fail(Errc::NotStar, "inertia moves the special stalk");
  validate_equivariant({d.special_stalk, d.generic_stalk, d.ell});
  return d;
}

std::pair<StarContext, GSheaf> chain_to_sheaf(const ChainPresheaf& cp) {
  auto site = chain_site(cp.model.n);
  StarContext ctx = make_context(site, cp.model.group, cp.model.inertia);
  std::map<std::pair<int, int>, std::vector<int>> loc;
  for (int i = 0; i + 1 < cp.model.n; ++i) loc[{i + 1, i}] = cp.loc[i];
  GSheaf d = make_sheaf(site, cp.model.group, cp.value, std::move(loc));
  return {ctx, d};
}

ChainPresheaf dvr_to_chain(const DVRDatum& d) {
  ChainModel m = make_chain_model(d.group, {trivial_subgroup(), d.inertia});
  return make_chain_presheaf(std::move(m), {d.generic_stalk, d.special_stalk},
                             {d.ell});
}

SummaryFunctors summary_functors(const ChainPresheaf& cp) {
  const int n = cp.model.n;
  // composite localization value[i] -> value[0]
  std::vector<std::vector<int>> to_generic(n);
  {
    std::vector<int> id(cp.value[0].size());
    for (int x = 0; x < cp.value[0].size(); ++x) id[x] = x;
    to_generic[0] = std::move(id);
    for (int i = 1; i < n; ++i) {
      to_generic[i].resize(cp.value[i].size());
      for (int x = 0; x < cp.value[i].size(); ++x)
        to_generic[i][x] = to_generic[i - 1][cp.loc[i - 1][x]];
    }
  }

  SummaryFunctors out;

  // set: images inside the generic value, localizations become inclusions
  {
    std::vector<GAction> value;
    std::vector<std::vector<int>> images(n);
    for (int i = 0; i < n; ++i) {
      std::set<int> im(to_generic[i].begin(), to_generic[i].end());
      images[i].assign(im.begin(), im.end());
      value.push_back(subaction(cp.value[0], images[i]));
    }
    std::vector<std::vector<int>> loc(n - 1);
    for (int i = 0; i + 1 < n; ++i) {
      loc[i].resize(images[i + 1].size());
      for (std::size_t k = 0; k < images[i + 1].size(); ++k)
        loc[i][k] = static_cast<int>(
            std::lower_bound(images[i].begin(), images[i].end(),
                             images[i + 1][k]) -
            images[i].begin());
    }
    out.set = make_chain_presheaf(cp.model, std::move(value), std::move(loc));
  }

  // loc: orbit spaces with the induced maps
  {
    std::vector<GAction> value;
    std::vector<std::vector<int>> projections(n);
    for (int i = 0; i < n; ++i) {
      QuotientAction q = quotient(cp.value[i]);
      value.push_back(q.action);
      projections[i] = q.projection;
    }
    std::vector<std::vector<int>> loc(n - 1);
    for (int i = 0; i + 1 < n; ++i) {
      loc[i].assign(value[i + 1].size(), -1);
      for (int x = 0; x < cp.value[i + 1].size(); ++x)
        loc[i][projections[i + 1][x]] = projections[i][cp.loc[i][x]];
    }
    out.loc = make_chain_presheaf(cp.model, std::move(value), std::move(loc));
  }

  // et: images inside generic x orbit space, with maps through
  // representatives
  {
    std::vector<GAction> value;
    std::vector<std::vector<int>> pair_of(n);        // per element of value[i]
    std::vector<std::vector<int>> pairs_sorted(n);   // image pair codes
    std::vector<GAction> products(n);
    std::vector<std::vector<int>> projections(n);
    for (int i = 0; i < n; ++i) {
      QuotientAction q = quotient(cp.value[i]);
      projections[i] = q.projection;
      products[i] = product_action(cp.value[0], q.action);
      pair_of[i].resize(cp.value[i].size());
      std::set<int> im;
      for (int x = 0; x < cp.value[i].size(); ++x) {
        pair_of[i][x] = pair_index(q.action, to_generic[i][x],
                                   projections[i][x]);
        im.insert(pair_of[i][x]);
      }
      pairs_sorted[i].assign(im.begin(), im.end());
      value.push_back(subaction(products[i], pairs_sorted[i]));
    }
    std::vector<std::vector<int>> loc(n - 1);
    for (int i = 0; i + 1 < n; ++i) {
      loc[i].assign(pairs_sorted[i + 1].size(), -1);
      for (int x = 0; x < cp.value[i + 1].size(); ++x) {
        int from = static_cast<int>(
            std::lower_bound(pairs_sorted[i + 1].begin(),
                             pairs_sorted[i + 1].end(), pair_of[i + 1][x]) -
            pairs_sorted[i + 1].begin());
        int to = static_cast<int>(
            std::lower_bound(pairs_sorted[i].begin(), pairs_sorted[i].end(),
                             pair_of[i][cp.loc[i][x]]) -
            pairs_sorted[i].begin());
        loc[i][from] = to;
      }
    }
    out.et = make_chain_presheaf(cp.model, std::move(value), std::move(loc));
  }

  return out;
}

DvrClassification dvr_classify(const DVRDatum& d) {
  bool representable = injective_on_orbits(d.special_stalk, d.ell);
  bool separated = representable && is_injective_map(d.ell);
  return {representable, separated};
}

}  // namespace gshv
