#pragma once

#include "gshv/star.hpp"

namespace gshv {

/// Chain model: a totally ordered site of special points with an increasing
/// chain of normal inertia subgroups, trivial at the generic end (point 0).
struct ChainModel {
  int n = 0;
  std::shared_ptr<const FiniteGroup> group;
  std::vector<Subgroup> inertia;  // inertia[0] trivial, increasing
};

/// Presheaf on the chain: a G-set per special point with equivariant
/// localizations toward the generic end, each value fixed pointwise by its
/// inertia subgroup.
struct ChainPresheaf {
  ChainModel model;
  std::vector<GAction> value;          // per point 0..n-1
  std::vector<std::vector<int>> loc;   // loc[i]: value[i+1] -> value[i]
};

/// The two-point picture: a morphism of smooth G-sets from the special
/// stalk (fixed pointwise by the inertia subgroup) to the generic stalk.
struct DVRDatum {
  std::shared_ptr<const FiniteGroup> group;
  Subgroup inertia;
  GAction special_stalk;
  GAction generic_stalk;
  std::vector<int> ell;  // special -> generic
};

ChainModel make_chain_model(std::shared_ptr<const FiniteGroup> group,
                            std::vector<Subgroup> inertia);
ChainPresheaf make_chain_presheaf(ChainModel model, std::vector<GAction> value,
                                  std::vector<std::vector<int>> loc);
DVRDatum make_dvr(std::shared_ptr<const FiniteGroup> group, Subgroup inertia,
                  GAction special_stalk, GAction generic_stalk,
                  std::vector<int> ell);

/// Lowers the chain to a sheaf on chain_site(n); star holds by construction.
std::pair<StarContext, GSheaf> chain_to_sheaf(const ChainPresheaf& cp);

/// The two-point chain of a DVR datum.
ChainPresheaf dvr_to_chain(const DVRDatum& d);

struct SummaryFunctors {
  ChainPresheaf set;  // values Im(value(s) -> value at the generic end)
  ChainPresheaf loc;  // values G\value(s)
  ChainPresheaf et;   // values Im(value(s) -> generic x G\value(s))
};

SummaryFunctors summary_functors(const ChainPresheaf& cp);

struct DvrClassification {
  bool representable;  // ell injective on orbits
  bool separated;      // representable and ell injective
};

DvrClassification dvr_classify(const DVRDatum& d);

}  // namespace gshv
