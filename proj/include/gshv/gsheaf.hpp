#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gshv/site.hpp"

namespace gshv {

/// Sheaf of G-sets on a finite site, represented as a stalk diagram: one
/// G-set per point and an equivariant localization map per Hasse edge,
/// pointing from a stalk to the stalk at an immediate generization.
/// Localization along arbitrary comparable pairs is derived (path coherence
/// is validated at construction). Sections over opens are recomputed from
/// stalks as limits; sections over the empty open are the canonical
/// singleton and are never stored.
struct GSheaf {
  std::shared_ptr<const FiniteSite> site;
  std::shared_ptr<const FiniteGroup> group;
  std::vector<GAction> stalks;  // indexed by point
  std::map<std::pair<int, int>, std::vector<int>> loc;  // per Hasse edge

  /// Derived localization stalk(s) -> stalk(s2), for any s2 <= s.
  const std::vector<int>& loc_map(int s, int s2) const;
  int locate(int s, int s2, int x) const { return loc_map(s, s2)[x]; }
  int total_elements() const;

  // filled by make_sheaf
  std::vector<std::vector<std::vector<int>>> derived;
};

GSheaf make_sheaf(std::shared_ptr<const FiniteSite> site,
                  std::shared_ptr<const FiniteGroup> group,
                  std::vector<GAction> stalks,
                  std::map<std::pair<int, int>, std::vector<int>> loc);

GSheaf initial_sheaf(std::shared_ptr<const FiniteSite> site,
                     std::shared_ptr<const FiniteGroup> group);
GSheaf terminal_sheaf(std::shared_ptr<const FiniteSite> site,
                      std::shared_ptr<const FiniteGroup> group);

/// Morphism of sheaves on one site: a pointwise equivariant map commuting
/// with localization.
struct SheafMorphism {
  GSheaf source;
  GSheaf target;
  std::vector<std::vector<int>> comp;  // per point
};

SheafMorphism make_morphism(GSheaf source, GSheaf target,
                            std::vector<std::vector<int>> comp);
SheafMorphism identity_morphism(const GSheaf& d);
SheafMorphism compose(const SheafMorphism& g, const SheafMorphism& f);
bool same_morphism(const SheafMorphism& a, const SheafMorphism& b);

/// The set of compatible families over an open, with the diagonal G-action.
/// families[i][k] is the chosen stalk element at points[k].
struct SectionSet {
  Open open;
  std::vector<int> points;  // sorted members of the open
  std::vector<std::vector<int>> families;
  GAction action;

  int index_of(const std::vector<int>& family) const;  // -1 when absent
  int position_of_point(int s) const;                  // -1 when absent
};

SectionSet sections(const GSheaf& d, const Open& u);

/// Restriction D(U) -> D(V) for V inside U, as a map of family indices.
std::vector<int> restriction_map(const GSheaf& d, const SectionSet& su,
                                 const SectionSet& sv);

/// Localization D(U) -> D_s for s in U, as a map of family indices to stalk
/// element ids.
std::vector<int> localization_map(const SectionSet& su, int s);

bool is_mono(const SheafMorphism& f);   // pointwise injective
bool is_epi(const SheafMorphism& f);    // pointwise surjective
bool is_isomorphism(const SheafMorphism& f);

GSheaf product_sheaf(const GSheaf& d, const GSheaf& e);
SheafMorphism product_projection(const GSheaf& d, const GSheaf& e, int which);

struct ImageFactorization {
  GSheaf image;
  SheafMorphism mono;  // image -> target
  SheafMorphism epi;   // source -> image
};

/// Stalkwise image with the induced localization maps; the factorization
/// f = mono . epi.
ImageFactorization image(const SheafMorphism& f);

GSheaf disjoint_union(std::shared_ptr<const FiniteSite> site,
                      std::shared_ptr<const FiniteGroup> group,
                      const std::vector<GSheaf>& parts);

/// Brute-force subobject oracle: every G-stable, localization-stable choice
/// of stalk subsets. Guarded to sheaves with at most 16 stalk elements.
std::vector<GSheaf> subsheaves(const GSheaf& d);
std::vector<std::vector<std::vector<int>>> subsheaf_subsets(const GSheaf& d);

/// Subsheaf on explicitly given stalk subsets (sorted per point).
GSheaf subsheaf_from(const GSheaf& d,
                     const std::vector<std::vector<int>>& subsets);
SheafMorphism subsheaf_inclusion(const GSheaf& d,
                                 const std::vector<std::vector<int>>& subsets);

/// Exhaustive hom-set enumeration, generic-to-special with naturality
/// pruning. Meant for desk-scale instances only.
std::vector<SheafMorphism> enumerate_morphisms(const GSheaf& d,
                                               const GSheaf& e);
std::size_t count_morphisms(const GSheaf& d, const GSheaf& e);

bool sheaf_isomorphic(const GSheaf& d, const GSheaf& e);

}  // namespace gshv
