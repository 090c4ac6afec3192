#pragma once

#include "gshv/gsheaf.hpp"

namespace gshv {

/// Ambient data for the star calculus: a site, a group, and an inertia
/// profile assigning a normal subgroup I(s) to each point, trivial at the
/// generic point and increasing along specialization.
struct StarContext {
  std::shared_ptr<const FiniteSite> site;
  std::shared_ptr<const FiniteGroup> group;
  InertiaProfile inertia;
};

StarContext make_context(std::shared_ptr<const FiniteSite> site,
                         std::shared_ptr<const FiniteGroup> group,
                         std::vector<Subgroup> inertia);

/// The star condition: I(s) fixes the stalk at s pointwise, for every s.
/// (Smoothness is automatic at finite group order.)
bool is_star(const StarContext& ctx, const GSheaf& d);

/// Subsheaf of I(U)-fixed sections, recomputed in stalk form by evaluating
/// fixed section families over minimal opens. Stalkwise this agrees with
/// star_part; the two are computed along independent routes on purpose.
GSheaf smI_part(const StarContext& ctx, const GSheaf& d);

/// Subsheaf with stalks D_s^{I(s)} and restricted localization maps.
GSheaf star_part(const StarContext& ctx, const GSheaf& d);

/// D^G: stalkwise G-fixed points; the counit is the inclusion into D.
GSheaf fixed_subsheaf(const GSheaf& d);
SheafMorphism fixed_subsheaf_counit(const GSheaf& d);

struct UnitImage {
  GSheaf sheaf;
  SheafMorphism unit;  // from the argument sheaf
};

/// D_G: stalkwise orbit spaces with the trivial action; the unit is an
/// epimorphism.
UnitImage quotient_sheaf(const GSheaf& d);

/// Constant sheaf X_S: every stalk X, identity localizations.
GSheaf constant_sheaf(const StarContext& ctx, const GAction& x);

/// Star-constant sheaf X_S^star with stalks X^{I(s)} and inclusion
/// localizations.
GSheaf star_constant(const StarContext& ctx, const GAction& x);

GAction generic_stalk(const GSheaf& d);

/// D_set = Im(D -> (D_eta)_S) and D_et = Im(D -> (D_eta)_S x D_G), computed
/// stalkwise. set_image/et_image accept any sheaf of G-sets (the ladders
/// quantify over smooth, not-necessarily-star instances); set_part/et_part
/// are the star-calculus operations and insist on the star condition.
UnitImage set_image(const GSheaf& d);
UnitImage et_image(const GSheaf& d);
UnitImage set_part(const StarContext& ctx, const GSheaf& d);
UnitImage et_part(const StarContext& ctx, const GSheaf& d);

/// Supp(D) = {s : D_s nonempty}; open by the reachability rule.
Open support(const GSheaf& d);

/// pi0(D) = orbits of the generic stalk, each sorted, ordered by minimal
/// member id.
std::vector<std::vector<int>> pi0(const GSheaf& d);

/// Component above the orbit labeled by its minimal member id in D_eta.
GSheaf component(const GSheaf& d, int orbit_label);
std::vector<GSheaf> decompose(const GSheaf& d);

/// A pair (U, gamma): a nonempty open with a G-orbit of sections over it.
/// Families are stored aligned to the sorted points of U.
struct OrbitSection {
  Open open;
  std::vector<std::vector<int>> families;  // the orbit, sorted
};

std::vector<OrbitSection> orbit_sections(const GSheaf& d);
bool orbit_section_leq(const GSheaf& d, const OrbitSection& a,
                       const OrbitSection& b);
/// Maximal elements, ordered by size of U descending, then open, then orbit.
std::vector<OrbitSection> maximal_orbit_sections(const GSheaf& d);

/// Extension by the empty sheaf of a sheaf on the open U (given on the
/// restricted site), and restriction in the other direction.
GSheaf j_shriek(std::shared_ptr<const FiniteSite> site, const Open& u,
                const GSheaf& e);
GSheaf j_restrict(const GSheaf& d, const Open& u);

/// The morphism j_U!(gamma_U) -> D attached to an orbit section.
SheafMorphism orbit_section_morphism(const GSheaf& d, const OrbitSection& os);

/// Coproduct of the morphisms over all maximal orbit sections.
SheafMorphism covering_morphism(const GSheaf& d);

/// Map S_G^m(D) -> pi0(D): index of the component orbit per maximal pair.
std::vector<int> maximal_to_pi0(const GSheaf& d);

/// Independently computed equivalent conditions on orbit-injectivity
/// ("et ladder"): restrictions, sections to the generic stalk, stalk maps,
/// maximal orbit-section monos, and the unit into D_et.
struct Ladder3 {
  bool restrictions;   // (a) D(U) -> D(V) injective on orbits, all pairs
  bool to_generic;     // (c) D(U) -> D_eta injective on orbits
  bool stalk_maps;     // (e) localization injective on orbits, all pairs
  bool maximal_monos;  // (g) every maximal orbit-section morphism is mono
  bool unit_iso;       // (i) D -> D_et is an isomorphism

  bool agree() const;
  bool value() const { return stalk_maps; }
};

/// Plain-injectivity ladder ("set ladder"), plus the bijectivity and
/// coproduct-isomorphism conditions.
struct Ladder4 {
  bool restrictions;    // (a)
  bool to_generic;      // (c)
  bool stalk_maps;      // (e)
  bool max_bijective;   // (f) et conditions + S_G^m(D) -> pi0(D) bijective
  bool coproduct_iso;   // (g) covering morphism is an isomorphism
  bool unit_iso;        // (i) D -> D_set is an isomorphism

  bool agree() const;
  bool value() const { return stalk_maps; }
};

Ladder3 ladder3(const StarContext& ctx, const GSheaf& d);
Ladder4 ladder4(const StarContext& ctx, const GSheaf& d);

struct ClassificationReport {
  bool is_star;
  bool is_et;   // star + et ladder
  bool is_set;  // star + set ladder
  bool is_loc;  // trivial G-action on every stalk
  Ladder3 ladder3;
  Ladder4 ladder4;
  std::size_t pi0_size;
  Open support;
};

/// Full report; asserts the internal agreement of each ladder and throws
/// LadderDisagreement if the equivalence fails at runtime.
ClassificationReport classify(const StarContext& ctx, const GSheaf& d);

/// For an et sheaf, I(U) fixes every section over U pointwise.
bool properties_of_et(const StarContext& ctx, const GSheaf& d);

/// Pullback along a site map: stalk at s' is the stalk at f(s').
GSheaf pullback(const SiteMap& f, const GSheaf& d);

/// Pushforward: sections over preimages, re-sheafified to stalks, then the
/// star part on the target profile.
GSheaf pushforward_et(const SiteMap& f, const GSheaf& e);

/// Pushforward with its bookkeeping: the full section sets per target point
/// and the star-part family indices the stalks are built from.
struct PushforwardData {
  GSheaf sheaf;
  std::vector<SectionSet> sections;     // per target point, over f^{-1}(U_s)
  std::vector<std::vector<int>> fixed;  // star-part family indices
};

PushforwardData pushforward_et_data(const SiteMap& f, const GSheaf& e);

/// Total space of a sheaf with trivial action: one point per stalk element,
/// generization induced by localization. The total poset of a disconnected
/// sheaf is not irreducible, so it is returned as a bare poset with the
/// projection rather than as a FiniteSite.
struct EtaleSpace {
  std::shared_ptr<const FiniteSite> base;
  std::vector<std::pair<int, int>> points;  // (base point, stalk element)
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> leq;       // generization order
  std::vector<int> projection;              // to base points

  bool local_iso() const;
};

EtaleSpace espace_etale(const GSheaf& d);

/// Sections of the projection over U, as families aligned to U's points;
/// used to check the espace correspondence against sections(D, U).
std::vector<std::vector<int>> espace_sections(const EtaleSpace& x,
                                              const Open& u);

/// Brute-force connected components: minimal nonempty complemented
/// subsheaves, by exhaustive scan over the subobject poset.
std::vector<GSheaf> pi0_bruteforce(const GSheaf& d);

}  // namespace gshv
