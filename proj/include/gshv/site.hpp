#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gshv/gset.hpp"

namespace gshv {

/// Finite irreducible topological space, stored as its specialization poset
/// (Alexandrov duality). leq(a, b) reads "a is a generization of b", i.e.
/// b lies in the closure of a; the generic point generizes every point.
/// Opens are exactly the generization-closed subsets.
class FiniteSite {
 public:
  int size() const { return static_cast<int>(labels_.size()); }
  int generic() const { return generic_; }
  const std::string& label(int p) const { return labels_[p]; }
  const std::vector<std::string>& labels() const { return labels_; }
  int index_of(const std::string& l) const;  // -1 when absent
  bool leq(int a, int b) const { return leq_[a][b]; }

  /// Covering pairs (s, s2) with s2 an immediate proper generization of s.
  const std::vector<std::pair<int, int>>& hasse() const { return hasse_; }

 private:
  friend std::shared_ptr<const FiniteSite> validate_site(
      const std::vector<std::string>& points,
      const std::vector<std::pair<std::string, std::string>>& edges,
      const std::string& generic);
  FiniteSite() = default;

  int generic_ = 0;
  std::vector<std::string> labels_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::pair<int, int>> hasse_;
};

/// Open subset of a site, kept as a sorted list of point indices.
struct Open {
  std::vector<int> members;  // sorted

  bool empty() const { return members.empty(); }
  std::size_t size() const { return members.size(); }
  bool contains(int p) const;
  bool subset_of(const Open& o) const;
  bool operator==(const Open& o) const { return members == o.members; }
};

/// Inertia profile: a normal subgroup I(s) per point, trivial at the generic
/// point and increasing along specialization.
struct InertiaProfile {
  std::shared_ptr<const FiniteSite> site;
  std::shared_ptr<const FiniteGroup> group;
  std::vector<Subgroup> inertia;  // indexed by point
};

/// Morphism of sites with inertia profiles over one group: monotone,
/// generic-point preserving, and inertia-compatible.
struct SiteMap {
  std::shared_ptr<const FiniteSite> source;
  std::shared_ptr<const FiniteSite> target;
  InertiaProfile source_profile;
  InertiaProfile target_profile;
  std::vector<int> map;  // source point -> target point
};

/// Builds the site from points and generization edges (from, to) meaning
/// "to is a generization of from"; edges may be redundant, the stored Hasse
/// diagram is the transitive reduction.
std::shared_ptr<const FiniteSite> validate_site(
    const std::vector<std::string>& points,
    const std::vector<std::pair<std::string, std::string>>& edges,
    const std::string& generic);

/// Totally ordered site with n points; point 0 is the generic point.
std::shared_ptr<const FiniteSite> chain_site(int n);

/// Every open including the empty one, ordered by size then lexicographically.
std::vector<Open> opens(const FiniteSite& site);

/// Smallest open containing s: the set of generizations of s.
Open minimal_open(const FiniteSite& site, int s);

Open whole_space(const FiniteSite& site);
Open make_open(const FiniteSite& site, std::vector<int> members);
Open intersect(const Open& a, const Open& b);
Open unite(const Open& a, const Open& b);

struct OpenInertia {
  Subgroup subgroup;
  bool empty_open;  // the empty open takes I = {1} by convention
};

/// Subgroup generated by the I(s) for s in U; trivial (flagged) for U empty.
OpenInertia inertia_of_open(const InertiaProfile& profile, const Open& u);

InertiaProfile make_profile(std::shared_ptr<const FiniteSite> site,
                            std::shared_ptr<const FiniteGroup> group,
                            std::vector<Subgroup> inertia);
void validate_profile(const InertiaProfile& p);

SiteMap validate_site_map(const InertiaProfile& source,
                          const InertiaProfile& target,
                          const std::vector<int>& map);

/// Site on the points of a nonempty open; labels preserved. point_index
/// receives, per site point, its index in the restricted site (-1 outside).
std::shared_ptr<const FiniteSite> restrict_site(const FiniteSite& site,
                                                const Open& u,
                                                std::vector<int>* point_index);

}  // namespace gshv
