#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gshv/errors.hpp"

namespace gshv {

/// Finite group given by its Cayley table. Element ids are dense 0-based
/// integers and id 0 is the two-sided identity. Intended for small orders
/// (|G| <= 16); no generator-based machinery.
class FiniteGroup {
 public:
  int order() const { return order_; }
  int mul(int a, int b) const { return table_[a * order_ + b]; }
  int inv(int a) const { return inverse_[a]; }

  static std::shared_ptr<const FiniteGroup> trivial();
  static std::shared_ptr<const FiniteGroup> cyclic(int n);
  static std::shared_ptr<const FiniteGroup> symmetric3();
  static std::shared_ptr<const FiniteGroup> dihedral4();   // order 8
  static std::shared_ptr<const FiniteGroup> quaternion8();  // order 8
  static std::shared_ptr<const FiniteGroup> direct_product(const FiniteGroup& a,
                                                           const FiniteGroup& b);

  const std::vector<int>& raw_table() const { return table_; }

 private:
  friend std::shared_ptr<const FiniteGroup> validate_group(
      const std::vector<std::vector<int>>& table);
  FiniteGroup(int order, std::vector<int> table);

  int order_;
  std::vector<int> table_;    // order x order, row-major
  std::vector<int> inverse_;
};

/// Subgroup as a sorted set of element ids of the ambient group.
struct Subgroup {
  std::vector<int> elements;  // sorted, contains 0

  bool contains(int g) const;
  std::size_t size() const { return elements.size(); }
  bool operator==(const Subgroup& o) const { return elements == o.elements; }
  bool subset_of(const Subgroup& o) const;
};

Subgroup trivial_subgroup();
Subgroup full_subgroup(const FiniteGroup& g);

/// A finite left G-set: points 0..size-1 with labels, act[g][x] tabulated.
struct GAction {
  std::shared_ptr<const FiniteGroup> group;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> act;  // act[g][x]

  int size() const { return static_cast<int>(labels.size()); }
  int apply(int g, int x) const { return act[g][x]; }
  Subgroup stabilizer(int x) const;
  int index_of_label(const std::string& l) const;  // -1 when absent
};

/// Equivariant map of G-sets over the same group, given pointwise.
struct EquivariantMap {
  GAction source;
  GAction target;
  std::vector<int> map;  // size = source.size()
};

struct AxiomViolation {
  Errc code;
  std::string detail;
};

/// Scans the four group axioms; empty result means the table is a group.
std::vector<AxiomViolation> group_violations(
    const std::vector<std::vector<int>>& table);

/// Validating constructor; throws the first violation found.
std::shared_ptr<const FiniteGroup> validate_group(
    const std::vector<std::vector<int>>& table);

void validate_action(const GAction& a);
void validate_equivariant(const EquivariantMap& f);
void validate_subgroup(const FiniteGroup& g, const Subgroup& h);

Subgroup subgroup_generated(const FiniteGroup& g, const std::vector<int>& gens);
bool is_normal(const FiniteGroup& g, const Subgroup& h);
bool is_subgroup(const FiniteGroup& g, const std::vector<int>& elems);

/// All orbits, each sorted, the list ordered by minimal member id.
std::vector<std::vector<int>> orbits(const GAction& a);

/// Points fixed by every element of the subgroup, sorted.
std::vector<int> fixed_points(const GAction& a, const Subgroup& h);

struct QuotientAction {
  GAction action;               // trivial G-action on the orbit set
  std::vector<int> projection;  // point -> orbit index
};

/// Orbit space G\Y with the trivial action; orbits labeled by the label of
/// their minimal member id.
QuotientAction quotient(const GAction& a);

/// True iff f(g.x) = f(x) implies g.x = x: injectivity of f on each orbit,
/// not injectivity of the induced map on orbit sets.
bool injective_on_orbits(const EquivariantMap& f);
bool injective_on_orbits(const GAction& src, const std::vector<int>& map);

bool is_injective_map(const std::vector<int>& map);

// -- helpers shared by the sheaf layer -------------------------------------

std::vector<Subgroup> all_subgroups(const FiniteGroup& g);
std::vector<Subgroup> normal_subgroups(const FiniteGroup& g);

/// Left coset space G/H with g'.(gH) = (g'g)H; cosets labeled by their
/// minimal member id as "g<k>". reps, when given, receives the minimal
/// representative of each coset.
GAction coset_action(std::shared_ptr<const FiniteGroup> g, const Subgroup& h,
                     std::vector<int>* reps = nullptr);

GAction trivial_gset(std::shared_ptr<const FiniteGroup> g,
                     std::vector<std::string> labels);
GAction empty_gset(std::shared_ptr<const FiniteGroup> g);
GAction regular_action(std::shared_ptr<const FiniteGroup> g);

/// Sub-G-set on a sorted, G-stable subset of points; labels inherited.
GAction subaction(const GAction& a, const std::vector<int>& subset);

/// Product with the diagonal action; labels "(a,b)".
GAction product_action(const GAction& a, const GAction& b);
int pair_index(const GAction& b, int i, int j);

/// All equivariant maps source -> target, as map vectors.
std::vector<std::vector<int>> equivariant_maps(const GAction& source,
                                               const GAction& target);

/// All equivariant maps of G-sets, enumerated as EquivariantMap hom-set.
std::size_t count_equivariant_maps(const GAction& source, const GAction& target);

/// Existence of an equivariant bijection.
bool gset_isomorphic(const GAction& a, const GAction& b);

}  // namespace gshv
