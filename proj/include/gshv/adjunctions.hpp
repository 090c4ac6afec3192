#pragma once

#include "gshv/star.hpp"

namespace gshv {

/// Outcome of one adjunction check on concrete objects: both hom-sets are
/// enumerated exhaustively, the canonical transposition must be a bijection
/// between them, and the two triangle identities are verified literally on
/// the derived unit and counit.
struct AdjunctionReport {
  std::size_t lhs = 0;
  std::size_t rhs = 0;
  bool transpose_bijective = false;
  bool triangles = false;

  bool ok() const { return lhs == rhs && transpose_bijective && triangles; }
};

/// Hom(C, D) against Hom(C, D^{sm,I}) for a star sheaf C.
AdjunctionReport check_adjunction_smI(const StarContext& ctx, const GSheaf& c,
                                      const GSheaf& d);

/// Hom(D_G, E) against Hom(D, E) for E with trivial action.
AdjunctionReport check_adjunction_quotient(const GSheaf& d, const GSheaf& e);

/// Hom(E, D^G) against Hom(E, D) for E with trivial action.
AdjunctionReport check_adjunction_fixed(const GSheaf& e, const GSheaf& d);

/// Hom_G(D_eta, X) against Hom(D, X_S^star) for a star sheaf D.
AdjunctionReport check_adjunction_star_constant(const StarContext& ctx,
                                                const GSheaf& d,
                                                const GAction& x);

/// Hom(D_et, E) against Hom(D, E) for an et sheaf E.
AdjunctionReport check_adjunction_et(const StarContext& ctx, const GSheaf& d,
                                     const GSheaf& e);

/// Hom(D_set, E) against Hom(D, E) for a set sheaf E.
AdjunctionReport check_adjunction_set(const StarContext& ctx, const GSheaf& d,
                                      const GSheaf& e);

/// Hom(f^*D, E) against Hom(D, f_*^et E) along a site map.
AdjunctionReport check_adjunction_base_change(const SiteMap& f,
                                              const GSheaf& d,
                                              const GSheaf& e);

}  // namespace gshv
