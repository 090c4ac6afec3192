#pragma once

#include <cstdint>

#include "gshv/io.hpp"

namespace gshv {

/// splitmix64: the documented PRNG behind all instance generation, so any
/// implementation can reproduce the stream. next() advances the state by
/// 0x9E3779B97F4A7C15 and mixes with the usual two xor-multiply rounds;
/// below(n) reduces by plain modulo.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

struct GenBounds {
  int max_points = 4;       // hard cap 6
  int max_group_order = 8;  // hard cap 8
  int max_stalk = 6;        // per-stalk element cap, hard cap 8
};

/// Catalog of small groups used by the generator; index wraps around the
/// groups of order at most max_order.
std::shared_ptr<const FiniteGroup> catalog_group(std::uint64_t index,
                                                 int max_order);

/// Deterministic random instance. Poset: a random tree rooted at the generic
/// point. Inertia: a monotone profile of normal subgroups. Stalks: disjoint
/// unions of coset spaces G/H; with enforce_star the H's contain I(s), so the
/// result is a star sheaf by construction. Localizations: per source orbit an
/// equivariance-respecting target chosen uniformly among candidates.
Instance gen_instance(std::uint64_t seed, const GenBounds& bounds,
                      bool enforce_star = true, bool force_chain = false);

/// Chain presheaf drawn by the same recipe on a totally ordered site.
ChainPresheaf gen_chain(std::uint64_t seed, const GenBounds& bounds);

/// Canonical JSON the CLI prints for `gen`.
nlohmann::json gen_instance_json(std::uint64_t seed, const GenBounds& bounds);

}  // namespace gshv
