#pragma once

// Brute-force dual computations used to cross-validate the main routes. Runs
// from catalog data only; nothing is shared with the engine's caches.

#include "negcone/catalog.hpp"

#include <cstdint>
#include <map>

namespace negcone {

struct RaysOfM {
  std::vector<Vec> rays;  // divisor classes, empty unless complete
  bool complete = false;
  std::string note;       // budget message when incomplete
  std::map<std::size_t, std::size_t> matched;  // ray index -> divisor id
  std::vector<std::size_t> unmatched_divisors;
  double seconds = 0;

  bool bijective() const { return complete && matched.size() == rays.size() && unmatched_divisors.empty(); }
};

/// Extreme rays of {D : D . c >= 0 for all catalog curves c}, matched against
/// the divisor catalog up to positive scaling.
RaysOfM rays_of_M(const Space& space, const Budget& budget = {});

struct FacetCheck {
  std::vector<Vec> facets;  // functionals on divisors, one per facet of cone(D)
  std::vector<std::optional<std::vector<Rational>>> certificates;  // weights over catalog curves
  std::vector<std::size_t> failures;
  std::vector<Vec> separators;  // per failure: divisor >= 0 on curves, < 0 on the facet curve
  double seconds = 0;

  bool all_certified() const { return failures.empty(); }
};

/// Facets of cone(D) by the dual double description; each facet, read as a
/// curve, is tested for membership in cone(C).
FacetCheck facet_check(const Space& space, const Budget& budget = {});

/// Extreme rays of cone(D) + M. Its dual is cone(C) cut by the facets of
/// cone(D); `check` supplies those facets and which of them lie in cone(C).
RaysOfM rays_of_sum(const Space& space, const FacetCheck& check);

struct CrosscheckReport {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t generating = 0;
  std::size_t disagreements = 0;
  std::vector<std::vector<std::size_t>> disagreeing;  // up to a few examples
  std::size_t face_checks = 0;
  std::size_t face_disagreements = 0;
  double seconds = 0;
};

/// Random subsets (size <= max_size, distinct swept divisors) tested by both
/// the positive row reduction and the LP; afterwards the faces of up to
/// `faces` generating subsets are recomputed by double description and their
/// dimension compared with the closure-based one.
CrosscheckReport crosscheck(const Space& space, std::size_t trials, std::uint64_t seed, std::size_t max_size = 5,
                            std::size_t faces = 40);

}  // namespace negcone
