#pragma once

// Cone-side data of the covering classes: fiber decompositions, vanishing
// closures and the divisors vertical for each class.

#include "negcone/faces.hpp"

namespace negcone {

struct Decomposition {
  std::vector<std::pair<std::size_t, Rational>> terms;  // catalog curve, weight > 0
};

struct ContractionEntry {
  Vec representative;
  std::size_t orbit_size = 0;
  /// Smallest-support decomposition found over the closure, first in
  /// lexicographic order of supports.
  Decomposition decomposition;
  CurveSet closure;
  /// Catalog divisors pairing to zero with the representative.
  std::vector<std::size_t> vertical;
  std::size_t face_rays = 0;
};

struct ContractionReport {
  SpaceId space = SpaceId::M06;
  std::vector<ContractionEntry> entries;
};

/// One entry per representative; each must lie in cone(C) and pair
/// nonnegatively with the divisor catalog.
ContractionReport report_contractions(FaceVerifier& verifier, NefminEngine& engine,
                                      const std::vector<Vec>& representatives);

}  // namespace negcone
