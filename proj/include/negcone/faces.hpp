#pragma once

// Faces F(c) of the cone bounded by the curve catalog, their extreme rays,
// and certificates that each ray is generated by the divisor catalog.

#include "negcone/nefmin.hpp"

namespace negcone {

struct Face {
  Vec curve;
  CurveSet closure;       // I(F(c))
  InequalitySystem system;  // divisor space; equalities: closure and c
};

struct Combination {
  std::vector<std::pair<std::size_t, Rational>> terms;  // divisor id, weight > 0
};

struct FaceCertificate {
  Face face;
  std::vector<Vec> rays;
  std::vector<Combination> memberships;  // one per ray
};

struct ContainmentFailure {
  Vec curve;      // the curve whose face escapes
  Vec ray;        // face ray outside cone(D)
  Vec separator;  // curve-side functional: >= 0 on D, < 0 on ray
};

struct Containment {
  std::optional<FaceCertificate> certificate;
  std::optional<ContainmentFailure> failure;
};

/// A Q-ray with no catalog expression: the separator read as a divisor is
/// nonnegative on every catalog curve and lies outside cone(D).
struct QFailure {
  Vec ray;
  Vec divisor;
};

struct QRayOrbit {
  Vec representative;
  std::vector<std::size_t> members;  // indices into q_rays
  FaceCertificate certificate;
};

struct CoveringClass {
  Vec representative;
  std::size_t orbit_size = 0;
  CurveSet closure;
  std::size_t face_rays = 0;
  std::vector<std::size_t> covers;  // Q-ray orbit indices whose face it contains
};

struct TheoremCertificate {
  SpaceId space = SpaceId::M06;
  std::vector<Vec> e_dual_rays;  // extreme rays of {x : D . x >= 0}
  std::vector<Vec> q_rays;
  std::vector<QRayOrbit> orbits;
  std::vector<CoveringClass> classes;
  std::optional<QFailure> q_failure;
  std::optional<ContainmentFailure> failure;

  bool success() const { return !q_failure && !failure; }
};

class FaceVerifier {
 public:
  FaceVerifier(NefminEngine& engine, Budget budget = {});

  Face face_of(const Vec& curve);
  std::vector<Vec> face_rays(const Face& face) const;
  Containment certify_containment(const Face& face, const std::vector<Vec>& rays) const;

  /// Independent re-check of a certificate: sums, signs, ray membership.
  bool recheck(const FaceCertificate& cert) const;

  /// F(q) is contained in F(c) when c vanishes on every ray of F(q).
  static bool face_contained(const Space& space, const std::vector<Vec>& rays_of_face, const Vec& curve);

  TheoremCertificate verify_effective_cone();

  /// Minimal orbit classes whose faces contain every Q-ray face.
  std::vector<CoveringClass> covering_classes(const TheoremCertificate& cert) const;

  /// Whether every Q-ray face lies in F(g c) for some listed curve c and
  /// group element g; returns the indices of uncovered Q-ray orbits.
  std::vector<std::size_t> uncovered_by(const TheoremCertificate& cert, const std::vector<Vec>& curves) const;

 private:
  NefminEngine& engine_;
  const Space& space_;
  const SymmetryGroup& group_;
  Budget budget_;
  std::vector<Vec> divisors_;
};

/// Worker count from NEGCONE_THREADS (default: hardware concurrency, min 1).
unsigned worker_count();

}  // namespace negcone
