#include "doctest.h"

#include "negcone/faces.hpp"
#include "negcone/oracle.hpp"
#include "negcone/pipeline.hpp"

using namespace negcone;

namespace {

// Extremality inside the face: the catalog curves and the face curve that
// vanish on the ray cut out a line.
void check_face_ray(const Space& sp, const Vec& curve, const Vec& ray) {
  CHECK(sp.pair(ray, curve) == 0);
  std::vector<Vec> tight = {sp.functional(curve)};
  for (std::size_t c = 0; c < sp.curves.size(); ++c) {
    const Rational p = sp.pair(ray, sp.curve_vec(c));
    CHECK(p >= 0);
    if (p == 0) tight.push_back(sp.functional(sp.curve_vec(c)));
  }
  CHECK(rank(tight, sp.rank) + 1 == sp.rank);
}

}  // namespace

TEST_SUITE("faces") {
  TEST_CASE("five-pointed space: every dual ray is a catalog curve combination") {
    const Space sp = build_space(SpaceId::M05);
    const SymmetryGroup g(sp);
    NefminEngine engine(sp, g);
    FaceVerifier verifier(engine);
    const auto cert = verifier.verify_effective_cone();
    CHECK(cert.success());
    CHECK(cert.q_rays.size() == 10);
    CHECK(cert.orbits.size() == 2);
    for (const auto& o : cert.orbits) CHECK(verifier.recheck(o.certificate));
    const auto classes = verifier.covering_classes(cert);
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].orbit_size == 5);
    CHECK(verifier.uncovered_by(cert, {parse_curve(sp, "l-e0")}).empty());
  }

  TEST_CASE("face of l-e1 on the six-pointed space") {
    const Space sp = build_space(SpaceId::M06);
    const SymmetryGroup g(sp);
    NefminEngine engine(sp, g);
    FaceVerifier verifier(engine);
    const Vec c = parse_curve(sp, "l-e1");
    const Face f = verifier.face_of(c);
    const auto rays = verifier.face_rays(f);
    CHECK(rays.size() == 10);
    for (const auto& r : rays) check_face_ray(sp, c, r);
    const auto ans = verifier.certify_containment(f, rays);
    REQUIRE(ans.certificate);
    CHECK(verifier.recheck(*ans.certificate));
    CHECK(FaceVerifier::face_contained(sp, rays, c));
    CHECK_FALSE(FaceVerifier::face_contained(sp, rays, parse_curve(sp, "l-e2")));
  }

  TEST_CASE("face rays of the conic class") {
    const Space sp = build_space(SpaceId::M06);
    const SymmetryGroup g(sp);
    NefminEngine engine(sp, g);
    FaceVerifier verifier(engine);
    const Vec c = parse_curve(sp, "2l-e12-e13-e14-e25-e35-e45");
    const auto rays = verifier.face_rays(verifier.face_of(c));
    CHECK(rays.size() == 14);
    for (const auto& r : rays) check_face_ray(sp, c, r);
    const Vec d6 = parse_divisor(sp, "6H-4E1-3E2-3E3-3E4-4E5-2E12-2E13-2E14-2E15-2E25-2E35-2E45");
    CHECK(std::find(rays.begin(), rays.end(), d6) != rays.end());
  }

  TEST_CASE("a face with a line is reported as a catalog error") {
    const Space sp = build_space(SpaceId::M06);
    const SymmetryGroup g(sp);
    NefminEngine engine(sp, g);
    FaceVerifier verifier(engine);
    Face f;
    f.curve = parse_curve(sp, "l-e1");
    f.system.dim = sp.rank;
    CHECK_THROWS_AS(verifier.face_rays(f), CatalogError);
  }

  TEST_CASE("dropping a Keel-Vermiere divisor produces a separating divisor") {
    const Space sp = mutated_space(SpaceId::M06, Mutation{0, std::nullopt});
    const SymmetryGroup g(sp);
    NefminEngine engine(sp, g);
    FaceVerifier verifier(engine);
    const auto cert = verifier.verify_effective_cone();
    CHECK_FALSE(cert.success());
    REQUIRE(cert.q_failure);
    const Vec& d = cert.q_failure->divisor;
    for (std::size_t c = 0; c < sp.curves.size(); ++c) CHECK(sp.pair(d, sp.curve_vec(c)) >= 0);
    std::vector<Vec> gens;
    for (std::size_t k = 0; k < sp.divisors.size(); ++k) gens.push_back(sp.divisor_vec(k));
    CHECK_FALSE(cone_member(d, gens).member());
  }
}

TEST_SUITE("oracle") {
  TEST_CASE("five-pointed space: facets of the divisor cone lie in the curve cone") {
    const Space sp = build_space(SpaceId::M05);
    const auto f = facet_check(sp);
    CHECK(f.facets.size() == 10);
    CHECK(f.all_certified());
    const auto sum = rays_of_sum(sp, f);
    CHECK(sum.complete);
    CHECK(sum.bijective());
  }

  TEST_CASE("five-pointed space: rays of the curve-bounded cone are not boundary classes") {
    const Space sp = build_space(SpaceId::M05);
    const auto r = rays_of_M(sp);
    REQUIRE(r.complete);
    CHECK(r.rays.size() == 10);
    CHECK(r.matched.empty());
    // Each ray is nonnegative on every curve.
    for (const auto& ray : r.rays) {
      for (std::size_t c = 0; c < sp.curves.size(); ++c) CHECK(sp.pair(ray, sp.curve_vec(c)) >= 0);
    }
  }

  TEST_CASE("ray budget is enforced") {
    const Space sp = build_space(SpaceId::M06);
    Budget b;
    b.max_rays = 50;
    const auto r = rays_of_M(sp, b);
    CHECK_FALSE(r.complete);
    CHECK_FALSE(r.note.empty());
  }

  TEST_CASE("seeded crosscheck is reproducible") {
    const Space sp = build_space(SpaceId::M06);
    const auto a = crosscheck(sp, 200, 5, 5, 4);
    const auto b = crosscheck(sp, 200, 5, 5, 4);
    CHECK(a.disagreements == 0);
    CHECK(a.face_disagreements == 0);
    CHECK(a.generating == b.generating);
  }
}
