#include "negcone/faces.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace negcone {

unsigned worker_count() {
  if (const char* env = std::getenv("NEGCONE_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Runs body(i) for i in [0, n) on up to worker_count() threads. Results must
// be written to per-index slots so the outcome is schedule independent.
template <class F>
void parallel_for(std::size_t n, F body) {
  const unsigned workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex m;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(m);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

FaceVerifier::FaceVerifier(NefminEngine& engine, Budget budget)
    : engine_(engine), space_(engine.space()), group_(engine.group()), budget_(budget) {
  for (std::size_t d = 0; d < space_.divisors.size(); ++d) divisors_.push_back(space_.divisor_vec(d));
}

Face FaceVerifier::face_of(const Vec& curve) {
  Face f;
  f.curve = curve;
  f.closure = engine_.vanishing_closure_of_curve(curve);
  f.system.dim = space_.rank;
  f.system.equalities.push_back(space_.functional(curve));
  for (std::size_t c = 0; c < space_.curves.size(); ++c) {
    auto& dst = std::binary_search(f.closure.begin(), f.closure.end(), c) ? f.system.equalities
                                                                           : f.system.inequalities;
    dst.push_back(space_.functional(space_.curves[c].cls));
  }
  return f;
}

std::vector<Vec> FaceVerifier::face_rays(const Face& face) const {
  auto r = extreme_rays(face.system, budget_);
  if (!r.pointed) {
    throw CatalogError("face of " + format_curve(space_, face.curve) + " contains a line");
  }
  return r.rays;
}

Containment FaceVerifier::certify_containment(const Face& face, const std::vector<Vec>& rays) const {
  Containment out;
  FaceCertificate cert;
  cert.face = face;
  cert.rays = rays;
  for (const auto& ray : rays) {
    const auto ans = cone_member(ray, divisors_);
    if (!ans.member()) {
      out.failure = ContainmentFailure{face.curve, ray, *ans.separator};
      return out;
    }
    Combination comb;
    for (std::size_t d = 0; d < divisors_.size(); ++d) {
      if ((*ans.combination)[d] != 0) comb.terms.emplace_back(d, (*ans.combination)[d]);
    }
    cert.memberships.push_back(std::move(comb));
  }
  out.certificate = std::move(cert);
  return out;
}

bool FaceVerifier::recheck(const FaceCertificate& cert) const {
  if (cert.rays.size() != cert.memberships.size()) return false;
  for (std::size_t r = 0; r < cert.rays.size(); ++r) {
    const Vec& ray = cert.rays[r];
    for (const auto& eq : cert.face.system.equalities) {
      if (dot(eq, ray) != 0) return false;
    }
    for (const auto& ineq : cert.face.system.inequalities) {
      if (dot(ineq, ray) < 0) return false;
    }
    Vec sum(space_.rank);
    for (const auto& [d, w] : cert.memberships[r].terms) {
      if (w <= 0) return false;
      for (std::size_t k = 0; k < space_.rank; ++k) sum[k] += w * divisors_[d][k];
    }
    if (sum != ray) return false;
  }
  return true;
}

bool FaceVerifier::face_contained(const Space& space, const std::vector<Vec>& rays_of_face, const Vec& curve) {
  for (const auto& r : rays_of_face) {
    if (space.pair(r, curve) != 0) return false;
  }
  return true;
}

TheoremCertificate FaceVerifier::verify_effective_cone() {
  TheoremCertificate cert;
  cert.space = space_.id;

  InequalitySystem dual;
  dual.dim = space_.rank;
  for (const auto& d : divisors_) dual.inequalities.push_back(space_.curve_of_functional(d));
  const auto er = extreme_rays(dual, budget_);
  if (!er.pointed) throw CatalogError("divisor catalog does not span the divisor space");
  cert.e_dual_rays = er.rays;

  // Q is cut from the dual of cone(D) by cone(C). When every dual ray is
  // generated by C the two agree; otherwise the separator is a divisor
  // nonnegative on C that is not in cone(D).
  std::vector<Vec> curves;
  for (std::size_t c = 0; c < space_.curves.size(); ++c) curves.push_back(space_.curve_vec(c));
  std::vector<FarkasAnswer> answers(er.rays.size());
  parallel_for(er.rays.size(), [&](std::size_t i) { answers[i] = cone_member(er.rays[i], curves); });
  for (std::size_t i = 0; i < er.rays.size(); ++i) {
    if (!answers[i].member()) {
      cert.q_failure = QFailure{er.rays[i], space_.curve_of_functional(*answers[i].separator)};
      return cert;
    }
  }
  cert.q_rays = er.rays;

  std::vector<IntVec> ints;
  for (const auto& q : cert.q_rays) ints.push_back(to_int_vec(q));
  const auto orbits = group_.orbits_of_curves(ints);

  // Closures share the engine's memo and are computed serially.
  std::vector<Face> faces;
  for (const auto& o : orbits) faces.push_back(face_of(cert.q_rays[o.front()]));
  std::vector<Containment> results(orbits.size());
  parallel_for(orbits.size(), [&](std::size_t i) { results[i] = certify_containment(faces[i], face_rays(faces[i])); });

  for (std::size_t i = 0; i < orbits.size(); ++i) {
    if (results[i].failure) {
      cert.failure = results[i].failure;
      return cert;
    }
    if (!recheck(*results[i].certificate)) throw std::logic_error("face certificate failed re-verification");
    cert.orbits.push_back({cert.q_rays[orbits[i].front()], orbits[i], std::move(*results[i].certificate)});
  }
  cert.classes = covering_classes(cert);
  return cert;
}

std::vector<CoveringClass> FaceVerifier::covering_classes(const TheoremCertificate& cert) const {
  const std::size_t m = cert.orbits.size();
  // contains[a][b]: F(q_b) lies in F(g q_a) for some group element g.
  std::vector<std::vector<bool>> contains(m, std::vector<bool>(m, false));
  std::vector<std::vector<Vec>> images(m);
  for (std::size_t a = 0; a < m; ++a) {
    std::set<IntVec> seen;
    for (const auto& img : group_.curve_images(to_int_vec(cert.orbits[a].representative))) {
      if (seen.insert(img).second) images[a].push_back(to_vec(img));
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const auto& rays = cert.orbits[b].certificate.rays;
      contains[a][b] = std::any_of(images[a].begin(), images[a].end(),
                                   [&](const Vec& c) { return face_contained(space_, rays, c); });
    }
  }
  // Keep faces not strictly inside another face; of equal faces keep the first.
  std::vector<CoveringClass> out;
  for (std::size_t a = 0; a < m; ++a) {
    if (cert.orbits[a].certificate.rays.empty()) continue;
    bool dominated = false;
    for (std::size_t b = 0; b < m && !dominated; ++b) {
      if (b == a || !contains[b][a]) continue;
      const bool equal = contains[a][b];
      dominated = !equal || b < a;
    }
    if (dominated) continue;
    CoveringClass cls;
    cls.representative = cert.orbits[a].representative;
    cls.orbit_size = cert.orbits[a].members.size();
    cls.closure = cert.orbits[a].certificate.face.closure;
    cls.face_rays = cert.orbits[a].certificate.rays.size();
    for (std::size_t b = 0; b < m; ++b) {
      if (contains[a][b]) cls.covers.push_back(b);
    }
    out.push_back(std::move(cls));
  }
  return out;
}

std::vector<std::size_t> FaceVerifier::uncovered_by(const TheoremCertificate& cert,
                                                    const std::vector<Vec>& curves) const {
  std::vector<Vec> all;
  for (const auto& c : curves) {
    std::set<IntVec> seen;
    for (const auto& img : group_.curve_images(to_int_vec(primitive(c)))) {
      if (seen.insert(img).second) all.push_back(to_vec(img));
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < cert.orbits.size(); ++b) {
    const auto& rays = cert.orbits[b].certificate.rays;
    const bool ok = std::any_of(all.begin(), all.end(), [&](const Vec& c) { return face_contained(space_, rays, c); });
    if (!ok) out.push_back(b);
  }
  return out;
}

}  // namespace negcone
