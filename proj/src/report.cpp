#include "negcone/report.hpp"

#include "serialize.hpp"

#include <algorithm>
#include <functional>

namespace negcone {

ContractionReport report_contractions(FaceVerifier& verifier, NefminEngine& engine,
                                      const std::vector<Vec>& representatives) {
  const Space& sp = engine.space();
  ContractionReport out;
  out.space = sp.id;
  for (const auto& rep : representatives) {
    for (std::size_t d = 0; d < sp.divisors.size(); ++d) {
      if (sp.pair(sp.divisor_vec(d), rep) < 0) {
        throw std::invalid_argument(format_curve(sp, rep) + " is negative on " + sp.divisors[d].name);
      }
    }
    ContractionEntry e;
    e.representative = rep;
    std::set<IntVec> images;
    for (const auto& img : engine.group().curve_images(to_int_vec(primitive(rep)))) images.insert(img);
    e.orbit_size = images.size();

    const Face face = verifier.face_of(rep);
    e.closure = face.closure;
    e.face_rays = verifier.face_rays(face).size();
    for (std::size_t d = 0; d < sp.divisors.size(); ++d) {
      if (sp.pair(sp.divisor_vec(d), rep) == 0) e.vertical.push_back(d);
    }

    // Supports of increasing size over the closure, in lexicographic order.
    const std::size_t m = e.closure.size();
    std::optional<Decomposition> found;
    std::vector<std::size_t> pick;
    std::function<void(std::size_t, std::size_t)> search = [&](std::size_t from, std::size_t left) {
      if (found) return;
      if (left == 0) {
        std::vector<Vec> gens;
        for (auto k : pick) gens.push_back(sp.curve_vec(e.closure[k]));
        const auto ans = cone_member(rep, gens);
        if (!ans.member()) return;
        Decomposition dec;
        for (std::size_t k = 0; k < pick.size(); ++k) {
          if ((*ans.combination)[k] != 0) dec.terms.emplace_back(e.closure[pick[k]], (*ans.combination)[k]);
        }
        if (dec.terms.size() == pick.size()) found = dec;
        return;
      }
      for (std::size_t k = from; k + left <= m && !found; ++k) {
        pick.push_back(k);
        search(k + 1, left - 1);
        pick.pop_back();
      }
    };
    for (std::size_t size = 1; size <= std::min<std::size_t>(4, m) && !found; ++size) search(0, size);
    if (!found) {
      std::vector<Vec> gens;
      for (auto c : e.closure) gens.push_back(sp.curve_vec(c));
      const auto ans = cone_member(rep, gens);
      if (!ans.member()) throw std::invalid_argument(format_curve(sp, rep) + " is not generated by its closure");
      found.emplace();
      for (std::size_t k = 0; k < m; ++k) {
        if ((*ans.combination)[k] != 0) found->terms.emplace_back(e.closure[k], (*ans.combination)[k]);
      }
    }
    e.decomposition = *found;
    Vec sum(sp.rank);
    for (const auto& [c, w] : e.decomposition.terms) {
      const Vec v = sp.curve_vec(c);
      for (std::size_t k = 0; k < sp.rank; ++k) sum[k] += w * v[k];
    }
    if (sum != rep) throw std::logic_error("decomposition does not reconstruct the representative");
    out.entries.push_back(std::move(e));
  }
  return out;
}

// Serialization ------------------------------------------------------------

json to_json_value(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) {
    const Integer n = boost::multiprecision::numerator(q);
    if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max()) {
      return json(n.convert_to<long long>());
    }
  }
  return json(to_string(q));
}

json to_json_vec(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json_value(x));
  return a;
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("expected an integer or a \"p/q\" string");
}

Vec vec_from_json(const json& j) {
  Vec v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

namespace {

json curve_set_json(const Space& sp, const CurveSet& s) {
  json ids = json::array(), names = json::array();
  for (auto c : s) {
    ids.push_back(c);
    names.push_back(sp.curves[c].name);
  }
  return {{"ids", ids}, {"names", names}};
}

json vecs_json(const std::vector<Vec>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json_vec(v));
  return a;
}

json separator_json(const Space& sp, const Vec& divisor) {
  return {{"class", to_json_vec(divisor)}, {"text", format_divisor(sp, divisor)}};
}

}  // namespace

json space_json(const Space& sp) {
  json curves = json::array(), divisors = json::array();
  for (std::size_t c = 0; c < sp.curves.size(); ++c) {
    curves.push_back({{"id", c},
                      {"name", sp.curves[c].name},
                      {"class", sp.curves[c].cls},
                      {"swept", sp.divisors[sp.curves[c].swept].name}});
  }
  for (std::size_t d = 0; d < sp.divisors.size(); ++d) {
    divisors.push_back({{"id", d},
                        {"name", sp.divisors[d].name},
                        {"kind", sp.divisors[d].kind == DivisorKind::Boundary ? "boundary" : "keel-vermiere"},
                        {"class", sp.divisors[d].cls}});
  }
  return {{"space", to_string(sp.id)},
          {"basis", {{"divisors", sp.divisor_basis}, {"curves", sp.curve_basis}, {"pairing", sp.pairing}}},
          {"generators", {{"curves", curves}, {"divisors", divisors}}}};
}

json face_json(const Space& sp, const FaceCertificate& cert) {
  json memberships = json::array();
  for (const auto& m : cert.memberships) {
    json terms = json::array();
    for (const auto& [d, w] : m.terms) terms.push_back({{"divisor", sp.divisors[d].name}, {"weight", to_json_value(w)}});
    memberships.push_back(terms);
  }
  json rays_text = json::array();
  for (const auto& r : cert.rays) rays_text.push_back(format_divisor(sp, r));
  return {{"curve", to_json_vec(cert.face.curve)},
          {"curve_text", format_curve(sp, cert.face.curve)},
          {"closure", curve_set_json(sp, cert.face.closure)},
          {"rays", vecs_json(cert.rays)},
          {"rays_text", rays_text},
          {"memberships", memberships}};
}

json theorem_json(const Space& sp, const TheoremCertificate& cert) {
  json j;
  j["e_dual_ray_count"] = cert.e_dual_rays.size();
  j["q_rays"] = vecs_json(cert.q_rays);
  j["success"] = cert.success();
  json orbits = json::array(), faces = json::array();
  for (const auto& o : cert.orbits) {
    orbits.push_back({{"representative", to_json_vec(o.representative)},
                      {"representative_text", format_curve(sp, o.representative)},
                      {"members", o.members},
                      {"face_rays", o.certificate.rays.size()}});
    faces.push_back(face_json(sp, o.certificate));
  }
  j["q_orbits"] = orbits;
  j["faces"] = faces;
  json classes = json::array();
  for (const auto& c : cert.classes) {
    classes.push_back({{"representative", to_json_vec(c.representative)},
                       {"representative_text", format_curve(sp, c.representative)},
                       {"orbit_size", c.orbit_size},
                       {"face_rays", c.face_rays},
                       {"closure_size", c.closure.size()},
                       {"covers_q_orbits", c.covers}});
  }
  j["classification"] = classes;
  if (cert.q_failure) {
    j["counterexample"] = {{"kind", "q-ray outside cone(C)"},
                           {"ray", to_json_vec(cert.q_failure->ray)},
                           {"ray_text", format_curve(sp, cert.q_failure->ray)},
                           {"divisor", separator_json(sp, cert.q_failure->divisor)}};
  }
  if (cert.failure) {
    j["counterexample"] = {{"kind", "face ray outside cone(D)"},
                           {"curve", format_curve(sp, cert.failure->curve)},
                           {"ray", to_json_vec(cert.failure->ray)},
                           {"ray_text", format_divisor(sp, cert.failure->ray)},
                           {"separator", to_json_vec(cert.failure->separator)}};
  }
  return j;
}

json enumeration_json(const Space& sp, const EnumerationReport& r, const std::vector<Vec>& covers) {
  json j;
  json cov = json::array();
  for (const auto& c : covers) cov.push_back(format_curve(sp, c));
  j["covers"] = cov;
  json subsets = json::array();
  for (std::size_t i = 0; i < r.nef_minimal.size(); ++i) {
    json weights = json::array();
    for (const auto& [c, w] : r.certificates[i].weights) weights.push_back({{"curve", c}, {"weight", to_json_value(w)}});
    subsets.push_back({{"subset", r.nef_minimal[i]},
                       {"names", curve_set_json(sp, r.nef_minimal[i])["names"]},
                       {"orbit_size", r.orbit_sizes[i]},
                       {"certificate", {{"curve", to_json_vec(r.certificates[i].curve)},
                                        {"curve_text", format_curve(sp, r.certificates[i].curve)},
                                        {"weights", weights}}},
                       {"covered_by", r.covered_by[i] ? json(cov[*r.covered_by[i]]) : json(nullptr)}});
  }
  j["nef_minimal"] = subsets;
  json unc = json::array();
  for (const auto& u : r.uncovered) unc.push_back(u);
  j["uncovered"] = unc;
  j["all_covered"] = r.all_covered();
  j["states_visited"] = r.states_visited;
  j["eliminated"] = {{"shared_divisor", r.eliminated_shared},
                     {"covered", r.eliminated_covered},
                     {"replacement", r.eliminated_replacement},
                     {"exhaustion", r.eliminated_exhaustion}};
  json records = json::array();
  for (const auto& rec : r.ledger_records) {
    records.push_back({{"subset", rec.subset}, {"criterion", rec.criterion}, {"detail", rec.detail}});
  }
  j["ledger"] = {{"records", records}, {"edges", r.ledger_edges}, {"acyclic", r.ledger_acyclic}};
  j["truncated"] = r.truncated;
  return j;
}

json rays_json(const Space& sp, const RaysOfM& r) {
  json matched = json::object();
  for (const auto& [ray, d] : r.matched) matched[std::to_string(ray)] = sp.divisors[d].name;
  json unmatched = json::array();
  for (auto d : r.unmatched_divisors) unmatched.push_back(sp.divisors[d].name);
  json text = json::array();
  for (const auto& v : r.rays) text.push_back(format_divisor(sp, v));
  return {{"complete", r.complete},
          {"note", r.note},
          {"ray_count", r.rays.size()},
          {"rays", vecs_json(r.rays)},
          {"rays_text", text},
          {"matched", matched},
          {"unmatched_divisors", unmatched},
          {"bijective", r.bijective()},
          {"seconds", r.seconds}};
}

json facets_json(const Space& sp, const FacetCheck& f) {
  json certs = json::array();
  for (std::size_t i = 0; i < f.facets.size(); ++i) {
    json terms = json::array();
    if (f.certificates[i]) {
      for (std::size_t c = 0; c < f.certificates[i]->size(); ++c) {
        const Rational& w = (*f.certificates[i])[c];
        if (w != 0) terms.push_back({{"curve", sp.curves[c].name}, {"weight", to_json_value(w)}});
      }
    }
    certs.push_back({{"facet", to_json_vec(f.facets[i])},
                     {"curve_text", format_curve(sp, sp.curve_of_functional(f.facets[i]))},
                     {"certified", f.certificates[i].has_value()},
                     {"combination", terms}});
  }
  json seps = json::array();
  for (const auto& s : f.separators) seps.push_back(separator_json(sp, s));
  return {{"facet_count", f.facets.size()},
          {"facets", certs},
          {"failures", f.failures},
          {"separators", seps},
          {"all_certified", f.all_certified()},
          {"seconds", f.seconds}};
}

json crosscheck_json(const Space& sp, const CrosscheckReport& c) {
  json ex = json::array();
  for (const auto& s : c.disagreeing) ex.push_back(curve_set_json(sp, s));
  return {{"seed", c.seed},
          {"trials", c.trials},
          {"generating", c.generating},
          {"disagreements", c.disagreements},
          {"examples", ex},
          {"face_checks", c.face_checks},
          {"face_disagreements", c.face_disagreements},
          {"seconds", c.seconds}};
}

json contractions_json(const Space& sp, const ContractionReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json dec = json::array();
    for (const auto& [c, w] : e.decomposition.terms) {
      dec.push_back({{"curve", sp.curves[c].name},
                     {"weight", to_json_value(w)},
                     {"swept", sp.divisors[sp.curves[c].swept].name}});
    }
    json vertical = json::array();
    for (auto d : e.vertical) vertical.push_back(sp.divisors[d].name);
    entries.push_back({{"representative", format_curve(sp, e.representative)},
                       {"class", to_json_vec(e.representative)},
                       {"orbit_size", e.orbit_size},
                       {"decomposition", dec},
                       {"closure", curve_set_json(sp, e.closure)},
                       {"vertical_divisors", vertical},
                       {"face_rays", e.face_rays}});
  }
  return {{"classes", entries},
          {"note", "vertical divisors pair to zero with the fiber class; divisors contracted to points "
                   "are not determined by cone data and are not claimed"}};
}

json fixtures_json(const std::vector<FixtureResult>& results) {
  json a = json::array();
  for (const auto& r : results) {
    a.push_back({{"name", r.name}, {"passed", r.passed}, {"instances", r.instances}, {"detail", r.detail}});
  }
  return a;
}

}  // namespace negcone
