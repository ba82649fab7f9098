#include "negcone/pipeline.hpp"

#include "serialize.hpp"

#include <boost/version.hpp>
#include <gmp.h>

#include <chrono>
#include <fstream>
#include <sstream>

namespace negcone {

namespace {

constexpr const char* kVersion = "1.0.0";

class VerificationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Vec> parse_curves(const Space& sp, const std::vector<std::string>& texts) {
  std::vector<Vec> out;
  for (const auto& t : texts) out.push_back(parse_curve(sp, t));
  return out;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

struct Context {
  const RunConfig& cfg;
  Space space;
  Budget budget;
  json art;
  std::ostringstream summary;
  ExitCode code = ExitCode::Ok;

  void fail(ExitCode c) {
    if (code == ExitCode::Ok) code = c;
  }
};

// Faces of the covering curves, each certified inside cone(D).
bool certify_covers(Context& cx, FaceVerifier& fv, const std::vector<Vec>& covers) {
  json faces = json::array();
  bool ok = true;
  for (const auto& c : covers) {
    const Face f = fv.face_of(c);
    const auto res = fv.certify_containment(f, fv.face_rays(f));
    if (res.certificate) {
      faces.push_back(face_json(cx.space, *res.certificate));
      cx.summary << "  face of " << format_curve(cx.space, c) << ": " << res.certificate->rays.size()
                 << " rays, all in cone(D)\n";
    } else {
      ok = false;
      faces.push_back({{"curve", format_curve(cx.space, c)},
                       {"failing_ray", format_divisor(cx.space, res.failure->ray)},
                       {"separator", to_json_vec(res.failure->separator)}});
      cx.summary << "  face of " << format_curve(cx.space, c) << ": ray " << format_divisor(cx.space, res.failure->ray)
                 << " is not in cone(D)\n";
    }
  }
  cx.art["cover_faces"] = faces;
  return ok;
}

EnumerationReport run_enumeration(Context& cx, NefminEngine& engine, const std::vector<Vec>& covers, bool c23) {
  EnumerationOptions opt;
  opt.criteria23 = c23;
  opt.max_size = cx.cfg.max_size;
  opt.budget = cx.budget;
  return engine.enumerate(covers, opt);
}

void cmd_verify(Context& cx, bool enumerate_only) {
  const auto t0 = std::chrono::steady_clock::now();
  const SymmetryGroup group(cx.space);
  NefminEngine engine(cx.space, group);
  FaceVerifier fv(engine, cx.budget);
  const auto covers = parse_curves(cx.space, cx.cfg.covers.empty() ? default_covers(cx.space.id) : cx.cfg.covers);
  const std::string& route = enumerate_only ? std::string("nefmin") : cx.cfg.route;

  std::optional<bool> q_verdict;
  if (route == "qrays" || route == "both") {
    const auto cert = fv.verify_effective_cone();
    json c = space_json(cx.space);
    c.update(theorem_json(cx.space, cert));
    cx.art["certificate"] = c;
    if (cert.q_failure) {
      cx.summary << "Q-ray route: extreme ray " << format_curve(cx.space, cert.q_failure->ray)
                 << " of the dual of cone(D) is not generated by the curve catalog\n"
                 << "  counterexample divisor (>= 0 on every catalog curve, outside cone(D)): "
                 << format_divisor(cx.space, cert.q_failure->divisor) << "\n";
      cx.fail(ExitCode::VerificationFailure);
      return;
    }
    if (cert.failure) {
      cx.summary << "Q-ray route: face of " << format_curve(cx.space, cert.failure->curve) << " has ray "
                 << format_divisor(cx.space, cert.failure->ray) << " outside cone(D)\n";
      cx.fail(ExitCode::VerificationFailure);
      return;
    }
    const auto uncovered = fv.uncovered_by(cert, covers);
    q_verdict = uncovered.empty();
    cx.art["qrays_verdict"] = {{"covered", *q_verdict}, {"uncovered_q_orbits", uncovered}};
    cx.summary << "Q-ray route: " << cert.q_rays.size() << " extreme rays of Q in " << cert.orbits.size()
               << " orbits; every face certified in cone(D)\n";
    std::vector<std::string> reps;
    for (const auto& k : cert.classes) reps.push_back(format_curve(cx.space, k.representative));
    cx.summary << "  covering classes: " << cert.classes.size() << " (" << join(reps, ", ") << ")\n";
    cx.summary << "  listed covers contain every Q-ray face: " << (*q_verdict ? "yes" : "no") << "\n";
  }

  if (route == "nefmin" || route == "both") {
    const bool faces_ok = certify_covers(cx, fv, covers);
    const auto r1 = run_enumeration(cx, engine, covers, false);
    cx.art["enumeration"] = enumeration_json(cx.space, r1, covers);
    std::size_t total = 0;
    for (auto s : r1.orbit_sizes) total += s;
    cx.summary << "nefmin route (criteria 1): " << r1.nef_minimal.size() << " nef-minimal orbits (" << total
               << " subsets), " << r1.uncovered.size() << " uncovered, " << r1.states_visited << " states\n";
    bool verdict = r1.all_covered() && faces_ok;
    if (cx.cfg.criteria == "123") {
      const auto r3 = run_enumeration(cx, engine, covers, true);
      cx.art["enumeration_criteria123"] = enumeration_json(cx.space, r3, covers);
      cx.summary << "nefmin route (criteria 1,2,3): " << r3.nef_minimal.size() << " nef-minimal orbits, "
                 << r3.uncovered.size() << " uncovered, " << r3.eliminated_replacement << " by replacement, "
                 << r3.eliminated_exhaustion << " by exhaustion, ledger " << (r3.ledger_acyclic ? "acyclic" : "CYCLIC")
                 << "\n";
      if (r3.all_covered() != r1.all_covered() || !r3.ledger_acyclic) {
        cx.summary << "  criteria 1,2,3 disagree with criteria 1\n";
        cx.fail(ExitCode::VerificationFailure);
      }
    }
    cx.art["nefmin_verdict"] = {{"covered", r1.all_covered()}, {"cover_faces_in_cone", faces_ok}};
    if (!verdict) cx.fail(ExitCode::VerificationFailure);
    if (q_verdict && *q_verdict != r1.all_covered()) {
      cx.summary << "routes disagree\n";
      cx.fail(ExitCode::VerificationFailure);
    }
  }
  if (q_verdict && !*q_verdict) cx.fail(ExitCode::VerificationFailure);
  if (q_verdict && route == "both") cx.art["routes_agree"] = cx.code == ExitCode::Ok;
  cx.art["seconds"] = since(t0);
}

void cmd_orbits(Context& cx) {
  const SymmetryGroup group(cx.space);
  const auto uni = unimodality_flags(cx.space);
  json co = json::array(), dor = json::array();
  for (const auto& o : group.curve_orbits()) {
    json names = json::array();
    for (auto c : o) names.push_back(cx.space.curves[c].name);
    co.push_back({{"size", o.size()}, {"representative", cx.space.curves[o.front()].name}, {"unimodal", bool(uni[o.front()])},
                  {"members", names}});
    cx.summary << "curve orbit " << cx.space.curves[o.front()].name << ": " << o.size()
               << (uni[o.front()] ? "" : " (not unimodal)") << "\n";
  }
  for (const auto& o : group.divisor_orbits()) {
    json names = json::array();
    for (auto d : o) names.push_back(cx.space.divisors[d].name);
    dor.push_back({{"size", o.size()}, {"representative", cx.space.divisors[o.front()].name}, {"members", names}});
    cx.summary << "divisor orbit " << cx.space.divisors[o.front()].name << ": " << o.size() << "\n";
  }
  const auto gc = group.generator_closure();
  cx.art["group"] = {{"order", group.size()}, {"full_order", group.full_order()},
                     {"closed_under_generators", std::vector<bool>(gc.begin(), gc.end())}};
  cx.art["curve_orbits"] = co;
  cx.art["divisor_orbits"] = dor;
  cx.summary << "group order " << group.size() << " of " << group.full_order() << "\n";
}

void cmd_face(Context& cx) {
  if (cx.cfg.curve.empty()) throw std::invalid_argument("face: --curve is required");
  const SymmetryGroup group(cx.space);
  NefminEngine engine(cx.space, group);
  FaceVerifier fv(engine, cx.budget);
  const Vec c = parse_curve(cx.space, cx.cfg.curve);
  for (std::size_t d = 0; d < cx.space.divisors.size(); ++d) {
    if (cx.space.pair(cx.space.divisor_vec(d), c) < 0) {
      throw std::invalid_argument(cx.cfg.curve + " is negative on " + cx.space.divisors[d].name);
    }
  }
  const Face f = fv.face_of(c);
  const auto res = fv.certify_containment(f, fv.face_rays(f));
  cx.summary << "closure: " << f.closure.size() << " curves\n";
  if (res.certificate) {
    cx.art["face"] = face_json(cx.space, *res.certificate);
    for (const auto& r : res.certificate->rays) cx.summary << "  ray " << format_divisor(cx.space, r) << "\n";
  } else {
    cx.art["failure"] = {{"ray", format_divisor(cx.space, res.failure->ray)},
                         {"separator", to_json_vec(res.failure->separator)}};
    cx.summary << "  ray " << format_divisor(cx.space, res.failure->ray) << " is not in cone(D)\n";
    cx.fail(ExitCode::VerificationFailure);
  }
}

void cmd_oracle(Context& cx) {
  const std::string& w = cx.cfg.what;
  if (w == "rays") {
    const auto r = rays_of_M(cx.space, cx.budget);
    cx.art["rays_of_M"] = rays_json(cx.space, r);
    if (!r.complete) {
      cx.summary << "rays of M: incomplete after " << r.seconds << " s (" << r.note << ")\n";
      cx.fail(ExitCode::BudgetExceeded);
      return;
    }
    cx.summary << "rays of M: " << r.rays.size() << " rays, " << r.matched.size()
               << " match catalog divisors, " << r.seconds << " s\n";
    if (!r.bijective()) cx.fail(ExitCode::VerificationFailure);
  } else if (w == "facets" || w == "sum") {
    const auto f = facet_check(cx.space, cx.budget);
    cx.art["facets"] = facets_json(cx.space, f);
    cx.summary << "facets of cone(D): " << f.facets.size() << ", certified in cone(C): "
               << f.facets.size() - f.failures.size() << ", " << f.seconds << " s\n";
    for (const auto& s : f.separators) {
      cx.summary << "  divisor >= 0 on C outside cone(D): " << format_divisor(cx.space, s) << "\n";
    }
    if (!f.all_certified()) {
      cx.fail(ExitCode::VerificationFailure);
      return;
    }
    if (w == "sum") {
      const auto r = rays_of_sum(cx.space, f);
      cx.art["rays_of_sum"] = rays_json(cx.space, r);
      cx.summary << "rays of cone(D) + M: " << r.rays.size() << ", bijective with the catalog: "
                 << (r.bijective() ? "yes" : "no") << "\n";
      if (!r.complete) cx.fail(ExitCode::BudgetExceeded);
      else if (!r.bijective()) cx.fail(ExitCode::VerificationFailure);
    }
  } else if (w == "crosscheck") {
    const auto c = crosscheck(cx.space, cx.cfg.trials, cx.cfg.seed);
    cx.art["crosscheck"] = crosscheck_json(cx.space, c);
    cx.summary << "crosscheck: " << c.trials << " subsets, " << c.generating << " generating, " << c.disagreements
               << " disagreements; " << c.face_checks << " faces, " << c.face_disagreements << " disagreements\n";
    if (c.disagreements || c.face_disagreements) cx.fail(ExitCode::VerificationFailure);
  } else {
    throw std::invalid_argument("oracle: unknown --what " + w);
  }
}

void cmd_fixtures(Context& cx) {
  const auto results = run_fixtures();
  cx.art["fixtures"] = fixtures_json(results);
  for (const auto& r : results) {
    cx.summary << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.instances << ")"
               << (r.passed ? "" : ": " + r.detail) << "\n";
    if (!r.passed) cx.fail(ExitCode::VerificationFailure);
  }
}

void cmd_contractions(Context& cx) {
  const SymmetryGroup group(cx.space);
  NefminEngine engine(cx.space, group);
  FaceVerifier fv(engine, cx.budget);
  const auto cert = fv.verify_effective_cone();
  if (!cert.success()) {
    cx.summary << "the effective cone verification fails; no report\n";
    cx.fail(ExitCode::VerificationFailure);
    return;
  }
  const auto covers = parse_curves(cx.space, cx.cfg.covers.empty() ? default_covers(cx.space.id) : cx.cfg.covers);
  const auto rep = report_contractions(fv, engine, covers);
  cx.art["contractions"] = contractions_json(cx.space, rep);
  for (const auto& e : rep.entries) {
    std::vector<std::string> terms, vertical;
    for (const auto& [c, w] : e.decomposition.terms) {
      terms.push_back((w == 1 ? "" : to_string(w) + "*") + "(" + cx.space.curves[c].name + ")");
    }
    for (auto d : e.vertical) vertical.push_back(cx.space.divisors[d].name);
    cx.summary << format_curve(cx.space, e.representative) << " [orbit " << e.orbit_size << "] = " << join(terms, " + ")
               << "\n  vertical: " << join(vertical, ", ") << "\n  closure " << e.closure.size() << " curves, face "
               << e.face_rays << " rays\n";
  }
}

// Recomputes everything a verify-eff certificate claims.
void cmd_check(Context& cx, const json& doc) {
  std::vector<std::string> problems;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok && problems.size() < 20) problems.push_back(what);
  };
  const json& c = doc.at("certificate");
  const Space& sp = cx.space;
  const json gens = space_json(sp)["generators"];
  need(c.at("generators") == gens, "catalog differs from the rebuilt catalog");

  const SymmetryGroup group(sp);
  NefminEngine engine(sp, group);
  FaceVerifier fv(engine, cx.budget);

  std::vector<Vec> q;
  for (const auto& v : c.at("q_rays")) q.push_back(vec_from_json(v));
  InequalitySystem dual;
  dual.dim = sp.rank;
  for (std::size_t d = 0; d < sp.divisors.size(); ++d) dual.inequalities.push_back(sp.curve_of_functional(sp.divisor_vec(d)));
  need(extreme_rays(dual, cx.budget).rays == q, "listed Q-rays differ from the recomputed dual rays");
  std::vector<Vec> curves;
  for (std::size_t i = 0; i < sp.curves.size(); ++i) curves.push_back(sp.curve_vec(i));

  std::vector<bool> seen(q.size(), false);
  const auto& orbits = c.at("q_orbits");
  const auto& faces = c.at("faces");
  need(orbits.size() == faces.size(), "orbit and face lists differ in length");
  for (std::size_t o = 0; o < orbits.size() && o < faces.size(); ++o) {
    const Vec rep = vec_from_json(orbits[o].at("representative"));
    need(cone_member(rep, curves).member(), "representative not generated by the catalog");
    std::set<IntVec> images;
    for (const auto& img : group.curve_images(to_int_vec(rep))) images.insert(img);
    for (const auto& m : orbits[o].at("members")) {
      const std::size_t k = m.get<std::size_t>();
      need(k < q.size() && images.count(to_int_vec(q[k])), "orbit member is not an image of its representative");
      if (k < q.size()) seen[k] = true;
    }
    const json& fj = faces[o];
    need(vec_from_json(fj.at("curve")) == rep, "face curve differs from the representative");
    const Face f = fv.face_of(rep);
    need(fj.at("closure").at("ids").get<CurveSet>() == f.closure, "closure differs");
    std::vector<Vec> rays;
    for (const auto& r : fj.at("rays")) rays.push_back(vec_from_json(r));
    need(fv.face_rays(f) == rays, "face rays differ for " + format_curve(sp, rep));
    const auto& mem = fj.at("memberships");
    need(mem.size() == rays.size(), "membership count differs");
    for (std::size_t r = 0; r < rays.size() && r < mem.size(); ++r) {
      Vec sum(sp.rank);
      for (const auto& t : mem[r]) {
        const Rational w = rational_from_json(t.at("weight"));
        need(w > 0, "nonpositive weight");
        const Vec d = sp.divisor_vec(sp.divisor_index(t.at("divisor").get<std::string>()));
        for (std::size_t k = 0; k < sp.rank; ++k) sum[k] += w * d[k];
      }
      need(sum == rays[r], "membership does not sum to its ray");
    }
  }
  need(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }), "some Q-ray belongs to no orbit");
  cx.art["checked"] = {{"q_rays", q.size()}, {"orbits", orbits.size()}, {"problems", problems}};
  if (problems.empty()) {
    cx.summary << "certificate verified: " << q.size() << " Q-rays, " << orbits.size() << " faces\n";
  } else {
    for (const auto& p : problems) cx.summary << "certificate problem: " << p << "\n";
    cx.fail(ExitCode::VerificationFailure);
  }
}

void check_config(const RunConfig& cfg) {
  if (cfg.max_size == 0 || cfg.max_rays == 0 || !(cfg.max_seconds > 0) || cfg.trials == 0) {
    throw std::invalid_argument("budgets must be positive");
  }
  if (cfg.route != "qrays" && cfg.route != "nefmin" && cfg.route != "both") {
    throw std::invalid_argument("unknown route " + cfg.route);
  }
  if (cfg.criteria != "1" && cfg.criteria != "123") throw std::invalid_argument("criteria must be 1 or 123");
}

json mutation_json(const Mutation& m) {
  json j = json::object();
  if (m.drop_kv) j["drop_kv"] = *m.drop_kv;
  if (m.perturb_curve) j["perturb_curve"] = *m.perturb_curve;
  return j;
}

}  // namespace

std::vector<std::string> default_covers(SpaceId id) {
  if (id == SpaceId::M05) return {"l-e0", "2l-e0-e1-e2-e3"};
  return {"l-e1", "l-e12-e34", "2l-e12-e13-e14-e25-e35-e45"};
}

Space mutated_space(SpaceId id, const Mutation& m) {
  Space sp = build_space(id);
  if (m.drop_kv) {
    std::vector<std::size_t> kv;
    for (std::size_t d = 0; d < sp.divisors.size(); ++d) {
      if (sp.divisors[d].kind == DivisorKind::KeelVermiere) kv.push_back(d);
    }
    if (*m.drop_kv >= kv.size()) throw std::invalid_argument("no Keel-Vermiere divisor with that index");
    const std::size_t gone = kv[*m.drop_kv];
    sp.divisors.erase(sp.divisors.begin() + static_cast<long>(gone));
    for (auto& c : sp.curves) {
      if (c.swept > gone) --c.swept;
    }
  }
  if (m.perturb_curve) {
    if (*m.perturb_curve >= sp.curves.size()) throw std::invalid_argument("no catalog curve with that index");
    auto& c = sp.curves[*m.perturb_curve];
    c.cls[0] -= 1;
    c.name = format_curve(sp, to_vec(c.cls));
  }
  sp.rebuild_table();
  return sp;
}

RunResult run(const RunConfig& cfg) {
  Context cx{cfg, {}, {}, json::object(), {}, ExitCode::Ok};
  cx.art["command"] = cfg.command;
  cx.art["space"] = to_string(cfg.space);
  cx.art["seed"] = cfg.seed;
  cx.art["versions"] = {{"negcone", kVersion}, {"boost", BOOST_LIB_VERSION}, {"gmp", gmp_version}};
  cx.art["budgets"] = {{"max_size", cfg.max_size}, {"max_rays", cfg.max_rays}, {"max_seconds", cfg.max_seconds}};
  try {
    check_config(cfg);
    cx.budget.max_rays = cfg.max_rays;
    cx.budget.deadline = std::chrono::steady_clock::now() +
                         std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                             std::chrono::duration<double>(cfg.max_seconds));

    json doc;
    Mutation mutation = cfg.mutation;
    SpaceId sid = cfg.space;
    if (cfg.command == "check-cert") {
      std::ifstream in(cfg.input);
      if (!in) throw std::invalid_argument("cannot read " + cfg.input);
      doc = json::parse(in, nullptr, false);
      if (doc.is_discarded() || !doc.contains("certificate")) throw std::invalid_argument("not a certificate file");
      sid = parse_space_id(doc.at("space").get<std::string>());
      if (doc.contains("mutation")) {
        const auto& m = doc["mutation"];
        if (m.contains("drop_kv")) mutation.drop_kv = m["drop_kv"].get<std::size_t>();
        if (m.contains("perturb_curve")) mutation.perturb_curve = m["perturb_curve"].get<std::size_t>();
      }
      cx.art["space"] = to_string(sid);
    }
    cx.space = mutated_space(sid, mutation);
    if (mutation.any()) cx.art["mutation"] = mutation_json(mutation);

    const auto violations = validate_catalog(cx.space);
    if (!violations.empty()) {
      json v = json::array();
      for (const auto& x : violations) {
        v.push_back({{"check", x.check}, {"detail", x.detail}});
        cx.summary << "catalog invariant violated: " << x.check << ": " << x.detail << "\n";
      }
      cx.art["violations"] = v;
      cx.code = ExitCode::CatalogViolation;
    } else if (cfg.command == "verify-eff") {
      cmd_verify(cx, false);
    } else if (cfg.command == "enumerate-nefmin") {
      cmd_verify(cx, true);
    } else if (cfg.command == "orbits") {
      cmd_orbits(cx);
    } else if (cfg.command == "face") {
      cmd_face(cx);
    } else if (cfg.command == "oracle") {
      cmd_oracle(cx);
    } else if (cfg.command == "fixtures") {
      cmd_fixtures(cx);
    } else if (cfg.command == "report-contractions") {
      cmd_contractions(cx);
    } else if (cfg.command == "check-cert") {
      cmd_check(cx, doc);
    } else {
      throw std::invalid_argument("unknown command " + cfg.command);
    }
  } catch (const negcone::BudgetExceeded& e) {
    cx.code = ExitCode::BudgetExceeded;
    cx.summary << "budget exceeded: " << e.what() << "\n";
    cx.art["error"] = e.what();
  } catch (const CatalogError& e) {
    cx.code = ExitCode::CatalogViolation;
    cx.summary << "catalog error: " << e.what() << "\n";
    cx.art["error"] = e.what();
  } catch (const std::invalid_argument& e) {
    cx.code = ExitCode::InvalidArguments;
    cx.summary << "invalid argument: " << e.what() << "\n";
    cx.art["error"] = e.what();
  } catch (const std::exception& e) {
    cx.code = ExitCode::VerificationFailure;
    cx.summary << "internal check failed: " << e.what() << "\n";
    cx.art["error"] = e.what();
  }
  cx.art["exit_code"] = static_cast<int>(cx.code);
  RunResult res;
  res.code = cx.code;
  res.json = cx.art.dump(2);
  res.summary = cx.summary.str();
  return res;
}

}  // namespace negcone
