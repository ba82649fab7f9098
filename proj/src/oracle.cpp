#include "negcone/oracle.hpp"

#include "negcone/nefmin.hpp"

#include <algorithm>
#include <chrono>
#include <random>

namespace negcone {

namespace {

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void match(const Space& space, RaysOfM& out) {
  std::map<Vec, std::size_t, decltype(&lex_less)> by_class(&lex_less);
  for (std::size_t d = 0; d < space.divisors.size(); ++d) by_class.emplace(primitive(space.divisor_vec(d)), d);
  std::set<std::size_t> hit;
  for (std::size_t r = 0; r < out.rays.size(); ++r) {
    auto it = by_class.find(out.rays[r]);
    if (it == by_class.end()) continue;
    out.matched.emplace(r, it->second);
    hit.insert(it->second);
  }
  for (std::size_t d = 0; d < space.divisors.size(); ++d) {
    if (!hit.count(d)) out.unmatched_divisors.push_back(d);
  }
}

}  // namespace

RaysOfM rays_of_M(const Space& space, const Budget& budget) {
  const auto t0 = std::chrono::steady_clock::now();
  RaysOfM out;
  InequalitySystem sys;
  sys.dim = space.rank;
  for (const auto& c : space.curves) sys.inequalities.push_back(space.functional(c.cls));
  try {
    const auto r = extreme_rays(sys, budget);
    if (!r.pointed) {
      out.note = "cone contains a line";
    } else {
      out.rays = r.rays;
      out.complete = true;
    }
  } catch (const BudgetExceeded& e) {
    out.note = e.what();
  }
  match(space, out);
  out.seconds = since(t0);
  return out;
}

FacetCheck facet_check(const Space& space, const Budget& budget) {
  const auto t0 = std::chrono::steady_clock::now();
  FacetCheck out;
  std::vector<Vec> divisors, curves;
  for (std::size_t d = 0; d < space.divisors.size(); ++d) divisors.push_back(space.divisor_vec(d));
  for (std::size_t c = 0; c < space.curves.size(); ++c) curves.push_back(space.curve_vec(c));
  const auto fd = facets(divisors, space.rank, budget);
  if (!fd.equations.empty()) throw CatalogError("divisor catalog does not span the divisor space");
  out.facets = fd.facets;
  for (std::size_t f = 0; f < out.facets.size(); ++f) {
    const Vec curve = space.curve_of_functional(out.facets[f]);
    const auto ans = cone_member(curve, curves);
    if (ans.member()) {
      out.certificates.push_back(*ans.combination);
    } else {
      out.certificates.push_back(std::nullopt);
      out.failures.push_back(f);
      out.separators.push_back(space.curve_of_functional(*ans.separator));
    }
  }
  out.seconds = since(t0);
  return out;
}

RaysOfM rays_of_sum(const Space& space, const FacetCheck& check) {
  const auto t0 = std::chrono::steady_clock::now();
  RaysOfM out;
  if (check.all_certified()) {
    // The dual is the full facet list of cone(D), so the sum is cone(D):
    // a catalog divisor is a ray iff its tight facets have rank one less.
    std::set<Vec, decltype(&lex_less)> seen(&lex_less);
    for (std::size_t d = 0; d < space.divisors.size(); ++d) {
      const Vec v = space.divisor_vec(d);
      std::vector<Vec> tight;
      for (const auto& g : check.facets) {
        if (dot(g, v) == 0) tight.push_back(g);
      }
      if (rank(tight, space.rank) + 1 == space.rank) seen.insert(primitive(v));
    }
    out.rays.assign(seen.begin(), seen.end());
    out.complete = true;
  } else {
    out.note = "some facets of cone(D) lie outside cone(C); use the Q-ray route";
  }
  match(space, out);
  out.seconds = since(t0);
  return out;
}

CrosscheckReport crosscheck(const Space& space, std::size_t trials, std::uint64_t seed, std::size_t max_size,
                            std::size_t faces) {
  const auto t0 = std::chrono::steady_clock::now();
  CrosscheckReport out;
  out.seed = seed;
  out.trials = trials;

  // A private engine so no closure is reused from another route.
  const SymmetryGroup group(space);
  NefminEngine engine(space, group);

  // Curves grouped by swept divisor; a subset draws distinct divisors.
  std::map<std::size_t, std::vector<std::size_t>> by_divisor;
  for (std::size_t c = 0; c < space.curves.size(); ++c) by_divisor[space.curves[c].swept].push_back(c);
  std::vector<std::size_t> swept;
  for (const auto& [d, cs] : by_divisor) swept.push_back(d);
  max_size = std::min(max_size, swept.size());

  std::mt19937_64 rng(seed);
  std::vector<CurveSet> generating;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t k = 1 + rng() % max_size;
    std::vector<std::size_t> ds = swept;
    for (std::size_t i = 0; i < k; ++i) std::swap(ds[i], ds[i + rng() % (ds.size() - i)]);
    CurveSet subset;
    for (std::size_t i = 0; i < k; ++i) {
      const auto& cs = by_divisor[ds[i]];
      subset.push_back(cs[rng() % cs.size()]);
    }
    std::sort(subset.begin(), subset.end());
    const bool by_rref = engine.qnef_rref(subset).has_value();
    const bool by_lp = engine.qnef_lp(subset).has_value();
    if (by_rref != by_lp) {
      ++out.disagreements;
      if (out.disagreeing.size() < 5) out.disagreeing.push_back(subset);
    }
    if (by_lp) {
      ++out.generating;
      if (generating.size() < faces) generating.push_back(subset);
    }
  }

  for (const auto& subset : generating) {
    InequalitySystem sys;
    sys.dim = space.rank;
    for (std::size_t c = 0; c < space.curves.size(); ++c) {
      auto& dst = std::binary_search(subset.begin(), subset.end(), c) ? sys.equalities : sys.inequalities;
      dst.push_back(space.functional(space.curves[c].cls));
    }
    const auto r = extreme_rays(sys);
    CurveSet vanishing;
    for (std::size_t c = 0; c < space.curves.size(); ++c) {
      const Vec cv = space.curve_vec(c);
      if (std::all_of(r.rays.begin(), r.rays.end(), [&](const Vec& x) { return space.pair(x, cv) == 0; })) {
        vanishing.push_back(c);
      }
    }
    const CurveSet closure = engine.vanishing_closure(subset);
    std::vector<Vec> fs;
    for (auto c : closure) fs.push_back(space.functional(space.curves[c].cls));
    const std::size_t dim_closure = space.rank - rank(fs, space.rank);
    const std::size_t dim_dd = rank(r.rays, space.rank);
    ++out.face_checks;
    if (!r.pointed || vanishing != closure || dim_closure != dim_dd) ++out.face_disagreements;
  }
  out.seconds = since(t0);
  return out;
}

}  // namespace negcone
