#include "negcone/fixtures.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace negcone {

namespace {

std::string e(int i) { return "e" + std::to_string(i); }
std::string e(int i, int j) { return "e" + std::to_string(std::min(i, j)) + std::to_string(std::max(i, j)); }

// 2e_i minus the four e_ij.
std::string minus_two(int i) {
  std::string s = "2" + e(i);
  for (int j = 1; j <= 5; ++j) {
    if (j != i) s += "-" + e(i, j);
  }
  return s;
}

Vec add(Vec a, const Vec& b, const Rational& k = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += k * b[i];
  return a;
}

class Checker {
 public:
  explicit Checker(std::string name) { r_.name = std::move(name); }

  void check(bool ok, const std::string& what) {
    ++r_.instances;
    if (!ok && r_.detail.empty()) r_.detail = what;
  }
  FixtureResult done() {
    r_.passed = r_.detail.empty() && r_.instances > 0;
    return r_;
  }

 private:
  FixtureResult r_;
};

bool in_catalog(const Space& sp, const Vec& c) {
  for (const auto& cur : sp.curves) {
    if (to_vec(cur.cls) == c) return true;
  }
  return false;
}

// lhs terms sum to rhs terms. Every lhs term is a catalog curve, and so is
// every rhs term when `rhs_catalog` is set.
void identity(Checker& ck, const Space& sp, const std::vector<std::string>& lhs, const std::vector<std::string>& rhs,
              bool rhs_catalog = true) {
  Vec a(sp.rank), b(sp.rank);
  bool catalog = true;
  std::string text;
  for (const auto& t : lhs) {
    const Vec v = parse_curve(sp, t);
    catalog = catalog && in_catalog(sp, v);
    a = add(a, v);
    text += (text.empty() ? "" : " + ") + t;
  }
  text += " =";
  for (std::size_t k = 0; k < rhs.size(); ++k) {
    const Vec v = parse_curve(sp, rhs[k]);
    catalog = catalog && (!rhs_catalog || in_catalog(sp, v));
    b = add(b, v);
    text += (k ? " + " : " ") + rhs[k];
  }
  ck.check(a == b && catalog, text);
}

void for_each_labeling(const std::function<void(const std::array<int, 5>&)>& f) {
  std::array<int, 5> p{1, 2, 3, 4, 5};
  do {
    f(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

bool in_orbit(const SymmetryGroup& g, const Vec& curve, const Vec& rep) {
  const IntVec target = to_int_vec(primitive(curve));
  for (const auto& img : g.curve_images(to_int_vec(primitive(rep)))) {
    if (img == target) return true;
  }
  return false;
}

std::vector<FixtureResult> m06_fixtures() {
  const Space sp = build_space(SpaceId::M06);
  const SymmetryGroup group(sp);
  NefminEngine engine(sp, group);
  FaceVerifier verifier(engine);
  std::vector<FixtureResult> out;

  {
    Checker ck("relation: e_ij and e_i-e_ik");
    for_each_labeling([&](const std::array<int, 5>& p) {
      const int i = p[0], j = p[1], k = p[2];
      identity(ck, sp, {"l-" + e(i) + "-" + e(j) + "+" + e(i, j), e(i) + "-" + e(i, k)},
               {"l-" + e(j) + "-" + e(i, k), e(i, j)});
    });
    identity(ck, sp, {"e12", "2l-e1-e2-e3-e45"}, {"l-e1-e2+e12", "l-e3-e45"});
    out.push_back(ck.done());
  }
  {
    // The right-hand side ends in e_j - e_jk; with e_j - e_ij the two sides
    // differ by e_ij - e_jk.
    Checker ck("relation: -2 curve, plane curve, e_i-e_ik");
    for_each_labeling([&](const std::array<int, 5>& p) {
      const int i = p[0], j = p[1], k = p[2], h = p[3], m = p[4];
      identity(ck, sp,
               {minus_two(j), "l-" + e(i) + "-" + e(j) + "+" + e(i, j), e(i) + "-" + e(i, k)},
               {"l-" + e(j, h) + "-" + e(j, m) + "-" + e(h, m) + "-" + e(i, k), e(h, m), e(j) + "-" + e(j, k)});
    });
    out.push_back(ck.done());
  }
  {
    Checker ck("relation: -2 curve, plane curve, e_jk");
    for_each_labeling([&](const std::array<int, 5>& p) {
      const int i = p[0], j = p[1], k = p[2], h = p[3], m = p[4];
      identity(ck, sp, {minus_two(j), "l-" + e(i) + "-" + e(j) + "+" + e(i, j), e(j, k)},
               {e(j) + "-" + e(j, m), "l-" + e(i) + "-" + e(j, h)});
    });
    out.push_back(ck.done());
  }
  {
    Checker ck("relation: -2 curve, e_ij, e_jk");
    for_each_labeling([&](const std::array<int, 5>& p) {
      const int i = p[0], j = p[1], k = p[2], h = p[3], m = p[4];
      identity(ck, sp, {minus_two(j), e(i, j), e(j, k)}, {e(j) + "-" + e(j, m), e(j) + "-" + e(j, h)});
    });
    out.push_back(ck.done());
  }

  const Vec c1 = parse_curve(sp, "l-e1");
  const Vec c2 = parse_curve(sp, "l-e12-e34");
  const Vec c3 = parse_curve(sp, "2l-e12-e13-e14-e25-e35-e45");

  {
    Checker ck("face of l-e1");
    const Face f = verifier.face_of(c1);
    const auto rays = verifier.face_rays(f);
    ck.check(rays.size() == 10, "face of l-e1 has " + std::to_string(rays.size()) + " rays");
    // D . e_ij = m_ij and D . (e_i - e_1i) = m_i - m_1i.
    for (const auto& r : rays) {
      for (int i = 2; i <= 5; ++i) {
        for (int j = i + 1; j <= 5; ++j) {
          ck.check(sp.pair(r, parse_curve(sp, e(i, j))) == 0, "m_ij != 0 on " + format_divisor(sp, r));
        }
        ck.check(sp.pair(r, parse_curve(sp, e(i) + "-" + e(1, i))) == 0, "m_i != m_1i on " + format_divisor(sp, r));
      }
      const auto ans = verifier.certify_containment(f, {r});
      ck.check(ans.certificate.has_value(), "ray outside the divisor cone: " + format_divisor(sp, r));
    }
    out.push_back(ck.done());
  }
  {
    Checker ck("decompositions of l-e12-e34");
    identity(ck, sp, {"l-e1-e34", "e1-e12"}, {"l-e12-e34"}, false);
    identity(ck, sp, {"l-e2-e34", "e2-e12"}, {"l-e12-e34"}, false);
    identity(ck, sp, {"l-e3-e12", "e3-e34"}, {"l-e12-e34"}, false);
    identity(ck, sp, {"l-e4-e12", "e4-e34"}, {"l-e12-e34"}, false);
    out.push_back(ck.done());
  }
  {
    Checker ck("generators of the face of l-e12-e34");
    const Face f = verifier.face_of(c2);
    const std::vector<std::string> listed = {
        "E5",       "E13",      "E14",      "E23",       "E24",       "KV13,24",   "KV14,23",
        "E2+D234",  "E1+D134",  "E4+D124",  "E3+D123",   "D125+E15+E25", "D345+E35+E45"};
    for (const auto& s : listed) {
      const Vec d = parse_divisor(sp, s);
      bool in_l = sp.pair(d, c2) == 0;
      for (auto c : f.closure) in_l = in_l && sp.pair(d, sp.curve_vec(c)) == 0;
      ck.check(in_l, s + " does not vanish on the closure");
    }
    out.push_back(ck.done());
  }
  {
    Checker ck("decompositions of the conic class");
    Vec sum = add(add(parse_curve(sp, "l-e1-e5+e15"), parse_curve(sp, "l-e1-e5+e15")),
                  add(parse_curve(sp, minus_two(1)), parse_curve(sp, minus_two(5))));
    ck.check(sum == c3, "2(l-e1-e5+e15) + (2e1-...) + (2e5-...)");
    for (auto [i, j, k] : {std::array<int, 3>{2, 3, 4}, {2, 4, 3}, {3, 4, 2}}) {
      identity(ck, sp,
               {"l-" + e(1, i) + "-" + e(1, j) + "-" + e(i, j) + "-" + e(k, 5),
                "l-" + e(i, 5) + "-" + e(j, 5) + "-" + e(i, j) + "-" + e(1, k), e(i, j), e(i, j)},
               {"2l-e12-e13-e14-e25-e35-e45"}, false);
    }
    out.push_back(ck.done());
  }
  {
    Checker ck("degree 6 ray of the conic face");
    const Face f = verifier.face_of(c3);
    const auto rays = verifier.face_rays(f);
    const Vec ray = parse_divisor(sp, "6H-4E1-3E2-3E3-3E4-4E5-2E12-2E13-2E14-2E15-2E25-2E35-2E45");
    ck.check(std::find(rays.begin(), rays.end(), ray) != rays.end(), "d=6 ray not among the face rays");
    const auto ans = verifier.certify_containment(f, {ray});
    ck.check(ans.certificate.has_value(), "ray not certified");
    out.push_back(ck.done());

    // The stated combination, checked literally. It lands on a different
    // class; the difference is reported.
    Checker lit("combination 2D125+KV15,34+D135+D145+E1+E5+2E15");
    const Vec comb = parse_divisor(sp, "2D125+KV15,34+D135+D145+E1+E5+2E15");
    Vec diff(sp.rank);
    for (std::size_t k = 0; k < sp.rank; ++k) diff[k] = ray[k] - comb[k];
    lit.check(comb == ray, "evaluates to " + format_divisor(sp, comb) + "; ray minus combination is " +
                               format_divisor(sp, diff));
    out.push_back(lit.done());
  }
  {
    Checker ck("small generating subsets");
    const std::vector<std::pair<std::vector<std::string>, const Vec*>> subsets = {
        {{"e1-e12", "l-e1-e2+e12"}, &c1},
        {{"2l-e1-e2-e3-e45", "l-e4-e5+e45"}, &c1},
        {{"l-e1-e23", "e23"}, &c1},
        {{minus_two(1), "l-e1-e2+e12", "l-e1-e3+e13"}, &c2},
        {{"l-e12-e13-e23-e45", "e12", "e13"}, &c2},
        {{"l-e12-e13-e23-e45", "e12", "l-e4-e5+e45"}, &c2},
        {{"l-e1-e23", "e1-e14"}, &c2},
        {{"2l-e1-e2-e4-e35", "e4-e34"}, &c2},
        {{"l-e1-e34", "l-e2-e35"}, &c2},
        {{minus_two(1), minus_two(3), "l-e1-e3+e13"}, &c3},
        {{"l-e12-e13-e23-e45", "l-e12-e14-e24-e35", "e12"}, &c3},
        {{"l-e12-e13-e23-e45", minus_two(4), "l-e4-e5+e45"}, &c3},
    };
    for (const auto& [names, rep] : subsets) {
      CurveSet ids;
      std::string text;
      for (const auto& n : names) {
        ids.push_back(sp.curve_index(n));
        text += (text.empty() ? "{" : ", ") + n;
      }
      text += "}";
      std::sort(ids.begin(), ids.end());
      const auto cert = engine.qnef_generate(ids);
      ck.check(cert.has_value(), text + " generates nothing");
      if (cert) ck.check(in_orbit(group, cert->curve, *rep), text + " generates " + format_curve(sp, cert->curve));
    }
    // Weights (1, 1, 2) for the fourth subset.
    identity(ck, sp, {"l-e12-e13-e23-e45", "l-e12-e14-e24-e35", "e12", "e12"}, {"2l-e13-e14-e23-e24-e35-e45"}, false);
    out.push_back(ck.done());
  }
  return out;
}

std::vector<FixtureResult> m05_fixtures() {
  const Space sp = build_space(SpaceId::M05);
  const SymmetryGroup group(sp);
  NefminEngine engine(sp, group);
  FaceVerifier verifier(engine);
  std::vector<FixtureResult> out;
  Checker ck("m05 identities");
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      const std::string hij = "l-e" + std::to_string(std::min(i, j)) + "-e" + std::to_string(std::max(i, j));
      identity(ck, sp, {hij, "e" + std::to_string(j)}, {"l-e" + std::to_string(i)}, false);
    }
  }
  identity(ck, sp, {"l-e0-e1", "l-e2-e3"}, {"2l-e0-e1-e2-e3"}, false);
  ck.check(in_orbit(group, parse_curve(sp, "2l-e0-e1-e2-e3"), parse_curve(sp, "l-e0")),
           "l-e_i and 2l-sum e_i are not equivalent");
  {
    const Face f = verifier.face_of(parse_curve(sp, "l-e3"));
    for (int i = 0; i < 3; ++i) {
      bool forced = std::find(f.closure.begin(), f.closure.end(), sp.curve_index("e" + std::to_string(i))) !=
                    f.closure.end();
      ck.check(forced, "D.E" + std::to_string(i) + " = 0 is not forced");
    }
    const auto rays = verifier.face_rays(f);
    ck.check(rays.size() == 1 && rays[0] == parse_divisor(sp, "H-E3"), "face of l-e3 is not the ray H-E3");
    if (rays.size() == 1) {
      ck.check(rays[0] == add(parse_divisor(sp, "H-E0-E3"), parse_divisor(sp, "E0")), "H-E3 = (H-E0-E3) + E0");
    }
  }
  out.push_back(ck.done());
  return out;
}

}  // namespace

std::vector<FixtureResult> run_fixtures() {
  auto out = m05_fixtures();
  for (auto& r : m06_fixtures()) out.push_back(std::move(r));
  return out;
}

}  // namespace negcone
