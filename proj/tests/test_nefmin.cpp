#include "doctest.h"

#include "negcone/nefmin.hpp"

#include <algorithm>

using namespace negcone;

namespace {

std::size_t find_curve(const Space& sp, const std::string& text) {
  const Vec target = parse_curve(sp, text);
  for (std::size_t c = 0; c < sp.curves.size(); ++c) {
    if (sp.curve_vec(c) == target) return c;
  }
  FAIL("no catalog curve " << text);
  return 0;
}

// Whether some x*a + y*b with x, y >= 0 not both zero pairs >= 0 with every
// divisor. Candidate directions are the axes and the zero lines of each
// constraint.
bool pair_generates(const Space& sp, std::size_t a, std::size_t b) {
  std::vector<std::pair<Rational, Rational>> dirs = {{1, 0}, {0, 1}};
  for (std::size_t d = 0; d < sp.divisors.size(); ++d) {
    const Rational p = sp.table[d][a], q = sp.table[d][b];
    if (p * q < 0) dirs.emplace_back(abs(q), abs(p));
  }
  for (const auto& [x, y] : dirs) {
    bool ok = true;
    for (std::size_t d = 0; d < sp.divisors.size() && ok; ++d) ok = x * sp.table[d][a] + y * sp.table[d][b] >= 0;
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("nefmin") {
  TEST_CASE("fifteen nef-minimal pairs on the five-pointed space") {
    const Space sp = build_space(SpaceId::M05);
    const SymmetryGroup g(sp);
    NefminEngine engine(sp, g);
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < sp.curves.size(); ++a) {
      CHECK_FALSE(engine.qnef_generate({a}));
      for (std::size_t b = a + 1; b < sp.curves.size(); ++b) {
        const bool brute = pair_generates(sp, a, b);
        CHECK(engine.qnef_lp({a, b}).has_value() == brute);
        if (brute) ++pairs;
      }
    }
    CHECK(pairs == 15);

    EnumerationOptions opt;
    const auto report = engine.enumerate({parse_curve(sp, "l-e0")}, opt);
    std::size_t total = 0;
    for (std::size_t i = 0; i < report.nef_minimal.size(); ++i) {
      CHECK(report.nef_minimal[i].size() == 2);
      total += report.orbit_sizes[i];
    }
    CHECK(total == 15);
    CHECK(report.all_covered());
  }

  TEST_CASE("an exceptional curve and a line through it give a pencil") {
    const Space sp = build_space(SpaceId::M05);
    const SymmetryGroup g(sp);
    NefminEngine engine(sp, g);
    CurveSet s = {find_curve(sp, "e1"), find_curve(sp, "l-e1-e2")};
    std::sort(s.begin(), s.end());
    const auto cert = engine.qnef_rref(s);
    REQUIRE(cert);
    CHECK(primitive(cert->curve) == parse_curve(sp, "l-e2"));
    const auto graph = engine.build_graph(s);
    CHECK(graph.is_hamiltonian_cycle());
    CHECK(graph.edges.size() == 2);
  }

  TEST_CASE("a pencil plus a disjoint line is not nef-minimal") {
    const Space sp = build_space(SpaceId::M05);
    const SymmetryGroup g(sp);
    NefminEngine engine(sp, g);
    CurveSet s = {find_curve(sp, "e1"), find_curve(sp, "l-e1-e2"), find_curve(sp, "l-e0-e3")};
    std::sort(s.begin(), s.end());
    REQUIRE(engine.qnef_generate(s));
    CHECK_FALSE(engine.nef_minimal_check(s));
  }

  TEST_CASE("row reduction agrees with the linear program") {
    const Space sp = build_space(SpaceId::M06);
    const SymmetryGroup g(sp);
    NefminEngine engine(sp, g);
    std::size_t checked = 0;
    for (std::size_t a = 0; a < sp.curves.size(); ++a) {
      for (std::size_t b = a + 1; b < sp.curves.size(); ++b) {
        if (sp.curves[a].swept == sp.curves[b].swept) continue;
        CHECK(engine.qnef_rref({a, b}).has_value() == engine.qnef_lp({a, b}).has_value());
        ++checked;
      }
    }
    CHECK(checked > 4000);
  }

  TEST_CASE("generated classes of small subsets") {
    const Space sp = build_space(SpaceId::M06);
    const SymmetryGroup g(sp);
    NefminEngine engine(sp, g);
    CurveSet s = {find_curve(sp, "e23"), find_curve(sp, "l-e1-e23")};
    std::sort(s.begin(), s.end());
    const auto cert = engine.qnef_generate(s);
    REQUIRE(cert);
    CHECK(primitive(cert->curve) == parse_curve(sp, "l-e1"));
    CHECK(engine.covers(parse_curve(sp, "l-e1"), s));
    CHECK(engine.covers_by_definition(parse_curve(sp, "l-e1"), s));
  }

  TEST_CASE("vanishing closure contains the subset and is idempotent") {
    const Space sp = build_space(SpaceId::M06);
    const SymmetryGroup g(sp);
    NefminEngine engine(sp, g);
    CurveSet s = {find_curve(sp, "e1-e12"), find_curve(sp, "l-e1-e2+e12")};
    std::sort(s.begin(), s.end());
    const CurveSet cl = engine.vanishing_closure(s);
    for (auto c : s) CHECK(std::binary_search(cl.begin(), cl.end(), c));
    CHECK(engine.vanishing_closure(cl) == cl);
    const Vec w = engine.face_witness(s);
    for (std::size_t c = 0; c < sp.curves.size(); ++c) {
      const Rational p = sp.pair(w, sp.curve_vec(c));
      CHECK(p >= 0);
      CHECK((p == 0) == std::binary_search(cl.begin(), cl.end(), c));
    }
  }

  TEST_CASE("ledger refuses cycles") {
    EliminationLedger ledger(4);
    CHECK(ledger.insert({{0, 1}, {1, 2}}));
    CHECK_FALSE(ledger.can_insert({{2, 0}}));
    CHECK_FALSE(ledger.insert({{2, 3}, {2, 0}}));
    CHECK(ledger.edge_count() == 2);
    CHECK(ledger.insert({{2, 3}}));
    CHECK(ledger.acyclic());
  }
}
