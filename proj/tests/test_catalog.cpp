#include "doctest.h"

#include "negcone/catalog.hpp"
#include "negcone/pipeline.hpp"

#include <algorithm>
#include <numeric>

using namespace negcone;

namespace {

// Orbit sizes from union-find over the adjacent transpositions, applying the
// solved matrices directly to the classes.
std::vector<std::size_t> orbit_sizes(const Space& sp, bool curves) {
  const std::size_t count = curves ? sp.curves.size() : sp.divisors.size();
  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 1; i < sp.n; ++i) {
    Perm p(sp.n);
    std::iota(p.begin(), p.end(), 1);
    std::swap(p[i - 1], p[i]);
    const auto act = s_action(sp.id, p);
    for (std::size_t a = 0; a < count; ++a) {
      const Vec img = curves ? act.apply_curve(sp.curve_vec(a)) : act.apply_divisor(sp.divisor_vec(a));
      std::size_t b = 0;
      while (b < count && (curves ? sp.curve_vec(b) : sp.divisor_vec(b)) != img) ++b;
      REQUIRE_MESSAGE(b < count, "image outside the catalog");
      parent[find(a)] = find(b);
    }
  }
  std::map<std::size_t, std::size_t> sizes;
  for (std::size_t a = 0; a < count; ++a) ++sizes[find(a)];
  std::vector<std::size_t> out;
  for (auto [root, s] : sizes) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("catalog") {
  TEST_CASE("catalog sizes") {
    const Space m5 = build_space(SpaceId::M05);
    CHECK(m5.rank == 5);
    CHECK(m5.curves.size() == 10);
    CHECK(m5.divisors.size() == 10);
    const Space m6 = build_space(SpaceId::M06);
    CHECK(m6.rank == 16);
    CHECK(m6.curves.size() == 95);
    CHECK(m6.divisors.size() == 40);
    CHECK(std::count_if(m6.divisors.begin(), m6.divisors.end(),
                        [](const DivisorGen& d) { return d.kind == DivisorKind::KeelVermiere; }) == 15);
  }

  TEST_CASE("pairing is diag(1,-1,...,-1)") {
    const Space sp = build_space(SpaceId::M06);
    CHECK(sp.pairing[0] == 1);
    for (std::size_t k = 1; k < sp.rank; ++k) CHECK(sp.pairing[k] == -1);
    CHECK(sp.pair(parse_divisor(sp, "2H-E1"), parse_curve(sp, "l-e1")) == 1);
    CHECK(sp.pair(parse_divisor(sp, "E12"), parse_curve(sp, "e12")) == -1);
  }

  TEST_CASE("each curve is negative exactly on its swept divisor") {
    for (auto id : {SpaceId::M05, SpaceId::M06}) {
      const Space sp = build_space(id);
      for (const auto& c : sp.curves) {
        for (std::size_t d = 0; d < sp.divisors.size(); ++d) {
          long long p = 0;
          for (std::size_t k = 0; k < sp.rank; ++k) p += sp.pairing[k] * sp.divisors[d].cls[k] * c.cls[k];
          if (d == c.swept) {
            CHECK(p < 0);
          } else {
            CHECK(p >= 0);
          }
        }
      }
      CHECK(validate_catalog(sp).empty());
    }
  }

  TEST_CASE("orbit sizes under the symmetric group") {
    const Space sp = build_space(SpaceId::M06);
    CHECK(orbit_sizes(sp, true) == std::vector<std::size_t>{15, 20, 60});
    CHECK(orbit_sizes(sp, false) == std::vector<std::size_t>{10, 15, 15});
    const SymmetryGroup g(sp);
    CHECK(g.is_full());
    CHECK(g.size() == 720);
    CHECK(g.curve_orbits().size() == 3);
    CHECK(g.divisor_orbits().size() == 3);
  }

  TEST_CASE("e12 and l-e1-e2+e12 are in one orbit") {
    const Space sp = build_space(SpaceId::M06);
    const SymmetryGroup g(sp);
    const auto orbits = g.orbits_of_curves({to_int_vec(parse_curve(sp, "e12")), to_int_vec(parse_curve(sp, "l-e1-e2+e12"))});
    CHECK(orbits.size() == 1);
  }

  TEST_CASE("unimodality fails exactly on the fifteen -2 curves") {
    const Space sp = build_space(SpaceId::M06);
    const auto flags = unimodality_flags(sp);
    std::size_t off = 0;
    for (std::size_t c = 0; c < sp.curves.size(); ++c) {
      const long long self = sp.table[sp.curves[c].swept][c];
      bool unimodal = true;
      for (std::size_t d = 0; d < sp.divisors.size(); ++d) {
        if (d == sp.curves[c].swept) continue;
        unimodal = unimodal && (sp.table[d][c] == 0 || sp.table[d][c] == -self);
      }
      CHECK(flags[c] == unimodal);
      if (!unimodal) {
        ++off;
        CHECK(self == -2);
      }
    }
    CHECK(off == 15);
  }

  TEST_CASE("boundary dictionary and divisor formulas") {
    const Space sp = build_space(SpaceId::M06);
    CHECK(to_vec(boundary_class(SpaceId::M06, {1, 6})) == parse_divisor(sp, "E1"));
    CHECK(to_vec(boundary_class(SpaceId::M06, {1, 2, 6})) == parse_divisor(sp, "E12"));
    CHECK(to_vec(boundary_class(SpaceId::M06, {1, 2})) == parse_divisor(sp, "D345"));
    CHECK(to_vec(boundary_class(SpaceId::M06, {1, 2, 6})) == to_vec(boundary_class(SpaceId::M06, {3, 4, 5})));
    CHECK(to_vec(keel_vermiere_class(1, 2, 3, 4)) ==
          parse_divisor(sp, "2H-E1-E2-E3-E4-E5-E13-E14-E23-E24"));
    CHECK_THROWS_AS(boundary_class(SpaceId::M06, {1}), std::invalid_argument);
  }

  TEST_CASE("class text round trip") {
    const Space sp = build_space(SpaceId::M06);
    for (std::size_t c = 0; c < sp.curves.size(); ++c) {
      CHECK(parse_curve(sp, format_curve(sp, sp.curve_vec(c))) == sp.curve_vec(c));
    }
    for (std::size_t d = 0; d < sp.divisors.size(); ++d) {
      CHECK(parse_divisor(sp, format_divisor(sp, sp.divisor_vec(d))) == sp.divisor_vec(d));
    }
    CHECK(parse_divisor(sp, "1/2*H") == Vec{Rational(1, 2), 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    CHECK_THROWS(parse_curve(sp, "l-e7"));
  }

  TEST_CASE("swept divisors pair negatively with a catalog curve") {
    // So the catalog divisors are not all nonnegative on the curve catalog.
    const Space sp = build_space(SpaceId::M06);
    CHECK(sp.pair(parse_divisor(sp, "E1"), parse_curve(sp, "e1-e12")) == -1);
  }

  TEST_CASE("mutations break the catalog invariants") {
    const Space perturbed = mutated_space(SpaceId::M06, Mutation{std::nullopt, 0});
    CHECK_FALSE(validate_catalog(perturbed).empty());
    const Space dropped = mutated_space(SpaceId::M06, Mutation{0, std::nullopt});
    CHECK(dropped.divisors.size() == 39);
    CHECK(validate_catalog(dropped).empty());
    CHECK_THROWS_AS(mutated_space(SpaceId::M05, Mutation{0, std::nullopt}), std::invalid_argument);
  }
}
