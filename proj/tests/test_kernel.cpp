#include "doctest.h"

#include "negcone/cone.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace negcone;

namespace {

Vec v(std::initializer_list<long long> xs) {
  Vec out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

// Plain Gaussian elimination; returns the kernel when it is one dimensional.
std::optional<Vec> line_through(std::vector<Vec> rows, std::size_t dim) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t k = 0; k < dim; ++k) rows[i][k] -= f * rows[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  if (pivots.size() + 1 != dim) return std::nullopt;
  std::size_t free = 0;
  while (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) ++free;
  Vec x(dim);
  x[free] = 1;
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -rows[i][free] / rows[i][pivots[i]];
  return x;
}

// Every (dim-1)-subset of inequalities that pins down a line contributes the
// direction on the feasible side, if any.
std::vector<Vec> brute_force_rays(const std::vector<Vec>& ineqs, std::size_t dim) {
  std::set<Vec, decltype(&lex_less)> found(&lex_less);
  const std::size_t m = ineqs.size();
  std::vector<bool> pick(m, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(dim - 1), true);
  do {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < m; ++i) {
      if (pick[i]) rows.push_back(ineqs[i]);
    }
    auto x = line_through(rows, dim);
    if (!x) continue;
    for (int sign : {1, -1}) {
      Vec y = *x;
      for (auto& t : y) t *= sign;
      if (std::all_of(ineqs.begin(), ineqs.end(), [&](const Vec& f) { return dot(f, y) >= 0; })) {
        found.insert(primitive(y));
      }
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return {found.begin(), found.end()};
}

}  // namespace

TEST_SUITE("kernel") {
  TEST_CASE("membership returns a combination that sums to the target") {
    const std::vector<Vec> gens = {v({1, 0}), v({0, 1})};
    const auto ans = cone_member(v({3, 2}), gens);
    REQUIRE(ans.member());
    CHECK((*ans.combination)[0] == 3);
    CHECK((*ans.combination)[1] == 2);
  }

  TEST_CASE("non-membership returns a separating functional") {
    const std::vector<Vec> gens = {v({1, 0}), v({1, 1})};
    const Vec target = v({0, 1});
    const auto ans = cone_member(target, gens);
    REQUIRE_FALSE(ans.member());
    REQUIRE(ans.separator);
    CHECK(dot(*ans.separator, target) < 0);
    for (const auto& g : gens) CHECK(dot(*ans.separator, g) >= 0);
  }

  TEST_CASE("membership rejects mismatched lengths") {
    const std::vector<Vec> gens = {v({1, 0, 0})};
    CHECK_THROWS_AS(cone_member(v({1, 0}), gens), DimensionMismatch);
  }

  TEST_CASE("cone over a square has four rays") {
    InequalitySystem sys;
    sys.dim = 3;
    sys.inequalities = {v({1, 0, 1}), v({-1, 0, 1}), v({0, 1, 1}), v({0, -1, 1})};
    const auto r = extreme_rays(sys);
    REQUIRE(r.pointed);
    const std::vector<Vec> expect = {v({-1, -1, 1}), v({-1, 1, 1}), v({1, -1, 1}), v({1, 1, 1})};
    CHECK(r.rays == expect);
  }

  TEST_CASE("a half-plane is flagged as containing a line") {
    InequalitySystem sys;
    sys.dim = 2;
    sys.inequalities = {v({1, 0})};
    const auto r = extreme_rays(sys);
    CHECK_FALSE(r.pointed);
    CHECK(r.rays.empty());
    CHECK(r.lineality.size() == 1);
  }

  TEST_CASE("double description matches brute force on random pointed cones") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t dim = 4;
      std::vector<Vec> ineqs;
      for (std::size_t i = 0; i < dim; ++i) {
        Vec e(dim);
        e[i] = 1;
        ineqs.push_back(e);
      }
      for (int k = 0; k < 5; ++k) {
        Vec f(dim);
        for (auto& t : f) t = coef(rng);
        ineqs.push_back(f);
      }
      InequalitySystem sys;
      sys.dim = dim;
      sys.inequalities = ineqs;
      const auto r = extreme_rays(sys);
      REQUIRE(r.pointed);
      CHECK(r.rays == brute_force_rays(ineqs, dim));
    }
  }

  TEST_CASE("facets of the rays describe the same cone") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coef(0, 4);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Vec> gens;
      for (int k = 0; k < 7; ++k) {
        Vec g(4);
        for (auto& t : g) t = coef(rng);
        g[0] += 1;
        gens.push_back(g);
      }
      const auto fd = facets(gens, 4);
      if (!fd.equations.empty()) continue;
      InequalitySystem sys;
      sys.dim = 4;
      sys.inequalities = fd.facets;
      const auto back = extreme_rays(sys);
      for (const auto& r : back.rays) CHECK(cone_member(r, gens).member());
      for (const auto& g : gens) {
        for (const auto& f : fd.facets) CHECK(dot(f, g) >= 0);
      }
    }
  }

  TEST_CASE("positive row reduction on a two-cycle") {
    const auto red = rref_positive({v({-1, 1}), v({1, -1})});
    REQUIRE(red);
    CHECK(red->row_weights == std::vector<Rational>{1, 1});
    CHECK(red->nonnegative_row == v({0, 0}));
  }

  TEST_CASE("positive row reduction of a single negative entry") {
    CHECK_FALSE(rref_positive({v({-1})}));
  }

  TEST_CASE("primitive and lexicographic helpers") {
    Vec x = {Rational(2, 3), Rational(-4, 3), Rational(0)};
    CHECK(primitive(x) == v({1, -2, 0}));
    CHECK(lex_less(v({0, 5}), v({1, 0})));
    CHECK(rank(std::vector<Vec>{v({1, 2}), v({2, 4})}, 2) == 1);
  }
}
