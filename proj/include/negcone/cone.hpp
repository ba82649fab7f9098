#pragma once

// Exact polyhedral cone primitives. Everything here is a pure function of its
// arguments; results are normalized and ordered so that repeated or parallel
// calls are bit-identical.

#include "negcone/rational.hpp"

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace negcone {

using Matrix = std::vector<Vec>;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Resource ceilings shared by the enumeration-style algorithms.
struct Budget {
  std::size_t max_rays = 2'000'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  void check_rays(std::size_t count) const;
  void check_time() const;
};

Rational dot(const Vec& a, const Vec& b);
bool is_zero(const Vec& v);

/// Smallest integer vector on the same ray (gcd 1). The zero vector maps to
/// itself.
Vec primitive(const Vec& v);

/// Lexicographic order on rational vectors.
bool lex_less(const Vec& a, const Vec& b);

std::size_t rank(std::span<const Vec> rows, std::size_t dim);

/// Basis of {x : r . x = 0 for every row r}, in reduced echelon form, each
/// basis vector primitive.
std::vector<Vec> nullspace(std::span<const Vec> rows, std::size_t dim);

/// Unique solution of a square nonsingular system, or nullopt if singular.
std::optional<Vec> solve_square(const Matrix& a, const Vec& b);

struct InequalitySystem {
  std::size_t dim = 0;
  std::vector<Vec> inequalities;  // f . x >= 0
  std::vector<Vec> equalities;    // f . x == 0
};

/// Answer to "is target in the nonnegative span of the generators". Exactly
/// one field is set; both are re-verified by direct arithmetic before they
/// are returned.
struct FarkasAnswer {
  /// One nonnegative weight per generator; sum of weight * generator equals
  /// the target exactly.
  std::optional<std::vector<Rational>> combination;
  /// separator . target < 0 and separator . g >= 0 for every generator g.
  std::optional<Vec> separator;

  bool member() const { return combination.has_value(); }
};

FarkasAnswer cone_member(const Vec& target, std::span<const Vec> generators);

struct RayEnumeration {
  /// Primitive, duplicate-free, lexicographically sorted.
  std::vector<Vec> rays;
  /// False when the cone contains a line; rays is then empty and lineality
  /// holds a basis of the lineality space.
  bool pointed = true;
  std::vector<Vec> lineality;
};

/// Extreme rays of {x : ineq . x >= 0, eq . x == 0} by the double description
/// method, run inside the equality subspace.
RayEnumeration extreme_rays(const InequalitySystem& sys, const Budget& budget = {});

struct FacetDescription {
  /// Facet functionals within the linear span of the rays.
  std::vector<Vec> facets;
  /// Basis of the orthogonal complement of the span (empty if full
  /// dimensional).
  std::vector<Vec> equations;
};

FacetDescription facets(std::span<const Vec> rays, std::size_t dim,
                        const Budget& budget = {});

/// Result of positive row reduction of a square pairing matrix
/// A[i][j] = D_i . c_j.
struct PositiveReduction {
  std::size_t row = 0;               // first row that became nonnegative
  std::vector<Rational> row_weights;  // nonnegative, weight of `row` is 1
  Vec nonnegative_row;                // sum of row_weights[i] * A[i]
  /// Nonnegative column weights a with A a >= 0 and a != 0; present when the
  /// off-diagonal entries of A are nonnegative.
  std::optional<std::vector<Rational>> column_weights;
};

/// Row reduction that only adds positive multiples of a row to rows beneath
/// it. Returns the first nonnegative row that appears, or nullopt.
std::optional<PositiveReduction> rref_positive(const Matrix& a);

}  // namespace negcone
