#pragma once

// Picard lattices of M_{0,5} and M_{0,6} in the Kapranov basis, their
// negative-curve and divisor catalogs, and the symmetric group action.
//
// Coordinates. A divisor d*H + sum x_i*E_i + sum x_ij*E_ij is stored as
// (d, x_1..x_5, x_12..x_45), a curve a*l + sum y_i*e_i + sum y_ij*e_ij as
// (a, y_1.., y_12..). Pairing is diag(1, -1, ..., -1). For n = 5 the basis
// is H, E0..E3 and curves use the same lattice.

#include "negcone/cone.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace negcone {

enum class SpaceId { M05, M06 };

std::string to_string(SpaceId id);
/// Accepts "m05" / "m06".
SpaceId parse_space_id(const std::string& text);

enum class DivisorKind { Boundary, KeelVermiere };

struct DivisorGen {
  std::string name;
  DivisorKind kind = DivisorKind::Boundary;
  /// Boundary: canonical subset of markings. KV: {i, j, k, h} for KV_{ij,kh}.
  std::vector<int> label;
  IntVec cls;
};

struct NegativeCurve {
  std::string name;
  IntVec cls;
  std::size_t swept = 0;  // index into Space::divisors
};

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Space {
  SpaceId id = SpaceId::M06;
  int n = 6;
  std::size_t rank = 16;
  std::vector<std::string> divisor_basis;
  std::vector<std::string> curve_basis;
  std::vector<int> pairing;  // diagonal entries

  std::vector<NegativeCurve> curves;
  std::vector<DivisorGen> divisors;

  long long pair(const IntVec& d, const IntVec& c) const;
  Rational pair(const Vec& d, const Vec& c) const;

  /// Pairing matrix applied to a curve: the functional D -> D . c.
  Vec functional(const IntVec& c) const;
  Vec functional(const Vec& c) const;
  /// Inverse of `functional`: the curve whose pairing functional is f.
  /// (The pairing is an involution, so this is the same map.)
  Vec curve_of_functional(const Vec& f) const;

  Vec curve_vec(std::size_t i) const { return to_vec(curves[i].cls); }
  Vec divisor_vec(std::size_t i) const { return to_vec(divisors[i].cls); }

  /// table[d][c] = divisors[d] . curves[c]
  std::vector<std::vector<long long>> table;

  /// Must be called after curves/divisors change.
  void rebuild_table();

  std::size_t curve_index(const std::string& name) const;
  std::size_t divisor_index(const std::string& name) const;
};

Space build_space(SpaceId id);
Space build_space(int n);

/// Dictionary class of the boundary divisor delta_S. Any subset with
/// 2 <= |S| <= n - 2 is accepted and canonicalized by complement.
IntVec boundary_class(SpaceId id, std::vector<int> subset);
/// Canonical label (the representative used in the catalog).
std::vector<int> canonical_boundary_label(SpaceId id, std::vector<int> subset);
/// All canonical boundary labels in catalog order.
std::vector<std::vector<int>> boundary_labels(SpaceId id);

IntVec keel_vermiere_class(int i, int j, int k, int h);

/// Unimodal: every divisor other than N(c) pairs with c to 0 or -N(c).c.
std::vector<bool> unimodality_flags(const Space& space);

/// Parses "l-e1-e23", "2H-E1-E23", "2*D125+KV15,34", "H-E0-E3". Curves use
/// l/e, divisors H/E; D<ijk> is the plane class on {i,j,k} and KV<ij>,<kh>
/// the Keel-Vermiere class (n = 6 only). Coefficients may be rational.
Vec parse_curve(const Space& space, const std::string& text);
Vec parse_divisor(const Space& space, const std::string& text);
std::string format_curve(const Space& space, const Vec& v);
std::string format_divisor(const Space& space, const Vec& v);

// Symmetric group ----------------------------------------------------------

/// Permutation of markings, perm[i - 1] = sigma(i).
using Perm = std::vector<int>;

struct LinearAction {
  Perm perm;
  Matrix on_divisors;  // columns are images of basis divisors
  Matrix on_curves;    // contragredient
  Vec apply_divisor(const Vec& v) const;
  Vec apply_curve(const Vec& v) const;
};

/// Solves the action from the boundary dictionary. Throws CatalogError if the
/// dictionary is not consistent with sigma.
LinearAction s_action(SpaceId id, const Perm& perm);

/// The subgroup of S_n that maps the catalog to itself. Elements are stored
/// as index permutations of the catalog; matrices are available on demand.
class SymmetryGroup {
 public:
  explicit SymmetryGroup(const Space& space);

  struct Element {
    Perm perm;
    std::vector<std::size_t> curve_perm;
    std::vector<std::size_t> divisor_perm;
  };

  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  /// Size of the full symmetric group on the markings.
  std::size_t full_order() const { return full_order_; }
  bool is_full() const { return elements_.size() == full_order_; }

  /// Images of an integral curve (or divisor) class under every element, in
  /// element order.
  std::vector<IntVec> curve_images(const IntVec& c) const;
  std::vector<IntVec> divisor_images(const IntVec& d) const;

  /// Lexicographically least image of a sorted index set.
  std::vector<std::size_t> canonical_curve_set(const std::vector<std::size_t>& ids) const;
  std::vector<std::size_t> canonical_divisor_set(const std::vector<std::size_t>& ids) const;

  /// Orbit partition of catalog indices, each orbit sorted, orbits ordered by
  /// least member.
  std::vector<std::vector<std::size_t>> curve_orbits() const;
  std::vector<std::vector<std::size_t>> divisor_orbits() const;

  /// Orbit partition of arbitrary integral classes (duplicates collapse).
  std::vector<std::vector<std::size_t>> orbits_of_curves(const std::vector<IntVec>& cs) const;
  std::vector<std::vector<std::size_t>> orbits_of_divisors(const std::vector<IntVec>& ds) const;

  /// Per generator (i i+1): whether it maps the catalog to itself.
  std::vector<bool> generator_closure() const { return generator_closed_; }

 private:
  std::vector<IntVec> images(const IntVec& v, bool curve) const;

  std::size_t rank_ = 0;
  std::size_t full_order_ = 0;
  // Generator matrices (i i+1), integral, row-major: image = M * v.
  std::vector<std::vector<IntVec>> gen_div_;
  std::vector<std::vector<IntVec>> gen_cur_;
  // Breadth-first tree over the full symmetric group.
  std::vector<Perm> all_perms_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> via_;
  std::vector<std::size_t> members_;  // indices into all_perms_ forming the group
  std::vector<Element> elements_;
  std::vector<bool> generator_closed_;
};

// Catalog validation -------------------------------------------------------

struct InvariantViolation {
  std::string check;
  std::string detail;
};

/// Sign pattern, containment of the divisor catalog in the cone bounded by
/// the curves away from their own swept divisors, and dictionary
/// consistency. Group closure is reported separately.
std::vector<InvariantViolation> validate_catalog(const Space& space);

}  // namespace negcone
