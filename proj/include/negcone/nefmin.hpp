#pragma once

// Nef-minimal subsets of the negative-curve catalog: q-nef tests, the swept
// divisor graph, vanishing closures, coverage and the symmetry-reduced search.

#include "negcone/catalog.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>

namespace negcone {

using CurveSet = std::vector<std::size_t>;  // sorted catalog indices

/// A nonzero curve generated by a subset that pairs >= 0 with every divisor
/// generator.
struct QNefCertificate {
  Vec curve;
  std::vector<std::pair<std::size_t, Rational>> weights;  // positive
};

struct SweptGraph {
  std::vector<std::size_t> vertices;                      // divisor indices
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (from, to) divisor indices

  /// Every vertex lies on a directed cycle.
  bool every_vertex_on_cycle() const;
  bool strongly_connected() const;
  /// The graph is one directed cycle through all vertices.
  bool is_hamiltonian_cycle() const;
};

struct EnumerationOptions {
  bool criteria23 = false;
  bool orbit_pruning = true;
  std::size_t max_size = 8;
  /// Stop at the first uncovered nef-minimal subset.
  bool stop_at_first_uncovered = false;
  Budget budget;
};

struct EliminationRecord {
  CurveSet subset;
  int criterion = 0;
  std::string detail;
};

struct EnumerationReport {
  /// Canonical representatives of the recorded nef-minimal subsets.
  std::vector<CurveSet> nef_minimal;
  std::vector<std::size_t> orbit_sizes;
  std::vector<QNefCertificate> certificates;
  /// Index into the covering list (per representative) or nullopt.
  std::vector<std::optional<std::size_t>> covered_by;
  std::vector<CurveSet> uncovered;
  std::size_t states_visited = 0;
  std::size_t eliminated_shared = 0;
  std::size_t eliminated_covered = 0;
  std::size_t eliminated_replacement = 0;
  std::size_t eliminated_exhaustion = 0;
  std::vector<EliminationRecord> ledger_records;
  std::size_t ledger_edges = 0;
  bool ledger_acyclic = true;
  bool truncated = false;  // stop_at_first_uncovered fired

  bool all_covered() const { return uncovered.empty() && !truncated; }
};

/// Directed graph on catalog curves with cycle-refusing insertion.
class EliminationLedger {
 public:
  explicit EliminationLedger(std::size_t vertices) : out_(vertices) {}

  /// Inserts all edges or none; refuses (returns false) if the result would
  /// contain a directed cycle.
  bool insert(const std::vector<std::pair<std::size_t, std::size_t>>& edges);
  /// Whether inserting the edges would keep the graph acyclic.
  bool can_insert(const std::vector<std::pair<std::size_t, std::size_t>>& edges) const;
  bool acyclic() const;
  std::size_t edge_count() const;

 private:
  std::vector<std::set<std::size_t>> out_;
};

class NefminEngine {
 public:
  NefminEngine(const Space& space, const SymmetryGroup& group);

  const Space& space() const { return space_; }
  const SymmetryGroup& group() const { return group_; }

  /// Positive row reduction when the swept divisors are distinct and the sign
  /// pattern holds, the LP otherwise.
  std::optional<QNefCertificate> qnef_generate(const CurveSet& subset) const;
  std::optional<QNefCertificate> qnef_lp(const CurveSet& subset) const;
  /// Positive row reduction of A_I; requires distinct swept divisors.
  std::optional<QNefCertificate> qnef_rref(const CurveSet& subset) const;

  SweptGraph build_graph(const CurveSet& subset) const;

  /// Assumes the subset generates; true iff no proper subset does.
  bool nef_minimal_check(const CurveSet& subset) const;

  /// I(F(I)) computed by the definitional LP for every candidate curve,
  /// pruned by a point of the face that grows from each separator.
  CurveSet vanishing_closure(const CurveSet& subset);
  /// Same for F(c) of a curve generated by the catalog.
  CurveSet vanishing_closure_of_curve(const Vec& curve);
  /// Relative-interior divisor of F(I) found while computing the closure.
  Vec face_witness(const CurveSet& subset);

  /// Whether I(F(I)) generates c (F(c) contains F(I)).
  bool covers(const Vec& curve, const CurveSet& subset);
  /// Direct LP version of `covers`, without the witness shortcut.
  bool covers_by_definition(const Vec& curve, const CurveSet& subset);

  EnumerationReport enumerate(const std::vector<Vec>& covering, const EnumerationOptions& options);

 private:
  struct Closure {
    CurveSet members;
    Vec witness;  // divisor coordinates
  };
  const Closure& closure_of(const std::vector<Vec>& vanishing, const std::string& key);
  bool sign_pattern_holds() const { return sign_pattern_; }

  const Space& space_;
  const SymmetryGroup& group_;
  std::vector<Vec> curves_;  // catalog curves as vectors
  bool sign_pattern_ = true;
  std::map<std::string, Closure> closures_;
};

}  // namespace negcone
