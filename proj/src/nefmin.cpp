#include "negcone/nefmin.hpp"

#include "elimination.hpp"

#include <algorithm>
#include <functional>

namespace negcone {

namespace {

std::string key_of(const CurveSet& s) {
  std::string k = "I";
  for (auto i : s) k += ":" + std::to_string(i);
  return k;
}

std::vector<std::vector<bool>> reachability(const SweptGraph& g) {
  const std::size_t m = g.vertices.size();
  auto at = [&](std::size_t d) {
    return static_cast<std::size_t>(std::find(g.vertices.begin(), g.vertices.end(), d) - g.vertices.begin());
  };
  std::vector<std::vector<bool>> r(m, std::vector<bool>(m, false));
  for (const auto& [a, b] : g.edges) r[at(a)][at(b)] = true;
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      if (!r[i][k]) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (r[k][j]) r[i][j] = true;
      }
    }
  }
  return r;
}

}  // namespace

bool SweptGraph::every_vertex_on_cycle() const {
  const auto r = reachability(*this);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!r[i][i]) return false;
  }
  return true;
}

bool SweptGraph::strongly_connected() const {
  const auto r = reachability(*this);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = 0; j < vertices.size(); ++j) {
      if (i != j && !r[i][j]) return false;
    }
  }
  return true;
}

bool SweptGraph::is_hamiltonian_cycle() const {
  if (vertices.size() < 2 || edges.size() != vertices.size()) return false;
  std::map<std::size_t, int> in, out;
  for (const auto& [a, b] : edges) {
    ++out[a];
    ++in[b];
  }
  for (auto v : vertices) {
    if (in[v] != 1 || out[v] != 1) return false;
  }
  return strongly_connected();
}

NefminEngine::NefminEngine(const Space& space, const SymmetryGroup& group) : space_(space), group_(group) {
  for (std::size_t i = 0; i < space.curves.size(); ++i) curves_.push_back(space.curve_vec(i));
  for (std::size_t c = 0; c < space.curves.size(); ++c) {
    for (std::size_t d = 0; d < space.divisors.size(); ++d) {
      const bool own = d == space.curves[c].swept;
      if ((space.table[d][c] < 0) != own) sign_pattern_ = false;
    }
  }
}

std::optional<QNefCertificate> NefminEngine::qnef_lp(const CurveSet& subset) const {
  if (subset.empty()) return std::nullopt;
  const std::size_t nd = space_.divisors.size();
  // Variables: weights a_i >= 0 and slacks s_D >= 0 with
  //   sum_i a_i (D . c_i) - s_D = 0 for each D, and sum_i a_i = 1.
  std::vector<Vec> gens;
  for (auto i : subset) {
    Vec col(nd + 1);
    for (std::size_t d = 0; d < nd; ++d) col[d] = space_.table[d][i];
    col[nd] = 1;
    gens.push_back(std::move(col));
  }
  for (std::size_t d = 0; d < nd; ++d) {
    Vec col(nd + 1);
    col[d] = -1;
    gens.push_back(std::move(col));
  }
  Vec target(nd + 1);
  target[nd] = 1;
  const auto ans = cone_member(target, gens);
  if (!ans.member()) return std::nullopt;
  QNefCertificate cert;
  cert.curve.assign(space_.rank, Rational(0));
  for (std::size_t k = 0; k < subset.size(); ++k) {
    const Rational& w = (*ans.combination)[k];
    if (w == 0) continue;
    cert.weights.emplace_back(subset[k], w);
    for (std::size_t j = 0; j < space_.rank; ++j) cert.curve[j] += w * curves_[subset[k]][j];
  }
  return cert;
}

std::optional<QNefCertificate> NefminEngine::qnef_rref(const CurveSet& subset) const {
  if (subset.empty()) return std::nullopt;
  Matrix a(subset.size(), Vec(subset.size()));
  std::set<std::size_t> swept;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    const std::size_t d = space_.curves[subset[i]].swept;
    if (!swept.insert(d).second) throw std::invalid_argument("qnef_rref: swept divisors are not distinct");
    for (std::size_t j = 0; j < subset.size(); ++j) a[i][j] = space_.table[d][subset[j]];
  }
  const auto red = rref_positive(a);
  if (!red) return std::nullopt;
  if (!red->column_weights) return qnef_lp(subset);
  QNefCertificate cert;
  cert.curve.assign(space_.rank, Rational(0));
  const auto& w = *red->column_weights;
  // Scale to integer weights.
  Integer den = 1;
  for (const auto& x : w) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(x));
  for (std::size_t k = 0; k < subset.size(); ++k) {
    const Rational wk = w[k] * den;
    if (wk == 0) continue;
    cert.weights.emplace_back(subset[k], wk);
    for (std::size_t j = 0; j < space_.rank; ++j) cert.curve[j] += wk * curves_[subset[k]][j];
  }
  for (std::size_t d = 0; d < space_.divisors.size(); ++d) {
    if (space_.pair(space_.divisor_vec(d), cert.curve) < 0) return qnef_lp(subset);
  }
  return cert;
}

std::optional<QNefCertificate> NefminEngine::qnef_generate(const CurveSet& subset) const {
  std::set<std::size_t> swept;
  bool distinct = true;
  for (auto i : subset) distinct = swept.insert(space_.curves[i].swept).second && distinct;
  if (distinct && sign_pattern_) return qnef_rref(subset);
  return qnef_lp(subset);
}

SweptGraph NefminEngine::build_graph(const CurveSet& subset) const {
  SweptGraph g;
  for (auto i : subset) g.vertices.push_back(space_.curves[i].swept);
  std::sort(g.vertices.begin(), g.vertices.end());
  g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()), g.vertices.end());
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (auto i : subset) {
    for (auto d : g.vertices) {
      if (space_.table[d][i] > 0) edges.emplace(space_.curves[i].swept, d);
    }
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

bool NefminEngine::nef_minimal_check(const CurveSet& subset) const {
  if (!qnef_generate(subset)) return false;
  for (std::size_t skip = 0; skip < subset.size(); ++skip) {
    CurveSet sub;
    for (std::size_t k = 0; k < subset.size(); ++k) {
      if (k != skip) sub.push_back(subset[k]);
    }
    if (!sub.empty() && qnef_generate(sub)) return false;
  }
  return true;
}

const NefminEngine::Closure& NefminEngine::closure_of(const std::vector<Vec>& vanishing, const std::string& key) {
  auto it = closures_.find(key);
  if (it != closures_.end()) return it->second;

  std::vector<Vec> gens = curves_;
  for (const auto& v : vanishing) {
    Vec neg(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) neg[j] = -v[j];
    gens.push_back(std::move(neg));
  }
  Closure cl;
  cl.witness.assign(space_.rank, Rational(0));
  for (std::size_t c = 0; c < curves_.size(); ++c) {
    if (space_.pair(cl.witness, curves_[c]) > 0) continue;
    Vec neg(space_.rank);
    for (std::size_t j = 0; j < space_.rank; ++j) neg[j] = -curves_[c][j];
    const auto ans = cone_member(neg, gens);
    if (ans.member()) {
      cl.members.push_back(c);
      continue;
    }
    // The separator, read as a divisor, lies on the face and is positive on c.
    const Vec d = space_.curve_of_functional(*ans.separator);
    for (std::size_t j = 0; j < space_.rank; ++j) cl.witness[j] += d[j];
    cl.witness = primitive(cl.witness);
  }
  for (std::size_t c = 0; c < curves_.size(); ++c) {
    const bool member = std::binary_search(cl.members.begin(), cl.members.end(), c);
    const Rational v = space_.pair(cl.witness, curves_[c]);
    if (v < 0 || (v == 0) != member) throw std::logic_error("vanishing closure: witness check failed");
  }
  return closures_.emplace(key, std::move(cl)).first->second;
}

CurveSet NefminEngine::vanishing_closure(const CurveSet& subset) {
  std::vector<Vec> vs;
  for (auto i : subset) vs.push_back(curves_[i]);
  return closure_of(vs, key_of(subset)).members;
}

Vec NefminEngine::face_witness(const CurveSet& subset) {
  std::vector<Vec> vs;
  for (auto i : subset) vs.push_back(curves_[i]);
  return closure_of(vs, key_of(subset)).witness;
}

CurveSet NefminEngine::vanishing_closure_of_curve(const Vec& curve) {
  if (curve.size() != space_.rank) throw DimensionMismatch("closure: basis mismatch");
  if (is_zero(curve)) throw std::invalid_argument("closure: the zero curve has no face");
  if (!cone_member(curve, curves_).member()) {
    throw std::invalid_argument("closure: " + format_curve(space_, curve) + " is not generated by the catalog");
  }
  return closure_of({curve}, "c" + to_string(curve)).members;
}

bool NefminEngine::covers(const Vec& curve, const CurveSet& subset) {
  const Vec w = face_witness(subset);
  if (space_.pair(w, curve) != 0) return false;
  return covers_by_definition(curve, subset);
}

bool NefminEngine::covers_by_definition(const Vec& curve, const CurveSet& subset) {
  std::vector<Vec> gens;
  for (auto i : vanishing_closure(subset)) gens.push_back(curves_[i]);
  return cone_member(curve, gens).member();
}

EnumerationReport NefminEngine::enumerate(const std::vector<Vec>& covering, const EnumerationOptions& options) {
  EnumerationReport report;

  // The covering set is used together with all of its group images.
  struct Cover {
    Vec curve;
    std::size_t origin;
  };
  std::vector<Cover> covers_all;
  for (std::size_t s = 0; s < covering.size(); ++s) {
    const Vec& c = covering[s];
    if (c.size() != space_.rank) throw DimensionMismatch("enumerate: covering curve has wrong length");
    if (!cone_member(c, curves_).member()) {
      throw std::invalid_argument("enumerate: " + format_curve(space_, c) + " is not generated by the catalog");
    }
    for (std::size_t d = 0; d < space_.divisors.size(); ++d) {
      if (space_.pair(space_.divisor_vec(d), c) < 0) {
        throw std::invalid_argument("enumerate: " + format_curve(space_, c) + " is negative on " +
                                    space_.divisors[d].name);
      }
    }
    const Vec p = primitive(c);
    std::set<IntVec> seen;
    for (const auto& img : group_.curve_images(to_int_vec(p))) {
      if (seen.insert(img).second) covers_all.push_back({to_vec(img), s});
    }
  }

  auto covered = [&](const CurveSet& subset) -> std::optional<std::size_t> {
    const Vec w = face_witness(subset);
    for (const auto& cv : covers_all) {
      if (space_.pair(w, cv.curve) == 0) return cv.origin;
    }
    return std::nullopt;
  };

  auto orbit_size = [&](const CurveSet& subset) {
    std::set<CurveSet> images;
    for (const auto& e : group_.elements()) {
      CurveSet img;
      for (auto i : subset) img.push_back(e.curve_perm[i]);
      std::sort(img.begin(), img.end());
      images.insert(img);
    }
    return images.size();
  };

  std::unique_ptr<EliminationContext> elim;
  if (options.criteria23) elim = std::make_unique<EliminationContext>(*this, space_.curves.size());

  std::set<CurveSet> visited;
  std::set<CurveSet> recorded;
  bool stop = false;

  std::function<void(const CurveSet&, std::size_t)> explore = [&](const CurveSet& subset, std::size_t last) {
    if (stop) return;
    const CurveSet key = options.orbit_pruning ? group_.canonical_curve_set(subset) : subset;
    if (!visited.insert(key).second) return;
    ++report.states_visited;
    options.budget.check_time();

    std::set<std::size_t> swept;
    for (auto i : subset) {
      if (!swept.insert(space_.curves[i].swept).second) {
        ++report.eliminated_shared;
        return;
      }
    }

    if (auto cert = qnef_generate(subset)) {
      if (!nef_minimal_check(subset) || !recorded.insert(key).second) return;
      auto cov = covered(key);
      report.nef_minimal.push_back(key);
      report.orbit_sizes.push_back(orbit_size(key));
      report.certificates.push_back(options.orbit_pruning ? *qnef_generate(key) : *cert);
      report.covered_by.push_back(cov);
      if (!cov) {
        report.uncovered.push_back(key);
        if (options.stop_at_first_uncovered) {
          report.truncated = true;
          stop = true;
        }
      }
      return;
    }

    if (covered(subset)) {
      ++report.eliminated_covered;
      return;
    }

    if (elim) {
      const int fired = elim->try_eliminate(subset, report);
      if (fired == 2) {
        ++report.eliminated_replacement;
        return;
      }
      if (fired == 3) {
        ++report.eliminated_exhaustion;
        return;
      }
    }

    if (subset.size() >= options.max_size) {
      throw BudgetExceeded("subset size ceiling " + std::to_string(options.max_size) +
                           " reached at an open state of size " + std::to_string(subset.size()));
    }

    // Extensions: curves whose swept divisor is positive on some curve of I,
    // those positive on the last added curve first.
    std::vector<std::size_t> first, rest;
    for (std::size_t c = 0; c < space_.curves.size(); ++c) {
      if (std::binary_search(subset.begin(), subset.end(), c)) continue;
      const std::size_t d = space_.curves[c].swept;
      if (space_.table[d][last] > 0) {
        first.push_back(c);
        continue;
      }
      for (auto i : subset) {
        if (space_.table[d][i] > 0) {
          rest.push_back(c);
          break;
        }
      }
    }
    for (auto* list : {&first, &rest}) {
      for (auto c : *list) {
        CurveSet next = subset;
        next.insert(std::upper_bound(next.begin(), next.end(), c), c);
        explore(next, c);
        if (stop) return;
      }
    }
  };

  for (std::size_t c = 0; c < space_.curves.size() && !stop; ++c) {
    if (options.orbit_pruning && group_.canonical_curve_set({c}) != CurveSet{c}) continue;
    explore({c}, c);
  }

  if (elim) {
    report.ledger_records = elim->records();
    report.ledger_edges = elim->ledger().edge_count();
    report.ledger_acyclic = elim->ledger().acyclic() && elim->always_acyclic();
  }
  return report;
}

}  // namespace negcone
