#include "elimination.hpp"

#include <algorithm>

namespace negcone {

bool EliminationLedger::acyclic() const {
  const std::size_t n = out_.size();
  std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<std::pair<std::size_t, std::set<std::size_t>::const_iterator>> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (state[s]) continue;
    state[s] = 1;
    stack.emplace_back(s, out_[s].begin());
    while (!stack.empty()) {
      auto& [v, it] = stack.back();
      if (it == out_[v].end()) {
        state[v] = 2;
        stack.pop_back();
        continue;
      }
      const std::size_t w = *it++;
      if (state[w] == 1) return false;
      if (state[w] == 0) {
        state[w] = 1;
        stack.emplace_back(w, out_[w].begin());
      }
    }
  }
  return true;
}

bool EliminationLedger::can_insert(const std::vector<std::pair<std::size_t, std::size_t>>& edges) const {
  EliminationLedger copy = *this;
  for (const auto& [a, b] : edges) copy.out_.at(a).insert(b);
  return copy.acyclic();
}

bool EliminationLedger::insert(const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::pair<std::size_t, std::size_t>> added;
  for (const auto& [a, b] : edges) {
    if (out_.at(a).insert(b).second) added.emplace_back(a, b);
  }
  if (acyclic()) return true;
  for (const auto& [a, b] : added) out_[a].erase(b);
  return false;
}

std::size_t EliminationLedger::edge_count() const {
  std::size_t n = 0;
  for (const auto& s : out_) n += s.size();
  return n;
}

EliminationContext::EliminationContext(NefminEngine& engine, std::size_t curves)
    : engine_(engine), ledger_(curves), unimodal_(unimodality_flags(engine.space())) {}

std::vector<std::pair<std::size_t, std::size_t>> EliminationContext::with_images(
    const std::vector<std::pair<std::size_t, std::size_t>>& edges) const {
  std::set<std::pair<std::size_t, std::size_t>> all;
  for (const auto& e : engine_.group().elements()) {
    for (const auto& [a, b] : edges) all.emplace(e.curve_perm[a], e.curve_perm[b]);
  }
  return {all.begin(), all.end()};
}

bool EliminationContext::commit(const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  const bool ok = ledger_.insert(edges);
  if (!ledger_.acyclic()) always_acyclic_ = false;
  return ok;
}

std::optional<ReplacementWitness> EliminationContext::replacement(const CurveSet& subset, std::size_t c) {
  const Space& sp = engine_.space();
  CurveSet rest;
  for (auto i : subset) {
    if (i != c) rest.push_back(i);
  }
  // alpha = sum b_r r over the rest with N(c').(c + alpha) = 0 for c' in rest.
  const std::size_t m = rest.size();
  Matrix a(m, Vec(m));
  Vec rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t d = sp.curves[rest[i]].swept;
    for (std::size_t j = 0; j < m; ++j) a[i][j] = sp.table[d][rest[j]];
    rhs[i] = -sp.table[d][c];
  }
  Vec b(m);
  if (m > 0) {
    auto sol = solve_square(a, rhs);
    if (!sol) return std::nullopt;
    b = *sol;
  }
  for (const auto& x : b) {
    if (x < 0) return std::nullopt;
  }
  ReplacementWitness w;
  w.removed = c;
  w.target = sp.curve_vec(c);
  for (std::size_t j = 0; j < m; ++j) {
    if (b[j] == 0) continue;
    const Vec r = sp.curve_vec(rest[j]);
    for (std::size_t k = 0; k < sp.rank; ++k) w.target[k] += b[j] * r[k];
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (sp.pair(sp.divisor_vec(sp.curves[rest[i]].swept), w.target) != 0) {
      throw std::logic_error("criterion 2: replacement identity failed");
    }
  }

  // I_0 inside the vanishing closure, avoiding c; unimodal curves first.
  const CurveSet closure = engine_.vanishing_closure(subset);
  for (int pass = 0; pass < 2; ++pass) {
    CurveSet pool;
    for (auto i : closure) {
      if (i == c) continue;
      if (pass == 0 && !unimodal_[i]) continue;
      pool.push_back(i);
    }
    std::vector<Vec> gens;
    for (auto i : pool) gens.push_back(sp.curve_vec(i));
    const auto ans = cone_member(w.target, gens);
    if (!ans.member()) continue;
    for (std::size_t k = 0; k < pool.size(); ++k) {
      if ((*ans.combination)[k] > 0) w.replacement.push_back(pool[k]);
    }
    break;
  }
  if (w.replacement.empty() && !is_zero(w.target)) return std::nullopt;

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (auto i : w.replacement) {
    if (!std::binary_search(subset.begin(), subset.end(), i)) edges.emplace_back(c, i);
  }
  w.edges = with_images(edges);
  return w;
}

int EliminationContext::try_eliminate(const CurveSet& subset, EnumerationReport& report) {
  (void)report;
  const Space& sp = engine_.space();
  auto describe = [&](const ReplacementWitness& w) {
    std::string s = "c=" + sp.curves[w.removed].name + " c+alpha=" + format_curve(sp, w.target) + " I0={";
    for (std::size_t k = 0; k < w.replacement.size(); ++k) {
      s += (k ? "," : "") + sp.curves[w.replacement[k]].name;
    }
    return s + "}";
  };

  // Criterion 2, trying curves that are not unimodal first.
  CurveSet order;
  for (auto i : subset) {
    if (!unimodal_[i]) order.push_back(i);
  }
  for (auto i : subset) {
    if (unimodal_[i]) order.push_back(i);
  }
  for (auto c : order) {
    auto w = replacement(subset, c);
    if (!w || !commit(w->edges)) continue;
    records_.push_back({subset, 2, describe(*w)});
    return 2;
  }

  // Criterion 3 over divisors swept inside the closure but not by the subset.
  const CurveSet closure = engine_.vanishing_closure(subset);
  std::set<std::size_t> swept_subset;
  for (auto i : subset) swept_subset.insert(sp.curves[i].swept);
  std::set<std::size_t> candidates;
  for (auto i : closure) {
    if (!swept_subset.count(sp.curves[i].swept)) candidates.insert(sp.curves[i].swept);
  }
  for (auto d : candidates) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::pair<std::size_t, std::size_t>> footnote;
    std::string detail = "D=" + sp.divisors[d].name;
    bool all = true;
    for (auto ci : closure) {
      if (sp.curves[ci].swept != d) continue;
      CurveSet ext = subset;
      ext.insert(std::upper_bound(ext.begin(), ext.end(), ci), ci);
      std::optional<ReplacementWitness> found;
      for (auto cp : subset) {
        found = replacement(ext, cp);
        if (found) break;
      }
      if (!found) {
        all = false;
        break;
      }
      edges.insert(edges.end(), found->edges.begin(), found->edges.end());
      footnote.emplace_back(found->removed, ci);
      detail += "; " + sp.curves[ci].name + ": " + describe(*found);
    }
    if (!all) continue;
    // Footnote: some edge c'_i -> c_i must keep the ledger acyclic.
    bool placed = false;
    for (const auto& f : footnote) {
      auto trial = edges;
      const auto imgs = with_images({f});
      trial.insert(trial.end(), imgs.begin(), imgs.end());
      if (ledger_.can_insert(trial)) {
        placed = commit(trial);
        if (placed) break;
      }
    }
    if (!placed) continue;
    records_.push_back({subset, 3, detail});
    return 3;
  }
  return 0;
}

}  // namespace negcone
