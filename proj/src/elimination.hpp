#pragma once

// Replacement and exhaustion elimination, with the shared ledger. Internal
// to the engine.

#include "negcone/nefmin.hpp"

namespace negcone {

struct ReplacementWitness {
  std::size_t removed = 0;   // c
  Vec target;                // c + alpha
  CurveSet replacement;      // I_0, generates target, avoids c
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // with all group images
};

class EliminationContext {
 public:
  EliminationContext(NefminEngine& engine, std::size_t curves);

  /// 0 if nothing fired, otherwise the criterion number. Ledger edges are
  /// inserted only when the elimination is accepted.
  int try_eliminate(const CurveSet& subset, EnumerationReport& report);

  /// Criterion 2 for a chosen curve c in the subset; nullopt when the
  /// replacement identity cannot be established. Does not touch the ledger.
  std::optional<ReplacementWitness> replacement(const CurveSet& subset, std::size_t c);

  const EliminationLedger& ledger() const { return ledger_; }
  const std::vector<EliminationRecord>& records() const { return records_; }
  bool always_acyclic() const { return always_acyclic_; }

 private:
  bool commit(const std::vector<std::pair<std::size_t, std::size_t>>& edges);
  std::vector<std::pair<std::size_t, std::size_t>> with_images(
      const std::vector<std::pair<std::size_t, std::size_t>>& edges) const;

  NefminEngine& engine_;
  EliminationLedger ledger_;
  std::vector<EliminationRecord> records_;
  std::vector<bool> unimodal_;
  bool always_acyclic_ = true;
};

}  // namespace negcone
