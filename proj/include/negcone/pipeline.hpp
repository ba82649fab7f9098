#pragma once

// Command orchestration shared by the C API and the command-line tool.

#include "negcone/faces.hpp"

#include <cstdint>

namespace negcone {

enum class ExitCode : int {
  Ok = 0,
  VerificationFailure = 1,
  BudgetExceeded = 2,
  CatalogViolation = 3,
  InvalidArguments = 4,
};

struct Mutation {
  /// Index of a Keel-Vermiere divisor (0-based among them) to remove.
  std::optional<std::size_t> drop_kv;
  /// Catalog curve index whose class is shifted by -l.
  std::optional<std::size_t> perturb_curve;

  bool any() const { return drop_kv || perturb_curve; }
};

struct RunConfig {
  std::string command;        // verify-eff, enumerate-nefmin, orbits, face, oracle, fixtures,
                              // report-contractions, check-cert
  SpaceId space = SpaceId::M06;
  std::string route = "qrays";  // qrays | nefmin | both
  std::string criteria = "1";   // 1 | 123
  std::string what = "facets";  // oracle: rays | facets | crosscheck | sum
  std::string curve;            // face
  std::vector<std::string> covers;  // covering curves; empty means the built-in list
  std::string input;            // check-cert
  std::size_t max_size = 8;
  std::size_t max_rays = 2'000'000;
  double max_seconds = 3600;
  std::size_t trials = 10'000;
  std::uint64_t seed = 20240601;
  Mutation mutation;
};

struct RunResult {
  ExitCode code = ExitCode::Ok;
  std::string json;     // artifact, pretty printed
  std::string summary;  // human-readable lines
};

/// Built-in covering curves: the three classes on M_{0,6}, the two named
/// curves on M_{0,5}.
std::vector<std::string> default_covers(SpaceId id);

/// Catalog with the mutation applied. Throws std::invalid_argument on an out
/// of range index.
Space mutated_space(SpaceId id, const Mutation& m);

/// Never throws; errors become exit codes with a message in `summary`.
RunResult run(const RunConfig& config);

}  // namespace negcone
