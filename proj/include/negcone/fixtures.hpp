#pragma once

// Regression fixtures: the displayed class identities and generation facts
// used in the hand proof, rechecked exactly against the catalogs.

#include "negcone/faces.hpp"

namespace negcone {

struct FixtureResult {
  std::string name;
  bool passed = false;
  std::size_t instances = 0;  // identities checked under this name
  std::string detail;          // first failure, if any
};

std::vector<FixtureResult> run_fixtures();

}  // namespace negcone
