#pragma once

#include <string>
#include <vector>

#include "tdlc/entropy.hpp"

namespace tdlc {

struct PropertyCase {
  std::string name;
  bool passed = false;
  nlohmann::json witness;  // replayable instance + detail, populated on failure
};

struct SuiteReport {
  std::string suite;
  unsigned long long seed = 0;
  int requested = 0;  // instance count driving the suite
  int passed = 0;
  int failed = 0;
  std::vector<PropertyCase> cases;
};

// Registered suite names, "all" excluded.
const std::vector<std::string>& verify_suite_names();

// Deterministic seeded property run. count <= 0 selects the suite default.
SuiteReport run_suite(const std::string& name, unsigned long long seed, int count);

// Every suite in order; count applies to each.
std::vector<SuiteReport> run_all_suites(unsigned long long seed, int count);

}  // namespace tdlc
