#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tdlc/entropy.hpp"
#include "tdlc/universe.hpp"
#include "tdlc/verify.hpp"

namespace tdlc {

// A parsed instance file: one computation request. The JSON schema is
//   { "op": "entropy" | "entropy-global" | "modulus" | "scale" | "trace"
//          | "verify",
//     "universe": <descriptor>, "automorphism": <descriptor>,
//     "subgroup": <descriptor, optional>,
//     "params": { "window", "max_steps", "base_budget", "seed", "count",
//                 "suite", "candidates": [<subgroup descriptors>] } }
// with every rational written as an exact string. Unknown keys are ignored
// so that annotated witness files replay unchanged.
struct Instance {
  std::string op = "entropy";
  std::shared_ptr<const Universe> universe;  // null only for op == "verify"
  std::optional<Automorphism> automorphism;
  std::optional<Subgroup> subgroup;
  std::vector<Subgroup> candidates;
  EngineParams engine;
  int base_budget = 8;
  unsigned long long seed = 1;
  std::string suite = "all";
  int count = 0;  // 0: suite default
};

// Universe registry: builds a universe from its descriptor.
// Kinds: padic {p, dim}, shift {m}, finite {moduli}, product {factors: [2]}.
std::shared_ptr<const Universe> universe_from_descriptor(const nlohmann::json& d);

Instance parse_instance(const nlohmann::json& j);
Instance load_instance(const std::string& path);  // ParseError on bad file

// Canonical echo; parse_instance(instance_to_json(i)) is equivalent to i.
nlohmann::json instance_to_json(const Instance& inst);

// Executes the instance and returns the full report, echo included. Engine
// errors (NotStabilized, CrossCheckMismatch, ...) propagate to the caller.
nlohmann::json run_instance(const Instance& inst);

// Report fragments shared by tools and tests.
nlohmann::json entropy_value_to_json(const EntropyValue& v);
nlohmann::json entropy_report_to_json(const EntropyReport& r);
nlohmann::json suite_report_to_json(const SuiteReport& r);

// Trace CSV with header n,c_n,alpha_n,d_index; one row per chain step,
// exact decimal integers, blank cells where a chain has no entry.
std::string trace_to_csv(const std::vector<TraceRow>& limit_rows,
                         const std::vector<TraceRow>& limitfree_rows,
                         bool complete);

}  // namespace tdlc
