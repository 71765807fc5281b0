#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tdlc/universe.hpp"

namespace tdlc {

struct EngineParams {
  int window = 0;      // 0: universe default; explicit values must be >= 2
  int max_steps = 64;  // hard cap on chain length
};

struct TraceRow {
  int n = 0;
  IndexValue c;                      // [U : C_n] of the chain being traced
  std::optional<IndexValue> alpha;   // c_{n+1} / c_n
  std::optional<IndexValue> d_index; // [D_n : U] (limit-free chain only)
};

struct CrossCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct EntropyReport {
  EntropyValue value;
  std::string algorithm;  // "limit" | "limitfree" | "corollary"
  int stabilized_at = 0;  // first index of the terminal constant run
  int steps = 0;          // chain length actually computed
  std::vector<TraceRow> trace;
  std::vector<CrossCheck> cross_checks;
  IndexValue modulus;     // modulus of the automorphism, factored rational
};

// NotStabilized with the partial trace attached (CSV export, diagnostics).
class StabilizationError : public Error {
 public:
  StabilizationError(EntropyReport partial, const std::string& message)
      : Error(ErrorKind::NotStabilized, message), partial_(std::move(partial)) {}
  const EntropyReport& partial() const { return partial_; }

 private:
  EntropyReport partial_;
};

struct GlobalEvaluation {
  nlohmann::json subgroup;  // descriptor of the base member evaluated
  EntropyValue value;
};

struct GlobalReport {
  EntropyValue value;
  bool certified = false;  // supremum certified vs budget-limited
  std::vector<GlobalEvaluation> evaluations;
};

struct ScaleReport {
  IndexValue value;                  // min stabilized limit-free index
  std::optional<IndexValue> oracle;  // closed-form scale when the universe has one
  bool oracle_attained = false;
  std::vector<std::pair<nlohmann::json, IndexValue>> per_candidate;
};

// C_n(phi, U) = U cap phi^{-1}(U) cap ... cap phi^{-(n-1)}(U), n >= 1.
Subgroup cotrajectory(const Automorphism& phi, const Subgroup& u, int n);

// Modulus as the index ratio [phi(U) : U cap phi(U)] / [U : U cap phi(U)];
// independent of the compact open U.
IndexValue modulus_of(const Automorphism& phi, const Subgroup& u);

// H(phi, U) as lim log[U : C_n(phi,U)] / n through the stabilizing quotient
// sequence alpha_n = c_{n+1}/c_n.
EntropyReport entropy_local_limit(const Automorphism& phi, const Subgroup& u,
                                  const EngineParams& params = {});

// H(phi, U) = log[D : U] where D is the stabilized value of the descending
// chain D_n = phi(C_n(phi^{-1},U)) + U (subgroup equality, not index equality).
EntropyReport entropy_local_limitfree(const Automorphism& phi, const Subgroup& u,
                                      const EngineParams& params = {});

// H(phi, U) = log[phi^{-1}(C(phi,U)) : C(phi,U)] + log Delta(phi), computed
// through the limit-free chain of the inverse automorphism.
EntropyReport entropy_local_corollary(const Automorphism& phi, const Subgroup& u,
                                      const EngineParams& params = {});

// Supremum of H(phi, U) over the budgeted local base.
GlobalReport entropy_global(const Automorphism& phi, int base_budget,
                            const EngineParams& params = {});

// Minimum over candidates of the stabilized limit-free index; an upper bound
// for the scale. The whole group joins the candidates when it exists.
ScaleReport scale_estimate(const Automorphism& phi,
                           const std::vector<Subgroup>& candidates,
                           const EngineParams& params = {});

}  // namespace tdlc
