#include "tdlc/entropy.hpp"

#include <algorithm>

#include "tdlc/logging.hpp"
#include "tdlc/oracles.hpp"
#include "tdlc/padic_universe.hpp"
#include "tdlc/product_universe.hpp"
#include "tdlc/serialize.hpp"

namespace tdlc {

namespace {

int resolve_window(const std::shared_ptr<const Universe>& u, const EngineParams& params) {
  if (params.window == 0) return std::max(2, u->default_window());
  if (params.window < 2) fail(ErrorKind::InvalidArgument, "window must be at least 2");
  return params.window;
}

void check_inputs(const Automorphism& phi, const Subgroup& u) {
  if (!phi.universe() || !phi.value())
    fail(ErrorKind::InvalidArgument, "automorphism without a universe");
  if (!u) fail(ErrorKind::InvalidArgument, "null subgroup");
}

// Mandatory closed-form cross-check; a mismatch aborts the computation
// rather than returning an uncertified value.
void oracle_cross_check(const Automorphism& phi, EntropyReport& report) {
  auto oracle = phi.universe()->entropy_oracle(phi.value());
  if (!oracle) return;
  bool ok = (*oracle == report.value);
  report.cross_checks.push_back({"entropy-oracle", ok,
                                 "closed form " + oracle->display() + ", chain " +
                                     report.value.display()});
  if (!ok)
    fail(ErrorKind::CrossCheckMismatch,
         "stabilized chain gives " + report.value.display() + " but the closed form gives " +
             oracle->display());
}

int terminal_run_start(const std::vector<IndexValue>& values) {
  if (values.empty()) return 1;
  std::size_t i = values.size();
  while (i > 1 && values[i - 2] == values.back()) --i;
  return static_cast<int>(i);
}

int terminal_run_start_subgroups(const Universe& u, const std::vector<Subgroup>& values) {
  std::size_t i = values.size();
  while (i > 1 && u.equal(values[i - 2], values.back())) --i;
  return static_cast<int>(i);
}

}  // namespace

Subgroup cotrajectory(const Automorphism& phi, const Subgroup& u, int n) {
  check_inputs(phi, u);
  if (n < 1) fail(ErrorKind::InvalidArgument, "cotrajectory depth must be >= 1");
  const Universe& uni = *phi.universe();
  Subgroup c = u;
  for (int j = 1; j < n; ++j) c = uni.intersect(u, phi.apply_inverse(c));
  return c;
}

IndexValue modulus_of(const Automorphism& phi, const Subgroup& u) {
  check_inputs(phi, u);
  const Universe& uni = *phi.universe();
  Subgroup image = phi.apply(u);
  Subgroup meet = uni.intersect(u, image);
  return uni.index(meet, image) / uni.index(meet, u);
}

EntropyReport entropy_local_limit(const Automorphism& phi, const Subgroup& u,
                                  const EngineParams& params) {
  check_inputs(phi, u);
  const Universe& uni = *phi.universe();
  int window = resolve_window(phi.universe(), params);
  std::optional<int> bound = uni.stabilization_bound(phi.value(), u);

  EntropyReport report;
  report.algorithm = "limit";
  report.modulus = modulus_of(phi, u);
  report.trace.push_back({1, IndexValue::one(), std::nullopt, std::nullopt});

  std::vector<IndexValue> alphas;
  Subgroup c = u;
  IndexValue c_cur = IndexValue::one();
  int run = 0;
  for (int n = 1; n < params.max_steps; ++n) {
    c = uni.intersect(u, phi.apply_inverse(c));
    IndexValue c_next = uni.index(c, u);
    if (!c_cur.divides(c_next))
      fail(ErrorKind::MonotonicityViolation,
           "c_" + std::to_string(n) + " does not divide c_" + std::to_string(n + 1));
    IndexValue alpha = c_next / c_cur;
    if (!alphas.empty() && IndexValue::compare(alpha, alphas.back()) > 0)
      fail(ErrorKind::MonotonicityViolation,
           "alpha increased at step " + std::to_string(n));
    run = (!alphas.empty() && alpha == alphas.back()) ? run + 1 : 1;
    alphas.push_back(alpha);
    report.trace.back().alpha = alpha;
    report.trace.push_back({n + 1, c_next, std::nullopt, std::nullopt});
    c_cur = c_next;
    if (run >= window && (!bound || n >= *bound)) {
      report.value = EntropyValue::log_of(alpha);
      report.stabilized_at = terminal_run_start(alphas);
      report.steps = n + 1;
      log_debug("limit chain stabilized at n=" + std::to_string(report.stabilized_at) +
                " with alpha=" + alpha.to_string());
      oracle_cross_check(phi, report);
      return report;
    }
  }
  report.steps = static_cast<int>(report.trace.size());
  throw StabilizationError(report, "quotient sequence did not stabilize within " +
                                       std::to_string(params.max_steps) + " steps");
}

EntropyReport entropy_local_limitfree(const Automorphism& phi, const Subgroup& u,
                                      const EngineParams& params) {
  check_inputs(phi, u);
  const Universe& uni = *phi.universe();
  int window = resolve_window(phi.universe(), params);
  AutHandle inv = uni.invert(phi.value());
  std::optional<int> bound = uni.stabilization_bound(inv, u);

  EntropyReport report;
  report.algorithm = "limitfree";
  report.modulus = modulus_of(phi, u);

  std::vector<IndexValue> cs;        // [U : C_n(phi^{-1}, U)]
  std::vector<Subgroup> ds;          // D_n = phi(C_n(phi^{-1},U)) + U
  Subgroup c = u;
  int run = 0;
  for (int n = 1; n <= params.max_steps; ++n) {
    IndexValue c_n = uni.index(c, u);
    if (!cs.empty()) {
      if (!cs.back().divides(c_n))
        fail(ErrorKind::MonotonicityViolation, "inverse-chain index lost divisibility");
      report.trace.back().alpha = c_n / cs.back();
    }
    cs.push_back(c_n);
    Subgroup image = phi.apply(c);
    Subgroup d = uni.sum(image, u);
    if (!ds.empty() && !uni.contains(ds.back(), d))
      fail(ErrorKind::MonotonicityViolation, "limit-free chain failed to descend");
    run = (!ds.empty() && uni.equal(ds.back(), d)) ? run + 1 : 1;
    ds.push_back(d);
    IndexValue d_index = uni.index(u, d);
    report.trace.push_back({n, c_n, std::nullopt, d_index});
    if (run >= window && (!bound || n >= *bound)) {
      report.value = EntropyValue::log_of(d_index);
      report.stabilized_at = terminal_run_start_subgroups(uni, ds);
      report.steps = n;
      log_debug("limit-free chain stabilized at n=" + std::to_string(report.stabilized_at) +
                " with index " + d_index.to_string());
      oracle_cross_check(phi, report);
      return report;
    }
    c = uni.intersect(u, image);
  }
  report.steps = static_cast<int>(report.trace.size());
  throw StabilizationError(report, "limit-free chain did not stabilize within " +
                                       std::to_string(params.max_steps) + " steps");
}

EntropyReport entropy_local_corollary(const Automorphism& phi, const Subgroup& u,
                                      const EngineParams& params) {
  check_inputs(phi, u);
  Automorphism inv = phi.inverse();
  EntropyReport report = entropy_local_limitfree(inv, u, params);
  report.algorithm = "corollary";
  IndexValue delta = modulus_of(phi, u);
  EntropyValue inverse_part = report.value;
  report.value = inverse_part + EntropyValue::log_of(delta);
  report.modulus = delta;
  report.cross_checks.push_back(
      {"modulus-composition", true,
       "inverse chain " + inverse_part.display() + " + log(" + delta.to_string() + ")"});
  oracle_cross_check(phi, report);
  return report;
}

GlobalReport entropy_global(const Automorphism& phi, int base_budget,
                            const EngineParams& params) {
  if (!phi.universe()) fail(ErrorKind::InvalidArgument, "automorphism without a universe");
  if (base_budget < 1) fail(ErrorKind::InvalidArgument, "base budget must be >= 1");
  const auto& u = phi.universe();
  GlobalReport report;

  if (u->kind() == "product") {
    auto [u1, u2] = product_factors(u);
    const PairAut& pa = cast_value<PairAut>(phi.value(), "automorphism");
    GlobalReport r1 = entropy_global(Automorphism(u1, pa.first), base_budget, params);
    GlobalReport r2 = entropy_global(Automorphism(u2, pa.second), base_budget, params);
    report.value = r1.value + r2.value;
    report.certified = r1.certified && r2.certified;
    report.evaluations.push_back({nlohmann::json{{"factor", 1}}, r1.value});
    report.evaluations.push_back({nlohmann::json{{"factor", 2}}, r2.value});
    return report;
  }

  std::vector<Subgroup> base = u->base_enumerator(base_budget);
  if (base.empty()) fail(ErrorKind::EmptyCandidates, "empty local base sample");

  if (u->kind() == "padic") {
    // Every lattice gives the same H; evaluate once, then certify constancy.
    EntropyReport at_default = entropy_local_limitfree(phi, u->default_subgroup(), params);
    report.value = at_default.value;
    report.evaluations.push_back({u->subgroup_to_json(u->default_subgroup()), at_default.value});
    for (const Subgroup& s : base) {
      EntropyReport r = entropy_local_limitfree(phi, s, params);
      report.evaluations.push_back({u->subgroup_to_json(s), r.value});
      if (r.value != report.value)
        fail(ErrorKind::CrossCheckMismatch,
             "entropy is not constant across the lattice base");
    }
    report.certified = true;
    return report;
  }

  EntropyValue best = EntropyValue::zero();
  bool have = false;
  for (const Subgroup& s : base) {
    EntropyReport r = entropy_local_limitfree(phi, s, params);
    report.evaluations.push_back({u->subgroup_to_json(s), r.value});
    if (!have || EntropyValue::compare(r.value, best) > 0) {
      best = r.value;
      have = true;
    }
  }
  report.value = best;

  if (u->kind() == "finite") {
    report.certified = true;  // zero on every subgroup, certified by the closed form
  } else if (u->kind() == "shift") {
    // H over the shrinking window base is nondecreasing in the radius and
    // plateaus at the supremum; two consecutive equal values ending at the
    // maximum certify the plateau.
    std::size_t m = report.evaluations.size();
    report.certified = m >= 2 &&
                       report.evaluations[m - 1].value == report.evaluations[m - 2].value &&
                       report.evaluations[m - 1].value == best;
  } else {
    report.certified = false;
  }
  return report;
}

ScaleReport scale_estimate(const Automorphism& phi, const std::vector<Subgroup>& candidates,
                           const EngineParams& params) {
  if (!phi.universe()) fail(ErrorKind::InvalidArgument, "automorphism without a universe");
  const auto& u = phi.universe();
  std::vector<Subgroup> pool = candidates;
  if (auto whole = u->whole_group()) pool.push_back(*whole);
  if (pool.empty()) fail(ErrorKind::EmptyCandidates, "scale needs at least one candidate");

  ScaleReport report;
  bool have = false;
  for (const Subgroup& s : pool) {
    EntropyReport r = entropy_local_limitfree(phi, s, params);
    IndexValue idx = r.value.is_infinite() ? IndexValue::one() : r.value.alpha();
    report.per_candidate.push_back({u->subgroup_to_json(s), idx});
    if (!have || IndexValue::compare(idx, report.value) < 0) {
      report.value = idx;
      have = true;
    }
  }

  if (u->kind() == "padic") {
    const MatrixAut& aut = cast_value<MatrixAut>(phi.value(), "automorphism");
    Int p = int_from_json(u->descriptor().at("p"));
    report.oracle = scale_oracle_padic(aut.mat, p);
    report.oracle_attained = (*report.oracle == report.value);
  }
  return report;
}

}  // namespace tdlc
