#include "tdlc/instance.hpp"

#include <fstream>
#include <sstream>

#include "tdlc/finite_abelian.hpp"
#include "tdlc/finite_universe.hpp"
#include "tdlc/padic_universe.hpp"
#include "tdlc/product_universe.hpp"
#include "tdlc/serialize.hpp"
#include "tdlc/shift_universe.hpp"

namespace tdlc {

namespace {

const char* kOps[] = {"entropy", "entropy-global", "modulus", "scale", "trace", "verify"};

bool known_op(const std::string& op) {
  for (const char* o : kOps)
    if (op == o) return true;
  return false;
}

}  // namespace

std::shared_ptr<const Universe> universe_from_descriptor(const nlohmann::json& d) {
  if (!d.is_object() || !d.contains("kind"))
    fail(ErrorKind::ParseError, "universe descriptor needs a kind");
  std::string kind = d.at("kind").get<std::string>();
  if (kind == "padic") {
    Int p = int_from_json(d.at("p"));
    if (!d.contains("dim") || !d.at("dim").is_number_integer() ||
        d.at("dim").get<long>() < 0)
      fail(ErrorKind::ParseError, "padic descriptor needs a nonnegative dim");
    return make_padic_universe(p, d.at("dim").get<std::size_t>());
  }
  if (kind == "shift") return make_shift_universe(int_from_json(d.at("m")));
  if (kind == "finite") {
    if (!d.contains("moduli") || !d.at("moduli").is_array() || d.at("moduli").empty())
      fail(ErrorKind::ParseError, "finite descriptor needs a nonempty moduli array");
    std::vector<Int> moduli;
    for (const auto& m : d.at("moduli")) moduli.push_back(int_from_json(m));
    return make_finite_universe(FinAbGroup(std::move(moduli)));
  }
  if (kind == "product") {
    if (!d.contains("factors") || !d.at("factors").is_array() || d.at("factors").size() != 2)
      fail(ErrorKind::ParseError, "product descriptor needs exactly two factors");
    return make_product_universe(universe_from_descriptor(d.at("factors")[0]),
                                 universe_from_descriptor(d.at("factors")[1]));
  }
  fail(ErrorKind::ParseError, "unknown universe kind: " + kind);
}

namespace {

Instance parse_instance_impl(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorKind::ParseError, "instance must be a JSON object");
  Instance inst;
  if (j.contains("op")) inst.op = j.at("op").get<std::string>();
  if (!known_op(inst.op)) fail(ErrorKind::ParseError, "unknown op: " + inst.op);

  if (j.contains("universe")) {
    inst.universe = universe_from_descriptor(j.at("universe"));
    if (j.contains("automorphism"))
      inst.automorphism =
          Automorphism(inst.universe, inst.universe->automorphism_from_json(j.at("automorphism")));
    if (j.contains("subgroup"))
      inst.subgroup = inst.universe->subgroup_from_json(j.at("subgroup"));
  }
  if (inst.op != "verify") {
    if (!inst.universe) fail(ErrorKind::ParseError, "instance needs a universe");
    if (!inst.automorphism) fail(ErrorKind::ParseError, "instance needs an automorphism");
  }

  if (j.contains("params")) {
    const nlohmann::json& p = j.at("params");
    if (!p.is_object()) fail(ErrorKind::ParseError, "params must be an object");
    if (p.contains("window")) inst.engine.window = p.at("window").get<int>();
    if (p.contains("max_steps")) inst.engine.max_steps = p.at("max_steps").get<int>();
    if (p.contains("base_budget")) inst.base_budget = p.at("base_budget").get<int>();
    if (p.contains("seed")) inst.seed = p.at("seed").get<unsigned long long>();
    if (p.contains("count")) inst.count = p.at("count").get<int>();
    if (p.contains("suite")) inst.suite = p.at("suite").get<std::string>();
    if (p.contains("candidates")) {
      if (!inst.universe) fail(ErrorKind::ParseError, "candidates need a universe");
      for (const auto& c : p.at("candidates"))
        inst.candidates.push_back(inst.universe->subgroup_from_json(c));
    }
    if (inst.engine.window < 0 || inst.engine.window == 1)
      fail(ErrorKind::ParseError, "window must be 0 (default) or >= 2");
    if (inst.engine.max_steps < 1) fail(ErrorKind::ParseError, "max_steps must be >= 1");
    if (inst.base_budget < 1) fail(ErrorKind::ParseError, "base_budget must be >= 1");
  }
  return inst;
}

}  // namespace

Instance parse_instance(const nlohmann::json& j) {
  try {
    return parse_instance_impl(j);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("malformed instance: ") + e.what());
  }
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open instance file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
  return parse_instance(j);
}

nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json j{{"op", inst.op}};
  if (inst.universe) j["universe"] = inst.universe->descriptor();
  if (inst.automorphism)
    j["automorphism"] = inst.universe->automorphism_to_json(inst.automorphism->value());
  if (inst.subgroup) j["subgroup"] = inst.universe->subgroup_to_json(*inst.subgroup);
  nlohmann::json params{{"window", inst.engine.window},
                        {"max_steps", inst.engine.max_steps}};
  if (inst.op == "entropy-global") params["base_budget"] = inst.base_budget;
  if (inst.op == "verify") {
    params["seed"] = inst.seed;
    params["suite"] = inst.suite;
    params["count"] = inst.count;
  }
  if (!inst.candidates.empty()) {
    nlohmann::json cands = nlohmann::json::array();
    for (const Subgroup& c : inst.candidates)
      cands.push_back(inst.universe->subgroup_to_json(c));
    params["candidates"] = cands;
  }
  j["params"] = params;
  return j;
}

nlohmann::json entropy_value_to_json(const EntropyValue& v) {
  nlohmann::json j{{"display", v.display()}};
  if (v.is_infinite()) {
    j["infinite"] = true;
  } else {
    j["infinite"] = false;
    j["alpha"] = v.alpha().to_string();
  }
  return j;
}

namespace {

nlohmann::json trace_row_to_json(const TraceRow& row) {
  nlohmann::json j{{"n", row.n}, {"c", row.c.to_string()}};
  if (row.alpha) j["alpha"] = row.alpha->to_string();
  if (row.d_index) j["d_index"] = row.d_index->to_string();
  return j;
}

}  // namespace

nlohmann::json entropy_report_to_json(const EntropyReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CrossCheck& c : r.cross_checks)
    checks.push_back(
        nlohmann::json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  nlohmann::json trace = nlohmann::json::array();
  for (const TraceRow& row : r.trace) trace.push_back(trace_row_to_json(row));
  return nlohmann::json{{"value", entropy_value_to_json(r.value)},
                        {"algorithm", r.algorithm},
                        {"stabilized_at", r.stabilized_at},
                        {"steps", r.steps},
                        {"modulus", r.modulus.to_string()},
                        {"cross_checks", checks},
                        {"trace", trace}};
}

nlohmann::json suite_report_to_json(const SuiteReport& r) {
  nlohmann::json failures = nlohmann::json::array();
  for (const PropertyCase& c : r.cases)
    if (!c.passed) failures.push_back(nlohmann::json{{"name", c.name}, {"witness", c.witness}});
  return nlohmann::json{{"suite", r.suite},
                        {"seed", r.seed},
                        {"requested", r.requested},
                        {"checks", r.passed + r.failed},
                        {"passed", r.passed},
                        {"failed", r.failed},
                        {"failures", failures}};
}

std::string trace_to_csv(const std::vector<TraceRow>& limit_rows,
                         const std::vector<TraceRow>& limitfree_rows, bool complete) {
  std::ostringstream out;
  out << "n,c_n,alpha_n,d_index\n";
  std::size_t rows = std::max(limit_rows.size(), limitfree_rows.size());
  for (std::size_t i = 0; i < rows; ++i) {
    int n = static_cast<int>(i) + 1;
    out << n << ',';
    if (i < limit_rows.size()) out << limit_rows[i].c.to_string();
    out << ',';
    if (i < limit_rows.size() && limit_rows[i].alpha) out << limit_rows[i].alpha->to_string();
    out << ',';
    if (i < limitfree_rows.size() && limitfree_rows[i].d_index)
      out << limitfree_rows[i].d_index->to_string();
    out << '\n';
  }
  if (!complete) out << "# INCOMPLETE\n";
  return out.str();
}

nlohmann::json run_instance(const Instance& inst) {
  nlohmann::json report{{"instance", instance_to_json(inst)}, {"op", inst.op}};
  if (inst.op == "verify") {
    std::vector<SuiteReport> suites;
    if (inst.suite == "all")
      suites = run_all_suites(inst.seed, inst.count);
    else
      suites.push_back(run_suite(inst.suite, inst.seed, inst.count));
    int failed = 0;
    nlohmann::json arr = nlohmann::json::array();
    for (const SuiteReport& s : suites) {
      failed += s.failed;
      arr.push_back(suite_report_to_json(s));
    }
    report["suites"] = arr;
    report["all_passed"] = failed == 0;
    return report;
  }

  const Automorphism& phi = *inst.automorphism;
  Subgroup u = inst.subgroup ? *inst.subgroup : inst.universe->default_subgroup();

  if (inst.op == "entropy" || inst.op == "trace") {
    EntropyReport limit = entropy_local_limit(phi, u, inst.engine);
    EntropyReport limitfree = entropy_local_limitfree(phi, u, inst.engine);
    EntropyReport corollary = entropy_local_corollary(phi, u, inst.engine);
    if (!(limit.value == limitfree.value && limitfree.value == corollary.value))
      fail(ErrorKind::CrossCheckMismatch,
           "limit, limit-free and corollary algorithms disagree: " + limit.value.display() +
               " vs " + limitfree.value.display() + " vs " + corollary.value.display());
    report["value"] = entropy_value_to_json(limit.value);
    report["algorithms"] =
        nlohmann::json{{"limit", entropy_report_to_json(limit)},
                       {"limitfree", entropy_report_to_json(limitfree)},
                       {"corollary", entropy_report_to_json(corollary)}};
    report["agreement"] = true;
    report["trace_csv"] = trace_to_csv(limit.trace, limitfree.trace, true);
    return report;
  }
  if (inst.op == "entropy-global") {
    GlobalReport g = entropy_global(phi, inst.base_budget, inst.engine);
    report["value"] = entropy_value_to_json(g.value);
    report["certified"] = g.certified;
    nlohmann::json evals = nlohmann::json::array();
    for (const GlobalEvaluation& e : g.evaluations)
      evals.push_back(nlohmann::json{{"subgroup", e.subgroup},
                                     {"value", entropy_value_to_json(e.value)}});
    report["evaluations"] = evals;
    return report;
  }
  if (inst.op == "modulus") {
    IndexValue delta = modulus_of(phi, u);
    report["modulus"] = delta.to_string();
    report["log_display"] = EntropyValue::log_of(delta).display();
    return report;
  }
  if (inst.op == "scale") {
    std::vector<Subgroup> candidates = inst.candidates;
    if (inst.subgroup) candidates.push_back(*inst.subgroup);
    if (candidates.empty()) candidates = inst.universe->base_enumerator(inst.base_budget);
    ScaleReport s = scale_estimate(phi, candidates, inst.engine);
    report["scale"] = s.value.to_string();
    if (s.oracle) report["oracle"] = s.oracle->to_string();
    report["oracle_attained"] = s.oracle_attained;
    nlohmann::json per = nlohmann::json::array();
    for (const auto& [sub, idx] : s.per_candidate)
      per.push_back(nlohmann::json{{"subgroup", sub}, {"index", idx.to_string()}});
    report["per_candidate"] = per;
    return report;
  }
  fail(ErrorKind::InvalidArgument, "unhandled op: " + inst.op);
}

}  // namespace tdlc
