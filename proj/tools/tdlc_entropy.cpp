// Command-line front end: instance files in, reports and traces out.
// Exit codes: 0 success, 2 invalid instance, 3 not stabilized,
// 4 cross-check mismatch, 5 property-suite failure.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "tdlc/entropy.hpp"
#include "tdlc/instance.hpp"
#include "tdlc/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNotStabilized = 3;
constexpr int kExitCrossCheck = 4;
constexpr int kExitVerifyFailed = 5;

int exit_code_for(const tdlc::Error& e) {
  switch (e.kind()) {
    case tdlc::ErrorKind::NotStabilized:
      return kExitNotStabilized;
    case tdlc::ErrorKind::CrossCheckMismatch:
    case tdlc::ErrorKind::MonotonicityViolation:
      return kExitCrossCheck;
    default:
      return kExitInvalid;
  }
}

struct CommonFlags {
  std::string instance_path;
  std::string op_override;
  int window = -1;     // -1: keep instance value
  int max_steps = -1;  // -1: keep instance value
  std::string format = "json";
};

void apply_overrides(tdlc::Instance& inst, const CommonFlags& flags) {
  if (!flags.op_override.empty()) inst.op = flags.op_override;
  if (flags.window >= 0) inst.engine.window = flags.window;
  if (flags.max_steps >= 0) inst.engine.max_steps = flags.max_steps;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) tdlc::fail(tdlc::ErrorKind::InvalidArgument, "cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string universe_summary(const json& descriptor) {
  std::string kind = descriptor.value("kind", "?");
  if (kind == "padic")
    return "padic p=" + descriptor.at("p").get<std::string>() + " dim=" +
           std::to_string(descriptor.at("dim").get<std::size_t>());
  if (kind == "shift") return "shift m=" + descriptor.at("m").dump();
  if (kind == "finite") return "finite moduli=" + descriptor.at("moduli").dump();
  if (kind == "product")
    return "product [" + universe_summary(descriptor.at("factors")[0]) + "] x [" +
           universe_summary(descriptor.at("factors")[1]) + "]";
  return kind;
}

void print_report_table(const json& report, std::ostream& out) {
  const json& inst = report.at("instance");
  out << "op          " << report.at("op").get<std::string>() << "\n";
  if (inst.contains("universe"))
    out << "universe    " << universe_summary(inst.at("universe")) << "\n";
  if (report.contains("value")) {
    const json& v = report.at("value");
    out << "value       " << v.at("display").get<std::string>();
    if (!v.at("infinite").get<bool>()) out << "  (alpha = " << v.at("alpha").get<std::string>() << ")";
    out << "\n";
  }
  if (report.contains("algorithms")) {
    for (const char* alg : {"limit", "limitfree", "corollary"}) {
      const json& a = report.at("algorithms").at(alg);
      out << alg << std::string(12 - std::string(alg).size(), ' ')
          << "stabilized_at=" << a.at("stabilized_at").get<int>()
          << " steps=" << a.at("steps").get<int>() << "\n";
    }
    out << "modulus     "
        << report.at("algorithms").at("corollary").at("modulus").get<std::string>() << "\n";
  }
  if (report.contains("modulus"))
    out << "modulus     " << report.at("modulus").get<std::string>() << "\n";
  if (report.contains("scale")) {
    out << "scale       " << report.at("scale").get<std::string>() << "\n";
    if (report.contains("oracle"))
      out << "oracle      " << report.at("oracle").get<std::string>()
          << (report.at("oracle_attained").get<bool>() ? " (attained)" : " (not attained)")
          << "\n";
  }
  if (report.contains("certified"))
    out << "certified   " << (report.at("certified").get<bool>() ? "yes" : "budget-limited")
        << "\n";
  if (report.contains("evaluations"))
    out << "evaluations " << report.at("evaluations").size() << "\n";
}

int emit_report(const json& report, const std::string& format) {
  if (format == "table")
    print_report_table(report, std::cout);
  else if (format == "csv" && report.contains("trace_csv"))
    std::cout << report.at("trace_csv").get<std::string>();
  else
    std::cout << report.dump(2) << "\n";
  return kExitOk;
}

int cmd_run(const CommonFlags& flags) {
  tdlc::Instance inst = tdlc::load_instance(flags.instance_path);
  apply_overrides(inst, flags);
  json report = tdlc::run_instance(inst);
  int code = kExitOk;
  if (inst.op == "verify" && !report.at("all_passed").get<bool>()) code = kExitVerifyFailed;
  emit_report(report, flags.format);
  return code;
}

int cmd_trace(const CommonFlags& flags, const std::string& trace_out) {
  tdlc::Instance inst = tdlc::load_instance(flags.instance_path);
  apply_overrides(inst, flags);
  if (!inst.automorphism)
    tdlc::fail(tdlc::ErrorKind::ParseError, "trace needs an automorphism");
  const tdlc::Automorphism& phi = *inst.automorphism;
  tdlc::Subgroup u = inst.subgroup ? *inst.subgroup : inst.universe->default_subgroup();

  std::vector<tdlc::TraceRow> limit_rows, limitfree_rows;
  bool complete = true;
  std::string incomplete_reason;
  try {
    limit_rows = tdlc::entropy_local_limit(phi, u, inst.engine).trace;
  } catch (const tdlc::StabilizationError& e) {
    limit_rows = e.partial().trace;
    complete = false;
    incomplete_reason = e.what();
  }
  if (complete) {
    try {
      limitfree_rows = tdlc::entropy_local_limitfree(phi, u, inst.engine).trace;
    } catch (const tdlc::StabilizationError& e) {
      limitfree_rows = e.partial().trace;
      complete = false;
      incomplete_reason = e.what();
    }
  }
  std::string csv = tdlc::trace_to_csv(limit_rows, limitfree_rows, complete);
  if (trace_out.empty())
    std::cout << csv;
  else
    write_file_atomic(trace_out, csv);
  if (!complete) {
    std::cerr << incomplete_reason << "\n";
    return kExitNotStabilized;
  }
  return kExitOk;
}

struct BatchResult {
  std::string name;
  int code = kExitOk;
  std::string status;
  std::string detail;
};

int cmd_batch(const std::string& dir, int jobs, const CommonFlags& flags) {
  if (!fs::is_directory(dir))
    tdlc::fail(tdlc::ErrorKind::InvalidArgument, "not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const fs::path& p = entry.path();
    if (p.extension() != ".json") continue;
    if (p.stem().string().size() > 7 &&
        p.stem().string().substr(p.stem().string().size() - 7) == ".report")
      continue;  // skip previous outputs
    files.push_back(p);
  }
  std::sort(files.begin(), files.end());

  std::vector<BatchResult> results(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1)) {
      BatchResult& r = results[i];
      r.name = files[i].filename().string();
      try {
        tdlc::Instance inst = tdlc::load_instance(files[i].string());
        apply_overrides(inst, flags);
        json report = tdlc::run_instance(inst);
        bool verify_failed =
            inst.op == "verify" && !report.at("all_passed").get<bool>();
        r.code = verify_failed ? kExitVerifyFailed : kExitOk;
        r.status = verify_failed ? "verify-failed" : "ok";
        if (report.contains("value"))
          r.detail = report.at("value").at("display").get<std::string>();
        fs::path out = files[i];
        out.replace_extension(".report.json");
        write_file_atomic(out, report.dump(2) + "\n");
      } catch (const tdlc::Error& e) {
        r.code = exit_code_for(e);
        r.status = r.code == kExitNotStabilized    ? "not-stabilized"
                   : r.code == kExitCrossCheck     ? "cross-check-failed"
                                                   : "invalid";
        r.detail = e.what();
      } catch (const std::exception& e) {
        r.code = kExitInvalid;
        r.status = "invalid";
        r.detail = e.what();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  int ok = 0, invalid = 0, not_stabilized = 0, cross_check = 0, verify_failed = 0;
  for (const BatchResult& r : results) {
    std::cout << r.name << "  " << r.status;
    if (!r.detail.empty()) std::cout << "  " << r.detail;
    std::cout << "\n";
    switch (r.code) {
      case kExitOk: ++ok; break;
      case kExitNotStabilized: ++not_stabilized; break;
      case kExitCrossCheck: ++cross_check; break;
      case kExitVerifyFailed: ++verify_failed; break;
      default: ++invalid; break;
    }
  }
  std::cout << "summary: " << ok << " ok, " << invalid << " invalid, " << not_stabilized
            << " not-stabilized, " << cross_check << " cross-check-failed, " << verify_failed
            << " verify-failed\n";
  if (invalid) return kExitInvalid;
  if (cross_check) return kExitCrossCheck;
  if (not_stabilized) return kExitNotStabilized;
  if (verify_failed) return kExitVerifyFailed;
  return kExitOk;
}

int cmd_verify(const std::string& suite, unsigned long long seed, int count,
               const std::string& format) {
  std::vector<tdlc::SuiteReport> reports;
  if (suite == "all") {
    reports = tdlc::run_all_suites(seed, count);
  } else {
    reports.push_back(tdlc::run_suite(suite, seed, count));
  }

  int failed_total = 0;
  json out = json::array();
  for (const tdlc::SuiteReport& r : reports) {
    failed_total += r.failed;
    json jr = tdlc::suite_report_to_json(r);
    // Failing witnesses become replayable instance files.
    int idx = 0;
    for (const tdlc::PropertyCase& c : r.cases) {
      if (c.passed) continue;
      if (!c.witness.is_object() || !c.witness.contains("universe")) continue;
      std::string path = "witness-" + r.suite + "-" + std::to_string(idx++) + ".json";
      write_file_atomic(path, c.witness.dump(2) + "\n");
      for (auto& f : jr.at("failures"))
        if (f.at("name") == c.name && !f.contains("witness_file")) {
          f["witness_file"] = path;
          break;
        }
    }
    out.push_back(jr);
  }

  if (format == "json") {
    std::cout << json{{"suites", out}, {"all_passed", failed_total == 0}}.dump(2) << "\n";
  } else {
    for (const json& jr : out) {
      std::cout << "suite " << jr.at("suite").get<std::string>() << ": "
                << jr.at("checks").get<int>() << " checks, " << jr.at("passed").get<int>()
                << " passed, " << jr.at("failed").get<int>() << " failed (seed "
                << jr.at("seed").get<unsigned long long>() << ")\n";
      for (const json& f : jr.at("failures")) {
        std::cout << "  FAIL " << f.at("name").get<std::string>();
        if (f.contains("witness_file"))
          std::cout << "  witness: " << f.at("witness_file").get<std::string>();
        std::cout << "\n";
      }
    }
    std::cout << (failed_total == 0 ? "all properties passed\n"
                                    : "property failures detected\n");
  }
  return failed_total == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact topological-entropy calculator for automorphisms of "
               "totally disconnected locally compact groups"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string trace_out;
  std::string batch_dir;
  int jobs = 1;
  std::string suite = "all";
  unsigned long long seed = 1;
  int count = 0;

  auto add_common = [&](CLI::App* cmd, bool need_instance) {
    auto* opt = cmd->add_option("--instance", flags.instance_path, "instance JSON file");
    if (need_instance) opt->required();
    cmd->add_option("--op", flags.op_override,
                    "override op: entropy|entropy-global|modulus|scale|trace|verify");
    cmd->add_option("--window", flags.window, "stabilization window (>= 2; 0 = default)");
    cmd->add_option("--max-steps", flags.max_steps, "chain length cap");
    cmd->add_option("--format", flags.format, "json|table|csv")
        ->check(CLI::IsMember({"json", "table", "csv"}));
  };

  CLI::App* run = app.add_subcommand("run", "evaluate one instance file");
  add_common(run, true);

  CLI::App* trace = app.add_subcommand("trace", "emit the chain trace as CSV");
  add_common(trace, true);
  trace->add_option("--trace-out", trace_out, "CSV output path (default: stdout)");

  CLI::App* batch = app.add_subcommand("batch", "evaluate a directory of instances");
  batch->add_option("dir", batch_dir, "directory of instance JSON files")->required();
  batch->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  add_common(batch, false);

  CLI::App* verify = app.add_subcommand("verify", "run property-verification suites");
  verify->add_option("--suite", suite, "suite name or 'all'");
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--count", count, "instances per suite (0 = suite default)");
  verify->add_option("--format", flags.format, "json|table")
      ->check(CLI::IsMember({"json", "table"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(flags);
    if (trace->parsed()) return cmd_trace(flags, trace_out);
    if (batch->parsed()) return cmd_batch(batch_dir, jobs, flags);
    if (verify->parsed())
      return cmd_verify(suite, seed, count,
                        verify->count("--format") ? flags.format : std::string("table"));
  } catch (const tdlc::Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}
